//! Standard modules on P^n used as examples and test inputs.

use crate::famp::{AmplitudeError, ModuleMap};
use crate::module::{GradedMap, GradedModule};
use crate::poly::{MultiPoly, PolyRing};

/// Subsets of `{0..m}` of size `k` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The Koszul differential `K_k -> K_{k-1}` on `x0..xn`, where
/// `K_k = ∧^k R^{n+1} ⊗ R(-k)`, sending `e_S` to `Σ ± x_s e_{S∖s}`.
pub fn koszul_differential(ring: PolyRing, k: usize) -> GradedMap {
    let m = ring.num_vars;
    let rows = subsets(m, k - 1);
    let cols = subsets(m, k);
    let mut entries = vec![vec![ring.zero(); cols.len()]; rows.len()];
    for (c, s) in cols.iter().enumerate() {
        for (pos, &v) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(pos);
            let r = rows.binary_search(&rest).expect("face of a subset");
            let x = ring.var(v);
            entries[r][c] = if pos % 2 == 0 { x } else { x.neg() };
        }
    }
    GradedMap::new(ring, vec![k as i64 - 1; rows.len()], vec![k as i64; cols.len()], entries)
        .expect("Koszul differential is homogeneous")
}

/// `O(a)`.
pub fn line_bundle(ring: PolyRing, a: i64) -> GradedModule {
    GradedModule::line_bundle(ring, a)
}

/// `⊕ O(a)` over the given twists.
pub fn line_bundle_sum(ring: PolyRing, twists: &[i64]) -> GradedModule {
    GradedModule::free(ring, twists.iter().map(|a| -a).collect())
}

/// The tangent bundle, as the cokernel of the Euler map `R -> R(1)^{n+1}`.
pub fn tangent(ring: PolyRing) -> GradedModule {
    let m = ring.num_vars;
    let entries = (0..m).map(|i| vec![ring.var(i)]).collect();
    let map = GradedMap::new(ring, vec![-1; m], vec![0], entries).expect("Euler map is homogeneous");
    GradedModule::new(map, true)
}

/// `Ω^j`, presented as the cokernel of the Koszul differential
/// `K_{j+2} -> K_{j+1}`; `Ω^0 = O`.
pub fn omega(ring: PolyRing, j: usize) -> GradedModule {
    let m = ring.num_vars;
    assert!(j < m, "Ω^{j} on P^{}", m - 1);
    if j == 0 {
        return GradedModule::line_bundle(ring, 0);
    }
    if j + 2 > m {
        return GradedModule::free(ring, vec![j as i64 + 1; subsets(m, j + 1).len()]);
    }
    GradedModule::new(koszul_differential(ring, j + 2), true)
}

/// The ideal of the coordinate point `x0 = x1 = 0` in `P^2`
/// (or the codimension-two linear subspace in general), presented by its
/// Koszul relation.
pub fn point_ideal(ring: PolyRing) -> GradedModule {
    let entries = vec![vec![ring.var(1)], vec![ring.var(0).neg()]];
    let map = GradedMap::new(ring, vec![1, 1], vec![2], entries).expect("Koszul relation is homogeneous");
    GradedModule::new(map, false)
}

/// The structure sheaf of the hypersurface `f = 0`, i.e. `R/(f)`.
pub fn hypersurface(f: &MultiPoly) -> GradedModule {
    let ring = f.ring();
    let d = f.degree().expect("nonzero hypersurface equation") as i64;
    let map = GradedMap::new(ring, vec![0], vec![d], vec![vec![f.clone()]]).expect("homogeneous equation");
    GradedModule::new(map, false)
}

/// `0 -> O(a) -> O(a+1)^{n+1} -> T(a) -> 0`.
pub fn euler_sequence(ring: PolyRing, a: i64) -> Result<(ModuleMap, ModuleMap), AmplitudeError> {
    let m = ring.num_vars;
    let o = GradedModule::line_bundle(ring, a);
    let cover = GradedModule::free(ring, vec![-a - 1; m]).with_locally_free(true);
    let t = tangent(ring).twist(a);
    let euler = GradedMap::new(ring, vec![-a - 1; m], vec![-a], (0..m).map(|i| vec![ring.var(i)]).collect())?;
    let quotient = GradedMap::identity(ring, vec![-a - 1; m]);
    Ok((ModuleMap::new(o, cover.clone(), euler)?, ModuleMap::new(cover, t, quotient)?))
}

/// `0 -> O(-2) -> O(-1)^2 -> I -> 0` for the ideal of [`point_ideal`].
pub fn koszul_sequence(ring: PolyRing) -> Result<(ModuleMap, ModuleMap), AmplitudeError> {
    let o2 = GradedModule::line_bundle(ring, -2);
    let o1 = GradedModule::free(ring, vec![1, 1]).with_locally_free(true);
    let relation = GradedMap::new(ring, vec![1, 1], vec![2], vec![vec![ring.var(1)], vec![ring.var(0).neg()]])?;
    let quotient = GradedMap::identity(ring, vec![1, 1]);
    Ok((ModuleMap::new(o2, o1.clone(), relation)?, ModuleMap::new(o1, point_ideal(ring), quotient)?))
}

/// `0 -> A -> A ⊕ B -> B -> 0`.
pub fn split_sequence(a: &GradedModule, b: &GradedModule) -> Result<(ModuleMap, ModuleMap), AmplitudeError> {
    let ring = a.ring();
    let sum = GradedModule::direct_sum(ring, &[a.clone(), b.clone()])?;
    let (ta, tb) = (a.presentation().target_twists(), b.presentation().target_twists());
    let all = sum.presentation().target_twists().to_vec();
    let mut incl = vec![vec![ring.zero(); ta.len()]; all.len()];
    let mut proj = vec![vec![ring.zero(); all.len()]; tb.len()];
    for (k, row) in incl.iter_mut().enumerate().take(ta.len()) {
        row[k] = ring.one();
    }
    for (k, row) in proj.iter_mut().enumerate() {
        row[ta.len() + k] = ring.one();
    }
    let incl = GradedMap::new(ring, all.clone(), ta.to_vec(), incl)?;
    let proj = GradedMap::new(ring, tb.to_vec(), all, proj)?;
    Ok((ModuleMap::new(a.clone(), sum.clone(), incl)?, ModuleMap::new(sum, b.clone(), proj)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_differentials_compose_to_zero() {
        let r = PolyRing::new(4, 3).unwrap();
        for k in 2..=4 {
            let c = koszul_differential(r, k - 1).compose(&koszul_differential(r, k)).unwrap();
            assert!(c.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn omega_ranks() {
        let r = PolyRing::new(4, 5).unwrap();
        for j in 0..4 {
            let expected = subsets(3, j).len() as i64;
            assert_eq!(omega(r, j).rank(), expected, "Ω^{j} on P^3");
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
