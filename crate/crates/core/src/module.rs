//! Graded maps between twisted free modules and graded modules given by
//! finite free presentations.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{free_resolution, Coordinates, FreeModule, FreeResolution, ModTerm, ModVec};
use crate::linalg::Echelon;
use crate::poly::{Monomial, MultiPoly, PolyError, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("entry ({row},{col}) is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, expected: i64 },
    #[error("twist overflow")]
    TwistOverflow,
    #[error("presentation rank drops at point {point:?} (rank {found}, expected {expected})")]
    NotLocallyFree { point: Vec<u64>, found: usize, expected: usize },
    #[error("hyperplane restriction needs at least two variables")]
    NoHyperplane,
}

/// A homogeneous matrix `⊕ R(-source) -> ⊕ R(-target)`; entry `(r, c)` is
/// zero or homogeneous of degree `source[c] - target[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    ring: PolyRing,
    target_twists: Vec<i64>,
    source_twists: Vec<i64>,
    entries: Vec<Vec<MultiPoly>>,
}

impl GradedMap {
    pub fn new(
        ring: PolyRing,
        target_twists: Vec<i64>,
        source_twists: Vec<i64>,
        entries: Vec<Vec<MultiPoly>>,
    ) -> Result<Self, ModuleError> {
        if entries.len() != target_twists.len() {
            return Err(ModuleError::Shape(format!(
                "{} rows for {} target twists",
                entries.len(),
                target_twists.len()
            )));
        }
        for (r, row) in entries.iter().enumerate() {
            if row.len() != source_twists.len() {
                return Err(ModuleError::Shape(format!(
                    "row {r} has {} entries for {} source twists",
                    row.len(),
                    source_twists.len()
                )));
            }
            for (c, e) in row.iter().enumerate() {
                if e.ring() != ring {
                    return Err(ModuleError::RingMismatch(format!("entry ({r},{c})")));
                }
                let expected = source_twists[c] - target_twists[r];
                if !e.is_homogeneous_of_degree(expected) {
                    return Err(ModuleError::NotHomogeneous { row: r, col: c, expected });
                }
            }
        }
        Ok(GradedMap { ring, target_twists, source_twists, entries })
    }

    pub fn zero(ring: PolyRing, target_twists: Vec<i64>, source_twists: Vec<i64>) -> Self {
        let entries = vec![vec![ring.zero(); source_twists.len()]; target_twists.len()];
        GradedMap { ring, target_twists, source_twists, entries }
    }

    pub fn identity(ring: PolyRing, twists: Vec<i64>) -> Self {
        let mut m = Self::zero(ring, twists.clone(), twists);
        for i in 0..m.entries.len() {
            m.entries[i][i] = ring.one();
        }
        m
    }

    pub fn from_columns(ring: PolyRing, target_twists: Vec<i64>, source_twists: Vec<i64>, cols: &[ModVec]) -> Self {
        let mut raw: Vec<Vec<Vec<(Monomial, u64)>>> = vec![vec![Vec::new(); cols.len()]; target_twists.len()];
        for (c, col) in cols.iter().enumerate() {
            for (r, m, k) in col.terms() {
                raw[*r][c].push((m.clone(), *k));
            }
        }
        let entries = raw
            .into_iter()
            .map(|row| row.into_iter().map(|ts| MultiPoly::from_terms(ring, ts)).collect())
            .collect();
        GradedMap { ring, target_twists, source_twists, entries }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn target_twists(&self) -> &[i64] {
        &self.target_twists
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r][c]
    }

    pub fn rows(&self) -> usize {
        self.target_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.source_twists.len()
    }

    pub fn target(&self) -> FreeModule {
        FreeModule::new(self.ring, self.target_twists.clone())
    }

    pub fn source(&self) -> FreeModule {
        FreeModule::new(self.ring, self.source_twists.clone())
    }

    pub fn column(&self, c: usize) -> ModVec {
        ModVec::from_terms(
            self.entries
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row[c].terms().iter().map(move |(m, k)| (r, m.clone(), *k)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MultiPoly::is_zero)
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().flatten().any(|e| matches!(e.as_constant(), Some(c) if c != 0))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, ModuleError> {
        if self.source_twists != other.target_twists {
            return Err(ModuleError::Shape("composition of incompatible maps".into()));
        }
        if self.ring != other.ring {
            return Err(ModuleError::RingMismatch("composition".into()));
        }
        let mut entries = vec![vec![self.ring.zero(); other.cols()]; self.rows()];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, out) in row.iter_mut().enumerate() {
                for k in 0..self.cols() {
                    let (a, b) = (&self.entries[r][k], &other.entries[k][c]);
                    if !a.is_zero() && !b.is_zero() {
                        *out = &*out + &(a * b);
                    }
                }
            }
        }
        Ok(GradedMap {
            ring: self.ring,
            target_twists: self.target_twists.clone(),
            source_twists: other.source_twists.clone(),
            entries,
        })
    }

    /// `Hom(-, R(-shift))` applied to this map: the transposed matrix with
    /// twists `shift - t`.
    pub fn dual(&self, shift: i64) -> GradedMap {
        let entries = (0..self.cols()).map(|c| (0..self.rows()).map(|r| self.entries[r][c].clone()).collect()).collect();
        GradedMap {
            ring: self.ring,
            target_twists: self.source_twists.iter().map(|t| shift - t).collect(),
            source_twists: self.target_twists.iter().map(|t| shift - t).collect(),
            entries,
        }
    }

    /// Rank of the `k`-linear map on degree-`d` pieces.
    pub fn rank_in_degree(&self, d: i64) -> usize {
        let cols: Vec<(ModVec, i64)> = (0..self.cols()).map(|c| (self.column(c), self.source_twists[c])).collect();
        span_rank(self.ring, &cols, d)
    }

    pub fn select_columns(&self, keep: &[usize]) -> GradedMap {
        GradedMap {
            ring: self.ring,
            target_twists: self.target_twists.clone(),
            source_twists: keep.iter().map(|&c| self.source_twists[c]).collect(),
            entries: self.entries.iter().map(|row| keep.iter().map(|&c| row[c].clone()).collect()).collect(),
        }
    }

    /// Removes generator/relation pairs joined by a nonzero constant entry,
    /// clearing the rest of that row by column operations first. The
    /// cokernel is unchanged up to isomorphism.
    pub fn cancel_units(&mut self) {
        let f = self.ring.field;
        while let Some((r, c, u)) = self.find_unit() {
            let inv = f.inv(&u);
            for k in 0..self.cols() {
                if k == c || self.entries[r][k].is_zero() {
                    continue;
                }
                let factor = self.entries[r][k].scale(inv);
                for row in self.entries.iter_mut() {
                    if !row[c].is_zero() {
                        let delta = &factor * &row[c];
                        row[k] = &row[k] - &delta;
                    }
                }
            }
            self.entries.remove(r);
            self.target_twists.remove(r);
            for row in self.entries.iter_mut() {
                row.remove(c);
            }
            self.source_twists.remove(c);
        }
    }

    fn find_unit(&self) -> Option<(usize, usize, u64)> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if let Some(u) = e.as_constant().filter(|&u| u != 0) {
                    return Some((r, c, u));
                }
            }
        }
        None
    }

    /// Shift all twists by `-d`.
    pub fn shift(&self, d: i64) -> GradedMap {
        GradedMap {
            ring: self.ring,
            target_twists: self.target_twists.iter().map(|t| t - d).collect(),
            source_twists: self.source_twists.iter().map(|t| t - d).collect(),
            entries: self.entries.clone(),
        }
    }

    pub fn frobenius(&self, e: u32) -> Result<GradedMap, ModuleError> {
        let p = self.ring.modulus();
        let q = p.checked_pow(e).ok_or(ModuleError::TwistOverflow)? as i64;
        let scale = |ts: &[i64]| -> Result<Vec<i64>, ModuleError> {
            ts.iter().map(|t| t.checked_mul(q).ok_or(ModuleError::TwistOverflow)).collect()
        };
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.frobenius(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GradedMap {
            ring: self.ring,
            target_twists: scale(&self.target_twists)?,
            source_twists: scale(&self.source_twists)?,
            entries,
        })
    }

    pub fn restrict_last_var(&self) -> Result<GradedMap, ModuleError> {
        if self.ring.num_vars < 2 {
            return Err(ModuleError::NoHyperplane);
        }
        let ring = PolyRing { num_vars: self.ring.num_vars - 1, field: self.ring.field };
        let entries = self.entries.iter().map(|row| row.iter().map(MultiPoly::restrict_last_var).collect()).collect();
        Ok(GradedMap {
            ring,
            target_twists: self.target_twists.clone(),
            source_twists: self.source_twists.clone(),
            entries,
        })
    }

    /// Re-reads the matrix over another ring with the same number of variables.
    pub fn lift_to(&self, ring: PolyRing) -> GradedMap {
        assert_eq!(ring.num_vars, self.ring.num_vars);
        GradedMap {
            ring,
            target_twists: self.target_twists.clone(),
            source_twists: self.source_twists.clone(),
            entries: self.entries.iter().map(|row| row.iter().map(|e| e.lift_to(ring)).collect()).collect(),
        }
    }

    /// Rank of the matrix evaluated at a point.
    pub fn rank_at(&self, point: &[u64]) -> usize {
        let rows = (0..self.cols()).map(|c| {
            (0..self.rows())
                .filter_map(|r| {
                    let v = self.entries[r][c].eval(point);
                    (v != 0).then_some((r, v))
                })
                .collect()
        });
        crate::linalg::rank(&self.ring.field, rows)
    }
}

/// A graded module presented as the cokernel of a [`GradedMap`].
#[derive(Debug, Clone)]
pub struct GradedModule {
    presentation: GradedMap,
    locally_free: bool,
    resolution: OnceLock<Arc<FreeResolution>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.locally_free == other.locally_free
    }
}

impl GradedModule {
    pub fn new(presentation: GradedMap, locally_free: bool) -> Self {
        GradedModule { presentation, locally_free, resolution: OnceLock::new() }
    }

    /// The free module `⊕ R(-t)`.
    pub fn free(ring: PolyRing, twists: Vec<i64>) -> Self {
        Self::new(GradedMap::zero(ring, twists, vec![]), true)
    }

    /// `R(a)`, the module of the line bundle `O(a)`.
    pub fn line_bundle(ring: PolyRing, a: i64) -> Self {
        Self::free(ring, vec![-a])
    }

    pub fn zero(ring: PolyRing) -> Self {
        Self::free(ring, vec![])
    }

    pub fn presentation(&self) -> &GradedMap {
        &self.presentation
    }

    pub fn ring(&self) -> PolyRing {
        self.presentation.ring
    }

    /// `n` for modules over the coordinate ring of `P^n`.
    pub fn proj_dim(&self) -> usize {
        self.ring().proj_dim()
    }

    pub fn is_locally_free(&self) -> bool {
        self.locally_free
    }

    pub fn with_locally_free(mut self, flag: bool) -> Self {
        self.locally_free = flag;
        self
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.rows()
    }

    /// The minimal free resolution, computed once and cached.
    pub fn resolution(&self) -> Arc<FreeResolution> {
        self.resolution
            .get_or_init(|| Arc::new(free_resolution(self, self.ring().num_vars + 1)))
            .clone()
    }

    /// Generic rank of the module.
    pub fn rank(&self) -> i64 {
        self.resolution().euler_rank()
    }

    /// `M(d)`: all twists shifted by `-d`.
    pub fn twist(&self, d: i64) -> Self {
        Self::new(self.presentation.shift(d), self.locally_free)
    }

    /// The Frobenius pullback `M^(p^e)`.
    pub fn frobenius(&self, e: u32) -> Result<Self, ModuleError> {
        Ok(Self::new(self.presentation.frobenius(e)?, self.locally_free))
    }

    pub fn direct_sum(ring: PolyRing, parts: &[GradedModule]) -> Result<Self, ModuleError> {
        let mut target = Vec::new();
        let mut source = Vec::new();
        for m in parts {
            if m.ring() != ring {
                return Err(ModuleError::RingMismatch("direct sum".into()));
            }
            target.extend_from_slice(m.presentation.target_twists());
            source.extend_from_slice(m.presentation.source_twists());
        }
        let mut entries = vec![vec![ring.zero(); source.len()]; target.len()];
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for (r, row) in m.presentation.entries.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    entries[r0 + r][c0 + c] = e.clone();
                }
            }
            r0 += m.presentation.rows();
            c0 += m.presentation.cols();
        }
        let lf = parts.iter().all(|m| m.locally_free);
        Ok(Self::new(GradedMap { ring, target_twists: target, source_twists: source, entries }, lf))
    }

    /// `M ⊗ N` via the standard presentation
    /// `F1⊗G0 ⊕ F0⊗G1 -> F0⊗G0`.
    pub fn tensor(&self, other: &GradedModule) -> Result<Self, ModuleError> {
        let ring = self.ring();
        if other.ring() != ring {
            return Err(ModuleError::RingMismatch("tensor product".into()));
        }
        let (a, b) = (&self.presentation, &other.presentation);
        let (n0, m0) = (a.rows(), b.rows());
        let target: Vec<i64> =
            a.target_twists.iter().flat_map(|t| b.target_twists.iter().map(move |u| t + u)).collect();
        let mut source = Vec::new();
        let mut cols: Vec<Vec<(usize, MultiPoly)>> = Vec::new();
        for c in 0..a.cols() {
            for j in 0..m0 {
                source.push(a.source_twists[c] + b.target_twists[j]);
                cols.push((0..n0).map(|i| (i * m0 + j, a.entries[i][c].clone())).collect());
            }
        }
        for i in 0..n0 {
            for c in 0..b.cols() {
                source.push(a.target_twists[i] + b.source_twists[c]);
                cols.push((0..m0).map(|j| (i * m0 + j, b.entries[j][c].clone())).collect());
            }
        }
        let mut entries = vec![vec![ring.zero(); cols.len()]; target.len()];
        for (c, col) in cols.into_iter().enumerate() {
            for (r, e) in col {
                entries[r][c] = e;
            }
        }
        let lf = self.locally_free && other.locally_free;
        Ok(Self::new(GradedMap { ring, target_twists: target, source_twists: source, entries }, lf))
    }

    /// Restriction to the hyperplane `x_n = 0`, as a module over `F_p[x0..x{n-1}]`.
    pub fn restrict_to_hyperplane(&self) -> Result<Self, ModuleError> {
        Ok(Self::new(self.presentation.restrict_last_var()?, self.locally_free))
    }

    pub fn lift_to(&self, ring: PolyRing) -> Self {
        Self::new(self.presentation.lift_to(ring), self.locally_free)
    }

    /// `dim_k M_d`.
    pub fn hilbert_function(&self, d: i64) -> u64 {
        self.presentation.target().dim_in_degree(d) - self.presentation.rank_in_degree(d) as u64
    }

    /// Value of the Hilbert polynomial at `d`, from the Betti numbers.
    pub fn hilbert_polynomial(&self, d: i64) -> i64 {
        let n = self.proj_dim() as i64;
        let res = self.resolution();
        res.modules()
            .iter()
            .enumerate()
            .map(|(i, ts)| {
                let s: i64 = ts.iter().map(|t| binomial_poly(d - t + n, n)).sum();
                if i % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }

    /// Spot check of local freeness: the presentation matrix must have the
    /// same rank at every sampled point of `P^n(F_p)`. Exhaustive when there
    /// are at most `samples` nonzero points; otherwise seeded random points.
    pub fn check_locally_free(&self, samples: usize, seed: u64) -> Result<(), ModuleError> {
        let ring = self.ring();
        let p = ring.modulus();
        let nv = ring.num_vars as u32;
        let expected = (self.num_generators() as i64 - self.rank()) as usize;
        let check = |point: Vec<u64>| -> Result<(), ModuleError> {
            if point.iter().all(|&x| x == 0) {
                return Ok(());
            }
            let found = self.presentation.rank_at(&point);
            if found != expected {
                return Err(ModuleError::NotLocallyFree { point, found, expected });
            }
            Ok(())
        };
        match p.checked_pow(nv) {
            Some(total) if total <= samples as u64 + 1 => {
                for idx in 1..total {
                    let mut x = idx;
                    check((0..nv).map(|_| { let v = x % p; x /= p; v }).collect())?;
                }
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    check((0..nv).map(|_| rng.gen_range(0..p)).collect())?;
                }
            }
        }
        Ok(())
    }
}

/// Dimension of the degree-`d` piece of the submodule generated by
/// homogeneous elements `(v, deg v)` of a free module.
pub fn span_rank(ring: PolyRing, gens: &[(ModVec, i64)], d: i64) -> usize {
    let mut coords = Coordinates::default();
    let mut ech = Echelon::new(ring.field);
    for (v, deg) in gens {
        let k = d - deg;
        if k < 0 || v.is_zero() {
            continue;
        }
        for m in Monomial::all_of_degree(ring.num_vars, k as u64) {
            let terms = v.terms().iter().map(|(r, mono, c)| -> ModTerm { (*r, mono.mul(&m), *c) });
            ech.insert(coords.row(terms));
        }
    }
    ech.rank()
}

/// `C(x, n)` as a polynomial in `x` (so `C(-1, n) = (-1)^n`), for small values.
pub(crate) fn binomial_poly(x: i64, n: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..n {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, p).unwrap()
    }

    #[test]
    fn construction_validates_homogeneity() {
        let r = ring(3, 5);
        let bad = GradedMap::new(r, vec![0], vec![2], vec![vec![r.parse("x0").unwrap()]]);
        assert_eq!(bad, Err(ModuleError::NotHomogeneous { row: 0, col: 0, expected: 2 }));
        let ragged = GradedMap::new(r, vec![0, 0], vec![1], vec![vec![r.var(0)]]);
        assert!(matches!(ragged, Err(ModuleError::Shape(_))));
    }

    #[test]
    fn hilbert_function_examples() {
        let r2 = ring(3, 7);
        assert_eq!(GradedModule::line_bundle(r2, 0).hilbert_function(3), 10);
        let r1 = ring(2, 7);
        assert_eq!(GradedModule::line_bundle(r1, -1).hilbert_function(0), 0);
        // Euler oracle: 3 * dim R_1 - dim R_0 = 8.
        let t = catalog::tangent(r2);
        assert_eq!(t.hilbert_function(0), 3 * 3 - 1);
    }

    #[test]
    fn free_hilbert_function_matches_binomial_sum() {
        let r = ring(3, 2);
        let m = GradedModule::free(r, vec![-1, 0, 2]);
        for d in -3..8 {
            let expected: i64 = [-1i64, 0, 2].iter().map(|t| if d - t >= 0 { binomial_poly(d - t + 2, 2) } else { 0 }).sum();
            assert_eq!(m.hilbert_function(d) as i64, expected);
        }
    }

    #[test]
    fn twist_and_frobenius_of_line_bundles() {
        let r = ring(3, 3);
        let m = GradedModule::line_bundle(r, 2);
        assert_eq!(m.twist(1).presentation().target_twists(), &[-3]);
        assert_eq!(m.twist(1).twist(-4), m.twist(-3));
        let f = m.frobenius(1).unwrap();
        assert_eq!(f.presentation().target_twists(), &[-6]);
        let a = m.frobenius(1).unwrap().frobenius(2).unwrap();
        assert_eq!(a, m.frobenius(3).unwrap());
    }

    #[test]
    fn frobenius_twist_commutation_on_tangent() {
        let r = ring(3, 3);
        let t = catalog::tangent(r);
        let lhs = t.twist(1).frobenius(1).unwrap();
        let rhs = t.frobenius(1).unwrap().twist(3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn direct_sum_and_tensor_of_line_bundles() {
        let r = ring(3, 5);
        let s = GradedModule::direct_sum(r, &[GradedModule::line_bundle(r, -1), GradedModule::line_bundle(r, 0)]).unwrap();
        assert_eq!(s.presentation().target_twists(), &[1, 0]);
        assert_eq!(s.presentation().cols(), 0);
        assert_eq!(GradedModule::direct_sum(r, &[]).unwrap().num_generators(), 0);
        let t = GradedModule::line_bundle(r, 2).tensor(&GradedModule::line_bundle(r, -5)).unwrap();
        assert_eq!(t, GradedModule::line_bundle(r, -3));
        let tan = catalog::tangent(r);
        let unit = tan.tensor(&GradedModule::line_bundle(r, 0)).unwrap();
        for d in -2..4 {
            assert_eq!(unit.hilbert_function(d), tan.hilbert_function(d));
        }
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = GradedModule::line_bundle(ring(3, 5), 0);
        let b = GradedModule::line_bundle(ring(3, 7), 0);
        assert!(matches!(a.tensor(&b), Err(ModuleError::RingMismatch(_))));
        assert!(matches!(GradedModule::direct_sum(ring(3, 5), &[a, b]), Err(ModuleError::RingMismatch(_))));
    }

    #[test]
    fn tangent_tensor_square_has_rank_four() {
        let r = ring(3, 5);
        let t = catalog::tangent(r);
        let tt = t.tensor(&t).unwrap();
        assert_eq!(tt.rank(), 4);
        assert!(tt.check_locally_free(50, 7).is_ok());
    }

    #[test]
    fn locally_free_spot_check_catches_point_sheaf() {
        // R/(x0, x1) on P^2: a skyscraper, not locally free.
        let r = ring(3, 3);
        let m = GradedMap::new(r, vec![0], vec![1, 1], vec![vec![r.var(0), r.var(1)]]).unwrap();
        let sky = GradedModule::new(m, false);
        assert!(matches!(sky.check_locally_free(100, 1), Err(ModuleError::NotLocallyFree { .. })));
        assert!(catalog::tangent(r).check_locally_free(100, 1).is_ok());
    }

    #[test]
    fn cancel_units_preserves_hilbert_function() {
        let r = ring(3, 7);
        // R(-1) ⊕ R presented redundantly: extra generator killed by a unit relation.
        let m = GradedMap::new(
            r,
            vec![1, 1, 0],
            vec![1],
            vec![vec![r.constant(3)], vec![r.constant(2)], vec![r.var(2)]],
        )
        .unwrap();
        let module = GradedModule::new(m.clone(), false);
        let mut reduced = m.clone();
        reduced.cancel_units();
        assert_eq!(reduced.rows(), 2);
        assert_eq!(reduced.cols(), 0);
        let small = GradedModule::new(reduced, false);
        for d in -1..5 {
            assert_eq!(module.hilbert_function(d), small.hilbert_function(d));
        }
    }

    #[test]
    fn hyperplane_restriction_of_tangent() {
        let r = ring(3, 5);
        let h = catalog::tangent(r).restrict_to_hyperplane().unwrap();
        assert_eq!(h.ring().num_vars, 2);
        // T_{P^2}|_H = O(2) ⊕ O(1) on P^1; the module agrees with the sheaf from degree -1 on.
        for d in -1..5 {
            let expected = [2i64, 1].iter().map(|a| (d + a + 1).max(0) as u64).sum::<u64>();
            assert_eq!(h.hilbert_function(d), expected, "degree {d}");
        }
    }
}
