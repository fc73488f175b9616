//! Frobenius amplitude on P^n.
//!
//! On projective space `φ(E)` is the least `i0` with `H^i(E(j)) = 0` for all
//! `i > i0` and `j ∈ [-n-1, 0]`, so one cohomology table decides it.
//!
//! The regularity bound uses hypotheses of the form
//! `reg(E) < -Reg(X)(dim X - 1)`, with the negative sign throughout.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{regularity, reg_x, support_dimension, Cohomology, CohomologyError, CohomologyTable};
use crate::groebner::{columns, groebner_basis, reduce, ModVec};
use crate::module::{span_rank, GradedMap, GradedModule, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmplitudeError {
    #[error("the sheaf is zero")]
    ZeroModule,
    #[error("{0} must be flagged locally free")]
    NotLocallyFree(&'static str),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("hyperplane restriction needs P^n with n >= 2")]
    NoHyperplane,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmplitudeReport {
    pub phi: usize,
    pub witness_table: CohomologyTable,
    pub prime: u64,
    /// Frobenius exponents `e` at which `φ(E^(p^e))` was recomputed and found equal.
    pub frobenius_checked: Vec<u32>,
}

fn phi_of_table(t: &CohomologyTable) -> usize {
    (1..=t.n).rev().find(|&i| t.h[i].iter().any(|&v| v != 0)).unwrap_or(0)
}

fn window_table(m: &GradedModule) -> Result<CohomologyTable, AmplitudeError> {
    if support_dimension(m).is_none() {
        return Err(AmplitudeError::ZeroModule);
    }
    let n = m.proj_dim() as i64;
    Ok(Cohomology::new(m).table(-n - 1, 0)?)
}

/// `φ(M~)` from the cohomology table over `[-n-1, 0]`.
pub fn f_amplitude(m: &GradedModule) -> Result<AmplitudeReport, AmplitudeError> {
    let witness_table = window_table(m)?;
    Ok(AmplitudeReport { phi: phi_of_table(&witness_table), witness_table, prime: m.ring().modulus(), frobenius_checked: vec![] })
}

/// As [`f_amplitude`], and also recomputes `φ` for the Frobenius pullbacks
/// `e = 1..=max_e`; exponents where the value agrees are recorded.
pub fn f_amplitude_sampled(m: &GradedModule, max_e: u32) -> Result<AmplitudeReport, AmplitudeError> {
    let mut report = f_amplitude(m)?;
    for e in 1..=max_e {
        let t = window_table(&m.frobenius(e)?)?;
        if phi_of_table(&t) == report.phi {
            report.frobenius_checked.push(e);
        }
    }
    Ok(report)
}

pub fn f_ample_test(m: &GradedModule) -> Result<bool, AmplitudeError> {
    Ok(f_amplitude(m)?.phi == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmplitudeBound {
    pub regularity: i64,
    pub reg_x: i64,
    /// Greatest integer strictly less than `-reg / Reg(X)`.
    pub n: i64,
    pub bound: i64,
    pub phi: usize,
}

impl AmplitudeBound {
    pub fn holds(&self) -> bool {
        self.phi as i64 <= self.bound
    }
}

/// `φ ≤ max(dim X - n - 1, 0)` where `n` is the greatest integer strictly
/// below `-reg / Reg(X)`.
pub fn amplitude_bound_from_regularity(m: &GradedModule) -> Result<AmplitudeBound, AmplitudeError> {
    let phi = f_amplitude(m)?.phi;
    let regularity = regularity(m)?.sheaf_regularity;
    let rx = reg_x(m.ring());
    let n = Integer::div_floor(&(-regularity - 1), &rx);
    let bound = (m.proj_dim() as i64 - n - 1).max(0);
    Ok(AmplitudeBound { regularity, reg_x: rx, n, bound, phi })
}

/// A module homomorphism given on generators: `matrix` maps the generators
/// of `source` into the free cover of `target`.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub matrix: GradedMap,
}

impl ModuleMap {
    /// Checks shape and that relations of `source` land in the relations of `target`.
    pub fn new(source: GradedModule, target: GradedModule, matrix: GradedMap) -> Result<Self, AmplitudeError> {
        if matrix.target_twists() != target.presentation().target_twists()
            || matrix.source_twists() != source.presentation().target_twists()
        {
            return Err(AmplitudeError::NotExact("map shape does not match the presentations".into()));
        }
        let image = matrix.compose(source.presentation())?;
        if !lies_in(target.presentation(), &columns(&image)) {
            return Err(AmplitudeError::NotExact("map is not well defined on the source module".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }
}

fn lies_in(pres: &GradedMap, vecs: &[ModVec]) -> bool {
    let gb = groebner_basis(&pres.target(), &columns(pres)).expect("presentation is homogeneous");
    vecs.iter().all(|v| reduce(&pres.target().ring, v, &gb).is_zero())
}

/// `dim` of the image of `f` in degree `d`.
fn image_dim(f: &ModuleMap, d: i64) -> usize {
    let pres = f.target.presentation();
    let rel: Vec<(ModVec, i64)> = (0..pres.cols()).map(|c| (pres.column(c), pres.source_twists()[c])).collect();
    let mut all = rel.clone();
    all.extend((0..f.matrix.cols()).map(|c| (f.matrix.column(c), f.matrix.source_twists()[c])));
    let ring = pres.ring();
    span_rank(ring, &all, d) - span_rank(ring, &rel, d)
}

/// Verifies that `0 -> E1 -> E2 -> E3 -> 0` is exact in every degree of
/// `window` and that the composite is zero.
pub fn verify_short_exact(
    f: &ModuleMap,
    g: &ModuleMap,
    window: std::ops::RangeInclusive<i64>,
) -> Result<(), AmplitudeError> {
    if f.target != g.source {
        return Err(AmplitudeError::NotExact("maps are not composable".into()));
    }
    let comp = g.matrix.compose(&f.matrix)?;
    if !lies_in(g.target.presentation(), &columns(&comp)) {
        return Err(AmplitudeError::NotExact("composite is not zero".into()));
    }
    for d in window {
        let (e1, e2, e3) = (f.source.hilbert_function(d), f.target.hilbert_function(d), g.target.hilbert_function(d));
        if image_dim(f, d) as u64 != e1 {
            return Err(AmplitudeError::NotExact(format!("first map not injective in degree {d}")));
        }
        if image_dim(g, d) as u64 != e3 {
            return Err(AmplitudeError::NotExact(format!("second map not surjective in degree {d}")));
        }
        if e2 != e1 + e3 {
            return Err(AmplitudeError::NotExact(format!("not exact in the middle in degree {d}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub phi: [usize; 3],
    pub holds: bool,
}

/// `φ(E2) ≤ max(φ(E1), φ(E3))` for an exact `0 -> E1 -> E2 -> E3 -> 0`.
pub fn check_exact_sequence_bounds(f: &ModuleMap, g: &ModuleMap) -> Result<ExactSequenceReport, AmplitudeError> {
    let twists = f.source.presentation().target_twists().iter().chain(f.target.presentation().target_twists());
    let twists: Vec<i64> = twists.chain(g.target.presentation().target_twists()).copied().collect();
    let lo = twists.iter().copied().min().unwrap_or(0);
    let hi = twists.iter().copied().max().unwrap_or(0) + f.source.ring().num_vars as i64 + 1;
    verify_short_exact(f, g, lo..=hi)?;
    let phi = [f_amplitude(&f.source)?.phi, f_amplitude(&f.target)?.phi, f_amplitude(&g.target)?.phi];
    Ok(ExactSequenceReport { phi, holds: phi[1] <= phi[0].max(phi[2]) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub phi_e: usize,
    pub phi_f: usize,
    pub phi_tensor: usize,
    pub holds: bool,
}

/// `φ(E ⊗ F) ≤ min(φ(E) + φ(F), n)`.
pub fn check_tensor_subadditivity(e: &GradedModule, f: &GradedModule) -> Result<TensorReport, AmplitudeError> {
    if !e.is_locally_free() {
        return Err(AmplitudeError::NotLocallyFree("E"));
    }
    if !f.is_locally_free() {
        return Err(AmplitudeError::NotLocallyFree("F"));
    }
    let phi_e = f_amplitude(e)?.phi;
    let phi_f = f_amplitude(f)?.phi;
    let phi_tensor = f_amplitude(&e.tensor(f)?)?.phi;
    let holds = phi_tensor <= (phi_e + phi_f).min(e.proj_dim());
    Ok(TensorReport { phi_e, phi_f, phi_tensor, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankDimensionReport {
    pub phi: usize,
    pub dim: usize,
    pub rank: i64,
    pub below_dimension: bool,
    /// `φ < rank`: a characteristic-zero statement, observed here at one prime only.
    pub below_rank_at_this_prime: bool,
}

/// For a locally free module asserted ample by the caller.
pub fn check_rank_and_dimension_bounds(m: &GradedModule) -> Result<RankDimensionReport, AmplitudeError> {
    if !m.is_locally_free() {
        return Err(AmplitudeError::NotLocallyFree("E"));
    }
    let phi = f_amplitude(m)?.phi;
    let dim = m.proj_dim();
    let rank = m.rank();
    Ok(RankDimensionReport { phi, dim, rank, below_dimension: phi < dim, below_rank_at_this_prime: (phi as i64) < rank })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneReport {
    pub phi: usize,
    pub phi_restricted: usize,
    pub holds: bool,
}

/// `φ(E_H) ≤ φ(E) ≤ φ(E_H) + 1` for the hyperplane `x_n = 0`.
pub fn check_hyperplane_restriction(m: &GradedModule) -> Result<HyperplaneReport, AmplitudeError> {
    if m.proj_dim() < 2 {
        return Err(AmplitudeError::NoHyperplane);
    }
    if !m.is_locally_free() {
        return Err(AmplitudeError::NotLocallyFree("E"));
    }
    let phi = f_amplitude(m)?.phi;
    let phi_restricted = f_amplitude(&m.restrict_to_hyperplane()?)?.phi;
    Ok(HyperplaneReport { phi, phi_restricted, holds: phi_restricted <= phi && phi <= phi_restricted + 1 })
}

/// F-ample implies `(-1)`-regular on P^n. Returns `None` when `M` is not F-ample.
pub fn check_f_ample_regularity(m: &GradedModule) -> Result<Option<bool>, AmplitudeError> {
    if !f_ample_test(m)? {
        return Ok(None);
    }
    Ok(Some(regularity(m)?.sheaf_regularity <= -1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneClassificationReport {
    pub summands: usize,
    pub core_regularity: i64,
    pub f_ample: bool,
    pub h2_at_minus_four: u64,
    pub holds: bool,
}

/// On P^2, `V = E ⊕ O(1)^N` with `E` `(-2)`-regular is F-ample and
/// `h^2(V(-4)) = N` recovers the number of `O(1)` summands.
pub fn check_plane_classification(core: &GradedModule, summands: usize) -> Result<PlaneClassificationReport, AmplitudeError> {
    let ring = core.ring();
    assert_eq!(ring.proj_dim(), 2, "classification check lives on P^2");
    let core_regularity = regularity(core)?.sheaf_regularity;
    let mut parts = vec![core.clone()];
    parts.extend(std::iter::repeat_with(|| GradedModule::line_bundle(ring, 1)).take(summands));
    let v = GradedModule::direct_sum(ring, &parts)?;
    let f_ample = f_ample_test(&v)?;
    let h2_at_minus_four = Cohomology::new(&v).h(2, -4)?;
    let holds = core_regularity <= -2 && f_ample && h2_at_minus_four == summands as u64;
    Ok(PlaneClassificationReport { summands, core_regularity, f_ample, h2_at_minus_four, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::PolyRing;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, p).unwrap()
    }

    #[test]
    fn amplitude_examples_on_p2() {
        for p in [2, 3, 5, 7] {
            let r = ring(3, p);
            assert_eq!(f_amplitude(&GradedModule::line_bundle(r, 1)).unwrap().phi, 0);
            assert_eq!(f_amplitude(&GradedModule::line_bundle(r, 0)).unwrap().phi, 2);
            let t = f_amplitude(&catalog::tangent(r)).unwrap();
            assert_eq!(t.phi, 1);
            assert_eq!(t.witness_table.get(1, -3), 1);
        }
    }

    #[test]
    fn f_ample_tests() {
        let r = ring(3, 3);
        assert!(f_ample_test(&GradedModule::line_bundle(r, 2)).unwrap());
        assert!(!f_ample_test(&GradedModule::line_bundle(r, 0)).unwrap());
        assert!(!f_ample_test(&GradedModule::line_bundle(r, -1)).unwrap());
        assert!(!f_ample_test(&catalog::tangent(r)).unwrap());
        assert_eq!(f_ample_test(&GradedModule::zero(r)), Err(AmplitudeError::ZeroModule));
    }

    #[test]
    fn frobenius_sampling_agrees() {
        let r = ring(3, 2);
        let rep = f_amplitude_sampled(&catalog::tangent(r), 2).unwrap();
        assert_eq!(rep.frobenius_checked, vec![1, 2]);
    }

    #[test]
    fn regularity_bound_examples() {
        let r = ring(3, 5);
        let b = amplitude_bound_from_regularity(&GradedModule::line_bundle(r, 5)).unwrap();
        assert_eq!((b.regularity, b.reg_x, b.n, b.bound, b.phi), (-5, 1, 4, 0, 0));
        let b = amplitude_bound_from_regularity(&GradedModule::line_bundle(r, 0)).unwrap();
        assert_eq!((b.n, b.bound, b.phi), (-1, 2, 2));
        assert!(amplitude_bound_from_regularity(&catalog::tangent(r)).unwrap().holds());
    }

    #[test]
    fn euler_sequence_bounds() {
        let (f, g) = catalog::euler_sequence(ring(3, 3), 0).unwrap();
        let rep = check_exact_sequence_bounds(&f, &g).unwrap();
        assert_eq!(rep.phi, [2, 0, 1]);
        assert!(rep.holds);
        let (f, g) = catalog::koszul_sequence(ring(3, 3)).unwrap();
        let rep = check_exact_sequence_bounds(&f, &g).unwrap();
        assert!(rep.holds, "{rep:?}");
        let r = ring(3, 3);
        let (f, g) = catalog::split_sequence(&GradedModule::line_bundle(r, 1), &catalog::tangent(r)).unwrap();
        let rep = check_exact_sequence_bounds(&f, &g).unwrap();
        assert_eq!(rep.phi, [0, 1, 1]);
    }

    #[test]
    fn non_exact_sequence_is_rejected() {
        let r = ring(3, 3);
        let (f, _) = catalog::euler_sequence(r, 0).unwrap();
        // O(1)^3 -> O(1)^3 by the identity: cokernel is zero, and O -> O(1)^3 is then not exact at the end.
        let o1 = GradedModule::free(r, vec![-1; 3]);
        let g = ModuleMap::new(o1.clone(), o1, GradedMap::identity(r, vec![-1; 3])).unwrap();
        assert!(matches!(check_exact_sequence_bounds(&f, &g), Err(AmplitudeError::NotExact(_))));
        // A map that does not respect relations.
        let t = catalog::tangent(r);
        let bad = GradedMap::new(r, vec![-1], vec![-1; 3], vec![vec![r.one(), r.zero(), r.zero()]]).unwrap();
        assert!(ModuleMap::new(t, GradedModule::free(r, vec![-1]), bad).is_err());
    }

    #[test]
    fn tensor_subadditivity_examples() {
        let r = ring(3, 3);
        let o1 = GradedModule::line_bundle(r, 1);
        let t = catalog::tangent(r);
        let rep = check_tensor_subadditivity(&t, &o1).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.phi_tensor, 0);
        let rep = check_tensor_subadditivity(&t, &t).unwrap();
        assert!(rep.holds && rep.phi_tensor <= 2);
        assert!(check_tensor_subadditivity(&catalog::point_ideal(r), &t).is_err());
    }

    #[test]
    fn rank_and_dimension_examples() {
        let r = ring(3, 5);
        let rep = check_rank_and_dimension_bounds(&catalog::tangent(r)).unwrap();
        assert_eq!((rep.phi, rep.dim, rep.rank), (1, 2, 2));
        assert!(rep.below_dimension && rep.below_rank_at_this_prime);
        let r3 = ring(4, 5);
        let rep = check_rank_and_dimension_bounds(&catalog::line_bundle_sum(r3, &[1, 2])).unwrap();
        assert_eq!(rep.phi, 0);
        let rep = check_rank_and_dimension_bounds(&GradedModule::line_bundle(ring(2, 5), 1)).unwrap();
        assert!(rep.below_dimension);
    }

    #[test]
    fn hyperplane_and_plane_checks() {
        let r = ring(3, 3);
        assert!(check_hyperplane_restriction(&catalog::tangent(r)).unwrap().holds);
        let rep = check_plane_classification(&catalog::tangent(r).twist(1), 2).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert_eq!(check_f_ample_regularity(&GradedModule::line_bundle(r, 1)).unwrap(), Some(true));
        assert_eq!(check_f_ample_regularity(&catalog::tangent(r)).unwrap(), None);
    }
}
