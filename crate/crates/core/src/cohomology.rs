//! Sheaf cohomology on P^n through graded local duality, and
//! Castelnuovo–Mumford regularity of the associated sheaf.
//!
//! For a minimal resolution `F_•` of `M`, the complex `C^q = Hom(F_q, R(-n-1))`
//! computes `Ext^q(M, R(-n-1))`, and
//!
//! ```text
//! h^i(M~(d)) = dim Ext^{n-i}(M, R(-n-1))_{-d}                       (i >= 1)
//! h^0(M~(d)) = dim M_d - dim Ext^{n+1}(...)_{-d} + dim Ext^n(...)_{-d}
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{Coordinates, FreeModule, FreeResolution, ModTerm};
use crate::linalg::Echelon;
use crate::module::{GradedMap, GradedModule, ModuleError};
use crate::poly::{Monomial, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cohomological degree {i} outside [0, {n}]")]
    IndexOutOfRange { i: i64, n: usize },
    #[error("empty twist window {lo}..{hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("the module is zero")]
    ZeroModule,
    #[error("the sheaf is zero, so its regularity is undefined")]
    ZeroSheaf,
    #[error("the sheaf has zero-dimensional support, so its regularity is unbounded below")]
    ZeroDimensionalSupport,
    #[error("Bott formula arguments out of range: n={n}, j={j}, i={i}")]
    BottRange { n: i64, j: i64, i: i64 },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Cohomology data of one module: the dualized resolution and a cache of
/// degreewise ranks. Cheap to query concurrently.
pub struct Cohomology {
    module: GradedModule,
    resolution: Arc<FreeResolution>,
    n: usize,
    cochains: Vec<FreeModule>,
    dual_maps: Vec<GradedMap>,
    ranks: Mutex<HashMap<(usize, i64), usize>>,
}

impl Cohomology {
    pub fn new(module: &GradedModule) -> Self {
        let resolution = module.resolution();
        let n = module.proj_dim();
        let shift = n as i64 + 1;
        let ring = module.ring();
        let cochains = resolution
            .modules()
            .iter()
            .map(|ts| FreeModule::new(ring, ts.iter().map(|t| shift - t).collect()))
            .collect();
        let dual_maps = resolution.maps().iter().map(|d| d.dual(shift)).collect();
        Cohomology {
            module: module.clone(),
            resolution,
            n,
            cochains,
            dual_maps,
            ranks: Mutex::new(HashMap::new()),
        }
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    pub fn proj_dim(&self) -> usize {
        self.n
    }

    fn dual_rank(&self, q: usize, e: i64) -> usize {
        if q >= self.dual_maps.len() {
            return 0;
        }
        if let Some(&r) = self.ranks.lock().unwrap().get(&(q, e)) {
            return r;
        }
        let r = self.dual_maps[q].rank_in_degree(e);
        self.ranks.lock().unwrap().insert((q, e), r);
        r
    }

    /// `dim Ext^q(M, R(-n-1))_e`.
    pub fn ext_dim(&self, q: usize, e: i64) -> u64 {
        let Some(c) = self.cochains.get(q) else { return 0 };
        let dim = c.dim_in_degree(e);
        let out = self.dual_rank(q, e) as u64;
        let inc = if q == 0 { 0 } else { self.dual_rank(q - 1, e) as u64 };
        dim - out - inc
    }

    /// `h^i(P^n, M~(d))`.
    pub fn h(&self, i: i64, d: i64) -> Result<u64, CohomologyError> {
        let n = self.n as i64;
        if !(0..=n).contains(&i) {
            return Err(CohomologyError::IndexOutOfRange { i, n: self.n });
        }
        if i >= 1 {
            return Ok(self.ext_dim((n - i) as usize, -d));
        }
        let m_d = self.module.hilbert_function(d);
        Ok(m_d + self.ext_dim(self.n, -d) - self.ext_dim(self.n + 1, -d))
    }

    pub fn table(&self, lo: i64, hi: i64) -> Result<CohomologyTable, CohomologyError> {
        if lo > hi {
            return Err(CohomologyError::EmptyWindow { lo, hi });
        }
        let cells: Vec<(i64, i64)> = (0..=self.n as i64).flat_map(|i| (lo..=hi).map(move |d| (i, d))).collect();
        let values: Vec<u64> = cells.par_iter().map(|&(i, d)| self.h(i, d).expect("index in range")).collect();
        let width = (hi - lo + 1) as usize;
        let h = values.chunks(width).map(<[u64]>::to_vec).collect();
        Ok(CohomologyTable { n: self.n, twist_lo: lo, twist_hi: hi, h })
    }

    /// Whether `H^i(F(m-i)) = 0` for all `i > 0`.
    pub fn is_regular(&self, m: i64) -> bool {
        (1..=self.n as i64).all(|i| self.h(i, m - i).unwrap() == 0)
    }

    /// Regularity of the sheaf, scanning down from the Betti bound.
    pub fn regularity(&self) -> Result<RegularityReport, CohomologyError> {
        let bound = self.resolution.betti_regularity().ok_or(CohomologyError::ZeroModule)?;
        match support_dimension(&self.module) {
            None => return Err(CohomologyError::ZeroSheaf),
            Some(0) => return Err(CohomologyError::ZeroDimensionalSupport),
            Some(_) => {}
        }
        Ok(RegularityReport {
            sheaf_regularity: self.scan_regularity(bound),
            module_regularity_bound: bound,
            reg_x: reg_x(self.module.ring()),
        })
    }

    fn scan_regularity(&self, start: i64) -> i64 {
        let mut m = start;
        while !self.is_regular(m) {
            m += 1;
        }
        while self.is_regular(m - 1) {
            m -= 1;
        }
        m
    }

    /// `Ext^{n+1}` and `Ext^n` vanish in degree `-d`, so `M_d = H^0(M~(d))`.
    pub fn module_is_sections(&self, d: i64) -> bool {
        self.ext_dim(self.n, -d) == 0 && self.ext_dim(self.n + 1, -d) == 0
    }
}

/// Dimension of the support of `M~` (degree of the Hilbert polynomial), or
/// `None` for the zero sheaf.
pub fn support_dimension(m: &GradedModule) -> Option<usize> {
    let n = m.proj_dim();
    let mut values: Vec<i64> = (0..=n as i64 + 1).map(|d| m.hilbert_polynomial(d)).collect();
    let mut degree = None;
    for k in 0..=n {
        if values.iter().any(|&v| v != 0) {
            degree = Some(k);
        }
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    degree
}

/// `Reg(X) = max(1, reg(O_X))` for `X = P^n`, computed once per ring.
pub fn reg_x(ring: PolyRing) -> i64 {
    static CACHE: OnceLock<Mutex<HashMap<PolyRing, i64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache.lock().unwrap().get(&ring) {
        return v;
    }
    let o = Cohomology::new(&GradedModule::line_bundle(ring, 0));
    let v = o.scan_regularity(0).max(1);
    cache.lock().unwrap().insert(ring, v);
    v
}

/// `h^i(P^n, M~(d))`.
pub fn sheaf_cohomology(m: &GradedModule, i: i64, d: i64) -> Result<u64, CohomologyError> {
    Cohomology::new(m).h(i, d)
}

pub fn cohomology_table(m: &GradedModule, lo: i64, hi: i64) -> Result<CohomologyTable, CohomologyError> {
    Cohomology::new(m).table(lo, hi)
}

pub fn regularity(m: &GradedModule) -> Result<RegularityReport, CohomologyError> {
    Cohomology::new(m).regularity()
}

/// `h^i(F(d))` over a window; rows are `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub n: usize,
    pub twist_lo: i64,
    pub twist_hi: i64,
    pub h: Vec<Vec<u64>>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, d: i64) -> u64 {
        if i > self.n || d < self.twist_lo || d > self.twist_hi {
            return 0;
        }
        self.h[i][(d - self.twist_lo) as usize]
    }

    pub fn twists(&self) -> RangeInclusive<i64> {
        self.twist_lo..=self.twist_hi
    }

    pub fn euler_characteristic(&self, d: i64) -> i64 {
        (0..=self.n).map(|i| if i % 2 == 0 { self.get(i, d) as i64 } else { -(self.get(i, d) as i64) }).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().flatten().all(|&v| v == 0)
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .h
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain([self.twist_lo.to_string().len(), self.twist_hi.to_string().len()])
            .max()
            .unwrap_or(1);
        write!(f, "{:>5}", "d")?;
        for d in self.twists() {
            write!(f, " {d:>width$}")?;
        }
        for (i, row) in self.h.iter().enumerate().rev() {
            write!(f, "\n{:>5}", format!("h^{i}"))?;
            for v in row {
                write!(f, " {v:>width$}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub sheaf_regularity: i64,
    pub module_regularity_bound: i64,
    pub reg_x: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decreasing,
    Increasing,
    Bounded,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Decreasing => "decreasing",
            Trend::Increasing => "increasing",
            Trend::Bounded => "bounded",
        })
    }
}

/// `reg(M^(p^e))` for `e = 0..=e_max`. The minimum is an upper bound for
/// minreg; the trend is evidence about areg, not a value for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusRegularity {
    pub sequence: Vec<i64>,
    pub min: i64,
    pub trend: Trend,
}

pub fn minreg_areg(m: &GradedModule, e_max: u32) -> Result<FrobeniusRegularity, CohomologyError> {
    let mut sequence = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        let fm = if e == 0 { m.clone() } else { m.frobenius(e)? };
        sequence.push(regularity(&fm)?.sheaf_regularity);
    }
    let min = *sequence.iter().min().unwrap();
    let trend = if sequence.len() > 1 && sequence.windows(2).all(|w| w[1] < w[0]) {
        Trend::Decreasing
    } else if sequence.len() > 1 && sequence.windows(2).all(|w| w[1] > w[0]) {
        Trend::Increasing
    } else {
        Trend::Bounded
    };
    Ok(FrobeniusRegularity { sequence, min, trend })
}

/// `C(a, b)` for `a >= 0`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: u128 = 1;
    for k in 0..b {
        r = r * (a - k) as u128 / (k + 1) as u128;
    }
    r as u64
}

/// `h^i(P^n, Ω^j(d))` by Bott's formula.
pub fn bott_oracle(n: i64, j: i64, d: i64, i: i64) -> Result<u64, CohomologyError> {
    if n < 1 || !(0..=n).contains(&j) || !(0..=n).contains(&i) {
        return Err(CohomologyError::BottRange { n, j, i });
    }
    Ok(if i == 0 && d > j {
        binomial(d + n - j, d) * binomial(d - 1, j)
    } else if d == 0 && i == j {
        1
    } else if i == n && d < j - n {
        binomial(-d + j, -d) * binomial(-d - 1, n - j)
    } else {
        0
    })
}

/// `h^i` of `⊕ O(-t)` at twist `d`, in closed form.
pub fn free_cohomology(n: usize, twists: &[i64], i: usize, d: i64) -> u64 {
    let n64 = n as i64;
    twists
        .iter()
        .map(|t| {
            let a = d - t;
            if i == 0 && a >= 0 {
                binomial(a + n64, n64)
            } else if i == n && a < -n64 {
                binomial(-a - 1, n64)
            } else {
                0
            }
        })
        .sum()
}

/// Vanishing transfer on the minimal resolution over a window: whenever
/// `H^{i+b}(F_b(d)) = 0` for all `b`, also `H^i(M~(d)) = 0`.
/// Returns the `(i, d)` cells where the implication fails.
pub fn resolution_vanishing_violations(c: &Cohomology, window: RangeInclusive<i64>) -> Vec<(usize, i64)> {
    let n = c.proj_dim();
    let modules = c.resolution().modules();
    let mut bad = Vec::new();
    for d in window {
        for i in 0..=n {
            let premise = modules
                .iter()
                .enumerate()
                .all(|(b, ts)| i + b > n || free_cohomology(n, ts, i + b, d) == 0);
            if premise && c.h(i as i64, d).unwrap() != 0 {
                bad.push((i, d));
            }
        }
    }
    bad
}

/// The resolution bound `max_{b < n} (reg F_b - b)` on the regularity, where
/// the regularity of `⊕ O(-t)` is `max t`.
pub fn resolution_regularity_bound(res: &FreeResolution, n: usize) -> Option<i64> {
    res.modules()
        .iter()
        .enumerate()
        .take(n.max(1))
        .filter_map(|(b, ts)| ts.iter().max().map(|t| t - b as i64))
        .max()
}

/// Outcome of the global-generation test in a range of degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalGeneration {
    /// `M_k = H^0(M~(k))` for every tested `k`, so the module test decides the sheaf statement.
    pub sections_match: bool,
    /// `(k, R_k ⊗ M_0 -> M_k surjective)`.
    pub surjective: Vec<(i64, bool)>,
}

impl GlobalGeneration {
    pub fn holds(&self) -> bool {
        self.sections_match && self.surjective.iter().all(|s| s.1)
    }
}

/// Tests surjectivity of `H^0(F) ⊗ R_k -> H^0(F(k))` for `k` in `degrees`.
pub fn global_generation(c: &Cohomology, degrees: RangeInclusive<i64>) -> GlobalGeneration {
    let m = c.module();
    let sections_match = c.module_is_sections(0) && degrees.clone().all(|k| c.module_is_sections(k));
    let pres = m.presentation();
    let ring = m.ring();
    let target = pres.target();
    let surjective = degrees
        .map(|k| {
            let mut coords = Coordinates::default();
            let mut ech = Echelon::new(ring.field);
            for (r, &t) in pres.target_twists().iter().enumerate() {
                if t <= 0 && k - t >= 0 {
                    for mono in Monomial::all_of_degree(ring.num_vars, (k - t) as u64) {
                        ech.insert(coords.row(std::iter::once((r, mono, 1))));
                    }
                }
            }
            for c in 0..pres.cols() {
                let s = k - pres.source_twists()[c];
                if s < 0 {
                    continue;
                }
                let col = pres.column(c);
                for mono in Monomial::all_of_degree(ring.num_vars, s as u64) {
                    let terms = col.terms().iter().map(|(r, mm, v)| -> ModTerm { (*r, mm.mul(&mono), *v) });
                    ech.insert(coords.row(terms));
                }
            }
            (k, ech.rank() as u64 == target.dim_in_degree(k))
        })
        .collect();
    GlobalGeneration { sections_match, surjective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, p).unwrap()
    }

    #[test]
    fn canonical_bundle_top_cohomology() {
        let o = GradedModule::line_bundle(ring(3, 5), 0);
        assert_eq!(sheaf_cohomology(&o, 2, -3).unwrap(), 1);
    }

    #[test]
    fn line_bundle_sections_on_p1() {
        let o = GradedModule::line_bundle(ring(2, 3), 0);
        for d in 0..6 {
            assert_eq!(sheaf_cohomology(&o, 0, d).unwrap(), d as u64 + 1);
        }
    }

    #[test]
    fn tangent_h1_at_minus_three() {
        let t = catalog::tangent(ring(3, 7));
        assert_eq!(sheaf_cohomology(&t, 1, -3).unwrap(), 1);
    }

    #[test]
    fn index_out_of_range() {
        let o = GradedModule::line_bundle(ring(3, 5), 0);
        assert_eq!(sheaf_cohomology(&o, 3, 0), Err(CohomologyError::IndexOutOfRange { i: 3, n: 2 }));
        assert!(sheaf_cohomology(&o, -1, 0).is_err());
    }

    #[test]
    fn table_on_p1() {
        let o = GradedModule::line_bundle(ring(2, 2), 0);
        let t = cohomology_table(&o, -2, 1).unwrap();
        assert_eq!(t.h, vec![vec![0, 0, 1, 2], vec![1, 0, 0, 0]]);
        assert!(cohomology_table(&o, 1, 0).is_err());
    }

    #[test]
    fn omega_one_table_matches_bott() {
        let r = ring(3, 3);
        let t = cohomology_table(&catalog::omega(r, 1), -1, 1).unwrap();
        for i in 0..=2 {
            for d in -1..=1 {
                assert_eq!(t.get(i, d), bott_oracle(2, 1, d, i as i64).unwrap(), "h^{i}(Ω¹({d}))");
            }
        }
        assert_eq!(t.get(1, 0), 1);
    }

    #[test]
    fn zero_module_table_is_zero() {
        let z = GradedModule::zero(ring(3, 5));
        assert!(cohomology_table(&z, -3, 3).unwrap().is_zero());
        assert_eq!(regularity(&z), Err(CohomologyError::ZeroModule));
    }

    #[test]
    fn regularity_of_line_bundles_and_point_ideal() {
        let r = ring(3, 5);
        for d in -3..=3 {
            assert_eq!(regularity(&GradedModule::line_bundle(r, d)).unwrap().sheaf_regularity, -d);
        }
        let rep = regularity(&catalog::point_ideal(r)).unwrap();
        assert_eq!(rep.sheaf_regularity, 1);
        assert_eq!(rep.module_regularity_bound, 1);
        assert_eq!(rep.reg_x, 1);
    }

    #[test]
    fn finite_length_and_point_modules_are_rejected() {
        let r = ring(3, 5);
        // R / (x0, x1, x2): the zero sheaf.
        let m = GradedMap::new(r, vec![0], vec![1, 1, 1], vec![vec![r.var(0), r.var(1), r.var(2)]]).unwrap();
        assert_eq!(regularity(&GradedModule::new(m, false)), Err(CohomologyError::ZeroSheaf));
        // R / (x0, x1): a point.
        let m = GradedMap::new(r, vec![0], vec![1, 1], vec![vec![r.var(0), r.var(1)]]).unwrap();
        assert_eq!(regularity(&GradedModule::new(m, false)), Err(CohomologyError::ZeroDimensionalSupport));
    }

    #[test]
    fn frobenius_regularity_sequences() {
        let r = ring(3, 2);
        let s = minreg_areg(&GradedModule::line_bundle(r, 1), 3).unwrap();
        assert_eq!(s.sequence, vec![-1, -2, -4, -8]);
        assert_eq!(s.trend, Trend::Decreasing);
        let s = minreg_areg(&GradedModule::line_bundle(r, 0), 2).unwrap();
        assert_eq!(s.sequence, vec![0, 0, 0]);
        assert_eq!(s.trend, Trend::Bounded);
        let r3 = ring(3, 3);
        let s = minreg_areg(&GradedModule::line_bundle(r3, -1), 3).unwrap();
        assert_eq!(s.sequence, vec![1, 3, 9, 27]);
        assert_eq!(s.trend, Trend::Increasing);
        assert_eq!(s.min, 1);
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_oracle(2, 1, 0, 1).unwrap(), 1);
        assert_eq!(bott_oracle(2, 0, 3, 0).unwrap(), 10);
        // h^0(Ω²_{P^3}(2)): d = j gives no sections.
        assert_eq!(bott_oracle(3, 2, 2, 0).unwrap(), 0);
        assert_eq!(bott_oracle(3, 2, 3, 0).unwrap(), 4);
        assert!(bott_oracle(2, 3, 0, 0).is_err());
    }

    #[test]
    fn global_generation_of_zero_regular_modules() {
        let r = ring(3, 3);
        for m in [catalog::tangent(r).twist(-1), catalog::omega(r, 1).twist(2), catalog::point_ideal(r).twist(1)] {
            let c = Cohomology::new(&m);
            assert_eq!(c.regularity().unwrap().sheaf_regularity, 0);
            assert!(global_generation(&c, 0..=3).holds());
        }
        let c = Cohomology::new(&GradedModule::line_bundle(r, -1));
        assert!(!global_generation(&c, 0..=3).holds());
    }

    #[test]
    fn resolution_vanishing_and_bound_on_catalog() {
        let r = ring(4, 2);
        for m in [catalog::tangent(r), catalog::omega(r, 1), catalog::omega(r, 2), catalog::point_ideal(r)] {
            let c = Cohomology::new(&m);
            assert!(resolution_vanishing_violations(&c, -5..=3).is_empty());
            let reg = c.regularity().unwrap().sheaf_regularity;
            assert!(reg <= resolution_regularity_bound(c.resolution(), 3).unwrap());
        }
    }
}
