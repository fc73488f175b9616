//! Splitting types of pushforwards of line bundles under finite self-maps
//! of P^n of degree `d` on hyperplane classes.
//!
//! With `π_*O(i) = ⊕ O(l)^{f(l,i)}`, comparing Euler characteristics after
//! twisting by `O(x)` gives `Σ_l f(l,i) p_n(x+l) = p_n(dx+i)`, where
//! `p_n(x) = C(x+n, n)`. For `-d-n-1 < i < d` all `l` lie in `[-n-1, 0]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{prime_power, Exact, Field};
use crate::linalg::{solve_unique, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("n must be at least 1, got {0}")]
    BadDimension(i64),
    #[error("degree must be at least 2, got {0}")]
    BadDegree(i64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("multiplicity of O({l}) is not a nonnegative integer: {value}")]
    BadMultiplicity { l: i64, value: String },
    #[error("Euler characteristic identity fails at x = {x}")]
    IdentityFails { x: i64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("value too large")]
    Overflow,
}

/// `p_m(x) = C(x+m, m)`, evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialPoly {
    pub m: u32,
}

impl BinomialPoly {
    pub fn new(m: u32) -> Self {
        BinomialPoly { m }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 1..=self.m {
            num *= x + BigInt::from(k);
            den *= BigInt::from(k);
        }
        num / den
    }

    pub fn at(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// `Δ p_m (x) = p_m(x) - p_m(x-1)`.
    pub fn delta(&self, x: i64) -> BigInt {
        self.at(x) - self.at(x - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub n: i64,
    pub d: i64,
    pub i: i64,
    /// `l -> f(l, i)`, zero multiplicities omitted.
    pub multiplicities: BTreeMap<i64, u64>,
}

impl SplittingType {
    pub fn get(&self, l: i64) -> u64 {
        self.multiplicities.get(&l).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.multiplicities.keys().copied()
    }

    /// Twists `-l` of the summands, for building `⊕ R(l)` as a module.
    pub fn twists(&self) -> Vec<i64> {
        self.multiplicities.iter().flat_map(|(&l, &f)| std::iter::repeat_n(l, f as usize)).collect()
    }

    /// Checks `Σ_l f(l,i) p_n(x+l) = p_n(dx+i)` at `x`.
    pub fn identity_holds_at(&self, x: i64) -> bool {
        let p = BinomialPoly::new(self.n as u32);
        let lhs: BigInt = self.multiplicities.iter().map(|(&l, &f)| BigInt::from(f) * p.at(x + l)).sum();
        lhs == p.eval(&(BigInt::from(self.d) * x + self.i))
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .rev()
            .map(|(&l, &m)| if l == 0 { format!("O: {m}") } else { format!("O({l}): {m}") })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

fn check_args(n: i64, d: i64) -> Result<(), SplitError> {
    if n < 1 {
        return Err(SplitError::BadDimension(n));
    }
    if d < 2 {
        return Err(SplitError::BadDegree(d));
    }
    Ok(())
}

/// `h^n(O(i))` on P^n.
fn top_cohomology_of_line(n: i64, i: i64) -> BigInt {
    if i < -n {
        // C(-i-1, n) = p_n(-i-1-n).
        BinomialPoly::new(n as u32).at(-i - 1 - n)
    } else {
        BigInt::zero()
    }
}

/// Solves the Euler characteristic system for `f(l, i)`.
///
/// For `-d-n-1 < i < d` the unknowns are `f(l)` with `l ∈ [-n-1, 0]`; the
/// equations at `x = 0..=n+1` only determine them up to the kernel of
/// `Δ^{n+1}`, so the row `f(-n-1, i) = h^n(O(i))` (from `H^n(π_*O(i)) =
/// H^n(O(i))`) is added. Other `i` reduce to `i mod d` via
/// `π_*O(i + ds) = π_*O(i) ⊗ O(s)`. The result is checked at three further
/// sample points.
pub fn splitting_type(n: i64, d: i64, i: i64) -> Result<SplittingType, SplitError> {
    check_args(n, d)?;
    if i < -d - n || i >= d {
        let base = i.rem_euclid(d);
        let s = (i - base) / d;
        let t = splitting_type(n, d, base)?;
        return Ok(SplittingType {
            n,
            d,
            i,
            multiplicities: t.multiplicities.into_iter().map(|(l, f)| (l + s, f)).collect(),
        });
    }
    let q = Exact::<BigRational>::new();
    let p = BinomialPoly::new(n as u32);
    let ls: Vec<i64> = (-n - 1..=0).collect();
    let rat = |v: BigInt| BigRational::from_integer(v);
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    for x in 0..=n + 1 {
        a.push(ls.iter().map(|l| rat(p.at(x + l))).collect());
        b.push(rat(p.eval(&(BigInt::from(d) * x + i))));
    }
    a.push(ls.iter().map(|&l| if l == -n - 1 { q.one() } else { q.zero() }).collect());
    b.push(rat(top_cohomology_of_line(n, i)));
    let sol = solve_unique(&q, &a, &b)?;
    let mut multiplicities = BTreeMap::new();
    for (&l, v) in ls.iter().zip(&sol) {
        if !v.is_integer() || v.is_negative() {
            return Err(SplitError::BadMultiplicity { l, value: v.to_string() });
        }
        let f = v.to_integer().to_u64().ok_or(SplitError::Overflow)?;
        if f > 0 {
            multiplicities.insert(l, f);
        }
    }
    let t = SplittingType { n, d, i, multiplicities };
    for x in n + 2..=n + 4 {
        if !t.identity_holds_at(x) {
            return Err(SplitError::IdentityFails { x });
        }
    }
    Ok(t)
}

/// Splitting type of `F^e_* O(i)` for `q = p^e`, counting basis monomials:
/// `x^b` with `0 <= b_k < q` contributes a summand `O(l)` when `|b| = i - lq`.
pub fn splitting_oracle(n: i64, q: u64, i: i64) -> Result<SplittingType, SplitError> {
    if prime_power(q).is_none() {
        return Err(SplitError::NotPrimePower(q));
    }
    check_args(n, q as i64)?;
    // counts[s] = #{b ∈ [0, q-1]^{n+1} : |b| = s}
    let mut counts: Vec<u64> = vec![1];
    for _ in 0..=n {
        let mut next = vec![0u64; counts.len() + q as usize - 1];
        for (s, &c) in counts.iter().enumerate() {
            for b in 0..q as usize {
                next[s + b] = next[s + b].checked_add(c).ok_or(SplitError::Overflow)?;
            }
        }
        counts = next;
    }
    let q = q as i64;
    let mut multiplicities = BTreeMap::new();
    for (s, &c) in counts.iter().enumerate() {
        let r = i - s as i64;
        if c > 0 && r.rem_euclid(q) == 0 {
            *multiplicities.entry(r.div_euclid(q)).or_insert(0) += c;
        }
    }
    Ok(SplittingType { n, d: q, i, multiplicities })
}

/// Closed forms read off the Euler characteristic identity at `x = 0` and
/// after one and two finite differences, valid when `f(-n-1, i) = 0`.
pub mod closed_form {
    use super::*;

    pub fn f_zero(n: i64, i: i64) -> BigInt {
        BinomialPoly::new(n as u32).at(i)
    }

    pub fn f_minus_n(n: i64, d: i64, i: i64) -> BigInt {
        sign(n) * BinomialPoly::new(n as u32).at(i - d)
    }

    pub fn f_minus_n_plus_one(n: i64, d: i64, i: i64) -> BigInt {
        let p = BinomialPoly::new(n as u32);
        sign(n - 1) * BigInt::from(n + 1) * p.at(i - d) + sign(n - 2) * p.at(i - 2 * d)
    }

    fn sign(k: i64) -> BigInt {
        if k.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }
}

/// A closed form that disagrees with the solved type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormMismatch {
    pub n: i64,
    pub d: i64,
    pub i: i64,
    pub l: i64,
    pub solved: u64,
    pub closed_form: String,
}

/// Compares `f(0,i)`, `f(-n,i)` and (for `n >= 2`) `f(-n+1,i)` with their closed forms.
pub fn closed_form_mismatches(t: &SplittingType) -> Vec<ClosedFormMismatch> {
    let (n, d, i) = (t.n, t.d, t.i);
    let mut checks = vec![(0, closed_form::f_zero(n, i)), (-n, closed_form::f_minus_n(n, d, i))];
    if n >= 2 {
        checks.push((-n + 1, closed_form::f_minus_n_plus_one(n, d, i)));
    }
    checks
        .into_iter()
        .filter(|(l, v)| BigInt::from(t.get(*l)) != *v)
        .map(|(l, v)| ClosedFormMismatch { n, d, i, l, solved: t.get(l), closed_form: v.to_string() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub n: i64,
    pub d: i64,
    pub f_0_0: u64,
    pub f_last_last: u64,
    /// `i` in `(-d-n-1, d)` whose support leaves the expected window.
    pub support_violations: Vec<i64>,
}

impl BoundaryReport {
    pub fn holds(&self) -> bool {
        self.f_0_0 == 1 && self.f_last_last == 1 && self.support_violations.is_empty()
    }
}

/// Expected support window for `i ∈ [-n-1, 0]`, and `[-n-1, 0]` otherwise.
pub fn expected_support(n: i64, i: i64) -> (i64, i64) {
    match i {
        0 => (-n, 0),
        i if i == -n - 1 => (-n - 1, -1),
        i if -n - 1 < i && i < 0 => (-n, -1),
        _ => (-n - 1, 0),
    }
}

/// `f(0,0) = f(-n-1,-n-1) = 1`, and the support of `π_*O(i)` for
/// `-d-n-1 < i < d` lies in the expected window. Support is read from the
/// monomial count when `d` is a prime power, and from the solved type
/// otherwise.
pub fn boundary_cases(n: i64, d: i64) -> Result<BoundaryReport, SplitError> {
    check_args(n, d)?;
    let get = |i: i64| -> Result<SplittingType, SplitError> {
        match prime_power(d as u64) {
            Some(_) => splitting_oracle(n, d as u64, i),
            None => splitting_type(n, d, i),
        }
    };
    let f_0_0 = get(0)?.get(0);
    let f_last_last = get(-n - 1)?.get(-n - 1);
    let mut support_violations = Vec::new();
    for i in -d - n..d {
        let (lo, hi) = expected_support(n, i);
        if get(i)?.support().any(|l| l < lo || l > hi) {
            support_violations.push(i);
        }
    }
    Ok(BoundaryReport { n, d, f_0_0, f_last_last, support_violations })
}

/// Which degrees `d` have every `O(l)`, `l ∈ [-n-1, 0]`, occurring in some
/// `π_*O(i)` with `i ∈ [-n-1, 0]`. The threshold is the least `d0` from
/// which every sampled degree is covered; it is an observation, not a
/// proven constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub n: i64,
    pub covered: Vec<(i64, bool)>,
    pub observed_threshold: Option<i64>,
}

pub fn coverage_search(n: i64, d_max: i64) -> Result<CoverageReport, SplitError> {
    check_args(n, 2)?;
    let mut covered = Vec::new();
    for d in 2..=d_max {
        let types = (-n - 1..=0).map(|i| splitting_type(n, d, i)).collect::<Result<Vec<_>, _>>()?;
        let all = (-n - 1..=0).all(|l| types.iter().any(|t| t.get(l) > 0));
        covered.push((d, all));
    }
    let observed_threshold = covered.iter().rposition(|c| !c.1).map_or(covered.first().map(|c| c.0), |k| covered.get(k + 1).map(|c| c.0));
    Ok(CoverageReport { n, covered, observed_threshold })
}
