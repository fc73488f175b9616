//! Partitions, Schur power dimensions by the hook content formula, and the
//! Euler characteristic of the Carter–Lusztig resolution of `E^(p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::field::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<u64>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self, SchurError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// `(a, 1, ..., 1)` with `ones` trailing ones.
    pub fn hook(a: u64, ones: usize) -> Self {
        let mut parts = vec![a];
        parts.extend(std::iter::repeat_n(1, ones));
        Partition::new(parts).expect("hook shape")
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u64).collect();
        Partition { parts }
    }

    /// `(hook length, content)` for every cell.
    fn cells(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        let conj = self.conjugate();
        self.parts.iter().enumerate().flat_map(move |(r, &len)| {
            let conj = conj.parts.clone();
            (0..len).map(move |c| {
                let arm = len - c - 1;
                let leg = conj[c as usize] - r as u64 - 1;
                (arm + leg + 1, c as i64 - r as i64)
            })
        })
    }

    fn hook_product(&self) -> BigUint {
        self.cells().map(|(h, _)| BigUint::from(h)).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = SchurError;

    /// Accepts `(3,1,1)`, `3,1,1` or `3 1 1`; `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self, SchurError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| SchurError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `m`, in reverse lexicographic order.
pub fn partitions_of(m: u64) -> Vec<Partition> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `dim S^λ(k^r) = Π (r + content) / Π hook`.
pub fn schur_dimension(lambda: &Partition, r: u64) -> Result<BigUint, SchurError> {
    if r == 0 {
        return Err(SchurError::ZeroRank);
    }
    if lambda.len() as u64 > r {
        return Ok(BigUint::zero());
    }
    let num: BigUint = lambda.cells().map(|(_, c)| BigUint::from((r as i64 + c) as u64)).product();
    Ok(num / lambda.hook_product())
}

/// Number of standard Young tableaux, `m! / Π hook`.
pub fn standard_tableaux_count(lambda: &Partition) -> BigUint {
    let fact: BigUint = (1..=lambda.weight()).map(BigUint::from).product();
    fact / lambda.hook_product()
}

/// `Σ_{|λ| = m} dim S^λ(k^r) · f^λ`, which equals `r^m`.
pub fn schur_weyl_count(m: u64, r: u64) -> Result<BigUint, SchurError> {
    partitions_of(m)
        .iter()
        .map(|l| Ok(schur_dimension(l, r)? * standard_tableaux_count(l)))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarterLusztigComplex {
    pub rank: u64,
    pub prime: u64,
    /// `(p), (p-1,1), ..., (p - min(p-1, r-1), 1, ..., 1)`.
    pub partitions: Vec<Partition>,
    #[serde(serialize_with = "ser_display_vec")]
    pub dimensions: Vec<BigUint>,
    /// `r - dim S^(p) + dim S^(p-1,1) - ...`
    #[serde(serialize_with = "ser_display")]
    pub alternating_sum: BigInt,
}

impl CarterLusztigComplex {
    pub fn is_exact_on_dimensions(&self) -> bool {
        self.alternating_sum.is_zero()
    }
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<S: serde::Serializer, T: fmt::Display>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Terms of `0 -> E^(p) -> S^(p)E -> S^(p-1,1)E -> ...` for `E` of rank `r`.
pub fn carter_lusztig_complex(r: u64, p: u64) -> Result<CarterLusztigComplex, SchurError> {
    if r == 0 {
        return Err(SchurError::ZeroRank);
    }
    if !is_prime(p) {
        return Err(SchurError::NotPrime(p));
    }
    let last = (p - 1).min(r - 1);
    let partitions: Vec<Partition> = (0..=last).map(|j| Partition::hook(p - j, j as usize)).collect();
    let dimensions = partitions.iter().map(|l| schur_dimension(l, r)).collect::<Result<Vec<_>, _>>()?;
    let mut alternating_sum = BigInt::from(r);
    for (j, dim) in dimensions.iter().enumerate() {
        let dim = BigInt::from(dim.clone());
        if j % 2 == 0 {
            alternating_sum -= dim;
        } else {
            alternating_sum += dim;
        }
    }
    Ok(CarterLusztigComplex { rank: r, prime: p, partitions, dimensions, alternating_sum })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HookDimensions {
    pub rank: u64,
    pub prime: u64,
    pub weight: u64,
    /// `(N - i, 1^i)` for `0 <= i < r` (and `i < N`), with `dim` for rank `r`.
    pub partitions: Vec<Partition>,
    #[serde(serialize_with = "ser_display_vec")]
    pub dimensions: Vec<BigUint>,
}

/// The hook shapes `(N-i, 1, ..., 1)`, `0 <= i < r`, and their dimensions.
pub fn hook_dimensions(r: u64, p: u64, n: u64) -> Result<HookDimensions, SchurError> {
    if r == 0 {
        return Err(SchurError::ZeroRank);
    }
    if !is_prime(p) {
        return Err(SchurError::NotPrime(p));
    }
    let partitions: Vec<Partition> = (0..r.min(n)).map(|i| Partition::hook(n - i, i as usize)).collect();
    let dimensions = partitions.iter().map(|l| schur_dimension(l, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(HookDimensions { rank: r, prime: p, weight: n, partitions, dimensions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::binomial;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!(part("(3,1,1)").parts(), &[3, 1, 1]);
        assert_eq!(part("2 1"), part("2,1"));
        assert_eq!(part("()").weight(), 0);
        assert!(matches!("(1,2)".parse::<Partition>(), Err(SchurError::InvalidPartition(_))));
        assert!(matches!("(a)".parse::<Partition>(), Err(SchurError::Parse(_))));
        assert_eq!(part("(3,1)").to_string(), "(3,1)");
        assert_eq!(part("(3,1)").conjugate(), part("(2,1,1)"));
    }

    #[test]
    fn symmetric_and_exterior_powers() {
        for r in 1..6u64 {
            for m in 1..6u64 {
                let sym = schur_dimension(&Partition::new(vec![m]).unwrap(), r).unwrap();
                assert_eq!(sym, big(binomial((m + r - 1) as i64, (r - 1) as i64)));
                let ext = schur_dimension(&Partition::hook(1, m as usize - 1), r).unwrap();
                assert_eq!(ext, big(binomial(r as i64, m as i64)));
            }
        }
    }

    #[test]
    fn hook_content_example() {
        assert_eq!(schur_dimension(&part("(2,1)"), 2).unwrap(), big(2));
        assert_eq!(schur_dimension(&part("(2,1,1)"), 2).unwrap(), big(0));
        assert_eq!(schur_dimension(&part("(2,1,1)"), 3).unwrap(), big(3));
        assert_eq!(standard_tableaux_count(&part("(3,2)")), big(5));
        assert!(schur_dimension(&part("(1)"), 0).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|m| partitions_of(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn schur_weyl() {
        for m in 0..=5u64 {
            for r in 1..=4u64 {
                assert_eq!(schur_weyl_count(m, r).unwrap(), big(r.pow(m as u32)));
            }
        }
    }

    #[test]
    fn carter_lusztig_examples() {
        let c = carter_lusztig_complex(2, 3).unwrap();
        assert_eq!(c.partitions, vec![part("(3)"), part("(2,1)")]);
        assert_eq!(c.dimensions, vec![big(4), big(2)]);
        assert!(c.is_exact_on_dimensions());
        let c = carter_lusztig_complex(3, 2).unwrap();
        assert_eq!(c.partitions, vec![part("(2)"), part("(1,1)")]);
        assert_eq!(c.dimensions, vec![big(6), big(3)]);
        let c = carter_lusztig_complex(1, 7).unwrap();
        assert_eq!(c.partitions, vec![part("(7)")]);
        assert!(c.is_exact_on_dimensions());
        assert_eq!(carter_lusztig_complex(2, 4), Err(SchurError::NotPrime(4)));
    }

    #[test]
    fn carter_lusztig_last_partition() {
        for r in 1..=6u64 {
            for p in [2u64, 3, 5, 7, 11] {
                let c = carter_lusztig_complex(r, p).unwrap();
                let k = (p - 1).min(r - 1);
                assert_eq!(c.partitions.last().unwrap(), &Partition::hook(p - k, k as usize));
            }
        }
    }

    #[test]
    fn hook_dimension_examples() {
        let k = hook_dimensions(2, 5, 5).unwrap();
        assert_eq!(k.partitions, vec![part("(5)"), part("(4,1)")]);
        assert_eq!(k.dimensions, vec![big(6), big(4)]);
        let k = hook_dimensions(1, 3, 4).unwrap();
        assert_eq!(k.partitions, vec![part("(4)")]);
        for r in 1..=4u64 {
            for i in 0..r {
                let dims: Vec<BigUint> = ((i + 1)..=20)
                    .map(|n| schur_dimension(&Partition::hook(n - i, i as usize), r).unwrap())
                    .collect();
                assert!(dims.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
