//! Sparse multivariate polynomials over F_p in variables `x0..x{N-1}`.
//!
//! Terms are stored in descending graded reverse lexicographic order with no
//! zero coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{Field, FieldError, Fp, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    NumVarsMismatch(usize, usize),
    #[error("exponent overflow while raising to the power {0}")]
    ExponentOverflow(u64),
    #[error("Frobenius exponent must be positive")]
    NonPositiveFrobenius,
    #[error("parse error at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Monomial)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale_exponents(&self, q: u64) -> Option<Monomial> {
        let q = u32::try_from(q).ok()?;
        self.0.iter().map(|e| e.checked_mul(q)).collect::<Option<SmallVec<_>>>().map(Monomial)
    }

    /// All monomials of total degree `d` in `num_vars` variables, in
    /// descending grevlex order.
    pub fn all_of_degree(num_vars: usize, d: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; num_vars];
        fill(&mut out, &mut cur, 0, d as u32);
        out.sort_by(|a, b| grevlex(b, a));
        out
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut [u32], idx: usize, left: u32) {
    if idx + 1 == cur.len() {
        cur[idx] = left;
        out.push(Monomial::from_exponents(cur));
        return;
    }
    if cur.is_empty() {
        return;
    }
    for e in (0..=left).rev() {
        cur[idx] = e;
        fill(out, cur, idx + 1, left - e);
    }
}

/// Graded reverse lexicographic comparison.
#[inline]
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Number of monomials of degree `d` in `num_vars` variables (zero for `d < 0`).
pub fn monomial_count(num_vars: usize, d: i64) -> u64 {
    if d < 0 || num_vars == 0 {
        return u64::from(d == 0 && num_vars == 0);
    }
    let k = (num_vars - 1) as u64;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (d as u128 + i as u128) / i as u128;
    }
    acc as u64
}

/// The ring F_p[x0..x{N-1}].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub num_vars: usize,
    pub field: PrimeField,
}

impl PolyRing {
    pub fn new(num_vars: usize, p: u64) -> Result<Self, FieldError> {
        Ok(PolyRing { num_vars, field: PrimeField::new(p)? })
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    /// Dimension `n` of the projective space `Proj` of this ring.
    pub fn proj_dim(&self) -> usize {
        self.num_vars - 1
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly { ring: *self, terms: Vec::new() }
    }

    pub fn constant(&self, c: i64) -> MultiPoly {
        self.term(self.field.reduce_i64(c), Monomial::one(self.num_vars))
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        self.term(1, Monomial::var(self.num_vars, i))
    }

    pub fn term(&self, coeff: u64, mono: Monomial) -> MultiPoly {
        let terms = if coeff.is_multiple_of(self.modulus()) { vec![] } else { vec![(mono, coeff % self.modulus())] };
        MultiPoly { ring: *self, terms }
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly, PolyError> {
        Parser { ring: *self, src: text.as_bytes(), pos: 0 }.parse()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: Vec<(Monomial, u64)>,
}

impl MultiPoly {
    /// Builds a polynomial from arbitrary (possibly repeated, unreduced) terms.
    pub fn from_terms(ring: PolyRing, raw: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in raw {
            assert_eq!(m.0.len(), ring.num_vars, "exponent vector length");
            let e = acc.entry(m).or_insert(0);
            *e = ring.field.add(e, &(c % ring.modulus()));
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        MultiPoly { ring, terms }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, Fp)> + '_ {
        self.terms.iter().map(move |(m, c)| (m, self.ring.field.elem(*c as i64)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the constant value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.degree() == 0 => Some(*c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    /// Total degree of the leading term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    /// Zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() as i64 == d)
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.ring.modulus() != other.ring.modulus() {
            return Err(FieldError::ModulusMismatch(self.ring.modulus(), other.ring.modulus()).into());
        }
        if self.ring.num_vars != other.ring.num_vars {
            return Err(PolyError::NumVarsMismatch(self.ring.num_vars, other.ring.num_vars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, &Monomial::one(self.num_vars()), other))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(self.ring.modulus() - 1, &Monomial::one(self.num_vars()), other))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(other)?;
        let f = self.ring.field;
        let raw = self
            .terms
            .iter()
            .flat_map(|(m, c)| other.terms.iter().map(move |(n, d)| (m.mul(n), f.mul(c, d))));
        Ok(MultiPoly::from_terms(self.ring, raw))
    }

    /// `self + c * mono * other`, merging sorted term lists.
    pub fn add_scaled(&self, c: u64, mono: &Monomial, other: &MultiPoly) -> MultiPoly {
        let f = self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut rhs = other.terms.iter().map(|(m, d)| (m.mul(mono), f.mul(&c, d))).peekable();
        let mut lhs = self.terms.iter().cloned().peekable();
        loop {
            let ord = match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => grevlex(&a.0, &b.0),
            };
            match ord {
                Ordering::Greater => out.push(lhs.next().unwrap()),
                Ordering::Less => {
                    let t = rhs.next().unwrap();
                    if t.1 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (m, a) = lhs.next().unwrap();
                    let (_, b) = rhs.next().unwrap();
                    let s = f.add(&a, &b);
                    if s != 0 {
                        out.push((m, s));
                    }
                }
            }
        }
        MultiPoly { ring: self.ring, terms: out }
    }

    pub fn scale(&self, c: u64) -> MultiPoly {
        let f = self.ring.field;
        let c = c % f.modulus();
        if c == 0 {
            return self.ring.zero();
        }
        MultiPoly { ring: self.ring, terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(&c, d))).collect() }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.ring.modulus() - 1)
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.mul(mono), *c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The ring endomorphism `c -> c^(p^e)`, `x_i -> x_i^(p^e)`.
    pub fn frobenius(&self, e: u32) -> Result<MultiPoly, PolyError> {
        if e == 0 {
            return Err(PolyError::NonPositiveFrobenius);
        }
        let p = self.ring.modulus();
        let q = p.checked_pow(e).ok_or(PolyError::ExponentOverflow(p))?;
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let m = m.scale_exponents(q).ok_or(PolyError::ExponentOverflow(q))?;
                // c^(p^e) == c on F_p; computed via c^p iterated e times.
                let c = (0..e).fold(*c, |acc, _| f.pow(acc, p));
                Ok((m, c))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        // Scaling all exponents by q preserves the grevlex order.
        Ok(MultiPoly { ring: self.ring, terms })
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let f = self.ring.field;
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m.0.iter().zip(point).fold(*c, |v, (&e, &x)| f.mul(&v, &f.pow(x, e as u64)));
            f.add(&acc, &v)
        })
    }

    /// Sets the last variable to zero and drops it.
    pub fn restrict_last_var(&self) -> MultiPoly {
        let n = self.num_vars();
        assert!(n >= 2, "cannot drop the only variable");
        let ring = PolyRing { num_vars: n - 1, field: self.ring.field };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[n - 1] == 0)
            .map(|(m, c)| (Monomial::from_exponents(&m.0[..n - 1]), *c))
            .collect();
        // Dropping a zero trailing exponent preserves grevlex order.
        MultiPoly { ring, terms }
    }

    /// Re-reads this polynomial over another prime: coefficients are lifted
    /// to their symmetric integer representatives first.
    pub fn lift_to(&self, ring: PolyRing) -> MultiPoly {
        let p = self.ring.modulus() as i64;
        MultiPoly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let v = if *c as i64 > p / 2 { *c as i64 - p } else { *c as i64 };
                (m.clone(), ring.field.reduce_i64(v))
            }),
        )
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl fmt::Display for MultiPoly {
    /// Coefficients print as symmetric representatives in `(-p/2, p/2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.modulus();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if *c > p / 2 && p > 2 { (true, p - c) } else { (false, *c) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, reason: reason.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let f = self.ring.field;
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1u64;
            match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = f.modulus() - 1;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            }
            first = false;
            let (mono, coeff) = self.monomial()?;
            terms.push((mono, f.mul(&sign, &coeff)));
        }
        Ok(MultiPoly::from_terms(self.ring, terms))
    }

    fn monomial(&mut self) -> Result<(Monomial, u64), PolyError> {
        let mut coeff = 1u64;
        let mut mono = Monomial::one(self.ring.num_vars);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let d = self.digits().to_owned();
                    let v = self.ring.field.reduce_decimal(&d).unwrap();
                    coeff = self.ring.field.mul(&coeff, &v);
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.digits().to_owned();
                    if idx.is_empty() {
                        return self.err("variable index expected after 'x'");
                    }
                    let idx: usize = match idx.parse() {
                        Ok(i) if i < self.ring.num_vars => i,
                        _ => return self.err(format!("variable x{idx} out of range")),
                    };
                    let mut exp = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let e = self.digits().to_owned();
                        exp = match e.parse() {
                            Ok(v) => v,
                            Err(_) => return self.err("bad exponent"),
                        };
                    }
                    let Some(e) = mono.0[idx].checked_add(exp) else {
                        return self.err("exponent overflow");
                    };
                    mono.0[idx] = e;
                }
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
                None => return self.err("unexpected end of input"),
            }
            factors += 1;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(c) if c == b'x' || c.is_ascii_digit() => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        Ok((mono, coeff))
    }
}
