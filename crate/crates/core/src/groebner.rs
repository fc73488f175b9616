//! Gröbner bases of graded submodules of free modules over F_p[x0..xn],
//! syzygies, and minimal free resolutions.
//!
//! Module monomials are compared position-over-term: a smaller component
//! index is larger, ties are broken by grevlex on the monomial.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{Echelon, SparseRow};
use crate::module::{GradedMap, GradedModule};
use crate::poly::{grevlex, monomial_count, Monomial, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("generator {index} lives in a free module of rank {found}, expected {expected}")]
    WrongAmbient { index: usize, found: usize, expected: usize },
}

/// The fixed module order: position over term, grevlex on monomials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ModuleOrder;

impl ModuleOrder {
    #[inline]
    pub fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        if a.0 != b.0 {
            b.0.cmp(&a.0)
        } else {
            grevlex(a.1, b.1)
        }
    }
}

#[inline]
fn term_cmp(a: &ModTerm, b: &ModTerm) -> Ordering {
    ModuleOrder.cmp((a.0, &a.1), (b.0, &b.1))
}

/// A term `coeff * mono * e_comp`.
pub type ModTerm = (usize, Monomial, u64);

/// A graded free module `⊕ R(-t)` over `ring`; generator `r` has degree `twists[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: PolyRing,
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: PolyRing, twists: Vec<i64>) -> Self {
        FreeModule { ring, twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// `dim_k` of the degree-`d` piece.
    pub fn dim_in_degree(&self, d: i64) -> u64 {
        self.twists.iter().map(|t| monomial_count(self.ring.num_vars, d - t)).sum()
    }

    pub fn term_degree(&self, t: &ModTerm) -> i64 {
        t.1.degree() as i64 + self.twists[t.0]
    }
}

/// An element of a free module; terms strictly descending in [`ModuleOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModVec {
    terms: Vec<ModTerm>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    /// Builds from unsorted terms with distinct `(comp, mono)` keys and
    /// nonzero coefficients.
    pub fn from_terms(mut terms: Vec<ModTerm>) -> Self {
        terms.retain(|t| t.2 != 0);
        terms.sort_by(|a, b| term_cmp(b, a));
        debug_assert!(terms.windows(2).all(|w| term_cmp(&w[0], &w[1]) == Ordering::Greater));
        ModVec { terms }
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn degree(&self, module: &FreeModule) -> Option<i64> {
        self.terms.first().map(|t| module.term_degree(t))
    }

    pub fn is_homogeneous(&self, module: &FreeModule) -> bool {
        match self.degree(module) {
            None => true,
            Some(d) => self.terms.iter().all(|t| module.term_degree(t) == d),
        }
    }

    pub fn max_component(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.0).max()
    }

    fn make_monic(mut self, ring: &PolyRing) -> Self {
        if let Some(lead) = self.terms.first() {
            let inv = ring.field.inv(&lead.2);
            for t in self.terms.iter_mut() {
                t.2 = ring.field.mul(&t.2, &inv);
            }
        }
        self
    }

    pub fn scale_mono(&self, ring: &PolyRing, c: u64, mono: &Monomial) -> ModVec {
        let f = ring.field;
        ModVec { terms: self.terms.iter().map(|(r, m, d)| (*r, m.mul(mono), f.mul(&c, d))).collect() }
    }

    /// `self + c * mono * other`.
    pub fn add_scaled(&self, ring: &PolyRing, c: u64, mono: &Monomial, other: &ModVec) -> ModVec {
        let f = ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut lhs = self.terms.iter().cloned().peekable();
        let mut rhs = other.terms.iter().map(|(r, m, d)| (*r, m.mul(mono), f.mul(&c, d))).peekable();
        loop {
            let ord = match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => term_cmp(a, b),
            };
            match ord {
                Ordering::Greater => out.push(lhs.next().unwrap()),
                Ordering::Less => {
                    let t = rhs.next().unwrap();
                    if t.2 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (r, m, a) = lhs.next().unwrap();
                    let (_, _, b) = rhs.next().unwrap();
                    let s = f.add(&a, &b);
                    if s != 0 {
                        out.push((r, m, s));
                    }
                }
            }
        }
        ModVec { terms: out }
    }

    /// Shifts all component indices down by `offset` (terms must all have
    /// component `>= offset`).
    fn shift_components(&self, offset: usize) -> ModVec {
        ModVec { terms: self.terms.iter().map(|(r, m, c)| (r - offset, m.clone(), *c)).collect() }
    }
}

/// Index of a basis element whose lead divides `t`, scanning in insertion order.
fn find_divisor(basis: &[ModVec], by_comp: &HashMap<usize, Vec<usize>>, t: &ModTerm) -> Option<usize> {
    by_comp.get(&t.0)?.iter().copied().find(|&i| basis[i].terms[0].1.divides(&t.1))
}

/// Fully reduces `f` modulo a list of monic elements.
fn reduce_with(ring: &PolyRing, f: ModVec, basis: &[ModVec], by_comp: &HashMap<usize, Vec<usize>>) -> ModVec {
    let field = ring.field;
    let mut done: Vec<ModTerm> = Vec::new();
    let mut rest = f;
    while let Some(lead) = rest.terms.first().cloned() {
        match find_divisor(basis, by_comp, &lead) {
            Some(i) => {
                let g = &basis[i];
                let q = g.terms[0].1.quotient_of(&lead.1);
                rest = rest.add_scaled(ring, field.neg(&lead.2), &q, g);
            }
            None => {
                // Move the irreducible lead out; the remaining tail stays sorted.
                done.push(lead);
                rest.terms.remove(0);
            }
        }
    }
    ModVec { terms: done }
}

fn index_by_comp(basis: &[ModVec]) -> HashMap<usize, Vec<usize>> {
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, g) in basis.iter().enumerate() {
        by_comp.entry(g.terms[0].0).or_default().push(i);
    }
    by_comp
}

/// Normal form of `f` with respect to `basis` (any list of nonzero elements).
pub fn reduce(ring: &PolyRing, f: &ModVec, basis: &[ModVec]) -> ModVec {
    let monic: Vec<ModVec> = basis.iter().filter(|g| !g.is_zero()).map(|g| g.clone().make_monic(ring)).collect();
    reduce_with(ring, f.clone(), &monic, &index_by_comp(&monic))
}

/// S-vector of two elements with leads in the same component.
pub fn s_vector(ring: &PolyRing, f: &ModVec, g: &ModVec) -> Option<ModVec> {
    let (a, b) = (f.lead()?, g.lead()?);
    if a.0 != b.0 {
        return None;
    }
    let lcm = a.1.lcm(&b.1);
    let field = ring.field;
    let lhs = f.scale_mono(ring, field.inv(&a.2), &a.1.quotient_of(&lcm));
    Some(lhs.add_scaled(ring, field.neg(&field.inv(&b.2)), &b.1.quotient_of(&lcm), g))
}

/// Checks the Buchberger criterion directly: every S-vector reduces to zero.
pub fn is_groebner_basis(module: &FreeModule, basis: &[ModVec]) -> bool {
    let ring = &module.ring;
    let nonzero: Vec<ModVec> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            if let Some(s) = s_vector(ring, &nonzero[i], &nonzero[j]) {
                if !reduce(ring, &s, &nonzero).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn check_inputs(module: &FreeModule, gens: &[ModVec]) -> Result<(), GroebnerError> {
    for (index, g) in gens.iter().enumerate() {
        if let Some(c) = g.max_component() {
            if c >= module.rank() {
                return Err(GroebnerError::WrongAmbient { index, found: c + 1, expected: module.rank() });
            }
        }
        if !g.is_homogeneous(module) {
            return Err(GroebnerError::NotHomogeneous { index });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    Generator(usize),
    Pair(usize, usize),
}

/// Reduced Gröbner basis of the submodule generated by homogeneous `gens`.
///
/// Homogeneous Buchberger: generators and S-pairs are processed in order of
/// degree. Pairs are pruned with Buchberger's chain criterion, and with the
/// coprime-leads criterion when the ambient module has rank one.
pub fn groebner_basis(module: &FreeModule, gens: &[ModVec]) -> Result<Vec<ModVec>, GroebnerError> {
    check_inputs(module, gens)?;
    let ring = &module.ring;
    let ideal_case = module.rank() == 1;

    let mut basis: Vec<ModVec> = Vec::new();
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut queue: BTreeSet<(i64, Task)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for (i, g) in gens.iter().enumerate() {
        if let Some(d) = g.degree(module) {
            queue.insert((d, Task::Generator(i)));
        }
    }

    while let Some((_, task)) = queue.pop_first() {
        let candidate = match task {
            Task::Generator(i) => gens[i].clone(),
            Task::Pair(i, j) => {
                pending.remove(&(i, j));
                let (li, lj) = (&basis[i].terms[0], &basis[j].terms[0]);
                if ideal_case && li.1.is_coprime(&lj.1) {
                    continue;
                }
                let lcm = li.1.lcm(&lj.1);
                let chain = by_comp[&li.0].iter().any(|&k| {
                    k != i
                        && k != j
                        && basis[k].terms[0].1.divides(&lcm)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    continue;
                }
                s_vector(ring, &basis[i], &basis[j]).expect("pair shares a component")
            }
        };
        let h = reduce_with(ring, candidate, &basis, &by_comp);
        if h.is_zero() {
            continue;
        }
        let h = h.make_monic(ring);
        let new = basis.len();
        let comp = h.terms[0].0;
        let peers = by_comp.get(&comp).cloned().unwrap_or_default();
        for k in peers {
            let lcm = basis[k].terms[0].1.lcm(&h.terms[0].1);
            let deg = lcm.degree() as i64 + module.twists[comp];
            queue.insert((deg, Task::Pair(k, new)));
            pending.insert((k, new));
        }
        by_comp.entry(comp).or_default().push(new);
        basis.push(h);
    }

    Ok(reduce_basis(module, basis))
}

/// Drops elements with redundant leads, interreduces, and sorts by degree
/// then descending lead.
fn reduce_basis(module: &FreeModule, basis: Vec<ModVec>) -> Vec<ModVec> {
    let ring = &module.ring;
    let mut minimal: Vec<ModVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lead = &g.terms[0];
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hl = &h.terms[0];
            j != i && hl.0 == lead.0 && hl.1.divides(&lead.1) && (hl.1 != lead.1 || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<ModVec> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let by_comp = index_by_comp(&others);
        let lead = minimal[i].terms[0].clone();
        let tail = ModVec { terms: minimal[i].terms[1..].to_vec() };
        let mut terms = vec![lead];
        terms.extend(reduce_with(ring, tail, &others, &by_comp).terms);
        reduced.push(ModVec { terms });
    }
    reduced.sort_by(|a, b| {
        let (da, db) = (a.degree(module).unwrap(), b.degree(module).unwrap());
        da.cmp(&db).then_with(|| term_cmp(&b.terms[0], &a.terms[0]))
    });
    reduced
}

/// Columns of a graded map as free-module elements of its target.
pub fn columns(map: &GradedMap) -> Vec<ModVec> {
    (0..map.source_twists().len()).map(|c| map.column(c)).collect()
}

/// The syzygy module of `gens` (of degrees `degrees`) in `module`, as a
/// generating set of the kernel of `⊕ R(-degrees) -> module`. The generating
/// set is a Gröbner basis of the kernel, not minimalized.
pub fn syzygy_basis(
    module: &FreeModule,
    gens: &[ModVec],
    degrees: &[i64],
) -> Result<(FreeModule, Vec<ModVec>), GroebnerError> {
    check_inputs(module, gens)?;
    let r = module.rank();
    let mut twists = module.twists.clone();
    twists.extend_from_slice(degrees);
    let augmented = FreeModule::new(module.ring, twists);
    let one = Monomial::one(module.ring.num_vars);
    let aug_gens: Vec<ModVec> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut terms = g.terms.clone();
            terms.push((r + j, one.clone(), 1));
            ModVec::from_terms(terms)
        })
        .collect();
    let gb = groebner_basis(&augmented, &aug_gens)?;
    let syz_module = FreeModule::new(module.ring, degrees.to_vec());
    let syz = gb.into_iter().filter(|g| g.terms[0].0 >= r).map(|g| g.shift_components(r)).collect();
    Ok((syz_module, syz))
}

/// Indices of a minimal generating subset, chosen greedily in degree order
/// by linear algebra on graded pieces. Zero elements are never selected.
pub fn minimal_generators(module: &FreeModule, elems: &[ModVec]) -> Vec<usize> {
    let ring = &module.ring;
    let mut order: Vec<usize> = (0..elems.len()).filter(|&i| !elems[i].is_zero()).collect();
    order.sort_by_key(|&i| elems[i].degree(module).unwrap());
    let mut selected: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let d = elems[order[k]].degree(module).unwrap();
        let mut end = k;
        while end < order.len() && elems[order[end]].degree(module).unwrap() == d {
            end += 1;
        }
        let mut coords = Coordinates::default();
        let mut ech = Echelon::new(ring.field);
        for &s in &selected {
            let ds = elems[s].degree(module).unwrap();
            for m in Monomial::all_of_degree(ring.num_vars, (d - ds) as u64) {
                ech.insert(coords.row(elems[s].terms.iter().map(|(r, mono, c)| (*r, mono.mul(&m), *c))));
            }
        }
        for &i in &order[k..end] {
            if ech.insert(coords.row(elems[i].terms.iter().cloned())) {
                selected.push(i);
            }
        }
        k = end;
    }
    selected.sort_unstable();
    selected
}

/// Assigns column indices to `(component, monomial)` pairs on demand.
#[derive(Default)]
pub(crate) struct Coordinates {
    index: HashMap<(usize, Monomial), usize>,
}

impl Coordinates {
    pub(crate) fn row(&mut self, terms: impl Iterator<Item = ModTerm>) -> SparseRow<u64> {
        let mut row: SparseRow<u64> = terms
            .map(|(r, m, c)| {
                let next = self.index.len();
                (*self.index.entry((r, m)).or_insert(next), c)
            })
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        row
    }
}

/// Kernel of the map given by `gens` (of degrees `degrees`), minimally
/// generated, as a map `⊕ R(-syz degrees) -> ⊕ R(-degrees)`.
pub fn syzygies(module: &FreeModule, gens: &[ModVec], degrees: &[i64]) -> Result<GradedMap, GroebnerError> {
    let (syz_module, syz) = syzygy_basis(module, gens, degrees)?;
    let keep = minimal_generators(&syz_module, &syz);
    let chosen: Vec<ModVec> = keep.iter().map(|&i| syz[i].clone()).collect();
    let source: Vec<i64> = chosen.iter().map(|s| s.degree(&syz_module).unwrap()).collect();
    Ok(GradedMap::from_columns(module.ring, degrees.to_vec(), source, &chosen))
}

/// A graded free resolution `F_0 <- F_1 <- ... <- F_L`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreeResolution {
    #[serde(skip)]
    ring: PolyRing,
    /// Generator degrees of each `F_i`.
    modules: Vec<Vec<i64>>,
    /// `maps[i]` is the differential `F_{i+1} -> F_i`.
    #[serde(skip)]
    maps: Vec<GradedMap>,
    /// False if construction stopped at `max_length` with a nonzero kernel left.
    complete: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `(homological index, degree) -> count`, i.e. graded Betti numbers.
    pub fn betti_numbers(&self) -> Vec<Vec<(i64, usize)>> {
        self.modules
            .iter()
            .map(|twists| {
                let mut counts: Vec<(i64, usize)> = Vec::new();
                let mut sorted = twists.clone();
                sorted.sort_unstable();
                for t in sorted {
                    match counts.last_mut() {
                        Some((d, c)) if *d == t => *c += 1,
                        _ => counts.push((t, 1)),
                    }
                }
                counts
            })
            .collect()
    }

    /// `max_{i, t in F_i} (t - i)`, the regularity of the module read off the
    /// Betti table. `None` if the resolution has no generators at all.
    pub fn betti_regularity(&self) -> Option<i64> {
        self.modules
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |t| t - i as i64))
            .max()
    }

    /// Alternating sum of ranks: the generic rank of the resolved module.
    pub fn euler_rank(&self) -> i64 {
        self.modules.iter().enumerate().map(|(i, ts)| if i % 2 == 0 { ts.len() as i64 } else { -(ts.len() as i64) }).sum()
    }

    /// True if no differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    /// Checks `d_i ∘ d_{i+1} = 0` symbolically and exactness degree by degree
    /// over `degrees`: at each `F_i` with `i >= 1` the kernel of `d_i` equals
    /// the image of `d_{i+1}`, and the last differential is injective.
    pub fn verify_exactness(&self, degrees: impl IntoIterator<Item = i64> + Clone) -> Result<(), String> {
        for i in 1..self.maps.len() {
            if !self.maps[i - 1].compose(&self.maps[i]).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("d_{} ∘ d_{} is not zero", i, i + 1));
            }
        }
        for d in degrees {
            for i in 1..self.modules.len() {
                let dim = FreeModule::new(self.ring, self.modules[i].clone()).dim_in_degree(d) as usize;
                let kernel = dim - self.maps[i - 1].rank_in_degree(d);
                let image = self.maps.get(i).map_or(0, |m| m.rank_in_degree(d));
                if kernel != image {
                    return Err(format!("not exact at F_{i} in degree {d}: ker {kernel}, im {image}"));
                }
            }
        }
        Ok(())
    }

    /// The degree window `[min twist, max twist + n + 2]` used for exactness checks.
    pub fn test_window(&self) -> std::ops::RangeInclusive<i64> {
        let all = self.modules.iter().flatten();
        let lo = all.clone().min().copied().unwrap_or(0);
        let hi = all.max().copied().unwrap_or(0);
        lo..=hi + self.ring.num_vars as i64 + 1
    }
}

/// Minimal graded free resolution of the cokernel of `M`'s presentation,
/// stopping after at most `max_length` differentials.
pub fn free_resolution(m: &GradedModule, max_length: usize) -> FreeResolution {
    let ring = m.ring();
    let mut d1 = m.presentation().clone();
    d1.cancel_units();
    let target = FreeModule::new(ring, d1.target_twists().to_vec());
    let keep = minimal_generators(&target, &columns(&d1));
    let d1 = d1.select_columns(&keep);

    let mut modules = vec![d1.target_twists().to_vec()];
    let mut maps = Vec::new();
    let mut complete = true;
    if !d1.source_twists().is_empty() {
        modules.push(d1.source_twists().to_vec());
        maps.push(d1);
    }
    loop {
        let Some(last) = maps.last() else { break };
        let next = syzygies(
            &FreeModule::new(ring, last.target_twists().to_vec()),
            &columns(last),
            last.source_twists(),
        )
        .expect("differentials of a resolution are homogeneous");
        if next.source_twists().is_empty() {
            break;
        }
        if maps.len() >= max_length {
            complete = false;
            break;
        }
        modules.push(next.source_twists().to_vec());
        maps.push(next);
    }
    if maps.len() > max_length {
        maps.truncate(max_length);
        modules.truncate(max_length + 1);
        complete = false;
    }
    FreeResolution { ring, modules, maps, complete }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, p).unwrap()
    }

    fn ideal(r: &PolyRing, polys: &[&str]) -> (FreeModule, Vec<ModVec>) {
        let module = FreeModule::new(*r, vec![0]);
        let gens = polys
            .iter()
            .map(|s| {
                let p = r.parse(s).unwrap();
                ModVec::from_terms(p.terms().iter().map(|(m, c)| (0, m.clone(), *c)).collect())
            })
            .collect();
        (module, gens)
    }

    #[test]
    fn linear_monomials_are_already_a_basis() {
        let r = ring(2, 2);
        let (m, gens) = ideal(&r, &["x0", "x1"]);
        let gb = groebner_basis(&m, &gens).unwrap();
        assert_eq!(gb, gens);
    }

    #[test]
    fn buchberger_criterion_holds_on_output() {
        let r = ring(3, 7);
        let (m, gens) = ideal(&r, &["x0*x1 + x2^2", "x1^2"]);
        let gb = groebner_basis(&m, &gens).unwrap();
        assert!(is_groebner_basis(&m, &gb));
        assert!(!is_groebner_basis(&m, &gens));
        // Each input reduces to zero modulo the basis.
        for g in &gens {
            assert!(reduce(&r, g, &gb).is_zero());
        }
    }

    #[test]
    fn empty_input_gives_empty_basis() {
        let r = ring(3, 5);
        let m = FreeModule::new(r, vec![0, 1]);
        assert!(groebner_basis(&m, &[]).unwrap().is_empty());
    }

    #[test]
    fn inhomogeneous_generator_is_rejected() {
        let r = ring(2, 5);
        let (m, gens) = ideal(&r, &["x0^2 + x1"]);
        assert_eq!(groebner_basis(&m, &gens), Err(GroebnerError::NotHomogeneous { index: 0 }));
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = ring(2, 3);
        let (m, gens) = ideal(&r, &["x0", "x1"]);
        let syz = syzygies(&m, &gens, &[1, 1]).unwrap();
        assert_eq!(syz.source_twists(), &[2]);
        let col = syz.column(0);
        // (x1, -x0) up to sign.
        let e0 = syz.entry(0, 0).clone();
        let e1 = syz.entry(1, 0).clone();
        assert!(
            (e0 == r.parse("x1").unwrap() && e1 == r.parse("-x0").unwrap())
                || (e0 == r.parse("-x1").unwrap() && e1 == r.parse("x0").unwrap()),
            "{col:?}"
        );
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = ring(3, 5);
        let (m, gens) = ideal(&r, &["x0^2 + x1*x2"]);
        let syz = syzygies(&m, &gens, &[2]).unwrap();
        assert!(syz.source_twists().is_empty());
    }

    #[test]
    fn module_groebner_basis_in_rank_two() {
        let r = ring(3, 3);
        let m = FreeModule::new(r, vec![0, 0]);
        let v = |a: &str, b: &str| {
            let (pa, pb) = (r.parse(a).unwrap(), r.parse(b).unwrap());
            let mut t: Vec<ModTerm> = pa.terms().iter().map(|(m, c)| (0, m.clone(), *c)).collect();
            t.extend(pb.terms().iter().map(|(m, c)| (1, m.clone(), *c)));
            ModVec::from_terms(t)
        };
        let gens = vec![v("x0", "x1"), v("x1", "x2"), v("x2", "x0")];
        let gb = groebner_basis(&m, &gens).unwrap();
        assert!(is_groebner_basis(&m, &gb));
        for g in &gens {
            assert!(reduce(&r, g, &gb).is_zero());
        }
    }

    #[test]
    fn minimal_generators_drop_multiples() {
        let r = ring(2, 5);
        let (m, mut gens) = ideal(&r, &["x0", "x0*x1", "x1^2", "2*x0"]);
        gens.push(ModVec::zero());
        assert_eq!(minimal_generators(&m, &gens), vec![0, 2]);
    }
}
