//! The invariant suite behind `frobamp verify`: each check recomputes a
//! quantity two ways, or tests an inequality, on a fixed set of examples.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::cohomology::{
    bott_oracle, global_generation, resolution_vanishing_violations, minreg_areg, resolution_regularity_bound, Cohomology,
};
use crate::famp::{
    amplitude_bound_from_regularity, check_exact_sequence_bounds, check_f_ample_regularity,
    check_hyperplane_restriction, check_plane_classification, check_rank_and_dimension_bounds,
    check_tensor_subadditivity, f_amplitude, ModuleMap,
};
use crate::frobsplit::{boundary_cases, closed_form_mismatches, splitting_oracle, splitting_type};
use crate::groebner::{columns, groebner_basis, is_groebner_basis};
use crate::module::GradedModule;
use crate::poly::PolyRing;
use crate::schur::{carter_lusztig_complex, schur_weyl_count};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, cases: usize, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, cases, detail: detail.into() }
    }

    fn from_failures(name: &str, total: usize, failures: &[String]) -> Self {
        let detail = match failures.first() {
            None => format!("{total} cases"),
            Some(first) => format!("{} of {total} cases failed; first: {first}", failures.len()),
        };
        Check::new(name, failures.is_empty(), total, detail)
    }
}

fn ring(num_vars: usize, p: u64) -> PolyRing {
    PolyRing::new(num_vars, p).expect("valid prime")
}

/// Named modules over `F_p[x0, x1, x2]` plus a few on `P^3`.
pub fn module_catalog(p: u64) -> Vec<(String, GradedModule)> {
    let r = ring(3, p);
    let r3 = ring(4, p);
    let t = catalog::tangent(r);
    let mut out: Vec<(String, GradedModule)> = vec![
        ("O(-1) on P2".into(), catalog::line_bundle(r, -1)),
        ("O on P2".into(), catalog::line_bundle(r, 0)),
        ("O(1) on P2".into(), catalog::line_bundle(r, 1)),
        ("O(2) on P2".into(), catalog::line_bundle(r, 2)),
        ("T on P2".into(), t.clone()),
        ("T(-1) on P2".into(), t.twist(-1)),
        ("T(1) on P2".into(), t.twist(1)),
        ("Omega1 on P2".into(), catalog::omega(r, 1)),
        ("Omega1(2) on P2".into(), catalog::omega(r, 1).twist(2)),
        ("point ideal on P2".into(), catalog::point_ideal(r)),
        ("point ideal(1) on P2".into(), catalog::point_ideal(r).twist(1)),
        ("O(1)+O(2) on P2".into(), catalog::line_bundle_sum(r, &[1, 2]).with_locally_free(true)),
        ("T+O on P2".into(), GradedModule::direct_sum(r, &[t.clone(), catalog::line_bundle(r, 0)]).unwrap()),
        ("T(x)T on P2".into(), t.tensor(&t).unwrap()),
        ("T on P3".into(), catalog::tangent(r3)),
        ("Omega2(3) on P3".into(), catalog::omega(r3, 2).twist(3)),
    ];
    for (_, m) in out.iter_mut() {
        if m.presentation().cols() == 0 {
            *m = m.clone().with_locally_free(true);
        }
    }
    out
}

/// `h^i(Ω^j(d))` from the resolution against Bott's formula.
pub fn bott_agreement(primes: &[u64], max_n: usize, twists: std::ops::RangeInclusive<i64>) -> Check {
    let cases: Vec<(u64, usize, usize)> =
        primes.iter().flat_map(|&p| (1..=max_n).flat_map(move |n| (0..=n).map(move |j| (p, n, j)))).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|&(p, n, j)| {
            let c = Cohomology::new(&catalog::omega(ring(n + 1, p), j));
            let table = c.table(*twists.start(), *twists.end()).expect("nonempty window");
            let mut bad = Vec::new();
            for i in 0..=n {
                for d in twists.clone() {
                    let expected = bott_oracle(n as i64, j as i64, d, i as i64).unwrap();
                    if table.get(i, d) != expected {
                        bad.push(format!("p={p} n={n} j={j} i={i} d={d}: {} != {expected}", table.get(i, d)));
                    }
                }
            }
            bad
        })
        .collect();
    let width = (twists.end() - twists.start() + 1) as usize;
    let total = cases.iter().map(|&(_, n, _)| (n + 1) * width).sum();
    Check::from_failures("bott agreement", total, &failures)
}

/// `φ(O(1)) = 0`, `φ(O) = 2`, `φ(T) = 1` on P^2 and `h^1(T(-3)) = 1`.
pub fn amplitude_reproduction(primes: &[u64]) -> Check {
    let failures: Vec<String> = primes
        .par_iter()
        .flat_map_iter(|&p| {
            let r = ring(3, p);
            let mut bad = Vec::new();
            for (name, m, expected) in [
                ("O(1)", catalog::line_bundle(r, 1), 0),
                ("O", catalog::line_bundle(r, 0), 2),
                ("T", catalog::tangent(r), 1),
            ] {
                let rep = f_amplitude(&m).unwrap();
                if rep.phi != expected {
                    bad.push(format!("p={p}: phi({name}) = {}, expected {expected}", rep.phi));
                }
                if name == "T" && rep.witness_table.get(1, -3) != 1 {
                    bad.push(format!("p={p}: h^1(T(-3)) = {}", rep.witness_table.get(1, -3)));
                }
            }
            bad
        })
        .collect();
    Check::from_failures("amplitude on P2", primes.len() * 3, &failures)
}

/// Solved splitting types against monomial counting for `q = p^e`.
pub fn splitting_against_oracle(max_n: i64, qs: &[u64]) -> Check {
    let mut total = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        for &q in qs {
            for i in -n - 1..q as i64 {
                total += 1;
                let (solved, counted) = (splitting_type(n, q as i64, i), splitting_oracle(n, q, i));
                match (solved, counted) {
                    (Ok(s), Ok(c)) if s == c && s.rank() == q.pow(n as u32) => {}
                    (s, c) => failures.push(format!("n={n} q={q} i={i}: {s:?} vs {c:?}")),
                }
            }
        }
    }
    Check::from_failures("splitting types match monomial count", total, &failures)
}

/// `f(0,i) = p_n(i)` and `f(-n,i) = (-1)^n p_n(i-d)` over `-n-1 <= i <= d-1`.
pub fn splitting_closed_forms(max_n: i64, max_d: i64) -> Check {
    let mut total = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        for d in 2..=max_d {
            for i in -n - 1..d {
                total += 1;
                match splitting_type(n, d, i) {
                    Ok(t) => {
                        let mut bad: Vec<String> = closed_form_mismatches(&t)
                            .into_iter()
                            .filter(|m| m.l == 0 || m.l == -n)
                            .map(|m| format!("f({},i) = {}, closed form {}", m.l, m.solved, m.closed_form))
                            .collect();
                        if t.rank() != (d as u64).pow(n as u32) {
                            bad.push(format!("rank {}", t.rank()));
                        }
                        if !bad.is_empty() {
                            failures.push(format!("n={n} d={d} i={i}: {}", bad.join("; ")));
                        }
                    }
                    Err(e) => failures.push(format!("n={n} d={d} i={i}: {e}")),
                }
            }
        }
    }
    Check::from_failures("splitting closed forms", total, &failures)
}

/// `f(0,0) = f(-n-1,-n-1) = 1` and the support windows.
pub fn splitting_boundaries(max_n: i64, max_d: i64) -> Check {
    let mut total = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        for d in 2..=max_d {
            total += 1;
            match boundary_cases(n, d) {
                Ok(r) if r.holds() => {}
                other => failures.push(format!("n={n} d={d}: {other:?}")),
            }
        }
    }
    Check::from_failures("splitting boundary cases", total, &failures)
}

/// Regularity of line bundles and the point ideal, the regularity bound on
/// `φ`, global generation of 0-regular modules, and the Frobenius
/// regularity sequence of `O(-1)`.
pub fn regularity_suite(p: u64) -> Vec<Check> {
    let r = ring(3, p);
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    for d in -4..=4 {
        let reg = crate::cohomology::regularity(&catalog::line_bundle(r, d)).unwrap().sheaf_regularity;
        if reg != -d {
            bad.push(format!("reg(O({d})) = {reg}"));
        }
    }
    let reg = crate::cohomology::regularity(&catalog::point_ideal(r)).unwrap().sheaf_regularity;
    if reg != 1 {
        bad.push(format!("reg(point ideal) = {reg}"));
    }
    checks.push(Check::from_failures("regularity of line bundles and point ideal", 10, &bad));

    let modules = module_catalog(p);
    // Per module: 0-regular, then failures of the amplitude bound, global
    // generation and the resolution estimates.
    type Outcome = (bool, Option<String>, Option<String>, Option<String>);
    let results: Vec<Outcome> = modules
        .par_iter()
        .map(|(name, m)| {
            let bound = match amplitude_bound_from_regularity(m) {
                Ok(b) if b.holds() => None,
                other => Some(format!("{name}: {other:?}")),
            };
            let c = Cohomology::new(m);
            let rep = c.regularity().unwrap();
            let gg = if rep.sheaf_regularity <= 0 {
                let g = global_generation(&c, 0..=3);
                (!g.holds()).then(|| format!("{name}: {g:?}"))
            } else {
                None
            };
            let n = m.proj_dim();
            let mut estimates = Vec::new();
            if rep.sheaf_regularity > rep.module_regularity_bound {
                estimates.push("reg exceeds the Betti bound".to_string());
            }
            if resolution_regularity_bound(c.resolution(), n).is_some_and(|b| rep.sheaf_regularity > b) {
                estimates.push("reg exceeds the resolution bound".to_string());
            }
            let v = resolution_vanishing_violations(&c, -(n as i64) - 2..=2);
            if !v.is_empty() {
                estimates.push(format!("vanishing transfer fails at {v:?}"));
            }
            let estimates = (!estimates.is_empty()).then(|| format!("{name}: {}", estimates.join("; ")));
            (rep.sheaf_regularity <= 0, bound, gg, estimates)
        })
        .collect();
    let count = results.len();
    let collect = |k: usize| -> Vec<String> {
        results
            .iter()
            .filter_map(|r| match k {
                0 => r.1.clone(),
                1 => r.2.clone(),
                _ => r.3.clone(),
            })
            .collect()
    };
    checks.push(Check::from_failures("regularity bound on amplitude", count, &collect(0)));
    let zero_regular = results.iter().filter(|r| r.0).count();
    checks.push(Check::from_failures("0-regular modules are globally generated", zero_regular, &collect(1)));
    checks.push(Check::from_failures("resolution regularity estimates", count, &collect(2)));

    let seq = minreg_areg(&catalog::line_bundle(r, -1), 3).unwrap().sequence;
    let expected: Vec<i64> = (0..=3).map(|e| (p as i64).pow(e)).collect();
    checks.push(Check::new(
        "Frobenius regularity of O(-1)",
        seq == expected,
        1,
        format!("{seq:?}"),
    ));
    checks
}

fn exact_sequences(p: u64) -> Vec<(String, (ModuleMap, ModuleMap))> {
    let r = ring(3, p);
    let r3 = ring(4, p);
    let t = catalog::tangent(r);
    vec![
        ("Euler on P2".into(), catalog::euler_sequence(r, 0).unwrap()),
        ("Euler(-1) on P2".into(), catalog::euler_sequence(r, -1).unwrap()),
        ("Euler on P3".into(), catalog::euler_sequence(r3, 0).unwrap()),
        ("Koszul point ideal on P2".into(), catalog::koszul_sequence(r).unwrap()),
        ("O(1) -> O(1)+T -> T".into(), catalog::split_sequence(&catalog::line_bundle(r, 1), &t).unwrap()),
        ("O -> O+O(-1) -> O(-1)".into(), catalog::split_sequence(&catalog::line_bundle(r, 0), &catalog::line_bundle(r, -1)).unwrap()),
    ]
}

/// Amplitude inequalities on exact sequences, tensor products, ample
/// bundles and hyperplane restrictions.
pub fn inequality_suites(p: u64) -> Vec<Check> {
    let r = ring(3, p);
    let r3 = ring(4, p);
    let mut checks = Vec::new();

    let seqs = exact_sequences(p);
    let bad: Vec<String> = seqs
        .par_iter()
        .filter_map(|(name, (f, g))| match check_exact_sequence_bounds(f, g) {
            Ok(rep) if rep.holds => None,
            other => Some(format!("{name}: {other:?}")),
        })
        .collect();
    checks.push(Check::from_failures("amplitude of extensions", seqs.len(), &bad));

    let t = catalog::tangent(r);
    let pool: Vec<(&str, GradedModule)> = vec![
        ("O(-1)", catalog::line_bundle(r, -1)),
        ("O", catalog::line_bundle(r, 0)),
        ("O(1)", catalog::line_bundle(r, 1)),
        ("T", t.clone()),
        ("T(-1)", t.twist(-1)),
        ("Omega1", catalog::omega(r, 1)),
    ];
    let mut pairs = Vec::new();
    for a in 0..pool.len() {
        for b in a..pool.len() {
            pairs.push((a, b));
        }
    }
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| match check_tensor_subadditivity(&pool[a].1, &pool[b].1) {
            Ok(rep) if rep.holds => None,
            other => Some(format!("{} x {}: {other:?}", pool[a].0, pool[b].0)),
        })
        .collect();
    checks.push(Check::from_failures("tensor subadditivity", pairs.len(), &bad));

    let ample: Vec<(&str, GradedModule)> = vec![
        ("T on P2", t.clone()),
        ("T(1) on P2", t.twist(1)),
        ("O(1) on P2", catalog::line_bundle(r, 1)),
        ("O(1)+O(2) on P2", catalog::line_bundle_sum(r, &[1, 2]).with_locally_free(true)),
        ("O(1)+O(2) on P3", catalog::line_bundle_sum(r3, &[1, 2]).with_locally_free(true)),
        ("T on P3", catalog::tangent(r3)),
        ("O(1) on P1", catalog::line_bundle(ring(2, p), 1)),
    ];
    let reports: Vec<_> = ample.par_iter().map(|(name, m)| (*name, check_rank_and_dimension_bounds(m))).collect();
    let mut dim_bad = Vec::new();
    let mut rank_bad = Vec::new();
    for (name, rep) in &reports {
        match rep {
            Ok(r) => {
                if !r.below_dimension {
                    dim_bad.push(format!("{name}: {r:?}"));
                }
                if !r.below_rank_at_this_prime {
                    rank_bad.push(format!("{name}: {r:?}"));
                }
            }
            Err(e) => dim_bad.push(format!("{name}: {e}")),
        }
    }
    checks.push(Check::from_failures("amplitude below dimension for ample bundles", ample.len(), &dim_bad));
    checks.push(Check::from_failures(
        &format!("amplitude below rank at p={p} (evidence for a characteristic-zero statement)"),
        ample.len(),
        &rank_bad,
    ));

    let bad: Vec<String> = ample
        .iter()
        .filter(|(_, m)| m.proj_dim() >= 2)
        .filter_map(|(name, m)| match check_hyperplane_restriction(m) {
            Ok(rep) if rep.holds => None,
            other => Some(format!("{name}: {other:?}")),
        })
        .collect();
    checks.push(Check::from_failures("hyperplane restriction bounds", ample.len() - 1, &bad));

    let modules = module_catalog(p);
    let bad: Vec<String> = modules
        .iter()
        .filter_map(|(name, m)| match check_f_ample_regularity(m) {
            Ok(None) | Ok(Some(true)) => None,
            other => Some(format!("{name}: {other:?}")),
        })
        .collect();
    checks.push(Check::from_failures("F-ample implies (-1)-regular", modules.len(), &bad));

    let cores = [(t.twist(1), 0), (t.twist(1), 2), (catalog::line_bundle(r, 2), 1), (catalog::line_bundle(r, 3), 3)];
    let bad: Vec<String> = cores
        .iter()
        .filter_map(|(core, n)| match check_plane_classification(core, *n) {
            Ok(rep) if rep.holds => None,
            other => Some(format!("{other:?}")),
        })
        .collect();
    checks.push(Check::from_failures("F-ample bundles on P2 split off O(1) summands", cores.len(), &bad));
    checks
}

/// Carter–Lusztig alternating sums and the Schur–Weyl count.
pub fn schur_suite(max_rank: u64, primes: &[u64], max_weight: u64, max_schur_rank: u64) -> Vec<Check> {
    let mut bad = Vec::new();
    let mut total = 0;
    for r in 1..=max_rank {
        for &p in primes {
            total += 1;
            match carter_lusztig_complex(r, p) {
                Ok(c) if c.is_exact_on_dimensions() => {}
                other => bad.push(format!("r={r} p={p}: {other:?}")),
            }
        }
    }
    let cl = Check::from_failures("Carter-Lusztig Euler characteristic", total, &bad);
    let mut bad = Vec::new();
    let mut total = 0;
    for m in 0..=max_weight {
        for r in 1..=max_schur_rank {
            total += 1;
            let count = schur_weyl_count(m, r).unwrap();
            if count != num_bigint::BigUint::from(r).pow(m as u32) {
                bad.push(format!("m={m} r={r}: {count}"));
            }
        }
    }
    vec![cl, Check::from_failures("Schur-Weyl dimension count", total, &bad)]
}

/// Buchberger criterion on every basis, zero compositions and degreewise
/// exactness of every resolution, and the length bound.
pub fn groebner_soundness(p: u64) -> Vec<Check> {
    let modules = module_catalog(p);
    let results: Vec<(Vec<String>, Vec<String>, Vec<String>)> = modules
        .par_iter()
        .map(|(name, m)| {
            let res = m.resolution();
            let mut gb_bad = Vec::new();
            let mut pres = vec![m.presentation().clone()];
            pres.extend(res.maps().iter().cloned());
            for (k, map) in pres.iter().enumerate() {
                let target = map.target();
                let gb = groebner_basis(&target, &columns(map)).unwrap();
                if !is_groebner_basis(&target, &gb) {
                    gb_bad.push(format!("{name}: basis {k}"));
                }
            }
            let mut exact_bad = Vec::new();
            if let Err(e) = res.verify_exactness(res.test_window()) {
                exact_bad.push(format!("{name}: {e}"));
            }
            if !res.is_minimal() || !res.is_complete() {
                exact_bad.push(format!("{name}: not minimal or incomplete"));
            }
            let mut len_bad = Vec::new();
            if res.length() > m.proj_dim() + 1 {
                len_bad.push(format!("{name}: length {}", res.length()));
            }
            (gb_bad, exact_bad, len_bad)
        })
        .collect();
    let gather = |k: usize| -> Vec<String> {
        results
            .iter()
            .flat_map(|r| match k {
                0 => r.0.clone(),
                1 => r.1.clone(),
                _ => r.2.clone(),
            })
            .collect()
    };
    vec![
        Check::from_failures("Buchberger criterion", modules.len(), &gather(0)),
        Check::from_failures("resolutions exact and minimal", modules.len(), &gather(1)),
        Check::from_failures("resolution length at most n+1", modules.len(), &gather(2)),
    ]
}

/// Checks that do not depend on a prime.
pub fn field_free_checks() -> Vec<Check> {
    let mut checks = vec![
        splitting_against_oracle(3, &[2, 3, 4, 5, 7, 8, 9]),
        splitting_closed_forms(3, 9),
        splitting_boundaries(3, 9),
    ];
    checks.extend(schur_suite(6, &[2, 3, 5, 7, 11], 5, 4));
    checks
}

/// Checks over `F_p`, in a fixed order.
pub fn prime_checks(p: u64) -> Vec<Check> {
    let mut checks = vec![bott_agreement(&[p], 3, -6..=6), amplitude_reproduction(&[p])];
    checks.extend(regularity_suite(p));
    checks.extend(inequality_suites(p));
    checks.extend(groebner_soundness(p));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_reported_with_the_first_case() {
        let c = Check::from_failures("x", 4, &["a".into(), "b".into()]);
        assert!(!c.passed);
        assert_eq!(c.detail, "2 of 4 cases failed; first: a");
        assert!(Check::from_failures("x", 4, &[]).passed);
    }

    #[test]
    fn catalog_is_large_enough_and_valid() {
        let modules = module_catalog(5);
        assert!(modules.len() >= 10);
        for (name, m) in &modules {
            if m.is_locally_free() {
                assert!(m.check_locally_free(100, 1).is_ok(), "{name}");
            }
        }
    }

    #[test]
    fn closed_form_check_flags_only_the_left_endpoint() {
        let c = splitting_closed_forms(2, 4);
        assert!(!c.passed);
        assert!(c.detail.starts_with("6 of 33 cases failed; first: n=1 d=2 i=-2: f(0,i) = 0, closed form -1; f(-1,i) = 1, closed form 3"), "{}", c.detail);
    }
}
