use frobamp::catalog;
use frobamp::famp::f_amplitude;
use frobamp::frobsplit::{splitting_oracle, splitting_type};
use frobamp::poly::Monomial;
use frobamp::schur::{partitions_of, schur_dimension, standard_tableaux_count, Partition};
use frobamp::{GradedModule, MultiPoly, PolyRing};
use num_bigint::BigUint;
use proptest::prelude::*;

fn poly(ring: PolyRing, terms: &[([u32; 3], u64)]) -> MultiPoly {
    MultiPoly::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)))
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], u64)>> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], 0u64..100), 0..6)
}

fn small_module(ring: PolyRing, k: usize) -> GradedModule {
    match k {
        0 => catalog::line_bundle(ring, -1),
        1 => catalog::line_bundle(ring, 0),
        2 => catalog::line_bundle(ring, 2),
        3 => catalog::tangent(ring),
        4 => catalog::tangent(ring).twist(-2),
        5 => catalog::omega(ring, 1),
        _ => catalog::point_ideal(ring),
    }
}

proptest! {
    #[test]
    fn frobenius_is_the_pth_power(t in terms(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let r = PolyRing::new(3, p).unwrap();
        let f = poly(r, &t);
        prop_assert_eq!(f.frobenius(1).unwrap(), f.pow(p as u32));
    }

    #[test]
    fn frobenius_is_a_ring_map(a in terms(), b in terms(), p in prop::sample::select(vec![2u64, 3, 7])) {
        let r = PolyRing::new(3, p).unwrap();
        let (f, g) = (poly(r, &a), poly(r, &b));
        prop_assert_eq!((&f + &g).frobenius(1).unwrap(), &f.frobenius(1).unwrap() + &g.frobenius(1).unwrap());
        prop_assert_eq!((&f * &g).frobenius(1).unwrap(), &f.frobenius(1).unwrap() * &g.frobenius(1).unwrap());
    }

    #[test]
    fn frobenius_powers_compose(t in terms(), a in 1u32..3, b in 1u32..3) {
        let r = PolyRing::new(3, 2).unwrap();
        let f = poly(r, &t);
        prop_assert_eq!(f.frobenius(a).unwrap().frobenius(b).unwrap(), f.frobenius(a + b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_function_adds_over_direct_sums(a in 0usize..7, b in 0usize..7, d in -3i64..6) {
        let r = PolyRing::new(3, 3).unwrap();
        let (e, f) = (small_module(r, a), small_module(r, b));
        let sum = GradedModule::direct_sum(r, &[e.clone(), f.clone()]).unwrap();
        prop_assert_eq!(sum.hilbert_function(d), e.hilbert_function(d) + f.hilbert_function(d));
    }

    #[test]
    fn amplitude_of_direct_sum_is_max(a in 0usize..6, b in 0usize..6, p in prop::sample::select(vec![2u64, 3])) {
        let r = PolyRing::new(3, p).unwrap();
        let (e, f) = (small_module(r, a), small_module(r, b));
        let sum = GradedModule::direct_sum(r, &[e.clone(), f.clone()]).unwrap().with_locally_free(true);
        let phi = f_amplitude(&sum).unwrap().phi;
        prop_assert_eq!(phi, f_amplitude(&e).unwrap().phi.max(f_amplitude(&f).unwrap().phi));
    }

    #[test]
    fn solved_splitting_matches_monomial_count(n in 1i64..4, q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9, 11, 16]), i in -30i64..30) {
        let solved = splitting_type(n, q as i64, i).unwrap();
        prop_assert_eq!(&solved, &splitting_oracle(n, q, i).unwrap());
        prop_assert_eq!(solved.rank(), q.pow(n as u32));
    }

    #[test]
    fn splitting_twists_by_d(n in 1i64..4, d in 2i64..8, i in -10i64..10, s in -3i64..3) {
        let base = splitting_type(n, d, i).unwrap();
        let shifted = splitting_type(n, d, i + d * s).unwrap();
        let moved: Vec<(i64, u64)> = base.multiplicities.iter().map(|(l, m)| (l + s, *m)).collect();
        prop_assert_eq!(shifted.multiplicities.into_iter().collect::<Vec<_>>(), moved);
    }
}

/// Binomial coefficient computed by Pascal's rule.
fn pascal(n: u64, k: u64) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::from(1u32); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

proptest! {
    #[test]
    fn symmetric_and_exterior_powers(m in 1u64..8, r in 1u64..8) {
        prop_assert_eq!(schur_dimension(&Partition::new(vec![m]).unwrap(), r).unwrap(), pascal(r + m - 1, m));
        prop_assert_eq!(schur_dimension(&Partition::hook(1, m as usize - 1), r).unwrap(), pascal(r, m));
    }

    #[test]
    fn conjugation_is_an_involution(m in 0u64..9, k in 0usize..30) {
        let all = partitions_of(m);
        let l = &all[k % all.len()];
        prop_assert_eq!(&l.conjugate().conjugate(), l);
        prop_assert_eq!(standard_tableaux_count(&l.conjugate()), standard_tableaux_count(l));
    }
}
