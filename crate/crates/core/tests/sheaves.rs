use frobamp::catalog;
use frobamp::cohomology::{bott_oracle, Cohomology};
use frobamp::{GradedModule, PolyRing};

fn ring(nv: usize, p: u64) -> PolyRing {
    PolyRing::new(nv, p).unwrap()
}

#[test]
fn tangent_agrees_with_twisted_forms() {
    // T = Omega^{n-1}(n+1) on P^n.
    for (nv, p) in [(3, 2), (3, 5), (4, 3)] {
        let n = (nv - 1) as i64;
        let t = Cohomology::new(&catalog::tangent(ring(nv, p))).table(-6, 6).unwrap();
        for i in 0..=n {
            for d in -6..=6 {
                assert_eq!(t.get(i as usize, d), bott_oracle(n, n - 1, d + n + 1, i).unwrap(), "n={n} i={i} d={d}");
            }
        }
    }
}

#[test]
fn euler_sequence_gives_sections_of_tangent() {
    // 0 -> O -> O(1)^{n+1} -> T -> 0 and H^1(O(d)) = 0.
    let r = ring(4, 3);
    let c = Cohomology::new(&catalog::tangent(r));
    let o = |d: i64| catalog::line_bundle(r, 0).hilbert_function(d) as i64;
    for d in -1..=5 {
        assert_eq!(c.h(0, d).unwrap() as i64, 4 * o(d + 1) - o(d), "d={d}");
    }
}

fn serre_dual_pairs(p: u64) -> Vec<(GradedModule, GradedModule)> {
    let r2 = ring(3, p);
    let r3 = ring(4, p);
    vec![
        (catalog::tangent(r2), catalog::omega(r2, 1)),
        (catalog::tangent(r3), catalog::omega(r3, 1)),
        (catalog::omega(r3, 2), catalog::omega(r3, 1).twist(4)),
        (catalog::line_bundle(r2, 3), catalog::line_bundle(r2, -3)),
    ]
}

#[test]
fn serre_duality() {
    for p in [2, 5] {
        for (e, dual) in serre_dual_pairs(p) {
            let n = e.proj_dim() as i64;
            let a = Cohomology::new(&e).table(-6, 6).unwrap();
            let b = Cohomology::new(&dual).table(-6 - n - 1, 6 - n - 1).unwrap();
            for i in 0..=n {
                for d in -6..=6 {
                    assert_eq!(a.get(i as usize, d), b.get((n - i) as usize, -d - n - 1), "p={p} i={i} d={d}");
                }
            }
        }
    }
}

fn catalog_modules() -> Vec<GradedModule> {
    let r = ring(3, 3);
    let r3 = ring(4, 3);
    let t = catalog::tangent(r);
    vec![
        catalog::line_bundle(r, -2),
        t.clone(),
        t.tensor(&t).unwrap(),
        catalog::omega(r, 1).twist(1),
        catalog::point_ideal(r),
        catalog::hypersurface(&(&r.var(0) * &r.var(1))),
        catalog::omega(r3, 2),
        catalog::line_bundle_sum(r3, &[0, 1, 3]),
    ]
}

#[test]
fn euler_characteristic_is_hilbert_polynomial() {
    for m in catalog_modules() {
        let t = Cohomology::new(&m).table(-5, 5).unwrap();
        for d in -5..=5 {
            assert_eq!(t.euler_characteristic(d), m.hilbert_polynomial(d), "{:?} at {d}", m.presentation().target_twists());
        }
    }
}

#[test]
fn horrocks_consistency() {
    // Locally free with all H^i(E(d)) = 0 for 0 < i < n iff E splits; for
    // a module of twisted sections, splitting means a free presentation.
    let mut examined = 0;
    for m in catalog_modules().into_iter().filter(|m| m.check_locally_free(200, 7).is_ok()) {
        let n = m.proj_dim();
        let c = Cohomology::new(&m);
        if !(-8..=8).all(|d| c.module_is_sections(d)) {
            continue;
        }
        let t = c.table(-8, 8).unwrap();
        let intermediate_vanishes = (1..n).all(|i| t.twists().all(|d| t.get(i, d) == 0));
        let free = m.resolution().maps().first().is_none_or(|f| f.cols() == 0);
        assert_eq!(intermediate_vanishes, free, "{:?}", m.presentation().target_twists());
        examined += 1;
    }
    assert!(examined >= 3, "only {examined} modules examined");
}
