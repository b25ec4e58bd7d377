use num_complex::Complex64 as C;
use num_rational::BigRational;
use proptest::prelude::*;
use qonf_gw::*;
use qonf_qspecial::QValue;
use qonf_rings::rat;
use std::time::Instant;

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closed_formula_equals_series(n in 0usize..=3, d in 0usize..=6) {
        prop_assert_eq!(jk_closed_formula(n, d).unwrap(), jk_series(n, d).unwrap());
    }

    #[test]
    fn homogeneous_in_z(n in 0usize..=3, num in 1i64..9, den in 1i64..9, neg in any::<bool>()) {
        let z = if neg { rat(-num, den) } else { rat(num, den) };
        prop_assert_eq!(homogeneity_defect(n, 4, &z).unwrap(), None);
        prop_assert!(jcoh_ode_residual(n, 4, &z).unwrap().is_zero_through(4));
    }

    #[test]
    fn modified_logdegree_bounded(n in 0usize..=3, d in 0usize..=4) {
        let jt = jk_modified(n, d).unwrap();
        for dd in 0..=d {
            for i in 0..=n {
                for m in (i + 1)..=n {
                    prop_assert!(jt.get(dd, i, m).is_zero());
                }
            }
        }
    }

    #[test]
    fn reduction_respects_products(n in 0usize..=4, a in 0usize..12, b in 0usize..12) {
        let ring = SmallQuantumRing::new(n);
        prop_assert_eq!(ring.mul(&ring.power(a), &ring.power(b)), ring.power(a + b));
    }

    #[test]
    fn equivariant_residual_small(
        w in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..=3),
        qr in 0.2f64..0.6, qi in -0.3f64..0.3,
        br in -0.4f64..0.4, bi in -0.4f64..0.4,
    ) {
        let lambdas: Vec<C> = w.iter().map(|&(a, b)| C::new(a, b)).collect();
        let spec = match EquivariantSpec::new(lambdas, C::new(1.0, 0.0)) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        let q = QValue::new(C::new(qr, qi)).unwrap();
        let big_q = C::new(br, bi);
        prop_assume!(big_q.norm() > 0.05);
        let j = match jk_equivariant(&spec, &q, 40) {
            Ok(j) => j,
            Err(_) => return Ok(()),
        };
        for i in 0..=spec.n() {
            if let Ok(res) = j.residual(i, big_q) {
                prop_assert!(res < 1e-8, "residual {}", res);
            }
        }
    }
}

#[test]
fn wdvv_perturbations_are_detected() {
    let base = nd_recursion(4).unwrap().as_rationals();
    for k in 1..4 {
        let mut bad = base.clone();
        bad[k] += BigRational::from_integer(1.into());
        assert!(!wdvv_residual(&potential_from_counts(&bad, 4)).is_zero(), "N_{}", k + 1);
    }
}

#[test]
fn full_grid_timing() {
    let t = Instant::now();
    for n in 0..=4 {
        let c = confluence_compare(n, 6).unwrap();
        assert!(c.is_exact(), "N={n}: {:?}", c.mismatches);
    }
    eprintln!("confluence grid N≤4, d≤6: {:?}", t.elapsed());
}
