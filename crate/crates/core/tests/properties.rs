mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use yamada_core::diagram::{Convention, SpinState};
use yamada_core::hpoly::{h_delcon, HCache};
use yamada_core::yamada::{r_state_sum, r_state_sum_range, state_count};
use yamada_core::zeros::{region_membership, RegionSpec, RegionTerms};
use yamada_core::{LaurentPoly, RationalFunction};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -40i64..=40), 0..6)
        .prop_map(|terms| terms.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect())
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("non-zero", |p| !p.is_zero())
}

fn unit_point() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!(a.terms().all(|(_, c)| c != &BigInt::from(0)));
    }

    #[test]
    fn mirror_is_an_involutive_homomorphism(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.mirror().mirror(), a.clone());
        prop_assert_eq!((&a * &b).mirror(), &a.mirror() * &b.mirror());
        prop_assert_eq!((&a + &b).mirror(), &a.mirror() + &b.mirror());
    }

    #[test]
    fn evaluation_is_multiplicative(a in laurent(), b in laurent(), z in unit_point()) {
        let lhs = (&a * &b).eval_complex(z).unwrap();
        let rhs = a.eval_complex(z).unwrap() * b.eval_complex(z).unwrap();
        let scale = 1.0 + a.abs_scale(z).unwrap() * b.abs_scale(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
    }

    #[test]
    fn text_round_trip(a in laurent()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn reduction_is_idempotent(n in laurent(), d in nonzero_laurent(), k in nonzero_laurent()) {
        let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        let scaled = RationalFunction::new(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(&scaled, &f);
        prop_assert_eq!(f.den().min_exp(), Some(0));
    }

    #[test]
    fn division_undoes_multiplication(a in laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn omega_is_the_union_of_its_parts(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 0.0);
        let t = RegionTerms::at(z).unwrap();
        let union = t.contains(RegionSpec::SigmaGe1)
            || t.contains(RegionSpec::PlusRegion)
            || t.contains(RegionSpec::MinusRegion);
        prop_assert_eq!(region_membership(RegionSpec::Omega, z).unwrap(), union);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn state_sum_mirror_identity(seed in any::<u64>()) {
        let d = common::random_diagram(&mut common::rng(seed), 4);
        let r = r_state_sum(&d).unwrap();
        prop_assert_eq!(r_state_sum(&d.mirror()).unwrap(), r.mirror());
        prop_assert_eq!(d.mirror().mirror(), d);
    }

    #[test]
    fn flipped_convention_is_the_mirror(seed in any::<u64>()) {
        let d = common::random_diagram(&mut common::rng(seed), 4);
        let mut cache = HCache::new();
        let n = state_count(&d);
        let flipped = r_state_sum_range(&d, 0..n, Convention::Flipped, &mut cache).unwrap();
        prop_assert_eq!(flipped, r_state_sum(&d.mirror()).unwrap());
    }

    #[test]
    fn state_sum_is_independent_of_partition(seed in any::<u64>(), cut in 0.0f64..1.0) {
        let d = common::random_diagram(&mut common::rng(seed), 4);
        let n = state_count(&d);
        let k = ((n as f64) * cut) as u64;
        let mut cache = HCache::new();
        let lo = r_state_sum_range(&d, 0..k, Convention::Standard, &mut cache).unwrap();
        let hi = r_state_sum_range(&d, k..n, Convention::Standard, &mut cache).unwrap();
        prop_assert_eq!(&lo + &hi, r_state_sum(&d).unwrap());
    }

    #[test]
    fn closing_commutes_with_resolution(seed in any::<u64>()) {
        let d = common::random_diagram(&mut common::rng(seed), 3);
        prop_assume!(d.terminals().is_some());
        let (u, v) = d.terminals().unwrap();
        let closed = d.close_terminals().unwrap();
        let crossings = d.crossings();
        for i in 0..state_count(&d) {
            let s = SpinState::from_index(&crossings, i);
            let (g, w) = d.resolve(&s).unwrap();
            let (gc, wc) = closed.resolve(&s).unwrap();
            prop_assert_eq!(&w, &wc);
            let identified = g.identify_vertices(u, v).unwrap();
            prop_assert_eq!(identified.q(), gc.q());
            prop_assert_eq!(identified.p(), gc.p());
            prop_assert_eq!(h_delcon(&identified), h_delcon(&gc));
        }
    }

    #[test]
    fn resolution_conserves_ports(seed in any::<u64>()) {
        let d = common::random_diagram(&mut common::rng(seed), 4);
        let ports: u32 = d.nodes().map(|(_, k)| k.ports()).sum();
        let crossings = d.crossings();
        for i in 0..state_count(&d) {
            let s = SpinState::from_index(&crossings, i);
            let (g, _) = d.resolve(&s).unwrap();
            let zeros = crossings
                .iter()
                .filter(|&&c| s.get(c) == Some(yamada_core::diagram::Spin::Zero))
                .count() as u32;
            let smoothed = crossings.len() as u32 - zeros;
            let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
            let circles = g.p() as u32 - (d.nodes().count() as u32 - smoothed);
            // Each smoothing removes four ports; each free circle adds a loop.
            prop_assert_eq!(degree_sum as u32, ports - 4 * smoothed + 2 * circles);
        }
    }
}
