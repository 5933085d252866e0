mod common;

use common::*;
use nalgebra::Complex;
use proptest::prelude::*;
use surfrep::topology::{control_rep, lift_independence_check, obstruction_class, random_schottky_psl};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn schottky_lifts_have_trivial_obstruction(n in 2..=4usize, genus in 1..=3usize, seed in any::<u64>()) {
        let rep = random_schottky_psl::<f64>(n, genus, seed).unwrap();
        let o = obstruction_class(&rep).unwrap();
        prop_assert!(o.trivial);
        prop_assert!((o.zeta - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(lift_independence_check(&rep, seed).unwrap());
    }

    #[test]
    fn zeta_is_conjugation_invariant(seed in any::<u64>(), n in 2..=3usize) {
        let mut r = rng(seed);
        for rep in [control_rep::<f64>(), random_schottky_psl::<f64>(n, 2, seed).unwrap()] {
            let d = surfrep::rep::Representation::descriptor(&rep);
            let before = obstruction_class(&rep).unwrap();
            let after = obstruction_class(&rep.conjugate(&random_unitary(d, &mut r)).unwrap()).unwrap();
            prop_assert!((before.zeta - after.zeta).norm() <= 1e-10);
        }
    }

    #[test]
    fn control_survives_central_twists(seed in any::<u64>()) {
        prop_assert!(lift_independence_check(&control_rep::<f64>(), seed).unwrap());
    }
}
