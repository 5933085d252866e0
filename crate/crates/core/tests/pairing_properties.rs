mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use surfrep::cohomology::{h1, z1, Cocycle};
use surfrep::rep::{random_good_schottky, Representation, SurfaceRep};
use surfrep::symplectic::{fox_pairing, pairing_matrix, verify_lagrangian, FormKind};

const GROUPS: [&str; 4] = ["SL2", "SL3", "GL2", "PSL2"];

fn scale(rep: &SurfaceRep<f64>, kind: FormKind) -> f64 {
    pairing_matrix(rep, &h1(rep).unwrap(), kind).unwrap().scale()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn coboundaries_are_in_the_radical(g in prop::sample::select(GROUPS.to_vec()), seed in 0..10_000u64, unitary in any::<bool>()) {
        let d = desc(g);
        let mut r = rng(seed);
        let rep = if unitary { random_good_schottky::<f64>(d, 2, true, seed).unwrap() } else { strict_nonunitary(d, 2, &mut r) };
        let z = z1(&rep).unwrap();
        let kinds: &[FormKind] = if unitary { &[FormKind::Bilinear, FormKind::Hermitian] } else { &[FormKind::Bilinear] };
        for &kind in kinds {
            let s = scale(&rep, kind);
            for _ in 0..2 {
                let delta = Cocycle::coboundary(&rep, &random_lie(d, &mut r)).unwrap();
                let k = r.random_range(0..z.dim());
                let phi = z.cocycle(&rep, k).unwrap();
                let norm = delta.norm() * phi.norm();
                prop_assert!(fox_pairing(&rep, &delta, &phi, kind).unwrap().norm() <= 1e-9 * s * norm.max(1.0));
                prop_assert!(fox_pairing(&rep, &phi, &delta, kind).unwrap().norm() <= 1e-9 * s * norm.max(1.0));
            }
        }
    }

    #[test]
    fn antisymmetric_hermitian_and_nondegenerate(g in prop::sample::select(GROUPS.to_vec()), genus in 2..4usize, seed in 0..10_000u64) {
        let rep = random_good_schottky::<f64>(desc(g), genus, seed % 2 == 0, seed).unwrap();
        let h = h1(&rep).unwrap();
        let b = pairing_matrix(&rep, &h, FormKind::Bilinear).unwrap();
        prop_assert!(b.antisymmetry_defect() <= 1e-9 * b.scale());
        prop_assert_eq!(b.rank, h.dim());
        let q = pairing_matrix(&rep, &h, FormKind::Hermitian).unwrap();
        prop_assert!(q.hermiticity_defect() <= 1e-9 * q.scale());
        prop_assert_eq!(q.rank, h.dim());
    }

    #[test]
    fn ranks_survive_unitary_conjugation(g in prop::sample::select(GROUPS.to_vec()), seed in 0..10_000u64, kind in 0..3u8) {
        let d = desc(g);
        let mut r = rng(seed);
        let rep = match kind {
            0 => random_good_schottky::<f64>(d, 2, true, seed).unwrap(),
            1 => diagonal_rep(d, 2, &mut r),
            _ => SurfaceRep::trivial(d, 2).unwrap(),
        };
        let conj = rep.conjugate(&random_unitary(d, &mut r)).unwrap();
        for form in [FormKind::Bilinear, FormKind::Hermitian] {
            let a = pairing_matrix(&rep, &h1(&rep).unwrap(), form).unwrap().rank;
            let b = pairing_matrix(&conj, &h1(&conj).unwrap(), form).unwrap().rank;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn strict_tangent_is_lagrangian(g in prop::sample::select(vec!["SL2", "SL3", "GL2"]), genus in 2..4usize, seed in 0..10_000u64) {
        let rep = random_good_schottky::<f64>(desc(g), genus, true, seed).unwrap();
        let r = verify_lagrangian(&rep).unwrap();
        prop_assert!(r.lagrangian, "{:?}", r);
        prop_assert_eq!(2 * r.tangent_dim, r.h1_dim);
        prop_assert!(rep.is_unitary(1e-9));
    }
}
