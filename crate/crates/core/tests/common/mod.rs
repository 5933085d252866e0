#![allow(dead_code)]

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use surfrep::group::{random_unitary_with, Family, GroupDescriptor, GroupElement, LieVector};
use surfrep::rep::{FreeRep, SurfaceRep};
use surfrep::scalar::CMat;

pub type C = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn desc(s: &str) -> GroupDescriptor {
    s.parse().unwrap()
}

pub fn gaussian(rng: &mut ChaCha20Rng) -> C {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre-distributed element, normalized to the group; generally not unitary.
pub fn random_element(d: GroupDescriptor, rng: &mut ChaCha20Rng) -> GroupElement<f64> {
    let n = d.ambient_dim();
    let m = match d.family() {
        Family::Torus => CMat::from_diagonal(&nalgebra::DVector::from_fn(n, |_, _| gaussian(rng) + Complex::new(0.5, 0.0))),
        _ => CMat::from_fn(n, n, |_, _| gaussian(rng)) + CMat::identity(n, n),
    };
    let m = match d.family() {
        Family::Sl | Family::Psl => {
            let det = m.determinant();
            let root = det.powf(1.0 / n as f64);
            m.map(|z| z / root)
        }
        _ => m,
    };
    GroupElement::new(d, m).unwrap()
}

pub fn random_lie(d: GroupDescriptor, rng: &mut ChaCha20Rng) -> LieVector<f64> {
    let coords: Vec<C> = (0..d.dim_g()).map(|_| gaussian(rng)).collect();
    LieVector::from_coords(d, &coords).unwrap()
}

pub fn random_unitary(d: GroupDescriptor, rng: &mut ChaCha20Rng) -> GroupElement<f64> {
    random_unitary_with(d, rng)
}

/// Strict Schottky representation with arbitrary (non-unitary) `B_i`.
pub fn strict_nonunitary(d: GroupDescriptor, genus: usize, rng: &mut ChaCha20Rng) -> SurfaceRep<f64> {
    let a = vec![GroupElement::identity(d); genus];
    let b = (0..genus).map(|_| random_element(d, rng)).collect();
    SurfaceRep::new(d, a, b).unwrap()
}

/// Representation with diagonal unitary images; never irreducible for n ≥ 2.
pub fn diagonal_rep(d: GroupDescriptor, genus: usize, rng: &mut ChaCha20Rng) -> SurfaceRep<f64> {
    let mut diag = || {
        let n = d.ambient_dim();
        let mut phases: Vec<C> = (0..n).map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
        if matches!(d.family(), Family::Sl | Family::Psl) {
            let prod = phases[..n - 1].iter().fold(Complex::new(1.0, 0.0), |a, z| a * z);
            phases[n - 1] = prod.conj();
        }
        GroupElement::new(d, CMat::from_diagonal(&nalgebra::DVector::from_vec(phases))).unwrap()
    };
    let a = (0..genus).map(|_| diag()).collect();
    let b = (0..genus).map(|_| diag()).collect();
    SurfaceRep::new(d, a, b).unwrap()
}

pub fn random_free(d: GroupDescriptor, rank: usize, rng: &mut ChaCha20Rng) -> FreeRep<f64> {
    FreeRep::new(d, (0..rank).map(|_| random_unitary(d, rng)).collect()).unwrap()
}

pub fn rel_err(a: &CMat<f64>, b: &CMat<f64>) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}
