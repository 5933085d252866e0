#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use surfrep::GroupDescriptor;

pub type C = Complex<f64>;

pub const GRID: [(&str, usize); 4] = [("SL2", 2), ("SL2", 3), ("SL3", 2), ("GL2", 2)];

pub fn desc(s: &str) -> GroupDescriptor {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha20Rng) -> C {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vec(rng: &mut ChaCha20Rng, n: usize) -> Vec<C> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Unit-modulus diagonal element with generic phases, determinant one
/// when `unimodular`.
pub fn diagonal(n: usize, unimodular: bool, rng: &mut ChaCha20Rng) -> DMatrix<C> {
    let mut phases: Vec<C> = (0..n).map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect();
    if unimodular {
        let prod = phases[..n - 1].iter().fold(Complex::new(1.0, 0.0), |a, z| a * z);
        phases[n - 1] = prod.conj();
    }
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(phases))
}

pub fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_surfrep"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).output().expect("binary runs")
}
