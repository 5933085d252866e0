//! SVD-based numeric rank, kernels and column spaces.
//!
//! Matrices are stored as nalgebra matrices; the decompositions run through
//! faer in double precision.

use faer::{c64, Mat, MatRef};
use nalgebra::{Cholesky, Complex, ComplexField};

use crate::group::GroupDescriptor;
use crate::scalar::{lit, to_f64, CMat, Real};

/// Full singular value decomposition `m = U·diag(s)·V*`, with `s`
/// descending and of length `min(rows, cols)`. Computed in `f64`.
struct Svd<T: Real> {
    u: CMat<T>,
    s: Vec<T>,
    v: CMat<T>,
}

fn svd<T: Real>(m: &CMat<T>) -> Svd<T> {
    let (r, c) = m.shape();
    let f = Mat::<c64>::from_fn(r, c, |i, j| {
        let z = m[(i, j)];
        c64::new(to_f64(z.re), to_f64(z.im))
    });
    let d = f.svd().expect("SVD of a finite matrix converges");
    let back = |x: MatRef<'_, c64>| CMat::from_fn(x.nrows(), x.ncols(), |i, j| Complex::new(lit(x[(i, j)].re), lit(x[(i, j)].im)));
    let sd = d.S().column_vector();
    Svd { u: back(d.U()), s: (0..r.min(c)).map(|k| lit(sd[k].re)).collect(), v: back(d.V()) }
}

/// Singular values of `m`, descending.
pub fn singular_values<T: Real>(m: &CMat<T>) -> Vec<T> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    svd(m).s
}

fn threshold<T: Real>(sigma_max: T, rtol: T, scale: Option<T>) -> T {
    rtol * scale.unwrap_or(sigma_max)
}

/// `max(‖m‖_F, 1)`, a threshold scale for matrices whose entries are O(1)
/// when nonzero and may vanish up to rounding.
pub fn unit_floor<T: Real>(m: &CMat<T>) -> T {
    m.norm().max(T::one())
}

/// Number of singular values above `rtol · scale`; `scale` defaults to `σ_max`.
pub fn numeric_rank<T: Real>(m: &CMat<T>, rtol: T, scale: Option<T>) -> usize {
    let s = singular_values(m);
    let Some(&max) = s.first() else { return 0 };
    if max == T::zero() {
        return 0;
    }
    let thr = threshold(max, rtol, scale);
    s.iter().filter(|&&x| x > thr).count()
}

/// Orthonormal basis (as columns) of the numeric kernel of `m`: right
/// singular directions with singular value at most `rtol · scale`.
pub fn kernel<T: Real>(m: &CMat<T>, rtol: T, scale: Option<T>) -> CMat<T> {
    let (r, c) = m.shape();
    if c == 0 {
        return CMat::zeros(0, 0);
    }
    if r == 0 {
        return CMat::identity(c, c);
    }
    let d = svd(m);
    let max = d.s.first().copied().unwrap_or(T::zero());
    let thr = threshold(max, rtol, scale);
    let cols: Vec<usize> = (0..c).filter(|&k| max == T::zero() || k >= d.s.len() || d.s[k] <= thr).collect();
    CMat::from_fn(c, cols.len(), |i, j| d.v[(i, cols[j])])
}

/// Orthonormal basis of the numeric column space. Directions with singular
/// value at most `rtol · scale` are dropped; `scale` defaults to `σ_max`.
pub fn column_space<T: Real>(m: &CMat<T>, rtol: T, scale: Option<T>) -> CMat<T> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return CMat::zeros(r, 0);
    }
    let d = svd(m);
    let max = d.s.first().copied().unwrap_or(T::zero());
    if max == T::zero() {
        return CMat::zeros(r, 0);
    }
    let thr = threshold(max, rtol, scale);
    let keep = d.s.iter().filter(|&&x| x > thr).count();
    d.u.columns(0, keep).into_owned()
}

/// Orthonormal basis of `span(a) ⊖ span(b)`, for `b` with orthonormal
/// columns and `span(b) ⊆ span(a)` up to rounding.
pub fn complement_within<T: Real>(a: &CMat<T>, b: &CMat<T>, rtol: T) -> CMat<T> {
    if b.ncols() == 0 {
        return a.clone();
    }
    let residual = a - b * (b.adjoint() * a);
    column_space(&residual, rtol, Some(T::one()))
}

/// `‖Q*Q − I‖_max` for a matrix with supposedly orthonormal columns.
pub fn orthonormality_residual<T: Real>(q: &CMat<T>) -> T {
    let k = q.ncols();
    let g = q.adjoint() * q - CMat::identity(k, k);
    g.iter().fold(T::zero(), |a, z| a.max(z.modulus()))
}

/// The slot-wise metric on `𝔤^slots` induced by `tr(A B*)`, in Lie-basis
/// coordinates. Whitening maps coordinates to a space where this metric is
/// the standard one.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotMetric<T: Real> {
    desc: GroupDescriptor,
    slots: usize,
    whiten: CMat<T>,
    unwhiten: CMat<T>,
}

impl<T: Real> SlotMetric<T> {
    pub fn new(desc: GroupDescriptor, slots: usize) -> Self {
        let d = desc.dim_g();
        let gram = desc.gram::<T>();
        // gram = L L*, so ⟨x, y⟩ = (L* y)* (L* x)
        let l = Cholesky::new(gram).expect("Gram matrix of a basis is positive definite").unpack();
        let w = l.adjoint();
        let w_inv = w.clone().try_inverse().expect("triangular factor is invertible");
        let n = d * slots;
        let mut whiten = CMat::zeros(n, n);
        let mut unwhiten = CMat::zeros(n, n);
        for s in 0..slots {
            whiten.view_mut((s * d, s * d), (d, d)).copy_from(&w);
            unwhiten.view_mut((s * d, s * d), (d, d)).copy_from(&w_inv);
        }
        SlotMetric { desc, slots, whiten, unwhiten }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots * self.desc.dim_g()
    }

    pub fn whiten(&self, coords: &CMat<T>) -> CMat<T> {
        &self.whiten * coords
    }

    pub fn unwhiten(&self, whitened: &CMat<T>) -> CMat<T> {
        &self.unwhiten * whitened
    }

    /// `m` acting on whitened coordinates.
    pub fn unwhiten_right(&self, m: &CMat<T>) -> CMat<T> {
        m * &self.unwhiten
    }

    /// `⟨x, y⟩`, conjugate-linear in `y`.
    pub fn inner(&self, x: &CMat<T>, y: &CMat<T>) -> Complex<T> {
        let wx = self.whiten(x);
        let wy = self.whiten(y);
        (wy.adjoint() * wx)[(0, 0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn rank_and_kernel_of_wide_matrix() {
        // rank-1, 2x4
        let m = CMat::from_row_slice(2, 4, &[c(1.0), c(2.0), c(0.0), c(1.0), c(2.0), c(4.0), c(0.0), c(2.0)]);
        assert_eq!(numeric_rank(&m, 1e-8, None), 1);
        let k = kernel(&m, 1e-8, None);
        assert_eq!(k.ncols(), 3);
        assert!((&m * &k).norm() < 1e-12);
        assert!(orthonormality_residual(&k) < 1e-12);
    }

    #[test]
    fn zero_matrix_edge_cases() {
        let z = CMat::<f64>::zeros(3, 5);
        assert_eq!(numeric_rank(&z, 1e-8, None), 0);
        assert_eq!(kernel(&z, 1e-8, None).ncols(), 5);
        assert_eq!(column_space(&z, 1e-8, None).ncols(), 0);
        assert_eq!(kernel(&CMat::<f64>::zeros(0, 4), 1e-8, None).ncols(), 4);
    }

    #[test]
    fn scaled_thresholds_ignore_rounding_noise() {
        let m = CMat::from_fn(3, 3, |i, j| Complex::new(if i == j { 1e-17 } else { 0.0 }, 0.0));
        assert_eq!(numeric_rank(&m, 1e-8, None), 3);
        assert_eq!(numeric_rank(&m, 1e-8, Some(unit_floor(&m))), 0);
        assert_eq!(kernel(&m, 1e-8, Some(1.0)).ncols(), 3);
        assert_eq!(column_space(&m, 1e-8, Some(1.0)).ncols(), 0);
    }

    #[test]
    fn rank_deficient_products_decompose_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
        for t in 0..300 {
            let (r, k, c) = (2 + t % 13, 1 + t % 3, 2 + (t / 3) % 7);
            let mut z = || Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let a = CMat::from_fn(r, k, |_, _| z());
            let b = CMat::from_fn(k, c, |_, _| z());
            let m = a * b;
            let rank = k.min(r).min(c);
            assert_eq!(numeric_rank(&m, 1e-8, None), rank);
            let ker = kernel(&m, 1e-8, None);
            assert_eq!(ker.ncols(), c - rank);
            assert!((&m * &ker).norm() < 1e-12);
            let col = column_space(&m, 1e-8, None);
            assert_eq!(col.ncols(), rank);
            assert!((&m - &col * (col.adjoint() * &m)).norm() < 1e-12);
        }
    }

    #[test]
    fn complement() {
        let a = CMat::<f64>::identity(4, 3);
        let b = CMat::<f64>::identity(4, 1);
        let h = complement_within(&a, &b, 1e-8);
        assert_eq!(h.ncols(), 2);
        assert!((b.adjoint() * &h).norm() < 1e-14);
    }

    #[test]
    fn metric_matches_hermitian_trace() {
        let d = GroupDescriptor::new(Family::Sl, 3).unwrap();
        let metric = SlotMetric::<f64>::new(d, 2);
        let x = CMat::from_fn(16, 1, |i, _| Complex::new(i as f64 * 0.3 - 1.0, 0.7 * (i % 3) as f64));
        let y = CMat::from_fn(16, 1, |i, _| Complex::new((i * i) as f64 * 0.1, -0.2 * i as f64));
        let mut direct = Complex::new(0.0, 0.0);
        for s in 0..2 {
            let xs: Vec<_> = (0..8).map(|k| x[(s * 8 + k, 0)]).collect();
            let ys: Vec<_> = (0..8).map(|k| y[(s * 8 + k, 0)]).collect();
            direct += crate::group::herm_trace(&d.from_coords(&xs), &d.from_coords(&ys));
        }
        assert!((metric.inner(&x, &y) - direct).norm() < 1e-12);
    }
}
