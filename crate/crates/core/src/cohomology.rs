//! Cocycles, coboundaries and first cohomology as numeric subspaces of
//! `𝔤^{2g}` (surface groups) or `𝔤^g` (free groups).
//!
//! Coordinates are Lie-basis coordinates, slot by slot in generator order
//! (`α₁..α_g, β₁..β_g` or `γ₁..γ_g`). Subspaces carry bases that are
//! orthonormal for the slot-wise metric `Σ tr(φ(x) ψ(x)*)`, and `H¹` is
//! represented by the orthogonal complement of `B¹` inside `Z¹`.

use nalgebra::Complex;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, LieVector};
use crate::linalg::{column_space, complement_within, kernel, orthonormality_residual, unit_floor, SlotMetric};
use crate::rep::{is_good, stabilizer_lie_dim, FreeRep, Representation, SurfaceRep};
use crate::scalar::{to_f64, CMat, CVec, Real};
use crate::word::{evaluate_cocycle, evaluate_word, fox_derivative, relator};

/// A generator assignment `x ↦ φ(x) ∈ 𝔤`, one value per slot.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle<T: Real> {
    desc: GroupDescriptor,
    values: Vec<LieVector<T>>,
}

impl<T: Real> Cocycle<T> {
    pub fn new(desc: GroupDescriptor, values: Vec<LieVector<T>>) -> Result<Self> {
        if values.iter().any(|v| v.descriptor() != desc) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(Cocycle { desc, values })
    }

    pub fn zero<R: Representation<T> + ?Sized>(rep: &R) -> Self {
        let desc = rep.descriptor();
        Cocycle { desc, values: vec![LieVector::zero(desc); rep.generators().len()] }
    }

    /// Builds from concatenated slot coordinates.
    pub fn from_coords<R: Representation<T> + ?Sized>(rep: &R, coords: &[Complex<T>]) -> Result<Self> {
        let desc = rep.descriptor();
        let d = desc.dim_g();
        let slots = rep.generators().len();
        if coords.len() != d * slots {
            return Err(Error::DimensionMismatch { expected: d * slots, found: coords.len() });
        }
        let values = coords.chunks(d).map(|c| LieVector::from_coords(desc, c)).collect::<Result<Vec<_>>>()?;
        Ok(Cocycle { desc, values })
    }

    /// The coboundary `δa: x ↦ Ad(ρ(x))·a − a`.
    pub fn coboundary<R: Representation<T> + ?Sized>(rep: &R, a: &LieVector<T>) -> Result<Self> {
        if a.descriptor() != rep.descriptor() {
            return Err(Error::DescriptorMismatch);
        }
        let values = rep.images().iter().map(|x| a.ad_by(x).sub(a)).collect();
        Ok(Cocycle { desc: rep.descriptor(), values })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn values(&self) -> &[LieVector<T>] {
        &self.values
    }

    pub fn coords(&self) -> CVec<T> {
        let d = self.desc.dim_g();
        let mut out = CVec::zeros(d * self.values.len());
        for (s, v) in self.values.iter().enumerate() {
            out.rows_mut(s * d, d).copy_from(&v.coords());
        }
        out
    }

    pub fn norm(&self) -> T {
        self.values.iter().fold(T::zero(), |a, v| a + v.norm() * v.norm()).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        Cocycle { desc: self.desc, values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Cocycle { desc: self.desc, values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    pub(crate) fn check_shape<R: Representation<T> + ?Sized>(&self, rep: &R) -> Result<()> {
        if self.desc != rep.descriptor() {
            return Err(Error::DescriptorMismatch);
        }
        let slots = rep.generators().len();
        if self.values.len() != slots {
            return Err(Error::GenusMismatch { expected: slots, found: self.values.len() });
        }
        Ok(())
    }

    /// `‖φ(R)‖`, which vanishes exactly for cocycles.
    pub fn relator_defect(&self, rep: &SurfaceRep<T>) -> Result<T> {
        Ok(evaluate_cocycle(rep, self, &relator(rep.genus())?)?.norm())
    }
}

/// A subspace of `𝔤^slots` with a metric-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T: Real> {
    metric: SlotMetric<T>,
    /// Basis in Lie coordinates, one column per vector.
    basis: CMat<T>,
}

impl<T: Real> Subspace<T> {
    pub(crate) fn from_whitened(metric: SlotMetric<T>, whitened: &CMat<T>) -> Self {
        let basis = metric.unwhiten(whitened);
        Subspace { metric, basis }
    }

    pub fn zero(metric: SlotMetric<T>) -> Self {
        let n = metric.dim();
        Subspace { metric, basis: CMat::zeros(n, 0) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMat<T> {
        &self.basis
    }

    pub fn metric(&self) -> &SlotMetric<T> {
        &self.metric
    }

    pub fn whitened(&self) -> CMat<T> {
        self.metric.whiten(&self.basis)
    }

    pub fn vector(&self, k: usize) -> CVec<T> {
        self.basis.column(k).into_owned()
    }

    /// Basis vector `k` as a generator assignment.
    pub fn cocycle<R: Representation<T> + ?Sized>(&self, rep: &R, k: usize) -> Result<Cocycle<T>> {
        Cocycle::from_coords(rep, self.vector(k).as_slice())
    }

    /// Largest entry of `Q*Q − I` in the slot metric.
    pub fn orthonormality_residual(&self) -> T {
        orthonormality_residual(&self.whitened())
    }

    /// Distance from `v` (Lie coordinates) to this subspace in the slot metric.
    pub fn distance(&self, v: &CVec<T>) -> T {
        let q = self.whitened();
        let w = self.metric.whiten(&CMat::from_column_slice(v.len(), 1, v.as_slice()));
        (&w - &q * (q.adjoint() * &w)).norm()
    }
}

impl<T: Real> Serialize for Subspace<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis: Vec<Vec<[f64; 2]>> =
            (0..self.dim()).map(|k| self.basis.column(k).iter().map(|z| [to_f64(z.re), to_f64(z.im)]).collect()).collect();
        let mut st = s.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient_dim", &self.ambient_dim())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

/// Computed and predicted dimensions at a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    #[serde(rename = "dim_Z1")]
    pub dim_z1: usize,
    #[serde(rename = "dim_B1")]
    pub dim_b1: usize,
    #[serde(rename = "dim_H1")]
    pub dim_h1: usize,
    pub dim_schottky_tangent: Option<usize>,
    pub stabilizer_lie_dim: usize,
    #[serde(rename = "formula_Z1")]
    pub formula_z1: usize,
    #[serde(rename = "formula_B1")]
    pub formula_b1: usize,
    #[serde(rename = "formula_H1")]
    pub formula_h1: usize,
    pub formula_schottky: Option<usize>,
    pub matches: bool,
}

/// The linear map `φ ↦ φ(R)` on generator assignments, assembled from the
/// Fox derivatives: the block of generator `x` is `Ad_ρ(∂R/∂x)`.
pub fn relator_differential<T: Real>(rep: &SurfaceRep<T>) -> Result<CMat<T>> {
    rep.validate()?;
    let desc = rep.descriptor();
    let d = desc.dim_g();
    let g = rep.genus();
    let gens = rep.generators();
    let mut out = CMat::zeros(d, d * gens.len());
    for (s, gen) in gens.iter().enumerate() {
        let fox = fox_derivative(g, *gen)?;
        let mut block = CMat::zeros(d, d);
        for (coef, w) in fox.terms() {
            let x = evaluate_word(rep, w)?;
            block += desc.adjoint_matrix(&x) * Complex::new(crate::scalar::lit::<T>(*coef as f64), T::zero());
        }
        out.view_mut((0, s * d), (d, d)).copy_from(&block);
    }
    Ok(out)
}

fn z1_whitened<T: Real>(rep: &SurfaceRep<T>, metric: &SlotMetric<T>) -> Result<CMat<T>> {
    let dmat = relator_differential(rep)?;
    let m = metric.unwhiten_right(&dmat);
    let scale = unit_floor(&m);
    Ok(kernel(&m, T::rank_rtol(), Some(scale)))
}

fn b1_whitened<T: Real, R: Representation<T> + ?Sized>(rep: &R, metric: &SlotMetric<T>) -> CMat<T> {
    let psi = crate::rep::stacked_adjoint_minus_identity(rep);
    let m = metric.whiten(&psi);
    let scale = unit_floor(&m);
    column_space(&m, T::rank_rtol(), Some(scale))
}

/// The cocycle space `Z¹(π₁, 𝔤_Ad)`: the numeric kernel of the relator differential.
pub fn z1<T: Real>(rep: &SurfaceRep<T>) -> Result<Subspace<T>> {
    let metric = SlotMetric::new(rep.descriptor(), 2 * rep.genus());
    let z = z1_whitened(rep, &metric)?;
    Ok(Subspace::from_whitened(metric, &z))
}

/// The coboundary space: the image of `a ↦ (Ad(ρ(x))a − a)_x`.
pub fn b1<T: Real, R: Representation<T> + ?Sized>(rep: &R) -> Subspace<T> {
    let metric = SlotMetric::new(rep.descriptor(), rep.generators().len());
    let b = b1_whitened(rep, &metric);
    Subspace::from_whitened(metric, &b)
}

/// `H¹`, realized as the orthogonal complement of `B¹` inside `Z¹`.
pub fn h1<T: Real>(rep: &SurfaceRep<T>) -> Result<Subspace<T>> {
    let metric = SlotMetric::new(rep.descriptor(), 2 * rep.genus());
    let z = z1_whitened(rep, &metric)?;
    let b = b1_whitened(rep, &metric);
    let h = complement_within(&z, &b, T::rank_rtol());
    Ok(Subspace::from_whitened(metric, &h))
}

/// Lie-coordinate basis of the center's Lie algebra inside `𝔤`.
fn center_block<T: Real>(desc: GroupDescriptor) -> Vec<CVec<T>> {
    desc.center_coords()
}

/// Cocycles whose `α`-values vanish (strict) or lie in the Lie algebra of
/// the center (non-strict); these are the tangent directions along the
/// Schottky locus before passing to cohomology.
pub fn schottky_cocycles<T: Real>(rep: &SurfaceRep<T>, strict: bool) -> Result<Subspace<T>> {
    let tol = T::check_tol();
    if strict && !rep.is_strict_schottky(tol) {
        return Err(Error::NotStrictSchottky);
    }
    if !rep.is_schottky(tol) {
        return Err(Error::NotSchottky);
    }
    let desc = rep.descriptor();
    let g = rep.genus();
    let d = desc.dim_g();
    let n = 2 * g * d;
    let metric = SlotMetric::new(desc, 2 * g);
    let mut cols: Vec<CVec<T>> = Vec::new();
    if !strict {
        for i in 0..g {
            for z in center_block::<T>(desc) {
                let mut v = CVec::zeros(n);
                v.rows_mut(i * d, d).copy_from(&z);
                cols.push(v);
            }
        }
    }
    for k in g * d..n {
        let mut v = CVec::zeros(n);
        v[k] = Complex::new(T::one(), T::zero());
        cols.push(v);
    }
    let constraint = CMat::from_columns(&cols);
    let s = column_space(&metric.whiten(&constraint), T::rank_rtol(), None);
    let dmat = metric.unwhiten_right(&relator_differential(rep)?);
    let scale = unit_floor(&dmat);
    let k = kernel(&(dmat * &s), T::rank_rtol(), Some(scale));
    Ok(Subspace::from_whitened(metric, &(s * k)))
}

/// The Schottky tangent directions projected orthogonally into [`h1`].
pub fn schottky_tangent<T: Real>(rep: &SurfaceRep<T>, strict: bool) -> Result<Subspace<T>> {
    let pre = schottky_cocycles(rep, strict)?;
    let h = h1(rep)?.whitened();
    let y = pre.whitened();
    let projected = &h * (h.adjoint() * y);
    let metric = pre.metric().clone();
    Ok(Subspace::from_whitened(metric, &column_space(&projected, T::rank_rtol(), Some(T::one()))))
}

/// Dimensions for a free-group representation. There is no relator, so
/// `Z¹ = 𝔤^g`; the `H¹` prediction uses the actual stabilizer dimension and
/// therefore holds at every representation.
pub fn free_cohomology_dims<T: Real>(rep: &FreeRep<T>) -> DimsReport {
    let desc = rep.descriptor();
    let g = rep.rank();
    let dg = desc.dim_g();
    let stab = stabilizer_lie_dim(rep);
    let dim_z1 = g * dg;
    let dim_b1 = b1(rep).dim();
    let dim_h1 = dim_z1 - dim_b1;
    let formula_z1 = g * dg;
    let formula_b1 = dg - stab;
    let formula_h1 = g * dg - dg + stab;
    DimsReport {
        dim_z1,
        dim_b1,
        dim_h1,
        dim_schottky_tangent: None,
        stabilizer_lie_dim: stab,
        formula_z1,
        formula_b1,
        formula_h1,
        formula_schottky: None,
        matches: dim_z1 == formula_z1 && dim_b1 == formula_b1 && dim_h1 == formula_h1,
    }
}

/// Predicted dimensions at a good representation of genus `g`:
/// `(Z¹, B¹, H¹, strict Schottky, Schottky)`.
pub fn formula_dims(desc: GroupDescriptor, g: usize) -> (usize, usize, usize, usize, usize) {
    let dg = desc.dim_g();
    let dz = desc.dim_z();
    ((2 * g - 1) * dg + dz, dg - dz, (2 * g - 2) * dg + 2 * dz, (g - 1) * dg + dz, (g - 1) * dg + (g + 1) * dz)
}

/// Whether the representation is good. Tori have no irreducibility test;
/// there the stabilizer criterion alone decides.
pub fn good_for_formulas<T: Real>(rep: &SurfaceRep<T>) -> Result<bool> {
    match is_good(rep) {
        Ok(r) => Ok(r.is_good),
        Err(Error::UnsupportedIrreducibility { lie_dim, center_dim, .. }) => Ok(lie_dim == center_dim),
        Err(e) => Err(e),
    }
}

/// Computed dimensions of `Z¹`, `B¹`, `H¹` and the Schottky tangent space
/// next to the predictions for good representations. `matches` is true only
/// at good representations where every computed value agrees.
pub fn dims_report<T: Real>(rep: &SurfaceRep<T>) -> Result<DimsReport> {
    let desc = rep.descriptor();
    let g = rep.genus();
    let metric = SlotMetric::new(desc, 2 * g);
    let z = z1_whitened(rep, &metric)?;
    let b = b1_whitened(rep, &metric);
    let dim_z1 = z.ncols();
    let dim_b1 = b.ncols();
    let dim_h1 = dim_z1 - dim_b1;
    let tol = T::check_tol();
    let strict = rep.is_strict_schottky(tol);
    let schottky = rep.is_schottky(tol);
    let dim_schottky_tangent = if schottky { Some(schottky_tangent(rep, strict)?.dim()) } else { None };
    let (fz, fb, fh, fs_strict, fs) = formula_dims(desc, g);
    let formula_schottky = schottky.then_some(if strict { fs_strict } else { fs });
    let good = good_for_formulas(rep)?;
    let matches = good && dim_z1 == fz && dim_b1 == fb && dim_h1 == fh && dim_schottky_tangent == formula_schottky;
    Ok(DimsReport {
        dim_z1,
        dim_b1,
        dim_h1,
        dim_schottky_tangent,
        stabilizer_lie_dim: stabilizer_lie_dim(rep),
        formula_z1: fz,
        formula_b1: fb,
        formula_h1: fh,
        formula_schottky,
        matches,
    })
}
