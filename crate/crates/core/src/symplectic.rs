//! The Fox-calculus pairing on `H¹` of a surface group, in a complex
//! bilinear version (trace form, valid at every representation) and a
//! hermitian version (valid at unitary representations).
//!
//! For cocycles `φ₁, φ₂` the bilinear pairing is
//!
//! ```text
//! −Σ_j B(φ₁(♯∂R/∂α_j), φ₂(α_j)) + B(φ₁(♯∂R/∂β_j), φ₂(β_j)),   B(X, Y) = tr(XY)
//! ```
//!
//! and the hermitian pairing is `i` times the same sum with `tr(XY*)`.
//! Both are antisymmetric (resp. skew-hermitian before the factor `i`) and
//! vanish when either argument is a coboundary.

use nalgebra::{Complex, ComplexField};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::cohomology::{h1, schottky_tangent, Cocycle, Subspace};
use crate::error::{Error, Result};
use crate::group::{bilinear_trace, herm_trace, LieVector};
use crate::linalg::numeric_rank;
use crate::rep::{is_good, Representation, SurfaceRep};
use crate::scalar::{to_f64, tol, CMat, Real};
use crate::word::{evaluate_cocycle_ring, fox_derivative, sharp, GroupRingElement};

/// Unitarity residual allowed for the hermitian pairing.
pub const UNITARY_TOL: f64 = 1e-9;

/// Isotropy tolerance used by [`verify_lagrangian`], relative to the pairing scale.
pub const ISOTROPY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Bilinear,
    Hermitian,
}

impl std::fmt::Display for FormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormKind::Bilinear => "bilinear",
            FormKind::Hermitian => "hermitian",
        })
    }
}

impl std::str::FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bilinear" => Ok(FormKind::Bilinear),
            "hermitian" => Ok(FormKind::Hermitian),
            _ => Err(Error::Parse(format!("unknown form kind `{s}`"))),
        }
    }
}

/// Gram matrix of the pairing on a basis of `H¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingMatrix<T: Real> {
    pub kind: FormKind,
    pub entries: CMat<T>,
    pub rank: usize,
}

impl<T: Real> PairingMatrix<T> {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest entry modulus, or 1 for the zero matrix.
    pub fn scale(&self) -> T {
        let m = self.entries.iter().fold(T::zero(), |a, z| a.max(z.modulus()));
        if m == T::zero() {
            T::one()
        } else {
            m
        }
    }

    /// `max |P + Pᵀ|`.
    pub fn antisymmetry_defect(&self) -> T {
        max_abs(&(&self.entries + self.entries.transpose()))
    }

    /// `max |P − P*|`.
    pub fn hermiticity_defect(&self) -> T {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }
}

impl<T: Real> Serialize for PairingMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [to_f64(self.entries[(i, j)].re), to_f64(self.entries[(i, j)].im)]).collect())
            .collect();
        let mut st = s.serialize_struct("PairingMatrix", 4)?;
        st.serialize_field("form", &self.kind)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

fn max_abs<T: Real>(m: &CMat<T>) -> T {
    m.iter().fold(T::zero(), |a, z| a.max(z.modulus()))
}

/// `♯∂R/∂x` for every generator, in slot order.
fn sharp_fox_terms<T: Real>(rep: &SurfaceRep<T>) -> Result<Vec<GroupRingElement>> {
    rep.generators().into_iter().map(|x| Ok(sharp(&fox_derivative(rep.genus(), x)?))).collect()
}

fn check_pairing_preconditions<T: Real>(rep: &SurfaceRep<T>, kind: FormKind) -> Result<()> {
    rep.validate()?;
    if kind == FormKind::Hermitian {
        let residual = rep.unitarity_residual();
        if residual > tol(UNITARY_TOL) {
            return Err(Error::NotUnitary { residual: to_f64(residual) });
        }
    }
    Ok(())
}

fn check_cocycle<T: Real>(rep: &SurfaceRep<T>, phi: &Cocycle<T>) -> Result<()> {
    phi.check_shape(rep)?;
    let defect = phi.relator_defect(rep)?;
    if defect > T::rank_rtol() * phi.norm().max(T::one()) {
        return Err(Error::NotACocycle { residual: to_f64(defect) });
    }
    Ok(())
}

fn form<T: Real>(kind: FormKind, x: &LieVector<T>, y: &LieVector<T>) -> Complex<T> {
    match kind {
        FormKind::Bilinear => bilinear_trace(x.matrix(), y.matrix()),
        FormKind::Hermitian => herm_trace(x.matrix(), y.matrix()),
    }
}

fn prefactor<T: Real>(kind: FormKind) -> Complex<T> {
    match kind {
        FormKind::Bilinear => Complex::new(-T::one(), T::zero()),
        FormKind::Hermitian => Complex::new(T::zero(), -T::one()),
    }
}

/// `φ(♯∂R/∂x)` for every generator `x`.
fn sharp_values<T: Real>(rep: &SurfaceRep<T>, phi: &Cocycle<T>, terms: &[GroupRingElement]) -> Result<Vec<LieVector<T>>> {
    terms.iter().map(|t| evaluate_cocycle_ring(rep, phi, t)).collect()
}

fn pair_values<T: Real>(kind: FormKind, u: &[LieVector<T>], phi2: &Cocycle<T>) -> Complex<T> {
    let sum = u.iter().zip(phi2.values()).fold(Complex::new(T::zero(), T::zero()), |a, (x, y)| a + form(kind, x, y));
    prefactor::<T>(kind) * sum
}

/// The pairing of two cocycles.
pub fn fox_pairing<T: Real>(rep: &SurfaceRep<T>, phi1: &Cocycle<T>, phi2: &Cocycle<T>, kind: FormKind) -> Result<Complex<T>> {
    check_pairing_preconditions(rep, kind)?;
    check_cocycle(rep, phi1)?;
    check_cocycle(rep, phi2)?;
    let terms = sharp_fox_terms(rep)?;
    let u = sharp_values(rep, phi1, &terms)?;
    Ok(pair_values(kind, &u, phi2))
}

fn gram<T: Real>(rep: &SurfaceRep<T>, cocycles: &[Cocycle<T>], kind: FormKind) -> Result<CMat<T>> {
    let terms = sharp_fox_terms(rep)?;
    let u = cocycles.iter().map(|phi| sharp_values(rep, phi, &terms)).collect::<Result<Vec<_>>>()?;
    let k = cocycles.len();
    Ok(CMat::from_fn(k, k, |i, j| pair_values(kind, &u[i], &cocycles[j])))
}

fn basis_cocycles<T: Real>(rep: &SurfaceRep<T>, basis: &Subspace<T>) -> Result<Vec<Cocycle<T>>> {
    let expected = rep.descriptor().dim_g() * 2 * rep.genus();
    if basis.ambient_dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: basis.ambient_dim() });
    }
    (0..basis.dim()).map(|k| basis.cocycle(rep, k)).collect()
}

/// Gram matrix of the pairing on `basis` (normally from [`h1`]), with its
/// numeric rank at relative tolerance `1e−8`.
pub fn pairing_matrix<T: Real>(rep: &SurfaceRep<T>, basis: &Subspace<T>, kind: FormKind) -> Result<PairingMatrix<T>> {
    check_pairing_preconditions(rep, kind)?;
    let cocycles = basis_cocycles(rep, basis)?;
    for phi in &cocycles {
        check_cocycle(rep, phi)?;
    }
    let entries = gram(rep, &cocycles, kind)?;
    let rank = numeric_rank(&entries, T::rank_rtol(), None);
    Ok(PairingMatrix { kind, entries, rank })
}

/// Largest pairing between basis vectors of `subspace`, together with the
/// reference scale: the largest entry of the pairing matrix on all of `H¹`
/// (1 if that vanishes).
pub fn isotropy_defect<T: Real>(rep: &SurfaceRep<T>, subspace: &Subspace<T>, kind: FormKind) -> Result<(T, T)> {
    let full = pairing_matrix(rep, &h1(rep)?, kind)?;
    let sub = pairing_matrix(rep, subspace, kind)?;
    Ok((max_abs(&sub.entries), full.scale()))
}

/// Whether the pairing vanishes on `subspace` up to `tol · scale`.
pub fn is_isotropic<T: Real>(rep: &SurfaceRep<T>, subspace: &Subspace<T>, kind: FormKind, tol: T) -> Result<bool> {
    let (defect, scale) = isotropy_defect(rep, subspace, kind)?;
    Ok(defect <= tol * scale)
}

/// Outcome of [`verify_lagrangian`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangianReport {
    pub isotropic: bool,
    pub half_dimensional: bool,
    pub lagrangian: bool,
    pub tangent_dim: usize,
    pub h1_dim: usize,
    pub max_pairing: f64,
    pub scale: f64,
}

/// Checks that the strict Schottky tangent space is a Lagrangian subspace
/// of `H¹` for the bilinear pairing. The representation must be good,
/// unitary and strict Schottky.
pub fn verify_lagrangian<T: Real>(rep: &SurfaceRep<T>) -> Result<LagrangianReport> {
    rep.validate()?;
    if !rep.is_strict_schottky(T::check_tol()) {
        return Err(Error::NotStrictSchottky);
    }
    let residual = rep.unitarity_residual();
    if residual > tol(UNITARY_TOL) {
        return Err(Error::NotUnitary { residual: to_f64(residual) });
    }
    if !is_good(rep)?.is_good {
        return Err(Error::NotGood);
    }
    let tangent = schottky_tangent(rep, true)?;
    let h = h1(rep)?;
    let (defect, scale) = isotropy_defect(rep, &tangent, FormKind::Bilinear)?;
    let isotropic = defect <= tol::<T>(ISOTROPY_TOL) * scale;
    let half_dimensional = 2 * tangent.dim() == h.dim();
    Ok(LagrangianReport {
        isotropic,
        half_dimensional,
        lagrangian: isotropic && half_dimensional,
        tangent_dim: tangent.dim(),
        h1_dim: h.dim(),
        max_pairing: to_f64(defect),
        scale: to_f64(scale),
    })
}
