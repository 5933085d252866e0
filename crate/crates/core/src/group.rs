//! Matrix groups, their Lie algebras and invariant forms.
//!
//! Four families are supported: `GL(n)`, `SL(n)`, `PSL(n)` (stored through
//! `SL(n)` lifts) and the rank-`n` torus `(ℂ*)^n` (stored as diagonal
//! matrices). All dimensions are complex dimensions.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, ComplexField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cplx, lit, roots_of_unity, to_f64, unit_phase, CMat, CVec, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "PSL")]
    Psl,
    #[serde(rename = "TORUS")]
    Torus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "GL",
            Family::Sl => "SL",
            Family::Psl => "PSL",
            Family::Torus => "TORUS",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::Gl),
            "SL" => Ok(Family::Sl),
            "PSL" => Ok(Family::Psl),
            "TORUS" | "T" => Ok(Family::Torus),
            other => Err(Error::InvalidDescriptor(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Deserialize)]
struct RawDescriptor {
    family: Family,
    n: usize,
}

/// A supported matrix group: family plus matrix size (torus rank for `TORUS`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct GroupDescriptor {
    family: Family,
    n: usize,
}

impl TryFrom<RawDescriptor> for GroupDescriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Self> {
        GroupDescriptor::new(raw.family, raw.n)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.n)
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Parses compact names such as `SL2`, `GL3`, `PSL2`, `TORUS4`.
    fn from_str(s: &str) -> Result<Self> {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::InvalidDescriptor(format!("missing size in `{s}`")))?;
        let (fam, n) = s.split_at(split);
        let n = n.parse::<usize>().map_err(|_| Error::InvalidDescriptor(format!("bad size in `{s}`")))?;
        GroupDescriptor::new(fam.parse()?, n)
    }
}

impl GroupDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = match family {
            Family::Sl | Family::Psl => 2,
            Family::Gl | Family::Torus => 1,
        };
        if n < min {
            return Err(Error::InvalidDescriptor(format!("{family} requires n >= {min}, got {n}")));
        }
        Ok(GroupDescriptor { family, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the stored square matrices.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim_g(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::Gl => n * n,
            Family::Sl | Family::Psl => n * n - 1,
            Family::Torus => n,
        }
    }

    pub fn dim_z(&self) -> usize {
        match self.family {
            Family::Gl => 1,
            Family::Sl | Family::Psl => 0,
            Family::Torus => self.n,
        }
    }

    /// Order of the component group `Z / Z°` of the center.
    pub fn zf_order(&self) -> usize {
        match self.family {
            Family::Sl => self.n,
            Family::Gl | Family::Psl | Family::Torus => 1,
        }
    }

    /// Coordinates of `m` in [`lie_basis`]. Exact for members of the Lie
    /// algebra; for other matrices the non-algebra part is discarded.
    pub fn coords<T: Real>(&self, m: &CMat<T>) -> CVec<T> {
        let n = self.n;
        let mut out = CVec::zeros(self.dim_g());
        match self.family {
            Family::Gl => {
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = m[(i, j)];
                    }
                }
            }
            Family::Sl | Family::Psl => {
                let mut k = 0;
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out[k] = m[(i, j)];
                            k += 1;
                        }
                    }
                }
                // H_k = E_kk - E_{k+1,k+1}: coefficient is the running diagonal sum
                let mut acc = Complex::new(T::zero(), T::zero());
                for i in 0..n - 1 {
                    acc += m[(i, i)];
                    out[k + i] = acc;
                }
            }
            Family::Torus => {
                for i in 0..n {
                    out[i] = m[(i, i)];
                }
            }
        }
        out
    }

    /// Inverse of [`GroupDescriptor::coords`].
    pub fn from_coords<T: Real>(&self, c: &[Complex<T>]) -> CMat<T> {
        let n = self.n;
        let mut m = CMat::zeros(n, n);
        match self.family {
            Family::Gl => {
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = c[i * n + j];
                    }
                }
            }
            Family::Sl | Family::Psl => {
                let mut k = 0;
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            m[(i, j)] = c[k];
                            k += 1;
                        }
                    }
                }
                for i in 0..n - 1 {
                    m[(i, i)] += c[k + i];
                    m[(i + 1, i + 1)] -= c[k + i];
                }
            }
            Family::Torus => {
                for i in 0..n {
                    m[(i, i)] = c[i];
                }
            }
        }
        m
    }

    /// Distance of `m` from the Lie algebra: `|tr m|` for SL/PSL, the
    /// off-diagonal Frobenius norm for the torus, zero for GL.
    pub fn membership_residual<T: Real>(&self, m: &CMat<T>) -> T {
        match self.family {
            Family::Gl => T::zero(),
            Family::Sl | Family::Psl => m.trace().modulus(),
            Family::Torus => {
                let mut s = T::zero();
                for i in 0..m.nrows() {
                    for j in 0..m.ncols() {
                        if i != j {
                            s += m[(i, j)].modulus_squared();
                        }
                    }
                }
                s.sqrt()
            }
        }
    }

    /// Gram matrix of the basis under `tr(A B*)`.
    pub fn gram<T: Real>(&self) -> CMat<T> {
        let basis = lie_basis::<T>(*self);
        let d = basis.len();
        CMat::from_fn(d, d, |a, b| herm_trace(&basis[a].matrix, &basis[b].matrix))
    }

    /// Coordinate vectors spanning the Lie algebra of the center.
    pub fn center_coords<T: Real>(&self) -> Vec<CVec<T>> {
        match self.family {
            Family::Gl => vec![self.coords(&CMat::identity(self.n, self.n))],
            Family::Sl | Family::Psl => Vec::new(),
            Family::Torus => (0..self.n)
                .map(|k| {
                    let mut v = CVec::zeros(self.n);
                    v[k] = Complex::new(T::one(), T::zero());
                    v
                })
                .collect(),
        }
    }

    /// Matrix of `Ad(g)` acting on Lie-algebra coordinates.
    pub fn adjoint_matrix<T: Real>(&self, g: &GroupElement<T>) -> CMat<T> {
        let d = self.dim_g();
        let mut out = CMat::zeros(d, d);
        let basis = lie_basis::<T>(*self);
        for (b, e) in basis.iter().enumerate() {
            let img = &g.matrix * &e.matrix * &g.inverse;
            out.set_column(b, &self.coords(&img));
        }
        out
    }
}

/// `tr(A B*)`.
pub(crate) fn herm_trace<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Complex<T> {
    a.iter().zip(b.iter()).fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + *x * y.conjugate())
}

/// `tr(A B)`.
pub(crate) fn bilinear_trace<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Complex<T> {
    let n = a.nrows();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// An invertible matrix in the group described by `desc`, with its inverse.
/// Equality compares the matrices only.
#[derive(Debug, Clone)]
pub struct GroupElement<T: Real> {
    desc: GroupDescriptor,
    matrix: CMat<T>,
    inverse: CMat<T>,
}

impl<T: Real> PartialEq for GroupElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc && self.matrix == other.matrix
    }
}

impl<T: Real> GroupElement<T> {
    pub fn new(desc: GroupDescriptor, matrix: CMat<T>) -> Result<Self> {
        let n = desc.ambient_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidElement(format!("expected {n}x{n} matrix, got {}x{}", matrix.nrows(), matrix.ncols())));
        }
        if matrix.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidElement("non-finite entry".into()));
        }
        if desc.family == Family::Torus {
            for i in 0..n {
                for j in 0..n {
                    if i != j && matrix[(i, j)] != Complex::new(T::zero(), T::zero()) {
                        return Err(Error::InvalidElement("torus element must be diagonal".into()));
                    }
                }
                if matrix[(i, i)].modulus() == T::zero() {
                    return Err(Error::InvalidElement("torus diagonal entry is zero".into()));
                }
            }
        }
        if matches!(desc.family, Family::Sl | Family::Psl) {
            let det = matrix.determinant();
            let res = (det - Complex::new(T::one(), T::zero())).modulus();
            if res > T::check_tol() {
                return Err(Error::InvalidElement(format!("|det - 1| = {:e}", to_f64(res))));
            }
        }
        let inverse = matrix.clone().try_inverse().ok_or_else(|| Error::InvalidElement("singular matrix".into()))?;
        Ok(GroupElement { desc, matrix, inverse })
    }

    pub fn identity(desc: GroupDescriptor) -> Self {
        let n = desc.ambient_dim();
        GroupElement { desc, matrix: CMat::identity(n, n), inverse: CMat::identity(n, n) }
    }

    /// `c·I`; fails for SL/PSL unless `c^n = 1`.
    pub fn scalar(desc: GroupDescriptor, c: Complex<T>) -> Result<Self> {
        let n = desc.ambient_dim();
        Self::new(desc, CMat::from_diagonal_element(n, n, c))
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &CMat<T> {
        &self.inverse
    }

    pub fn mul(&self, other: &Self) -> Self {
        GroupElement { desc: self.desc, matrix: &self.matrix * &other.matrix, inverse: &other.inverse * &self.inverse }
    }

    pub fn inv(&self) -> Self {
        GroupElement { desc: self.desc, matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// Scalar `c` with `self ≈ c·I` when the matrix is scalar to relative
    /// tolerance `tol`, otherwise `None`.
    pub fn as_scalar(&self, tol: T) -> Option<Complex<T>> {
        let n = self.desc.ambient_dim();
        let c = self.matrix.trace().unscale(lit(n as f64));
        let off = (&self.matrix - CMat::from_diagonal_element(n, n, c)).norm();
        (off <= tol * self.matrix.norm().max(T::one())).then_some(c)
    }

    /// Whether the element lies in the center of its group (for PSL: the
    /// stored lift is scalar, i.e. the element is the identity of PSL).
    pub fn is_central(&self, tol: T) -> bool {
        match self.desc.family {
            Family::Torus => true,
            _ => self.as_scalar(tol).is_some(),
        }
    }

    /// `‖U*U − I‖_F`.
    pub fn unitarity_residual(&self) -> T {
        let n = self.desc.ambient_dim();
        (self.matrix.adjoint() * &self.matrix - CMat::identity(n, n)).norm()
    }

    /// Frobenius distance to `other`; for PSL the minimum over central
    /// rescalings of the lift.
    pub fn distance(&self, other: &Self) -> T {
        match self.desc.family {
            Family::Psl => roots_of_unity::<T>(self.desc.n)
                .into_iter()
                .map(|z| (&self.matrix - &other.matrix * z).norm())
                .fold(T::max_value().unwrap_or(T::one()), |a, b| a.min(b)),
            _ => (&self.matrix - &other.matrix).norm(),
        }
    }
}

/// An element of the Lie algebra of `desc`, stored as a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LieVector<T: Real> {
    desc: GroupDescriptor,
    matrix: CMat<T>,
}

impl<T: Real> LieVector<T> {
    pub fn new(desc: GroupDescriptor, matrix: CMat<T>) -> Result<Self> {
        let n = desc.ambient_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows() });
        }
        let res = desc.membership_residual(&matrix);
        if res > T::check_tol() * matrix.norm().max(T::one()) {
            return Err(Error::NotInLieAlgebra { residual: to_f64(res) });
        }
        Ok(LieVector { desc, matrix })
    }

    pub fn zero(desc: GroupDescriptor) -> Self {
        let n = desc.ambient_dim();
        LieVector { desc, matrix: CMat::zeros(n, n) }
    }

    pub fn from_coords(desc: GroupDescriptor, coords: &[Complex<T>]) -> Result<Self> {
        if coords.len() != desc.dim_g() {
            return Err(Error::DimensionMismatch { expected: desc.dim_g(), found: coords.len() });
        }
        Ok(LieVector { desc, matrix: desc.from_coords(coords) })
    }

    pub fn coords(&self) -> CVec<T> {
        self.desc.coords(&self.matrix)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    pub fn norm(&self) -> T {
        self.matrix.norm()
    }

    pub fn add(&self, other: &Self) -> Self {
        LieVector { desc: self.desc, matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LieVector { desc: self.desc, matrix: &self.matrix - &other.matrix }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        LieVector { desc: self.desc, matrix: self.matrix.map(|z| z * c) }
    }

    pub fn neg(&self) -> Self {
        LieVector { desc: self.desc, matrix: -&self.matrix }
    }

    pub(crate) fn ad_by(&self, g: &GroupElement<T>) -> Self {
        LieVector { desc: self.desc, matrix: &g.matrix * &self.matrix * &g.inverse }
    }
}

/// The deterministic basis of the Lie algebra: `E_ij` for GL; off-diagonal
/// `E_ij` followed by `H_k = E_kk − E_{k+1,k+1}` for SL/PSL; `E_kk` for tori.
pub fn lie_basis<T: Real>(desc: GroupDescriptor) -> Vec<LieVector<T>> {
    let d = desc.dim_g();
    (0..d)
        .map(|k| {
            let mut c = vec![Complex::new(T::zero(), T::zero()); d];
            c[k] = Complex::new(T::one(), T::zero());
            LieVector { desc, matrix: desc.from_coords(&c) }
        })
        .collect()
}

/// `g v g⁻¹`.
pub fn ad<T: Real>(g: &GroupElement<T>, v: &LieVector<T>) -> Result<LieVector<T>> {
    if g.desc != v.desc {
        return Err(Error::DescriptorMismatch);
    }
    Ok(v.ad_by(g))
}

/// `tr(v w*)`, conjugate-linear in `w`.
pub fn hermitian_ip<T: Real>(v: &LieVector<T>, w: &LieVector<T>) -> Result<Complex<T>> {
    if v.desc != w.desc {
        return Err(Error::DescriptorMismatch);
    }
    Ok(herm_trace(&v.matrix, &w.matrix))
}

/// The Ad-invariant trace form `tr(v w)`.
pub fn bilinear_form<T: Real>(v: &LieVector<T>, w: &LieVector<T>) -> Result<Complex<T>> {
    if v.desc != w.desc {
        return Err(Error::DescriptorMismatch);
    }
    Ok(bilinear_trace(&v.matrix, &w.matrix))
}

pub(crate) fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Haar-distributed element of the compact form: `U(n)`, `SU(n)`, or the
/// unit torus. Deterministic in `seed`.
pub fn random_unitary<T: Real>(desc: GroupDescriptor, seed: u64) -> GroupElement<T> {
    random_unitary_with(desc, &mut seeded_rng(seed))
}

pub fn random_unitary_with<T: Real, R: Rng + ?Sized>(desc: GroupDescriptor, rng: &mut R) -> GroupElement<T> {
    let n = desc.ambient_dim();
    let matrix = match desc.family {
        Family::Torus => {
            let mut m = CMat::zeros(n, n);
            for i in 0..n {
                m[(i, i)] = random_phase(rng);
            }
            m
        }
        _ => {
            let half = lit::<T>(0.5).sqrt();
            let z = CMat::<T>::from_fn(n, n, |_, _| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                cplx(lit::<T>(re) * half, lit::<T>(im) * half)
            });
            let qr = z.qr();
            let r = qr.r();
            let mut q = qr.q();
            // Q · diag(r_ii / |r_ii|) is Haar on U(n)
            for j in 0..n {
                let d = r[(j, j)];
                let phase = d.unscale(d.modulus());
                for i in 0..n {
                    q[(i, j)] *= phase;
                }
            }
            if matches!(desc.family, Family::Sl | Family::Psl) {
                let det = q.determinant();
                let theta = det.im.atan2(det.re);
                let fix = unit_phase(-theta / lit(n as f64));
                q *= fix;
            }
            q
        }
    };
    let inverse = matrix.adjoint();
    GroupElement { desc, matrix, inverse }
}

pub(crate) fn random_phase<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    unit_phase(lit::<T>(theta))
}

/// Random central element of the compact form: a unit scalar for GL, an
/// n-th root of unity for SL/PSL, a unit torus element for tori.
pub fn random_central_with<T: Real, R: Rng + ?Sized>(desc: GroupDescriptor, rng: &mut R) -> GroupElement<T> {
    let n = desc.ambient_dim();
    match desc.family {
        Family::Gl => {
            let c: Complex<T> = random_phase(rng);
            GroupElement { desc, matrix: CMat::from_diagonal_element(n, n, c), inverse: CMat::from_diagonal_element(n, n, c.conjugate()) }
        }
        Family::Sl | Family::Psl => {
            let k = rng.random_range(0..n);
            let c = roots_of_unity::<T>(n)[k];
            GroupElement { desc, matrix: CMat::from_diagonal_element(n, n, c), inverse: CMat::from_diagonal_element(n, n, c.conjugate()) }
        }
        Family::Torus => random_unitary_with(desc, rng),
    }
}

/// Number of irreducible components of the Schottky space: `|Z/Z°|^genus`.
pub fn center_component_count(desc: GroupDescriptor, genus: usize) -> u64 {
    (desc.zf_order() as u64).pow(genus as u32)
}
