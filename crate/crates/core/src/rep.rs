//! Representations of surface groups and free groups given by generator
//! images, Schottky predicates, stabilizers and goodness.

use nalgebra::{Complex, ComplexField};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{random_central_with, random_unitary_with, Family, GroupDescriptor, GroupElement};
use crate::linalg::{numeric_rank, unit_floor};
use crate::scalar::{roots_of_unity, to_f64, CMat, Real};
use crate::word::{evaluate_word, relator, Generator, Kind};

/// Retries allowed after the first attempt in [`random_good_schottky`].
pub const MAX_RETRIES: usize = 16;

/// Anything that assigns group elements to an ordered list of generators.
pub trait Representation<T: Real> {
    fn descriptor(&self) -> GroupDescriptor;

    /// Genus for surface groups, rank for free groups.
    fn rank(&self) -> usize;

    /// Generators in slot order.
    fn generators(&self) -> Vec<Generator>;

    /// Images in slot order.
    fn images(&self) -> Vec<&GroupElement<T>>;

    fn slot(&self, g: Generator) -> Option<usize>;

    fn image(&self, g: Generator) -> Option<&GroupElement<T>> {
        self.slot(g).map(|s| self.images()[s])
    }

    /// Largest `‖U*U − I‖_F` over the generator images.
    fn unitarity_residual(&self) -> T {
        self.images().iter().fold(T::zero(), |a, g| a.max(g.unitarity_residual()))
    }

    fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_residual() <= tol
    }
}

/// `ρ: π₁(Σ_g) → G` given by the images `A_i = ρ(α_i)`, `B_i = ρ(β_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceRep<T: Real> {
    desc: GroupDescriptor,
    genus: usize,
    a: Vec<GroupElement<T>>,
    b: Vec<GroupElement<T>>,
    tol: T,
}

impl<T: Real> SurfaceRep<T> {
    /// Builds a representation, checking the relator at the default tolerance.
    pub fn new(desc: GroupDescriptor, a: Vec<GroupElement<T>>, b: Vec<GroupElement<T>>) -> Result<Self> {
        Self::with_tol(desc, a, b, T::relator_tol())
    }

    pub fn with_tol(desc: GroupDescriptor, a: Vec<GroupElement<T>>, b: Vec<GroupElement<T>>, tol: T) -> Result<Self> {
        let rep = Self::unvalidated(desc, a, b)?.set_tol(tol);
        rep.validate()?;
        Ok(rep)
    }

    /// Builds a representation without checking the relator. Operations
    /// that need the relator check it themselves.
    pub fn unvalidated(desc: GroupDescriptor, a: Vec<GroupElement<T>>, b: Vec<GroupElement<T>>) -> Result<Self> {
        let genus = a.len();
        if genus == 0 {
            return Err(Error::InvalidGenus(0));
        }
        if b.len() != genus {
            return Err(Error::GenusMismatch { expected: genus, found: b.len() });
        }
        if a.iter().chain(b.iter()).any(|g| g.descriptor() != desc) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(SurfaceRep { desc, genus, a, b, tol: T::relator_tol() })
    }

    pub fn trivial(desc: GroupDescriptor, genus: usize) -> Result<Self> {
        let id = GroupElement::identity(desc);
        Self::new(desc, vec![id.clone(); genus], vec![id; genus])
    }

    /// Builds `(ρ₁, ρ₂)` from a free representation carrying a central tuple.
    pub fn from_free(free: &FreeRep<T>) -> Result<Self> {
        let central = free.central.clone().ok_or(Error::NotSchottky)?;
        Self::new(free.desc, central, free.c.clone())
    }

    pub fn set_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let residual = self.relator_residual();
        if residual <= self.tol {
            Ok(())
        } else {
            Err(Error::RelatorViolated { residual: to_f64(residual), tol: to_f64(self.tol) })
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn a(&self) -> &[GroupElement<T>] {
        &self.a
    }

    pub fn b(&self) -> &[GroupElement<T>] {
        &self.b
    }

    /// `‖ρ(R) − I‖_F`; for PSL the distance of `ρ(R)` to the nearest central
    /// root of unity, since the relator only has to hold modulo the center.
    pub fn relator_residual(&self) -> T {
        let r = evaluate_word(self, &relator(self.genus).expect("genus >= 1")).expect("rep words are valid");
        let n = self.desc.ambient_dim();
        match self.desc.family() {
            Family::Psl => roots_of_unity::<T>(n)
                .into_iter()
                .map(|z| (r.matrix() - CMat::from_diagonal_element(n, n, z)).norm())
                .fold(T::max_value().unwrap_or(T::one()), |a, b| a.min(b)),
            _ => (r.matrix() - CMat::identity(n, n)).norm(),
        }
    }

    /// Every `A_i` is central. For PSL this means the lift is scalar.
    pub fn is_schottky(&self, tol: T) -> bool {
        self.a.iter().all(|x| x.is_central(tol))
    }

    /// Every `A_i` is the identity (for PSL: the identity of PSL, so strict
    /// and plain Schottky coincide).
    pub fn is_strict_schottky(&self, tol: T) -> bool {
        match self.desc.family() {
            Family::Psl => self.is_schottky(tol),
            _ => {
                let n = self.desc.ambient_dim();
                self.a.iter().all(|x| (x.matrix() - CMat::identity(n, n)).norm() <= tol)
            }
        }
    }

    /// The free-group part `γ_i ↦ B_i`, with the `A_i` as central tuple when
    /// they are central.
    pub fn free_part(&self) -> FreeRep<T> {
        let central = self.is_schottky(T::check_tol()).then(|| self.a.clone());
        FreeRep { desc: self.desc, c: self.b.clone(), central }
    }

    pub fn conjugate(&self, h: &GroupElement<T>) -> Result<Self> {
        if h.descriptor() != self.desc {
            return Err(Error::DescriptorMismatch);
        }
        let hi = h.inv();
        let conj = |x: &GroupElement<T>| h.mul(x).mul(&hi);
        Ok(SurfaceRep {
            desc: self.desc,
            genus: self.genus,
            a: self.a.iter().map(conj).collect(),
            b: self.b.iter().map(conj).collect(),
            tol: self.tol,
        })
    }
}

impl<T: Real> Representation<T> for SurfaceRep<T> {
    fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    fn rank(&self) -> usize {
        self.genus
    }

    fn generators(&self) -> Vec<Generator> {
        (1..=self.genus).map(Generator::alpha).chain((1..=self.genus).map(Generator::beta)).collect()
    }

    fn images(&self) -> Vec<&GroupElement<T>> {
        self.a.iter().chain(self.b.iter()).collect()
    }

    fn slot(&self, g: Generator) -> Option<usize> {
        if g.index == 0 || g.index > self.genus {
            return None;
        }
        match g.kind {
            Kind::Alpha => Some(g.index - 1),
            Kind::Beta => Some(self.genus + g.index - 1),
            Kind::Gamma => None,
        }
    }
}

/// `ρ₂: F_g → G` on free generators `γ_i`, optionally paired with a
/// central tuple `ρ₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeRep<T: Real> {
    desc: GroupDescriptor,
    c: Vec<GroupElement<T>>,
    central: Option<Vec<GroupElement<T>>>,
}

impl<T: Real> FreeRep<T> {
    pub fn new(desc: GroupDescriptor, c: Vec<GroupElement<T>>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidGenus(0));
        }
        if c.iter().any(|g| g.descriptor() != desc) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(FreeRep { desc, c, central: None })
    }

    pub fn trivial(desc: GroupDescriptor, rank: usize) -> Result<Self> {
        Self::new(desc, vec![GroupElement::identity(desc); rank])
    }

    pub fn with_central(mut self, central: Vec<GroupElement<T>>) -> Result<Self> {
        if central.len() != self.c.len() {
            return Err(Error::GenusMismatch { expected: self.c.len(), found: central.len() });
        }
        if central.iter().any(|g| g.descriptor() != self.desc) {
            return Err(Error::DescriptorMismatch);
        }
        if !central.iter().all(|g| g.is_central(T::check_tol())) {
            return Err(Error::NotSchottky);
        }
        self.central = Some(central);
        Ok(self)
    }

    pub fn images_c(&self) -> &[GroupElement<T>] {
        &self.c
    }

    pub fn central(&self) -> Option<&[GroupElement<T>]> {
        self.central.as_deref()
    }

    pub fn conjugate(&self, h: &GroupElement<T>) -> Result<Self> {
        if h.descriptor() != self.desc {
            return Err(Error::DescriptorMismatch);
        }
        let hi = h.inv();
        Ok(FreeRep { desc: self.desc, c: self.c.iter().map(|x| h.mul(x).mul(&hi)).collect(), central: self.central.clone() })
    }
}

impl<T: Real> Representation<T> for FreeRep<T> {
    fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    fn rank(&self) -> usize {
        self.c.len()
    }

    fn generators(&self) -> Vec<Generator> {
        (1..=self.c.len()).map(Generator::gamma).collect()
    }

    fn images(&self) -> Vec<&GroupElement<T>> {
        self.c.iter().collect()
    }

    fn slot(&self, g: Generator) -> Option<usize> {
        (g.kind == Kind::Gamma && g.index >= 1 && g.index <= self.c.len()).then(|| g.index - 1)
    }
}

/// Outcome of the goodness test.
///
/// `lie_dim` is the dimension of the Lie algebra of the stabilizer. A
/// stabilizer that is a nontrivial finite extension of the center has the
/// same Lie algebra as the center and is not detected here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub lie_dim: usize,
    pub center_dim: usize,
    pub burnside_span_dim: usize,
    pub is_irreducible: bool,
    pub is_good: bool,
}

/// Stacked `Ad(x) − I` over the generator images, in Lie coordinates.
pub(crate) fn stacked_adjoint_minus_identity<T: Real, R: Representation<T> + ?Sized>(rep: &R) -> CMat<T> {
    let desc = rep.descriptor();
    let d = desc.dim_g();
    let images = rep.images();
    let mut out = CMat::zeros(d * images.len(), d);
    for (k, x) in images.iter().enumerate() {
        let block = desc.adjoint_matrix(x) - CMat::identity(d, d);
        out.view_mut((k * d, 0), (d, d)).copy_from(&block);
    }
    out
}

/// Dimension of `{v ∈ 𝔤 : Ad(ρ(x))v = v for all generators x}`.
pub fn stabilizer_lie_dim<T: Real, R: Representation<T> + ?Sized>(rep: &R) -> usize {
    let m = stacked_adjoint_minus_identity(rep);
    rep.descriptor().dim_g() - numeric_rank(&m, T::rank_rtol(), Some(unit_floor(&m)))
}

/// Dimension of the algebra generated by the matrices and their inverses,
/// using words of length at most `2n²`.
pub fn burnside_span_dim<T: Real>(images: &[&GroupElement<T>], n: usize) -> usize {
    let full = n * n;
    let mut gens: Vec<&CMat<T>> = Vec::with_capacity(2 * images.len());
    for g in images {
        gens.push(g.matrix());
        gens.push(g.inverse_matrix());
    }
    let tol = T::rank_rtol();
    let mut basis: Vec<CMat<T>> = Vec::new();
    let try_add = |basis: &mut Vec<CMat<T>>, m: CMat<T>| -> Option<CMat<T>> {
        let scale = m.norm();
        if scale == T::zero() {
            return None;
        }
        let mut r = m;
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            for q in basis.iter() {
                let coef = inner(q, &r);
                r -= q * coef;
            }
        }
        let nr = r.norm();
        if nr <= tol * scale {
            return None;
        }
        let q = r.unscale(nr);
        basis.push(q.clone());
        Some(q)
    };
    let mut frontier: Vec<CMat<T>> = try_add(&mut basis, CMat::identity(n, n)).into_iter().collect();
    let mut length = 0;
    while !frontier.is_empty() && basis.len() < full && length < 2 * full {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                if let Some(q) = try_add(&mut basis, *g * m) {
                    next.push(q);
                }
                if basis.len() == full {
                    return full;
                }
            }
        }
        frontier = next;
        length += 1;
    }
    basis.len()
}

fn inner<T: Real>(q: &CMat<T>, r: &CMat<T>) -> Complex<T> {
    q.iter().zip(r.iter()).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conjugate() * b)
}

/// Goodness test: Burnside irreducibility in the defining representation
/// and `dim 𝔷(ρ) = dim Z`. Tori are rejected with the stabilizer data
/// attached to the error.
pub fn is_good<T: Real, R: Representation<T> + ?Sized>(rep: &R) -> Result<StabilizerReport> {
    let desc = rep.descriptor();
    let lie_dim = stabilizer_lie_dim(rep);
    let center_dim = desc.dim_z();
    if desc.family() == Family::Torus {
        return Err(Error::UnsupportedIrreducibility { family: desc.family(), lie_dim, center_dim });
    }
    let n = desc.ambient_dim();
    let burnside_span_dim = burnside_span_dim(&rep.images(), n);
    let is_irreducible = burnside_span_dim == n * n;
    Ok(StabilizerReport { lie_dim, center_dim, burnside_span_dim, is_irreducible, is_good: is_irreducible && lie_dim == center_dim })
}

/// Random unitary Schottky representation: `A_i = I` (strict) or random
/// central, `B₁`, `B₂` Haar-random in the compact form, other `B_i = I`.
/// Retries with a fresh stream until the result is good.
pub fn random_good_schottky<T: Real>(desc: GroupDescriptor, genus: usize, strict: bool, seed: u64) -> Result<SurfaceRep<T>> {
    random_good_schottky_with_attempts(desc, genus, strict, seed).map(|(rep, _)| rep)
}

/// As [`random_good_schottky`], also returning the number of attempts used.
pub fn random_good_schottky_with_attempts<T: Real>(
    desc: GroupDescriptor,
    genus: usize,
    strict: bool,
    seed: u64,
) -> Result<(SurfaceRep<T>, usize)> {
    if genus < 2 {
        return Err(Error::InvalidGenus(genus));
    }
    for attempt in 0..=MAX_RETRIES {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let a: Vec<GroupElement<T>> =
            (0..genus).map(|_| if strict { GroupElement::identity(desc) } else { random_central_with(desc, &mut rng) }).collect();
        let b: Vec<GroupElement<T>> =
            (0..genus).map(|i| if i < 2 { random_unitary_with(desc, &mut rng) } else { GroupElement::identity(desc) }).collect();
        let rep = SurfaceRep::new(desc, a, b)?;
        if desc.family() == Family::Torus {
            return Ok((rep, attempt + 1));
        }
        if is_good(&rep)?.is_good {
            return Ok((rep, attempt + 1));
        }
    }
    Err(Error::GenerationFailed { attempts: MAX_RETRIES + 1 })
}
