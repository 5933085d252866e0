//! Topological type of flat `PSL(n)` bundles through the covering
//! `SL(n) → PSL(n)`: a representation is stored by `SL(n)` lifts of the
//! generator images, the relator evaluates on the lifts to a central
//! `ζ·I`, and `ζ ∈ μ_n ≅ ℤ/n` is the obstruction to lifting.

use nalgebra::{Complex, ComplexField};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{random_central_with, random_unitary_with, Family, GroupDescriptor, GroupElement};
use crate::rep::{Representation, SurfaceRep};
use crate::scalar::{roots_of_unity, to_f64, tol, CMat, Real};
use crate::word::{evaluate_word, relator};

/// Largest `‖ρ̃(R) − ζI‖_F` accepted as a `PSL(n)` representation.
pub const SCALAR_TOL: f64 = 1e-8;

/// Agreement required between obstruction values in the lift checks.
pub const LIFT_TOL: f64 = 1e-9;

/// The covering `1 → μ_n → SL(n) → PSL(n) → 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringData<T: Real> {
    pub base: GroupDescriptor,
    pub cover: GroupDescriptor,
    /// `μ_n` as scalars `ζ` with `ζⁿ = 1`.
    pub central_subgroup: Vec<Complex<T>>,
}

impl<T: Real> CoveringData<T> {
    pub fn new(n: usize) -> Result<Self> {
        Ok(CoveringData {
            base: GroupDescriptor::new(Family::Psl, n)?,
            cover: GroupDescriptor::new(Family::Sl, n)?,
            central_subgroup: roots_of_unity(n),
        })
    }

    /// `max |ζⁿ − 1|` over the central subgroup.
    pub fn root_residual(&self) -> T {
        let n = self.base.n() as i32;
        self.central_subgroup.iter().fold(T::zero(), |a, z| a.max((z.powi(n) - Complex::new(T::one(), T::zero())).modulus()))
    }
}

/// `ζ = e^{2πik/n}` with `ρ̃(R) = ζ·I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObstructionClass<T: Real> {
    pub zeta: Complex<T>,
    pub index: usize,
    pub n: usize,
    pub trivial: bool,
}

impl<T: Real> ObstructionClass<T> {
    fn trivial(n: usize) -> Self {
        ObstructionClass { zeta: Complex::new(T::one(), T::zero()), index: 0, n, trivial: true }
    }
}

impl<T: Real> Serialize for ObstructionClass<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ObstructionClass", 4)?;
        st.serialize_field("zeta", &[to_f64(self.zeta.re), to_f64(self.zeta.im)])?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("trivial", &self.trivial)?;
        st.end()
    }
}

/// The obstruction of a `PSL(n)` representation given by `SL(n)` lifts.
/// Representations into GL, SL or tori have trivial obstruction here.
///
/// Fails with [`Error::NotPslRepresentation`] when the relator product on
/// the lifts is not within [`SCALAR_TOL`] of an `n`-th root of unity.
pub fn obstruction_class<T: Real>(rep: &SurfaceRep<T>) -> Result<ObstructionClass<T>> {
    let desc = rep.descriptor();
    let n = desc.n();
    if desc.family() != Family::Psl {
        return Ok(ObstructionClass::trivial(n));
    }
    let r = evaluate_word(rep, &relator(rep.genus())?)?;
    let roots = roots_of_unity::<T>(n);
    let (index, residual) = roots
        .iter()
        .map(|z| (r.matrix() - CMat::from_diagonal_element(n, n, *z)).norm())
        .enumerate()
        .fold((0, T::max_value().unwrap_or(T::one())), |best, (k, d)| if d < best.1 { (k, d) } else { best });
    if residual > tol(SCALAR_TOL) {
        return Err(Error::NotPslRepresentation { residual: to_f64(residual) });
    }
    Ok(ObstructionClass { zeta: roots[index], index, n, trivial: index == 0 })
}

/// Multiplies every lift by an independent random central element of
/// `SL(n)` and checks that the obstruction does not change.
pub fn lift_independence_check<T: Real>(rep: &SurfaceRep<T>, seed: u64) -> Result<bool> {
    let before = obstruction_class(rep)?;
    let desc = rep.descriptor();
    if desc.family() != Family::Psl {
        return Ok(true);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut twist = |x: &GroupElement<T>| x.mul(&random_central_with(desc, &mut rng));
    let a: Vec<_> = rep.a().iter().map(&mut twist).collect();
    let b: Vec<_> = rep.b().iter().map(&mut twist).collect();
    let twisted = SurfaceRep::unvalidated(desc, a, b)?;
    let after = obstruction_class(&twisted)?;
    Ok((after.zeta - before.zeta).modulus() <= tol(LIFT_TOL))
}

/// Genus-1 `PSL(2)` representation with lifts `A = diag(i, −i)` and
/// `B = [[0, 1], [−1, 0]]`, whose commutator is `−I`.
pub fn control_rep<T: Real>() -> SurfaceRep<T> {
    let desc = GroupDescriptor::new(Family::Psl, 2).expect("PSL2 is valid");
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let a = GroupElement::new(desc, CMat::from_row_slice(2, 2, &[i, z, z, -i])).expect("unimodular");
    let b = GroupElement::new(desc, CMat::from_row_slice(2, 2, &[z, one, -one, z])).expect("unimodular");
    SurfaceRep::new(desc, vec![a], vec![b]).expect("commutator is central")
}

/// Random Schottky `PSL(n)` representation: `A_i` random `n`-th roots of
/// unity, every `B_i` Haar-random in `SU(n)`.
pub fn random_schottky_psl<T: Real>(n: usize, genus: usize, seed: u64) -> Result<SurfaceRep<T>> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let desc = GroupDescriptor::new(Family::Psl, n)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let a = (0..genus).map(|_| random_central_with(desc, &mut rng)).collect();
    let b = (0..genus).map(|_| random_unitary_with(desc, &mut rng)).collect();
    SurfaceRep::new(desc, a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub genus: usize,
    pub seeds: u64,
    /// Central twists tried per representation.
    pub twists: u64,
    pub inject_control: bool,
}

impl SweepConfig {
    pub fn new(n: usize, genus: usize, seeds: u64) -> Self {
        SweepConfig { n, genus, seeds, twists: 20, inject_control: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub genus: usize,
    pub seeds: u64,
    pub all_trivial: bool,
    /// Seeds whose representation had nontrivial obstruction.
    pub counterexamples: Vec<u64>,
    /// Seeds where a central twist changed the obstruction.
    pub lift_dependent: Vec<u64>,
    pub control: Option<ObstructionClass<f64>>,
    pub control_detected: Option<bool>,
}

/// Samples Schottky `PSL(n)` representations and records every seed whose
/// obstruction is nontrivial or depends on the choice of lifts. With
/// `inject_control` the genus-1 control is also evaluated; it must come out
/// nontrivial.
pub fn schottky_triviality_sweep(config: SweepConfig) -> Result<SweepReport> {
    let mut counterexamples = Vec::new();
    let mut lift_dependent = Vec::new();
    for seed in 0..config.seeds {
        let rep = random_schottky_psl::<f64>(config.n, config.genus, seed)?;
        if !obstruction_class(&rep)?.trivial {
            counterexamples.push(seed);
        }
        for t in 0..config.twists {
            if !lift_independence_check(&rep, seed.wrapping_mul(1_000_003).wrapping_add(t))? {
                lift_dependent.push(seed);
                break;
            }
        }
    }
    let (control, control_detected) = if config.inject_control {
        let c = obstruction_class(&control_rep::<f64>())?;
        (Some(c), Some(!c.trivial))
    } else {
        (None, None)
    };
    Ok(SweepReport {
        n: config.n,
        genus: config.genus,
        seeds: config.seeds,
        all_trivial: counterexamples.is_empty(),
        counterexamples,
        lift_dependent,
        control,
        control_detected,
    })
}
