//! Representations of surface groups and free groups into matrix Lie
//! groups: cocycles, first cohomology, the symplectic pairing on `H¹`,
//! Schottky tangent spaces and the lifting obstruction for `PSL(n)`.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the type
//! aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use surfrep::{cohomology, rep, GroupDescriptor};
//!
//! let sl2: GroupDescriptor = "SL2".parse().unwrap();
//! let rho = rep::random_good_schottky::<f64>(sl2, 2, true, 7).unwrap();
//! let dims = cohomology::dims_report(&rho).unwrap();
//! assert_eq!((dims.dim_z1, dims.dim_b1, dims.dim_h1), (9, 3, 6));
//! assert!(dims.matches);
//! ```

pub mod cohomology;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod symplectic;
pub mod topology;
pub mod word;

pub use cohomology::{b1, dims_report, free_cohomology_dims, h1, relator_differential, schottky_tangent, z1, DimsReport};
pub use error::{Error, Result};
pub use group::{center_component_count, Family, GroupDescriptor};
pub use rep::{is_good, random_good_schottky, Representation, StabilizerReport};
pub use scalar::Real;
pub use symplectic::{fox_pairing, is_isotropic, pairing_matrix, verify_lagrangian, FormKind, LagrangianReport};
pub use topology::{lift_independence_check, obstruction_class, schottky_triviality_sweep, SweepConfig, SweepReport};
pub use word::{Generator, GroupRingElement, Kind, Letter, Word};

pub type GroupElement = group::GroupElement<f64>;
pub type LieVector = group::LieVector<f64>;
pub type SurfaceRep = rep::SurfaceRep<f64>;
pub type FreeRep = rep::FreeRep<f64>;
pub type Cocycle = cohomology::Cocycle<f64>;
pub type Subspace = cohomology::Subspace<f64>;
pub type PairingMatrix = symplectic::PairingMatrix<f64>;
pub type ObstructionClass = topology::ObstructionClass<f64>;
