//! Supercharacter theories on `(ℤ/nℤ)^d` induced by matrix groups, the
//! super-Fourier transform they define, and a catalog of classical
//! exponential sums realized as supercharacter values.

pub mod algebra;
pub mod battery;
pub mod catalog;
pub mod error;
pub mod fourier;
pub mod group;
pub mod modular;
pub mod partition;
pub mod table;

pub use error::{Error, Result};
pub use group::{MatrixGroup, Symmetry};
pub use modular::{GMatrix, GVector, Modulus};
pub use partition::{Action, Space, SuperclassPartition};
pub use table::{SupercharacterTable, Theory, UnitaryU};
