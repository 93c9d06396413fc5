//! Named theories, classical exponential sums and their closed forms.

pub mod arith;
pub mod expand;
pub mod grid;
pub mod named;
pub mod plot;
pub mod sums;

pub use expand::{even_function_expand, evaluate_expansion};
pub use grid::{partition_uncertainty_constant, symmetric_uncertainty_constant, uncertainty_grid};
pub use named::NamedTheory;
pub use plot::SupercharacterImage;
pub use sums::{gauss_periods, gauss_sum, heilbronn_sum, kloosterman_sum, ramanujan_sum, von_sterneck};
