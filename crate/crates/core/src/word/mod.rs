//! Words over variables and constants: syntax, evaluation, and the
//! rewriting used to linearize supercommutators.

pub mod ast;
mod constants;
mod eval;
mod linearize;
mod parser;
pub mod supercomm;

pub use ast::{Equation, Word};
pub use eval::{evaluate, Bindings, Compiled, CompiledEquation};
pub use parser::{parse_equation, parse_word};
pub use supercomm::{is_supercommutator, is_trivially_identity, satisfies_dagger, var_profile, VarProfile};
pub use linearize::{linearize, linearize_product, substituted, Linearization, ProductLinearization, LINEARIZE_FACTOR_CAP};
pub use constants::move_constants_right;
