//! Bound functions, the nested evaluator and exact small-`n` profiles.

pub mod bounds;
mod exhaustive;
pub mod nested;

pub use bounds::{
    bound_curve, kms_thm5_crossover, thm6_default_constant, upper_bound_prop7, BoundFunction, Prop7, Value,
};
pub use exhaustive::{bound_curve_csv, lower_envelope, profile_csv, profile_exact, Profile, ProfileRecord};
pub use nested::{basic_chain, basic_chain_closed_form, nested_gromov, Nested, NestedStep};
