//! Exact integer and modular linear algebra, and finite abelian groups.

mod group;
mod matrix;
pub mod modular;
mod presentation;

pub use group::{
    enumeration_cap, set_enumeration_cap, solve_congruences, Character, CyclicIso, Elements, FinAbGroup, GroupElement, Homomorphism,
};
pub use matrix::{smith_normal_form, verify_smith, IntMatrix, SmithForm};
pub use modular::{prime_power_factors, PrimePower};
pub use presentation::{cokernel_presentation, kernel_mod, kernel_mod_uniform, Presentation};

/// Pontryagin dual of `G`.
pub fn pontryagin_dual(g: &FinAbGroup) -> FinAbGroup {
    g.dual()
}
