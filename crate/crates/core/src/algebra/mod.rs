//! Number theory, finite fields and finite abelian groups.

pub mod field;
pub mod group;
pub mod numbers;

pub use field::FiniteField;
pub use group::{AbelianGroup, Characters};
pub use numbers::{is_prime, is_prime_power, is_sum_of_two_squares};

/// Character table accessor for `g`.
pub fn group_characters(g: &AbelianGroup) -> Characters<'_> {
    g.characters()
}

/// All nonzero squares of `f`.
pub fn quadratic_residues(f: &FiniteField) -> crate::Result<std::collections::BTreeSet<u32>> {
    f.quadratic_residues()
}
