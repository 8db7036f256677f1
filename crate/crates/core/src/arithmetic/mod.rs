//! Square classes, Hilbert symbols and even orthogonal spaces over Q_p.

mod field;
mod space;

pub use field::{eval_char, hilbert, legendre, norm_group_contains, LocalField, QuadraticCharacter, Sign, SquareClass};
pub use space::{classify_space, AnisoKernel, OrthogonalSpace, WhittakerDatum};

/// Canonical class of num/den in Q_p.
pub fn square_class(field: LocalField, num: i64, den: i64) -> crate::Result<SquareClass> {
    field.square_class(num, den)
}

/// The Hilbert symbol (a, b).
pub fn hilbert_symbol(a: SquareClass, b: SquareClass) -> crate::Result<Sign> {
    hilbert(a, b)
}
