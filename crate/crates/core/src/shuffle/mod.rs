//! Shuffle model of the spherical Hall algebra of a curve.
//!
//! * [`zeta`]: zeta functions from Weil numerators and the series `xi`, `xi°`, `h_X`.
//! * [`algebra`]: truncated shuffle elements, the braided operator `varpi^h`,
//!   shuffle products and the braid check.
//! * [`constant_term`]: the closed-form constant term of a product of two
//!   degree-one generators.
//! * [`unitary`]: the rational identities making `varpi^h` an involution.
//!
//! In the distinct-label case with `l_1 < l_2` the label-preserving term carries
//! the monomial `x_1^{d_2+1} x_2^{d_1-1}`. This shift is implemented as written;
//! its consistency is certified by the braid check and by agreement with the
//! constant term, not derived independently.

pub mod algebra;
pub mod constant_term;
pub mod unitary;
pub mod zeta;

pub use algebra::{
    all_reduced_words, parse_rank_one, permutations, reduced_word, shuffles, word_to_permutation, LabelMode,
    ShuffleElement, ShuffleTerm, TermKey, Varpi,
};
pub use constant_term::constant_term_rank2;
pub use unitary::unitarity_check;
pub use zeta::{zeta_series, SeriesKind, ZetaData};
