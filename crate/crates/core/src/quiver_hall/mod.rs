//! Hall algebra of nilpotent representations of the cyclic quiver over `F_q`.
//!
//! The quiver has vertices `1..=n` and arrows `i -> i + 1`. The indecomposable
//! `S_i^{(j)}` is uniserial with socle at vertex `i` and top at vertex `i + 1 - j`;
//! it corresponds to the arc `[(i - j)/n, i/n)` of the circle. Structure constants
//! are obtained by exhaustive enumeration of subrepresentations and extension
//! classes, and memoized in a [`HallContext`].

mod element;
mod field;
mod hall;
mod hubery;
mod linalg;
mod object;
mod rep;

pub use element::{HallElement, HallKey, TensorElement};
pub use field::Field;
pub use hall::{default_dim_bound, AutEnd, ExtData, HallContext};
pub use hubery::{hubery_c, hubery_element, hubery_z, primitivity_defect, HuberyKind};
pub use linalg::Matrix;
pub use object::{dimension_vectors_below, enumerate_objects, Segment, TorsionObject};
pub use rep::{classify_rep, for_each_subrep, subobject_table, QuiverRep};

use crate::error::Result;

/// Pullback `Omega_{kn, n}` along the subdivision of every cell into `k` cells.
pub fn omega_pullback(x: &HallElement, target: u64) -> Result<HallElement> {
    x.refine(target)
}

/// Minimal denominator of the support of `x`.
pub fn valuation(x: &HallElement) -> Result<u64> {
    x.valuation()
}
