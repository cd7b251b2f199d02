//! Hall algebra of open-closed interval sheaves on the circle.
//!
//! * [`interval`]: the sheaves `p_! k_{(a,b]}`, finite direct sums of them, and the
//!   Hom/Ext rule: on the cover `Hom(k_{(a,b]}, k_{(c,d]})` is one-dimensional iff
//!   `c <= a < d <= b` and `Ext^1` iff `a < c <= b < d`, summed over the integer
//!   translates of the target.
//! * [`hall`]: twisted Hall products with a generator on the left, and the
//!   evaluation of positive words under `E_J -> v^{1/2} 1_{k_J}`.
//! * [`compare`]: agreement with the cyclic-quiver Hall algebra under the
//!   endpoint-preserving dictionary `(a,b] <-> [a,b)`, and the Euler-form check.
//! * [`dtype`]: the graded Hom table of the `D`-shaped configuration.
//!
//! Products are implemented for a generator times an object with at most two
//! summands, which covers every positive relation of the interval presentation.
//! Longer products go through the quiver model.

pub mod compare;
pub mod dtype;
pub mod hall;
pub mod interval;

pub use compare::{compare_with_quiver, euler_form_violations, MirrorComparison, Mismatch, MAX_COMPARE_DENOMINATOR};
pub use dtype::{dtype_hom_ext, DtypeCase, GradedHom, ALL_DTYPE_CASES};
pub use hall::{
    automorphism_order, evaluate_positive, generator_product, mirror_hall_product, riedtmann_numbers, MirrorElement,
    MAX_RIGHT_SUMMANDS,
};
pub use interval::{hom_ext_dims, line_hom_ext, object_hom_ext, strict_intervals, HomExt, MirrorInterval, MirrorObject};
