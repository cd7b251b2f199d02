//! The interval presentation of the quantum group of the rational circle.
//!
//! Generators `E_J`, `F_J` (strict arcs) and `K_J^{+-1}` (any arc) are expanded into
//! Chevalley generators at a common denominator `n`, straightened into
//! `E-K-F` normal form inside the Drinfeld double, and compared with the Hall model
//! through `E_J -> v^{1/2} 1_{S_J}`. The fundamental representations and the
//! embeddings of the level-`n` algebras complete the module.

mod double;
mod embed;
mod fundrep;
mod generators;
mod relations;

pub use double::{chevalley_expand, straighten, DoubleElement, NormalWord};
pub use embed::{affine_cartan_matrix, dyadic_point, embed_generators, EmbeddedGenerator, EmbeddingKind, EmbeddingReport};
pub use fundrep::{apply_expr, apply_word, fund_rep_apply, transversal, RepOperator, RepVariant, RepVector};
pub use generators::{parse_word, GeneratorExpr, GeneratorKind, GeneratorSymbol};
pub use relations::{
    coproduct_generator_component, coproduct_matches_hall, evaluate_negative_part, evaluate_positive_part,
    evaluation_mode, instances_for_pair, k_arcs, relation_instances, strict_arcs, swapped_instances_for_pair,
    swapped_relation_instances, verify_family, verify_instance,
    verify_relation, CoproductTerm, EvaluationMode, RelationCertificate, RelationFamily, RelationInstance,
    ALL_FAMILIES,
};
