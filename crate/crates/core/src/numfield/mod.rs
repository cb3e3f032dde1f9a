//! Number fields given by a monic irreducible integer polynomial.

pub mod field;
pub mod interval;
pub mod linalg;
pub mod order;
pub mod places;

pub use field::{gen, Embedding, FieldElem, NumberField};
pub use interval::{eval_interval, RInterval};
pub use order::{dedekind_p_maximal, field_discriminant_of, p_maximal_order, DedekindResult, FieldDiscriminant, LocalOrder};
pub use places::{one_complex_place, ComplexPlaceCheck};
