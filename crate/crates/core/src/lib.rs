//! Incremental Gröbner bases of generic homogeneous ideals over a prime field,
//! with the multiplication matrices and structural checks built on them.

pub mod error;
pub mod field;
pub mod generic;
pub mod golden;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod report;
pub mod theta;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, SeededGenerator, DEFAULT_PRIME};
pub use generic::{build_generic_ideal, hilbert_data, GenericInstance, HilbertData, InstanceSpec, StandardBasisTable};
pub use groebner::{buchberger, ggv_extend, interreduce, GroebnerBasis};
pub use monomial::{Monomial, MonomialIdeal};
pub use polynomial::{normal_form, Polynomial};
pub use report::{Check, Report};
pub use theta::{build_all, build_mi, GVector, MultMatrix, Regime, ThetaSelection};
