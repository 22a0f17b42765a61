//! Symbolic and concrete calculus for non-associative operator products.
//!
//! Symbolic work happens on [`Expr`]: sums of bracketed products of
//! generators with exact Gaussian-rational coefficients. Concrete work
//! happens in finite-dimensional algebras given by Cayley–Dickson doubling or
//! an explicit multiplication table. The concrete side is generic over
//! [`scalar::Field`]; the aliases below fix the exact rational field.
//!
//! ```
//! use std::sync::Arc;
//! use nonassoc_core::{parse, to_left_normal_form, Algebra, Element};
//! use nonassoc_core::observability::nucleus;
//!
//! let e = parse("[a [b c]]").unwrap();
//! let t = e.terms().next().unwrap();
//! let (comb, corrections) = to_left_normal_form(t);
//! assert_eq!(comb.to_string(), "[[a b] c]");
//! assert_eq!(corrections.to_string(), "-{a, b, c}-");
//!
//! let oct = Arc::new(Algebra::octonions());
//! assert_eq!(nucleus(&oct).dim(), 1);
//! let e1 = Element::basis(&oct, 1);
//! assert!((&e1 * &e1).is_real());
//! ```

pub mod assoc;
pub mod cayley_dickson;
pub mod expr;
pub mod linalg;
pub mod normal_form;
pub mod observability;
pub mod parser;
pub mod scalar;
pub mod term;
pub mod ym;

pub use assoc::{associator, composite_commutator, evaluate, Valuation};
pub use cayley_dickson::{check_identity, Identity, IdentityCheck};
pub use expr::{Expr, Scalar};
pub use normal_form::{to_left_normal_form, to_normal_form, Comb, NormalFormOptions};
pub use observability::{classify, generated_subalgebra, nucleus};
pub use parser::{parse, print, ParseError};
pub use term::{Atom, Generator, Sign, Term};

pub type Rational = num_rational::BigRational;
pub type Algebra = cayley_dickson::Algebra<Rational>;
pub type Element = cayley_dickson::Element<Rational>;
pub type Subspace = linalg::Subspace<Rational>;
pub type FloatAlgebra = cayley_dickson::Algebra<f64>;
pub type FloatElement = cayley_dickson::Element<f64>;
