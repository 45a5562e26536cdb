//! Poly-rational sequences in five interchangeable forms.
//!
//! A sequence of rationals is *poly-rational* when it is denoted by an
//! expression over arithmetic and geometric atoms closed under sum,
//! Hadamard product, shift and shuffle. The same class is recognised by
//! polynomially ambiguous weighted automata, by copyless cost-register
//! automata, and by linear recurrences whose generating function has a
//! denominator whose roots are all roots of rational numbers.
//!
//! The crate provides each representation together with the constructive
//! conversions between them:
//!
//! - [`ratmath`]: exact rationals, polynomials, rational functions, binomial
//!   factorisation and partial fractions.
//! - [`seqexpr`]: rational expressions, their parser and evaluator.
//! - [`wa`]: unary weighted automata, ambiguity classification and
//!   chained-loop decomposition.
//! - [`cra`]: cost-register automata and the copyless conversions.
//! - [`lrs`]: linear recurrences and the poly-rationality test.
//! - [`cli`]: the `polyrat` command-line front end.
//!
//! ```
//! use polyrat_core::lrs::Lrs;
//! use polyrat_core::ratmath::int;
//!
//! let fib = Lrs::new(vec![int(1), int(1)], vec![int(0), int(1)]).unwrap();
//! assert_eq!(fib.to_series().to_string(), "x/(1 - x - x^2)");
//! assert!(!fib.classify_polyrat(None).is_polyrat);
//! ```

pub mod cli;
pub mod cra;
pub mod error;
pub mod formats;
pub mod lrs;
pub mod ratmath;
pub mod seqexpr;
pub mod wa;

pub use error::{Error, Result};

/// Default number of terms compared after every conversion.
pub const DEFAULT_CHECK_TERMS: usize = 40;
