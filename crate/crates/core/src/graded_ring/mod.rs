//! Bigraded polynomial rings over the two generator alphabets, the
//! `E4^p Delta^q` fraction normal form and the substitutions between them.

mod alphabet;
mod coeff;
mod frac;
mod parse;
mod poly;
mod subst;
mod tables;

pub use alphabet::{lower, upper, Alphabet, BiDegree, Generator, Monomial, AB, LOWER_AB, NGEN};
pub use coeff::{
    common_denominator, format_rational, make_primitive, parse_rational,
    primitive_integer_vector, rat, ratio, Coefficient, LinForm, Rational, Scalar, ScaledBy,
};
pub use frac::{
    delta_in, delta_polynomial, delta_power, divexact, divisible_by_delta, e4_split, p165,
    E4Split, Frac, ParamFrac,
};
pub use parse::parse_poly;
pub use poly::{IntPoly, ParamPoly, Poly, Polynomial};
pub use subst::{definitions_text, frac_to_lower, sum_fracs, sub_ab_to_upper, sub_upper_to_ab, Substituter};
pub use tables::{lower_in_upper, p165_over_e4_in_ab, upper_in_lower};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("inhomogeneous sum: {left} vs {right}")]
    Inhomogeneous { left: BiDegree, right: BiDegree },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero polynomial")]
    ZeroDivisor,
    #[error("denominator still contains Delta^{0}")]
    DeltaDenominator(u32),
    #[error("not a polynomial over {0}")]
    NotPolynomial(&'static str),
}
