//! Multi-precision numeric oracle for W(E8)-invariant Jacobi forms.
//!
//! Everything here is computed from theta series and lattice sums, with no
//! reference to the exact algebra beyond reading polynomials to evaluate.

pub mod checks;
pub mod complex;
pub mod e8;
pub mod forms;
pub mod special;

pub use complex::Cx;
pub use forms::{eval_AB, eval_ab, eval_certificate, eval_poly, theta_e8, ComplexSample, PointEval};
pub use checks::{check_axioms, q_laurent_probe, AxiomReport, LaurentProbe};

/// Numeric settings shared by every evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalContext {
    /// Target number of correct decimal digits.
    pub digits: u32,
    /// Relative tolerance for identity checks.
    pub tolerance: f64,
    /// `|q|` of the probing circle used to read Laurent coefficients.
    pub probe_radius: f64,
    /// Number of sample points on that circle.
    pub probe_points: usize,
    /// Denominators smaller than this (relative) are treated as singular.
    pub singular_threshold: f64,
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext {
            digits: 50,
            tolerance: 1e-30,
            probe_radius: 1e-4,
            probe_points: 32,
            singular_threshold: 1e-6,
        }
    }
}

impl EvalContext {
    pub fn with_digits(digits: u32) -> Self {
        EvalContext { digits, ..Default::default() }
    }

    pub fn bits(&self) -> usize {
        complex::bits_for_digits(self.digits)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("series does not converge to the requested precision at Im(tau) = {im_tau}")]
    PrecisionUnreachable { im_tau: f64 },
    #[error("{what} is numerically singular (magnitude {magnitude:e})")]
    NearSingular { what: String, magnitude: f64 },
    #[error("polynomial is not over the expected alphabet: {0}")]
    Alphabet(String),
    #[error("{0}")]
    Core(String),
}
