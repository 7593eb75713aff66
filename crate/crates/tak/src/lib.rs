//! Twisted Alexander polynomials of 2-bridge knots b(p,m) and twist knots K_m
//! at SL2(C) representations given by trace coordinates, plus solvers that
//! enumerate the representations with monic or degree-deficient polynomials.

pub mod chebyshev;
pub mod cli;
pub mod group_words;
pub mod knots;
pub mod laurent;
pub mod representations;
pub mod solver;
pub mod twisted_alexander;

pub use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid knot parameters: {0}")]
    InvalidKnot(String),
    #[error("reducible (abelian) representation: off-diagonal parameter u = 0")]
    Reducible,
    #[error("not a representation: relator residual {residual:.3e} exceeds tolerance")]
    NotARepresentation { residual: f64 },
    #[error("numerator not divisible by denominator: relative remainder {remainder:.3e}")]
    NotDivisible { remainder: f64 },
    #[error("zero polynomial has no span or leading coefficient")]
    ZeroPolynomial,
    #[error("word has odd length {0}; the alternating trace sum needs an even word")]
    OddWordLength(usize),
    #[error("matrix is not in SL2: |det - 1| = {0:.3e}")]
    NonUnimodular(f64),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Numerical thresholds used across the pipeline. `default()` gives the
/// values everything in this crate is validated against.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative magnitude below which a Laurent coefficient is dropped.
    pub zero: f64,
    /// Relative remainder allowed when dividing out the denominator.
    pub division: f64,
    /// |leading - 1| bound for calling a polynomial monic.
    pub monic: f64,
    /// Residual bound for accepting (x, coord) as a Riley root.
    pub riley: f64,
    /// Allowed deviation of the boundary coefficient from its target.
    pub boundary: f64,
    /// Relator residual above which a candidate is rejected outright.
    pub representation: f64,
    /// Distance below which two witnesses count as the same point.
    pub dedupe: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-9,
            division: 1e-8,
            monic: 1e-6,
            riley: 1e-8,
            boundary: 1e-7,
            representation: 1e-6,
            dedupe: 1e-6,
        }
    }
}
