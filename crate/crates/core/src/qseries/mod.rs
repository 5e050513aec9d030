//! Exact coefficient arithmetic: rationals, polynomials in `q`, and
//! componentwise-truncated multivariate power series.

pub mod poly;
pub mod rational;
pub mod series;

pub use poly::{
    binomial_poly, binomial_poly_shifted, falling_factorial, falling_factorial_shifted, QPolynomial,
    QPolynomialJson,
};
pub use rational::{rat, rat_frac, Rational};
pub use series::{ExponentVector, SeriesJson, TermJson, TruncatedSeries};
