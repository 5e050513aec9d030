//! Univariate polynomials in the color-count variable `q` with exact
//! rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{parse_fraction, rat, to_fraction_string, Rational};
use crate::error::{Error, Result};

/// Dense coefficient list, index `i` holds the coefficient of `q^i`.
/// Trailing zeros are never stored, so the zero polynomial is `[]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `q + c`.
    pub fn q_plus(c: i64) -> Self {
        Self::from_coeffs(vec![rat(c), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_int(&self, v: i64) -> Rational {
        self.eval(&rat(v))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder of Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &QPolynomial) -> (QPolynomial, QPolynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPolynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &factor * dc;
            }
            quot[i - dd] = factor;
        }
        (QPolynomial::from_coeffs(quot), QPolynomial::from_coeffs(rem))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Option<QPolynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Unique interpolant of degree `< points.len()` through integer abscissae.
    pub fn interpolate(points: &[(i64, Rational)]) -> Result<QPolynomial> {
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        let mut seen = std::collections::HashSet::new();
        for (x, _) in points {
            if !seen.insert(*x) {
                return Err(Error::DuplicateAbscissa(*x));
            }
        }
        let mut acc = QPolynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = QPolynomial::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &QPolynomial::q_plus(-xj);
                    denom *= rat(xi - xj);
                }
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> QPolynomialJson {
        QPolynomialJson {
            coeffs: self.coeffs.iter().map(to_fraction_string).collect(),
            pretty: self.to_string(),
            factored: self.factored_string(),
        }
    }

    pub fn from_json(j: &QPolynomialJson) -> Result<QPolynomial> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_fraction(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(QPolynomial::from_coeffs(coeffs))
    }

    /// Cosmetic factored form: scalar content, small integer roots pulled out
    /// as linear factors, and the leftover cofactor in expanded form.
    pub fn factored_string(&self) -> String {
        if self.degree().unwrap_or(0) == 0 {
            return self.to_string();
        }
        let mut rest = self.clone();
        let mut factors: Vec<(i64, usize)> = Vec::new();
        for r in -64i64..=64 {
            let lin = QPolynomial::q_plus(-r);
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 && rest.eval_int(r).is_zero() {
                rest = rest.div_exact(&lin).expect("root implies exact division");
                mult += 1;
            }
            if mult > 0 {
                factors.push((r, mult));
            }
        }
        factors.sort_by_key(|(r, _)| (*r < 0, r.abs()));
        let mut out = String::new();
        let lead_only = rest.degree() == Some(0);
        if lead_only {
            let c = rest.leading_coeff();
            if c == -Rational::one() {
                out.push('-');
            } else if !c.is_one() {
                out.push_str(&format!("({})", fmt_coeff(&c)));
            }
        }
        for (r, mult) in factors {
            let base = match r.cmp(&0) {
                std::cmp::Ordering::Equal => "q".to_string(),
                std::cmp::Ordering::Greater => format!("(q-{r})"),
                std::cmp::Ordering::Less => format!("(q+{})", -r),
            };
            out.push_str(&base);
            if mult > 1 {
                out.push_str(&format!("^{mult}"));
            }
        }
        if !lead_only {
            out.push_str(&format!("({rest})"));
        }
        out
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Expanded form, highest degree first, e.g. `q^2-2q+1` or `(1/4)q^6-(1/2)q^5`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if abs.is_one() && i > 0 {
                write!(f, "{var}")?;
            } else if abs.denom().is_one() {
                write!(f, "{}{var}", abs.numer())?;
            } else if i == 0 {
                write!(f, "{}/{}", abs.numer(), abs.denom())?;
            } else {
                write!(f, "({}/{}){var}", abs.numer(), abs.denom())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QPolynomialJson {
    pub coeffs: Vec<String>,
    #[serde(default)]
    pub pretty: String,
    #[serde(default)]
    pub factored: String,
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |a, b| &a + &b)
    }
}

/// Falling factorial `(q+shift)(q+shift-1)…(q+shift-k+1)`.
pub fn falling_factorial_shifted(shift: i64, k: usize) -> QPolynomial {
    (0..k as i64).fold(QPolynomial::one(), |acc, i| &acc * &QPolynomial::q_plus(shift - i))
}

/// `(q)_k = q(q-1)…(q-k+1)`.
pub fn falling_factorial(k: usize) -> QPolynomial {
    falling_factorial_shifted(0, k)
}

/// `C(q, k) = q(q-1)…(q-k+1)/k!` as a polynomial in `q`.
pub fn binomial_poly(k: usize) -> QPolynomial {
    binomial_poly_shifted(0, k)
}

/// `C(q+shift, k)` as a polynomial in `q`.
pub fn binomial_poly_shifted(shift: i64, k: usize) -> QPolynomial {
    let fact = super::rational::factorial(k as u64);
    falling_factorial_shifted(shift, k).scale(&Rational::new(BigInt::one(), fact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rational::{binomial, rat_frac};

    #[test]
    fn binomial_poly_examples() {
        assert_eq!(binomial_poly(0), QPolynomial::one());
        assert_eq!(
            binomial_poly(2),
            QPolynomial::from_coeffs(vec![rat(0), rat_frac(-1, 2), rat_frac(1, 2)])
        );
        // C(-2, 3) = -C(4, 3)
        assert_eq!(binomial_poly(3).eval_int(-2), rat(-4));
    }

    #[test]
    fn binomial_poly_matches_integer_binomials() {
        for k in 0..8usize {
            let p = binomial_poly(k);
            for q in 0..=k as u64 + 3 {
                assert_eq!(p.eval_int(q as i64), Rational::from_integer(binomial(q, k as u64)));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p = QPolynomial::from_ints(&[0, -1, 1]);
        assert_eq!(p.eval_int(3), rat(6));
        assert_eq!(QPolynomial::zero().eval(&rat_frac(5, 7)), rat(0));
        assert_eq!(binomial_poly(2).eval_int(-1), rat(1));
    }

    #[test]
    fn interpolate_examples() {
        let pts = [(0, rat(0)), (1, rat(0)), (2, rat(2)), (3, rat(6))];
        assert_eq!(QPolynomial::interpolate(&pts).unwrap(), QPolynomial::from_ints(&[0, -1, 1]));
        assert_eq!(QPolynomial::interpolate(&[(5, rat(1))]).unwrap(), QPolynomial::one());
        let pts: Vec<_> = (0..5).map(|i| (i, rat(1 << i))).collect();
        let expected = QPolynomial::from_ints(&[24, 14, 11, -2, 1]).scale(&rat_frac(1, 24));
        let got = QPolynomial::interpolate(&pts).unwrap();
        assert_eq!(got, expected);
        // agrees at the nodes, disagrees with 2^q beyond them
        assert_eq!(got.eval_int(5), rat(31));
    }

    #[test]
    fn interpolate_errors() {
        assert_eq!(QPolynomial::interpolate(&[]), Err(Error::NoPoints));
        assert_eq!(
            QPolynomial::interpolate(&[(1, rat(0)), (1, rat(2))]),
            Err(Error::DuplicateAbscissa(1))
        );
    }

    #[test]
    fn display_and_factored() {
        assert_eq!(QPolynomial::from_ints(&[1, -2, 1]).to_string(), "q^2-2q+1");
        assert_eq!(QPolynomial::one().to_string(), "1");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(binomial_poly(2).to_string(), "(1/2)q^2-(1/2)q");
        let p = &(&falling_factorial(3) * &QPolynomial::q()) * &QPolynomial::q_plus(2);
        assert_eq!(p.factored_string(), "q^2(q-1)(q-2)(q+2)");
        let irreducible = QPolynomial::from_ints(&[1, 0, 1]);
        assert_eq!(irreducible.factored_string(), "(q^2+1)");
    }

    #[test]
    fn division() {
        let a = &QPolynomial::q_plus(-1) * &QPolynomial::q_plus(3);
        assert_eq!(a.div_exact(&QPolynomial::q_plus(3)).unwrap(), QPolynomial::q_plus(-1));
        assert!(a.div_exact(&QPolynomial::q_plus(2)).is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = binomial_poly(3);
        let j = p.to_json();
        assert_eq!(j.coeffs, vec!["0/1", "1/3", "-1/2", "1/6"]);
        assert_eq!(QPolynomial::from_json(&j).unwrap(), p);
    }
}
