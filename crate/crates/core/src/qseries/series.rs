//! Multivariate formal power series over the rationals, truncated
//! componentwise: a series with bound `M` lives in
//! `Q[[x_1..x_n]] / (x_1^{M_1+1}, ..., x_n^{M_n+1})`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{parse_fraction, to_fraction_string, Rational};
use crate::error::{Error, Result};

/// A vector `m` of nonnegative exponents, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn uniform(n: usize, v: u32) -> Self {
        ExponentVector(vec![v; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m|`, the total degree.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// 0-based indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ bound`.
    pub fn fits(&self, bound: &ExponentVector) -> bool {
        self.0.iter().zip(&bound.0).all(|(a, b)| a <= b)
    }

    /// Every exponent vector `e` with `0 ≤ e ≤ self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<ExponentVector> {
        let mut out = vec![ExponentVector::zeros(self.len())];
        for (i, &cap) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (cap as usize + 1));
            for e in &out {
                for v in 0..=cap {
                    let mut f = e.clone();
                    f.0[i] = v;
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    trunc: ExponentVector,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl TruncatedSeries {
    pub fn zero(trunc: ExponentVector) -> Self {
        TruncatedSeries { n: trunc.len(), trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: ExponentVector) -> Self {
        let mut s = Self::zero(trunc);
        s.set(ExponentVector::zeros(s.n), Rational::one());
        s
    }

    /// Builds a series from terms, silently dropping exponents beyond `trunc`.
    pub fn from_terms<I>(trunc: ExponentVector, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            if e.len() != s.n {
                return Err(Error::Dimension(format!(
                    "exponent {e} has length {}, expected {}",
                    e.len(),
                    s.n
                )));
            }
            s.add_to(e, c);
        }
        Ok(s)
    }

    /// The single variable `x_i` (0-based).
    pub fn variable(trunc: ExponentVector, i: usize) -> Self {
        let mut e = ExponentVector::zeros(trunc.len());
        e.0[i] = 1;
        let mut s = Self::zero(trunc);
        s.add_to(e, Rational::one());
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> &ExponentVector {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExponentVector::zeros(self.n))
    }

    fn set(&mut self, e: ExponentVector, c: Rational) {
        if !e.fits(&self.trunc) {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    /// Adds `c` to the coefficient at `e`; no-op past the truncation bound.
    pub fn add_to(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() || !e.fits(&self.trunc) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.n != other.n || self.trunc != other.trunc {
            return Err(Error::Dimension(format!(
                "series with n={} trunc={} vs n={} trunc={}",
                self.n, self.trunc, other.n, other.trunc
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_to(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        let mut out = Self::zero(self.trunc.clone());
        if !c.is_zero() {
            for (e, v) in &self.terms {
                out.terms.insert(e.clone(), v * c);
            }
        }
        out
    }

    /// Truncated product; exponents exceeding the bound in any coordinate are dropped.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        let mut e = vec![0u32; self.n];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for i in 0..self.n {
                    let s = ea.0[i] + eb.0[i];
                    if s > self.trunc.0[i] {
                        continue 'inner;
                    }
                    e[i] = s;
                }
                *acc.entry(ExponentVector(e.clone())).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries { n: self.n, trunc: self.trunc.clone(), terms: acc })
    }

    /// Multiplicative inverse up to truncation, by degreewise recursion:
    /// `g[e] = -(1/f0) Σ_{0 ≠ d ≤ e} f[d] g[e-d]`, visiting `e` in
    /// lexicographic order (a linear extension of the componentwise order).
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let f0 = self.constant_term();
        if f0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_f0 = f0.recip();
        let nonconst: Vec<(&ExponentVector, &Rational)> =
            self.terms.iter().filter(|(e, _)| !e.is_zero()).collect();
        let mut g: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        let mut diff = vec![0u32; self.n];
        for e in self.trunc.box_below() {
            let val = if e.is_zero() {
                inv_f0.clone()
            } else {
                let mut sum = Rational::zero();
                'terms: for (d, fd) in &nonconst {
                    for i in 0..self.n {
                        if d.0[i] > e.0[i] {
                            continue 'terms;
                        }
                        diff[i] = e.0[i] - d.0[i];
                    }
                    if let Some(gv) = g.get(&ExponentVector(diff.clone())) {
                        sum += *fd * gv;
                    }
                }
                -(sum * &inv_f0)
            };
            if !val.is_zero() {
                g.insert(e, val);
            }
        }
        Ok(TruncatedSeries { n: self.n, trunc: self.trunc.clone(), terms: g })
    }

    /// `f^q` for any integer `q` by binary exponentiation (on the inverse when `q < 0`).
    pub fn int_pow(&self, q: i64) -> Result<TruncatedSeries> {
        let mut base = if q < 0 { self.inverse()? } else { self.clone() };
        let mut e = q.unsigned_abs();
        let mut acc = Self::one(self.trunc.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitution `x_i ↦ -x_i` for every variable.
    pub fn negate_variables(&self) -> TruncatedSeries {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), if e.total() % 2 == 1 { -c } else { c.clone() }))
            .collect();
        TruncatedSeries { n: self.n, trunc: self.trunc.clone(), terms }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            n: self.n,
            trunc: self.trunc.0.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { e: e.0.clone(), c: to_fraction_string(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<TruncatedSeries> {
        if j.trunc.len() != j.n {
            return Err(Error::Dimension(format!(
                "trunc has length {}, n = {}",
                j.trunc.len(),
                j.n
            )));
        }
        let trunc = ExponentVector(j.trunc.clone());
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((ExponentVector(t.e.clone()), parse_fraction(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        for (e, _) in &terms {
            if !e.fits(&trunc) && e.len() == j.n {
                return Err(Error::Dimension(format!("term {e} exceeds truncation {trunc}")));
            }
        }
        Self::from_terms(trunc, terms)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub n: usize,
    pub trunc: Vec<u32>,
    pub terms: Vec<TermJson>,
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    to_fraction_string(c)
                } else {
                    format!("{}*{}", to_fraction_string(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
