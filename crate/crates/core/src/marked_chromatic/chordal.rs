//! Closed forms for chordal graphs (via a perfect elimination ordering)
//! and Read's formula for cycles.

use num_bigint::BigInt;

use super::{enumerate_s_of_m, marked_chromatic_poly, MultiplicityVector};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::qseries::rational::factorial;
use crate::qseries::{binomial_poly, binomial_poly_shifted, falling_factorial, falling_factorial_shifted, QPolynomial, Rational};

fn require_graph(g: &Hypergraph) -> Result<()> {
    if !g.is_graph() {
        return Err(Error::Unsupported("perfect elimination orderings need a 2-uniform graph".into()));
    }
    Ok(())
}

/// Perfect elimination ordering (1-based labels, first vertex first): every
/// vertex's earlier neighbours form a clique. Maximum-cardinality search,
/// ties to the lowest label, then verified; `None` if `g` is not chordal.
pub fn find_peo(g: &Hypergraph) -> Result<Option<Vec<usize>>> {
    require_graph(g)?;
    let n = g.n();
    let nbrs: Vec<u64> = (1..=n).map(|v| g.neighbours(v)).collect();
    let mut weight = vec![0usize; n];
    let mut done = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| done >> v & 1 == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("an unnumbered vertex remains");
        order.push(v + 1);
        done |= 1 << v;
        for (u, w) in weight.iter_mut().enumerate() {
            if nbrs[v] >> u & 1 == 1 && done >> u & 1 == 0 {
                *w += 1;
            }
        }
    }
    Ok(is_peo(g, &order).then_some(order))
}

/// Checks that earlier neighbours of every vertex are pairwise adjacent.
pub fn is_peo(g: &Hypergraph, order: &[usize]) -> bool {
    let mut earlier = 0u64;
    for &v in order {
        let back = g.neighbours(v) & earlier;
        let clique = (0..g.n())
            .filter(|i| back >> i & 1 == 1)
            .all(|i| g.neighbours(i + 1) & back == back & !(1 << i));
        if !clique {
            return false;
        }
        earlier |= 1 << (v - 1);
    }
    true
}

fn peo_or_err(g: &Hypergraph) -> Result<Vec<usize>> {
    find_peo(g)?.ok_or(Error::NotChordal)
}

/// `∏_r C(q − Σ_{earlier neighbours s} m_s, m_{i_r})` along a PEO; no special
/// vertex may carry positive multiplicity.
pub fn chordal_multichromatic(g: &Hypergraph, m: &MultiplicityVector) -> Result<QPolynomial> {
    super::check_dimension(g, m)?;
    if (0..g.n()).any(|i| m.0[i] > 0 && g.is_special(i + 1)) {
        return Err(Error::Unsupported("special vertices need the marked chordal formula".into()));
    }
    let order = peo_or_err(g)?;
    let mut earlier = 0u64;
    let mut acc = QPolynomial::one();
    for &v in &order {
        let back = g.neighbours(v) & earlier;
        let used: u32 = (0..g.n()).filter(|i| back >> i & 1 == 1).map(|i| m.0[i]).sum();
        acc = &acc * &binomial_poly_shifted(-(used as i64), m.0[v - 1] as usize);
        earlier |= 1 << (v - 1);
    }
    Ok(acc)
}

/// `Σ_{λ∈S(m)} ∏_{j∈supp(m)} C(q − b_j, ℓ(λ_j)) · ℓ(λ_j)!/∏_k d_k^{λ_j}!`
/// with `b_j` the total length over earlier neighbours of `j` in a PEO.
pub fn chordal_marked_chromatic(g: &Hypergraph, m: &MultiplicityVector) -> Result<QPolynomial> {
    super::check_dimension(g, m)?;
    let order = peo_or_err(g)?;
    let mut total = QPolynomial::zero();
    for lam in enumerate_s_of_m(m, g.special()) {
        let len = lam.lengths();
        let mut earlier = 0u64;
        let mut term = QPolynomial::one();
        for &v in &order {
            let back = g.neighbours(v) & earlier;
            let b: u32 = (0..g.n()).filter(|i| back >> i & 1 == 1).map(|i| len[i]).sum();
            let l = len[v - 1];
            // C(q−b, ℓ)·ℓ! = (q−b)_ℓ
            term = &term * &falling_factorial_shifted(-(b as i64), l as usize);
            earlier |= 1 << (v - 1);
        }
        total = &total + &term.scale(&Rational::new(1.into(), lam.symmetry_factor()));
    }
    Ok(total)
}

/// The cycle `1–2–…–n–1`.
pub fn cycle_graph(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::Unsupported(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    Hypergraph::new(n, &edges, &[])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleResult {
    /// The partition-formula polynomial (always returned).
    pub poly: QPolynomial,
    /// Read's formula, when it divides out to a polynomial.
    pub read: Option<QPolynomial>,
    /// Set when Read's formula disagrees with the partition formula.
    pub diagnostic: Option<String>,
}

impl CycleResult {
    pub fn read_agrees(&self) -> bool {
        self.diagnostic.is_none()
    }
}

fn int_falling(x: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(x as i64 - i as i64))
}

/// Read's formula with falling factorials:
/// `∏_r (q)_{m_r+m_{r+1}} · Σ_k (−1)^{kn} v_k(q) ∏_i (m_i)_k / (q)_{m_i+k}`,
/// `v_k = C(q,k) − C(q,k−1)`, summed over a common denominator. This counts
/// ordered colour lists, so the result is divided by `∏ m_i!`.
pub fn read_cycle_formula(m: &MultiplicityVector) -> Option<QPolynomial> {
    let n = m.len();
    let mm = &m.0;
    let kmax = *mm.iter().min()?;
    let prefactor = (0..n).fold(QPolynomial::one(), |acc, r| {
        &acc * &falling_factorial((mm[r] + mm[(r + 1) % n]) as usize)
    });
    let denom = mm.iter().fold(QPolynomial::one(), |acc, &mi| &acc * &falling_factorial((mi + kmax) as usize));
    let mut numer = QPolynomial::zero();
    for k in 0..=kmax {
        let v = if k == 0 { QPolynomial::one() } else { &binomial_poly(k as usize) - &binomial_poly(k as usize - 1) };
        let sign = if k as usize * n % 2 == 1 { -1 } else { 1 };
        let coeff = mm.iter().fold(BigInt::from(sign), |acc, &mi| acc * int_falling(mi, k));
        // (q)_{m_i+K} / (q)_{m_i+k} = (q − m_i − k)_{K−k}
        let lift = mm.iter().fold(QPolynomial::one(), |acc, &mi| {
            &acc * &falling_factorial_shifted(-((mi + k) as i64), (kmax - k) as usize)
        });
        numer = &numer + &(&v * &lift).scale(&Rational::from_integer(coeff));
    }
    let orderings = mm.iter().fold(BigInt::from(1), |acc, &mi| acc * factorial(mi as u64));
    (&prefactor * &numer).div_exact(&denom).map(|p| p.scale(&Rational::new(1.into(), orderings)))
}

/// Multichromatic polynomial of `C_n` (no special vertices), computed by
/// the partition formula and checked against Read's formula.
pub fn cycle_multichromatic(n: usize, m: &MultiplicityVector) -> Result<CycleResult> {
    let g = cycle_graph(n)?;
    let poly = marked_chromatic_poly(&g, m)?;
    let read = read_cycle_formula(m);
    let diagnostic = match &read {
        Some(r) if *r == poly => None,
        Some(r) => Some(format!("Read's formula gives {r}, partition formula gives {poly}; returning the latter")),
        None => Some("Read's formula does not reduce to a polynomial for this m; returning the partition formula".into()),
    };
    Ok(CycleResult { poly, read, diagnostic })
}
