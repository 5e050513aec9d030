//! Marked chromatic polynomials of hypergraphs.
//!
//! Routes: direct colour counting ([`brute_force_count`]), the
//! multiset-partition formula ([`marked_chromatic_poly`]), blow-up to ordinary
//! chromatic polynomials ([`chromatic_via_blowup`]) and closed forms for
//! chordal graphs and cycles ([`chordal`]). [`coefficient_via_binomial`] is the
//! same count phrased over an independence system.

mod blowup;
pub mod chordal;
mod partitions;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IndependenceSystem, VertexMask};
use crate::qseries::{binomial_poly, ExponentVector, QPolynomial, QPolynomialJson, Rational};

pub use blowup::{blow_up, BlowUp};
pub use chordal::{
    chordal_marked_chromatic, chordal_multichromatic, cycle_graph, cycle_multichromatic, find_peo, CycleResult,
};
pub use partitions::{enumerate_s_of_m, partitions, PartitionTuple};

/// Multiplicity vector: entry `i` is `m_{i+1}`.
pub type MultiplicityVector = ExponentVector;

/// Box sizes `∏(m_i+1)` above this are refused by the table-based counters.
pub const MAX_BOX: u128 = 1 << 24;

/// Which route produced a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Partition,
    Blowup,
    Chordal,
    Brute,
}

/// JSON shape shared by all chromatic outputs.
#[derive(Clone, Debug, Serialize)]
pub struct ChromaticReport {
    pub method: Method,
    pub m: Vec<u32>,
    #[serde(flatten)]
    pub polynomial: QPolynomialJson,
}

impl ChromaticReport {
    pub fn new(method: Method, m: &MultiplicityVector, p: &QPolynomial) -> Self {
        ChromaticReport { method, m: m.0.clone(), polynomial: p.to_json() }
    }
}

fn check_dimension(g: &Hypergraph, m: &MultiplicityVector) -> Result<()> {
    if m.len() != g.n() {
        return Err(Error::Dimension(format!("m has length {}, hypergraph has {} vertices", m.len(), g.n())));
    }
    Ok(())
}

/// Possible colour (multi)sets of size `k` from `q` colours, grouped by
/// underlying colour set: `(mask, number of multisets with that support)`.
pub(crate) fn colour_choices(k: u32, q: u32, repeat: bool) -> Vec<(u64, u128)> {
    let mut acc: BTreeMap<u64, u128> = BTreeMap::new();
    // nondecreasing (repeat) or increasing colour sequences of length k
    fn rec(left: u32, from: u32, q: u32, repeat: bool, mask: u64, acc: &mut BTreeMap<u64, u128>) {
        if left == 0 {
            *acc.entry(mask).or_insert(0) += 1;
            return;
        }
        for c in from..q {
            let next = if repeat { c } else { c + 1 };
            rec(left - 1, next, q, repeat, mask | 1 << c, acc);
        }
    }
    rec(k, 0, q, repeat, 0, &mut acc);
    acc.into_iter().collect()
}

/// Number of marked multi-colourings of `g` with multiplicities `m` using
/// colours `1..=q`: every vertex gets `m_v` colours (a multiset if special,
/// a set otherwise) and no edge has a colour common to all its vertices.
pub fn brute_force_count(g: &Hypergraph, m: &MultiplicityVector, q: u32) -> Result<u128> {
    check_dimension(g, m)?;
    if q > 63 {
        return Err(Error::Unsupported(format!("brute force limited to 63 colours, got {q}")));
    }
    let n = g.n();
    let choices: Vec<Vec<(u64, u128)>> =
        (0..n).map(|i| colour_choices(m.0[i], q, g.special() >> i & 1 == 1)).collect();
    let mut by_max: Vec<Vec<VertexMask>> = vec![Vec::new(); n];
    for &e in g.edges() {
        by_max[63 - e.leading_zeros() as usize].push(e);
    }
    fn rec(
        v: usize,
        colours: &mut Vec<u64>,
        choices: &[Vec<(u64, u128)>],
        by_max: &[Vec<VertexMask>],
    ) -> u128 {
        if v == choices.len() {
            return 1;
        }
        let mut total = 0u128;
        for &(mask, weight) in &choices[v] {
            colours.push(mask);
            let ok = by_max[v].iter().all(|&e| {
                (0..=v).filter(|i| e >> i & 1 == 1).fold(u64::MAX, |acc, i| acc & colours[i]) == 0
            });
            if ok {
                total += weight * rec(v + 1, colours, choices, by_max);
            }
            colours.pop();
        }
        total
    }
    Ok(rec(0, &mut Vec::with_capacity(n), &choices, &by_max))
}

/// Mixed-radix layout of the box `{s : 0 ≤ s ≤ m}`.
struct BoxIndex {
    bound: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl BoxIndex {
    fn new(m: &[u32]) -> Result<Self> {
        let mut strides = Vec::with_capacity(m.len());
        let mut size: u128 = 1;
        for &mi in m {
            strides.push(size as usize);
            size *= mi as u128 + 1;
            if size > MAX_BOX {
                return Err(Error::Unsupported(format!("multiplicity box exceeds {MAX_BOX} points")));
            }
        }
        Ok(BoxIndex { bound: m.to_vec(), strides, size: size as usize })
    }

    fn index(&self, s: &[u32]) -> usize {
        s.iter().zip(&self.strides).map(|(&a, &st)| a as usize * st).sum()
    }

    /// Calls `f` with the index of every point of the box `{s : 0 ≤ s ≤ limit}`.
    fn for_each_below(&self, limit: &[u32], mut f: impl FnMut(usize)) {
        let n = limit.len();
        let mut s = vec![0u32; n];
        let mut idx = 0usize;
        loop {
            f(idx);
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                if s[i] < limit[i] {
                    s[i] += 1;
                    idx += self.strides[i];
                    break;
                }
                idx -= s[i] as usize * self.strides[i];
                s[i] = 0;
                i += 1;
            }
        }
    }
}

fn binom_u128(n: u32, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// Nonempty blocks `b ≤ m` whose support is one of `supports`, with entries
/// capped at 1 outside `special`.
fn blocks_from_supports(supports: &[VertexMask], special: VertexMask, m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for &sup in supports {
        if sup == 0 || (0..m.len()).any(|i| sup >> i & 1 == 1 && m[i] == 0) || sup >> m.len() != 0 {
            continue;
        }
        let mut partial = vec![vec![0u32; m.len()]];
        for i in (0..m.len()).filter(|i| sup >> i & 1 == 1) {
            let top = if special >> i & 1 == 1 { m[i] } else { 1 };
            partial = partial
                .into_iter()
                .flat_map(|b| {
                    (1..=top).map(move |p| {
                        let mut b = b.clone();
                        b[i] = p;
                        b
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

/// `counts[k]` = number of ordered `k`-tuples of blocks summing to `m`.
///
/// Blocks are taken in their fixed list order, each with a multiplicity
/// `c`; an unordered choice with multiplicities `c_b` extends to
/// `k!/∏c_b!` ordered tuples, accumulated one block at a time as `C(k'+c, c)`.
fn ordered_block_tuples(blocks: &[Vec<u32>], m: &[u32]) -> Result<Vec<u128>> {
    let (bx, table, width) = block_tuple_table(blocks, m)?;
    let top = bx.index(m);
    Ok(table[top * width..(top + 1) * width].to_vec())
}

/// The full knapsack table: row `s` holds the counts for every `s ≤ m`.
fn block_tuple_table(blocks: &[Vec<u32>], m: &[u32]) -> Result<(BoxIndex, Vec<u128>, usize)> {
    let bx = BoxIndex::new(m)?;
    let kmax = m.iter().sum::<u32>() as usize;
    let width = kmax + 1;
    let mut table = vec![0u128; bx.size * width];
    table[0] = 1;
    for b in blocks {
        let shift = bx.index(b);
        let mut next = table.clone();
        let mut c = 1u32;
        loop {
            let limit: Option<Vec<u32>> =
                bx.bound.iter().zip(b).map(|(&mi, &bi)| mi.checked_sub(c * bi)).collect();
            let Some(limit) = limit else { break };
            let offset = c as usize * shift;
            bx.for_each_below(&limit, |s| {
                for k in 0..width - c as usize {
                    let v = table[s * width + k];
                    if v != 0 {
                        let add = v
                            .checked_mul(binom_u128(k as u32 + c, c))
                            .expect("ordered tuple count overflows u128");
                        let slot = &mut next[(s + offset) * width + k + c as usize];
                        *slot = slot.checked_add(add).expect("ordered tuple count overflows u128");
                    }
                }
            });
            c += 1;
        }
        table = next;
    }
    Ok((bx, table, width))
}

/// One polynomial per point `s ≤ bound`, in lexicographic order of `s`.
fn polys_below(blocks: &[Vec<u32>], bound: &[u32]) -> Result<Vec<(MultiplicityVector, QPolynomial)>> {
    let (bx, table, width) = block_tuple_table(blocks, bound)?;
    let mut out: Vec<(MultiplicityVector, QPolynomial)> = Vec::with_capacity(bx.size);
    let basis: Vec<QPolynomial> = (0..width).map(binomial_poly).collect();
    let mut s = vec![0u32; bound.len()];
    loop {
        let idx = bx.index(&s);
        let poly = table[idx * width..(idx + 1) * width]
            .iter()
            .zip(&basis)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, b)| b.scale(&Rational::from_integer(BigInt::from(c))))
            .sum();
        out.push((ExponentVector(s.clone()), poly));
        // odometer with the last coordinate fastest gives lexicographic order
        let mut i = bound.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if s[i] < bound[i] {
                s[i] += 1;
                break;
            }
            s[i] = 0;
        }
    }
}

/// `Π_{G,m}(q)` for every `m ≤ bound`, sharing one table.
pub fn marked_chromatic_polys_below(
    g: &Hypergraph,
    bound: &MultiplicityVector,
) -> Result<Vec<(MultiplicityVector, QPolynomial)>> {
    check_dimension(g, bound)?;
    polys_below(&blocks_from_supports(&g.independent_sets(), g.special(), &bound.0), &bound.0)
}

fn pk_counts(g: &Hypergraph, m: &MultiplicityVector) -> Result<Vec<u128>> {
    check_dimension(g, m)?;
    let blocks = blocks_from_supports(&g.independent_sets(), g.special(), &m.0);
    ordered_block_tuples(&blocks, &m.0)
}

/// `|P_k^mult(G, m)|`: ordered `k`-tuples of nonempty marked-independent
/// multisets whose multiset union is `m`.
pub fn count_pk_mult(g: &Hypergraph, m: &MultiplicityVector, k: usize) -> Result<u128> {
    let counts = pk_counts(g, m)?;
    Ok(counts.get(k).copied().unwrap_or(0))
}

/// Debug path for [`count_pk_mult`]: builds the ordered tuples one position
/// at a time without any symmetry bookkeeping.
pub fn count_pk_mult_ordered(g: &Hypergraph, m: &MultiplicityVector, k: usize) -> Result<u128> {
    check_dimension(g, m)?;
    let blocks = blocks_from_supports(&g.independent_sets(), g.special(), &m.0);
    fn rec(rest: &mut Vec<u32>, k: usize, blocks: &[Vec<u32>]) -> u128 {
        if k == 0 {
            return rest.iter().all(|&r| r == 0) as u128;
        }
        let mut total = 0;
        for b in blocks {
            if b.iter().zip(rest.iter()).all(|(x, y)| x <= y) {
                rest.iter_mut().zip(b).for_each(|(r, x)| *r -= x);
                total += rec(rest, k - 1, blocks);
                rest.iter_mut().zip(b).for_each(|(r, x)| *r += x);
            }
        }
        total
    }
    Ok(rec(&mut m.0.clone(), k, &blocks))
}

fn binomial_sum(counts: &[u128]) -> QPolynomial {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| binomial_poly(k).scale(&Rational::from_integer(BigInt::from(c))))
        .sum()
}

/// `Σ_k |P_k^mult(G, m)| · C(q, k)`.
pub fn marked_chromatic_poly(g: &Hypergraph, m: &MultiplicityVector) -> Result<QPolynomial> {
    Ok(binomial_sum(&pk_counts(g, m)?))
}

/// Ordinary chromatic polynomial: all multiplicities 1, no special vertices.
pub fn ordinary_chromatic_poly(g: &Hypergraph) -> QPolynomial {
    marked_chromatic_poly(&g.with_special(0), &ExponentVector::uniform(g.n(), 1))
        .expect("dimensions agree by construction")
}

/// `Σ_{λ∈S(m)} Π_{G(s(λ),m)}(q) / ∏_i ∏_k d_k^{λ_i}!`.
pub fn chromatic_via_blowup(g: &Hypergraph, m: &MultiplicityVector) -> Result<QPolynomial> {
    check_dimension(g, m)?;
    let mut total = QPolynomial::zero();
    for lam in enumerate_s_of_m(m, g.special()) {
        let b = blow_up(g, &lam, m)?;
        let p = ordinary_chromatic_poly(&b.graph);
        total = &total + &p.scale(&Rational::new(1.into(), lam.symmetry_factor()));
    }
    Ok(total)
}

/// Coefficient of `x^m` in `I_S(A, x)^q` as `Σ_k C(q,k)|P_k^S(A, m)|`, where
/// `P_k^S` are ordered tuples of nonempty multisets with underlying set in
/// `A`, elements outside `S` used at most once per block. `special` is 1-based.
pub fn coefficient_via_binomial(
    a: &IndependenceSystem,
    special: &[usize],
    m: &MultiplicityVector,
) -> Result<QPolynomial> {
    if !a.is_valid() {
        return Err(Error::InvalidSystem("family must contain ∅ and be downward closed".into()));
    }
    if m.len() != a.n() {
        return Err(Error::Dimension(format!("m has length {}, system has ground set of size {}", m.len(), a.n())));
    }
    let members: Vec<VertexMask> = a.members().iter().copied().collect();
    let blocks = blocks_from_supports(&members, crate::hypergraph::mask_of(special), &m.0);
    Ok(binomial_sum(&ordered_block_tuples(&blocks, &m.0)?))
}

/// [`coefficient_via_binomial`] for every `m ≤ bound`.
pub fn coefficients_via_binomial_below(
    a: &IndependenceSystem,
    special: &[usize],
    bound: &MultiplicityVector,
) -> Result<Vec<(MultiplicityVector, QPolynomial)>> {
    let zero = ExponentVector(vec![0; bound.len()]);
    coefficient_via_binomial(a, special, &zero)?;
    let members: Vec<VertexMask> = a.members().iter().copied().collect();
    polys_below(&blocks_from_supports(&members, crate::hypergraph::mask_of(special), &bound.0), &bound.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{rat, rat_frac};

    pub(crate) fn worked_example() -> Hypergraph {
        Hypergraph::new(4, &[vec![1, 2, 3], vec![3, 4]], &[1]).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    /// q²(q−1)²(q²−4)/4
    pub(crate) fn worked_example_poly() -> QPolynomial {
        let q = QPolynomial::q();
        let qm1 = QPolynomial::q_plus(-1);
        let inner = &(&q * &q) - &QPolynomial::from_ints(&[4]);
        (&(&(&q * &q) * &(&qm1 * &qm1)) * &inner).scale(&rat_frac(1, 4))
    }

    #[test]
    fn brute_force_examples() {
        let edge = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        assert_eq!(brute_force_count(&edge, &ev(&[1, 1]), 3).unwrap(), 6);
        assert_eq!(brute_force_count(&worked_example(), &ev(&[2, 1, 1, 2]), 3).unwrap(), 45);
        assert_eq!(brute_force_count(&Hypergraph::edgeless(1), &ev(&[2]), 4).unwrap(), 6);
        let marked = Hypergraph::new(1, &[], &[1]).unwrap();
        assert_eq!(brute_force_count(&marked, &ev(&[2]), 4).unwrap(), 10);
        assert_eq!(brute_force_count(&edge, &ev(&[0, 0]), 0).unwrap(), 1);
    }

    #[test]
    fn pk_examples() {
        let edge = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        assert_eq!(count_pk_mult(&edge, &ev(&[1, 1]), 1).unwrap(), 0);
        assert_eq!(count_pk_mult(&edge, &ev(&[1, 1]), 2).unwrap(), 2);
        assert_eq!(count_pk_mult(&edge, &ev(&[1, 1]), 3).unwrap(), 0);
        let marked = Hypergraph::new(1, &[], &[1]).unwrap();
        assert_eq!(count_pk_mult(&marked, &ev(&[2]), 1).unwrap(), 1);
        assert_eq!(count_pk_mult(&marked, &ev(&[2]), 2).unwrap(), 1);
    }

    #[test]
    fn pk_matches_ordered_debug_path() {
        let g = worked_example();
        for m in [ev(&[2, 1, 1, 2]), ev(&[3, 0, 1, 1]), ev(&[2, 2, 2, 2])] {
            for k in 0..=m.total() as usize + 1 {
                assert_eq!(count_pk_mult(&g, &m, k).unwrap(), count_pk_mult_ordered(&g, &m, k).unwrap());
            }
        }
    }

    #[test]
    fn partition_formula_examples() {
        let p = marked_chromatic_poly(&worked_example(), &ev(&[2, 1, 1, 2])).unwrap();
        assert_eq!(p, worked_example_poly());

        let full = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        assert_eq!(marked_chromatic_poly(&full, &ev(&[1, 1, 1])).unwrap(), QPolynomial::from_ints(&[0, -1, 0, 1]));

        let edge = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        assert_eq!(marked_chromatic_poly(&edge, &ev(&[1, 1])).unwrap(), QPolynomial::from_ints(&[0, -1, 1]));
        assert_eq!(marked_chromatic_poly(&edge, &ev(&[0, 0])).unwrap(), QPolynomial::one());
        assert!(marked_chromatic_poly(&edge, &ev(&[1])).is_err());
    }

    #[test]
    fn ordinary_examples() {
        let k3 = Hypergraph::new(3, &[vec![1, 2], vec![2, 3], vec![1, 3]], &[]).unwrap();
        assert_eq!(ordinary_chromatic_poly(&k3), QPolynomial::from_ints(&[0, 2, -3, 1]));
        let full = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        assert_eq!(ordinary_chromatic_poly(&full), QPolynomial::from_ints(&[0, -1, 0, 1]));
        assert_eq!(ordinary_chromatic_poly(&Hypergraph::edgeless(2)), QPolynomial::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn blowup_route_examples() {
        let p = chromatic_via_blowup(&worked_example(), &ev(&[2, 1, 1, 2])).unwrap();
        assert_eq!(p, worked_example_poly());

        let marked = Hypergraph::new(1, &[], &[1]).unwrap();
        let p = chromatic_via_blowup(&marked, &ev(&[2])).unwrap();
        assert_eq!(p, QPolynomial::from_coeffs(vec![rat(0), rat_frac(1, 2), rat_frac(1, 2)]));
    }

    #[test]
    fn binomial_route_examples() {
        let a = IndependenceSystem::new(3, &[vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(coefficient_via_binomial(&a, &[], &ev(&[1, 0, 1])).unwrap(), QPolynomial::from_ints(&[0, -1, 1]));
        assert_eq!(coefficient_via_binomial(&a, &[], &ev(&[0, 0, 0])).unwrap(), QPolynomial::one());

        // one special element, m = 2: q + C(q, 2) = C(q+1, 2), the number of 2-multisets
        let a = IndependenceSystem::power_set(1);
        let p = coefficient_via_binomial(&a, &[1], &ev(&[2])).unwrap();
        assert_eq!(p, QPolynomial::from_coeffs(vec![rat(0), rat_frac(1, 2), rat_frac(1, 2)]));

        let bad = IndependenceSystem::new(2, &[vec![1]]).unwrap();
        assert!(coefficient_via_binomial(&bad, &[], &ev(&[1, 1])).is_err());
    }

    #[test]
    fn polynomial_matches_brute_force_on_worked_example() {
        let g = worked_example();
        let m = ev(&[2, 1, 1, 2]);
        let p = marked_chromatic_poly(&g, &m).unwrap();
        for q in 0..=6u32 {
            let b = brute_force_count(&g, &m, q).unwrap();
            assert_eq!(p.eval_int(q as i64), Rational::from_integer(BigInt::from(b)), "q = {q}");
        }
    }

    #[test]
    fn report_json_shape() {
        let r = ChromaticReport::new(Method::Partition, &ev(&[1, 1]), &QPolynomial::from_ints(&[0, -1, 1]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["method"], "partition");
        assert_eq!(v["m"], serde_json::json!([1, 1]));
        assert_eq!(v["coeffs"], serde_json::json!(["0/1", "-1/1", "1/1"]));
    }

    #[test]
    fn box_table_matches_pointwise() {
        let g = Hypergraph::new(3, &[vec![1, 2], vec![2, 3]], &[2]).unwrap();
        let all = marked_chromatic_polys_below(&g, &ExponentVector(vec![2, 2, 1])).unwrap();
        assert_eq!(all.len(), 18);
        assert!(all.windows(2).all(|w| w[0].0 < w[1].0));
        for (m, p) in &all {
            assert_eq!(p, &marked_chromatic_poly(&g, m).unwrap());
        }
        let a = IndependenceSystem::power_set(2);
        for (m, p) in coefficients_via_binomial_below(&a, &[1], &ExponentVector(vec![2, 2])).unwrap() {
            assert_eq!(p, coefficient_via_binomial(&a, &[1], &m).unwrap());
        }
    }

}
