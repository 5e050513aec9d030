//! Marked `m`-clans and the marked chromatic polynomial of an arrangement.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::linalg::{is_prime, residue};
use super::{characteristic_polynomial, Arrangement, Subspace};
use crate::error::{Error, Result};
use crate::hypergraph::{labels_of, VertexMask};
use crate::marked_chromatic::{colour_choices, enumerate_s_of_m, MultiplicityVector, PartitionTuple};
use crate::qseries::{QPolynomial, Rational};

fn check_m(a: &Arrangement, m: &MultiplicityVector) -> Result<()> {
    if m.len() != a.n() {
        return Err(Error::Dimension(format!("m has length {}, arrangement lives in R^{}", m.len(), a.n())));
    }
    Ok(())
}

fn support_mask(m: &MultiplicityVector) -> VertexMask {
    m.0.iter().enumerate().filter(|(_, &v)| v > 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Arrangement on `Σ blocks[i]` coordinates `x_{ir}`: distinctness
/// hyperplanes `x_{ir} = x_{is}` inside the blocks in `distinct`, and every
/// one-per-block lift of each member supported inside the nonempty blocks.
fn lift(a: &Arrangement, blocks: &[u32], distinct: VertexMask) -> Result<Arrangement> {
    let mut offset = Vec::with_capacity(blocks.len());
    let mut dim = 0usize;
    for &b in blocks {
        offset.push(dim);
        dim += b as usize;
    }
    if dim > 64 {
        return Err(Error::Unsupported(format!("clan has {dim} coordinates (max 64)")));
    }
    let live: VertexMask = blocks.iter().enumerate().filter(|(_, &b)| b > 0).fold(0, |acc, (i, _)| acc | 1 << i);
    let mut subs = Vec::new();
    for (i, &b) in blocks.iter().enumerate() {
        if distinct >> i & 1 == 0 {
            continue;
        }
        for r in 0..b as usize {
            for s in r + 1..b as usize {
                let mut row = vec![BigInt::zero(); dim];
                row[offset[i] + r] = BigInt::from(1);
                row[offset[i] + s] = BigInt::from(-1);
                subs.push(Subspace { rows: vec![row] });
            }
        }
    }
    for h in a.subspaces() {
        let sup = h.support();
        if sup & live != sup {
            continue;
        }
        let coords: Vec<usize> = labels_of(sup).into_iter().map(|v| v - 1).collect();
        // odometer over k_i ∈ 0..blocks[i] for i ∈ supp(h)
        let mut k = vec![0u32; coords.len()];
        loop {
            let forms: Vec<super::LinearForm> = h
                .rows()
                .iter()
                .map(|r| {
                    let mut row = vec![BigInt::zero(); dim];
                    for (j, &i) in coords.iter().enumerate() {
                        row[offset[i] + k[j] as usize] = r[i].clone();
                    }
                    super::LinearForm { coeffs: row }
                })
                .collect();
            subs.push(Subspace::new(dim, &forms)?);
            let mut j = 0;
            while j < k.len() && k[j] + 1 == blocks[coords[j]] {
                k[j] = 0;
                j += 1;
            }
            if j == k.len() {
                break;
            }
            k[j] += 1;
        }
    }
    Arrangement::new(dim, subs, 0)
}

/// The `S`-marked `m`-clan: blocks of size `m_i`, distinctness inside the
/// blocks of `S ∩ supp(m)`.
pub fn clan(a: &Arrangement, special: VertexMask, m: &MultiplicityVector) -> Result<Arrangement> {
    check_m(a, m)?;
    lift(a, &m.0, special & support_mask(m))
}

/// `A(λ, m)`: blocks of size `ℓ(λ_i)`, distinctness inside every block.
pub fn clan_lambda(a: &Arrangement, lam: &PartitionTuple, m: &MultiplicityVector) -> Result<Arrangement> {
    check_m(a, m)?;
    if lam.parts.len() != a.n() || lam.parts.iter().zip(&m.0).any(|(p, &mi)| p.iter().sum::<u32>() != mi) {
        return Err(Error::Dimension("partition tuple does not match m".into()));
    }
    lift(a, &lam.lengths(), support_mask(m))
}

/// `Σ_{λ∈S(m)} χ_{A(λ,m)}(q) / ∏_i ∏_k d_k^{λ_i}!`.
pub fn marked_chromatic_arrangement(
    a: &Arrangement,
    special: VertexMask,
    m: &MultiplicityVector,
) -> Result<QPolynomial> {
    check_m(a, m)?;
    let supp = support_mask(m);
    if special & !supp != 0 {
        return Err(Error::SpecialOutsideSupport { special: labels_of(special), support: labels_of(supp) });
    }
    let mut total = QPolynomial::zero();
    for lam in enumerate_s_of_m(m, special) {
        let chi = characteristic_polynomial(&clan_lambda(a, &lam, m)?);
        total = &total + &chi.scale(&Rational::new(1.into(), lam.symmetry_factor()));
    }
    Ok(total)
}

/// Number of tuples `(C_i)_{i∈supp(m)}` of `m_i`-(multi)sets of `F_p`
/// (multisets for `i ∈ special`) such that no member `H` with
/// `supp(H) ⊆ supp(m)` has a point with every `x_i` in the support of `C_i`.
pub fn brute_force_arrangement_count(
    a: &Arrangement,
    special: VertexMask,
    m: &MultiplicityVector,
    p: u64,
) -> Result<u128> {
    check_m(a, m)?;
    if !is_prime(p) || p > 63 {
        return Err(Error::BadPrime { p, detail: "brute force needs a prime below 64".into() });
    }
    let supp = support_mask(m);
    let verts: Vec<usize> = labels_of(supp).into_iter().map(|v| v - 1).collect();
    let choices: Vec<Vec<(u64, u128)>> =
        verts.iter().map(|&i| colour_choices(m.0[i], p as u32, special >> i & 1 == 1)).collect();
    // active members grouped by the position (in `verts`) of their last coordinate
    let mut checks: Vec<Vec<(Vec<usize>, Vec<Vec<u64>>)>> = vec![Vec::new(); verts.len()];
    for h in a.subspaces() {
        let sup = h.support();
        if sup & supp != sup {
            continue;
        }
        let coords: Vec<usize> = labels_of(sup).into_iter().map(|v| v - 1).collect();
        let last = verts.iter().position(|&v| v == *coords.last().expect("nonzero subspace")).expect("in support");
        let pos: Vec<usize> = coords.iter().map(|c| verts.iter().position(|v| v == c).expect("in support")).collect();
        let rows = h.rows().iter().map(|r| coords.iter().map(|&c| residue(&r[c], p)).collect()).collect();
        checks[last].push((pos, rows));
    }

    fn hits(pos: &[usize], rows: &[Vec<u64>], colours: &[u64], p: u64) -> bool {
        let options: Vec<Vec<u64>> =
            pos.iter().map(|&i| (0..p).filter(|c| colours[i] >> c & 1 == 1).collect()).collect();
        let mut idx = vec![0usize; pos.len()];
        loop {
            let zero = rows.iter().all(|r| {
                r.iter().zip(&idx).zip(&options).fold(0u64, |acc, ((&c, &j), o)| (acc + c * o[j]) % p) == 0
            });
            if zero {
                return true;
            }
            let mut t = 0;
            while t < idx.len() && idx[t] + 1 == options[t].len() {
                idx[t] = 0;
                t += 1;
            }
            if t == idx.len() {
                return false;
            }
            idx[t] += 1;
        }
    }

    fn rec(
        v: usize,
        colours: &mut Vec<u64>,
        choices: &[Vec<(u64, u128)>],
        checks: &[Vec<(Vec<usize>, Vec<Vec<u64>>)>],
        p: u64,
    ) -> u128 {
        if v == choices.len() {
            return 1;
        }
        let mut total = 0;
        for &(mask, w) in &choices[v] {
            colours.push(mask);
            if !checks[v].iter().any(|(pos, rows)| hits(pos, rows, colours, p)) {
                total += w * rec(v + 1, colours, choices, checks, p);
            }
            colours.pop();
        }
        total
    }

    if verts.is_empty() {
        return Ok(1);
    }
    Ok(choices[0]
        .par_iter()
        .map(|&(mask, w)| {
            let mut colours = vec![mask];
            if checks[0].iter().any(|(pos, rows)| hits(pos, rows, &colours, p)) {
                return 0;
            }
            w * rec(1, &mut colours, &choices, &checks, p)
        })
        .sum())
}

/// The colouring condition read literally: `x_j ∈ C_j` for every `j ∈ [n]`,
/// which no point satisfies once some `m_j = 0`, so every tuple counts.
pub fn brute_force_arrangement_count_literal(
    a: &Arrangement,
    special: VertexMask,
    m: &MultiplicityVector,
    p: u64,
) -> Result<u128> {
    check_m(a, m)?;
    if m.0.iter().all(|&v| v > 0) {
        return brute_force_arrangement_count(a, special, m, p);
    }
    if !is_prime(p) || p > 63 {
        return Err(Error::BadPrime { p, detail: "brute force needs a prime below 64".into() });
    }
    Ok(m.0
        .iter()
        .enumerate()
        .map(|(i, &mi)| colour_choices(mi, p as u32, special >> i & 1 == 1).iter().map(|c| c.1).sum::<u128>())
        .product())
}
