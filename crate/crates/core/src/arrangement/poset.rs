//! Intersection posets, Möbius values and finite-field point counts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::linalg::{is_prime, rank_mod_p, residue, RowSpace};
use super::Arrangement;
use crate::error::{Error, Result};
use crate::qseries::{QPolynomial, Rational};

/// Point loops larger than this are refused.
pub const MAX_POINTS: u128 = 500_000_000;

/// Set of arrangement members, one bit per member.
type MemberSet = Vec<u64>;

fn has(set: &MemberSet, i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn is_proper_subset(a: &MemberSet, b: &MemberSet) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x & y == *x)
}

/// An intersection of members, identified by the members containing it.
#[derive(Clone, Debug)]
pub struct Flat {
    /// Canonical basis of the defining equations.
    pub rows: Vec<Vec<BigInt>>,
    pub dim: usize,
    pub mobius: BigInt,
    members: MemberSet,
}

impl Flat {
    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    /// Indices of the arrangement members containing this flat.
    pub fn containing_members(&self) -> Vec<usize> {
        (0..self.members.len() * 64).filter(|&i| has(&self.members, i)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    n: usize,
    /// Sorted by codimension; index 0 is `R^n`.
    flats: Vec<Flat>,
    /// `(flat, member, flat ∧ member)` for every member not containing the flat.
    joins: Vec<(usize, usize, usize)>,
}

impl IntersectionPoset {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// `X ≤ Y` in reverse inclusion, i.e. `X ⊇ Y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || is_proper_subset(&self.flats[x].members, &self.flats[y].members)
    }

    /// `χ(q) = Σ_X μ(R^n, X) q^{dim X}`.
    pub fn characteristic_polynomial(&self) -> QPolynomial {
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for f in &self.flats {
            coeffs[f.dim] += Rational::from_integer(f.mobius.clone());
        }
        QPolynomial::from_coeffs(coeffs)
    }

    /// Checks that every member subsystem keeps its rational rank mod `p`,
    /// so that the lattice over `F_p` is the same as over `Q`.
    pub fn check_good_prime(&self, a: &Arrangement, p: u64) -> Result<()> {
        let system = |members: &MemberSet, extra: Option<usize>| -> Vec<Vec<BigInt>> {
            a.subspaces()
                .iter()
                .enumerate()
                .filter(|(i, _)| has(members, *i) || Some(*i) == extra)
                .flat_map(|(_, s)| s.rows().iter().cloned())
                .collect()
        };
        let describe = |rows: &[Vec<BigInt>]| -> String {
            rows.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join(", ")
        };
        for f in &self.flats {
            let sys = system(&f.members, None);
            let r = rank_mod_p(&sys, p);
            if r != f.codim() {
                return Err(Error::BadPrime {
                    p,
                    detail: format!("system [{}] has rank {} over Q but {r} mod {p}", describe(&sys), f.codim()),
                });
            }
        }
        for &(x, h, y) in &self.joins {
            let sys = system(&self.flats[x].members, Some(h));
            let r = rank_mod_p(&sys, p);
            if r != self.flats[y].codim() {
                return Err(Error::BadPrime {
                    p,
                    detail: format!(
                        "system [{}] has rank {} over Q but {r} mod {p}",
                        describe(&sys),
                        self.flats[y].codim()
                    ),
                });
            }
        }
        Ok(())
    }
}

/// All intersections of members, closed from `R^n` by intersecting with one
/// member at a time; Möbius values by `μ(X) = −Σ_{Y<X} μ(Y)`.
pub fn intersection_poset(a: &Arrangement) -> IntersectionPoset {
    let n = a.n();
    let subs = a.subspaces();
    let words = subs.len().div_ceil(64).max(1);
    let mut flats = vec![Flat { rows: Vec::new(), dim: n, mobius: BigInt::one(), members: vec![0; words] }];
    let mut index: HashMap<Vec<Vec<BigInt>>, usize> = HashMap::new();
    index.insert(Vec::new(), 0);
    let mut joins = Vec::new();
    let mut next = 0;
    while next < flats.len() {
        let base = RowSpace::from_rows(n, &flats[next].rows);
        for (h, s) in subs.iter().enumerate() {
            if has(&flats[next].members, h) {
                continue;
            }
            let mut space = base.clone();
            for r in s.rows() {
                space.insert(r);
            }
            let rows = space.canonical_rows();
            let target = match index.get(&rows) {
                Some(&t) => t,
                None => {
                    let mut members = vec![0u64; words];
                    for (k, t) in subs.iter().enumerate() {
                        if t.rows().iter().all(|r| space.contains(r)) {
                            members[k / 64] |= 1 << (k % 64);
                        }
                    }
                    let dim = n - rows.len();
                    index.insert(rows.clone(), flats.len());
                    flats.push(Flat { rows, dim, mobius: BigInt::zero(), members });
                    flats.len() - 1
                }
            };
            joins.push((next, h, target));
        }
        next += 1;
    }
    // sort by codimension, keeping discovery order within a rank
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by_key(|&i| (flats[i].codim(), i));
    let mut position = vec![0; flats.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut flats: Vec<Flat> = order.iter().map(|&i| flats[i].clone()).collect();
    let joins = joins.into_iter().map(|(x, h, y)| (position[x], h, position[y])).collect();
    for x in 1..flats.len() {
        let mut sum = BigInt::zero();
        for y in 0..x {
            if is_proper_subset(&flats[y].members, &flats[x].members) {
                sum += &flats[y].mobius;
            }
        }
        flats[x].mobius = -sum;
    }
    IntersectionPoset { n, flats, joins }
}

pub fn characteristic_polynomial(a: &Arrangement) -> QPolynomial {
    intersection_poset(a).characteristic_polynomial()
}

/// `#(F_p^n ∖ ⋃ H)`, refused unless `p` is a good prime for `a`.
pub fn count_complement(a: &Arrangement, p: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::BadPrime { p, detail: "not a prime".into() });
    }
    let n = a.n();
    let total = (p as u128).checked_pow(n as u32).filter(|&t| t <= MAX_POINTS).ok_or(Error::Budget {
        estimate: (p as f64).powi(n as i32).min(u128::MAX as f64) as u128,
        limit: MAX_POINTS,
    })?;
    intersection_poset(a).check_good_prime(a, p)?;
    let systems: Vec<Vec<Vec<u64>>> = a
        .subspaces()
        .iter()
        .map(|s| s.rows().iter().map(|r| r.iter().map(|c| residue(c, p)).collect()).collect())
        .collect();
    let count = (0..total as u64)
        .into_par_iter()
        .filter(|&idx| {
            let mut x = vec![0u64; n];
            let mut rest = idx;
            for xi in x.iter_mut() {
                *xi = rest % p;
                rest /= p;
            }
            !systems.iter().any(|rows| {
                rows.iter().all(|r| r.iter().zip(&x).fold(0u128, |acc, (&c, &v)| acc + c as u128 * v as u128) % p as u128 == 0)
            })
        })
        .count();
    Ok(count as u128)
}
