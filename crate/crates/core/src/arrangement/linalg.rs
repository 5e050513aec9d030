//! Exact row reduction over the rationals and rank over `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::qseries::Rational;

/// Reduced row echelon form of the row space of a set of integer rows.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(width: usize, rows: impl IntoIterator<Item = &'a Vec<BigInt>>) -> Self {
        let mut s = RowSpace::new(width);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &[BigInt]) -> Vec<Rational> {
        let mut v: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= &f * b;
                }
            }
        }
        v
    }

    /// True iff `row` lies in the row space.
    pub fn contains(&self, row: &[BigInt]) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }

    /// Adds `row`; returns whether the rank grew.
    pub fn insert(&mut self, row: &[BigInt]) -> bool {
        assert_eq!(row.len(), self.width);
        let mut v = self.reduce(row);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let lead = v[p].clone();
        v.iter_mut().for_each(|x| *x /= &lead);
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (a, b) in r.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Canonical basis: RREF rows scaled to primitive integer vectors.
    pub fn canonical_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| primitive(r)).collect()
    }
}

/// Scales a rational vector to coprime integers, keeping the sign of the
/// first nonzero entry.
fn primitive(r: &[Rational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Rank over the rationals.
pub fn rank_q(width: usize, rows: &[Vec<BigInt>]) -> usize {
    RowSpace::from_rows(width, rows).rank()
}

/// Rank of the rows reduced modulo the prime `p`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = x.mod_floor(&pb);
                    u64::try_from(v).expect("reduced value fits u64")
                })
                .collect()
        })
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        let prow: Vec<u64> = m[rank].iter().map(|&x| mulmod(x, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (a, &b) in row.iter_mut().zip(&prow) {
                    *a = (*a + p - mulmod(f, b)) % p;
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `x mod p` in `0..p`.
pub fn residue(x: &BigInt, p: u64) -> u64 {
    let v = x.mod_floor(&BigInt::from(p));
    debug_assert!(!v.is_negative());
    u64::try_from(v).expect("residue fits u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn canonical_form() {
        let r = rows(&[&[2, 4, 6], &[1, 1, 1]]);
        let s = RowSpace::from_rows(3, &r);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.canonical_rows(), rows(&[&[1, 0, -1], &[0, 1, 2]]));
        let t = RowSpace::from_rows(3, &rows(&[&[1, 0, -1], &[3, 3, 3]]));
        assert_eq!(s.canonical_rows(), t.canonical_rows());
        assert!(s.contains(&rows(&[&[3, 2, 1]])[0]));
        assert!(!s.contains(&rows(&[&[0, 0, 1]])[0]));
    }

    #[test]
    fn ranks() {
        let r = rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
        assert_eq!(rank_q(3, &r), 2);
        assert_eq!(rank_mod_p(&r, 5), 2);
        let r = rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(rank_q(2, &r), 2);
        assert_eq!(rank_mod_p(&r, 2), 1);
        assert_eq!(rank_mod_p(&r, 3), 2);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(residue(&BigInt::from(-1), 7), 6);
    }
}
