//! Integer partitions and the tuples `λ = (λ_i)` ranging over `S(m)`.

use num_bigint::BigInt;
use num_traits::One;

use crate::hypergraph::VertexMask;
use crate::qseries::rational::factorial;
use crate::qseries::ExponentVector;

/// Partitions of `m` with weakly decreasing positive parts, in
/// reverse-lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// One partition per vertex; empty for `m_i = 0`, `(1^{m_i})` for ordinary vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTuple {
    pub parts: Vec<Vec<u32>>,
}

impl PartitionTuple {
    /// `ℓ(λ_i)` for each vertex, i.e. the vector `s(λ)`.
    pub fn lengths(&self) -> Vec<u32> {
        self.parts.iter().map(|p| p.len() as u32).collect()
    }

    pub fn total_length(&self) -> u32 {
        self.lengths().iter().sum()
    }

    /// `d_k^{λ_i}`: how many parts of `λ_i` equal `k`, as `(k, count)` pairs.
    pub fn part_multiplicities(&self, i: usize) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts[i] {
            match out.last_mut() {
                Some((k, c)) if *k == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `Π_i Π_k d_k^{λ_i}!` for vertex `i`.
    pub fn symmetry_factor_at(&self, i: usize) -> BigInt {
        self.part_multiplicities(i).iter().fold(BigInt::one(), |acc, &(_, c)| acc * factorial(c as u64))
    }

    /// `Π_{i ∈ supp(m)} Π_k d_k^{λ_i}!`.
    pub fn symmetry_factor(&self) -> BigInt {
        (0..self.parts.len()).fold(BigInt::one(), |acc, i| acc * self.symmetry_factor_at(i))
    }
}

/// All `λ ∈ S(m)`: the cartesian product of partitions over the special
/// support vertices (ascending vertex order), other vertices forced.
pub fn enumerate_s_of_m(m: &ExponentVector, special: VertexMask) -> Vec<PartitionTuple> {
    let mut out = vec![PartitionTuple { parts: Vec::with_capacity(m.len()) }];
    for (i, &mi) in m.0.iter().enumerate() {
        let choices = if mi == 0 {
            vec![Vec::new()]
        } else if special >> i & 1 == 1 {
            partitions(mi)
        } else {
            vec![vec![1; mi as usize]]
        };
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for t in &out {
            for c in &choices {
                let mut t = t.clone();
                t.parts.push(c.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}
