//! Independence systems (abstract simplicial complexes) and the canonical
//! hypergraph whose edges are the minimal non-members.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{expand_set_family, labels_of, mask_of, Hypergraph, VertexMask, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::qseries::{ExponentVector, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSystem {
    n: usize,
    members: BTreeSet<VertexMask>,
}

impl IndependenceSystem {
    /// Stores the family as given; call [`IndependenceSystem::is_valid`] to check it.
    pub fn new(n: usize, members: &[Vec<usize>]) -> Result<Self> {
        if n > 20 {
            return Err(Error::InvalidSystem(format!("ground set of size {n} is too large (max 20)")));
        }
        let mut set = BTreeSet::new();
        for m in members {
            if let Some(&v) = m.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::InvalidSystem(format!("element {v} outside 1..={n}")));
            }
            set.insert(mask_of(m));
        }
        Ok(IndependenceSystem { n, members: set })
    }

    pub fn from_masks(n: usize, members: impl IntoIterator<Item = VertexMask>) -> Self {
        assert!(n <= MAX_VERTICES);
        IndependenceSystem { n, members: members.into_iter().collect() }
    }

    /// The full power set of `[n]`.
    pub fn power_set(n: usize) -> Self {
        Self::from_masks(n, 0..(1u64 << n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<VertexMask> {
        &self.members
    }

    pub fn contains(&self, set: VertexMask) -> bool {
        self.members.contains(&set)
    }

    /// Contains ∅ and is closed under removing one element (hence under all subsets).
    pub fn is_valid(&self) -> bool {
        self.members.contains(&0)
            && self.members.iter().all(|&a| {
                (0..self.n).filter(|i| a >> i & 1 == 1).all(|i| self.members.contains(&(a & !(1 << i))))
            })
    }

    /// Vertices lying in no member.
    pub fn uncovered_vertices(&self) -> Vec<usize> {
        let covered = self.members.iter().fold(0, |m, &a| m | a);
        (1..=self.n).filter(|v| covered >> (v - 1) & 1 == 0).collect()
    }

    /// Hypergraph on `[n]` whose edges are the minimal non-members; its
    /// independent sets are exactly the members. `special` is 1-based.
    pub fn to_hypergraph(&self, special: &[usize]) -> Result<Hypergraph> {
        if !self.is_valid() {
            return Err(Error::InvalidSystem("family must contain ∅ and be downward closed".into()));
        }
        let edges: Vec<VertexMask> = (1..(1u64 << self.n))
            .filter(|&a| {
                !self.members.contains(&a)
                    && (0..self.n).filter(|i| a >> i & 1 == 1).all(|i| self.members.contains(&(a & !(1 << i))))
            })
            .collect();
        if let Some(&v) = special.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::InvalidSystem(format!("special element {v} outside 1..={}", self.n)));
        }
        Hypergraph::from_masks(self.n, edges, mask_of(special))
    }

    /// `I_S(A, x) = Σ_{A∈𝒜} Π_{i∈A∖S} x_i · Π_{i∈A∩S} x_i/(1-x_i)`, truncated.
    pub fn series(&self, special: &[usize], trunc: &ExponentVector) -> Result<TruncatedSeries> {
        if !self.is_valid() {
            return Err(Error::InvalidSystem("family must contain ∅ and be downward closed".into()));
        }
        if trunc.len() != self.n {
            return Err(Error::Dimension(format!("truncation length {} vs n = {}", trunc.len(), self.n)));
        }
        let members: Vec<VertexMask> = self.members.iter().copied().collect();
        expand_set_family(&members, mask_of(special), trunc)
    }

    /// All downward-closed families on `[n]` (n ≤ 4 is cheap; n = 5 has 7581).
    pub fn enumerate_all(n: usize) -> Vec<IndependenceSystem> {
        // A downward-closed family is determined by its maximal members, an
        // antichain; enumerate antichains and close them downward.
        let subsets: Vec<VertexMask> = (0..(1u64 << n)).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<VertexMask> = Vec::new();
        fn rec(
            idx: usize,
            subsets: &[VertexMask],
            chosen: &mut Vec<VertexMask>,
            n: usize,
            out: &mut Vec<IndependenceSystem>,
        ) {
            if idx == subsets.len() {
                let mut members = BTreeSet::new();
                members.insert(0);
                for &top in chosen.iter() {
                    let mut sub = top;
                    loop {
                        members.insert(sub);
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & top;
                    }
                }
                out.push(IndependenceSystem { n, members });
                return;
            }
            rec(idx + 1, subsets, chosen, n, out);
            let s = subsets[idx];
            if s != 0 && chosen.iter().all(|&c| c & s != c && c & s != s) {
                chosen.push(s);
                rec(idx + 1, subsets, chosen, n, out);
                chosen.pop();
            }
        }
        rec(0, &subsets, &mut chosen, n, &mut out);
        out
    }

    pub fn to_json(&self) -> IndependenceSystemJson {
        IndependenceSystemJson { n: self.n, members: self.members.iter().map(|&m| labels_of(m)).collect() }
    }

    pub fn from_json(j: &IndependenceSystemJson) -> Result<Self> {
        Self::new(j.n, &j.members)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IndependenceSystemJson {
    pub n: usize,
    pub members: Vec<Vec<usize>>,
}
