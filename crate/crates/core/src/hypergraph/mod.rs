//! Hypergraphs with special (repeatable) vertices, independence systems,
//! and the (marked) independence series built from them.
//!
//! Vertices are labelled `1..=n` at every public surface. Internally a
//! vertex set is a `u64` bitmask where bit `i` stands for vertex `i + 1`,
//! and exponent vectors are indexed the same way (entry `i` is vertex `i + 1`).

mod system;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{ExponentVector, Rational, TruncatedSeries};
use num_traits::One;

pub use system::{IndependenceSystem, IndependenceSystemJson};

pub type VertexMask = u64;

pub const MAX_VERTICES: usize = 64;

/// Converts 1-based labels to a bitmask.
pub fn mask_of(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | (1u64 << (v - 1)))
}

/// 1-based labels of the set bits, ascending.
pub fn labels_of(mask: VertexMask) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn full_mask(n: usize) -> VertexMask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    /// Deduplicated, ordered by (size, mask).
    edges: Vec<VertexMask>,
    special: VertexMask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    pub simple: bool,
    pub even: bool,
}

impl Hypergraph {
    /// Builds a hypergraph from 1-based edge lists and special labels.
    /// Empty edges and out-of-range labels are rejected; duplicate edges collapse.
    pub fn new(n: usize, edges: &[Vec<usize>], special: &[usize]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidHypergraph(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        let in_range = |v: usize| v >= 1 && v <= n;
        let mut masks = Vec::with_capacity(edges.len());
        for e in edges {
            if e.is_empty() {
                return Err(Error::InvalidHypergraph("empty edge".into()));
            }
            if let Some(&v) = e.iter().find(|&&v| !in_range(v)) {
                return Err(Error::InvalidHypergraph(format!("edge vertex {v} outside 1..={n}")));
            }
            masks.push(mask_of(e));
        }
        if let Some(&v) = special.iter().find(|&&v| !in_range(v)) {
            return Err(Error::InvalidHypergraph(format!("special vertex {v} outside 1..={n}")));
        }
        Self::from_masks(n, masks, mask_of(special))
    }

    pub fn from_masks(n: usize, mut edges: Vec<VertexMask>, special: VertexMask) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidHypergraph(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        let full = full_mask(n);
        if edges.contains(&0) {
            return Err(Error::InvalidHypergraph("empty edge".into()));
        }
        if edges.iter().any(|&e| e & !full != 0) || special & !full != 0 {
            return Err(Error::InvalidHypergraph(format!("vertex outside 1..={n}")));
        }
        edges.sort_by_key(|&e| (e.count_ones(), e));
        edges.dedup();
        Ok(Hypergraph { n, edges, special })
    }

    pub fn edgeless(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new(), special: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexMask] {
        &self.edges
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| labels_of(e)).collect()
    }

    pub fn special(&self) -> VertexMask {
        self.special
    }

    pub fn special_labels(&self) -> Vec<usize> {
        labels_of(self.special)
    }

    pub fn is_special(&self, v: usize) -> bool {
        self.special >> (v - 1) & 1 == 1
    }

    pub fn with_special(&self, special: VertexMask) -> Self {
        Hypergraph { n: self.n, edges: self.edges.clone(), special: special & full_mask(self.n) }
    }

    /// True when every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.count_ones() == 2)
    }

    pub fn validate(&self) -> Validation {
        let sizes_ok = self.edges.iter().all(|e| e.count_ones() >= 2);
        let antichain = self.edges.iter().enumerate().all(|(i, &a)| {
            self.edges.iter().enumerate().all(|(j, &b)| i == j || a & b != a)
        });
        Validation {
            simple: sizes_ok && antichain,
            even: self.edges.iter().all(|e| e.count_ones() % 2 == 0),
        }
    }

    /// True iff no edge lies inside `set`.
    pub fn is_independent(&self, set: VertexMask) -> bool {
        self.edges.iter().all(|&e| e & set != e)
    }

    /// All independent vertex sets, by backtracking over vertices in
    /// increasing order. A vertex is added only if it does not complete an
    /// edge whose largest vertex it is. Exponential; intended for n up to ~20.
    pub fn independent_sets(&self) -> Vec<VertexMask> {
        let mut by_max: Vec<Vec<VertexMask>> = vec![Vec::new(); self.n];
        for &e in &self.edges {
            by_max[63 - e.leading_zeros() as usize].push(e);
        }
        let mut out = Vec::new();
        fn rec(v: usize, n: usize, cur: VertexMask, by_max: &[Vec<VertexMask>], out: &mut Vec<VertexMask>) {
            if v == n {
                out.push(cur);
                return;
            }
            rec(v + 1, n, cur, by_max, out);
            let with = cur | 1 << v;
            if by_max[v].iter().all(|&e| e & with != e) {
                rec(v + 1, n, with, by_max, out);
            }
        }
        rec(0, self.n, 0, &by_max, &mut out);
        out.sort_by_key(|&s| (s.count_ones(), s));
        out
    }

    /// `Σ_{U independent} Π_{v∈U} x_v`, truncated at `trunc`.
    pub fn independence_polynomial(&self, trunc: &ExponentVector) -> Result<TruncatedSeries> {
        self.check_trunc(trunc)?;
        expand_set_family(&self.independent_sets(), 0, trunc)
    }

    /// Generating function of marked-independent multisets with multiplicities
    /// bounded by `trunc`: each independent set `S` contributes
    /// `Π_{v∈S∖V^sp} x_v · Π_{v∈S∩V^sp} (x_v + … + x_v^{M_v})`.
    pub fn marked_independence_series(&self, trunc: &ExponentVector) -> Result<TruncatedSeries> {
        self.check_trunc(trunc)?;
        expand_set_family(&self.independent_sets(), self.special, trunc)
    }

    fn check_trunc(&self, trunc: &ExponentVector) -> Result<()> {
        if trunc.len() != self.n {
            return Err(Error::Dimension(format!(
                "truncation has length {}, hypergraph has {} vertices",
                trunc.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Hypergraph induced on `subset` (1-based labels); vertices are relabelled
    /// `1..=|subset|` in increasing order of their original labels.
    pub fn induced_subhypergraph(&self, subset: VertexMask) -> InducedSubhypergraph {
        let vertices = labels_of(subset & full_mask(self.n));
        let relabel = |mask: VertexMask| -> VertexMask {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, &v)| mask >> (v - 1) & 1 == 1)
                .fold(0, |m, (i, _)| m | 1 << i)
        };
        let edges: Vec<VertexMask> =
            self.edges.iter().filter(|&&e| e & subset == e).map(|&e| relabel(e)).collect();
        let graph = Hypergraph::from_masks(vertices.len(), edges, relabel(self.special & subset))
            .expect("induced edges are nonempty and in range");
        InducedSubhypergraph { graph, vertices }
    }

    /// Neighbours of `v` (1-based) through any edge.
    pub fn neighbours(&self, v: usize) -> VertexMask {
        let bit = 1u64 << (v - 1);
        self.edges.iter().filter(|&&e| e & bit != 0).fold(0, |m, &e| m | e) & !bit
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson { n: self.n, edges: self.edge_lists(), special: self.special_labels() }
    }

    pub fn from_json(j: &HypergraphJson) -> Result<Self> {
        Self::new(j.n, &j.edges, &j.special)
    }
}

/// Expands `Σ_S Π_{v∈S}` with special vertices contributing geometric
/// factors `x_v + … + x_v^{M_v}` and ordinary vertices contributing `x_v`.
pub(crate) fn expand_set_family(
    sets: &[VertexMask],
    special: VertexMask,
    trunc: &ExponentVector,
) -> Result<TruncatedSeries> {
    let n = trunc.len();
    let mut terms: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
    for &set in sets {
        let mut partial = vec![vec![0u32; n]];
        for i in 0..n {
            if set >> i & 1 == 0 {
                continue;
            }
            let cap = trunc.0[i];
            let top = if special >> i & 1 == 1 { cap } else { cap.min(1) };
            let mut next = Vec::with_capacity(partial.len() * top as usize);
            for e in &partial {
                for p in 1..=top {
                    let mut f = e.clone();
                    f[i] = p;
                    next.push(f);
                }
            }
            partial = next;
        }
        for e in partial {
            *terms.entry(ExponentVector(e)).or_default() += Rational::one();
        }
    }
    TruncatedSeries::from_terms(trunc.clone(), terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubhypergraph {
    pub graph: Hypergraph,
    /// `vertices[i]` is the original label of new vertex `i + 1`.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default)]
    pub special: Vec<usize>,
}

/// A multiset of vertices given by multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MarkedMultiset {
    pub multiplicities: BTreeMap<usize, u32>,
}

impl MarkedMultiset {
    pub fn new(pairs: &[(usize, u32)]) -> Self {
        MarkedMultiset { multiplicities: pairs.iter().filter(|p| p.1 > 0).copied().collect() }
    }

    pub fn underlying(&self) -> VertexMask {
        self.multiplicities.keys().fold(0, |m, &v| m | 1 << (v - 1))
    }

    /// Underlying set independent and non-special vertices used at most once.
    pub fn is_marked_independent(&self, g: &Hypergraph) -> bool {
        g.is_independent(self.underlying())
            && self.multiplicities.iter().all(|(&v, &k)| k <= 1 || g.is_special(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::rat;

    pub(crate) fn figure_one() -> Hypergraph {
        Hypergraph::new(5, &[vec![1, 2, 3], vec![2, 4, 5], vec![1, 4]], &[2, 3]).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert_eq!(figure_one().validate(), Validation { simple: true, even: false });
        assert_eq!(Hypergraph::edgeless(3).validate(), Validation { simple: true, even: true });
        let g = Hypergraph::new(3, &[vec![1, 2], vec![1, 2, 3]], &[]).unwrap();
        assert!(!g.validate().simple);
        let g = Hypergraph::new(2, &[vec![1]], &[]).unwrap();
        assert!(!g.validate().simple);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Hypergraph::new(3, &[vec![]], &[]), Err(Error::InvalidHypergraph(_))));
        assert!(Hypergraph::new(3, &[vec![1, 4]], &[]).is_err());
        assert!(Hypergraph::new(3, &[vec![0, 1]], &[]).is_err());
        assert!(Hypergraph::new(3, &[], &[5]).is_err());
        let g = Hypergraph::new(3, &[vec![1, 2], vec![2, 1]], &[]).unwrap();
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn independent_set_examples() {
        let g = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        assert_eq!(g.independent_sets(), vec![0, 0b01, 0b10]);
        assert_eq!(Hypergraph::edgeless(2).independent_sets().len(), 4);
        let g = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        let sets = g.independent_sets();
        assert_eq!(sets.len(), 7);
        assert!(!sets.contains(&0b111));
    }

    #[test]
    fn singleton_edge_removes_vertex() {
        let g = Hypergraph::new(2, &[vec![2]], &[]).unwrap();
        assert_eq!(g.independent_sets(), vec![0, 0b01]);
    }

    #[test]
    fn independence_polynomial_examples() {
        let g = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        let p = g.independence_polynomial(&ev(&[1, 1])).unwrap();
        let expected = TruncatedSeries::from_terms(
            ev(&[1, 1]),
            [(ev(&[0, 0]), rat(1)), (ev(&[1, 0]), rat(1)), (ev(&[0, 1]), rat(1))],
        )
        .unwrap();
        assert_eq!(p, expected);

        // (1+x1)(1+x2)(1+x3) - x1x2x3
        let t = ev(&[2, 2, 2]);
        let g = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        let mut zeta = TruncatedSeries::one(t.clone());
        for i in 0..3 {
            let lin = TruncatedSeries::one(t.clone()).add(&TruncatedSeries::variable(t.clone(), i)).unwrap();
            zeta = zeta.mul(&lin).unwrap();
        }
        let x123 = TruncatedSeries::from_terms(t.clone(), [(ev(&[1, 1, 1]), rat(1))]).unwrap();
        assert_eq!(g.independence_polynomial(&t).unwrap(), zeta.sub(&x123).unwrap());

        let p = Hypergraph::edgeless(1).independence_polynomial(&ev(&[3])).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&ev(&[1])), rat(1));
    }

    #[test]
    fn marked_series_figure_one() {
        let g = figure_one();
        let s = g.marked_independence_series(&ev(&[3, 3, 3, 3, 3])).unwrap();
        assert_eq!(s.coeff(&ev(&[0, 3, 0, 0, 0])), rat(1));
        assert_eq!(s.coeff(&ev(&[1, 2, 0, 0, 1])), rat(1));
        // {1,2,3} is an edge, so no monomial touches all three
        assert_eq!(s.coeff(&ev(&[1, 1, 1, 0, 0])), rat(0));
        // x1 x3^2 x5 comes from x1 * x3/(1-x3) * x5
        assert_eq!(s.coeff(&ev(&[1, 0, 2, 0, 1])), rat(1));
        // {2,4,5} is an edge
        assert_eq!(s.coeff(&ev(&[0, 2, 0, 1, 1])), rat(0));
    }

    #[test]
    fn marked_series_special_isolated_vertex() {
        let g = Hypergraph::edgeless(1).with_special(1);
        let s = g.marked_independence_series(&ev(&[3])).unwrap();
        for k in 0..=3 {
            assert_eq!(s.coeff(&ev(&[k])), rat(1));
        }
    }

    #[test]
    fn marked_series_without_special_is_independence_polynomial() {
        let g = figure_one().with_special(0);
        let t = ev(&[2, 2, 2, 2, 2]);
        assert_eq!(g.marked_independence_series(&t).unwrap(), g.independence_polynomial(&t).unwrap());
    }

    #[test]
    fn induced_examples() {
        let g = figure_one();
        let sub = g.induced_subhypergraph(mask_of(&[1, 4]));
        assert_eq!(sub.graph.edge_lists(), vec![vec![1, 2]]);
        assert_eq!(sub.vertices, vec![1, 4]);
        let empty = g.induced_subhypergraph(0);
        assert_eq!(empty.graph.n(), 0);
        let sub = g.induced_subhypergraph(mask_of(&[1, 2]));
        assert_eq!(sub.graph.n(), 2);
        assert!(sub.graph.edges().is_empty());
        assert_eq!(sub.graph.special_labels(), vec![2]);
    }

    #[test]
    fn marked_multiset_checks() {
        let g = figure_one();
        assert!(MarkedMultiset::new(&[(2, 3)]).is_marked_independent(&g));
        assert!(!MarkedMultiset::new(&[(1, 2)]).is_marked_independent(&g));
        assert!(!MarkedMultiset::new(&[(1, 1), (2, 1), (3, 4)]).is_marked_independent(&g));
        assert!(MarkedMultiset::new(&[(1, 1), (2, 2), (5, 1)]).is_marked_independent(&g));
    }

    #[test]
    fn json_round_trip() {
        let g = figure_one();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"n":5,"edges":[[1,4],[1,2,3],[2,4,5]],"special":[2,3]}"#);
        let back: HypergraphJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Hypergraph::from_json(&back).unwrap(), g);
        let bad: HypergraphJson = serde_json::from_str(r#"{"n":2,"edges":[[]]}"#).unwrap();
        assert!(Hypergraph::from_json(&bad).is_err());
    }
}
