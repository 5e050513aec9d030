//! Blow-up `G(s(λ), m)`: each vertex `i ∈ supp(m)` becomes a clique of
//! `ℓ(λ_i)` vertices and every edge inside `supp(m)` is lifted one vertex
//! per clique.

use super::{MultiplicityVector, PartitionTuple};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexMask, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    pub graph: Hypergraph,
    /// `origin[j] = (i, r)`: new vertex `j + 1` is copy `r` (1-based) of vertex `i`.
    pub origin: Vec<(usize, usize)>,
}

pub fn blow_up(g: &Hypergraph, lam: &PartitionTuple, m: &MultiplicityVector) -> Result<BlowUp> {
    if lam.parts.len() != g.n() || m.len() != g.n() {
        return Err(Error::Dimension("partition tuple, m and hypergraph must agree in length".into()));
    }
    for (i, p) in lam.parts.iter().enumerate() {
        if p.iter().sum::<u32>() != m.0[i] || (!g.is_special(i + 1) && p.iter().any(|&x| x != 1)) {
            return Err(Error::Dimension(format!("λ_{} is not admissible for m_{} = {}", i + 1, i + 1, m.0[i])));
        }
    }
    let lengths = lam.lengths();
    let total: usize = lengths.iter().map(|&l| l as usize).sum();
    if total > MAX_VERTICES {
        return Err(Error::Unsupported(format!("blow-up has {total} vertices (max {MAX_VERTICES})")));
    }
    // blocks[i] = mask of the clique replacing vertex i + 1
    let mut origin = Vec::with_capacity(total);
    let mut blocks: Vec<VertexMask> = vec![0; g.n()];
    for (i, &l) in lengths.iter().enumerate() {
        for r in 1..=l as usize {
            blocks[i] |= 1 << origin.len();
            origin.push((i + 1, r));
        }
    }
    let mut edges = Vec::new();
    for b in &blocks {
        let members: Vec<usize> = (0..64).filter(|j| b >> j & 1 == 1).collect();
        for (x, &a) in members.iter().enumerate() {
            for &c in &members[x + 1..] {
                edges.push(1u64 << a | 1 << c);
            }
        }
    }
    for &e in g.edges() {
        let verts: Vec<usize> = (0..g.n()).filter(|i| e >> i & 1 == 1).collect();
        if verts.iter().any(|&i| blocks[i] == 0) {
            continue;
        }
        let mut lifted = vec![0u64];
        for &i in &verts {
            let copies: Vec<VertexMask> = (0..64).filter(|j| blocks[i] >> j & 1 == 1).map(|j| 1u64 << j).collect();
            lifted = lifted.iter().flat_map(|&l| copies.iter().map(move |&c| l | c)).collect();
        }
        edges.extend(lifted);
    }
    let graph = Hypergraph::from_masks(total, edges, 0)?;
    Ok(BlowUp { graph, origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::mask_of;
    use crate::marked_chromatic::enumerate_s_of_m;
    use crate::qseries::ExponentVector;

    fn worked_example() -> Hypergraph {
        Hypergraph::new(4, &[vec![1, 2, 3], vec![3, 4]], &[1]).unwrap()
    }

    fn label(b: &BlowUp, i: usize, r: usize) -> usize {
        b.origin.iter().position(|&o| o == (i, r)).unwrap() + 1
    }

    #[test]
    fn worked_example_case_two() {
        let m = ExponentVector(vec![2, 1, 1, 2]);
        let lam = PartitionTuple { parts: vec![vec![1, 1], vec![1], vec![1], vec![1, 1]] };
        let b = blow_up(&worked_example(), &lam, &m).unwrap();
        assert_eq!(b.graph.n(), 6);
        let l = |i, r| label(&b, i, r);
        let mut expected: Vec<VertexMask> = vec![
            mask_of(&[l(1, 1), l(2, 1), l(3, 1)]),
            mask_of(&[l(1, 2), l(2, 1), l(3, 1)]),
            mask_of(&[l(1, 1), l(1, 2)]),
            mask_of(&[l(3, 1), l(4, 1)]),
            mask_of(&[l(3, 1), l(4, 2)]),
            mask_of(&[l(4, 1), l(4, 2)]),
        ];
        expected.sort_by_key(|&e| (e.count_ones(), e));
        assert_eq!(b.graph.edges(), &expected[..]);
    }

    #[test]
    fn worked_example_case_one() {
        let m = ExponentVector(vec![2, 1, 1, 2]);
        let lam = PartitionTuple { parts: vec![vec![2], vec![1], vec![1], vec![1, 1]] };
        let b = blow_up(&worked_example(), &lam, &m).unwrap();
        assert_eq!(b.graph.n(), 5);
        assert_eq!(b.graph.edges().len(), 4);
    }

    #[test]
    fn all_ones_is_induced_subgraph() {
        let g = Hypergraph::new(4, &[vec![1, 2, 3], vec![3, 4], vec![2, 4]], &[]).unwrap();
        let m = ExponentVector(vec![1, 1, 0, 1]);
        let lam = enumerate_s_of_m(&m, 0).pop().unwrap();
        let b = blow_up(&g, &lam, &m).unwrap();
        let induced = g.induced_subhypergraph(mask_of(&[1, 2, 4]));
        assert_eq!(b.graph, induced.graph);
    }

    #[test]
    fn rejects_inadmissible_tuple() {
        let g = worked_example();
        let m = ExponentVector(vec![2, 1, 1, 2]);
        let lam = PartitionTuple { parts: vec![vec![2], vec![1], vec![1], vec![2]] };
        assert!(blow_up(&g, &lam, &m).is_err());
    }
}
