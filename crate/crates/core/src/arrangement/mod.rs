//! Central subspace arrangements in `R^n` given by integer linear forms:
//! intersection posets, characteristic polynomials, hyper-graphical
//! arrangements, marked clans and finite-field counting oracles.

mod clan;
pub mod linalg;
mod poset;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{labels_of, mask_of, Hypergraph, VertexMask};
use crate::qseries::rational::to_integer;
use crate::qseries::QPolynomial;
use linalg::RowSpace;

pub use clan::{
    brute_force_arrangement_count, brute_force_arrangement_count_literal, clan, clan_lambda,
    marked_chromatic_arrangement,
};
pub use poset::{characteristic_polynomial, count_complement, intersection_poset, Flat, IntersectionPoset};

/// `a_1 x_1 + … + a_n x_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<BigInt>,
}

impl LinearForm {
    pub fn from_ints(c: &[i64]) -> Self {
        LinearForm { coeffs: c.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// 0-based indices of nonzero coefficients, as a mask.
    pub fn support(&self) -> VertexMask {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(0, |m, (i, _)| m | 1 << i)
    }
}

/// The common zero set of a nonempty list of forms, stored as the canonical
/// (row-reduced, primitive integer) basis of its annihilator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    rows: Vec<Vec<BigInt>>,
}

impl Subspace {
    pub fn new(n: usize, forms: &[LinearForm]) -> Result<Self> {
        if let Some(f) = forms.iter().find(|f| f.coeffs.len() != n) {
            return Err(Error::InvalidArrangement(format!(
                "form has {} coefficients in ambient dimension {n}",
                f.coeffs.len()
            )));
        }
        let space = RowSpace::from_rows(n, forms.iter().map(|f| &f.coeffs));
        if space.rank() == 0 {
            return Err(Error::InvalidArrangement("subspace equals the whole space".into()));
        }
        Ok(Subspace { rows: space.canonical_rows() })
    }

    pub fn from_int_forms(n: usize, forms: &[&[i64]]) -> Result<Self> {
        let f: Vec<LinearForm> = forms.iter().map(|c| LinearForm::from_ints(c)).collect();
        Self::new(n, &f)
    }

    /// Canonical defining rows.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.rows.iter().map(|r| LinearForm { coeffs: r.clone() }).collect()
    }

    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates appearing in some defining form (0-based mask).
    pub fn support(&self) -> VertexMask {
        self.rows.iter().fold(0, |m, r| m | LinearForm { coeffs: r.clone() }.support())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    subspaces: Vec<Subspace>,
    special: VertexMask,
}

impl Arrangement {
    /// Duplicate subspaces are dropped, keeping first occurrences.
    pub fn new(n: usize, subspaces: Vec<Subspace>, special: VertexMask) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidArrangement(format!("ambient dimension {n} exceeds 64")));
        }
        if n < 64 && special >> n != 0 {
            return Err(Error::InvalidArrangement("special node outside 1..=n".into()));
        }
        let mut out: Vec<Subspace> = Vec::with_capacity(subspaces.len());
        for s in subspaces {
            if s.rows.first().map_or(0, Vec::len) != n {
                return Err(Error::InvalidArrangement("subspace lives in a different ambient space".into()));
            }
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(Arrangement { n, subspaces: out, special })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn special(&self) -> VertexMask {
        self.special
    }

    pub fn is_hyperplane_arrangement(&self) -> bool {
        self.subspaces.iter().all(|s| s.codim() == 1)
    }

    /// Coordinate hyperplanes `x_i = 0`.
    pub fn boolean(n: usize) -> Self {
        let subs = (0..n)
            .map(|i| {
                let mut c = vec![0i64; n];
                c[i] = 1;
                Subspace::new(n, &[LinearForm::from_ints(&c)]).expect("nonzero form")
            })
            .collect();
        Arrangement::new(n, subs, 0).expect("valid by construction")
    }

    pub fn to_json(&self) -> Result<ArrangementJson> {
        let subspaces = self
            .subspaces
            .iter()
            .map(|s| {
                let forms = s
                    .rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| {
                                i64::try_from(c).map_err(|_| {
                                    Error::Unsupported(format!("coefficient {c} does not fit a JSON integer"))
                                })
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubspaceJson { forms })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ArrangementJson { n: self.n, special: labels_of(self.special), subspaces })
    }

    pub fn from_json(j: &ArrangementJson) -> Result<Self> {
        if let Some(&v) = j.special.iter().find(|&&v| v == 0 || v > j.n) {
            return Err(Error::InvalidArrangement(format!("special node {v} outside 1..={}", j.n)));
        }
        let subs = j
            .subspaces
            .iter()
            .map(|s| {
                let forms: Vec<LinearForm> = s.forms.iter().map(|f| LinearForm::from_ints(f)).collect();
                if forms.is_empty() {
                    return Err(Error::InvalidArrangement("subspace with no forms".into()));
                }
                Subspace::new(j.n, &forms)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(j.n, subs, mask_of(&j.special))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceJson {
    pub forms: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrangementJson {
    pub n: usize,
    #[serde(default)]
    pub special: Vec<usize>,
    pub subspaces: Vec<SubspaceJson>,
}

/// One subspace `x_{i_1} = … = x_{i_r}` per edge; special set copied.
pub fn graphical_arrangement(g: &Hypergraph) -> Result<Arrangement> {
    let n = g.n();
    let mut subs = Vec::with_capacity(g.edges().len());
    for e in g.edge_lists() {
        if e.len() < 2 {
            return Err(Error::InvalidHypergraph(format!("edge {e:?} has fewer than two vertices")));
        }
        let forms: Vec<LinearForm> = e
            .windows(2)
            .map(|w| {
                let mut c = vec![0i64; n];
                c[w[0] - 1] = 1;
                c[w[1] - 1] = -1;
                LinearForm::from_ints(&c)
            })
            .collect();
        subs.push(Subspace::new(n, &forms)?);
    }
    Arrangement::new(n, subs, g.special())
}

/// Number of regions of a real hyperplane arrangement, `|χ(−1)|`.
pub fn region_count(a: &Arrangement) -> Result<BigInt> {
    if !a.is_hyperplane_arrangement() {
        return Err(Error::Unsupported("region count needs a hyperplane arrangement".into()));
    }
    let chi: QPolynomial = characteristic_polynomial(a);
    Ok(to_integer(&chi.eval_int(-1)).expect("integer coefficients").abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn braid_k3() -> Arrangement {
        let subs = vec![
            Subspace::from_int_forms(3, &[&[1, -1, 0]]).unwrap(),
            Subspace::from_int_forms(3, &[&[0, 1, -1]]).unwrap(),
            Subspace::from_int_forms(3, &[&[1, 0, -1]]).unwrap(),
        ];
        Arrangement::new(3, subs, 0).unwrap()
    }

    #[test]
    fn subspace_canonical_and_dedup() {
        let a = Subspace::from_int_forms(3, &[&[1, -1, 0], &[0, 1, -1]]).unwrap();
        let b = Subspace::from_int_forms(3, &[&[2, 0, -2], &[0, 3, -3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.codim(), 2);
        assert_eq!(a.support(), 0b111);
        let arr = Arrangement::new(3, vec![a, b], 0).unwrap();
        assert_eq!(arr.subspaces().len(), 1);
        assert!(Subspace::from_int_forms(2, &[&[0, 0]]).is_err());
        assert!(Subspace::from_int_forms(2, &[&[1, 0, 0]]).is_err());
    }

    #[test]
    fn graphical_examples() {
        let g = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        let a = graphical_arrangement(&g).unwrap();
        assert_eq!(a.subspaces()[0], Subspace::from_int_forms(2, &[&[1, -1]]).unwrap());

        let g = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        let a = graphical_arrangement(&g).unwrap();
        assert_eq!(a.subspaces()[0].codim(), 2);

        let g = Hypergraph::new(5, &[vec![1, 2, 3], vec![2, 4, 5], vec![1, 4]], &[2, 3]).unwrap();
        let a = graphical_arrangement(&g).unwrap();
        let mut codims: Vec<usize> = a.subspaces().iter().map(Subspace::codim).collect();
        codims.sort();
        assert_eq!(codims, vec![1, 2, 2]);
        assert_eq!(a.special(), g.special());
    }

    #[test]
    fn json_round_trip() {
        let j: ArrangementJson =
            serde_json::from_str(r#"{"n":3,"special":[1],"subspaces":[{"forms":[[1,1,-1]]}]}"#).unwrap();
        let a = Arrangement::from_json(&j).unwrap();
        assert_eq!(a.to_json().unwrap(), j);
        let bad: ArrangementJson = serde_json::from_str(r#"{"n":2,"subspaces":[{"forms":[]}]}"#).unwrap();
        assert!(Arrangement::from_json(&bad).is_err());
    }

    #[test]
    fn regions() {
        assert_eq!(region_count(&Arrangement::boolean(2)).unwrap(), BigInt::from(4));
        let single = Arrangement::new(3, vec![Subspace::from_int_forms(3, &[&[1, 2, 3]]).unwrap()], 0).unwrap();
        assert_eq!(region_count(&single).unwrap(), BigInt::from(2));
        assert_eq!(region_count(&braid_k3()).unwrap(), BigInt::from(6));
        let line = Arrangement::new(3, vec![Subspace::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap()], 0)
            .unwrap();
        assert!(region_count(&line).is_err());
    }
}
