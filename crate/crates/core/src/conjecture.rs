//! Sign pattern of `I(G, −x)^{-1}` over small simple hypergraphs: the odd-edge
//! obstruction and an exhaustive scan with JSON-lines reports.

use std::collections::HashSet;
use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{labels_of, Hypergraph, HypergraphJson, VertexMask};
use crate::marked_chromatic::marked_chromatic_poly;
use crate::qseries::rational::{parse_fraction, to_fraction_string};
use crate::qseries::{rat, ExponentVector, Rational};

/// Environment variable capping scan work (hypergraphs × relabellings).
pub const BUDGET_ENV: &str = "CHROMAPLEX_BUDGET";
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub nonneg: bool,
    /// Lexicographically first negative coefficient.
    pub first_negative: Option<(ExponentVector, Rational)>,
}

/// Scans `I(G, −x)^{-1}` truncated at `trunc` for negative coefficients.
pub fn inverse_nonneg_check(g: &Hypergraph, trunc: &ExponentVector) -> Result<Verdict> {
    if g.special() != 0 {
        return Err(Error::Unsupported("the sign check uses the plain independence polynomial (no special vertices)".into()));
    }
    let inv = g.independence_polynomial(trunc)?.negate_variables().inverse()?;
    let first_negative = inv.terms().find(|(_, c)| c.is_negative()).map(|(e, c)| (e.clone(), c.clone()));
    Ok(Verdict { nonneg: first_negative.is_none(), first_negative })
}

/// Recomputes one coefficient of `I(G, −x)^{-1}` as `(−1)^{|m|} Π_m(−1)`.
pub fn reverify_coefficient(g: &Hypergraph, m: &ExponentVector) -> Result<Rational> {
    let v = marked_chromatic_poly(&g.with_special(0), m)?.eval_int(-1);
    Ok(if m.total() % 2 == 1 { -v } else { v })
}

/// For the first odd edge `e` (size `r`), the coefficient of `x^{2·1_e}` in
/// `I(e, −x)^{-1}` for the hypergraph consisting of `e` alone; equals `2 + (−2)^r`.
pub fn odd_edge_witness(g: &Hypergraph) -> Option<(Vec<usize>, Rational)> {
    let &e = g.edges().iter().find(|e| e.count_ones() % 2 == 1)?;
    let r = e.count_ones() as usize;
    let single = Hypergraph::new(r, &[(1..=r).collect()], &[]).expect("one full edge");
    let at = ExponentVector::uniform(r, 2);
    let inv = single
        .independence_polynomial(&at)
        .and_then(|s| s.negate_variables().inverse())
        .expect("constant term is 1");
    Some((labels_of(e), inv.coeff(&at)))
}

/// `2 + (−2)^r`.
pub fn odd_edge_value(r: u32) -> Rational {
    rat(2) + rat(-2).pow(r as i32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanVerdict {
    pub canon: HypergraphJson,
    pub even: bool,
    pub nonneg: bool,
    pub neg_at: Option<Vec<u32>>,
    pub coeff: Option<String>,
}

impl ScanVerdict {
    pub fn key(&self) -> String {
        serde_json::to_string(&self.canon).expect("serializable")
    }

    pub fn hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::from_json(&self.canon)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub n_max: usize,
    pub trunc: u32,
    pub dedup: bool,
    #[serde(skip)]
    pub budget: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub even: usize,
    pub even_nonneg: usize,
    pub odd: usize,
    pub odd_negative: usize,
    /// Odd-edged hypergraphs whose single-edge witness differs from `2 + (−2)^r`.
    pub witness_mismatches: usize,
    /// Negative coefficients that do not re-verify through the partition formula.
    pub reverify_failures: usize,
}

impl ScanSummary {
    /// Every even hypergraph nonnegative, every odd one negative, all witnesses and re-checks consistent.
    pub fn consistent(&self) -> bool {
        self.even == self.even_nonneg
            && self.odd == self.odd_negative
            && self.witness_mismatches == 0
            && self.reverify_failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub parameters: ScanOptions,
    /// Verdicts computed in this run, in enumeration order.
    pub verdicts: Vec<ScanVerdict>,
    /// Verdicts skipped because they were already recorded.
    pub skipped: usize,
    pub summary: ScanSummary,
    pub elapsed_ms: u128,
}

/// Budget from [`BUDGET_ENV`], or [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Upper bound on antichains of subsets of `[n]` (Dedekind numbers).
const DEDEKIND: [u128; 9] = [2, 3, 6, 20, 168, 7581, 7_828_354, 2_414_682_040_998, 56_130_437_228_687_557_907_788];

/// Estimated work: Σ_{n ≤ n_max} antichains(n) × (n! relabellings when deduplicating).
pub fn scan_estimate(n_max: usize, dedup: bool) -> u128 {
    (1..=n_max)
        .map(|n| {
            let count = DEDEKIND.get(n).copied().unwrap_or(u128::MAX);
            let perms: u128 = if dedup { (1..=n as u128).product() } else { 1 };
            count.saturating_mul(perms)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// All simple hypergraphs on `[n]`: antichains of subsets of size ≥ 2.
pub fn simple_hypergraphs(n: usize) -> Vec<Vec<VertexMask>> {
    let candidates: Vec<VertexMask> = (0..(1u64 << n)).filter(|s| s.count_ones() >= 2).collect();
    let mut out = Vec::new();
    fn rec(idx: usize, cand: &[VertexMask], chosen: &mut Vec<VertexMask>, out: &mut Vec<Vec<VertexMask>>) {
        if idx == cand.len() {
            out.push(chosen.clone());
            return;
        }
        rec(idx + 1, cand, chosen, out);
        let s = cand[idx];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            rec(idx + 1, cand, chosen, out);
            chosen.pop();
        }
    }
    rec(0, &candidates, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Lexicographically least sorted edge-mask list over all relabellings.
pub fn canonical_edges(edges: &[VertexMask], perms: &[Vec<usize>]) -> Vec<VertexMask> {
    let mut best: Option<Vec<VertexMask>> = None;
    for p in perms {
        let mut mapped: Vec<VertexMask> = edges
            .iter()
            .map(|&e| (0..p.len()).filter(|i| e >> i & 1 == 1).fold(0, |m, i| m | 1 << p[i]))
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    best.unwrap_or_default()
}

fn verdict_for(g: &Hypergraph, trunc: u32) -> Result<ScanVerdict> {
    let v = inverse_nonneg_check(g, &ExponentVector::uniform(g.n(), trunc))?;
    let (neg_at, coeff) = match v.first_negative {
        Some((e, c)) => (Some(e.0), Some(to_fraction_string(&c))),
        None => (None, None),
    };
    Ok(ScanVerdict { canon: g.to_json(), even: g.validate().even, nonneg: v.nonneg, neg_at, coeff })
}

/// Accumulates the summary for a verdict, re-deriving its witness and
/// re-verifying its negative coefficient.
fn tally(summary: &mut ScanSummary, v: &ScanVerdict) -> Result<()> {
    summary.total += 1;
    if v.even {
        summary.even += 1;
        summary.even_nonneg += v.nonneg as usize;
    } else {
        summary.odd += 1;
        summary.odd_negative += (!v.nonneg) as usize;
        let g = v.hypergraph()?;
        match odd_edge_witness(&g) {
            Some((e, val)) if val == odd_edge_value(e.len() as u32) && val.is_negative() => {}
            _ => summary.witness_mismatches += 1,
        }
    }
    if let (Some(at), Some(c)) = (&v.neg_at, &v.coeff) {
        let g = v.hypergraph()?;
        let recomputed = reverify_coefficient(&g, &ExponentVector(at.clone()))?;
        if recomputed != parse_fraction(c)? || !recomputed.is_negative() {
            summary.reverify_failures += 1;
        }
    }
    Ok(())
}

/// Summary over an arbitrary verdict list (e.g. a resumed report file).
pub fn summarize(verdicts: &[ScanVerdict]) -> Result<ScanSummary> {
    let mut s = ScanSummary::default();
    for v in verdicts {
        tally(&mut s, v)?;
    }
    Ok(s)
}

/// Exhaustive scan over simple hypergraphs on `1..=n_max` vertices. Entries
/// whose key is in `recorded` are skipped; the summary covers new verdicts only.
pub fn scan_hypergraphs(opts: &ScanOptions, recorded: &HashSet<String>) -> Result<ScanReport> {
    let start = Instant::now();
    let estimate = scan_estimate(opts.n_max, opts.dedup);
    if estimate > opts.budget {
        return Err(Error::Budget { estimate, limit: opts.budget });
    }
    let mut todo: Vec<Hypergraph> = Vec::new();
    let mut skipped = 0;
    for n in 1..=opts.n_max {
        let family = simple_hypergraphs(n);
        let edge_sets: Vec<Vec<VertexMask>> = if opts.dedup {
            let perms = permutations(n);
            let canon: Vec<Vec<VertexMask>> = family.par_iter().map(|e| canonical_edges(e, &perms)).collect();
            let mut seen = HashSet::new();
            canon.into_iter().filter(|c| seen.insert(c.clone())).collect()
        } else {
            family
        };
        for edges in edge_sets {
            let g = Hypergraph::from_masks(n, edges, 0)?;
            let key = serde_json::to_string(&g.to_json())?;
            if recorded.contains(&key) {
                skipped += 1;
            } else {
                todo.push(g);
            }
        }
    }
    let verdicts: Vec<ScanVerdict> = todo.par_iter().map(|g| verdict_for(g, opts.trunc)).collect::<Result<_>>()?;
    let summary = summarize(&verdicts)?;
    Ok(ScanReport {
        parameters: opts.clone(),
        verdicts,
        skipped,
        summary,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n_max: usize, trunc: u32, dedup: bool) -> ScanOptions {
        ScanOptions { n_max, trunc, dedup, budget: DEFAULT_BUDGET }
    }

    #[test]
    fn single_edge_examples() {
        let g = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        let t = ExponentVector::uniform(3, 2);
        let v = inverse_nonneg_check(&g, &t).unwrap();
        assert!(!v.nonneg);
        let inv = g.independence_polynomial(&t).unwrap().negate_variables().inverse().unwrap();
        assert_eq!(inv.coeff(&t), rat(-6));

        let g = Hypergraph::new(2, &[vec![1, 2]], &[]).unwrap();
        assert!(inverse_nonneg_check(&g, &ExponentVector::uniform(2, 4)).unwrap().nonneg);

        let g = Hypergraph::new(4, &[vec![1, 2, 3, 4]], &[]).unwrap();
        let t = ExponentVector::uniform(4, 2);
        assert!(inverse_nonneg_check(&g, &t).unwrap().nonneg);
        let inv = g.independence_polynomial(&t).unwrap().negate_variables().inverse().unwrap();
        assert_eq!(inv.coeff(&t), rat(18));
    }

    #[test]
    fn witness_examples() {
        let fig = Hypergraph::new(5, &[vec![1, 2, 3], vec![2, 4, 5], vec![1, 4]], &[]).unwrap();
        let (e, v) = odd_edge_witness(&fig).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(v, rat(-6));
        let even = Hypergraph::new(4, &[vec![1, 2], vec![1, 2, 3, 4]], &[]).unwrap();
        assert!(odd_edge_witness(&even).is_none());
        let five = Hypergraph::new(5, &[vec![1, 2, 3, 4, 5]], &[]).unwrap();
        assert_eq!(odd_edge_witness(&five).unwrap().1, rat(-30));
        assert_eq!(odd_edge_value(5), rat(-30));
    }

    #[test]
    fn reverify_matches_series() {
        let g = Hypergraph::new(3, &[vec![1, 2, 3]], &[]).unwrap();
        assert_eq!(reverify_coefficient(&g, &ExponentVector::uniform(3, 2)).unwrap(), rat(-6));
    }

    #[test]
    fn enumeration_counts() {
        // antichains of ≥2-subsets: n=1: {∅}, n=2: ∅ or {12}, n=3: 9
        assert_eq!(simple_hypergraphs(1).len(), 1);
        assert_eq!(simple_hypergraphs(2).len(), 2);
        assert_eq!(simple_hypergraphs(3).len(), 9);
    }

    #[test]
    fn scan_small() {
        let r = scan_hypergraphs(&opts(0, 2, true), &HashSet::new()).unwrap();
        assert!(r.verdicts.is_empty());

        let r = scan_hypergraphs(&opts(3, 2, true), &HashSet::new()).unwrap();
        // up to isomorphism: n=1: 1, n=2: 2, n=3: edgeless, one 2-edge, path, triangle, 3-edge
        assert_eq!(r.verdicts.len(), 1 + 2 + 5);
        assert!(r.summary.consistent());
        for v in &r.verdicts {
            assert_eq!(v.nonneg, v.even);
        }

        let r = scan_hypergraphs(&opts(4, 2, true), &HashSet::new()).unwrap();
        assert!(r.summary.consistent(), "{:?}", r.summary);
    }

    #[test]
    fn resume_skips_recorded() {
        let first = scan_hypergraphs(&opts(3, 2, true), &HashSet::new()).unwrap();
        let recorded: HashSet<String> = first.verdicts.iter().take(4).map(ScanVerdict::key).collect();
        let second = scan_hypergraphs(&opts(3, 2, true), &recorded).unwrap();
        assert_eq!(second.skipped, 4);
        assert_eq!(second.verdicts, first.verdicts[4..].to_vec());
    }

    #[test]
    fn line_round_trip() {
        let r = scan_hypergraphs(&opts(3, 2, false), &HashSet::new()).unwrap();
        for v in &r.verdicts {
            assert_eq!(ScanVerdict::from_line(&v.to_line()).unwrap(), *v);
        }
        let neg = r.verdicts.iter().find(|v| !v.nonneg).unwrap();
        let line: serde_json::Value = serde_json::from_str(&neg.to_line()).unwrap();
        let keys: Vec<&String> = line.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 5);
        assert!(line["coeff"].as_str().unwrap().contains('/'));
    }

    #[test]
    fn budget_refusal() {
        let o = ScanOptions { n_max: 6, trunc: 2, dedup: true, budget: DEFAULT_BUDGET };
        assert!(matches!(scan_hypergraphs(&o, &HashSet::new()), Err(Error::Budget { .. })));
    }

    #[test]
    fn isomorphic_inputs_same_canon() {
        let perms = permutations(4);
        let a = canonical_edges(&[0b0011, 0b1110], &perms);
        let b = canonical_edges(&[0b1100, 0b0111], &perms);
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
