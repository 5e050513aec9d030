use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use chromaplex::arrangement::{self, Arrangement, ArrangementJson};
use chromaplex::conjecture::{self, ScanOptions, ScanVerdict};
use chromaplex::hypergraph::{mask_of, Hypergraph, HypergraphJson, IndependenceSystem, IndependenceSystemJson};
use chromaplex::marked_chromatic::{self as mc, ChromaticReport, Method};
use chromaplex::qseries::rational::to_fraction_string;
use chromaplex::qseries::{rat, ExponentVector, QPolynomial, Rational};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{ChromMethod, Format, Input};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<chromaplex::Error> for CliError {
    fn from(e: chromaplex::Error) -> Self {
        match e {
            chromaplex::Error::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), CliError>;

fn read_input<T: DeserializeOwned>(input: &Input) -> std::result::Result<T, CliError> {
    let text = match (&input.input, &input.json) {
        (Some(path), _) => {
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(CliError::Input("provide --input FILE or --json TEXT".into())),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("parse error: {e}")))
}

fn emit(fmt: Format, pretty: &str, value: &Value) {
    match fmt {
        Format::Pretty => println!("{pretty}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn multiplicities(m: &[u32], n: usize) -> std::result::Result<ExponentVector, CliError> {
    if m.len() != n {
        return Err(CliError::Input(format!("--m has {} entries, instance has {n}", m.len())));
    }
    Ok(ExponentVector(m.to_vec()))
}

fn with_value(mut v: Value, p: &QPolynomial, at: Option<i64>) -> (Value, String) {
    let mut extra = String::new();
    if let Some(q) = at {
        let val = p.eval_int(q);
        v["at"] = json!(q);
        v["value"] = json!(to_fraction_string(&val));
        extra = format!("\nvalue at q = {q}: {val}");
    }
    (v, extra)
}

fn brute_polynomial(g: &Hypergraph, m: &ExponentVector) -> std::result::Result<QPolynomial, CliError> {
    let points = (0..=m.total() as i64)
        .map(|q| Ok((q, Rational::from_integer(mc::brute_force_count(g, m, q as u32)?.into()))))
        .collect::<chromaplex::Result<Vec<_>>>()?;
    Ok(QPolynomial::interpolate(&points)?)
}

pub fn chrom(input: &Input, m: &[u32], method: ChromMethod, at: Option<i64>, verify: bool, fmt: Format) -> CliResult {
    let j: HypergraphJson = read_input(input)?;
    let g = Hypergraph::from_json(&j)?;
    let m = multiplicities(m, g.n())?;
    let (poly, tag) = match method {
        ChromMethod::Partition => (mc::marked_chromatic_poly(&g, &m)?, Method::Partition),
        ChromMethod::Blowup => (mc::chromatic_via_blowup(&g, &m)?, Method::Blowup),
        ChromMethod::Chordal => (mc::chordal_marked_chromatic(&g, &m)?, Method::Chordal),
        ChromMethod::Brute => (brute_polynomial(&g, &m)?, Method::Brute),
    };
    let report = serde_json::to_value(ChromaticReport::new(tag, &m, &poly)).expect("serializable");
    let (value, extra) = with_value(report, &poly, at);
    emit(fmt, &format!("{poly}{extra}"), &value);
    if verify {
        for q in 2..=4u32 {
            let b = mc::brute_force_count(&g, &m, q)?;
            if poly.eval_int(q as i64) != Rational::from_integer(b.into()) {
                return Err(CliError::Mismatch(format!("at q = {q}: polynomial {} vs brute force {b}", poly.eval_int(q as i64))));
            }
        }
    }
    Ok(())
}

pub fn series(input: &Input, trunc: &[u32], q: i64, fmt: Format) -> CliResult {
    let j: HypergraphJson = read_input(input)?;
    let g = Hypergraph::from_json(&j)?;
    let t = multiplicities(trunc, g.n())?;
    let s = g.marked_independence_series(&t)?.int_pow(q)?;
    emit(fmt, &s.to_string(), &serde_json::to_value(s.to_json()).expect("serializable"));
    Ok(())
}

fn read_arrangement(input: &Input) -> std::result::Result<Arrangement, CliError> {
    let j: ArrangementJson = read_input(input)?;
    Ok(Arrangement::from_json(&j)?)
}

pub fn charpoly(input: &Input, fmt: Format) -> CliResult {
    let a = read_arrangement(input)?;
    let chi = arrangement::characteristic_polynomial(&a);
    emit(fmt, &chi.to_string(), &serde_json::to_value(chi.to_json()).expect("serializable"));
    Ok(())
}

pub fn markchrom(
    input: &Input,
    m: &[u32],
    special: Option<&[usize]>,
    at: Option<i64>,
    verify_prime: Option<u64>,
    fmt: Format,
) -> CliResult {
    let a = read_arrangement(input)?;
    let m = multiplicities(m, a.n())?;
    let s = special.map_or(a.special(), mask_of);
    let poly = arrangement::marked_chromatic_arrangement(&a, s, &m)?;
    let report = serde_json::to_value(ChromaticReport::new(Method::Partition, &m, &poly)).expect("serializable");
    let (value, extra) = with_value(report, &poly, at);
    emit(fmt, &format!("{poly}{extra}"), &value);
    if let Some(p) = verify_prime {
        let b = arrangement::brute_force_arrangement_count(&a, s, &m, p)?;
        if poly.eval_int(p as i64) != Rational::from_integer(b.into()) {
            return Err(CliError::Mismatch(format!("at p = {p}: polynomial {} vs F_p count {b}", poly.eval_int(p as i64))));
        }
    }
    Ok(())
}

pub fn regions(input: &Input, fmt: Format) -> CliResult {
    let a = read_arrangement(input)?;
    let r = arrangement::region_count(&a)?;
    emit(fmt, &r.to_string(), &json!({ "regions": r.to_string() }));
    Ok(())
}

pub fn countfp(input: &Input, p: u64, fmt: Format) -> CliResult {
    let a = read_arrangement(input)?;
    let c = arrangement::count_complement(&a, p)?;
    emit(fmt, &c.to_string(), &json!({ "p": p, "count": c.to_string() }));
    Ok(())
}

pub fn clan(input: &Input, m: &[u32], special: Option<&[usize]>, fmt: Format) -> CliResult {
    let a = read_arrangement(input)?;
    let m = multiplicities(m, a.n())?;
    let s = special.map_or(a.special(), mask_of);
    let c = arrangement::clan(&a, s, &m)?;
    let j = serde_json::to_value(c.to_json()?).expect("serializable");
    emit(fmt, &serde_json::to_string(&j).expect("serializable"), &j);
    Ok(())
}

pub fn validate(input: &Input, fmt: Format) -> CliResult {
    let j: IndependenceSystemJson = read_input(input)?;
    let a = IndependenceSystem::from_json(&j)?;
    let valid = a.is_valid();
    let uncovered = a.uncovered_vertices();
    if !uncovered.is_empty() {
        eprintln!("warning: elements {uncovered:?} lie in no member");
    }
    let pretty = if valid { "valid".to_string() } else { "invalid: must contain the empty set and be downward closed".into() };
    emit(fmt, &pretty, &json!({ "valid": valid, "uncovered": uncovered }));
    if valid {
        Ok(())
    } else {
        Err(CliError::Input("invalid independence system".into()))
    }
}

pub fn tograph(input: &Input, special: &[usize], fmt: Format) -> CliResult {
    let j: IndependenceSystemJson = read_input(input)?;
    let a = IndependenceSystem::from_json(&j)?;
    let g = a.to_hypergraph(special)?;
    let out = serde_json::to_value(g.to_json()).expect("serializable");
    emit(fmt, &serde_json::to_string(&out).expect("serializable"), &out);
    Ok(())
}

pub fn scan(max_n: usize, trunc: u32, dedup: bool, output: Option<&Path>, resume: bool, fmt: Format) -> CliResult {
    let budget = conjecture::budget_from_env()?;
    let mut recorded = HashSet::new();
    if resume {
        if let Some(path) = output.filter(|p| p.exists()) {
            let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let v = ScanVerdict::from_line(line).map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))?;
                recorded.insert(v.key());
            }
        }
    }
    let opts = ScanOptions { n_max: max_n, trunc, dedup, budget };
    let report = conjecture::scan_hypergraphs(&opts, &recorded)?;
    match output {
        Some(path) => {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
            for v in &report.verdicts {
                writeln!(f, "{}", v.to_line()).map_err(|e| CliError::Input(e.to_string()))?;
            }
        }
        None => {
            for v in &report.verdicts {
                println!("{}", v.to_line());
            }
        }
    }
    let s = &report.summary;
    let summary = json!({
        "max_n": max_n, "trunc": trunc, "dedup": dedup,
        "new": s.total, "skipped": report.skipped,
        "even": s.even, "even_nonneg": s.even_nonneg,
        "odd": s.odd, "odd_negative": s.odd_negative,
        "witness_mismatches": s.witness_mismatches, "reverify_failures": s.reverify_failures,
    });
    let pretty = format!(
        "scanned {} new hypergraphs ({} skipped), truncation {trunc} per variable: even {}/{} nonnegative, odd {}/{} negative",
        s.total, report.skipped, s.even_nonneg, s.even, s.odd_negative, s.odd
    );
    match fmt {
        Format::Pretty => eprintln!("{pretty}"),
        Format::Json => eprintln!("{summary}"),
    }
    if s.consistent() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("scan summary inconsistent: {summary}")))
    }
}

fn check(name: &str, ok: bool, detail: String, results: &mut Vec<(String, bool, String)>) {
    results.push((name.to_string(), ok, detail));
}

pub fn selftest(fmt: Format) -> CliResult {
    let mut results = Vec::new();

    let g = Hypergraph::new(4, &[vec![1, 2, 3], vec![3, 4]], &[1])?;
    let m = ExponentVector(vec![2, 1, 1, 2]);
    let q = QPolynomial::q();
    let qm1 = QPolynomial::q_plus(-1);
    let expected = (&(&(&q * &q) * &(&qm1 * &qm1)) * &(&(&q * &q) - &QPolynomial::from_ints(&[4])))
        .scale(&Rational::new(1.into(), 4.into()));
    let partition = mc::marked_chromatic_poly(&g, &m)?;
    check("worked example: partition formula", partition == expected, partition.to_string(), &mut results);
    let blowup = mc::chromatic_via_blowup(&g, &m)?;
    check("worked example: blow-up sum", blowup == expected, blowup.to_string(), &mut results);
    let brute_ok = (0..=6u32).all(|q| {
        mc::brute_force_count(&g, &m, q).map(|b| expected.eval_int(q as i64) == Rational::from_integer(b.into())).unwrap_or(false)
    });
    check("worked example: brute force q=0..6", brute_ok, String::new(), &mut results);
    let series = g.marked_independence_series(&m)?;
    let series_ok = (0..=6i64).all(|q| series.int_pow(q).map(|s| s.coeff(&m) == expected.eval_int(q)).unwrap_or(false));
    check("worked example: series coefficients q=0..6", series_ok, String::new(), &mut results);

    let full = Hypergraph::new(3, &[vec![1, 2, 3]], &[])?;
    let p = mc::ordinary_chromatic_poly(&full);
    check("single 3-edge: q^3-q", p == QPolynomial::from_ints(&[0, -1, 0, 1]), p.to_string(), &mut results);

    let c4 = mc::cycle_multichromatic(4, &ExponentVector(vec![1, 1, 1, 1]))?;
    check("C4 cycle formula gate", c4.read_agrees(), c4.poly.to_string(), &mut results);

    let sum: ArrangementJson = serde_json::from_str(r#"{"n":3,"subspaces":[{"forms":[[1,1,-1]]}]}"#).expect("literal");
    let a = Arrangement::from_json(&sum)?;
    let m = ExponentVector(vec![2, 2, 1]);
    let v = arrangement::marked_chromatic_arrangement(&a, 0, &m)?.eval_int(7);
    let b = arrangement::brute_force_arrangement_count(&a, 0, &m, 7)?;
    check("x1+x2-x3, m=(2,2,1), q=7: 1470", v == rat(1470) && b == 1470, format!("{v} / {b}"), &mut results);

    let braid: ArrangementJson =
        serde_json::from_str(r#"{"n":3,"subspaces":[{"forms":[[1,-1,0]]},{"forms":[[0,1,-1]]},{"forms":[[1,0,-1]]}]}"#)
            .expect("literal");
    let r = arrangement::region_count(&Arrangement::from_json(&braid)?)?;
    check("braid K3 regions: 6", r == 6.into(), r.to_string(), &mut results);

    let w = conjecture::odd_edge_witness(&full).map(|(_, v)| v);
    check("odd edge witness r=3: -6", w == Some(rat(-6)), format!("{w:?}"), &mut results);

    let failed = results.iter().filter(|r| !r.1).count();
    match fmt {
        Format::Pretty => {
            for (name, ok, detail) in &results {
                let tag = if *ok { "PASS" } else { "FAIL" };
                if *ok || detail.is_empty() {
                    println!("{tag} {name}");
                } else {
                    println!("{tag} {name}: {detail}");
                }
            }
        }
        Format::Json => {
            let v: Vec<Value> = results.iter().map(|(n, ok, d)| json!({ "check": n, "pass": ok, "detail": d })).collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{failed} self-test check(s) failed")))
    }
}
