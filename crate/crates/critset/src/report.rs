//! TSV and JSON renderings of a [`SearchResult`].

use std::fmt::Write as _;

use critset_core::optimize::{Candidate, SearchResult};
use critset_core::Graph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestEntry {
    pub seeds: Vec<String>,
    pub n: usize,
    #[serde(rename = "S")]
    pub soiled_measure: f64,
    pub score: f64,
    pub gate_degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub seeds: Vec<String>,
    pub n: usize,
    #[serde(rename = "S")]
    pub soiled_measure: f64,
    pub clean: f64,
    pub gate_degree: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub optimizer: String,
    pub rng_seed: u64,
    pub evaluations: u64,
    pub best: BestEntry,
    pub ranked: Vec<RankedEntry>,
}

fn ids(g: &Graph, c: &Candidate) -> Vec<String> {
    c.seeds.ids(g).into_iter().map(str::to_string).collect()
}

// Search results only ever hold defined candidates.
fn value(c: &Candidate) -> f64 {
    c.score.value.expect("ranked candidates are defined")
}

impl JsonReport {
    pub fn new(g: &Graph, result: &SearchResult) -> Self {
        let best = &result.best;
        JsonReport {
            optimizer: result.optimizer.as_str().to_string(),
            rng_seed: result.rng_seed,
            evaluations: result.evaluations,
            best: BestEntry {
                seeds: ids(g, best),
                n: best.score.n,
                soiled_measure: best.score.soiled_measure,
                score: value(best),
                gate_degree: best.score.gate_degree,
            },
            ranked: result
                .ranked
                .iter()
                .enumerate()
                .map(|(i, c)| RankedEntry {
                    rank: i + 1,
                    seeds: ids(g, c),
                    n: c.score.n,
                    soiled_measure: c.score.soiled_measure,
                    clean: c.score.clean_measure(),
                    gate_degree: c.score.gate_degree,
                    score: value(c),
                })
                .collect(),
        }
    }
}

pub fn to_json(g: &Graph, result: &SearchResult) -> String {
    let mut s = serde_json::to_string_pretty(&JsonReport::new(g, result))
        .expect("report serializes");
    s.push('\n');
    s
}

/// Fixed four-decimal formatting (round half to even on the exact binary value).
pub fn fixed4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub const TSV_HEADER: &str = "rank\tseeds\tn\tS\tclean\tgate_degree\tscore";

pub fn to_tsv(g: &Graph, result: &SearchResult) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# optimizer={} rng_seed={} evaluations={}",
        result.optimizer.as_str(),
        result.rng_seed,
        result.evaluations
    )
    .unwrap();
    writeln!(out, "{TSV_HEADER}").unwrap();
    for (i, c) in result.ranked.iter().enumerate() {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            i + 1,
            c.seeds.label(g),
            c.score.n,
            fixed4(c.score.soiled_measure),
            fixed4(c.score.clean_measure()),
            fixed4(c.score.gate_degree),
            fixed4(value(c)),
        )
        .unwrap();
    }
    out
}
