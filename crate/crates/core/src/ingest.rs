//! Graphs from transaction logs, where each edge weight is the normalized
//! frequency of its transaction, plus a synthetic log generator.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransactionRecord {
    pub source: String,
    pub target: String,
    pub count: u64,
}

impl TransactionRecord {
    pub fn new(source: impl Into<String>, target: impl Into<String>, count: u64) -> Self {
        TransactionRecord {
            source: source.into(),
            target: target.into(),
            count,
        }
    }
}

/// One unit-weight node per element id (sorted by id) and one edge per
/// ordered pair, weighted by its share of the total transaction count.
/// Record order does not affect the result.
pub fn build_from_log(records: &[TransactionRecord]) -> Result<Graph> {
    if records.is_empty() {
        return Err(Error::EmptyLog);
    }
    let mut ids = BTreeSet::new();
    let mut pairs: BTreeMap<(&str, &str), u64> = BTreeMap::new();
    let mut total: u64 = 0;
    for r in records {
        if r.count == 0 {
            return Err(Error::param(
                "transaction count",
                format!("{} -> {} has count 0", r.source, r.target),
            ));
        }
        ids.insert(r.source.as_str());
        ids.insert(r.target.as_str());
        let slot = pairs.entry((r.source.as_str(), r.target.as_str())).or_default();
        *slot = slot
            .checked_add(r.count)
            .ok_or_else(|| Error::param("transaction count", "overflow"))?;
        total = total
            .checked_add(r.count)
            .ok_or_else(|| Error::param("transaction count", "overflow"))?;
    }
    let mut b = GraphBuilder::new();
    for id in ids {
        b.add_node(id, 1.0)?;
    }
    let total = total as f64;
    for ((s, t), count) in pairs {
        b.add_edge(s, t, count as f64 / total)?;
    }
    b.build()
}

/// `transactions` uniformly random ordered pairs of distinct nodes drawn from
/// `n1..n<node_count>`, each with count 1.
pub fn generate_log(
    node_count: usize,
    transactions: usize,
    rng_seed: u64,
) -> Result<Vec<TransactionRecord>> {
    if node_count < 2 {
        return Err(Error::param("node count", format!("{node_count} < 2")));
    }
    if transactions < 1 {
        return Err(Error::param("transaction count", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let log = (0..transactions)
        .map(|_| {
            let s = rng.gen_range(0..node_count);
            let mut t = rng.gen_range(0..node_count - 1);
            if t >= s {
                t += 1;
            }
            TransactionRecord::new(format!("n{}", s + 1), format!("n{}", t + 1), 1)
        })
        .collect();
    Ok(log)
}
