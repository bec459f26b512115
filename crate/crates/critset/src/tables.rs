//! Worked-example tables on the built-in reference graph.

use std::fmt::Write as _;

use critset_core::constraints::ConstraintRegistry;
use critset_core::cost::{CoefficientFn, CostSpec};
use critset_core::fixture::{self, Row, BASIC_ROWS, SAME_COMPONENT_ROWS};
use critset_core::optimize::Evaluator;
use critset_core::taint::{propagate, SeedSet};

use crate::error::Result;
use crate::report::fixed4;

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub serial: usize,
    pub seeds: Vec<String>,
    /// Same-component flag, present only for gated tables.
    pub gate: Option<bool>,
    pub soiled_nodes: usize,
    pub total_nodes: usize,
    pub soiled_measure: f64,
    /// `None` where the gate leaves the score undefined.
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: &'static str,
    pub formula: &'static str,
    pub rows: Vec<TableRow>,
}

impl Table {
    /// Best defined row; ties keep the earlier row.
    pub fn best_row(&self) -> Option<&TableRow> {
        self.rows
            .iter()
            .filter(|r| r.score.is_some())
            .fold(None, |best: Option<&TableRow>, r| match best {
                Some(b) if b.score >= r.score => Some(b),
                _ => Some(r),
            })
    }
}

fn compute(title: &'static str, formula: &'static str, spec: CostSpec, rows: &[Row], gated: bool) -> Result<Table> {
    let g = fixture::fig21();
    let registry = ConstraintRegistry::with_builtins();
    let eval = Evaluator::new(&g, spec, &registry)?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let seeds = SeedSet::from_ids(&g, row.seeds.iter().copied())?;
            let score = eval.evaluate_seeds(&seeds)?;
            Ok(TableRow {
                serial: i + 1,
                seeds: row.seeds.iter().map(|s| s.to_string()).collect(),
                gate: gated.then_some(score.gate_degree == 1.0),
                soiled_nodes: propagate(&g, &seeds).soiled_nodes.len(),
                total_nodes: g.node_count(),
                soiled_measure: score.soiled_measure,
                score: score.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        title,
        formula,
        rows,
    })
}

/// The three worked-example tables: β = 1, β = 2/n, and β = 1 gated on
/// same-component membership.
pub fn reproduce_tables() -> Result<Vec<Table>> {
    Ok(vec![
        compute(
            "Cost function with beta = 1",
            "E = S^2 + (1 - n/N)^2",
            CostSpec::basic(CoefficientFn::Constant(1.0)),
            &BASIC_ROWS,
            false,
        )?,
        compute(
            "Cost function with beta = 2/n",
            "E = S^2 + 2/n * (1 - n/N)^2",
            CostSpec::basic(CoefficientFn::OverN(2.0)),
            &BASIC_ROWS,
            false,
        )?,
        compute(
            "Cost function with the same-component gate",
            "E = S^2 + (1 - n/N)^2 AND C1",
            CostSpec::basic(CoefficientFn::Constant(1.0)).with_gate("same-component", 1.0),
            &SAME_COMPONENT_ROWS,
            true,
        )?,
    ])
}

fn fraction(num: usize, den: usize) -> String {
    if num == 0 {
        "0".to_string()
    } else {
        format!("{num}/{den}")
    }
}

pub fn render_tables(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "# {}: {}", t.title, t.formula).unwrap();
        let gated = t.rows.iter().any(|r| r.gate.is_some());
        if gated {
            writeln!(out, "serial\tseeds\tC1\tS\tclean\tE").unwrap();
        } else {
            writeln!(out, "serial\tseeds\tS\tclean\tE").unwrap();
        }
        for r in &t.rows {
            let mut cells = vec![r.serial.to_string(), r.seeds.join(",")];
            if let Some(c) = r.gate {
                cells.push(if c { "1" } else { "0" }.to_string());
            }
            cells.push(fraction(r.soiled_nodes, r.total_nodes));
            cells.push(fraction(r.total_nodes - r.soiled_nodes, r.total_nodes));
            cells.push(r.score.map_or_else(|| "-".to_string(), fixed4));
            writeln!(out, "{}", cells.join("\t")).unwrap();
        }
        if let Some(best) = t.best_row() {
            writeln!(out, "# best tabulated row: {}", best.seeds.join(",")).unwrap();
        }
    }
    out
}
