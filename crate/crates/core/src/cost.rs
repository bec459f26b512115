//! Cost functions over (soiled measure, subset size).
//!
//! The basic cost is `S² + β(n)·(1 − n/N)²`. The generalized cost adds
//! coefficient functions and penalty terms:
//! `α(n)·S² + β(n)·(γ(n) − δ(n)·n/N)² + Σ εₖ·Cₖ`. Gates are composed with
//! min (crisp gates give 0 or 1) and a score whose composed degree falls
//! below any gate threshold is undefined rather than numerically penalized.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::MeasureMode;

/// A coefficient as a function of subset size `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientFn {
    Constant(f64),
    /// `c / n`
    OverN(f64),
}

impl Default for CoefficientFn {
    fn default() -> Self {
        CoefficientFn::Constant(1.0)
    }
}

impl CoefficientFn {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            CoefficientFn::Constant(c) => c,
            CoefficientFn::OverN(c) => c / n as f64,
        }
    }
}

impl core::fmt::Display for CoefficientFn {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoefficientFn::Constant(c) => write!(f, "const {c}"),
            CoefficientFn::OverN(c) => write!(f, "inv {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Penalty {
    pub constraint: String,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub constraint: String,
    /// Minimum composed degree for a defined score, in (0, 1].
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CostSpec {
    pub alpha: CoefficientFn,
    pub beta: CoefficientFn,
    pub gamma: CoefficientFn,
    pub delta: CoefficientFn,
    pub penalties: Vec<Penalty>,
    pub gates: Vec<Gate>,
    pub measure: MeasureMode,
}

impl CostSpec {
    /// `S² + β(n)·(1 − n/N)²` with node measure.
    pub fn basic(beta: CoefficientFn) -> Self {
        CostSpec {
            beta,
            ..Self::default()
        }
    }

    pub fn with_gate(mut self, constraint: impl Into<String>, threshold: f64) -> Self {
        self.gates.push(Gate {
            constraint: constraint.into(),
            threshold,
        });
        self
    }

    pub fn with_penalty(mut self, constraint: impl Into<String>, epsilon: f64) -> Self {
        self.penalties.push(Penalty {
            constraint: constraint.into(),
            epsilon,
        });
        self
    }

    pub fn with_measure(mut self, measure: MeasureMode) -> Self {
        self.measure = measure;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for c in [&self.alpha, &self.beta, &self.gamma, &self.delta] {
            let (CoefficientFn::Constant(v) | CoefficientFn::OverN(v)) = *c;
            if !v.is_finite() {
                return Err(Error::param("coefficient", alloc::format!("{v} is not finite")));
            }
        }
        for g in &self.gates {
            if !(g.threshold > 0.0 && g.threshold <= 1.0) {
                return Err(Error::param(
                    "gate threshold",
                    alloc::format!("tau={} for `{}` outside (0, 1]", g.threshold, g.constraint),
                ));
            }
        }
        for p in &self.penalties {
            if !p.epsilon.is_finite() {
                return Err(Error::param(
                    "penalty multiplier",
                    alloc::format!("eps={} for `{}`", p.epsilon, p.constraint),
                ));
            }
        }
        Ok(())
    }
}

/// The evaluated cost of one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    /// `None` when a gate rejects the candidate.
    pub value: Option<f64>,
    pub soiled_measure: f64,
    pub n: usize,
    /// Min-composed degree over all gates; 1 when there are none.
    pub gate_degree: f64,
}

impl Score {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }

    pub fn clean_measure(&self) -> f64 {
        1.0 - self.soiled_measure
    }
}

fn check_inputs(s: f64, n: usize, total_nodes: usize) -> Result<()> {
    if n == 0 || n > total_nodes {
        return Err(Error::CardinalityOutOfRange {
            n,
            total: total_nodes,
        });
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::MeasureOutOfRange(s));
    }
    Ok(())
}

pub fn basic_cost(s: f64, n: usize, total_nodes: usize, beta: &CoefficientFn) -> Result<f64> {
    check_inputs(s, n, total_nodes)?;
    let slack = 1.0 - n as f64 / total_nodes as f64;
    Ok(s * s + beta.at(n) * (slack * slack))
}

/// `constraint_values` are aligned with `spec.penalties`.
pub fn generalized_cost(
    s: f64,
    n: usize,
    total_nodes: usize,
    spec: &CostSpec,
    constraint_values: &[f64],
) -> Result<f64> {
    check_inputs(s, n, total_nodes)?;
    if constraint_values.len() != spec.penalties.len() {
        return Err(Error::ArityMismatch {
            expected: spec.penalties.len(),
            got: constraint_values.len(),
        });
    }
    // evaluated in the same order as basic_cost so unit coefficients reduce exactly
    let slack = spec.gamma.at(n) - spec.delta.at(n) * (n as f64 / total_nodes as f64);
    let mut value = spec.alpha.at(n) * (s * s) + spec.beta.at(n) * (slack * slack);
    for (p, c) in spec.penalties.iter().zip(constraint_values) {
        value += p.epsilon * c;
    }
    Ok(value)
}

/// Min-composition of gate degrees; the empty conjunction is 1.
pub fn compose_and(degrees: &[f64]) -> Result<f64> {
    degrees.iter().try_fold(1.0f64, |acc, &d| {
        if (0.0..=1.0).contains(&d) {
            Ok(acc.min(d))
        } else {
            Err(Error::DegreeOutOfRange(d))
        }
    })
}

/// `gate_degrees` are aligned with `spec.gates`, `constraint_values` with
/// `spec.penalties`.
pub fn gated_cost(
    s: f64,
    n: usize,
    total_nodes: usize,
    spec: &CostSpec,
    gate_degrees: &[f64],
    constraint_values: &[f64],
) -> Result<Score> {
    if gate_degrees.len() != spec.gates.len() {
        return Err(Error::ArityMismatch {
            expected: spec.gates.len(),
            got: gate_degrees.len(),
        });
    }
    let mu = compose_and(gate_degrees)?;
    let passes = spec.gates.iter().all(|g| mu >= g.threshold);
    let value = if passes {
        let v = generalized_cost(s, n, total_nodes, spec, constraint_values)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteScore);
        }
        Some(v)
    } else {
        check_inputs(s, n, total_nodes)?;
        None
    };
    Ok(Score {
        value,
        soiled_measure: s,
        n,
        gate_degree: mu,
    })
}
