//! Cost specification files.
//!
//! ```text
//! alpha = const 1
//! beta = inv 2            # 2/n
//! measure = node
//! gate = same-component tau=1
//! penalty = cardinality:1:3 eps=0.5
//! ```
//!
//! Unset coefficients default to `const 1`; `tau` defaults to 1.

use critset_core::cost::{CoefficientFn, CostSpec};
use critset_core::MeasureMode;

use crate::error::{Error, Result};

fn number(text: &str, what: &str, line: usize) -> Result<f64> {
    text.parse::<f64>()
        .map_err(|_| Error::syntax(line, format!("invalid {what} `{text}`")))
}

fn coefficient(value: &str, line: usize) -> Result<CoefficientFn> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    match parts.as_slice() {
        ["const", c] => Ok(CoefficientFn::Constant(number(c, "coefficient", line)?)),
        ["inv", c] => Ok(CoefficientFn::OverN(number(c, "coefficient", line)?)),
        _ => Err(Error::syntax(
            line,
            format!("expected `const <x>` or `inv <x>`, got `{value}`"),
        )),
    }
}

/// Splits `<id> key=value` into the id and the parsed value of `key`.
fn id_with_option(value: &str, key: &str, line: usize) -> Result<(String, Option<f64>)> {
    let mut parts = value.split_whitespace();
    let id = parts
        .next()
        .ok_or_else(|| Error::syntax(line, "missing constraint id"))?;
    let mut option = None;
    for p in parts {
        match p.split_once('=') {
            Some((k, v)) if k == key && option.is_none() => option = Some(number(v, key, line)?),
            _ => return Err(Error::syntax(line, format!("unexpected `{p}`"))),
        }
    }
    Ok((id.to_string(), option))
}

pub fn parse_cost_config(text: &str) -> Result<CostSpec> {
    let mut spec = CostSpec::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::syntax(line, format!("expected `key = value`, got `{content}`")))?;
        match key {
            "alpha" => spec.alpha = coefficient(value, line)?,
            "beta" => spec.beta = coefficient(value, line)?,
            "gamma" => spec.gamma = coefficient(value, line)?,
            "delta" => spec.delta = coefficient(value, line)?,
            "measure" => {
                spec.measure = value
                    .parse::<MeasureMode>()
                    .map_err(|source| Error::AtLine { line, source })?
            }
            "gate" => {
                let (id, tau) = id_with_option(value, "tau", line)?;
                spec = spec.with_gate(id, tau.unwrap_or(1.0));
            }
            "penalty" => {
                let (id, eps) = id_with_option(value, "eps", line)?;
                let eps = eps.ok_or_else(|| Error::syntax(line, "penalty needs eps=<real>"))?;
                spec = spec.with_penalty(id, eps);
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let spec = parse_cost_config(
            "# tailored\nalpha = const 1\nbeta = inv 2\nmeasure = edge\n\
             gate = same-component\ngate = fuzzy-small:6 tau=0.5\npenalty = forbid:6 eps=-0.25 # note\n",
        )
        .unwrap();
        assert_eq!(spec.beta, CoefficientFn::OverN(2.0));
        assert_eq!(spec.alpha, CoefficientFn::Constant(1.0));
        assert_eq!(spec.measure, MeasureMode::Edge);
        assert_eq!(spec.gates.len(), 2);
        assert_eq!(spec.gates[0].threshold, 1.0);
        assert_eq!(spec.gates[1].threshold, 0.5);
        assert_eq!(spec.penalties[0].constraint, "forbid:6");
        assert_eq!(spec.penalties[0].epsilon, -0.25);
    }

    #[test]
    fn empty_config_is_default() {
        assert_eq!(parse_cost_config("").unwrap(), CostSpec::default());
    }

    #[test]
    fn rejects_bad_lines() {
        for bad in [
            "beta = 2",
            "beta = inv x",
            "zeta = const 1",
            "gate = same-component tau=0",
            "gate = same-component color=red",
            "penalty = same-component",
            "measure = volume",
            "just words",
        ] {
            assert!(parse_cost_config(bad).is_err(), "{bad}");
        }
    }
}
