//! Model-file ingestion: a single JSON document describing an exponent set
//! together with optional labels, weights, a projection, and chart
//! generators.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use num::{BigInt, BigRational, Signed, Zero};
use serde_json::Value;
use toric_core::{ControlScheme, ExponentSet};

#[derive(Debug, Clone)]
pub struct Model {
    pub exponents: ExponentSet,
    pub labels: Vec<String>,
    pub weights: Option<Vec<BigRational>>,
    pub projection: Option<ControlScheme>,
    pub charts: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Model {
    pub fn parse(text: &str) -> Result<Model> {
        let root: Value =
            serde_json::from_str(text).context("model file is not valid JSON")?;
        let obj = root
            .as_object()
            .ok_or_else(|| anyhow!("model file: top level must be a JSON object"))?;

        let n = obj
            .get("n")
            .ok_or_else(|| anyhow!("field `n`: required"))?
            .as_u64()
            .ok_or_else(|| anyhow!("field `n`: must be a nonnegative integer"))?
            as usize;

        let exps = obj
            .get("exponents")
            .ok_or_else(|| anyhow!("field `exponents`: required"))?
            .as_array()
            .ok_or_else(|| anyhow!("field `exponents`: must be an array of integer vectors"))?;
        if exps.is_empty() {
            bail!("field `exponents`: must be nonempty");
        }
        let mut vectors = Vec::with_capacity(exps.len());
        for (i, row) in exps.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| anyhow!("field `exponents[{i}]`: must be an integer vector"))?;
            let mut v = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                v.push(
                    parse_int(e)
                        .with_context(|| format!("field `exponents[{i}][{j}]`"))?,
                );
            }
            vectors.push(v);
        }
        let exponents = ExponentSet::new(n, vectors)
            .map_err(|e| anyhow!("field `exponents`: {e}"))?;

        let labels = match obj.get("labels") {
            None => (0..exponents.len()).map(|i| format!("x{i}")).collect(),
            Some(v) => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| anyhow!("field `labels`: must be an array of strings"))?;
                if arr.len() != exponents.len() {
                    bail!(
                        "field `labels`: has {} entries, expected {} (one per exponent)",
                        arr.len(),
                        exponents.len()
                    );
                }
                arr.iter()
                    .map(|s| {
                        s.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| anyhow!("field `labels`: entries must be strings"))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };

        let weights = match obj.get("weights") {
            None => None,
            Some(v) => {
                let arr = v
                    .as_array()
                    .ok_or_else(|| anyhow!("field `weights`: must be an array of rationals"))?;
                if arr.len() != exponents.len() {
                    bail!(
                        "field `weights`: has {} entries, expected {} (one per exponent)",
                        arr.len(),
                        exponents.len()
                    );
                }
                let ws = arr
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        parse_rational(w).with_context(|| format!("field `weights[{i}]`"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(i) = ws.iter().position(|w| !w.is_positive()) {
                    bail!("field `weights[{i}]`: must be positive");
                }
                Some(ws)
            }
        };

        let projection = match obj.get("projection") {
            None => None,
            Some(v) => {
                let arr = v.as_array().ok_or_else(|| {
                    anyhow!("field `projection`: must be an array of rational vectors")
                })?;
                if arr.len() != exponents.len() {
                    bail!(
                        "field `projection`: has {} rows, expected {} (one per exponent)",
                        arr.len(),
                        exponents.len()
                    );
                }
                let mut rows = Vec::with_capacity(arr.len());
                for (i, row) in arr.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| {
                        anyhow!("field `projection[{i}]`: must be a rational vector")
                    })?;
                    rows.push(
                        row.iter()
                            .enumerate()
                            .map(|(j, e)| {
                                parse_rational(e)
                                    .with_context(|| format!("field `projection[{i}][{j}]`"))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                Some(
                    ControlScheme::new(rows)
                        .map_err(|e| anyhow!("field `projection`: {e}"))?,
                )
            }
        };

        let mut charts = BTreeMap::new();
        if let Some(v) = obj.get("charts") {
            let map = v
                .as_object()
                .ok_or_else(|| anyhow!("field `charts`: must be an object of generator lists"))?;
            for (name, gens) in map {
                let arr = gens.as_array().ok_or_else(|| {
                    anyhow!("field `charts.{name}`: must be an array of integer vectors")
                })?;
                let mut list = Vec::with_capacity(arr.len());
                for (i, g) in arr.iter().enumerate() {
                    let g = g.as_array().ok_or_else(|| {
                        anyhow!("field `charts.{name}[{i}]`: must be an integer vector")
                    })?;
                    list.push(
                        g.iter()
                            .map(|e| {
                                parse_int(e)
                                    .with_context(|| format!("field `charts.{name}[{i}]`"))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                charts.insert(name.clone(), list);
            }
        }

        Ok(Model { exponents, labels, weights, projection, charts })
    }

    pub fn load(path: &std::path::Path) -> Result<Model> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read model file {}", path.display()))?;
        Model::parse(&text)
    }

    /// The projection to apply: the model's, or the identity on ℙ^ℓ.
    pub fn scheme(&self) -> ControlScheme {
        self.projection
            .clone()
            .unwrap_or_else(|| ControlScheme::identity(self.exponents.len()))
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        use num::ToPrimitive;
        match &self.weights {
            Some(ws) => ws.iter().map(|w| w.to_f64().unwrap()).collect(),
            None => vec![1.0; self.exponents.len()],
        }
    }
}

/// Integer from a JSON number or a decimal string (for values beyond i64,
/// callers that need BigInt parse the string themselves).
fn parse_int(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| anyhow!("must be an integer, got {n}")),
        Value::String(s) => s
            .trim()
            .parse::<i64>()
            .map_err(|_| anyhow!("must be a decimal integer string, got {s:?}")),
        other => bail!("must be an integer or decimal string, got {other}"),
    }
}

/// Rational from a JSON integer or a "p/q" (or decimal) string.
pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| anyhow!("must be an integer or \"p/q\" string, got {n}"))?;
            Ok(BigRational::from(BigInt::from(i)))
        }
        Value::String(s) => parse_rational_str(s),
        other => bail!("must be a rational, got {other}"),
    }
}

pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| anyhow!("bad rational numerator {num:?}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| anyhow!("bad rational denominator {den:?}"))?;
    if q.is_zero() {
        bail!("rational {s:?} has zero denominator");
    }
    Ok(BigRational::new(p, q))
}
