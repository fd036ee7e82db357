//! Line-oriented space specifications.
//!
//! ```text
//! # reference instance
//! omega 3
//! weights 1 1 2
//! block 1 2
//! block 3
//! vector h 4 -2 5
//! charge bad
//!   0 0 1
//!   0 0 0
//!   0 0 0
//! end
//! ```
//!
//! Points are 1-based. `degenerate` on a line of its own allows zero weights;
//! the space is then reduced to its carrier before anything runs. A charge
//! lists one row per atom, each row giving the atom's value at every point.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use riesz_lab::charge::Charge;
use riesz_lab::condexp::{make_cond_exp, DegenerateCondExp};
use riesz_lab::rational::{fmt_rational, parse_rational};
use riesz_lab::{CondExp, FiniteSpace, Rational, Vector};
use thiserror::Error;

/// Upper bound on `omega`; suites enumerate set partitions of the points.
pub const MAX_OMEGA: usize = riesz_lab::charge::VARIATION_NORM_MAX_POINTS;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("{path}: {source}")]
    Io { path: String, source: IoMessage },
    #[error("line {line}: parse error: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: validation error: {message}")]
    Validation { line: usize, message: String },
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`.
#[derive(Debug, Clone, PartialEq)]
pub struct IoMessage(pub String);

impl fmt::Display for IoMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for IoMessage {}

fn parse_err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        line,
        message: message.into(),
    }
}

fn invalid(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Validation {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedRows {
    pub name: String,
    pub line: usize,
    pub rows: Vec<Vec<Rational>>,
    pub row_lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedVector {
    pub name: String,
    pub line: usize,
    pub values: Vec<Rational>,
}

/// A parsed and validated specification. Indices are 0-based here.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    pub omega_size: usize,
    pub weights: Vec<Rational>,
    pub partition: Vec<Vec<usize>>,
    pub degenerate: bool,
    pub charges: Vec<NamedRows>,
    pub vectors: Vec<NamedVector>,
}

/// The operator a spec describes, with its named objects realized.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cond_exp: Arc<CondExp>,
    pub charges: Vec<(String, Charge)>,
    pub vectors: Vec<(String, Vector)>,
    /// Original 1-based points dropped by the null-ideal reduction.
    pub null_points: Vec<usize>,
}

impl Instance {
    pub fn vector(&self, name: &str) -> Option<&Vector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn charge(&self, name: &str) -> Option<&Charge> {
        self.charges.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

pub const REFERENCE: &str = "\
# n = 3, weights (1, 1, 2), blocks {1,2} and {3}
omega 3
weights 1 1 2
block 1 2
block 3
";

pub fn reference() -> SpaceSpec {
    parse_str(REFERENCE).expect("built-in reference spec is valid")
}

pub fn parse_spec(path: &Path) -> Result<SpaceSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        source: IoMessage(e.to_string()),
    })?;
    parse_str(&text)
}

fn rationals<'a>(line: usize, items: impl Iterator<Item = &'a str>) -> Result<Vec<Rational>, SpecError> {
    items
        .map(|s| parse_rational(s).ok_or_else(|| parse_err(line, format!("`{s}` is not a rational"))))
        .collect()
}

fn check_name(line: usize, name: Option<&str>, taken: &mut BTreeSet<String>) -> Result<String, SpecError> {
    let name = name.ok_or_else(|| parse_err(line, "missing name"))?;
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(parse_err(line, format!("invalid name `{name}`")));
    }
    if !taken.insert(name.to_string()) {
        return Err(invalid(line, format!("name `{name}` is used twice")));
    }
    Ok(name.to_string())
}

pub fn parse_str(text: &str) -> Result<SpaceSpec, SpecError> {
    let mut omega: Option<(usize, usize)> = None;
    let mut weights: Option<(usize, Vec<Rational>)> = None;
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut degenerate = false;
    let mut charges = Vec::new();
    let mut vectors = Vec::new();
    let mut names = BTreeSet::new();
    let mut open: Option<NamedRows> = None;
    let mut last = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("non-empty line");

        if let Some(charge) = open.as_mut() {
            if head == "end" {
                if words.next().is_some() {
                    return Err(parse_err(line, "unexpected text after `end`"));
                }
                charges.push(open.take().expect("open charge"));
            } else {
                let row = rationals(line, content.split_whitespace())?;
                charge.rows.push(row);
                charge.row_lines.push(line);
            }
            continue;
        }

        match head {
            "omega" => {
                if omega.is_some() {
                    return Err(parse_err(line, "`omega` given twice"));
                }
                let n: usize = words
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(line, "`omega` needs a positive integer"))?;
                if words.next().is_some() {
                    return Err(parse_err(line, "unexpected text after `omega`"));
                }
                omega = Some((line, n));
            }
            "weights" => {
                if weights.is_some() {
                    return Err(parse_err(line, "`weights` given twice"));
                }
                weights = Some((line, rationals(line, words)?));
            }
            "block" => {
                let points = words
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| parse_err(line, format!("`{s}` is not a point index")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                blocks.push((line, points));
            }
            "degenerate" => {
                if words.next().is_some() {
                    return Err(parse_err(line, "unexpected text after `degenerate`"));
                }
                degenerate = true;
            }
            "vector" => {
                let name = check_name(line, words.next(), &mut names)?;
                vectors.push(NamedVector {
                    name,
                    line,
                    values: rationals(line, words)?,
                });
            }
            "charge" => {
                let name = check_name(line, words.next(), &mut names)?;
                if words.next().is_some() {
                    return Err(parse_err(line, "unexpected text after the charge name"));
                }
                open = Some(NamedRows {
                    name,
                    line,
                    rows: Vec::new(),
                    row_lines: Vec::new(),
                });
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(c) = open {
        return Err(parse_err(last.max(c.line), format!("charge `{}` is missing `end`", c.name)));
    }

    let (omega_line, n) = omega.ok_or_else(|| parse_err(last.max(1), "missing `omega`"))?;
    if n == 0 || n > MAX_OMEGA {
        return Err(invalid(omega_line, format!("omega must be between 1 and {MAX_OMEGA}")));
    }
    let (weights_line, weights) = weights.ok_or_else(|| parse_err(last.max(1), "missing `weights`"))?;
    if weights.len() != n {
        return Err(invalid(weights_line, format!("expected {n} weights, got {}", weights.len())));
    }
    for (i, w) in weights.iter().enumerate() {
        let zero = *w == Rational::from_integer(0.into());
        if *w < Rational::from_integer(0.into()) || (zero && !degenerate) {
            return Err(invalid(
                weights_line,
                format!("weight {} of point {} must be positive", fmt_rational(w), i + 1),
            ));
        }
    }
    if blocks.is_empty() {
        return Err(parse_err(last.max(1), "missing `block` lines"));
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut partition = Vec::new();
    for (line, points) in &blocks {
        if points.is_empty() {
            return Err(invalid(*line, "empty block"));
        }
        let mut block = Vec::new();
        for &p in points {
            if p == 0 || p > n {
                return Err(invalid(*line, format!("point {p} is outside 1..{n}")));
            }
            if let Some(first) = owner[p - 1] {
                return Err(invalid(
                    *line,
                    format!("point {p} already belongs to the block on line {first}"),
                ));
            }
            owner[p - 1] = Some(*line);
            block.push(p - 1);
        }
        partition.push(block);
    }
    if let Some(p) = owner.iter().position(Option::is_none) {
        return Err(invalid(blocks[0].0, format!("point {} is in no block", p + 1)));
    }
    let block_of = |p: usize| partition.iter().position(|b| b.contains(&p)).expect("covered");

    for v in &vectors {
        if v.values.len() != n {
            return Err(invalid(v.line, format!("vector `{}` needs {n} entries", v.name)));
        }
    }
    for c in &charges {
        if c.rows.len() != n {
            return Err(invalid(
                c.line,
                format!("charge `{}` needs one row per atom ({n}), got {}", c.name, c.rows.len()),
            ));
        }
        for (atom, row) in c.rows.iter().enumerate() {
            let row_line = c.row_lines[atom];
            if row.len() != n {
                return Err(invalid(row_line, format!("row {} of `{}` needs {n} entries", atom + 1, c.name)));
            }
            for p in 0..n {
                let first = partition[block_of(p)][0];
                if row[p] != row[first] {
                    return Err(invalid(
                        row_line,
                        format!(
                            "row {} of `{}` is not constant on the block containing point {}",
                            atom + 1,
                            c.name,
                            p + 1
                        ),
                    ));
                }
            }
        }
    }

    Ok(SpaceSpec {
        omega_size: n,
        weights,
        partition,
        degenerate,
        charges,
        vectors,
    })
}

impl SpaceSpec {
    /// Builds the operator. Degenerate specs are reduced to their carrier and
    /// named objects are restricted to it.
    pub fn instance(&self) -> Result<Instance, SpecError> {
        let whole = |e: riesz_lab::Error| invalid(1, e.to_string());
        let (cond_exp, keep, null_points) = if self.degenerate {
            let space = FiniteSpace::degenerate(self.weights.clone()).map_err(whole)?;
            let d = DegenerateCondExp::new(&space, self.partition.clone()).map_err(whole)?;
            let r = d.null_ideal_reduction().map_err(whole)?;
            let null = r.null.points().map(|p| p + 1).collect();
            (r.reduced, r.carrier_points, null)
        } else {
            let space = FiniteSpace::new(self.weights.clone()).map_err(whole)?;
            let t = make_cond_exp(&space, self.partition.clone()).map_err(whole)?;
            (t, (0..self.omega_size).collect(), Vec::new())
        };
        let space = cond_exp.space().clone();
        let restrict = |values: &[Rational]| -> Vector {
            Vector::new(&space, keep.iter().map(|&p| values[p].clone()).collect()).expect("carrier length")
        };
        let vectors = self
            .vectors
            .iter()
            .map(|v| (v.name.clone(), restrict(&v.values)))
            .collect();
        let charges = self
            .charges
            .iter()
            .map(|c| {
                let atoms = keep.iter().map(|&p| restrict(&c.rows[p])).collect();
                Charge::new(&cond_exp, atoms)
                    .map(|mu| (c.name.clone(), mu))
                    .map_err(|e| invalid(c.line, e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Instance {
            cond_exp,
            charges,
            vectors,
            null_points,
        })
    }
}

/// `n=3 weights=(1,1,2) blocks={1,2}{3}` with 1-based points.
pub fn describe(t: &CondExp) -> String {
    let weights: Vec<String> = t.space().weights().iter().map(fmt_rational).collect();
    let blocks: String = t
        .partition()
        .blocks()
        .iter()
        .map(|b| {
            let pts: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    format!("n={} weights=({}) blocks={}", t.size(), weights.join(","), blocks)
}
