use std::fmt;

use quiverstab::cone::{self, ConeDescription};
use quiverstab::oracle::{self, FFRep};
use quiverstab::semiinvariants::{self, Mode};
use quiverstab::stability::{self, enumerate_subrep_supports, verify_reineke};
use quiverstab::weights::intrinsic_weights;
use quiverstab::{DimensionVector, Error, Interval, QuiverAn, WeightSystem};
use serde::Serialize;
use serde_json::{json, Value};

/// JSON to print, and whether the mathematical check it reports succeeded.
pub struct Outcome {
    pub payload: Option<Value>,
    pub verified: bool,
}

impl Outcome {
    fn ok(payload: impl Serialize) -> Self {
        Outcome::checked(payload, true)
    }

    fn checked(payload: impl Serialize, verified: bool) -> Self {
        Outcome {
            payload: Some(serde_json::to_value(payload).expect("payload serialises")),
            verified,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFoundWithinBound(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn parse_quiver(word: &str) -> Result<QuiverAn, CliError> {
    Ok(QuiverAn::parse(word)?)
}

fn parse_weights(q: &QuiverAn, s: &str) -> Result<WeightSystem, CliError> {
    let w = WeightSystem::parse_csv(s)?;
    if w.len() != q.n() {
        return Err(Error::LengthMismatch {
            expected: q.n(),
            found: w.len(),
        }
        .into());
    }
    Ok(w)
}

fn parse_dims(q: &QuiverAn, s: &str) -> Result<DimensionVector, CliError> {
    let dims = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("invalid dimension vector {s:?}: {e}")))?;
    if dims.len() != q.n() {
        return Err(Error::LengthMismatch {
            expected: q.n(),
            found: dims.len(),
        }
        .into());
    }
    Ok(DimensionVector(dims))
}

fn parse_interval(q: &QuiverAn, s: &str) -> Result<Interval, CliError> {
    let parts: Vec<_> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    match parts.as_slice() {
        [Ok(p), Ok(r)] => Ok(Interval::new(*p, *r, q.n())?),
        _ => Err(CliError::Usage(format!(
            "invalid interval {s:?}, expected p,q"
        ))),
    }
}

pub fn weights(word: &str) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let ctx = q.classify_vertices();
    Ok(Outcome::ok(json!({
        "orientation": q.word(),
        "types": ctx.iter().map(|c| c.vtype.to_string()).collect::<Vec<_>>(),
        "l": ctx.iter().map(|c| c.l).collect::<Vec<_>>(),
        "r": ctx.iter().map(|c| c.r).collect::<Vec<_>>(),
        "thetas": intrinsic_weights(&q),
    })))
}

pub fn verify(word: &str, weights: Option<&str>) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let w = match weights {
        Some(s) => parse_weights(&q, s)?,
        None => intrinsic_weights(&q),
    };
    let report = verify_reineke(&q, &w)?;
    let ok = report.all_stable;
    Ok(Outcome::checked(report, ok))
}

pub fn inequalities(word: &str, irredundant: bool) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let all = ConeDescription::new(q.n(), stability::stability_inequalities(&q)?)?;
    let forms = if irredundant {
        cone::irredundant_forms(&all)?
    } else {
        all.forms
    };
    Ok(Outcome::ok(json!({
        "orientation": q.word(),
        "irredundant": irredundant,
        "forms": forms,
    })))
}

pub fn cone(word: &str, check: Option<&str>, interior: bool) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let c = cone::cone_of(&q, &q.enumerate_indecomposables())?;
    if let Some(s) = check {
        let theta = parse_weights(&q, s)?;
        return Ok(Outcome::ok(json!({
            "orientation": q.word(),
            "thetas": theta,
            "strict": cone::contains(&c, &theta, true)?,
            "closure": cone::contains(&c, &theta, false)?,
        })));
    }
    if interior {
        let point = cone::feasible_interior(&c)?;
        let strict = match &point {
            Some(p) => cone::contains(&c, p, true)?,
            None => false,
        };
        return Ok(Outcome::checked(
            json!({ "orientation": q.word(), "interior": point, "strict": strict }),
            strict,
        ));
    }
    Ok(Outcome::ok(json!({
        "orientation": q.word(),
        "n": c.n,
        "forms": c.forms,
    })))
}

pub fn decompose(word: &str, mode: Mode) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let dec = semiinvariants::decompose_intrinsic(&q, mode)?;
    let exact = dec.reconstruct(&q)? == intrinsic_weights(&q);
    Ok(Outcome::checked(dec, exact))
}

pub fn semiinv(
    word: &str,
    dims: &str,
    weights: &str,
    prime: u64,
    trials: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let dims = parse_dims(&q, dims)?;
    let theta = parse_weights(&q, weights)?;
    let report = semiinvariants::check_semiinvariance(&q, &theta, &dims, trials, prime, seed)?;
    let ok = report.failures == 0;
    Ok(Outcome::checked(report, ok))
}

pub fn oracle(word: &str, interval: &str, prime: u64) -> Result<Outcome, CliError> {
    let q = parse_quiver(word)?;
    let rep = parse_interval(&q, interval)?;
    let x = FFRep::thin(&q, rep, prime)?;
    let found: Vec<DimensionVector> = oracle::subrep_dimension_vectors(&x, &q)?
        .into_iter()
        .collect();
    let mut expected: Vec<DimensionVector> = enumerate_subrep_supports(&q, rep)?
        .into_iter()
        .map(|s| s.indicator(q.n()))
        .collect();
    expected.sort();
    let theta = intrinsic_weights(&q);
    let stable_combinatorial = stability::is_stable(&q, &theta, rep)?.is_stable();
    let stable_oracle = oracle::is_stable_ff(&x, &q, &theta)?;
    let matched = found == expected && stable_combinatorial == stable_oracle;
    Ok(Outcome::checked(
        json!({
            "orientation": q.word(),
            "interval": rep.key(),
            "prime": prime,
            "oracle": found,
            "combinatorial": expected,
            "stable_oracle": stable_oracle,
            "stable_combinatorial": stable_combinatorial,
            "match": matched,
        }),
        matched,
    ))
}
