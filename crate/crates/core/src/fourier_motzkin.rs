//! Fourier–Motzkin elimination over the rationals.
//!
//! Rows are `coeffs · x >= rhs` with arbitrary-precision integer entries. Each
//! derived row remembers which input rows it combines; after `k` eliminations a
//! row built from more than `k + 1` inputs is implied by the others and dropped
//! (Chernikov's rule). Rows are gcd-reduced and duplicates keep the largest rhs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of rows alive at any elimination stage.
pub const DEFAULT_MAX_ROWS: usize = 100_000;

/// Environment variable overriding [`DEFAULT_MAX_ROWS`].
pub const MAX_FORMS_ENV: &str = "QUIVERSTAB_MAX_FORMS";

pub fn max_rows_from_env() -> usize {
    std::env::var(MAX_FORMS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_MAX_ROWS)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Inequality {
    pub fn new(coeffs: impl IntoIterator<Item = i64>, rhs: i64) -> Self {
        Inequality {
            coeffs: coeffs.into_iter().map(BigInt::from).collect(),
            rhs: BigInt::from(rhs),
        }
    }
}

#[derive(Clone)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    history: Vec<u64>,
}

impl Row {
    fn sources(&self) -> u32 {
        self.history.iter().map(|w| w.count_ones()).sum()
    }
}

enum Reduced {
    Keep(Row),
    Trivial,
    Contradiction,
}

fn reduce(mut row: Row) -> Reduced {
    let g = row.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return if row.rhs.is_positive() {
            Reduced::Contradiction
        } else {
            Reduced::Trivial
        };
    }
    // rows stay integral: divide by the gcd of coefficients and rhs together
    let g = g.gcd(&row.rhs);
    if !g.is_one() {
        for c in row.coeffs.iter_mut() {
            *c /= &g;
        }
        row.rhs /= &g;
    }
    Reduced::Keep(row)
}

/// Adds `row` to `acc`, keeping the strongest rhs per coefficient vector.
fn insert(acc: &mut HashMap<Vec<BigInt>, Row>, row: Row) {
    match acc.get_mut(&row.coeffs) {
        Some(existing) => {
            let cmp = row.rhs.cmp(&existing.rhs);
            if cmp.is_gt() || (cmp.is_eq() && row.sources() < existing.sources()) {
                *existing = row;
            }
        }
        None => {
            acc.insert(row.coeffs.clone(), row);
        }
    }
}

fn sorted_rows(acc: HashMap<Vec<BigInt>, Row>) -> Vec<Row> {
    let mut rows: Vec<Row> = acc.into_values().collect();
    rows.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then_with(|| a.rhs.cmp(&b.rhs)));
    rows
}

/// Finds a rational point satisfying every row, or `None` if the system is infeasible.
pub fn find_point(
    n: usize,
    system: &[Inequality],
    max_rows: usize,
) -> Result<Option<Vec<BigRational>>> {
    let words = system.len().div_ceil(64).max(1);
    let mut acc = HashMap::new();
    for (k, ineq) in system.iter().enumerate() {
        assert_eq!(ineq.coeffs.len(), n, "row {k} has the wrong length");
        let mut history = vec![0u64; words];
        history[k / 64] |= 1 << (k % 64);
        let row = Row {
            coeffs: ineq.coeffs.clone(),
            rhs: ineq.rhs.clone(),
            history,
        };
        match reduce(row) {
            Reduced::Keep(r) => insert(&mut acc, r),
            Reduced::Trivial => {}
            Reduced::Contradiction => return Ok(None),
        }
    }
    let mut current = sorted_rows(acc);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::with_capacity(n);

    while !remaining.is_empty() {
        // cheapest variable first; ties go to the lowest index
        let (slot, var) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &v)| {
                let pos = current.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = current.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (pos * neg, slot, v)
            })
            .min()
            .map(|(_, slot, v)| (slot, v))
            .expect("remaining is non-empty");
        remaining.remove(slot);
        let eliminated = n - remaining.len();

        let mut acc = HashMap::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in &current {
            if r.coeffs[var].is_positive() {
                pos.push(r);
            } else if r.coeffs[var].is_negative() {
                neg.push(r);
            } else {
                insert(&mut acc, r.clone());
            }
        }
        for p in &pos {
            for m in &neg {
                let history: Vec<u64> = p
                    .history
                    .iter()
                    .zip(&m.history)
                    .map(|(a, b)| a | b)
                    .collect();
                if history.iter().map(|w| w.count_ones()).sum::<u32>() as usize > eliminated + 1 {
                    continue;
                }
                let a = &p.coeffs[var];
                let b = -&m.coeffs[var];
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&m.coeffs)
                    .map(|(x, y)| x * &b + y * a)
                    .collect();
                let rhs = &p.rhs * &b + &m.rhs * a;
                match reduce(Row {
                    coeffs,
                    rhs,
                    history,
                }) {
                    Reduced::Keep(r) => insert(&mut acc, r),
                    Reduced::Trivial => {}
                    Reduced::Contradiction => return Ok(None),
                }
                if acc.len() > max_rows {
                    return Err(Error::ResourceLimit(format!(
                        "Fourier-Motzkin produced more than {max_rows} rows \
                         (raise {MAX_FORMS_ENV} to allow more)"
                    )));
                }
            }
        }
        stages.push((var, std::mem::replace(&mut current, sorted_rows(acc))));
    }

    let mut point = vec![BigRational::zero(); n];
    for (var, rows) in stages.iter().rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for r in rows {
            let a = &r.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = r
                .coeffs
                .iter()
                .zip(&point)
                .enumerate()
                .filter(|(j, (c, _))| j != var && !c.is_zero())
                .map(|(_, (c, x))| BigRational::from_integer(c.clone()) * x)
                .sum();
            let bound = (BigRational::from_integer(r.rhs.clone()) - rest)
                / BigRational::from_integer(a.clone());
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        point[*var] = choose_value(lower, upper);
    }
    Ok(Some(point))
}

/// Prefers an integer in `[lower, upper]`, falling back to `lower`.
fn choose_value(lower: Option<BigRational>, upper: Option<BigRational>) -> BigRational {
    match (lower, upper) {
        (None, None) => BigRational::zero(),
        (Some(l), None) => l.ceil(),
        (None, Some(u)) => u.floor(),
        (Some(l), Some(u)) => {
            debug_assert!(l <= u, "back-substitution found an empty range");
            if l <= BigRational::zero() && BigRational::zero() <= u {
                BigRational::zero()
            } else if l.ceil() <= u {
                l.ceil()
            } else {
                l
            }
        }
    }
}

/// Whether `x` satisfies every row exactly.
pub fn satisfies(system: &[Inequality], x: &[BigRational]) -> bool {
    system.iter().all(|r| {
        let lhs: BigRational = r
            .coeffs
            .iter()
            .zip(x)
            .map(|(c, v)| BigRational::from_integer(c.clone()) * v)
            .sum();
        lhs >= BigRational::from_integer(r.rhs.clone())
    })
}
