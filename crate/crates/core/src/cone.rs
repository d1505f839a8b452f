//! Cones of stabilising weight systems.
//!
//! A cone is a finite set of integer forms; its open region is where every form
//! is positive and its closure where every form is non-negative. Homogeneity
//! means a rational point of the open region can be rescaled until every form
//! is at least 1, so feasibility questions are posed as `f >= 1` systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{check_len, domain, Error, Result};
use crate::fourier_motzkin::{self, Inequality};
use crate::quiver::{Interval, QuiverAn};
use crate::stability::stability_inequalities_for;
use crate::weights::WeightSystem;

/// Integer linear form with coprime coefficients, not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    /// Divides by the gcd of the coefficients; `None` for the zero form.
    pub fn normalized(coeffs: Vec<i64>) -> Option<Self> {
        let g = coeffs.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            return None;
        }
        Some(LinearForm {
            coeffs: coeffs.into_iter().map(|c| c / g).collect(),
        })
    }

    pub fn eval(&self, w: &WeightSystem) -> i128 {
        self.coeffs
            .iter()
            .zip(&w.0)
            .map(|(&c, &t)| c as i128 * t as i128)
            .sum()
    }

    fn at_least(&self, rhs: i64, sign: i64) -> Inequality {
        Inequality::new(self.coeffs.iter().map(|c| c * sign), rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeDescription {
    pub n: usize,
    pub forms: Vec<LinearForm>,
}

impl ConeDescription {
    /// Sorts and deduplicates `forms`.
    pub fn new(n: usize, mut forms: Vec<LinearForm>) -> Result<Self> {
        for f in &forms {
            check_len(n, f.coeffs.len())?;
        }
        forms.sort();
        forms.dedup();
        Ok(ConeDescription { n, forms })
    }
}

/// Region of weight systems making every interval of `u` stable.
pub fn cone_of(q: &QuiverAn, u: &[Interval]) -> Result<ConeDescription> {
    if u.is_empty() {
        return domain("the set of representations must be non-empty");
    }
    ConeDescription::new(q.n(), stability_inequalities_for(q, u)?)
}

pub fn contains(c: &ConeDescription, theta: &WeightSystem, strict: bool) -> Result<bool> {
    check_len(c.n, theta.len())?;
    Ok(c.forms.iter().all(|f| {
        let v = f.eval(theta);
        if strict {
            v > 0
        } else {
            v >= 0
        }
    }))
}

/// Integer point of the open region, if the region is non-empty.
pub fn feasible_interior(c: &ConeDescription) -> Result<Option<WeightSystem>> {
    feasible_interior_with(c, fourier_motzkin::max_rows_from_env())
}

pub fn feasible_interior_with(
    c: &ConeDescription,
    max_rows: usize,
) -> Result<Option<WeightSystem>> {
    let system: Vec<Inequality> = c.forms.iter().map(|f| f.at_least(1, 1)).collect();
    let Some(point) = fourier_motzkin::find_point(c.n, &system, max_rows)? else {
        return Ok(None);
    };
    let lcm = point
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = point
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<BigInt> = if g.is_zero() {
        ints
    } else {
        ints.iter().map(|x| x / &g).collect()
    };
    let thetas = ints
        .iter()
        .map(|x| {
            x.to_i64().ok_or_else(|| {
                Error::ResourceLimit(format!("interior point entry {x} exceeds 64 bits"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let w = WeightSystem(thetas);
    debug_assert!(contains(c, &w, true).unwrap_or(false));
    Ok(Some(w))
}

/// Forms whose removal would enlarge the open region; each supports a wall.
///
/// `f` is redundant iff `{f <= -1} ∪ {g >= 1 : g != f}` has no solution.
pub fn irredundant_forms(c: &ConeDescription) -> Result<Vec<LinearForm>> {
    irredundant_forms_with(c, fourier_motzkin::max_rows_from_env())
}

pub fn irredundant_forms_with(c: &ConeDescription, max_rows: usize) -> Result<Vec<LinearForm>> {
    if feasible_interior_with(c, max_rows)?.is_none() {
        return domain("cone is not full-dimensional");
    }
    let mut kept = Vec::new();
    for (k, f) in c.forms.iter().enumerate() {
        let system: Vec<Inequality> = c
            .forms
            .iter()
            .enumerate()
            .map(|(j, g)| {
                if j == k {
                    g.at_least(1, -1)
                } else {
                    g.at_least(1, 1)
                }
            })
            .collect();
        if fourier_motzkin::find_point(c.n, &system, max_rows)?.is_some() {
            kept.push(f.clone());
        }
    }
    Ok(kept)
}
