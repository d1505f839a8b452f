//! One verification record per orientation, for exhaustive sweeps.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cone::{contains, ConeDescription};
use crate::error::Result;
use crate::quiver::QuiverAn;
use crate::stability::{stability_inequalities, verify_reineke, IntervalVerdict};
use crate::weights::intrinsic_weights;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub orientation: String,
    pub n: usize,
    pub all_stable: bool,
    pub num_intervals: usize,
    pub num_inequalities: usize,
    pub intrinsic_in_cone: bool,
    /// Present only when timing was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_micros: Option<u64>,
    /// Failing verdicts, present only when `all_stable` is false.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<WitnessPayload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPayload {
    pub p: usize,
    pub q: usize,
    pub witness: Vec<usize>,
    pub slope_vs_total: String,
}

impl From<&IntervalVerdict> for WitnessPayload {
    fn from(v: &IntervalVerdict) -> Self {
        let (witness, cmp) = v
            .witness
            .as_ref()
            .map(|w| (w.vertices.iter().collect(), w.slope_vs_total.to_string()))
            .unwrap_or_default();
        WitnessPayload {
            p: v.p,
            q: v.q,
            witness,
            slope_vs_total: cmp,
        }
    }
}

/// Verifies the intrinsic weight system of `q` and summarises the result.
pub fn sweep_record(q: &QuiverAn, timed: bool) -> Result<SweepRecord> {
    let start = Instant::now();
    let theta = intrinsic_weights(q);
    let report = verify_reineke(q, &theta)?;
    let forms = stability_inequalities(q)?;
    let num_inequalities = forms.len();
    let cone = ConeDescription::new(q.n(), forms)?;
    let intrinsic_in_cone = contains(&cone, &theta, true)?;
    Ok(SweepRecord {
        orientation: q.word(),
        n: q.n(),
        all_stable: report.all_stable,
        num_intervals: report.verdicts.len(),
        num_inequalities,
        intrinsic_in_cone,
        elapsed_micros: timed.then(|| start.elapsed().as_micros() as u64),
        violations: report.failures().map(WitnessPayload::from).collect(),
    })
}

/// Orientations with `1..=max_n` vertices in `(n, word)` order.
///
/// With `quotient_symmetry`, only the lexicographically least word among a
/// word, its mirror image, and their opposites is kept.
pub fn orientations(max_n: usize, quotient_symmetry: bool) -> Vec<QuiverAn> {
    (1..=max_n)
        .flat_map(QuiverAn::all_with_vertices)
        .filter(|q| {
            !quotient_symmetry
                || [q.reversed(), q.opposite(), q.reversed().opposite()]
                    .iter()
                    .all(|other| q.word() <= other.word())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_for_example() {
        let q = QuiverAn::parse("RRRLLR").unwrap();
        let r = sweep_record(&q, false).unwrap();
        assert!(r.all_stable && r.intrinsic_in_cone);
        assert_eq!(r.num_intervals, 28);
        assert_eq!(r.elapsed_micros, None);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(orientations(3, false).len(), 7);
        assert_eq!(orientations(1, false).len(), 1);
        assert_eq!(orientations(10, false).len(), 1023);
        // n = 3: {LL, RR} and {LR, RL} collapse
        let words: Vec<_> = orientations(3, true).iter().map(|q| q.word()).collect();
        assert_eq!(words, vec!["", "L", "LL", "LR"]);
    }
}
