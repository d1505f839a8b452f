//! Slope stability of thin representations.
//!
//! A subrepresentation of a thin representation whose arrow maps are identities
//! is determined by its support, and a support is admissible exactly when no
//! arrow leaves it. Everything here works on such arrow-closed vertex subsets,
//! encoded as bitmasks and enumerated in ascending order.

use std::cmp::Ordering;

use serde::Serialize;

use crate::cone::LinearForm;
use crate::error::{check_len, domain, Error, Result};
use crate::quiver::{Interval, QuiverAn, VertexSet};
use crate::weights::{cmp_slopes, set_weight, WeightSystem};

/// Largest interval whose subsets are enumerated exhaustively.
pub const MAX_SUBSET_BITS: usize = 30;

/// Arrow constraints of the full subquiver on a vertex set.
///
/// `need[k]` is the set of vertices an admissible subset must contain whenever
/// it contains the `k`-th vertex of the ambient support.
struct Closure {
    vertices: Vec<usize>,
    need: Vec<u64>,
}

impl Closure {
    fn new(q: &QuiverAn, ambient: VertexSet) -> Result<Self> {
        let vertices: Vec<usize> = ambient.iter().collect();
        if vertices.len() > MAX_SUBSET_BITS {
            return Err(Error::ResourceLimit(format!(
                "{} vertices exceed the {MAX_SUBSET_BITS}-vertex subset enumeration limit",
                vertices.len()
            )));
        }
        if ambient.max_vertex() > q.n() {
            return domain(format!("{ambient} is not a vertex set of {q}"));
        }
        let pos = |v: usize| vertices.iter().position(|&x| x == v);
        let mut need = vec![0u64; vertices.len()];
        for a in q.arrows() {
            if let (Some(s), Some(t)) = (pos(a.source), pos(a.target)) {
                need[s] |= 1 << t;
            }
        }
        Ok(Closure { vertices, need })
    }

    fn size(&self) -> usize {
        self.vertices.len()
    }

    fn full(&self) -> u64 {
        (1u64 << self.size()) - 1
    }

    fn is_closed(&self, mask: u64) -> bool {
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            if self.need[k] & !mask != 0 {
                return false;
            }
            bits &= bits - 1;
        }
        true
    }

    fn to_set(&self, mask: u64) -> VertexSet {
        let mut out = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            out |= 1 << (self.vertices[k] - 1);
            bits &= bits - 1;
        }
        VertexSet(out)
    }

    /// Admissible masks in ascending order, including empty and full.
    fn closed_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.full()).filter(move |&m| self.is_closed(m))
    }
}

fn check_interval(q: &QuiverAn, rep: Interval) -> Result<()> {
    Interval::new(rep.p, rep.q, q.n()).map(|_| ())
}

/// Supports of all subrepresentations of `I_{p,q}`, ascending as bitmasks over `p..=q`.
pub fn enumerate_subrep_supports(q: &QuiverAn, rep: Interval) -> Result<Vec<VertexSet>> {
    check_interval(q, rep)?;
    let c = Closure::new(q, rep.vertices())?;
    Ok(c.closed_masks().map(|m| c.to_set(m)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    /// `witness` is a proper non-zero subrepresentation whose slope is not
    /// smaller than the total slope; `ordering` is that comparison.
    Unstable {
        witness: VertexSet,
        ordering: Ordering,
    },
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }
}

/// First proper non-zero admissible subset of `ambient` (ascending bitmask order)
/// whose slope compares to the total as one of `bad`.
fn first_violation(
    c: &Closure,
    w: &WeightSystem,
    reject: impl Fn(Ordering) -> bool,
) -> Option<(VertexSet, Ordering)> {
    let total = set_weight(w, c.to_set(c.full()));
    (1..c.full()).filter(|&m| c.is_closed(m)).find_map(|m| {
        let s = c.to_set(m);
        let ord = cmp_slopes(set_weight(w, s), total);
        reject(ord).then_some((s, ord))
    })
}

pub fn is_stable(q: &QuiverAn, w: &WeightSystem, rep: Interval) -> Result<StabilityVerdict> {
    check_len(q.n(), w.len())?;
    check_interval(q, rep)?;
    let c = Closure::new(q, rep.vertices())?;
    Ok(match first_violation(&c, w, |o| o != Ordering::Less) {
        None => StabilityVerdict::Stable,
        Some((witness, ordering)) => StabilityVerdict::Unstable { witness, ordering },
    })
}

pub fn is_semistable(q: &QuiverAn, w: &WeightSystem, rep: Interval) -> Result<bool> {
    check_len(q.n(), w.len())?;
    check_interval(q, rep)?;
    let c = Closure::new(q, rep.vertices())?;
    Ok(first_violation(&c, w, |o| o == Ordering::Greater).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertices: VertexSet,
    /// `"equal"` or `"greater"`: slope of the witness against the total slope.
    pub slope_vs_total: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalVerdict {
    pub p: usize,
    pub q: usize,
    pub stable: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub quiver: String,
    pub thetas: WeightSystem,
    pub all_stable: bool,
    pub verdicts: Vec<IntervalVerdict>,
}

impl StabilityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IntervalVerdict> {
        self.verdicts.iter().filter(|v| !v.stable)
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

/// Checks every indecomposable of `q` for stability under `w`.
pub fn verify_reineke(q: &QuiverAn, w: &WeightSystem) -> Result<StabilityReport> {
    check_len(q.n(), w.len())?;
    let verdicts = q
        .enumerate_indecomposables()
        .into_iter()
        .map(|rep| {
            let v = is_stable(q, w, rep)?;
            Ok(IntervalVerdict {
                p: rep.p,
                q: rep.q,
                stable: v.is_stable(),
                witness: match v {
                    StabilityVerdict::Stable => None,
                    StabilityVerdict::Unstable { witness, ordering } => Some(Witness {
                        vertices: witness,
                        slope_vs_total: ordering_name(ordering),
                    }),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityReport {
        quiver: q.word(),
        thetas: w.clone(),
        all_stable: verdicts.iter().all(|v| v.stable),
        verdicts,
    })
}

/// For a thin support with at least two connected components, returns the first
/// component whose slope is at least the total slope.
///
/// Components are subrepresentations (no arrow joins two of them) and the total
/// slope is a rank-weighted mediant of the component slopes, so one always exists.
pub fn decomposable_never_stable(
    q: &QuiverAn,
    w: &WeightSystem,
    support: VertexSet,
) -> Result<VertexSet> {
    check_len(q.n(), w.len())?;
    if support.max_vertex() > q.n() {
        return domain(format!("{support} is not a vertex set of {q}"));
    }
    let comps = support.components();
    if comps.len() < 2 {
        return domain(format!("{support} is not a decomposable thin support"));
    }
    let total = set_weight(w, support);
    comps
        .into_iter()
        .find(|&c| cmp_slopes(set_weight(w, c), total) != Ordering::Less)
        .ok_or_else(|| Error::Domain("no component reaches the total slope".into()))
}

/// Whether the thin representation on `support` is either not semistable, or is
/// a direct sum of stable pieces of equal slope.
///
/// Requires `w` to stabilise every indecomposable of `q`.
pub fn thin_polystability_check(
    q: &QuiverAn,
    w: &WeightSystem,
    support: VertexSet,
) -> Result<bool> {
    let report = verify_reineke(q, w)?;
    if !report.all_stable {
        return domain("weight system does not stabilise every indecomposable");
    }
    if support.is_empty() {
        return Ok(true);
    }
    let c = Closure::new(q, support)?;
    if first_violation(&c, w, |o| o == Ordering::Greater).is_some() {
        return Ok(true);
    }
    let total = set_weight(w, support);
    for comp in support.components() {
        if cmp_slopes(set_weight(w, comp), total) != Ordering::Equal {
            return Ok(false);
        }
        let lo = comp.iter().next().expect("components are non-empty");
        let piece = Interval {
            p: lo,
            q: comp.max_vertex(),
        };
        if !is_stable(q, w, piece)?.is_stable() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn push_forms(q: &QuiverAn, rep: Interval, out: &mut Vec<LinearForm>) -> Result<()> {
    let n = q.n();
    let c = Closure::new(q, rep.vertices())?;
    let total = rep.vertices();
    let rx = total.len() as i64;
    for m in (1..c.full()).filter(|&m| c.is_closed(m)) {
        let s = c.to_set(m);
        let rs = s.len() as i64;
        // r(S) w(X) - r(X) w(S) > 0
        let coeffs = (1..=n)
            .map(|i| rs * i64::from(total.contains(i)) - rx * i64::from(s.contains(i)))
            .collect();
        out.extend(LinearForm::normalized(coeffs));
    }
    Ok(())
}

/// Integer forms `f` with `f(theta) > 0` for all of them iff every interval in
/// `intervals` is stable. Normalised, deduplicated and sorted; redundant forms are kept.
pub fn stability_inequalities_for(q: &QuiverAn, intervals: &[Interval]) -> Result<Vec<LinearForm>> {
    let mut forms = Vec::new();
    for &rep in intervals {
        check_interval(q, rep)?;
        push_forms(q, rep, &mut forms)?;
    }
    forms.sort();
    forms.dedup();
    Ok(forms)
}

pub fn stability_inequalities(q: &QuiverAn) -> Result<Vec<LinearForm>> {
    stability_inequalities_for(q, &q.enumerate_indecomposables())
}
