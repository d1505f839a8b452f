//! Weight systems, the intrinsic weight system of an A_n orientation, and exact slopes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, domain, Result};
use crate::quiver::{DimensionVector, QuiverAn, VertexSet, VertexType};

/// One integer weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSystem(pub Vec<i64>);

impl WeightSystem {
    pub fn zeros(n: usize) -> Self {
        WeightSystem(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight at 1-based vertex `i`.
    pub fn theta(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn scaled(&self, k: i64) -> WeightSystem {
        WeightSystem(self.0.iter().map(|t| t * k).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Parses comma-separated integers, e.g. `"6,4,2,-24"`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return domain("empty weight list");
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| crate::Error::Domain(format!("bad weight {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightSystem)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Intrinsic weight system built from vertex types and left/right counts.
///
/// `l + r + 2lr` at sources, its negative at sinks, `r - l` inside rightward
/// paths and `l - r` inside leftward ones. All magnitudes are at most
/// `(n - 1) + (n - 1)^2 / 2`, so `i64` is exact for any `n` that fits in memory.
pub fn intrinsic_weights(q: &QuiverAn) -> WeightSystem {
    WeightSystem(
        q.classify_vertices()
            .iter()
            .map(|c| {
                let (l, r) = (c.l as i64, c.r as i64);
                match c.vtype {
                    VertexType::I => l + r + 2 * l * r,
                    VertexType::II => -l - r - 2 * l * r,
                    VertexType::III => r - l,
                    VertexType::IV => l - r,
                }
            })
            .collect(),
    )
}

/// The same weights, recomputed as a sum over every connected subquiver `[a, b]`
/// of (arrows of the subquiver leaving `i`) minus (arrows entering `i`).
pub fn intrinsic_weights_via_subquivers(q: &QuiverAn) -> WeightSystem {
    let n = q.n();
    let arrows: Vec<_> = q.arrows().collect();
    let mut thetas = vec![0i64; n];
    for a in 1..=n {
        for b in a..=n {
            // arrow k joins k and k+1; it lies in [a, b] iff a <= k < b
            for arrow in &arrows[a - 1..b - 1] {
                thetas[arrow.source - 1] += 1;
                thetas[arrow.target - 1] -= 1;
            }
        }
    }
    WeightSystem(thetas)
}

/// `sum_i theta_i d_i`.
pub fn weight_of(w: &WeightSystem, d: &DimensionVector) -> Result<i64> {
    check_len(w.len(), d.len())?;
    Ok(w.0.iter().zip(&d.0).map(|(t, &x)| t * x as i64).sum())
}

pub fn rank_of(d: &DimensionVector) -> i64 {
    d.0.iter().map(|&x| x as i64).sum()
}

/// Compares `w(d1)/r(d1)` with `w(d2)/r(d2)` by cross-multiplication.
pub fn slope_cmp(w: &WeightSystem, d1: &DimensionVector, d2: &DimensionVector) -> Result<Ordering> {
    let (r1, r2) = (rank_of(d1), rank_of(d2));
    if r1 == 0 || r2 == 0 {
        return domain("slope of the zero representation is undefined");
    }
    let lhs = weight_of(w, d1)? as i128 * r2 as i128;
    let rhs = weight_of(w, d2)? as i128 * r1 as i128;
    Ok(lhs.cmp(&rhs))
}

/// Weight and rank of a thin support, for the bitmask fast paths.
pub(crate) fn set_weight(w: &WeightSystem, s: VertexSet) -> (i64, i64) {
    s.iter().fold((0, 0), |(wt, r), i| (wt + w.theta(i), r + 1))
}

/// Compares the slopes of two (weight, rank) pairs with positive ranks.
pub(crate) fn cmp_slopes(a: (i64, i64), b: (i64, i64)) -> Ordering {
    (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128))
}

/// Total intrinsic weight of an arrow-closed interval `S`, in closed form:
/// `-|S| (l_S + r_S) - 2 l_S r_S`.
pub fn closed_subset_weight_value(q: &QuiverAn, s: VertexSet) -> Result<i64> {
    if s.max_vertex() > q.n() || !s.is_contiguous() {
        return domain(format!("{s} is not a non-empty interval of vertices"));
    }
    if let Some(a) = q
        .arrows()
        .find(|a| s.contains(a.source) && !s.contains(a.target))
    {
        return domain(format!(
            "{s} is not arrow-closed: arrow {} -> {} leaves it",
            a.source, a.target
        ));
    }
    let first = s.iter().next().unwrap_or(1);
    let size = s.len() as i64;
    let left = (first - 1) as i64;
    let right = (q.n() - s.max_vertex()) as i64;
    Ok(-size * (left + right) - 2 * left * right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(word: &str) -> QuiverAn {
        QuiverAn::parse(word).unwrap()
    }

    #[test]
    fn example_weights() {
        let a7 = quiver("RRRLLR");
        assert_eq!(intrinsic_weights(&a7).0, vec![6, 4, 2, -24, 2, 16, -6]);
        assert_eq!(intrinsic_weights(&quiver("RR")).0, vec![2, 0, -2]);
        assert_eq!(intrinsic_weights(&quiver("")).0, vec![0]);
    }

    #[test]
    fn subquiver_sum_examples() {
        assert_eq!(
            intrinsic_weights_via_subquivers(&quiver("RRRLLR")).0,
            vec![6, 4, 2, -24, 2, 16, -6]
        );
        assert_eq!(
            intrinsic_weights_via_subquivers(&quiver("L")).0,
            vec![-1, 1]
        );
        assert_eq!(intrinsic_weights_via_subquivers(&quiver("")).0, vec![0]);
    }

    #[test]
    fn weight_and_rank() {
        let theta = intrinsic_weights(&quiver("RRRLLR"));
        assert_eq!(
            weight_of(&theta, &DimensionVector::unit(7, 4)).unwrap(),
            -24
        );
        assert_eq!(weight_of(&theta, &DimensionVector(vec![1; 7])).unwrap(), 0);
        assert_eq!(weight_of(&theta, &DimensionVector::zero(7)).unwrap(), 0);
        assert!(weight_of(&theta, &DimensionVector::zero(3)).is_err());
        assert_eq!(rank_of(&DimensionVector(vec![0, 0, 1, 1, 1, 0, 0])), 3);
        assert_eq!(rank_of(&DimensionVector::unit(7, 1)), 1);
        assert_eq!(rank_of(&DimensionVector(vec![1; 7])), 7);
    }

    #[test]
    fn slopes() {
        let theta = intrinsic_weights(&quiver("RRRLLR"));
        let full = DimensionVector(vec![1; 7]);
        assert_eq!(
            slope_cmp(&theta, &DimensionVector::unit(7, 4), &full).unwrap(),
            Ordering::Less
        );
        assert_eq!(slope_cmp(&theta, &full, &full).unwrap(), Ordering::Equal);
        let w = WeightSystem(vec![2, 0, -2]);
        assert_eq!(
            slope_cmp(
                &w,
                &DimensionVector(vec![0, 1, 1]),
                &DimensionVector(vec![1, 1, 1])
            )
            .unwrap(),
            Ordering::Less
        );
        assert!(slope_cmp(
            &w,
            &DimensionVector::zero(3),
            &DimensionVector(vec![1, 1, 1])
        )
        .is_err());
    }

    #[test]
    fn closed_subset_values() {
        let a7 = quiver("RRRLLR");
        assert_eq!(
            closed_subset_weight_value(&a7, VertexSet::from_vertices([4])).unwrap(),
            -24
        );
        assert_eq!(
            closed_subset_weight_value(&a7, VertexSet::from_vertices([4, 5])).unwrap(),
            -22
        );
        assert_eq!(
            closed_subset_weight_value(&quiver("RR"), VertexSet::from_vertices([3])).unwrap(),
            -2
        );
        // 3 -> 4 leaves {3}
        assert!(closed_subset_weight_value(&a7, VertexSet::from_vertices([3])).is_err());
        assert!(closed_subset_weight_value(&a7, VertexSet::from_vertices([4, 7])).is_err());
        assert!(closed_subset_weight_value(&a7, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn parse_csv_weights() {
        assert_eq!(
            WeightSystem::parse_csv("6,4,2,-24").unwrap().0,
            vec![6, 4, 2, -24]
        );
        assert!(WeightSystem::parse_csv("1,x").is_err());
        assert!(WeightSystem::parse_csv("").is_err());
    }
}
