//! Euler form, the weight systems attached to intervals through it, non-negative
//! decompositions of the intrinsic weights, and determinantal semi-invariants.
//!
//! Group elements act on representations by `(g·Y)_a = g_t(a) Y_a g_s(a)^{-1}`
//! and on functions by `(g·f)(Y) = f(g^{-1}·Y)`. A `W`-semi-invariant satisfies
//! `g·f = χ_W(g) f` with `χ_W(g) = prod_i det(g_i)^{W_i}`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{check_len, domain, Error, Result};
use crate::ff::{Matrix, PrimeField};
use crate::oracle::{apply_group, FFRep, GroupElement};
use crate::quiver::{DimensionVector, Interval, QuiverAn, VertexType};
use crate::weights::{intrinsic_weights, WeightSystem};

/// `<d, e> = sum_i d_i e_i - sum_a d_s(a) e_t(a)`.
pub fn euler_form(q: &QuiverAn, dx: &DimensionVector, dy: &DimensionVector) -> Result<i64> {
    check_len(q.n(), dx.len())?;
    check_len(q.n(), dy.len())?;
    let diag: i64 = dx.0.iter().zip(&dy.0).map(|(&a, &b)| (a * b) as i64).sum();
    let off: i64 = q
        .arrows()
        .map(|a| (dx.get(a.source) * dy.get(a.target)) as i64)
        .sum();
    Ok(diag - off)
}

/// `(W_X)_i = <d_X, e_i>` evaluated by vertex type.
pub fn weight_left_of(q: &QuiverAn, dx: &DimensionVector) -> Result<WeightSystem> {
    check_len(q.n(), dx.len())?;
    let d = |i: usize| dx.get(i) as i64;
    Ok(WeightSystem(
        (1..=q.n())
            .map(|i| match q.vertex_type(i) {
                VertexType::I => d(i),
                VertexType::II => d(i) - d(i - 1) - d(i + 1),
                VertexType::III => d(i) - d(i - 1),
                VertexType::IV => d(i) - d(i + 1),
            })
            .collect(),
    ))
}

/// `(W^Y)_i = -<e_i, d_Y>` evaluated by vertex type.
pub fn weight_right_of(q: &QuiverAn, dy: &DimensionVector) -> Result<WeightSystem> {
    check_len(q.n(), dy.len())?;
    let d = |i: usize| dy.get(i) as i64;
    Ok(WeightSystem(
        (1..=q.n())
            .map(|i| match q.vertex_type(i) {
                VertexType::I => -d(i) + d(i - 1) + d(i + 1),
                VertexType::II => -d(i),
                VertexType::III => -d(i) + d(i + 1),
                VertexType::IV => -d(i) + d(i - 1),
            })
            .collect(),
    ))
}

pub fn weight_left(q: &QuiverAn, x: Interval) -> Result<WeightSystem> {
    weight_left_of(q, &x.dimension_vector(q.n())?)
}

pub fn weight_right(q: &QuiverAn, y: Interval) -> Result<WeightSystem> {
    weight_right_of(q, &y.dimension_vector(q.n())?)
}

/// Closed-form table of `W_{I_{p,q}}`; `None` where the table has no row
/// (the last vertex of a non-trivial interval).
pub fn table_theta(q: &QuiverAn, x: Interval) -> Result<Vec<Option<i64>>> {
    Interval::new(x.p, x.q, q.n())?;
    use VertexType::*;
    Ok((1..=q.n())
        .map(|i| {
            let t = q.vertex_type(i);
            if x.p < i && i < x.q {
                Some(match t {
                    I => 1,
                    II => -1,
                    III | IV => 0,
                })
            } else if i == x.p && i == x.q {
                Some(1)
            } else if i == x.p {
                Some(if matches!(t, I | III) { 1 } else { 0 })
            } else if i + 1 == x.p {
                Some(if matches!(t, I | III) { 0 } else { -1 })
            } else if i == x.q + 1 {
                Some(if matches!(t, I | IV) { 0 } else { -1 })
            } else if i + 1 < x.p || i > x.q + 1 {
                Some(0)
            } else {
                None
            }
        })
        .collect())
}

/// Closed-form table of `W^{I_{p,q}}`, with the same gap as [`table_theta`].
pub fn table_theta_prime(q: &QuiverAn, y: Interval) -> Result<Vec<Option<i64>>> {
    Interval::new(y.p, y.q, q.n())?;
    use VertexType::*;
    Ok((1..=q.n())
        .map(|i| {
            let t = q.vertex_type(i);
            if y.p < i && i < y.q {
                Some(match t {
                    I => 1,
                    II => -1,
                    III | IV => 0,
                })
            } else if i == y.p && i == y.q {
                Some(-1)
            } else if i == y.p {
                Some(if matches!(t, II | IV) { -1 } else { 0 })
            } else if i + 1 == y.p {
                Some(if matches!(t, I | III) { 1 } else { 0 })
            } else if i == y.q + 1 {
                Some(if matches!(t, I | IV) { 1 } else { 0 })
            } else if i + 1 < y.p || i > y.q + 1 {
                Some(0)
            } else {
                None
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Generators `W_{I_{p,q}}`.
    Left,
    /// Generators `W^{I_{p,q}}`.
    Right,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Mode::Left),
            "right" => Ok(Mode::Right),
            other => domain(format!("unknown mode {other:?}, expected left or right")),
        }
    }
}

/// Non-negative integer coefficients per interval; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub mode: Mode,
    pub coefficients: BTreeMap<Interval, u64>,
}

impl Decomposition {
    /// `sum_I c(I) W_I` (or `W^I`).
    pub fn reconstruct(&self, q: &QuiverAn) -> Result<WeightSystem> {
        let mut acc = vec![0i64; q.n()];
        for (&iv, &c) in &self.coefficients {
            let w = match self.mode {
                Mode::Left => weight_left(q, iv)?,
                Mode::Right => weight_right(q, iv)?,
            };
            for (a, t) in acc.iter_mut().zip(&w.0) {
                *a += c as i64 * t;
            }
        }
        Ok(WeightSystem(acc))
    }
}

/// Serialises as `{"p,q": c, ...}` in interval order.
impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coefficients.len()))?;
        for (iv, c) in &self.coefficients {
            map.serialize_entry(&iv.key(), c)?;
        }
        map.end()
    }
}

/// Vertices in an order where every arrow goes forward.
fn topological_order(q: &QuiverAn) -> Vec<usize> {
    let n = q.n();
    let mut indeg = vec![0usize; n + 1];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (1..=n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for a in q.arrows().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.push(a.target);
            }
        }
    }
    order
}

/// The unique integer vector `d` whose generator equals `target`: `<d, e_i> = θ_i`
/// in left mode, `-<e_i, d> = θ_i` in right mode. The Euler form is unimodular,
/// so `d` always exists over the integers.
pub fn euler_dual(q: &QuiverAn, target: &WeightSystem, mode: Mode) -> Result<Vec<i64>> {
    check_len(q.n(), target.len())?;
    let mut d = vec![0i64; q.n() + 1];
    let order = topological_order(q);
    match mode {
        // d_i = θ_i + sum over arrows j -> i of d_j
        Mode::Left => {
            for &i in &order {
                d[i] = target.theta(i)
                    + q.arrows()
                        .filter(|a| a.target == i)
                        .map(|a| d[a.source])
                        .sum::<i64>();
            }
        }
        // d_i = sum over arrows i -> j of d_j - θ_i
        Mode::Right => {
            for &i in order.iter().rev() {
                d[i] = q
                    .arrows()
                    .filter(|a| a.source == i)
                    .map(|a| d[a.target])
                    .sum::<i64>()
                    - target.theta(i);
            }
        }
    }
    d.remove(0);
    Ok(d)
}

/// Writes `target` as a non-negative integer combination of interval generators.
///
/// A combination `sum c(I) W_I` equals `W_D` for `D = sum c(I) d_I`, and `D` is
/// pinned down by `target`, so this is an interval decomposition of `D`. Among
/// decompositions with the smallest largest coefficient, the lexicographically
/// least coefficient vector (intervals in lexicographic order) is returned.
pub fn decompose(q: &QuiverAn, target: &WeightSystem, mode: Mode) -> Result<Decomposition> {
    let d = euler_dual(q, target, mode)?;
    if let Some(i) = d.iter().position(|&x| x < 0) {
        return domain(format!(
            "no non-negative decomposition exists: the dual dimension vector {d:?} is negative at vertex {}",
            i + 1
        ));
    }
    let n = q.n();
    let intervals = q.enumerate_indecomposables();
    // singletons alone need a cap of max D
    let (mut lo, mut hi) = (0u64, d.iter().copied().max().unwrap_or(0) as u64);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fits(n, &intervals, mid, &d) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let cap = lo;
    let mut residual = d;
    let mut coefficients = BTreeMap::new();
    for (k, &iv) in intervals.iter().enumerate() {
        let rest = &intervals[k + 1..];
        let mut trial = residual.clone();
        let mut chosen = None;
        for c in 0..=cap {
            if fits(n, rest, cap, &trial) {
                chosen = Some(c);
                break;
            }
            for r in &mut trial[iv.p - 1..iv.q] {
                *r -= 1;
            }
        }
        let c = chosen.ok_or_else(|| {
            Error::NotFoundWithinBound(format!(
                "no coefficient <= {cap} for {iv} completes the decomposition"
            ))
        })?;
        if c > 0 {
            for r in &mut residual[iv.p - 1..iv.q] {
                *r -= c as i64;
            }
            coefficients.insert(iv, c);
        }
    }
    debug_assert!(residual.iter().all(|&r| r == 0));
    Ok(Decomposition { mode, coefficients })
}

/// Whether `residual` is a sum of indicator vectors of `intervals` with every
/// coefficient in `0..=cap`.
///
/// Interval `[p, q]` becomes an arc of capacity `cap` from boundary `p - 1` to
/// boundary `q`; boundary `j` must send out `residual[j+1] - residual[j]` more
/// than it receives, which a maximum flow decides.
fn fits(n: usize, intervals: &[Interval], cap: u64, residual: &[i64]) -> bool {
    if residual.iter().any(|&r| r < 0) {
        return false;
    }
    let at = |i: usize| {
        if (1..=n).contains(&i) {
            residual[i - 1]
        } else {
            0
        }
    };
    let (source, sink) = (n + 1, n + 2);
    let mut net = FlowNetwork::new(n + 3);
    let mut demand = 0;
    for j in 0..=n {
        let excess = at(j + 1) - at(j);
        if excess > 0 {
            net.add_arc(source, j, excess as u64);
            demand += excess as u64;
        } else if excess < 0 {
            net.add_arc(j, sink, excess.unsigned_abs());
        }
    }
    for iv in intervals {
        net.add_arc(iv.p - 1, iv.q, cap);
    }
    net.max_flow(source, sink) == demand
}

/// Residual graph for Edmonds-Karp; arc `k ^ 1` is the reverse of arc `k`.
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u64) {
        for (from, to, c) in [(u, v, cap), (v, u, 0)] {
            self.adj[from].push(self.to.len());
            self.to.push(to);
            self.cap.push(c);
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &k in &self.adj[u] {
                    let v = self.to[k];
                    if self.cap[k] > 0 && v != s && via[v] == usize::MAX {
                        via[v] = k;
                        queue.push_back(v);
                    }
                }
            }
            if via[t] == usize::MAX {
                return flow;
            }
            let mut push = u64::MAX;
            let mut v = t;
            while v != s {
                push = push.min(self.cap[via[v]]);
                v = self.to[via[v] ^ 1];
            }
            let mut v = t;
            while v != s {
                self.cap[via[v]] -= push;
                self.cap[via[v] ^ 1] += push;
                v = self.to[via[v] ^ 1];
            }
            flow += push;
        }
    }
}

pub fn decompose_intrinsic(q: &QuiverAn, mode: Mode) -> Result<Decomposition> {
    decompose(q, &intrinsic_weights(q), mode)
}

/// Whether every interval with a positive coefficient meets the endpoint-type
/// side conditions for its mode.
///
/// Left mode: for `p = 1`, `q != n` must be of type I or III; for `p != 1` of
/// type I or IV, `q = n` or `q` is of type II or IV; for `p` of type II or III,
/// `q != n` must be of type I or III. Right mode swaps the type pairs.
pub fn support_restriction_check(q: &QuiverAn, dec: &Decomposition) -> bool {
    use VertexType::*;
    let n = q.n();
    let (closing, open_p) = match dec.mode {
        Mode::Left => ([I, III], [I, IV]),
        Mode::Right => ([II, IV], [II, III]),
    };
    let open_q = match dec.mode {
        Mode::Left => [II, IV],
        Mode::Right => [I, III],
    };
    dec.coefficients.keys().all(|iv| {
        let tp = q.vertex_type(iv.p);
        let tq = q.vertex_type(iv.q);
        if iv.p != 1 && open_p.contains(&tp) {
            iv.q == n || open_q.contains(&tq)
        } else {
            iv.q != n && closing.contains(&tq)
        }
    })
}

/// Matrix of `f_X^Y : (f_i) -> (f_t(a) X_a - Y_a f_s(a))_a` in matrix-unit bases.
///
/// Columns run over `Hom(X_i, Y_i)` for `i = 1..n`, rows over `Hom(X_s(a), Y_t(a))`
/// by arrow; inside a block the entry `(r, c)` has offset `r * dim X + c`.
pub fn hom_matrix(q: &QuiverAn, x: &FFRep, y: &FFRep) -> Result<Matrix> {
    if x.prime() != y.prime() {
        return domain("representations live over different fields");
    }
    check_len(q.n(), x.dims().len())?;
    check_len(q.n(), y.dims().len())?;
    let field = *x.field();
    let (dx, dy) = (x.dims(), y.dims());
    let mut col_off = vec![0usize; q.n() + 2];
    for i in 1..=q.n() {
        col_off[i + 1] = col_off[i] + dx.get(i) * dy.get(i);
    }
    let cols = col_off[q.n() + 1];
    let arrows: Vec<_> = q.arrows().collect();
    let mut row_off = vec![0usize; arrows.len() + 1];
    for (k, a) in arrows.iter().enumerate() {
        row_off[k + 1] = row_off[k] + dx.get(a.source) * dy.get(a.target);
    }
    let mut m = Matrix::zeros(row_off[arrows.len()], cols);
    for (k, a) in arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let xa = x.map(k + 1);
        let ya = y.map(k + 1);
        let (xs, xt, ys, yt) = (dx.get(s), dx.get(t), dy.get(s), dy.get(t));
        for r in 0..yt {
            for c in 0..xs {
                let row = row_off[k] + r * xs + c;
                // (f_t X_a)[r][c] = sum_m f_t[r][m] X_a[m][c]
                for mm in 0..xt {
                    let col = col_off[t] + r * xt + mm;
                    let v = field.add(m.get(row, col), xa.get(mm, c));
                    m.set(row, col, v);
                }
                // -(Y_a f_s)[r][c] = -sum_m Y_a[r][m] f_s[m][c]
                for mm in 0..ys {
                    let col = col_off[s] + mm * xs + c;
                    let v = field.sub(m.get(row, col), ya.get(r, mm));
                    m.set(row, col, v);
                }
            }
        }
    }
    Ok(m)
}

/// `c(X, Y) = det f_X^Y`, defined when `<d_X, d_Y> = 0`.
pub fn c_semiinvariant(q: &QuiverAn, x: &FFRep, y: &FFRep) -> Result<u64> {
    let e = euler_form(q, x.dims(), y.dims())?;
    if e != 0 {
        return domain(format!("<d_X, d_Y> = {e}, so f_X^Y is not square"));
    }
    Ok(hom_matrix(q, x, y)?.determinant(x.field()))
}

/// Whether the block construction for `det A` repeats a row or column block,
/// which forces the determinant to vanish on every representation.
pub fn det_a_identically_zero(theta: &WeightSystem, dims: &DimensionVector) -> bool {
    theta
        .0
        .iter()
        .zip(&dims.0)
        .any(|(&t, &d)| d > 0 && t.abs() >= 2)
}

/// `det A` for `A : ⊕ X_i^{θ⁺_i} -> ⊕ X_j^{θ⁻_j}` whose block from a copy of
/// `X_i` to a copy of `X_j` is the path map `X(p_{i,j})`, or zero without a path.
pub fn det_a_semiinvariant(q: &QuiverAn, theta: &WeightSystem, x: &FFRep) -> Result<u64> {
    check_len(q.n(), theta.len())?;
    let dims = x.dims();
    let pairing: i64 = theta
        .0
        .iter()
        .zip(&dims.0)
        .map(|(&t, &d)| t * d as i64)
        .sum();
    if pairing != 0 {
        return domain(format!(
            "sum of theta_i dim X_i is {pairing}; only constant semi-invariants exist"
        ));
    }
    // (vertex, offset) for every copy
    let mut col_blocks = Vec::new();
    let mut row_blocks = Vec::new();
    let (mut cols, mut rows) = (0, 0);
    for i in 1..=q.n() {
        let t = theta.theta(i);
        for _ in 0..t.max(0) {
            col_blocks.push((i, cols));
            cols += dims.get(i);
        }
        for _ in 0..(-t).max(0) {
            row_blocks.push((i, rows));
            rows += dims.get(i);
        }
    }
    debug_assert_eq!(rows, cols);
    let field = *x.field();
    let mut a = Matrix::zeros(rows, cols);
    for &(i, c0) in &col_blocks {
        for &(j, r0) in &row_blocks {
            if let Some(block) = x.path_map(q, i, j) {
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        a.set(r0 + r, c0 + c, block.get(r, c));
                    }
                }
            }
        }
    }
    Ok(a.determinant(&field))
}

/// `χ_W(g) = prod_i det(g_i)^{W_i}`.
pub fn character_value(theta: &WeightSystem, g: &GroupElement, field: &PrimeField) -> Result<u64> {
    check_len(theta.len(), g.blocks.len())?;
    let mut acc = 1 % field.prime();
    for (&t, b) in theta.0.iter().zip(&g.blocks) {
        let det = b.determinant(field);
        if det == 0 {
            return domain("group element has a singular block");
        }
        let base = if t >= 0 {
            det
        } else {
            field.inv(det).expect("determinant is non-zero")
        };
        acc = field.mul(acc, field.pow(base, t.unsigned_abs()));
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub semi_invariant: &'static str,
    pub trial: usize,
    /// `f(g^{-1}·Y)`
    pub lhs: u64,
    /// `χ(g) f(Y)`
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiInvariantTally {
    pub name: &'static str,
    pub evaluations: usize,
    pub failures: usize,
    /// Trials where `f(Y)` was non-zero.
    pub nonzero: usize,
    pub identically_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiInvarianceReport {
    pub quiver: String,
    pub thetas: WeightSystem,
    pub dims: DimensionVector,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
    pub semi_invariants: Vec<SemiInvariantTally>,
}

/// Checks `f(g^{-1}·Y) = χ_θ(g) f(Y)` on random `(g, Y)` with `Y` of dimension
/// `dims`, for `c_X(·)` (with `W_X = θ`, when such an `X` exists) and `det A`.
pub fn check_semiinvariance(
    q: &QuiverAn,
    theta: &WeightSystem,
    dims: &DimensionVector,
    trials: usize,
    prime: u64,
    seed: u64,
) -> Result<SemiInvarianceReport> {
    check_len(q.n(), theta.len())?;
    check_len(q.n(), dims.len())?;
    if trials == 0 {
        return domain("at least one trial is required");
    }
    let field = PrimeField::new(prime)?;
    let pairing: i64 = theta
        .0
        .iter()
        .zip(&dims.0)
        .map(|(&t, &d)| t * d as i64)
        .sum();
    if pairing != 0 {
        return domain(format!(
            "sum of theta_i d_i is {pairing}; weight {theta} has no non-constant semi-invariants in dimension {:?}", dims.0
        ));
    }
    let dx = euler_dual(q, theta, Mode::Left)?;
    let dx = dx
        .iter()
        .all(|&v| v >= 0)
        .then(|| DimensionVector(dx.iter().map(|&v| v as usize).collect()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c_tally = SemiInvariantTally {
        name: "c_X",
        evaluations: 0,
        failures: 0,
        nonzero: 0,
        identically_zero: false,
    };
    let mut a_tally = SemiInvariantTally {
        name: "det_A",
        evaluations: 0,
        failures: 0,
        nonzero: 0,
        identically_zero: det_a_identically_zero(theta, dims),
    };
    let mut first = None;
    for trial in 0..trials {
        let y = FFRep::random_with(q, dims, &field, &mut rng)?;
        let g = GroupElement::random(dims, &field, &mut rng);
        let moved = apply_group(q, &g.inverse(&field)?, &y)?;
        let chi = character_value(theta, &g, &field)?;

        let mut record = |tally: &mut SemiInvariantTally, name, before: u64, after: u64| {
            tally.evaluations += 1;
            tally.nonzero += usize::from(before != 0);
            let rhs = field.mul(chi, before);
            if after != rhs {
                tally.failures += 1;
                first.get_or_insert(Counterexample {
                    semi_invariant: name,
                    trial,
                    lhs: after,
                    rhs,
                });
            }
        };

        if let Some(dx) = &dx {
            let x = FFRep::random_with(q, dx, &field, &mut rng)?;
            let before = c_semiinvariant(q, &x, &y)?;
            let after = c_semiinvariant(q, &x, &moved)?;
            record(&mut c_tally, "c_X", before, after);
        }
        let before = det_a_semiinvariant(q, theta, &y)?;
        let after = det_a_semiinvariant(q, theta, &moved)?;
        record(&mut a_tally, "det_A", before, after);
    }
    let mut tallies = Vec::new();
    if dx.is_some() {
        tallies.push(c_tally);
    }
    tallies.push(a_tally);
    Ok(SemiInvarianceReport {
        quiver: q.word(),
        thetas: theta.clone(),
        dims: dims.clone(),
        prime,
        seed,
        trials,
        failures: tallies.iter().map(|t| t.failures).sum(),
        first_counterexample: first,
        semi_invariants: tallies,
    })
}
