//! Orientations of the A_n line diagram.
//!
//! Vertices are labelled `1..=n` from left to right. The edge between `k` and
//! `k + 1` is either a right arrow `k -> k+1` or a left arrow `k <- k+1`, and an
//! orientation is written as a word over `R`/`L` (or `>`/`<`) of length `n - 1`.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// `k -> k+1`
    Right,
    /// `k <- k+1`
    Left,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }

    fn symbol(self) -> char {
        match self {
            Direction::Right => 'R',
            Direction::Left => 'L',
        }
    }
}

/// A single arrow with 1-based endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    /// Source: every incident arrow starts here.
    I,
    /// Sink: every incident arrow ends here.
    II,
    /// Interior vertex of a path running left to right.
    III,
    /// Interior vertex of a path running right to left.
    IV,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VertexType::I => "I",
            VertexType::II => "II",
            VertexType::III => "III",
            VertexType::IV => "IV",
        };
        f.write_str(s)
    }
}

/// Type of a vertex together with its left and right vertex counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexContext {
    pub index: usize,
    pub vtype: VertexType,
    pub l: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverAn {
    orientation: Vec<Direction>,
}

impl QuiverAn {
    pub fn new(orientation: Vec<Direction>) -> Self {
        QuiverAn { orientation }
    }

    /// Parses an orientation word. The empty word is the one-vertex quiver.
    pub fn parse(word: &str) -> Result<Self> {
        let orientation = word
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'R' | '>' => Ok(Direction::Right),
                'L' | '<' => Ok(Direction::Left),
                found => Err(Error::Parse {
                    position: i + 1,
                    found,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuiverAn { orientation })
    }

    /// All `2^(n-1)` orientations with `n` vertices, in lexicographic word order (`L < R`).
    pub fn all_with_vertices(n: usize) -> impl Iterator<Item = QuiverAn> {
        assert!(n >= 1, "a quiver needs at least one vertex");
        let edges = n - 1;
        assert!(edges < 64, "too many orientations to enumerate");
        (0..1u64 << edges).map(move |code| {
            let orientation = (0..edges)
                .map(|k| {
                    if code >> (edges - 1 - k) & 1 == 1 {
                        Direction::Right
                    } else {
                        Direction::Left
                    }
                })
                .collect();
            QuiverAn { orientation }
        })
    }

    pub fn n(&self) -> usize {
        self.orientation.len() + 1
    }

    pub fn orientation(&self) -> &[Direction] {
        &self.orientation
    }

    pub fn word(&self) -> String {
        self.orientation.iter().map(|d| d.symbol()).collect()
    }

    /// Direction of the edge between `k` and `k + 1`.
    pub fn edge(&self, k: usize) -> Direction {
        self.orientation[k - 1]
    }

    /// Arrows in edge order; arrow `k` joins vertices `k` and `k + 1`.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.orientation.iter().enumerate().map(|(k, d)| match d {
            Direction::Right => Arrow {
                source: k + 1,
                target: k + 2,
            },
            Direction::Left => Arrow {
                source: k + 2,
                target: k + 1,
            },
        })
    }

    pub fn vertex_type(&self, i: usize) -> VertexType {
        assert!(1 <= i && i <= self.n(), "vertex {i} out of range");
        // incoming from the left edge, outgoing along the right edge, etc.
        let left = (i > 1).then(|| self.edge(i - 1));
        let right = (i < self.n()).then(|| self.edge(i));
        match (left, right) {
            (None, None) => VertexType::I,
            (None, Some(Direction::Right)) | (Some(Direction::Left), None) => VertexType::I,
            (None, Some(Direction::Left)) | (Some(Direction::Right), None) => VertexType::II,
            (Some(Direction::Left), Some(Direction::Right)) => VertexType::I,
            (Some(Direction::Right), Some(Direction::Left)) => VertexType::II,
            (Some(Direction::Right), Some(Direction::Right)) => VertexType::III,
            (Some(Direction::Left), Some(Direction::Left)) => VertexType::IV,
        }
    }

    pub fn classify_vertices(&self) -> Vec<VertexContext> {
        let n = self.n();
        (1..=n)
            .map(|i| VertexContext {
                index: i,
                vtype: self.vertex_type(i),
                l: i - 1,
                r: n - i,
            })
            .collect()
    }

    /// Mirror image: reverse the word and relabel `i -> n + 1 - i`.
    pub fn reversed(&self) -> QuiverAn {
        QuiverAn {
            orientation: self.orientation.iter().rev().map(|d| d.flipped()).collect(),
        }
    }

    /// Every arrow flipped.
    pub fn opposite(&self) -> QuiverAn {
        QuiverAn {
            orientation: self.orientation.iter().map(|d| d.flipped()).collect(),
        }
    }

    /// Whether a (possibly trivial) path runs from `i` to `j`.
    pub fn has_path(&self, i: usize, j: usize) -> bool {
        if i < j {
            (i..j).all(|k| self.edge(k) == Direction::Right)
        } else {
            (j..i).all(|k| self.edge(k) == Direction::Left)
        }
    }

    /// Graphviz rendering; vertices in `highlight` are shaded.
    pub fn to_dot(&self, highlight: VertexSet) -> String {
        let mut out = String::new();
        out.push_str("digraph Q {\n  rankdir=LR;\n");
        for i in 1..=self.n() {
            if highlight.contains(i) {
                let _ = writeln!(
                    out,
                    "  {i} [label=\"{i}\", style=filled, fillcolor=lightgray];"
                );
            } else {
                let _ = writeln!(out, "  {i} [label=\"{i}\"];");
            }
        }
        for a in self.arrows() {
            let _ = writeln!(out, "  {} -> {};", a.source, a.target);
        }
        out.push_str("}\n");
        out
    }

    pub fn contains_interval(&self, rep: Interval) -> bool {
        rep.q <= self.n()
    }

    /// Every interval `I_{p,q}` in lexicographic order.
    pub fn enumerate_indecomposables(&self) -> Vec<Interval> {
        let n = self.n();
        (1..=n)
            .flat_map(|p| (p..=n).map(move |q| Interval { p, q }))
            .collect()
    }

    /// `sum d_i^2 - sum_a d_s(a) d_t(a)`.
    pub fn quadratic_form(&self, d: &DimensionVector) -> Result<i64> {
        crate::error::check_len(self.n(), d.len())?;
        let diag: i64 = d.0.iter().map(|&x| (x * x) as i64).sum();
        let off: i64 = self
            .arrows()
            .map(|a| (d.get(a.source) * d.get(a.target)) as i64)
            .sum();
        Ok(diag - off)
    }

    /// Non-zero vectors with entries in `0..=bound` on which the quadratic form is 1.
    pub fn positive_roots_bruteforce(&self, bound: usize) -> Result<Vec<DimensionVector>> {
        let n = self.n();
        let base = bound + 1;
        let total = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > 1 << 24 {
            return Err(Error::ResourceLimit(format!(
                "{base}^{n} candidate vectors"
            )));
        }
        let mut roots = Vec::new();
        let mut digits = vec![0usize; n];
        for _ in 0..total {
            let d = DimensionVector(digits.clone());
            if !d.is_zero() && self.quadratic_form(&d)? == 1 {
                roots.push(d);
            }
            for digit in digits.iter_mut() {
                *digit += 1;
                if *digit < base {
                    break;
                }
                *digit = 0;
            }
        }
        roots.sort();
        Ok(roots)
    }
}

impl fmt::Display for QuiverAn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (k, d) in self.orientation.iter().enumerate() {
            let arrow = match d {
                Direction::Right => "->",
                Direction::Left => "<-",
            };
            write!(f, " {arrow} {}", k + 2)?;
        }
        Ok(())
    }
}

/// The thin indecomposable `I_{p,q}` supported on `p..=q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub p: usize,
    pub q: usize,
}

impl Interval {
    pub fn new(p: usize, q: usize, n: usize) -> Result<Self> {
        if 1 <= p && p <= q && q <= n {
            Ok(Interval { p, q })
        } else {
            domain(format!("interval ({p},{q}) is not valid for n = {n}"))
        }
    }

    pub fn len(&self) -> usize {
        self.q - self.p + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.p, self.q)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.p <= i && i <= self.q
    }

    pub fn dimension_vector(&self, n: usize) -> Result<DimensionVector> {
        Interval::new(self.p, self.q, n)?;
        Ok(DimensionVector(
            (1..=n).map(|i| usize::from(self.contains(i))).collect(),
        ))
    }

    /// `"p,q"`, the key format used in JSON reports.
    pub fn key(&self) -> String {
        format!("{},{}", self.p, self.q)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{{{},{}}}", self.p, self.q)
    }
}

/// Dimension vector, entry `i - 1` holding `dim X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        DimensionVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at 1-based vertex `i`; zero outside `1..=n`.
    pub fn get(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_thin(&self) -> bool {
        self.0.iter().all(|&x| x <= 1)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, _)| i + 1),
        )
    }
}

/// A set of vertices stored as a bitmask (bit `i - 1` for vertex `i`), so `n <= 64`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn range(lo: usize, hi: usize) -> Self {
        debug_assert!(1 <= lo && hi <= 64);
        if lo > hi {
            return Self::EMPTY;
        }
        let width = hi - lo + 1;
        let bits = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        VertexSet(bits << (lo - 1))
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| {
            assert!((1..=64).contains(&v), "vertex {v} outside bitmask range");
            acc | 1 << (v - 1)
        }))
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(&self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=64).filter(move |&i| bits >> (i - 1) & 1 == 1)
    }

    pub fn max_vertex(&self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Indicator vector over `1..=n`.
    pub fn indicator(&self, n: usize) -> DimensionVector {
        DimensionVector((1..=n).map(|i| usize::from(self.contains(i))).collect())
    }

    /// Whether the set is a non-empty run of consecutive labels.
    pub fn is_contiguous(&self) -> bool {
        if self.0 == 0 {
            return false;
        }
        let shifted = self.0 >> self.0.trailing_zeros();
        shifted & (shifted.wrapping_add(1)) == 0
    }

    /// Maximal runs of consecutive labels, left to right.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut rest = self.0;
        while rest != 0 {
            let lo = rest.trailing_zeros();
            let shifted = rest >> lo;
            let run = shifted.trailing_ones();
            let mask = if run == 64 {
                u64::MAX
            } else {
                ((1u64 << run) - 1) << lo
            };
            out.push(VertexSet(mask));
            rest &= !mask;
        }
        out
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = vs.iter().find(|v| !(1..=64).contains(*v)) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(VertexSet::from_vertices(vs))
    }
}

/// Thin representation on `support` is indecomposable iff its support quiver is connected.
pub fn is_indecomposable_thin(q: &QuiverAn, support: VertexSet) -> bool {
    support.max_vertex() <= q.n() && support.is_contiguous()
}
