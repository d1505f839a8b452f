//! Explicit representations over small prime fields and brute-force
//! subrepresentation enumeration, used to cross-check the thin fast paths.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, domain, Error, Result};
use crate::ff::{Matrix, PrimeField};
use crate::quiver::{DimensionVector, Direction, Interval, QuiverAn};
use crate::weights::{cmp_slopes, weight_of, WeightSystem};

/// Largest vertex dimension the exhaustive oracle accepts.
pub const MAX_ORACLE_DIM: usize = 4;
/// Largest prime the exhaustive oracle accepts.
pub const MAX_ORACLE_PRIME: u64 = 3;

/// A representation of an A_n orientation over `F_p`.
///
/// `maps[k]` is the matrix of arrow `k + 1` (joining `k + 1` and `k + 2`), of
/// shape `dim(target) x dim(source)`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFRep {
    field: PrimeField,
    dims: DimensionVector,
    maps: Vec<Matrix>,
}

impl FFRep {
    pub fn new(
        q: &QuiverAn,
        field: PrimeField,
        dims: DimensionVector,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        check_len(q.n(), dims.len())?;
        check_len(q.n() - 1, maps.len())?;
        for (a, m) in q.arrows().zip(&maps) {
            let want = (dims.get(a.target), dims.get(a.source));
            if m.shape() != want {
                return domain(format!(
                    "map for arrow {} -> {} has shape {:?}, expected {:?}",
                    a.source,
                    a.target,
                    m.shape(),
                    want
                ));
            }
        }
        Ok(FFRep { field, dims, maps })
    }

    /// `I_{p,q}` with identity maps on the arrows inside the interval.
    pub fn thin(q: &QuiverAn, rep: Interval, prime: u64) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        let dims = rep.dimension_vector(q.n())?;
        let maps = q
            .arrows()
            .map(|a| {
                let (t, s) = (dims.get(a.target), dims.get(a.source));
                if t == 1 && s == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(t, s)
                }
            })
            .collect();
        FFRep::new(q, field, dims, maps)
    }

    /// Uniformly random point of the representation space, determined by `seed`.
    pub fn random(q: &QuiverAn, dims: &DimensionVector, prime: u64, seed: u64) -> Result<Self> {
        let field = PrimeField::new(prime)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(q, dims, &field, &mut rng)
    }

    pub fn random_with<R: rand::Rng>(
        q: &QuiverAn,
        dims: &DimensionVector,
        field: &PrimeField,
        rng: &mut R,
    ) -> Result<Self> {
        check_len(q.n(), dims.len())?;
        let maps = q
            .arrows()
            .map(|a| Matrix::random(dims.get(a.target), dims.get(a.source), field, rng))
            .collect();
        FFRep::new(q, *field, dims.clone(), maps)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.prime()
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of arrow `k` (1-based edge index).
    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k - 1]
    }

    /// Composite along the path from `i` to `j`; the identity when `i == j`.
    pub fn path_map(&self, q: &QuiverAn, i: usize, j: usize) -> Option<Matrix> {
        if !q.has_path(i, j) {
            return None;
        }
        let mut acc = Matrix::identity(self.dims.get(i));
        if i < j {
            for k in i..j {
                acc = self.map(k).mul(&acc, &self.field);
            }
        } else {
            for k in (j..i).rev() {
                acc = self.map(k).mul(&acc, &self.field);
            }
        }
        Some(acc)
    }
}

/// Every subspace of `F_p^dim`, each as the rows of its reduced row echelon basis.
pub fn enumerate_subspaces(dim: usize, prime: u64) -> Result<Vec<Matrix>> {
    if dim > MAX_ORACLE_DIM || prime > MAX_ORACLE_PRIME {
        return Err(Error::ResourceLimit(format!(
            "subspace enumeration needs dim <= {MAX_ORACLE_DIM} and p <= {MAX_ORACLE_PRIME}, got dim {dim}, p {prime}"
        )));
    }
    PrimeField::new(prime)?;
    let mut out = Vec::new();
    for rank in 0..=dim {
        for pivots in combinations(dim, rank) {
            // free slots: right of the row's pivot, outside every pivot column
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..dim)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = (prime as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut m = Matrix::zeros(rank, dim);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                let mut rest = code;
                for &(r, c) in &free {
                    m.set(r, c, (rest % prime as usize) as u64);
                    rest /= prime as usize;
                }
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `map` sends the row space of `from` into the row space of `into`.
fn maps_into(map: &Matrix, from: &Matrix, into: &Matrix, field: &PrimeField) -> bool {
    if from.rows() == 0 {
        return true;
    }
    // images of basis vectors, as rows: (map · from^T)^T
    let mut stacked = into.to_rows();
    for r in 0..from.rows() {
        let image: Vec<u64> = (0..map.rows())
            .map(|i| {
                (0..map.cols()).fold(0, |acc, j| {
                    field.add(acc, field.mul(map.get(i, j), from.get(r, j)))
                })
            })
            .collect();
        stacked.push(image);
    }
    if stacked.iter().all(|row| row.is_empty()) {
        return true;
    }
    Matrix::from_rows(stacked).rank(field) == into.rows()
}

/// Dimension vectors of all subrepresentations, found by exhaustive search over
/// subspace tuples (dynamic programming along the line, right to left).
pub fn subrep_dimension_vectors(x: &FFRep, q: &QuiverAn) -> Result<BTreeSet<DimensionVector>> {
    check_len(q.n(), x.dims.len())?;
    let field = x.field;
    let spaces = (1..=q.n())
        .map(|i| enumerate_subspaces(x.dims.get(i), x.prime()))
        .collect::<Result<Vec<_>>>()?;
    let n = q.n();
    // reach[u] = set of dimension suffixes (vertices i..n) achievable with U_i = spaces[i][u]
    let mut reach: Vec<BTreeSet<Vec<usize>>> = spaces[n - 1]
        .iter()
        .map(|u| BTreeSet::from([vec![u.rows()]]))
        .collect();
    for i in (1..n).rev() {
        let map = x.map(i);
        let mut next = Vec::with_capacity(spaces[i - 1].len());
        for u in &spaces[i - 1] {
            let mut suffixes = BTreeSet::new();
            for (w, tails) in spaces[i].iter().zip(&reach) {
                let ok = match q.edge(i) {
                    Direction::Right => maps_into(map, u, w, &field),
                    Direction::Left => maps_into(map, w, u, &field),
                };
                if ok {
                    for t in tails {
                        let mut v = Vec::with_capacity(t.len() + 1);
                        v.push(u.rows());
                        v.extend_from_slice(t);
                        suffixes.insert(v);
                    }
                }
            }
            next.push(suffixes);
        }
        reach = next;
    }
    Ok(reach.into_iter().flatten().map(DimensionVector).collect())
}

/// Stability by brute force over every subrepresentation dimension vector.
pub fn is_stable_ff(x: &FFRep, q: &QuiverAn, w: &WeightSystem) -> Result<bool> {
    check_len(q.n(), w.len())?;
    let rank = x.dims.rank() as i64;
    if rank == 0 {
        return domain("the zero representation has no slope");
    }
    let total = (weight_of(w, &x.dims)?, rank);
    for d in subrep_dimension_vectors(x, q)? {
        if d.is_zero() || d == x.dims {
            continue;
        }
        let sub = (weight_of(w, &d)?, d.rank() as i64);
        if cmp_slopes(sub, total) != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of `prod_i GL(d_i, F_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub blocks: Vec<Matrix>,
}

impl GroupElement {
    pub fn identity(dims: &DimensionVector) -> Self {
        GroupElement {
            blocks: dims.0.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn random<R: rand::Rng>(dims: &DimensionVector, field: &PrimeField, rng: &mut R) -> Self {
        GroupElement {
            blocks: dims
                .0
                .iter()
                .map(|&d| Matrix::random_invertible(d, field, rng))
                .collect(),
        }
    }

    /// Block at 1-based vertex `i`.
    pub fn block(&self, i: usize) -> &Matrix {
        &self.blocks[i - 1]
    }

    pub fn inverse(&self, field: &PrimeField) -> Result<Self> {
        self.blocks
            .iter()
            .map(|b| {
                b.inverse(field)
                    .ok_or_else(|| Error::Domain("group element has a singular block".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(|blocks| GroupElement { blocks })
    }
}

/// Base change `(g·X)_a = g_t(a) X_a g_s(a)^{-1}`.
pub fn apply_group(q: &QuiverAn, g: &GroupElement, x: &FFRep) -> Result<FFRep> {
    check_len(q.n(), g.blocks.len())?;
    for (i, b) in g.blocks.iter().enumerate() {
        let d = x.dims.get(i + 1);
        if b.shape() != (d, d) {
            return domain(format!(
                "block {} has shape {:?}, expected {d}x{d}",
                i + 1,
                b.shape()
            ));
        }
    }
    let field = x.field;
    let inv = g.inverse(&field)?;
    let maps = q
        .arrows()
        .zip(&x.maps)
        .map(|(a, m)| {
            g.block(a.target)
                .mul(m, &field)
                .mul(inv.block(a.source), &field)
        })
        .collect();
    FFRep::new(q, field, x.dims.clone(), maps)
}

/// Count of subspaces of `F_p^dim`, the sum of Gaussian binomials.
pub fn subspace_count(dim: usize, prime: u64) -> u64 {
    let mut memo: HashMap<(usize, usize), u64> = HashMap::new();
    fn gauss(n: usize, k: usize, p: u64, memo: &mut HashMap<(usize, usize), u64>) -> u64 {
        if k == 0 || k == n {
            return 1;
        }
        if let Some(&v) = memo.get(&(n, k)) {
            return v;
        }
        // [n,k] = [n-1,k-1] + p^k [n-1,k]
        let v = gauss(n - 1, k - 1, p, memo) + p.pow(k as u32) * gauss(n - 1, k, p, memo);
        memo.insert((n, k), v);
        v
    }
    (0..=dim).map(|k| gauss(dim, k, prime, &mut memo)).sum()
}
