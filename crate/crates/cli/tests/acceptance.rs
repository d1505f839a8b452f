//! End-to-end acceptance run. Every criterion is an exact check; each prints a
//! single PASS or FAIL line and the process exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use quiverstab::cone::{self, ConeDescription};
use quiverstab::ff::{Matrix, PrimeField};
use quiverstab::oracle::{self, FFRep};
use quiverstab::semiinvariants::{self as si, Mode};
use quiverstab::stability::{
    self, decomposable_never_stable, enumerate_subrep_supports, verify_reineke,
};
use quiverstab::weights::{intrinsic_weights, intrinsic_weights_via_subquivers};
use quiverstab::{DimensionVector, QuiverAn, VertexSet, WeightSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn orientations(lo: usize, hi: usize) -> impl Iterator<Item = QuiverAn> {
    (lo..=hi).flat_map(QuiverAn::all_with_vertices)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiverstab"))
}

fn weight(w: &WeightSystem, s: VertexSet) -> (i128, i128) {
    (s.iter().map(|i| w.theta(i) as i128).sum(), s.len() as i128)
}

fn random_weights(n: usize, rng: &mut ChaCha8Rng, bound: i64) -> WeightSystem {
    WeightSystem((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

fn strictly_satisfies(forms: &[quiverstab::LinearForm], w: &WeightSystem) -> bool {
    forms.iter().all(|f| f.eval(w) > 0)
}

fn c1_example() -> Check {
    let out = bin()
        .args(["weights", "RRRLLR"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let expected = serde_json::json!([6, 4, 2, -24, 2, 16, -6]);
    ensure(v["thetas"] == expected, || {
        format!("thetas {}", v["thetas"])
    })?;
    Ok("thetas (6, 4, 2, -24, 2, 16, -6)".into())
}

fn c2_zero_sum_monotone() -> Check {
    let mut count = 0;
    for q in orientations(1, 12) {
        let w = intrinsic_weights(&q);
        ensure(w.total() == 0, || format!("{q}: total {}", w.total()))?;
        for a in q.arrows() {
            ensure(w.theta(a.source) > w.theta(a.target), || {
                format!("{q}: arrow {} -> {} does not decrease", a.source, a.target)
            })?;
        }
        count += 1;
    }
    Ok(format!("{count} orientations, n <= 12"))
}

fn c3_double_construction() -> Check {
    let mut count = 0;
    for q in orientations(1, 12) {
        let (a, b) = (intrinsic_weights(&q), intrinsic_weights_via_subquivers(&q));
        ensure(a == b, || format!("{}: {a} vs {b}", q.word()))?;
        count += 1;
    }
    Ok(format!("{count} orientations, n <= 12"))
}

fn c4_sweep() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("sweep.jsonl");
    let status = bin()
        .args(["sweep", "--max-n", "10", "--jobs", "1", "--out"])
        .arg(&path)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.code() == Some(0), || {
        format!("exit {:?}", status.code())
    })?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let mut lines = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        ensure(
            v["all_stable"] == true && v["intrinsic_in_cone"] == true,
            || line.to_string(),
        )?;
        let n = v["n"].as_u64().unwrap_or(0);
        ensure(v["num_intervals"].as_u64() == Some(n * (n + 1) / 2), || {
            line.to_string()
        })?;
        lines += 1;
    }
    ensure(lines == 1023, || format!("{lines} records"))?;
    Ok("1023 orientations, exit 0".into())
}

fn valid_witness(q: &QuiverAn, w: &WeightSystem, support: VertexSet, wit: VertexSet) -> bool {
    let closed = q
        .arrows()
        .all(|a| !(wit.contains(a.source) && support.contains(a.target)) || wit.contains(a.target));
    let (ws, rs) = weight(w, wit);
    let (wt, rt) = weight(w, support);
    !wit.is_empty() && wit != support && wit.is_subset(support) && closed && ws * rt >= wt * rs
}

fn c5_converse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0usize;
    for n in 2..=8 {
        let randoms: Vec<_> = (0..100).map(|_| random_weights(n, &mut rng, 30)).collect();
        for q in QuiverAn::all_with_vertices(n) {
            let systems = std::iter::once(intrinsic_weights(&q)).chain(randoms.iter().cloned());
            let supports: Vec<_> = (1u64..1 << n)
                .map(VertexSet)
                .filter(|s| !s.is_contiguous())
                .collect();
            for w in systems {
                for &s in &supports {
                    let wit = decomposable_never_stable(&q, &w, s).map_err(|e| e.to_string())?;
                    ensure(valid_witness(&q, &w, s, wit), || {
                        format!("{}: {s} under {w}", q.word())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (orientation, weights, support) triples, n <= 8"
    ))
}

fn c6_cone_membership() -> Check {
    let mut count = 0;
    for q in orientations(1, 8) {
        let c = cone::cone_of(&q, &q.enumerate_indecomposables()).map_err(|e| e.to_string())?;
        let theta = intrinsic_weights(&q);
        for k in 1..=5 {
            let ok = cone::contains(&c, &theta.scaled(k), true).map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!("{}: {k} * theta outside the open cone", q.word())
            })?;
        }
        count += 1;
    }
    Ok(format!("{count} orientations, k = 1..5"))
}

fn c7_inequality_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut samples, mut positives) = (0usize, 0usize);
    for q in orientations(1, 6) {
        let forms = stability::stability_inequalities(&q).map_err(|e| e.to_string())?;
        let theta = intrinsic_weights(&q);
        for k in 0..1000 {
            // half uniform, half perturbations of the intrinsic system
            let w = if k % 2 == 0 {
                random_weights(q.n(), &mut rng, 20)
            } else {
                let noise = random_weights(q.n(), &mut rng, 3);
                WeightSystem(theta.0.iter().zip(&noise.0).map(|(a, b)| a + b).collect())
            };
            let by_forms = strictly_satisfies(&forms, &w);
            let by_verifier = verify_reineke(&q, &w)
                .map_err(|e| e.to_string())?
                .all_stable;
            ensure(by_forms == by_verifier, || {
                format!("{}: disagreement at {w}", q.word())
            })?;
            samples += 1;
            positives += usize::from(by_forms);
        }
    }
    Ok(format!("{samples} samples, {positives} stabilising"))
}

fn c8_irredundancy() -> Check {
    let rr = QuiverAn::parse("RR").map_err(|e| e.to_string())?;
    let all = ConeDescription::new(
        3,
        stability::stability_inequalities(&rr).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let walls: Vec<_> = cone::irredundant_forms(&all)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|f| f.coeffs)
        .collect();
    ensure(walls == vec![vec![0, 1, -1], vec![1, -1, 0]], || {
        format!("RR walls {walls:?}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut orient = 0;
    for q in orientations(1, 6) {
        let c = ConeDescription::new(
            q.n(),
            stability::stability_inequalities(&q).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let kept = cone::irredundant_forms(&c).map_err(|e| e.to_string())?;
        let theta = intrinsic_weights(&q);
        for k in 0..10_000 {
            let w = if k % 4 == 0 {
                let noise = random_weights(q.n(), &mut rng, 5);
                WeightSystem(theta.0.iter().zip(&noise.0).map(|(a, b)| a + b).collect())
            } else {
                random_weights(q.n(), &mut rng, 50)
            };
            ensure(
                strictly_satisfies(&c.forms, &w) == strictly_satisfies(&kept, &w),
                || format!("{}: regions differ at {w}", q.word()),
            )?;
        }
        orient += 1;
    }
    Ok(format!(
        "RR walls exact; {orient} orientations x 10^4 points"
    ))
}

fn c9_decomposition() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for q in orientations(1, 8) {
        let theta = intrinsic_weights(&q);
        for mode in [Mode::Left, Mode::Right] {
            let d = si::decompose_intrinsic(&q, mode).map_err(|e| format!("{}: {e}", q.word()))?;
            let back = d.reconstruct(&q).map_err(|e| e.to_string())?;
            ensure(back == theta, || {
                format!("{} {mode:?}: reconstructs {back}", q.word())
            })?;
            count += 1;
        }
    }
    let rr = QuiverAn::parse("RR").map_err(|e| e.to_string())?;
    let d = si::decompose_intrinsic(&rr, Mode::Left).map_err(|e| e.to_string())?;
    let got: Vec<_> = d.coefficients.iter().map(|(k, &c)| (k.key(), c)).collect();
    let want = vec![
        ("1,1".to_string(), 1),
        ("1,2".to_string(), 1),
        ("2,2".to_string(), 1),
    ];
    ensure(got == want, || format!("RR: {got:?}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{count} decompositions in {secs:.2} s"))
}

fn c10_tables() -> Check {
    let mut entries = 0;
    for q in orientations(1, 8) {
        for iv in q.enumerate_indecomposables() {
            let pairs = [
                (si::table_theta(&q, iv), si::weight_left(&q, iv)),
                (si::table_theta_prime(&q, iv), si::weight_right(&q, iv)),
            ];
            for (table, w) in pairs {
                let (table, w) = (
                    table.map_err(|e| e.to_string())?,
                    w.map_err(|e| e.to_string())?,
                );
                for (i, t) in table.iter().enumerate() {
                    if let Some(t) = t {
                        ensure(*t == w.0[i], || {
                            format!("{} {iv} entry {}", q.word(), i + 1)
                        })?;
                        entries += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{entries} defined entries agree"))
}

/// Dimension vectors in {0,1,2}^n pairing to zero with `theta`; first and last non-zero.
fn zero_pairing_dims(theta: &WeightSystem) -> Vec<DimensionVector> {
    let n = theta.len();
    let all: Vec<_> = (1..3usize.pow(n as u32))
        .map(|mut k| {
            DimensionVector(
                (0..n)
                    .map(|_| {
                        let d = k % 3;
                        k /= 3;
                        d
                    })
                    .collect(),
            )
        })
        .filter(|d| {
            theta
                .0
                .iter()
                .zip(&d.0)
                .map(|(t, &x)| t * x as i64)
                .sum::<i64>()
                == 0
        })
        .collect();
    let mut picked: Vec<_> = all.first().into_iter().chain(all.last()).cloned().collect();
    picked.dedup();
    picked
}

fn c11_semiinvariance() -> Check {
    let (mut configs, mut evaluations, mut nonzero) = (0, 0, 0);
    for q in orientations(1, 5) {
        for iv in q.enumerate_indecomposables() {
            let theta = si::weight_left(&q, iv).map_err(|e| e.to_string())?;
            for dims in zero_pairing_dims(&theta) {
                for prime in [7, 101] {
                    for seed in 1..=3 {
                        let r = si::check_semiinvariance(&q, &theta, &dims, 100, prime, seed)
                            .map_err(|e| e.to_string())?;
                        let c = r
                            .semi_invariants
                            .iter()
                            .find(|t| t.name == "c_X")
                            .ok_or_else(|| format!("{} {iv}: c_X not evaluated", q.word()))?;
                        ensure(c.failures == 0 && c.evaluations == 100, || {
                            format!(
                                "{} {iv} {dims:?} p={prime} seed={seed}: {:?}",
                                q.word(),
                                r.first_counterexample
                            )
                        })?;
                        configs += 1;
                        evaluations += c.evaluations;
                        nonzero += c.nonzero;
                    }
                }
            }
        }
    }
    ensure(nonzero > 0, || "every evaluation was zero".into())?;
    Ok(format!(
        "{configs} configurations, {evaluations} evaluations ({nonzero} non-zero)"
    ))
}

/// dim Hom(X, Y) by direct elimination over the unknown entries of (f_i).
fn hom_dimension(q: &QuiverAn, x: &FFRep, y: &FFRep) -> usize {
    let p = x.prime();
    let (dx, dy) = (x.dims(), y.dims());
    // unknown f_i[r][c] stored column-major per vertex
    let mut offset = vec![0; q.n() + 1];
    for i in 1..q.n() {
        offset[i] = offset[i - 1] + dx.get(i) * dy.get(i);
    }
    let unknowns = offset[q.n() - 1] + dx.get(q.n()) * dy.get(q.n());
    let var = |i: usize, r: usize, c: usize| offset[i - 1] + c * dy.get(i) + r;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (k, a) in q.arrows().enumerate() {
        let (xa, ya) = (&x.maps()[k], &y.maps()[k]);
        let (s, t) = (a.source, a.target);
        // (f_t X_a - Y_a f_s)[r][c] = 0
        for r in 0..dy.get(t) {
            for c in 0..dx.get(s) {
                let mut eq = vec![0u64; unknowns];
                for m in 0..dx.get(t) {
                    let v = &mut eq[var(t, r, m)];
                    *v = (*v + xa.get(m, c)) % p;
                }
                for m in 0..dy.get(s) {
                    let v = &mut eq[var(s, m, c)];
                    *v = (*v + p - ya.get(r, m)) % p;
                }
                rows.push(eq);
            }
        }
    }
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).expect("non-zero");
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let scale = inv(rows[rank][col]);
        let pivot: Vec<u64> = rows[rank].iter().map(|v| v * scale % p).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p * p - f * pv) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    unknowns - rank
}

fn sparse_random_rep(
    q: &QuiverAn,
    dims: &DimensionVector,
    field: &PrimeField,
    rng: &mut ChaCha8Rng,
) -> FFRep {
    let maps = q
        .arrows()
        .map(|a| {
            let (r, c) = (dims.get(a.target), dims.get(a.source));
            if rng.gen_ratio(1, 3) {
                Matrix::zeros(r, c)
            } else {
                Matrix::random(r, c, field, rng)
            }
        })
        .collect();
    FFRep::new(q, *field, dims.clone(), maps).expect("shapes match")
}

fn c12_hom_duality() -> Check {
    let field = PrimeField::new(7).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let quivers: Vec<_> = orientations(2, 5).collect();
    let (mut pairs, mut zero_hom) = (0, 0);
    while pairs < 300 {
        let q = &quivers[rng.gen_range(0..quivers.len())];
        let mut dim = || DimensionVector((0..q.n()).map(|_| rng.gen_range(0..3)).collect());
        let (dx, dy) = (dim(), dim());
        if dx.is_zero()
            || dy.is_zero()
            || si::euler_form(q, &dx, &dy).map_err(|e| e.to_string())? != 0
        {
            continue;
        }
        let x = sparse_random_rep(q, &dx, &field, &mut rng);
        let y = sparse_random_rep(q, &dy, &field, &mut rng);
        let det = si::c_semiinvariant(q, &x, &y).map_err(|e| e.to_string())?;
        let hom = hom_dimension(q, &x, &y);
        ensure((det != 0) == (hom == 0), || {
            format!("{}: det {det}, dim Hom {hom}, dims {dx:?} {dy:?}", q.word())
        })?;
        pairs += 1;
        zero_hom += usize::from(hom == 0);
    }
    ensure(zero_hom > 0 && zero_hom < pairs, || {
        "only one side of the equivalence was exercised".into()
    })?;
    Ok(format!("{pairs} pairs over F_7, {zero_hom} with Hom = 0"))
}

fn c13_oracle() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for q in orientations(1, 6) {
        let theta = intrinsic_weights(&q);
        for iv in q.enumerate_indecomposables() {
            let mut expected: Vec<DimensionVector> = enumerate_subrep_supports(&q, iv)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|s| s.indicator(q.n()))
                .collect();
            expected.sort();
            let combinatorial = stability::is_stable(&q, &theta, iv)
                .map_err(|e| e.to_string())?
                .is_stable();
            for prime in [2, 3] {
                let x = FFRep::thin(&q, iv, prime).map_err(|e| e.to_string())?;
                let found: Vec<_> = oracle::subrep_dimension_vectors(&x, &q)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .collect();
                ensure(found == expected, || format!("{} {iv} p={prime}", q.word()))?;
                let ff = oracle::is_stable_ff(&x, &q, &theta).map_err(|e| e.to_string())?;
                ensure(ff == combinatorial, || {
                    format!("{} {iv} p={prime}: stability", q.word())
                })?;
                count += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{count} (interval, prime) instances in {secs:.2} s"
    ))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("intrinsic weights of RRRLLR", c1_example),
        (
            "zero sum and decrease along arrows, n <= 12",
            c2_zero_sum_monotone,
        ),
        (
            "closed form equals subquiver sum, n <= 12",
            c3_double_construction,
        ),
        ("sweep --max-n 10 exits 0", c4_sweep),
        (
            "decomposable thin supports are never stable, n <= 8",
            c5_converse,
        ),
        ("k * theta in the open cone, n <= 8", c6_cone_membership),
        (
            "inequalities agree with the verifier, n <= 6",
            c7_inequality_equivalence,
        ),
        ("irredundant forms cut out the same region", c8_irredundancy),
        (
            "non-negative decomposition, n <= 8, both modes",
            c9_decomposition,
        ),
        (
            "case tables agree with the Euler weights, n <= 8",
            c10_tables,
        ),
        (
            "semi-invariance of c_X, n <= 5, p in {7, 101}",
            c11_semiinvariance,
        ),
        ("det f_X^Y != 0 iff Hom(X, Y) = 0", c12_hom_duality),
        ("finite-field subrepresentations match, n <= 6", c13_oracle),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
