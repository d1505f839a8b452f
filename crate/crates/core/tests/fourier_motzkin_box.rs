//! Elimination results checked against exhaustive integer search in a box.

use num_rational::BigRational;
use proptest::prelude::*;
use quiverstab::fourier_motzkin::{find_point, satisfies, Inequality};

const B: i64 = 12;

fn system(n: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, n), -4i64..=4), 1..8)
}

fn box_point(n: usize, rows: &[(Vec<i64>, i64)]) -> Option<Vec<i64>> {
    let side = (2 * B + 1) as usize;
    (0..side.pow(n as u32)).find_map(|mut k| {
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = (k % side) as i64 - B;
                k /= side;
                v
            })
            .collect();
        rows.iter()
            .all(|(c, r)| c.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() >= *r)
            .then_some(x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_box_search(n in 1usize..=3, seed in system(3)) {
        let rows: Vec<(Vec<i64>, i64)> = seed.into_iter().map(|(c, r)| (c[..n].to_vec(), r)).collect();
        let sys: Vec<Inequality> = rows.iter().map(|(c, r)| Inequality::new(c.iter().copied(), *r)).collect();
        let found = find_point(n, &sys, 10_000).unwrap();
        if let Some(p) = &found {
            prop_assert!(satisfies(&sys, p));
        }
        if let Some(x) = box_point(n, &rows) {
            let x: Vec<BigRational> = x.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
            prop_assert!(satisfies(&sys, &x));
            prop_assert!(found.is_some(), "box point exists but elimination reports infeasible");
        }
    }
}

#[test]
fn four_variables() {
    // x1 > x2 > x3 > x4 with gaps of at least 1, and x1 - x4 <= 3
    let sys = vec![
        Inequality::new([1, -1, 0, 0], 1),
        Inequality::new([0, 1, -1, 0], 1),
        Inequality::new([0, 0, 1, -1], 1),
        Inequality::new([-1, 0, 0, 1], -3),
    ];
    let p = find_point(4, &sys, 1000).unwrap().unwrap();
    assert!(satisfies(&sys, &p));
    let tighter = [sys.clone(), vec![Inequality::new([-1, 0, 0, 1], -2)]].concat();
    assert_eq!(find_point(4, &tighter, 1000).unwrap(), None);
}
