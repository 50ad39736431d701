//! The printed example formulas, transcribed literally, against the builders.

mod common;

use common::*;
use localnr::constructions::{Construction, G4Family, G5Family};
use localnr::nearring::{locality_report, verify_axioms, Nearring};

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn literal(name: &str, f: impl Fn(&[i64], &[i64]) -> Vec<i64>) -> Nearring {
    let g = table(name, 3);
    let gg = g.clone();
    Nearring::from_fn(g, move |x, y| {
        let xs: Vec<i64> = gg.coords(x).iter().map(|&v| v as i64).collect();
        let ys: Vec<i64> = gg.coords(y).iter().map(|&v| v as i64).collect();
        el(&gg, &f(&xs, &ys))
    })
    .unwrap()
}

fn unit3(v: i64) -> i64 {
    (v % 3 != 0) as i64
}

fn assert_local(nr: &Nearring) {
    let rep = locality_report(nr).unwrap();
    assert!(rep.is_local);
}

#[test]
fn example_1() {
    let nr = literal("G3", |x, y| {
        vec![x[0] * y[0] + 9 * x[0] * x[1] * c2(y[0]), x[1] * y[0] + unit3(x[0]) * y[1]]
    });
    assert_eq!(nr, Construction::G3Metacyclic.build(3).unwrap());
    assert_local(&nr);
}

#[test]
fn example_2() {
    for (k, pk) in [(1, 3), (2, 9)] {
        let nr = literal("G1", |x, y| {
            vec![
                x[0] * y[0] + pk * x[1] * y[1],
                x[1] * y[0] + x[0] * y[1],
                -x[0] * x[1] * c2(y[0]) + x[2] * y[0] + x[0] * x[0] * y[2],
            ]
        });
        assert_eq!(nr, Construction::G1 { k }.build(3).unwrap(), "k = {k}");
        assert_local(&nr);
    }
}

fn example_3(c_term: impl Fn(&[i64]) -> i64, b: impl Fn(&[i64]) -> i64) -> Nearring {
    literal("G4", move |x, y| {
        vec![
            x[0] * y[0],
            x[1] * y[0] + b(x) * y[1],
            -x[0] * x[1] * c2(y[0]) + x[2] * y[0] + c_term(x) * y[2],
            x[3] * y[0] + b(x) * y[3],
        ]
    })
}

#[test]
fn example_3_first_and_third() {
    let one = example_3(|x| x[0] * x[0], |x| x[0]);
    assert_eq!(one, Construction::G4(G4Family::PowerI(1)).build(3).unwrap());
    assert_local(&one);
    let three = example_3(|x| x[0], |_| 1);
    assert_eq!(three, Construction::G4(G4Family::Constant).build(3).unwrap());
    assert_local(&three);
}

#[test]
fn example_3_second_as_printed_fails() {
    // printed c-part: -x1x2 C(y1,2) + x3y1 + y3
    let printed = example_3(|_| 1, |x| x[0] * x[0]);
    let rep = verify_axioms(&printed);
    assert!(!rep.is_nearring_with_identity());
    assert_ne!(printed, Construction::G4(G4Family::PowerI(2)).build(3).unwrap());
}

#[test]
fn example_3_second_corrected() {
    // x1 * β(x) = x1^3 = x1 mod 3
    let fixed = example_3(|x| x[0], |x| x[0] * x[0]);
    assert_eq!(fixed, Construction::G4(G4Family::PowerI(2)).build(3).unwrap());
    assert_local(&fixed);
}

#[test]
fn example_4() {
    let ind = literal("G5", |x, y| {
        let s = unit3(x[0]);
        vec![x[0] * y[0] + 3 * x[0] * x[1] * c2(y[0]), x[1] * y[0] + s * y[1], x[2] * y[0] + s * y[2]]
    });
    assert_eq!(ind, Construction::G5(G5Family::Indicator).build(3).unwrap());
    assert_local(&ind);
    let con = literal("G5", |x, y| {
        vec![x[0] * y[0] + 3 * x[0] * x[1] * c2(y[0]), x[1] * y[0] + y[1], x[2] * y[0] + y[2]]
    });
    assert_eq!(con, Construction::G5(G5Family::Constant).build(3).unwrap());
    assert_local(&con);
}
