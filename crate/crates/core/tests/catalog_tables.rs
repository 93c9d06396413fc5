use std::f64::consts::TAU;

use num_complex::Complex64;
use superfourier::catalog::arith::{divisors, gcd, primitive_root, totient};
use superfourier::catalog::{gauss_periods, ramanujan_sum, NamedTheory};
use superfourier::table::default_tolerance;
use superfourier::{GVector, Modulus, SupercharacterTable};

fn table_of(t: NamedTheory) -> SupercharacterTable {
    SupercharacterTable::build(t.build().unwrap()).unwrap()
}

fn scalar(n: u64, x: u64) -> GVector {
    GVector::new(Modulus::new(n).unwrap(), vec![x % n]).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() < tol
}

#[test]
fn max_collapse_prime_moduli() {
    for (n, d) in [(2u64, 1usize), (3, 1), (5, 2), (7, 2), (3, 3)] {
        let t = table_of(NamedTheory::MaxCollapse { n, d });
        let total = n.pow(d as u32) as f64;
        let expected = [[1.0, 1.0], [total - 1.0, -1.0]];
        let tol = default_tolerance(2);
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(t.value(i, j), Complex64::new(expected[i][j], 0.0), tol));
            }
        }
        let u = t.unitary(tol).unwrap();
        let r = (total - 1.0).sqrt() / total.sqrt();
        let want = [[1.0 / total.sqrt(), r], [r, -1.0 / total.sqrt()]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(u.matrix()[(i, j)], Complex64::new(want[i][j], 0.0), tol));
            }
        }
    }
}

#[test]
fn dct_both_parities() {
    for n in [7u64, 8, 11, 12] {
        let t = table_of(NamedTheory::Dct { n });
        assert_eq!(t.num_classes() as u64, n / 2 + 1);
        let tol = default_tolerance(t.num_classes());
        let u = t.unitary(tol).unwrap();
        for r in 0..=n / 2 {
            for s in 0..=n / 2 {
                let i = t.theory().character_classes().class_of(&scalar(n, r)).unwrap();
                let j = t.theory().superclasses().class_of(&scalar(n, s)).unwrap();
                let weight = |k: u64| if k == 0 || 2 * k == n { 1.0 } else { 2.0 };
                let cos = (TAU * (r * s) as f64 / n as f64).cos();
                assert!(close(t.value(i, j), Complex64::new(weight(r) * cos, 0.0), tol));
                let entry = weight(r) * cos * (weight(s) / weight(r)).sqrt() / (n as f64).sqrt();
                assert!(close(u.matrix()[(i, j)], Complex64::new(entry, 0.0), tol));
            }
        }
    }
}

#[test]
fn gauss_periods_fill_the_table() {
    for (p, k) in [(13u64, 3u64), (13, 4), (17, 4), (19, 6), (7, 3)] {
        let t = table_of(NamedTheory::Gauss { p, k });
        assert_eq!(t.num_classes() as u64, k + 1);
        let tol = default_tolerance(t.num_classes());
        let m = Modulus::new(p).unwrap();
        let g = primitive_root(p).unwrap();
        let eta = gauss_periods(p, k).unwrap();
        for a in 0..k {
            for b in 0..k {
                let i = t.theory().character_classes().class_of(&scalar(p, m.pow(g, a))).unwrap();
                let j = t.theory().superclasses().class_of(&scalar(p, m.pow(g, b))).unwrap();
                assert!(close(t.value(i, j), eta[((a + b) % k) as usize], tol));
            }
        }
        let total: Complex64 = eta.iter().sum();
        assert!(close(total, Complex64::new(-1.0, 0.0), 1e-9));
    }
}

#[test]
fn ramanujan_table() {
    for n in [1u64, 12, 30, 36] {
        let t = table_of(NamedTheory::Ramanujan { n });
        assert_eq!(t.num_classes(), divisors(n).len());
        let tol = default_tolerance(t.num_classes());
        let classes = t.theory().character_classes();
        let ys = t.theory().superclasses();
        for i in 0..t.num_classes() {
            let rep = classes.rep(i).coords()[0];
            let d = n / gcd(rep, n);
            assert_eq!(classes.class(i).size() as u64, totient(d));
            for j in 0..t.num_classes() {
                let y = ys.rep(j).coords()[0];
                assert!(close(t.value(i, j), Complex64::new(ramanujan_sum(d, y as i64) as f64, 0.0), tol));
            }
        }
    }
}

#[test]
fn class_counts() {
    for p in [3u64, 5, 7, 11] {
        assert_eq!(table_of(NamedTheory::Kloosterman { p }).num_classes() as u64, p + 2);
        assert_eq!(table_of(NamedTheory::JsymTriangular { p }).num_classes(), 3);
    }
    for p in [3u64, 5, 7] {
        assert_eq!(table_of(NamedTheory::Heilbronn { p }).num_classes() as u64, p + 2);
    }
    // C(n + d - 1, d)
    for ((n, d), want) in [((3u64, 2usize), 6usize), ((4, 3), 20), ((2, 5), 6)] {
        assert_eq!(table_of(NamedTheory::Symmetric { n, d }).num_classes(), want);
    }
}
