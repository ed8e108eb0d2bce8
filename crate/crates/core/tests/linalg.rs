use drinfeld_kv::linalg::*;
use drinfeld_kv::Rational;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

#[test]
fn rank_and_kernel() {
    let m = Matrix::from_rows(3, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
    assert_eq!(m.rank(), 2);
    let k = m.nullspace();
    assert_eq!(k.len(), 1);
    assert!(m.mul_vec(&k[0]).iter().all(Rational::is_zero));
}

#[test]
fn solve_with_free_value() {
    let m = Matrix::from_rows(2, vec![vec![q(1), q(1)]]);
    let s = solve(&m, &[q(3)], &q(0)).unwrap();
    assert_eq!(s.x, vec![q(3), q(0)]);
    assert_eq!(s.free, 1);
    let s = solve(&m, &[q(3)], &q(1)).unwrap();
    assert_eq!(s.x, vec![q(2), q(1)]);
    let bad = Matrix::from_rows(1, vec![vec![q(1)], vec![q(2)]]);
    assert!(solve(&bad, &[q(1), q(1)], &q(0)).is_none());
}

#[test]
fn spans() {
    let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
    let b = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
    assert!(same_span(2, &a, &b));
    assert!(!same_span(2, &a, &b[..1]));
}
