use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// `left · m · right = diagonal`, with `left` and `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁ | d₂ | …`, length `min(rows, cols)`.
    pub fn invariants(&self) -> alloc::vec::Vec<BigInt> {
        self.diagonal.diagonal_entries()
    }
}

/// Smith normal form of an integer matrix.
///
/// The pivot at each stage is the nonzero entry of smallest absolute value in
/// the remaining block, ties broken by lowest `(row, col)`, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                return finish(left, d, right);
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut left, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row_multiple(&mut d, i, t, &-&q);
                add_row_multiple(&mut left, i, t, &-&q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_col_multiple(&mut d, j, t, &-&q);
                add_col_multiple(&mut right, j, t, &-&q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    add_row_multiple(&mut d, t, i, &one);
                    add_row_multiple(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut left, t);
        }
    }
    finish(left, d, right)
}

fn finish(left: IntegerMatrix, diagonal: IntegerMatrix, right: IntegerMatrix) -> SmithForm {
    SmithForm { left, diagonal, right }
}

fn find_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            // Row-major scan order already realizes the (row, col) tie break.
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(m: &mut IntegerMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m[(a, j)].clone();
        let y = core::mem::replace(m.get_mut(b, j), x);
        *m.get_mut(a, j) = y;
    }
}

fn swap_cols(m: &mut IntegerMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        let y = core::mem::replace(m.get_mut(i, b), x);
        *m.get_mut(i, a) = y;
    }
}

/// row[target] += factor · row[source]
fn add_row_multiple(m: &mut IntegerMatrix, target: usize, source: usize, factor: &BigInt) {
    for j in 0..m.cols() {
        let delta = factor * &m[(source, j)];
        *m.get_mut(target, j) += delta;
    }
}

/// col[target] += factor · col[source]
fn add_col_multiple(m: &mut IntegerMatrix, target: usize, source: usize, factor: &BigInt) {
    for i in 0..m.rows() {
        let delta = factor * &m[(i, source)];
        *m.get_mut(i, target) += delta;
    }
}

fn negate_row(m: &mut IntegerMatrix, i: usize) {
    for j in 0..m.cols() {
        let x = -&m[(i, j)];
        *m.get_mut(i, j) = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal, "U·m·V != D for {m:?}");
        assert!(s.diagonal.is_diagonal());
        assert!(s.left.determinant().unwrap().abs().is_one());
        assert!(s.right.determinant().unwrap().abs().is_one());
        let diag = s.invariants();
        assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            // 0 is divisible by everything, and nothing nonzero follows a 0
            assert!(w[1].is_multiple_of(&w[0]) || (w[0].is_zero() && w[1].is_zero()), "{diag:?}");
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntegerMatrix::identity(2);
        let s = check(&id);
        assert_eq!(s.diagonal, id);
        assert_eq!(s.left, id);
        assert_eq!(s.right, id);
    }

    #[test]
    fn diag_2_3() {
        let s = check(&IntegerMatrix::diagonal(&[2, 3]));
        assert_eq!(s.diagonal, IntegerMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn zero_1x1() {
        let s = check(&IntegerMatrix::zeros(1, 1));
        assert_eq!(s.diagonal, IntegerMatrix::diagonal(&[0]));
    }

    #[test]
    fn rectangular_and_empty() {
        let m =
            IntegerMatrix::from_rows(3, &[alloc::vec![2i64, 4, 4], alloc::vec![-6, 6, 12], alloc::vec![10, -4, -16]])
                .unwrap();
        assert_eq!(check(&m).invariants(), [2, 6, 12].map(BigInt::from));
        let wide = IntegerMatrix::from_rows(3, &[alloc::vec![2i64, 0, 0]]).unwrap();
        assert_eq!(check(&wide).invariants(), [BigInt::from(2)]);
        let empty = IntegerMatrix::zeros(0, 2);
        assert!(check(&empty).invariants().is_empty());
    }

    #[test]
    fn deterministic() {
        let m = IntegerMatrix::from_rows(2, &[alloc::vec![4i64, 6], alloc::vec![6, 9]]).unwrap();
        assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-50i64..=50, r * c).prop_map(move |v| {
                IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect::<Vec<_>>()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn round_trip(m in matrix_strategy()) {
            check(&m);
        }
    }
}
