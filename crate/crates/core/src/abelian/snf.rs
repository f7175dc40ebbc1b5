use super::IntMatrix;

/// `u * m * v = s` with `u`, `v` unimodular and `s` diagonal, each diagonal
/// entry nonnegative and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        self.s.diagonal()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&s, t, |i, j| i >= t && j >= t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)] / pivot;
                if q != 0 {
                    s.add_row_multiple(i, t, -q);
                    u.add_row_multiple(i, t, -q);
                }
                clean &= s[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = s[(t, j)] / pivot;
                if q != 0 {
                    s.add_col_multiple(j, t, -q);
                    v.add_col_multiple(j, t, -q);
                }
                clean &= s[(t, j)] == 0;
            }
            if !clean {
                // A remainder smaller than the pivot survives; make it the pivot.
                let (pi, pj) = smallest_nonzero(&s, t, |i, j| {
                    (i == t && j >= t) || (j == t && i >= t)
                })
                .expect("pivot is nonzero");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| s[(i, j)] % pivot != 0));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, 1);
                    u.add_row_multiple(t, i, 1);
                }
                None => break,
            }
        }
        if s[(t, t)] < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn smallest_nonzero(
    s: &IntMatrix,
    t: usize,
    admissible: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if !admissible(i, j) || s[(i, j)] == 0 {
                continue;
            }
            if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(m);
        assert_eq!(&(&snf.u * m) * &snf.v, snf.s, "U M V = S for {m:?}");
        assert!(snf.s.is_diagonal());
        assert_eq!(snf.u.determinant().abs(), 1);
        assert_eq!(snf.v.determinant().abs(), 1);
        let d = snf.diagonal();
        for w in d.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "divisibility chain {d:?}");
            }
        }
        snf
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(check(&IntMatrix::identity(3)).diagonal(), vec![1, 1, 1]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check(&m).diagonal(), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(check(&IntMatrix::zeros(1, 1)).diagonal(), vec![0]);
    }

    #[test]
    fn rectangular_and_negative() {
        let m = IntMatrix::from_rows(&[vec![4, -6, 2], vec![-2, 3, 8]]);
        check(&m);
        let m = IntMatrix::from_rows(&[vec![0, 0], vec![0, -4], vec![6, 0]]);
        assert_eq!(check(&m).diagonal(), vec![2, 12]);
    }

    #[test]
    fn determinant_values() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant(), 1);
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]);
        assert_eq!(m.determinant(), -3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = IntMatrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(-9i64..10, c), r)
                    .prop_map(|rows| IntMatrix::from_rows(&rows))
            })
        }

        proptest! {
            #[test]
            fn factorization_is_exact(m in matrix()) {
                check(&m);
            }
        }
    }
}
