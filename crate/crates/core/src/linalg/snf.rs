//! Smith normal form over the integers.
//!
//! Classical elimination: at each stage the entry of least absolute value
//! in the remaining block becomes the pivot, its row and column are cleared
//! by Euclidean steps, and a row is folded in whenever the pivot fails to
//! divide the rest of the block.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `left · input · right = diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries d1 | d2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        nonzero_diagonal(&self.diagonal)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Full decomposition with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut work = Reduction::new(a, true);
    work.run();
    SmithForm {
        left: work.left.expect("tracked"),
        diagonal: work.d,
        right: work.right.expect("tracked"),
    }
}

/// Only the nonzero diagonal of the Smith form; skips the transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut work = Reduction::new(a, false);
    work.run();
    nonzero_diagonal(&work.d)
}

fn nonzero_diagonal(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols()))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

struct Reduction {
    d: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reduction {
    fn new(a: &IntMatrix, track: bool) -> Self {
        Reduction {
            d: a.clone(),
            left: track.then(|| IntMatrix::identity(a.rows())),
            right: track.then(|| IntMatrix::identity(a.cols())),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.left {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.right {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.d.add_row_multiple(target, source, factor);
        if let Some(u) = &mut self.left {
            u.add_row_multiple(target, source, factor);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.d.add_col_multiple(target, source, factor);
        if let Some(v) = &mut self.right {
            v.add_col_multiple(target, source, factor);
        }
    }

    /// Position of the nonzero entry of least absolute value in the block
    /// starting at (t, t).
    fn block_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let unit = a.is_one();
                    best = Some((i, j, a));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Least nonzero entry of row t and column t (pivot included).
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.d[(t, t)].abs());
        let mut consider = |i: usize, j: usize, x: &BigInt| {
            if !x.is_zero() {
                let a = x.abs();
                if best.2.is_zero() || a < best.2 {
                    best = (i, j, a);
                }
            }
        };
        for i in t + 1..self.d.rows() {
            consider(i, t, &self.d[(i, t)]);
        }
        for j in t + 1..self.d.cols() {
            consider(t, j, &self.d[(t, j)]);
        }
        (best.0, best.1)
    }

    fn run(&mut self) {
        let (m, n) = (self.d.rows(), self.d.cols());
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.block_pivot(t) else {
                return;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(&self.d[(i, t)] / &self.d[(t, t)]);
                    self.add_row(i, t, &q);
                    dirty |= !self.d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(&self.d[(t, j)] / &self.d[(t, t)]);
                    self.add_col(j, t, &q);
                    dirty |= !self.d[(t, j)].is_zero();
                }
                if dirty {
                    let (i, j) = self.cross_pivot(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // row t and column t are clear; enforce divisibility
                let pivot = self.d[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !(&self.d[(i, j)] % &pivot).is_zero())
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.d.negate_row(t);
                if let Some(u) = &mut self.left {
                    u.negate_row(t);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.left * a) * &s.right, s.diagonal, "U A V != D for {a:?}");
        assert!(s.diagonal.is_diagonal());
        assert!(s.left.determinant().abs().is_one());
        assert!(s.right.determinant().abs().is_one());
        let f = s.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain broken: {f:?}");
        }
        // zeros only after the invariant factors
        for i in f.len()..a.rows().min(a.cols()) {
            assert!(s.diagonal[(i, i)].is_zero());
        }
        s
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[vec![0]]));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, IntMatrix::diagonal(2, 2, &[1, 6]));
    }

    #[test]
    fn trefoil_relator_row() {
        let s = check(&IntMatrix::from_rows(&[vec![1, -1]]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[vec![1, 0]]));
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.right, IntMatrix::identity(3));
        assert!(invariant_factors(&a).is_empty());
        assert!(invariant_factors(&IntMatrix::zeros(3, 0)).is_empty());
    }

    #[test]
    fn known_invariant_factors() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&a);
        let f: Vec<i64> = invariant_factors(&a)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(f, vec![2, 6, 12]);
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
                .prop_map(|rows| IntMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_valid(a in arb_matrix()) {
            let s = check(&a);
            prop_assert_eq!(s.invariant_factors(), invariant_factors(&a));
            if a.rows() == a.cols() {
                let prod: BigInt = (0..a.rows()).map(|i| s.diagonal[(i, i)].clone()).product();
                prop_assert_eq!(a.determinant().abs(), prod);
            }
        }
    }
}
