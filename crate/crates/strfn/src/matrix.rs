//! Dense matrices over [`Scalar`] with the elimination routines the rank and
//! extraction machinery needs.
//!
//! Rank profiles use fraction-free (Bareiss) elimination in exact mode after
//! clearing row denominators, which keeps intermediate integers at the size of
//! minors of the input instead of compounding gcd-free products. Float mode
//! uses ordinary elimination with a tolerance threshold against the matrix
//! scale. Pivot selection is greedy: columns are scanned left to right and the
//! first usable row wins (largest |entry| breaks ties in float mode), so the
//! reported pivot sets are deterministic and prefer early (shortlex) indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ArithmeticMode, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Rank together with the pivot indices in elimination order:
/// `pivot_rows[i]` pairs with `pivot_cols[i]`, and every leading block of
/// pivot pairs spans an invertible submatrix (the elimination entries are
/// minors of the input, so each accepted pivot certifies the determinant of
/// the block up to that point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, mode: &ArithmeticMode) -> Mat {
        Mat::new(rows, cols, vec![mode.zero(); rows * cols])
    }

    pub fn identity(n: usize, mode: &ArithmeticMode) -> Mat {
        let mut m = Mat::zeros(n, n, mode);
        for i in 0..n {
            m.set(i, i, mode.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn build(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::build(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn to_float(&self) -> Mat {
        Mat::new(
            self.rows,
            self.cols,
            self.data.iter().map(Scalar::to_float).collect(),
        )
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Mat::build(self.rows, rhs.cols, |i, j| {
            let mut acc = if self.cols == 0 {
                // empty product: a zero of whichever representation dominates
                Scalar::int(0)
            } else {
                self.get(i, 0) * rhs.get(0, j)
            };
            for k in 1..self.cols {
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        })
    }

    /// Matrix * column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::int(0);
                for (entry, x) in self.row(i).iter().zip(v) {
                    acc = &acc + &(entry * x);
                }
                acc
            })
            .collect()
    }

    /// Row vector * matrix.
    pub fn vec_mul(v: &[Scalar], m: &Mat) -> Vec<Scalar> {
        assert_eq!(m.rows, v.len());
        (0..m.cols)
            .map(|j| {
                let mut acc = Scalar::int(0);
                for (k, x) in v.iter().enumerate() {
                    acc = &acc + &(x * m.get(k, j));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::build(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    /// Kronecker product; block (i,j) is `self[i][j] * rhs`.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        Mat::build(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            let (bi, ri) = (i / rhs.rows, i % rhs.rows);
            let (bj, rj) = (j / rhs.cols, j % rhs.cols);
            self.get(bi, bj) * rhs.get(ri, rj)
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        Mat::build(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Rank with pivot row/column index sets; the submatrix on those sets is
    /// invertible.
    pub fn rank_profile(&self, mode: &ArithmeticMode) -> RankProfile {
        match mode {
            ArithmeticMode::Exact => self.rank_profile_exact(),
            ArithmeticMode::Float { tol } => self.rank_profile_float(*tol),
        }
    }

    // index loops: elimination reads the pivot row while writing others
    #[allow(clippy::needless_range_loop)]
    fn rank_profile_exact(&self) -> RankProfile {
        // Clear denominators row by row; positive row scalings change neither
        // rank nor pivot positions.
        let mut w: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let r = self
                        .get(i, j)
                        .as_rational()
                        .expect("exact mode requires rationals");
                    lcm = lcm.lcm(r.denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let r = self.get(i, j).as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect();

        let mut used = vec![false; self.rows];
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(pr) = (0..self.rows).find(|&r| !used[r] && !w[r][col].is_zero()) else {
                continue;
            };
            used[pr] = true;
            pivot_rows.push(pr);
            pivot_cols.push(col);
            let pivot = w[pr][col].clone();
            // every unused row is updated, zero factor included: the Bareiss
            // invariant (entries are minors of the scaled input) needs the
            // *pivot/prev rescale everywhere or later exact divisions break
            for r in 0..self.rows {
                if used[r] {
                    continue;
                }
                let factor = std::mem::replace(&mut w[r][col], BigInt::zero());
                for c in (col + 1)..self.cols {
                    let t = &w[r][c] * &pivot - &factor * &w[pr][c];
                    w[r][c] = t / &prev;
                }
            }
            prev = pivot;
        }
        RankProfile {
            rank: pivot_cols.len(),
            pivot_rows,
            pivot_cols,
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn rank_profile_float(&self, tol: f64) -> RankProfile {
        let mut w: Vec<Vec<f64>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_f64()).collect())
            .collect();
        let scale = w.iter().flatten().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let threshold = tol * scale.max(1.0);

        let mut used = vec![false; self.rows];
        let mut pivot_rows = Vec::new();
        let mut pivot_cols = Vec::new();
        for col in 0..self.cols {
            let mut best: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                if used[r] {
                    continue;
                }
                let a = w[r][col].abs();
                if a > threshold && best.is_none_or(|(_, b)| a > b) {
                    best = Some((r, a));
                }
            }
            let Some((pr, _)) = best else { continue };
            used[pr] = true;
            pivot_rows.push(pr);
            pivot_cols.push(col);
            let pivot = w[pr][col];
            for r in 0..self.rows {
                if used[r] || w[r][col] == 0.0 {
                    continue;
                }
                let factor = w[r][col] / pivot;
                for c in col..self.cols {
                    w[r][c] -= factor * w[pr][c];
                }
                w[r][col] = 0.0;
            }
        }
        RankProfile {
            rank: pivot_cols.len(),
            pivot_rows,
            pivot_cols,
        }
    }

    pub fn rank(&self, mode: &ArithmeticMode) -> usize {
        self.rank_profile(mode).rank
    }

    /// Determinant by elimination with row swaps (exact in rational mode).
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self, mode: &ArithmeticMode) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return mode.one();
        }
        let mut w: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = mode.one();
        for col in 0..n {
            let pivot_row = match mode {
                ArithmeticMode::Exact => (col..n).find(|&r| !mode.is_zero(&w[r][col])),
                ArithmeticMode::Float { .. } => {
                    let mut best: Option<(usize, f64)> = None;
                    for r in col..n {
                        let a = w[r][col].to_f64().abs();
                        if best.is_none_or(|(_, b)| a > b) {
                            best = Some((r, a));
                        }
                    }
                    best.filter(|&(r, _)| !mode.is_zero(&w[r][col]))
                        .map(|(r, _)| r)
                }
            };
            let Some(pr) = pivot_row else {
                return mode.zero();
            };
            if pr != col {
                w.swap(pr, col);
                det = -det;
            }
            det = &det * &w[col][col];
            for r in (col + 1)..n {
                if mode.is_zero(&w[r][col]) {
                    continue;
                }
                let factor = &w[r][col] / &w[col][col];
                for c in col..n {
                    let delta = &factor * &w[col][c];
                    w[r][c] = &w[r][c] - &delta;
                }
            }
        }
        det
    }

    /// Solve `self * x = b`; `None` when singular under the mode's zero test.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[Scalar], mode: &ArithmeticMode) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        if n == 0 {
            return Some(Vec::new());
        }
        let mut w: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pr = match mode {
                ArithmeticMode::Exact => (col..n).find(|&r| !mode.is_zero(&w[r][col]))?,
                ArithmeticMode::Float { .. } => {
                    let (pr, _) = (col..n)
                        .map(|r| (r, w[r][col].to_f64().abs()))
                        .max_by(|a, b| a.1.total_cmp(&b.1))?;
                    if mode.is_zero(&w[pr][col]) {
                        return None;
                    }
                    pr
                }
            };
            w.swap(pr, col);
            let inv_pivot = &mode.one() / &w[col][col];
            for c in col..=n {
                w[col][c] = &w[col][c] * &inv_pivot;
            }
            for r in 0..n {
                if r == col || mode.is_zero(&w[r][col]) {
                    continue;
                }
                let factor = w[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &w[col][c];
                    w[r][c] = &w[r][c] - &delta;
                }
            }
        }
        Some(w.into_iter().map(|row| row[n].clone()).collect())
    }

    /// Inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self, mode: &ArithmeticMode) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        // column-by-column solve keeps the code short; n is small here
        for j in 0..n {
            let mut e = vec![mode.zero(); n];
            e[j] = mode.one();
            cols.push(self.solve(&e, mode)?);
        }
        Some(Mat::build(n, n, |i, j| cols[j][i].clone()))
    }
}
