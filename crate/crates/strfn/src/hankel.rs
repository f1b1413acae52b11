//! Finite Hankel minors and their rank.
//!
//! The orientation is fixed once: the entry in the row indexed by suffix `v`
//! and the column indexed by prefix `w` is `p(wv)`. Rows therefore collect
//! values of strings sharing a suffix and columns those sharing a prefix.
//! Every downstream index convention derives from this single statement.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::ArithmeticMode;
use crate::table::DistributionTable;
use crate::word::{shortlex_words, Word};

/// The minor of the Hankel matrix on row words of length `<= suffix_len` and
/// column words of length `<= prefix_len`, both in shortlex order.
#[derive(Debug, Clone)]
pub struct PartialHankel {
    row_words: Vec<Word>,
    col_words: Vec<Word>,
    mat: Mat,
    mode: ArithmeticMode,
}

/// Rank of a minor plus pivot word sets spanning an invertible submatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub pivot_rows: Vec<Word>,
    pub pivot_cols: Vec<Word>,
    pub mode: ArithmeticMode,
}

/// Fill the minor via marginalization. Needs `suffix_len + prefix_len <= n`
/// so every concatenation `wv` stays within the table.
pub fn build_partial_hankel(
    table: &DistributionTable,
    suffix_len: usize,
    prefix_len: usize,
) -> Result<PartialHankel> {
    if suffix_len + prefix_len > table.n() {
        return Err(Error::LengthBudgetExceeded {
            needed: suffix_len + prefix_len,
            available: table.n(),
        });
    }
    let row_words = shortlex_words(table.alphabet(), suffix_len);
    let col_words = shortlex_words(table.alphabet(), prefix_len);
    let view = table.marginal_view();
    let mat = Mat::build(row_words.len(), col_words.len(), |i, j| {
        view.get(&col_words[j].concat(&row_words[i])).clone()
    });
    Ok(PartialHankel {
        row_words,
        col_words,
        mat,
        mode: table.mode(),
    })
}

impl PartialHankel {
    pub fn row_words(&self) -> &[Word] {
        &self.row_words
    }

    pub fn col_words(&self) -> &[Word] {
        &self.col_words
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    pub fn entry(&self, row: usize, col: usize) -> &crate::scalar::Scalar {
        self.mat.get(row, col)
    }

    /// Exact rank by fraction-free elimination (rational mode) or
    /// tolerance-thresholded elimination (float mode); pivot words come back
    /// in shortlex order.
    pub fn rank_report(&self) -> RankReport {
        let profile = self.mat.rank_profile(&self.mode);
        let words = |idx: &[usize], pool: &[Word]| {
            let mut sorted = idx.to_vec();
            sorted.sort_unstable(); // index order on shortlex-listed words is shortlex
            sorted.into_iter().map(|i| pool[i].clone()).collect()
        };
        RankReport {
            rank: profile.rank,
            pivot_rows: words(&profile.pivot_rows, &self.row_words),
            pivot_cols: words(&profile.pivot_cols, &self.col_words),
            mode: self.mode,
        }
    }

    pub fn rank(&self) -> usize {
        self.mat.rank_profile(&self.mode).rank
    }
}

/// Dimension of the string function behind `table`, assuming the caller's
/// promise that it is at most `d_bound`: the rank of the
/// `(d_bound-1, d_bound-1)` minor equals the true dimension once the table is
/// long enough to hold it.
pub fn dimension(table: &DistributionTable, d_bound: usize) -> Result<usize> {
    if d_bound == 0 {
        return Ok(0);
    }
    let budget = 2 * (d_bound - 1);
    if table.n() < budget {
        return Err(Error::LengthBudgetExceeded {
            needed: budget,
            available: table.n(),
        });
    }
    Ok(build_partial_hankel(table, d_bound - 1, d_bound - 1)?.rank())
}
