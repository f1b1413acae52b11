//! Quasi-realizations `((T_a)_{a∈Σ}, x, y)` and their extraction from finite
//! tables.
//!
//! A quasi-realization evaluates a word `v = a_1…a_k` as
//! `y^T · T_{a_k} ··· T_{a_1} · x`: the letter operators apply to the initial
//! vector left to right, and the readout functional is applied last. The
//! extraction procedure picks basis words from the short Hankel minor, builds
//! the cross-evaluation matrix `V[i][j] = p(w_j v_i)` and the letter matrices
//! `W_a[i][j] = p(w_j a v_i)`, and returns operators `T_a = W_a V^{-1}` with
//! `x_i = p(v_i)` and `y` solving `y^T V = (p(w_1), …, p(w_d))`. Whenever the
//! table passes the rank conditions, the result reproduces every marginal of
//! the table.

use crate::error::{Error, Result};
use crate::hankel::build_partial_hankel;
use crate::matrix::Mat;
use crate::scalar::{ArithmeticMode, Scalar};
use crate::table::{DistributionTable, TableKind};
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiRealization {
    alphabet: Alphabet,
    dim: usize,
    /// One linear operator per letter, each `dim x dim`.
    operators: Vec<Mat>,
    /// Initial state vector (`x` in the file format).
    initial: Vec<Scalar>,
    /// Readout functional applied after the word (`y` in the file format).
    readout: Vec<Scalar>,
    /// Whether the readout is a fixed left eigenvector of the summed
    /// operators, i.e. the generator produces a marginal-consistent function.
    gussf: bool,
    mode: ArithmeticMode,
}

impl QuasiRealization {
    pub fn new(
        alphabet: Alphabet,
        operators: Vec<Mat>,
        initial: Vec<Scalar>,
        readout: Vec<Scalar>,
        gussf: bool,
        mode: ArithmeticMode,
    ) -> Result<Self> {
        let dim = initial.len();
        if readout.len() != dim {
            return Err(Error::InvalidModel {
                kind: "realization".into(),
                reason: format!("initial has length {dim}, readout {}", readout.len()),
            });
        }
        if operators.len() != alphabet.len() {
            return Err(Error::InvalidModel {
                kind: "realization".into(),
                reason: format!(
                    "{} operators for an alphabet of {} letters",
                    operators.len(),
                    alphabet.len()
                ),
            });
        }
        for (i, t) in operators.iter().enumerate() {
            if t.rows() != dim || t.cols() != dim {
                return Err(Error::InvalidModel {
                    kind: "realization".into(),
                    reason: format!(
                        "operator for letter {i} is {}x{}, expected {dim}x{dim}",
                        t.rows(),
                        t.cols()
                    ),
                });
            }
        }
        let r = QuasiRealization {
            alphabet,
            dim,
            operators,
            initial,
            readout,
            gussf,
            mode,
        };
        if gussf {
            let residual = r.gussf_residual();
            if residual.iter().any(|s| !mode.is_zero(s)) {
                return Err(Error::InvalidModel {
                    kind: "realization".into(),
                    reason: "flagged as marginal-consistent but the eigenvector identity fails"
                        .into(),
                });
            }
        }
        Ok(r)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[Mat] {
        &self.operators
    }

    pub fn operator(&self, letter: u8) -> &Mat {
        &self.operators[letter as usize]
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    pub fn readout(&self) -> &[Scalar] {
        &self.readout
    }

    pub fn is_gussf(&self) -> bool {
        self.gussf
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// `y^T T_{a_k} ... T_{a_1} x`; the empty word evaluates to `y^T x`.
    pub fn eval(&self, v: &Word) -> Scalar {
        self.alphabet
            .check_word(v)
            .expect("word letters must index the realization's alphabet");
        let mut state = self.initial.clone();
        for &letter in v.letters() {
            state = self.operators[letter as usize].mul_vec(&state);
        }
        dot(&self.readout, &state, &self.mode)
    }

    /// Tabulate all of Σ^n. States are shared along common prefixes, so the
    /// cost is one operator application per enumerated prefix rather than one
    /// full product per word.
    pub fn to_table(&self, n: usize) -> DistributionTable {
        let mut values = Vec::with_capacity(self.alphabet.len().pow(n as u32));
        self.tabulate(&self.initial.clone(), n, &mut values);
        DistributionTable::new(self.alphabet.clone(), n, TableKind::Raw, self.mode, values)
            .expect("tabulation fills every word exactly once")
    }

    fn tabulate(&self, state: &[Scalar], remaining: usize, out: &mut Vec<Scalar>) {
        if remaining == 0 {
            out.push(dot(&self.readout, state, &self.mode));
            return;
        }
        for t in &self.operators {
            self.tabulate(&t.mul_vec(state), remaining - 1, out);
        }
    }

    /// Residual of the eigenvector identity: `y^T (Σ_a T_a) − y^T`. The zero
    /// vector (exactly, or within tolerance) certifies that the realization
    /// generates a marginal-consistent string function.
    pub fn gussf_residual(&self) -> Vec<Scalar> {
        let mut acc = vec![self.mode.zero(); self.dim];
        for t in &self.operators {
            let row = Mat::vec_mul(&self.readout, t);
            for (a, b) in acc.iter_mut().zip(row) {
                *a = &*a + &b;
            }
        }
        acc.iter().zip(&self.readout).map(|(s, y)| s - y).collect()
    }

    /// Zero-pad to dimension `d`; evaluations are unchanged on every word.
    pub fn embedded(&self, d: usize) -> Result<QuasiRealization> {
        if d < self.dim {
            return Err(Error::DimensionShrink {
                from: self.dim,
                to: d,
            });
        }
        if d == self.dim {
            return Ok(self.clone());
        }
        let pad_vec = |v: &[Scalar]| {
            let mut out = v.to_vec();
            out.resize(d, self.mode.zero());
            out
        };
        let operators = self
            .operators
            .iter()
            .map(|t| {
                Mat::build(d, d, |i, j| {
                    if i < self.dim && j < self.dim {
                        t.get(i, j).clone()
                    } else {
                        self.mode.zero()
                    }
                })
            })
            .collect();
        QuasiRealization::new(
            self.alphabet.clone(),
            operators,
            pad_vec(&self.initial),
            pad_vec(&self.readout),
            self.gussf,
            self.mode,
        )
    }

    pub fn to_float(&self, tol: f64) -> QuasiRealization {
        QuasiRealization {
            alphabet: self.alphabet.clone(),
            dim: self.dim,
            operators: self.operators.iter().map(Mat::to_float).collect(),
            initial: self.initial.iter().map(Scalar::to_float).collect(),
            readout: self.readout.iter().map(Scalar::to_float).collect(),
            gussf: self.gussf,
            mode: ArithmeticMode::Float { tol },
        }
    }
}

fn dot(a: &[Scalar], b: &[Scalar], mode: &ArithmeticMode) -> Scalar {
    let mut acc = mode.zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Basis words from the short minor: `d*` row words and column words of
/// length at most `d-1` whose cross-evaluation matrix is invertible.
#[derive(Debug, Clone)]
pub struct BasisSelection {
    pub row_words: Vec<Word>,
    pub col_words: Vec<Word>,
    /// `matrix[i][j] = p(col_words[j] · row_words[i])`, invertible of size d*.
    pub matrix: Mat,
}

/// Pick pivot words of `P_{p,d-1,d-1}` by greedy shortlex elimination.
/// Requires table length at least `2d - 1` so the later letter matrices stay
/// within budget.
pub fn select_basis(table: &DistributionTable, d: usize) -> Result<BasisSelection> {
    if d == 0 {
        return Err(Error::InvalidModel {
            kind: "basis".into(),
            reason: "dimension bound must be at least 1".into(),
        });
    }
    if table.n() + 1 < 2 * d {
        return Err(Error::LengthBudgetExceeded {
            needed: 2 * d - 1,
            available: table.n(),
        });
    }
    let h = build_partial_hankel(table, d - 1, d - 1)?;
    let report = h.rank_report();
    let view = table.marginal_view();
    let matrix = Mat::build(report.rank, report.rank, |i, j| {
        view.get(&report.pivot_cols[j].concat(&report.pivot_rows[i]))
            .clone()
    });
    Ok(BasisSelection {
        row_words: report.pivot_rows,
        col_words: report.pivot_cols,
        matrix,
    })
}

/// Run the extraction on a table that satisfies the membership conditions
/// for dimension `d`, returning the (possibly smaller, dimension `d*`)
/// realization. Condition (a) failing reports the short-minor rank; condition
/// (b) failing reports a long pivot word that escapes the short basis.
pub fn extract_realization(table: &DistributionTable, d: usize) -> Result<QuasiRealization> {
    let basis = select_basis(table, d)?;
    let d_star = basis.row_words.len();
    if d_star > d {
        return Err(Error::ConditionAViolated {
            rank_found: d_star,
            bound: d,
        });
    }
    let cond_b = crate::invariants::condition_b_report(table, d_star, d - 1)?;
    if !cond_b.pass {
        let witness = cond_b.violating_word.unwrap_or_else(Word::empty);
        return Err(Error::ConditionBViolated {
            expected: d_star,
            found: cond_b.rank_half_rows.max(cond_b.rank_half_cols),
            word: table.alphabet().render(&witness),
        });
    }
    build_from_basis(table, &basis)
}

fn build_from_basis(table: &DistributionTable, basis: &BasisSelection) -> Result<QuasiRealization> {
    let mode = table.mode();
    let d_star = basis.row_words.len();
    let view = table.marginal_view();

    let initial: Vec<Scalar> = basis
        .row_words
        .iter()
        .map(|v| view.get(v).clone())
        .collect();
    let col_values: Vec<Scalar> = basis
        .col_words
        .iter()
        .map(|w| view.get(w).clone())
        .collect();
    // y^T V = (p(w_1), ..., p(w_d*))  <=>  V^T y = that vector
    let readout = basis
        .matrix
        .transpose()
        .solve(&col_values, &mode)
        .ok_or_else(|| Error::InvalidModel {
            kind: "realization".into(),
            reason: "basis matrix is singular".into(),
        })?;
    let v_inverse = basis
        .matrix
        .inverse(&mode)
        .ok_or_else(|| Error::InvalidModel {
            kind: "realization".into(),
            reason: "basis matrix is singular".into(),
        })?;

    let mut operators = Vec::with_capacity(table.alphabet().len());
    for letter in 0..table.alphabet().len() as u8 {
        let w_letter = Mat::build(d_star, d_star, |i, j| {
            let word = basis.col_words[j]
                .concat(&Word::single(letter))
                .concat(&basis.row_words[i]);
            view.get(&word).clone()
        });
        operators.push(w_letter.matmul(&v_inverse));
    }

    // flag marginal consistency when the extracted readout satisfies it
    let candidate = QuasiRealization::new(
        table.alphabet().clone(),
        operators,
        initial,
        readout,
        false,
        mode,
    )?;
    let gussf = candidate.gussf_residual().iter().all(|s| mode.is_zero(s));
    Ok(QuasiRealization { gussf, ..candidate })
}
