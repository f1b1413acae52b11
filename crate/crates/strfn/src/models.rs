//! Concrete model families: hidden Markov parameters, Markov chains and
//! trace models, their conversions into quasi-realizations and tables,
//! brute-force oracles, and seeded random instance generators.
//!
//! The hidden-Markov timing convention is fixed by declaring the operator
//! form normative: `T_a = A^T · diag(E_{·a})` with initial vector `π` and
//! all-ones readout. The path-sum oracle below enumerates hidden state paths
//! with emission at the current state followed by a transition, which is the
//! convention that matches those operators.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::realization::QuasiRealization;
use crate::rng::SeededRng;
use crate::scalar::{ArithmeticMode, Scalar};
use crate::table::{DistributionTable, TableKind};
use crate::word::{Alphabet, Word};

/// Hidden state paths enumerated by the brute-force oracle are capped here.
pub const DEFAULT_PATH_BUDGET: u128 = 1 << 22;

// ---------------------------------------------------------------------------
// Hidden Markov parameters
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct HmmParams {
    alphabet: Alphabet,
    states: usize,
    /// Row-stochastic state transition matrix, `states x states`.
    transition: Mat,
    /// Row-stochastic emission matrix, `states x |Σ|`.
    emission: Mat,
    /// Nonnegative initial vector; summing to 1 makes the model constrained.
    initial: Vec<Scalar>,
    mode: ArithmeticMode,
}

impl HmmParams {
    pub fn new(
        alphabet: Alphabet,
        transition: Mat,
        emission: Mat,
        initial: Vec<Scalar>,
        mode: ArithmeticMode,
    ) -> Result<Self> {
        let states = initial.len();
        let bad = |reason: String| Error::InvalidModel {
            kind: "hmm".into(),
            reason,
        };
        if states == 0 {
            return Err(bad("at least one hidden state required".into()));
        }
        if transition.rows() != states || transition.cols() != states {
            return Err(bad(format!(
                "transition matrix is {}x{}, expected {states}x{states}",
                transition.rows(),
                transition.cols()
            )));
        }
        if emission.rows() != states || emission.cols() != alphabet.len() {
            return Err(bad(format!(
                "emission matrix is {}x{}, expected {states}x{}",
                emission.rows(),
                emission.cols(),
                alphabet.len()
            )));
        }
        for (name, m) in [("transition", &transition), ("emission", &emission)] {
            for i in 0..m.rows() {
                let mut sum = mode.zero();
                for j in 0..m.cols() {
                    if mode.is_negative(m.get(i, j)) {
                        return Err(bad(format!("negative entry in {name} row {i}")));
                    }
                    sum = &sum + m.get(i, j);
                }
                if !mode.eq_scalar(&sum, &mode.one()) {
                    return Err(bad(format!("{name} row {i} sums to {sum}, expected 1")));
                }
            }
        }
        if initial.iter().any(|v| mode.is_negative(v)) {
            return Err(bad("negative entry in initial vector".into()));
        }
        Ok(HmmParams {
            alphabet,
            states,
            transition,
            emission,
            initial,
            mode,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn transition(&self) -> &Mat {
        &self.transition
    }

    pub fn emission(&self) -> &Mat {
        &self.emission
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// `T_a[i][j] = A[j][i] · E[j][a]`: transpose-transition times emission
    /// diagonal. Readout is all ones, so the summed operators fix it and the
    /// result is always marginal-consistent.
    pub fn to_realization(&self) -> QuasiRealization {
        let operators = (0..self.alphabet.len())
            .map(|a| {
                Mat::build(self.states, self.states, |i, j| {
                    self.transition.get(j, i) * self.emission.get(j, a)
                })
            })
            .collect();
        QuasiRealization::new(
            self.alphabet.clone(),
            operators,
            self.initial.clone(),
            vec![self.mode.one(); self.states],
            true,
            self.mode,
        )
        .expect("row-stochastic parameters always satisfy the eigenvector identity")
    }

    pub fn to_table(&self, n: usize) -> DistributionTable {
        self.to_realization().to_table(n).reclassified()
    }

    /// Parameters of the letter-shifted process `p^a`: same transition and
    /// emission, initial vector pushed forward one step (unnormalized).
    pub fn shifted(&self, letter: u8) -> Result<HmmParams> {
        self.alphabet.check_word(&Word::single(letter))?;
        let pushed = self
            .to_realization()
            .operator(letter)
            .mul_vec(&self.initial);
        HmmParams::new(
            self.alphabet.clone(),
            self.transition.clone(),
            self.emission.clone(),
            pushed,
            self.mode,
        )
    }

    pub fn to_float(&self, tol: f64) -> HmmParams {
        HmmParams {
            alphabet: self.alphabet.clone(),
            states: self.states,
            transition: self.transition.to_float(),
            emission: self.emission.to_float(),
            initial: self.initial.iter().map(Scalar::to_float).collect(),
            mode: ArithmeticMode::Float { tol },
        }
    }
}

/// Path-sum probability: enumerate all `l^{|v|}` hidden state paths and sum
/// `π(s_1)·E(s_1,a_1)·A(s_1,s_2)·E(s_2,a_2)···`. The depth-first walk below
/// visits every path and contributes its full product at the leaf; this is
/// the independent oracle the operator form is tested against.
pub fn hmm_brute_force(h: &HmmParams, v: &Word, path_budget: u128) -> Result<Scalar> {
    h.alphabet().check_word(v)?;
    let k = v.len();
    let l = h.states;
    let path_count = (l as u128).saturating_pow(k as u32);
    if path_count > path_budget {
        return Err(Error::PathBudgetExceeded {
            paths: path_count,
            budget: path_budget,
        });
    }
    let mut total = h.mode.zero();
    if k == 0 {
        for s in &h.initial {
            total = &total + s;
        }
        return Ok(total);
    }
    fn walk(
        h: &HmmParams,
        letters: &[u8],
        depth: usize,
        state: usize,
        product: Scalar,
        total: &mut Scalar,
    ) {
        if depth == letters.len() {
            *total = &*total + &product;
            return;
        }
        for next in 0..h.states {
            let step = &(&product * h.transition.get(state, next))
                * h.emission.get(next, letters[depth] as usize);
            walk(h, letters, depth + 1, next, step, total);
        }
    }
    for first in 0..l {
        let product = &h.initial[first] * h.emission.get(first, v.letters()[0] as usize);
        walk(h, v.letters(), 1, first, product, &mut total);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Markov chains
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovParams {
    alphabet: Alphabet,
    /// Strictly positive start weights, one per letter.
    initial: Vec<Scalar>,
    /// Letter-to-letter step matrix with unit row sums.
    step: Mat,
    mode: ArithmeticMode,
}

impl MarkovParams {
    pub fn new(
        alphabet: Alphabet,
        initial: Vec<Scalar>,
        step: Mat,
        mode: ArithmeticMode,
    ) -> Result<Self> {
        let k = alphabet.len();
        let bad = |reason: String| Error::InvalidModel {
            kind: "markov".into(),
            reason,
        };
        if initial.len() != k {
            return Err(bad(format!(
                "initial vector has length {}, expected {k}",
                initial.len()
            )));
        }
        if step.rows() != k || step.cols() != k {
            return Err(bad(format!(
                "step matrix is {}x{}, expected {k}x{k}",
                step.rows(),
                step.cols()
            )));
        }
        for (i, v) in initial.iter().enumerate() {
            if mode.is_negative(v) || mode.is_zero(v) {
                return Err(bad(format!("initial weight {i} must be strictly positive")));
            }
        }
        for i in 0..k {
            let mut sum = mode.zero();
            for j in 0..k {
                sum = &sum + step.get(i, j);
            }
            if !mode.eq_scalar(&sum, &mode.one()) {
                return Err(bad(format!("step row {i} sums to {sum}, expected 1")));
            }
        }
        Ok(MarkovParams {
            alphabet,
            initial,
            step,
            mode,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    pub fn step(&self) -> &Mat {
        &self.step
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// Chain-rule table: `p(a_1…a_n) = π(a_1) · Π M[a_{i-1}][a_i]`.
    pub fn to_table(&self, n: usize) -> DistributionTable {
        assert!(n >= 1, "a Markov table needs length at least 1");
        DistributionTable::from_fn(self.alphabet.clone(), n, TableKind::Raw, self.mode, |w| {
            let letters = w.letters();
            let mut prob = self.initial[letters[0] as usize].clone();
            for t in 1..letters.len() {
                prob = &prob * self.step.get(letters[t - 1] as usize, letters[t] as usize);
            }
            prob
        })
        .expect("chain rule fills every word")
        .reclassified()
    }

    pub fn to_float(&self, tol: f64) -> MarkovParams {
        MarkovParams {
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(Scalar::to_float).collect(),
            step: self.step.to_float(),
            mode: ArithmeticMode::Float { tol },
        }
    }
}

// ---------------------------------------------------------------------------
// Trace models
// ---------------------------------------------------------------------------

/// `p(a_1…a_k) = tr(X_{a_k} ··· X_{a_1})` for square matrices of a fixed
/// order; the empty word evaluates to the order (trace of the identity).
#[derive(Debug, Clone, PartialEq)]
pub struct TraceModel {
    alphabet: Alphabet,
    order: usize,
    matrices: Vec<Mat>,
    mode: ArithmeticMode,
}

impl TraceModel {
    pub fn new(alphabet: Alphabet, matrices: Vec<Mat>, mode: ArithmeticMode) -> Result<Self> {
        let bad = |reason: String| Error::InvalidModel {
            kind: "trace".into(),
            reason,
        };
        if matrices.len() != alphabet.len() {
            return Err(bad(format!(
                "{} matrices for an alphabet of {} letters",
                matrices.len(),
                alphabet.len()
            )));
        }
        let order = matrices.first().map_or(0, Mat::rows);
        if order == 0 {
            return Err(bad("order must be at least 1".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != order || m.cols() != order {
                return Err(bad(format!(
                    "matrix for letter {i} is {}x{}, expected {order}x{order}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(TraceModel {
            alphabet,
            order,
            matrices,
            mode,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    pub fn eval(&self, v: &Word) -> Scalar {
        self.alphabet
            .check_word(v)
            .expect("word letters must index the trace model's alphabet");
        let mut product = Mat::identity(self.order, &self.mode);
        for &letter in v.letters() {
            product = self.matrices[letter as usize].matmul(&product);
        }
        let mut trace = self.mode.zero();
        for i in 0..self.order {
            trace = &trace + product.get(i, i);
        }
        trace
    }

    /// Realization of dimension `order²` over vectorized matrices: operators
    /// `X_a ⊗ Id`, initial and readout both the vectorized identity.
    pub fn to_realization(&self) -> QuasiRealization {
        let id = Mat::identity(self.order, &self.mode);
        let operators = self.matrices.iter().map(|x| x.kron(&id)).collect();
        let vec_id: Vec<Scalar> = (0..self.order * self.order)
            .map(|idx| {
                if idx / self.order == idx % self.order {
                    self.mode.one()
                } else {
                    self.mode.zero()
                }
            })
            .collect();
        QuasiRealization::new(
            self.alphabet.clone(),
            operators,
            vec_id.clone(),
            vec_id,
            false,
            self.mode,
        )
        .expect("kron lifting preserves shapes")
    }

    /// The `i`-th diagonal component `p_i(v) = (X_{a_k}···X_{a_1})_{ii}` as a
    /// realization of dimension `order`; the components sum to the trace.
    pub fn component(&self, i: usize) -> QuasiRealization {
        assert!(i < self.order);
        let mut basis = vec![self.mode.zero(); self.order];
        basis[i] = self.mode.one();
        QuasiRealization::new(
            self.alphabet.clone(),
            self.matrices.clone(),
            basis.clone(),
            basis,
            false,
            self.mode,
        )
        .expect("component shapes match the model order")
    }

    pub fn to_table(&self, n: usize) -> DistributionTable {
        self.to_realization().to_table(n)
    }

    pub fn to_float(&self, tol: f64) -> TraceModel {
        TraceModel {
            alphabet: self.alphabet.clone(),
            order: self.order,
            matrices: self.matrices.iter().map(Mat::to_float).collect(),
            mode: ArithmeticMode::Float { tol },
        }
    }
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

fn normalized_positive_row(rng: &mut SeededRng, len: usize) -> Vec<Scalar> {
    let raw: Vec<i64> = (0..len).map(|_| rng.int_in(1, 9)).collect();
    let sum: i64 = raw.iter().sum();
    raw.into_iter().map(|v| Scalar::rat(v, sum)).collect()
}

/// Row-stochastic parameters from normalized positive single digits; exact
/// rational mode, identical output for identical seeds.
pub fn random_hmm(states: usize, alphabet: &Alphabet, seed: u64) -> HmmParams {
    assert!(states >= 1);
    let mut rng = SeededRng::new(seed);
    let transition = Mat::from_rows(
        (0..states)
            .map(|_| normalized_positive_row(&mut rng, states))
            .collect(),
    );
    let emission = Mat::from_rows(
        (0..states)
            .map(|_| normalized_positive_row(&mut rng, alphabet.len()))
            .collect(),
    );
    let initial = normalized_positive_row(&mut rng, states);
    HmmParams::new(
        alphabet.clone(),
        transition,
        emission,
        initial,
        ArithmeticMode::Exact,
    )
    .expect("normalized rows are row-stochastic")
}

pub fn random_markov(alphabet: &Alphabet, seed: u64) -> MarkovParams {
    let mut rng = SeededRng::new(seed);
    let k = alphabet.len();
    let initial = normalized_positive_row(&mut rng, k);
    let step = Mat::from_rows(
        (0..k)
            .map(|_| normalized_positive_row(&mut rng, k))
            .collect(),
    );
    MarkovParams::new(alphabet.clone(), initial, step, ArithmeticMode::Exact)
        .expect("normalized rows are row-stochastic")
}

pub fn random_trace(order: usize, alphabet: &Alphabet, seed: u64) -> TraceModel {
    assert!(order >= 1);
    let mut rng = SeededRng::new(seed);
    let matrices = (0..alphabet.len())
        .map(|_| Mat::build(order, order, |_, _| Scalar::rat(rng.int_in(-3, 9), 10)))
        .collect();
    TraceModel::new(alphabet.clone(), matrices, ArithmeticMode::Exact).expect("square matrices")
}

/// Random quasi-realization. With `gussf` set, positive operator candidates
/// are rescaled column by column so a sampled positive readout satisfies the
/// eigenvector identity exactly, and the initial vector is normalized to
/// unit total mass.
pub fn random_realization(
    d: usize,
    alphabet: &Alphabet,
    seed: u64,
    gussf: bool,
) -> QuasiRealization {
    assert!(d >= 1);
    let mut rng = SeededRng::new(seed);
    let mode = ArithmeticMode::Exact;
    if !gussf {
        let operators = (0..alphabet.len())
            .map(|_| Mat::build(d, d, |_, _| Scalar::rat(rng.int_in(-4, 9), 10)))
            .collect();
        let initial: Vec<Scalar> = (0..d).map(|_| Scalar::rat(rng.int_in(-4, 9), 10)).collect();
        let readout: Vec<Scalar> = (0..d).map(|_| Scalar::rat(rng.int_in(-4, 9), 10)).collect();
        return QuasiRealization::new(alphabet.clone(), operators, initial, readout, false, mode)
            .expect("shapes match");
    }

    let readout: Vec<Scalar> = (0..d).map(|_| Scalar::int(rng.int_in(1, 9))).collect();
    let candidates: Vec<Mat> = (0..alphabet.len())
        .map(|_| Mat::build(d, d, |_, _| Scalar::rat(rng.int_in(1, 9), 10)))
        .collect();
    // column sums of y^T Σ_a T̃_a; strictly positive by construction
    let mut col_mass = vec![mode.zero(); d];
    for t in &candidates {
        let row = Mat::vec_mul(&readout, t);
        for (acc, v) in col_mass.iter_mut().zip(row) {
            *acc = &*acc + &v;
        }
    }
    let operators: Vec<Mat> = candidates
        .into_iter()
        .map(|t| Mat::build(d, d, |i, j| &(t.get(i, j) * &readout[j]) / &col_mass[j]))
        .collect();
    let raw_initial: Vec<Scalar> = (0..d).map(|_| Scalar::rat(rng.int_in(1, 9), 10)).collect();
    let mut mass = mode.zero();
    for (y, x) in readout.iter().zip(&raw_initial) {
        mass = &mass + &(y * x);
    }
    let initial: Vec<Scalar> = raw_initial.iter().map(|x| x / &mass).collect();
    QuasiRealization::new(alphabet.clone(), operators, initial, readout, true, mode)
        .expect("column rescaling satisfies the eigenvector identity exactly")
}

/// Random stochastic table: positive weights normalized to total mass 1.
pub fn random_table(alphabet: &Alphabet, n: usize, seed: u64) -> DistributionTable {
    let mut rng = SeededRng::new(seed);
    let count = alphabet.len().pow(n as u32);
    let raw: Vec<i64> = (0..count).map(|_| rng.int_in(1, 99)).collect();
    let sum: i64 = raw.iter().sum();
    DistributionTable::new(
        alphabet.clone(),
        n,
        TableKind::Stochastic,
        ArithmeticMode::Exact,
        raw.into_iter().map(|v| Scalar::rat(v, sum)).collect(),
    )
    .expect("normalized positive weights are stochastic")
}
