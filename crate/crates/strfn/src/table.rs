//! Complete value tables over `Σ^n` with suffix-marginalization semantics.
//!
//! A table stores one value per word of length exactly `n`. Values for
//! shorter words are defined by summing over all suffix completions,
//! `p(u) = Σ_{s ∈ Σ^{n−|u|}} p(us)`, so marginal consistency
//! `p(u) = Σ_a p(ua)` holds for every stored table by construction.

use crate::error::{Error, Result};
use crate::scalar::{ArithmeticMode, Scalar};
use crate::word::{words_of_length, Alphabet, Word};

/// Declared constraint level of a table. `Stochastic` and `Unconstrained`
/// are validated at construction; `Raw` admits anything (negative values
/// included).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Stochastic,
    Unconstrained,
    Raw,
}

/// What the stored values actually satisfy. Marginal consistency holds for
/// every finite table by construction of `marginal`, so the classes differ
/// only in nonnegativity and total mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// All values nonnegative and total mass 1.
    SsfConsistent,
    /// All values nonnegative, total mass != 1.
    UssfConsistent,
    /// Some value negative.
    GussfOnly,
    /// Non-finite values (float mode only).
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    alphabet: Alphabet,
    n: usize,
    kind: TableKind,
    mode: ArithmeticMode,
    /// Values for all of Σ^n in lexicographic word order.
    values: Vec<Scalar>,
}

impl DistributionTable {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        kind: TableKind,
        mode: ArithmeticMode,
        values: Vec<Scalar>,
    ) -> Result<Self> {
        let expected = alphabet
            .len()
            .checked_pow(n as u32)
            .ok_or_else(|| Error::InvalidModel {
                kind: "table".into(),
                reason: format!("|alphabet|^{n} overflows"),
            })?;
        if values.len() != expected {
            return Err(Error::InvalidModel {
                kind: "table".into(),
                reason: format!(
                    "expected {expected} values for length {n}, got {}",
                    values.len()
                ),
            });
        }
        let table = DistributionTable {
            alphabet,
            n,
            kind,
            mode,
            values,
        };
        match kind {
            TableKind::Raw => {}
            TableKind::Unconstrained | TableKind::Stochastic => {
                if table.values.iter().any(|v| mode.is_negative(v)) {
                    return Err(Error::InvalidModel {
                        kind: "table".into(),
                        reason: "negative value in a table flagged nonnegative".into(),
                    });
                }
                if kind == TableKind::Stochastic && !mode.eq_scalar(&table.total(), &mode.one()) {
                    return Err(Error::InvalidModel {
                        kind: "table".into(),
                        reason: format!("stochastic table has total mass {}", table.total()),
                    });
                }
            }
        }
        Ok(table)
    }

    /// Tabulate `f` over Σ^n in lexicographic order.
    pub fn from_fn(
        alphabet: Alphabet,
        n: usize,
        kind: TableKind,
        mode: ArithmeticMode,
        f: impl FnMut(&Word) -> Scalar,
    ) -> Result<Self> {
        let values = words_of_length(&alphabet, n).iter().map(f).collect();
        DistributionTable::new(alphabet, n, kind, mode, values)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Stored value of a word of length exactly `n`.
    pub fn value(&self, w: &Word) -> Result<&Scalar> {
        if w.len() != self.n {
            return Err(Error::InvalidWord {
                word: self.alphabet.render(w),
                reason: format!("stored values have length {}, got {}", self.n, w.len()),
            });
        }
        self.alphabet.check_word(w)?;
        Ok(&self.values[w.lex_rank(self.alphabet.len())])
    }

    /// `p(u)` for any `|u| <= n`: the stored value at full length, otherwise
    /// the sum over all suffix completions. Words sharing the prefix `u` are
    /// contiguous in lexicographic order, so this is one block sum.
    pub fn marginal(&self, u: &Word) -> Result<Scalar> {
        if u.len() > self.n {
            return Err(Error::WordTooLong {
                word: u.len(),
                table: self.n,
            });
        }
        self.alphabet.check_word(u)?;
        let k = self.alphabet.len();
        let block = k.pow((self.n - u.len()) as u32);
        let start = u.lex_rank(k) * block;
        let mut acc = self.mode.zero();
        for v in &self.values[start..start + block] {
            acc = &acc + v;
        }
        Ok(acc)
    }

    /// `p(□)`: total mass of the table.
    pub fn total(&self) -> Scalar {
        self.marginal(&Word::empty())
            .expect("empty word is always admissible")
    }

    pub fn classify(&self) -> Classification {
        if self.values.iter().any(|v| !v.is_finite()) {
            return Classification::Inconsistent;
        }
        if self.values.iter().any(|v| self.mode.is_negative(v)) {
            return Classification::GussfOnly;
        }
        if self.mode.eq_scalar(&self.total(), &self.mode.one()) {
            Classification::SsfConsistent
        } else {
            Classification::UssfConsistent
        }
    }

    /// The table over Σ^m obtained by marginalizing away the last `n - m`
    /// letters.
    pub fn marginalize_to(&self, m: usize) -> Result<DistributionTable> {
        if m > self.n {
            return Err(Error::WordTooLong {
                word: m,
                table: self.n,
            });
        }
        let k = self.alphabet.len();
        let mut values = self.values.clone();
        for _ in m..self.n {
            values = values
                .chunks(k)
                .map(|chunk| {
                    let mut acc = self.mode.zero();
                    for v in chunk {
                        acc = &acc + v;
                    }
                    acc
                })
                .collect();
        }
        DistributionTable::new(self.alphabet.clone(), m, TableKind::Raw, self.mode, values)
    }

    /// The letter-shifted table `p^a : v ↦ p(av)` over Σ^{n−1}, not
    /// renormalized. Its Hankel rank never exceeds the rank of the source.
    pub fn shift(&self, letter: u8) -> Result<DistributionTable> {
        if self.n == 0 {
            return Err(Error::EmptyTable);
        }
        self.alphabet.check_word(&Word::single(letter))?;
        let k = self.alphabet.len();
        let block = k.pow((self.n - 1) as u32);
        let start = letter as usize * block;
        DistributionTable::new(
            self.alphabet.clone(),
            self.n - 1,
            TableKind::Raw,
            self.mode,
            self.values[start..start + block].to_vec(),
        )
    }

    /// Replace the declared kind by what the values actually satisfy.
    pub fn reclassified(mut self) -> Self {
        self.kind = match self.classify() {
            Classification::SsfConsistent => TableKind::Stochastic,
            Classification::UssfConsistent => TableKind::Unconstrained,
            Classification::GussfOnly | Classification::Inconsistent => TableKind::Raw,
        };
        self
    }

    /// Same values pushed into float mode with the given tolerance.
    pub fn to_float(&self, tol: f64) -> DistributionTable {
        DistributionTable {
            alphabet: self.alphabet.clone(),
            n: self.n,
            kind: self.kind,
            mode: ArithmeticMode::Float { tol },
            values: self.values.iter().map(Scalar::to_float).collect(),
        }
    }

    /// First word (lexicographic) where the two tables disagree under the
    /// mode of `self`, or `None` when they agree everywhere.
    pub fn first_difference(&self, other: &DistributionTable) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                "tables over different alphabets".into(),
            ));
        }
        if self.n != other.n {
            return Err(Error::InvalidModel {
                kind: "table".into(),
                reason: format!("comparing tables of lengths {} and {}", self.n, other.n),
            });
        }
        for (i, w) in words_of_length(&self.alphabet, self.n)
            .into_iter()
            .enumerate()
        {
            if !self.mode.eq_scalar(&self.values[i], &other.values[i]) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// All marginals `p(u)`, `|u| <= n`, precomputed level by level. Level m
    /// is built from level m+1 by one block sum per word, so the whole view
    /// costs one pass over the table per length.
    pub fn marginal_view(&self) -> MarginalView {
        let k = self.alphabet.len();
        let mut levels = vec![self.values.clone()];
        for _ in 0..self.n {
            let prev = levels.last().unwrap();
            let next: Vec<Scalar> = prev
                .chunks(k)
                .map(|chunk| {
                    let mut acc = self.mode.zero();
                    for v in chunk {
                        acc = &acc + v;
                    }
                    acc
                })
                .collect();
            levels.push(next);
        }
        levels.reverse(); // levels[m] now holds Σ^m
        MarginalView { k, levels }
    }
}

/// Precomputed marginals for every word length up to `n`.
#[derive(Debug, Clone)]
pub struct MarginalView {
    k: usize,
    levels: Vec<Vec<Scalar>>,
}

impl MarginalView {
    pub fn get(&self, w: &Word) -> &Scalar {
        &self.levels[w.len()][w.lex_rank(self.k)]
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }
}
