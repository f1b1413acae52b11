//! Alphabets and words. Words store letter indices into a fixed alphabet and
//! order shortlex: by length first, then lexicographically by letter
//! precedence. Shortlex is the canonical enumeration everywhere in this crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite ordered set of distinct symbol labels. The order fixes letter
/// precedence for shortlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: Vec<S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet(
                "alphabet must have at least one symbol".into(),
            ));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "alphabet of {} symbols exceeds the supported maximum of {}",
                symbols.len(),
                u8::MAX
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol label".into()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol '{s}'")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Digit-labelled alphabet `0, 1, ..., k-1` (k <= 10).
    pub fn of_size(k: usize) -> Result<Self> {
        if k == 0 || k > 10 {
            return Err(Error::InvalidAlphabet(format!(
                "digit alphabet supports sizes 1..=10, got {k}"
            )));
        }
        Alphabet::new((0..k).map(|i| i.to_string()).collect())
    }

    pub fn binary() -> Self {
        Alphabet::of_size(2).expect("binary alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one symbol
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: u8) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.symbols
            .iter()
            .position(|s| s == label)
            .map(|i| i as u8)
    }

    /// Every letter index must be in range for this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters.iter().find(|&&l| l as usize >= self.len()) {
            None => Ok(()),
            Some(&l) => Err(Error::InvalidWord {
                word: format!("{w:?}"),
                reason: format!(
                    "letter index {l} out of range for alphabet of size {}",
                    self.len()
                ),
            }),
        }
    }

    /// Concatenation of symbol labels; the empty word renders as "".
    pub fn render(&self, w: &Word) -> String {
        w.letters.iter().map(|&l| self.symbol(l)).collect()
    }

    /// Tokenize a label string back into a word. Backtracks over symbol
    /// choices, so multi-character labels are fine as long as the string has
    /// exactly one decomposition; ambiguous strings are rejected.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        fn go(alphabet: &Alphabet, rest: &str, acc: &mut Vec<u8>, found: &mut Vec<Vec<u8>>) {
            if found.len() > 1 {
                return;
            }
            if rest.is_empty() {
                found.push(acc.clone());
                return;
            }
            for (i, sym) in alphabet.symbols.iter().enumerate() {
                if let Some(tail) = rest.strip_prefix(sym.as_str()) {
                    acc.push(i as u8);
                    go(alphabet, tail, acc, found);
                    acc.pop();
                }
            }
        }
        let mut found = Vec::new();
        go(self, text, &mut Vec::new(), &mut found);
        match found.len() {
            1 => Ok(Word::new(found.pop().unwrap())),
            0 => Err(Error::InvalidWord {
                word: text.to_string(),
                reason: "not a concatenation of alphabet symbols".into(),
            }),
            _ => Err(Error::InvalidWord {
                word: text.to_string(),
                reason: "ambiguous decomposition into alphabet symbols".into(),
            }),
        }
    }
}

/// A finite string of letter indices; the empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word { letters }
    }

    pub fn single(letter: u8) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `self` followed by `other`; |wv| = |w| + |v|.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn prepend(&self, letter: u8) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn append(&self, letter: u8) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    /// Lexicographic rank among words of the same length over `k` letters.
    pub fn lex_rank(&self, k: usize) -> usize {
        self.letters.iter().fold(0, |acc, &l| acc * k + l as usize)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All words of length exactly `n`, lexicographic.
pub fn words_of_length(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let k = alphabet.len();
    let mut out = Vec::with_capacity(k.pow(n as u32));
    let mut current = vec![0u8; n];
    loop {
        out.push(Word::new(current.clone()));
        // odometer increment
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (current[pos] as usize) + 1 < k {
                current[pos] += 1;
                for c in &mut current[pos + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// All words of length at most `max_len`, shortlex order.
pub fn shortlex_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for n in 0..=max_len {
        out.extend(words_of_length(alphabet, n));
    }
    out
}

/// Number of words of length at most `max_len` over `k` letters.
pub fn shortlex_count(k: usize, max_len: usize) -> usize {
    (0..=max_len).map(|n| k.pow(n as u32)).sum()
}
