//! Alphabets, finite words and the combinatorial primitives built on them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered, non-empty list of distinct symbol labels. Symbol `i` carries
/// label `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlphabet("empty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(['[', ']', ',']) {
                return Err(Error::InvalidAlphabet(format!("bad label {l:?}")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidAlphabet(format!("duplicate label {l:?}")));
            }
        }
        Ok(Arc::new(Alphabet { labels }))
    }

    /// The alphabet `{0, 1}` used by Sturmian sequences.
    pub fn binary() -> Arc<Self> {
        Arc::new(Alphabet {
            labels: vec!["0".into(), "1".into()],
        })
    }

    /// One symbol per character of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Arc<Self>> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: Symbol) -> &str {
        &self.labels[s.index()]
    }

    pub fn symbol(&self, label: &str) -> Option<Symbol> {
        self.labels.iter().position(|l| l == label).map(|i| Symbol(i as u32))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.labels.len() as u32).map(Symbol)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.labels.len()
    }

    /// True when every label is a single character, so words can be written
    /// as bare strings.
    pub fn is_compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Appends a fresh symbol. Labels are `x0′`, `x1′`, ... taking the first
    /// counter value not already used, so repeated minting is deterministic.
    pub fn with_fresh(&self) -> (Arc<Alphabet>, Symbol) {
        let label = (0..)
            .map(|k| format!("x{k}\u{2032}"))
            .find(|l| !self.labels.contains(l))
            .expect("unbounded counter");
        let mut labels = self.labels.clone();
        labels.push(label);
        let fresh = Symbol(self.labels.len() as u32);
        (Arc::new(Alphabet { labels }), fresh)
    }

    /// Whether `other` extends this alphabet by appending labels.
    pub fn is_prefix_of(&self, other: &Alphabet) -> bool {
        other.labels.len() >= self.labels.len() && other.labels[..self.labels.len()] == self.labels[..]
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(bad) = symbols.iter().find(|s| !alphabet.contains(**s)) {
            return Err(Error::InvalidSymbol(format!("#{}", bad.0)));
        }
        Ok(Word { alphabet, symbols })
    }

    pub(crate) fn from_parts_unchecked(alphabet: Arc<Alphabet>, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|s| alphabet.contains(*s)));
        Word { alphabet, symbols }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Word {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Parses a word literal: a bare string of single-character labels
    /// (`110`) or a bracketed comma list (`[a,b,x0′]`).
    pub fn parse(alphabet: Arc<Alphabet>, literal: &str) -> Result<Self> {
        let lookup = |label: &str| {
            alphabet
                .symbol(label)
                .ok_or_else(|| Error::InvalidSymbol(label.to_string()))
        };
        let symbols = if let Some(inner) = literal.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated word literal {literal:?}")))?;
            if inner.is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(lookup).collect::<Result<_>>()?
            }
        } else {
            let mut buf = [0u8; 4];
            literal
                .chars()
                .map(|c| lookup(c.encode_utf8(&mut buf)))
                .collect::<Result<_>>()?
        };
        Ok(Word { alphabet, symbols })
    }

    /// Convenience constructor for binary words such as `"0110"`.
    pub fn binary(literal: &str) -> Result<Self> {
        Self::parse(Alphabet::binary(), literal)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.symbols[i]
    }

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if !self.same_alphabet(other) {
            return Err(Error::IncompatibleAlphabets);
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }

    pub fn power(&self, k: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols.repeat(k),
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[range].to_vec(),
        }
    }

    /// Cyclic left shift by `k` (mod `|w|`); negative `k` shifts right.
    pub fn rotate(&self, k: i64) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(k.rem_euclid(self.len() as i64) as usize);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }

    /// Smallest `d` dividing `|w|` with `w` being `d`-periodic.
    fn root_length(&self) -> usize {
        let n = self.len();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| (d..n).all(|i| self.symbols[i] == self.symbols[i - d]))
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(self.root_length() == self.len())
    }

    /// Returns `(u, k)` with `w = u^k`, `u` primitive.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let d = self.root_length();
        Ok((self.slice(0..d), self.len() / d))
    }

    pub fn count_symbol(&self, s: Symbol) -> usize {
        self.symbols.iter().filter(|&&t| t == s).count()
    }

    /// Counts occurrences of the symbol with the given label (0 if absent).
    pub fn count_label(&self, label: &str) -> usize {
        self.alphabet.symbol(label).map_or(0, |s| self.count_symbol(s))
    }

    /// Same symbols reinterpreted over a larger alphabet that extends this one.
    pub fn widen(&self, alphabet: &Arc<Alphabet>) -> Result<Word> {
        if !self.alphabet.is_prefix_of(alphabet) {
            return Err(Error::IncompatibleAlphabets);
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            symbols: self.symbols.clone(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.is_compact() {
            for s in &self.symbols {
                f.write_str(self.alphabet.label(*s))?;
            }
            Ok(())
        } else {
            f.write_str("[")?;
            for (i, s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.alphabet.label(*s))?;
            }
            f.write_str("]")
        }
    }
}

/// Number of `0`s in a cell, after checking it has the shape `1 0^k`.
pub(crate) fn cell_zero_count(cell: &Word) -> Result<usize> {
    let malformed = || Error::MalformedCell(cell.to_string());
    let alpha = cell.alphabet();
    let (Some(zero), Some(one)) = (alpha.symbol("0"), alpha.symbol("1")) else {
        return Err(malformed());
    };
    match cell.symbols().split_first() {
        Some((&first, rest)) if first == one && rest.iter().all(|&s| s == zero) => Ok(rest.len()),
        _ => Err(malformed()),
    }
}

/// Chain balance over a finite cell window: for every chain length `m`, the
/// zero counts of all runs of `m` consecutive cells differ by at most one.
pub fn is_balanced_chains(cells: &[Word]) -> Result<bool> {
    let zeros = cells.iter().map(cell_zero_count).collect::<Result<Vec<_>>>()?;
    let mut prefix = vec![0usize; zeros.len() + 1];
    for (i, z) in zeros.iter().enumerate() {
        prefix[i + 1] = prefix[i] + z;
    }
    for m in 1..=zeros.len() {
        let counts = (0..=zeros.len() - m).map(|i| prefix[i + m] - prefix[i]);
        let (lo, hi) = counts.fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        if hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
