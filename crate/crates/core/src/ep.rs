//! Exact finite representations of periodic and eventually periodic
//! bi-infinite sequences.
//!
//! An [`EpSeq`] stores a primitive period word `w` (length `N`), an anomaly
//! word `v` and the index `offset` where the anomaly starts:
//!
//! ```text
//! x_k = w[(k - offset) mod N]            k < offset
//! x_k = v[k - offset]                    offset <= k < offset + |v|
//! x_k = w[(k - offset - |v|) mod N]      k >= offset + |v|
//! ```
//!
//! so removing the anomaly always leaves the periodic sequence whose left
//! tail is the left tail of `x`. Constructors reject the degenerate case
//! `v = w^j`, in which `x` itself is periodic.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

/// A periodic bi-infinite sequence: `y_k = period[(k + phase) mod N]`.
///
/// Equality is pointwise: two values are equal when they describe the same
/// sequence, even if their period words are different rotations.
#[derive(Debug, Clone)]
pub struct PeriodicSeq {
    period: Word,
    phase: i64,
}

impl PeriodicSeq {
    /// Builds the sequence, reducing `word` to its primitive root.
    pub fn new(word: Word, phase: i64) -> Result<Self> {
        let (root, _) = word.primitive_root()?;
        let phase = phase.rem_euclid(root.len() as i64);
        Ok(PeriodicSeq { period: root, phase })
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn phase(&self) -> i64 {
        self.phase
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.period.alphabet()
    }

    pub fn least_period(&self) -> usize {
        self.period.len()
    }

    pub fn value_at(&self, k: i64) -> Symbol {
        let n = self.period.len() as i64;
        self.period.get((k + self.phase).rem_euclid(n) as usize)
    }

    /// `σ^k` of this sequence.
    pub fn shift(&self, k: i64) -> PeriodicSeq {
        PeriodicSeq {
            period: self.period.clone(),
            phase: (self.phase + k).rem_euclid(self.period.len() as i64),
        }
    }

    pub fn window(&self, i: i64, j: i64) -> Result<Word> {
        if i > j {
            return Err(Error::InvalidRange(i, j));
        }
        let symbols = (i..=j).map(|k| self.value_at(k)).collect();
        Ok(Word::from_parts_unchecked(self.alphabet().clone(), symbols))
    }

    /// Whether some shift of `self` equals `other`.
    pub fn similar(&self, other: &PeriodicSeq) -> bool {
        self.alphabet() == other.alphabet()
            && self.least_period() == other.least_period()
            && (0..self.least_period() as i64).any(|k| self.shift(k) == *other)
    }
}

impl PartialEq for PeriodicSeq {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet() == other.alphabet()
            && self.least_period() == other.least_period()
            && (0..self.least_period() as i64).all(|k| self.value_at(k) == other.value_at(k))
    }
}

impl Eq for PeriodicSeq {}

/// The half-open index range `[start, start + length)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnomalyWindow {
    pub start: i64,
    pub length: usize,
}

impl AnomalyWindow {
    pub fn new(start: i64, length: usize) -> Self {
        AnomalyWindow { start, length }
    }

    pub fn end(&self) -> i64 {
        self.start + self.length as i64
    }
}

/// Outcome of deleting a window from an eventually periodic sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Removal {
    Periodic(PeriodicSeq),
    Eventually(EpSeq),
}

impl Removal {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Removal::Periodic(_))
    }

    pub fn into_periodic(self) -> Option<PeriodicSeq> {
        match self {
            Removal::Periodic(p) => Some(p),
            Removal::Eventually(_) => None,
        }
    }
}

/// An eventually periodic bi-infinite sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSeq {
    period: Word,
    anomaly: Word,
    offset: i64,
}

/// Builds the anchored sequence `⋯ w w v w w ⋯` with the anomaly at index 0.
pub fn make_ep(w: &Word, v: &Word) -> Result<EpSeq> {
    EpSeq::with_offset(w, v, 0)
}

impl EpSeq {
    pub fn new(w: &Word, v: &Word) -> Result<Self> {
        make_ep(w, v)
    }

    /// Like [`make_ep`] with the anomaly starting at `offset`.
    pub fn with_offset(w: &Word, v: &Word, offset: i64) -> Result<Self> {
        if w.is_empty() || v.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !w.same_alphabet(v) {
            return Err(Error::IncompatibleAlphabets);
        }
        let (root, _) = w.primitive_root()?;
        let v = Word::from_parts_unchecked(root.alphabet().clone(), v.symbols().to_vec());
        if is_power_of(&v, &root) {
            return Err(Error::DegeneratePeriodic);
        }
        Ok(EpSeq {
            period: root,
            anomaly: v,
            offset,
        })
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn anomaly(&self) -> &Word {
        &self.anomaly
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.period.alphabet()
    }

    fn n(&self) -> i64 {
        self.period.len() as i64
    }

    fn v_len(&self) -> i64 {
        self.anomaly.len() as i64
    }

    /// The stored anomaly as a window.
    pub fn stored_window(&self) -> AnomalyWindow {
        AnomalyWindow::new(self.offset, self.anomaly.len())
    }

    /// Least period of the periodic sequence left after removing an anomaly.
    pub fn least_period(&self) -> usize {
        self.period.len()
    }

    pub fn symbol_at(&self, k: i64) -> Symbol {
        let rel = k - self.offset;
        if rel < 0 {
            self.period.get(rel.rem_euclid(self.n()) as usize)
        } else if rel < self.v_len() {
            self.anomaly.get(rel as usize)
        } else {
            self.period.get((rel - self.v_len()).rem_euclid(self.n()) as usize)
        }
    }

    /// The word `x_i ⋯ x_j` (both ends inclusive).
    pub fn window(&self, i: i64, j: i64) -> Result<Word> {
        if i > j {
            return Err(Error::InvalidRange(i, j));
        }
        Ok(self.window_unchecked(i, j + 1))
    }

    fn window_unchecked(&self, lo: i64, hi: i64) -> Word {
        let symbols = (lo..hi).map(|k| self.symbol_at(k)).collect();
        Word::from_parts_unchecked(self.alphabet().clone(), symbols)
    }

    /// `σ^k(x)`, i.e. the sequence `i ↦ x_{i+k}`.
    pub fn shift(&self, k: i64) -> EpSeq {
        EpSeq {
            period: self.period.clone(),
            anomaly: self.anomaly.clone(),
            offset: self.offset - k,
        }
    }

    /// The left tail extended periodically to all of ℤ.
    fn left_extension(&self, k: i64) -> Symbol {
        self.period.get((k - self.offset).rem_euclid(self.n()) as usize)
    }

    /// Deletes `x_{[start, start+length)}` and classifies what is left.
    pub fn remove_window(&self, win: AnomalyWindow) -> Result<Removal> {
        if win.length == 0 {
            return Err(Error::InvalidRange(win.start, win.start - 1));
        }
        let (o, l, len, s) = (self.offset, self.v_len(), win.length as i64, win.start);
        let lo = s.min(o);
        let hi = s.max(o + l - len).max(lo);
        let removed = |k: i64| {
            if k < s {
                self.symbol_at(k)
            } else {
                self.symbol_at(k + len)
            }
        };
        let profile = Profile {
            alphabet: self.alphabet().clone(),
            left: self.period.rotate(lo - o)?.into_symbols(),
            lo,
            middle: (lo..hi).map(removed).collect(),
            right: self.period.rotate(hi + len - o - l)?.into_symbols(),
        };
        Ok(profile
            .resolve()
            .expect("both tails of a removal come from the same periodic sequence"))
    }

    /// Fast path for `remove_window(win).is_periodic()`.
    pub(crate) fn removal_is_periodic(&self, win: AnomalyWindow) -> bool {
        let (o, l, len, s) = (self.offset, self.v_len(), win.length as i64, win.start);
        if len <= 0 || (len - l).rem_euclid(self.n()) != 0 {
            return false;
        }
        let lo = s.min(o);
        let hi = s.max(o + l - len).max(lo);
        (lo..hi).all(|k| {
            let y = if k < s {
                self.symbol_at(k)
            } else {
                self.symbol_at(k + len)
            };
            y == self.left_extension(k)
        })
    }

    fn windows_of_length(&self, length: usize) -> impl Iterator<Item = AnomalyWindow> + '_ {
        let (o, l, n) = (self.offset, self.v_len(), self.n());
        let len = length as i64;
        (o - len - 2 * n..=o + l + 2 * n)
            .map(move |s| AnomalyWindow::new(s, length))
            .filter(move |w| self.removal_is_periodic(*w))
    }

    fn candidate_lengths(&self) -> impl Iterator<Item = usize> {
        let (l, n) = (self.anomaly.len(), self.period.len());
        (1..=l).filter(move |len| (l - len) % n == 0)
    }

    /// All anomaly windows with length at most `|v|` and congruent to it mod
    /// `N`, starting within `2N` of the stored anomaly. Sorted by length,
    /// then start.
    pub fn anomaly_windows(&self) -> Vec<AnomalyWindow> {
        self.candidate_lengths()
            .flat_map(|len| self.windows_of_length(len))
            .collect()
    }

    /// Leftmost anomaly window of minimal length.
    pub fn minimal_window(&self) -> AnomalyWindow {
        self.candidate_lengths()
            .find_map(|len| self.windows_of_length(len).next())
            .expect("the stored anomaly is always a window")
    }

    /// Minimum length of an anomaly word.
    pub fn anomaly_size(&self) -> usize {
        self.minimal_window().length
    }

    /// The periodic sequence obtained by deleting any anomaly.
    pub fn remove_anomaly(&self) -> PeriodicSeq {
        let phase = (-self.offset).rem_euclid(self.n());
        PeriodicSeq {
            period: self.period.clone(),
            phase,
        }
    }

    /// Same sequence re-anchored at its leftmost minimal anomaly window.
    pub fn normal_form(&self) -> EpSeq {
        let win = self.minimal_window();
        let s = win.start;
        EpSeq {
            period: self.window_unchecked(s - self.n(), s),
            anomaly: self.window_unchecked(s, win.end()),
            offset: s,
        }
    }

    /// Representative of the similarity class: the normal form shifted so the
    /// minimal anomaly starts at index 0.
    pub fn canonical(&self) -> EpSeq {
        let mut nf = self.normal_form();
        nf.offset = 0;
        nf
    }

    /// True iff `σ^k(self) = other` for some `k`.
    pub fn similar(&self, other: &EpSeq) -> Result<bool> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::IncompatibleAlphabets);
        }
        Ok(self.canonical() == other.canonical())
    }

    /// Whether the two values describe the same bi-infinite sequence.
    pub fn same_sequence(&self, other: &EpSeq) -> bool {
        self.alphabet() == other.alphabet() && self.normal_form() == other.normal_form()
    }

    /// If `other = σ^k(self)`, returns `k`.
    pub fn shift_to(&self, other: &EpSeq) -> Option<i64> {
        if self.alphabet() != other.alphabet() {
            return None;
        }
        let (a, b) = (self.normal_form(), other.normal_form());
        (a.period == b.period && a.anomaly == b.anomaly).then_some(a.offset - b.offset)
    }

    /// The allowed words of length `n` in the subshift generated by `x`.
    pub fn enumerate_blocks(&self, n: usize) -> Result<BTreeSet<Word>> {
        if n == 0 {
            return Err(Error::InvalidRange(0, -1));
        }
        let len = n as i64;
        let (o, l, p) = (self.offset, self.v_len(), self.n());
        Ok((o - len - p..=o + l + p)
            .map(|s| self.window_unchecked(s, s + len))
            .collect())
    }

    /// Human-readable window such as `…110 110 [1] 110 110…`.
    pub fn pretty(&self) -> String {
        format!(
            "\u{2026}{w} {w} [{v}] {w} {w}\u{2026}",
            w = self.period,
            v = self.anomaly
        )
    }

    pub(crate) fn from_raw(period: Word, anomaly: Word, offset: i64) -> EpSeq {
        debug_assert!(period.is_primitive().unwrap_or(false));
        debug_assert!(!is_power_of(&anomaly, &period));
        EpSeq {
            period,
            anomaly,
            offset,
        }
    }
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPSeq({}, {}", self.period, self.anomaly)?;
        if self.offset != 0 {
            write!(f, " @ {}", self.offset)?;
        }
        f.write_str(")")
    }
}

fn is_power_of(v: &Word, w: &Word) -> bool {
    let n = w.len();
    v.len().is_multiple_of(n) && v.symbols().iter().enumerate().all(|(i, s)| *s == w.get(i % n))
}

/// A sequence described by a periodic left tail, an explicit middle and a
/// periodic right tail:
///
/// ```text
/// y_k = left[(k - lo) mod |left|]      k < lo
/// y_k = middle[k - lo]                 lo <= k < lo + |middle|
/// y_k = right[(k - hi) mod |right|]    k >= hi = lo + |middle|
/// ```
pub(crate) struct Profile {
    pub alphabet: Arc<Alphabet>,
    pub left: Vec<Symbol>,
    pub lo: i64,
    pub middle: Vec<Symbol>,
    pub right: Vec<Symbol>,
}

impl Profile {
    /// Classifies the sequence exactly. Returns `None` when the two tails are
    /// not shifts of one periodic sequence.
    pub fn resolve(self) -> Option<Removal> {
        let word = |s: Vec<Symbol>| Word::from_parts_unchecked(self.alphabet.clone(), s);
        let (left, _) = word(self.left.clone()).primitive_root().ok()?;
        let (right, _) = word(self.right.clone()).primitive_root().ok()?;
        let n = left.len();
        if right.len() != n {
            return None;
        }
        let r = (0..n).find(|&r| (0..n).all(|i| left.get((i + r) % n) == right.get(i)))? as i64;
        let n_i = n as i64;
        let hi = self.lo + self.middle.len() as i64;
        let floor = hi.max(self.lo + 1);
        let target = (hi - r).rem_euclid(n_i);
        let end = floor + (target - floor).rem_euclid(n_i);

        let mut anomaly = self.middle;
        anomaly.extend((hi..end).map(|k| right.get((k - hi).rem_euclid(n_i) as usize)));
        let anomaly = word(anomaly);
        if is_power_of(&anomaly, &left) {
            let phase = (-self.lo).rem_euclid(n_i);
            Some(Removal::Periodic(PeriodicSeq { period: left, phase }))
        } else {
            Some(Removal::Eventually(EpSeq::from_raw(left, anomaly, self.lo)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Word {
        Word::binary(s).unwrap()
    }

    fn ep(w: &str, v: &str) -> EpSeq {
        make_ep(&b(w), &b(v)).unwrap()
    }

    fn per(w: &str, phase: i64) -> PeriodicSeq {
        PeriodicSeq::new(b(w), phase).unwrap()
    }

    #[test]
    fn make_ep_examples() {
        let x = ep("0", "11");
        assert_eq!(
            (x.period().to_string(), x.anomaly().to_string()),
            ("0".into(), "11".into())
        );
        let x = ep("0101", "1");
        assert_eq!(x.period().to_string(), "01");
        assert_eq!(x.anomaly().to_string(), "1");
        assert_eq!(make_ep(&b("0"), &b("00")), Err(Error::DegeneratePeriodic));
        assert_eq!(make_ep(&b("01"), &b("0101")), Err(Error::DegeneratePeriodic));
        assert_eq!(make_ep(&b(""), &b("1")), Err(Error::EmptyWord));
        assert_eq!(make_ep(&b("0"), &b("")), Err(Error::EmptyWord));
        let ab = Alphabet::from_chars("ab").unwrap();
        assert_eq!(
            make_ep(&b("0"), &Word::parse(ab, "a").unwrap()),
            Err(Error::IncompatibleAlphabets)
        );
    }

    #[test]
    fn symbol_and_window_examples() {
        let x = ep("110", "1");
        let label = |s: Symbol| x.alphabet().label(s).to_string();
        assert_eq!(label(x.symbol_at(-1)), "0");
        assert_eq!(label(x.symbol_at(0)), "1");
        assert_eq!(label(x.symbol_at(1)), "1");
        assert_eq!(ep("0", "11").window(-2, 3).unwrap().to_string(), "001100");
        assert_eq!(ep("10", "1").window(0, 0).unwrap().to_string(), "1");
        assert_eq!(x.window(-3, 0).unwrap().to_string(), "1101");
        assert_eq!(x.window(1, 0), Err(Error::InvalidRange(1, 0)));
    }

    #[test]
    fn shift_examples() {
        let x = ep("110", "10");
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(3).shift(-3), x);
        for k in -7..=7 {
            let y = x.shift(k);
            for i in -12..12 {
                assert_eq!(y.symbol_at(i), x.symbol_at(i + k));
            }
        }
    }

    #[test]
    fn remove_window_examples() {
        let r = ep("0", "01").remove_window(AnomalyWindow::new(1, 1)).unwrap();
        assert_eq!(r, Removal::Periodic(per("0", 0)));

        let r = ep("0", "11").remove_window(AnomalyWindow::new(0, 1)).unwrap();
        assert_eq!(r, Removal::Eventually(ep("0", "1")));

        let r = ep("110", "1").remove_window(AnomalyWindow::new(0, 1)).unwrap();
        assert_eq!(r, Removal::Periodic(per("110", 0)));

        let r = ep("0", "11").remove_window(AnomalyWindow::new(5, 2)).unwrap();
        let Removal::Eventually(y) = r else {
            panic!("expected non-periodic")
        };
        assert!(y.same_sequence(&ep("0", "11")));
    }

    #[test]
    fn removal_matches_pointwise_definition() {
        let x = ep("110", "0101");
        for s in -6..8 {
            for len in 1..6 {
                let r = x.remove_window(AnomalyWindow::new(s, len)).unwrap();
                let expect = |k: i64| {
                    if k < s {
                        x.symbol_at(k)
                    } else {
                        x.symbol_at(k + len as i64)
                    }
                };
                for k in -20..20 {
                    let got = match &r {
                        Removal::Periodic(p) => p.value_at(k),
                        Removal::Eventually(e) => e.symbol_at(k),
                    };
                    assert_eq!(got, expect(k), "window [{s},{}) index {k}", s + len as i64);
                }
                assert_eq!(r.is_periodic(), x.removal_is_periodic(AnomalyWindow::new(s, len)));
            }
        }
    }

    #[test]
    fn anomaly_window_examples() {
        let w = ep("0", "01").anomaly_windows();
        assert!(w.contains(&AnomalyWindow::new(1, 1)));
        assert!(w.contains(&AnomalyWindow::new(0, 2)));
        assert_eq!(ep("0", "11").anomaly_windows(), vec![AnomalyWindow::new(0, 2)]);
        assert!(ep("10", "1").anomaly_windows().contains(&AnomalyWindow::new(0, 1)));
    }

    #[test]
    fn anomaly_size_and_period_examples() {
        assert_eq!(ep("0", "11").anomaly_size(), 2);
        assert_eq!(ep("0", "01").anomaly_size(), 1);
        assert_eq!(ep("110", "1").anomaly_size(), 1);
        assert_eq!(ep("110", "1").least_period(), 3);
        assert_eq!(ep("01", "1").least_period(), 2);
        assert_eq!(ep("0101", "1").least_period(), 2);
    }

    #[test]
    fn remove_anomaly_examples() {
        assert_eq!(ep("0", "11").remove_anomaly(), per("0", 0));
        let p = ep("110", "1").remove_anomaly();
        assert_eq!(p, per("110", 0));
        let x = ep("0", "01");
        let a = x.remove_window(AnomalyWindow::new(1, 1)).unwrap();
        let c = x.remove_window(AnomalyWindow::new(0, 2)).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.into_periodic().unwrap(), x.remove_anomaly());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(ep("0", "01").canonical(), ep("0", "1"));
        let x = ep("110", "0110");
        let c = x.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(c.anomaly().len(), x.anomaly_size());
        for k in -5..=5 {
            assert_eq!(x.shift(k).canonical(), c);
        }
    }

    #[test]
    fn similar_examples() {
        let x = ep("110", "0");
        assert!(x.similar(&x.shift(7)).unwrap());
        assert!(!ep("0", "1").similar(&ep("1", "0")).unwrap());
        let ab = Alphabet::from_chars("ab").unwrap();
        let y = make_ep(&Word::parse(ab.clone(), "a").unwrap(), &Word::parse(ab, "b").unwrap()).unwrap();
        assert_eq!(x.similar(&y), Err(Error::IncompatibleAlphabets));
        assert_eq!(x.shift_to(&x.shift(4)), Some(4));
    }

    #[test]
    fn block_examples() {
        let words = |set: BTreeSet<Word>| set.into_iter().map(|w| w.to_string()).collect::<Vec<_>>();
        assert_eq!(words(ep("0", "1").enumerate_blocks(1).unwrap()), ["0", "1"]);
        assert_eq!(words(ep("0", "1").enumerate_blocks(2).unwrap()), ["00", "01", "10"]);
        assert_eq!(words(ep("10", "1").enumerate_blocks(2).unwrap()), ["01", "10", "11"]);
        assert!(ep("10", "1").enumerate_blocks(0).is_err());
    }

    #[test]
    fn periodic_equality_is_pointwise() {
        assert_eq!(per("110", 0), per("011", 1));
        assert_ne!(per("110", 0), per("110", 1));
        assert_eq!(per("0101", 1), per("10", 0));
        assert!(per("110", 0).similar(&per("110", 1)));
    }
}
