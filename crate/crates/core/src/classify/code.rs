//! Sliding block codes and conjugacy witnesses between eventually periodic
//! subshifts.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ep::{EpSeq, PeriodicSeq, Profile, Removal};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

/// A block map `Φ` on `(memory + anticipation + 1)`-blocks inducing
/// `φ(x)_i = Φ(x_{[i−memory, i+anticipation]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingBlockCode {
    memory: usize,
    anticipation: usize,
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    table: BTreeMap<Vec<Symbol>, Symbol>,
}

impl SlidingBlockCode {
    pub fn new(
        memory: usize,
        anticipation: usize,
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        table: BTreeMap<Vec<Symbol>, Symbol>,
    ) -> Result<Self> {
        let width = memory + anticipation + 1;
        for (block, out) in &table {
            if block.len() != width {
                return Err(Error::Parse(format!(
                    "block of length {} in a code of width {width}",
                    block.len()
                )));
            }
            if let Some(bad) = block.iter().find(|s| !source.contains(**s)) {
                return Err(Error::InvalidSymbol(format!("#{}", bad.0)));
            }
            if !target.contains(*out) {
                return Err(Error::InvalidSymbol(format!("#{}", out.0)));
            }
        }
        Ok(SlidingBlockCode {
            memory,
            anticipation,
            source,
            target,
            table,
        })
    }

    /// The 1-block identity on the given symbols.
    pub fn identity(alphabet: Arc<Alphabet>, symbols: impl IntoIterator<Item = Symbol>) -> Self {
        SlidingBlockCode {
            memory: 0,
            anticipation: 0,
            source: alphabet.clone(),
            target: alphabet,
            table: symbols.into_iter().map(|s| (vec![s], s)).collect(),
        }
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn width(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn table(&self) -> &BTreeMap<Vec<Symbol>, Symbol> {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut BTreeMap<Vec<Symbol>, Symbol> {
        &mut self.table
    }

    pub fn lookup(&self, block: &[Symbol]) -> Result<Symbol> {
        self.table.get(block).copied().ok_or_else(|| {
            Error::MissingBlock(Word::from_parts_unchecked(self.source.clone(), block.to_vec()).to_string())
        })
    }

    fn image_at(&self, x: &EpSeq, i: i64) -> Result<Symbol> {
        let block: Vec<Symbol> = (i - self.memory as i64..=i + self.anticipation as i64)
            .map(|k| x.symbol_at(k))
            .collect();
        self.lookup(&block)
    }
}

/// A code together with a candidate inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePair {
    pub forward: SlidingBlockCode,
    pub inverse: SlidingBlockCode,
}

/// `φ(x)` as an exact eventually periodic sequence.
pub fn apply_code(code: &SlidingBlockCode, x: &EpSeq) -> Result<EpSeq> {
    if x.alphabet() != code.source() {
        return Err(Error::IncompatibleAlphabets);
    }
    let n = x.least_period() as i64;
    let start = x.offset();
    let end = start + x.anomaly().len() as i64;
    // φ(x)_i only sees the left tail for i < lo and the right tail for i >= hi.
    let lo = start - code.anticipation as i64;
    let hi = (end + code.memory as i64).max(lo);
    let image = |range: std::ops::Range<i64>| range.map(|i| code.image_at(x, i)).collect::<Result<Vec<_>>>();
    let profile = Profile {
        alphabet: code.target.clone(),
        left: image(lo - n..lo)?,
        lo,
        middle: image(lo..hi)?,
        right: image(hi..hi + n)?,
    };
    match profile.resolve() {
        Some(Removal::Eventually(y)) => Ok(y),
        Some(Removal::Periodic(_)) => Err(Error::DegenerateImage),
        None => Err(Error::InternalMismatch(
            "image tails are not shifts of one periodic sequence".into(),
        )),
    }
}

/// `φ(p)` for a periodic point.
pub fn apply_code_periodic(code: &SlidingBlockCode, p: &PeriodicSeq) -> Result<PeriodicSeq> {
    if p.alphabet() != code.source() {
        return Err(Error::IncompatibleAlphabets);
    }
    let symbols = (0..p.least_period() as i64)
        .map(|i| {
            let block: Vec<Symbol> = (i - code.memory as i64..=i + code.anticipation as i64)
                .map(|k| p.value_at(k))
                .collect();
            code.lookup(&block)
        })
        .collect::<Result<Vec<_>>>()?;
    PeriodicSeq::new(Word::from_parts_unchecked(code.target.clone(), symbols), 0)
}

/// The subshifts of `x` and `y` are conjugate iff they share the least
/// period `N` and their anomaly sizes agree mod `N`.
pub fn conjugate_ep(x: &EpSeq, y: &EpSeq) -> bool {
    let n = x.least_period();
    n == y.least_period() && x.anomaly_size() % n == y.anomaly_size() % n
}

/// Pads the anomaly of a canonical sequence with whole period words.
fn pad_anomaly(c: &EpSeq, len: usize) -> EpSeq {
    let n = c.least_period();
    let extra = (len - c.anomaly().len()) / n;
    let anomaly = c.anomaly().concat(&c.period().power(extra)).expect("same alphabet");
    EpSeq::from_raw(c.period().clone(), anomaly, 0)
}

/// Reads off `Φ(src_{[l−k, l+k]}) = dst_l`, growing `k` by `N` on conflicts.
fn aligned_code(src: &EpSeq, dst: &EpSeq, k0: usize, cap: usize) -> Result<SlidingBlockCode> {
    let n = src.least_period();
    let a = src.anomaly().len() as i64;
    let mut k = k0;
    'radius: while k <= cap {
        let ki = k as i64;
        let mut table = BTreeMap::new();
        for l in -ki - n as i64 - 1..a + ki + n as i64 + 1 {
            let block: Vec<Symbol> = (l - ki..=l + ki).map(|i| src.symbol_at(i)).collect();
            let out = dst.symbol_at(l);
            if *table.entry(block).or_insert(out) != out {
                k += n;
                continue 'radius;
            }
        }
        return Ok(SlidingBlockCode {
            memory: k,
            anticipation: k,
            source: src.alphabet().clone(),
            target: dst.alphabet().clone(),
            table,
        });
    }
    Err(Error::WindowExhausted(cap))
}

/// Constructs a conjugacy between the subshifts of `x` and `y` and its
/// inverse, by aligning minimal anomalies padded to a common length.
pub fn conjugacy_witness(x: &EpSeq, y: &EpSeq) -> Result<CodePair> {
    let (ax, ay) = (x.anomaly_size(), y.anomaly_size());
    if !conjugate_ep(x, y) {
        return Err(Error::NotConjugate {
            n_x: x.least_period(),
            n_y: y.least_period(),
            a_x: ax,
            a_y: ay,
        });
    }
    let (cx, cy) = (x.canonical(), y.canonical());
    if x.alphabet() == y.alphabet() && cx == cy {
        let used = x.enumerate_blocks(1)?.into_iter().map(|w| w.get(0));
        let id = SlidingBlockCode::identity(x.alphabet().clone(), used);
        return Ok(CodePair {
            forward: id.clone(),
            inverse: id,
        });
    }
    let n = x.least_period();
    let len = ax.max(ay);
    let (px, py) = (pad_anomaly(&cx, len), pad_anomaly(&cy, len));
    let cap = ax + ay + 4 * n;
    Ok(CodePair {
        forward: aligned_code(&px, &py, len, cap)?,
        inverse: aligned_code(&py, &px, len, cap)?,
    })
}

/// Checks that `pair` is a conjugacy from the subshift of `x` onto that of
/// `y`: the forward code maps `x` into the orbit of `y`, the inverse maps `y`
/// into the orbit of `x`, and both composites act as a power of the shift on
/// the generating sequences and on their periodic points.
pub fn verify_conjugacy(x: &EpSeq, y: &EpSeq, pair: &CodePair) -> std::result::Result<(), String> {
    let (fwd, inv) = (&pair.forward, &pair.inverse);
    if fwd.source() != x.alphabet() || fwd.target() != y.alphabet() {
        return Err("forward code alphabets do not match the sequences".into());
    }
    if inv.source() != y.alphabet() || inv.target() != x.alphabet() {
        return Err("inverse code alphabets do not match the sequences".into());
    }
    let apply = |c: &SlidingBlockCode, s: &EpSeq, what: &str| apply_code(c, s).map_err(|e| format!("{what}: {e}"));
    let fx = apply(fwd, x, "forward(x)")?;
    if fx.canonical() != y.canonical() {
        return Err(format!("forward(x) = {fx} is not similar to y = {y}"));
    }
    let gy = apply(inv, y, "inverse(y)")?;
    if gy.canonical() != x.canonical() {
        return Err(format!("inverse(y) = {gy} is not similar to x = {x}"));
    }
    composite_is_shift(x, fwd, inv).map_err(|e| format!("inverse∘forward: {e}"))?;
    composite_is_shift(y, inv, fwd).map_err(|e| format!("forward∘inverse: {e}"))?;
    Ok(())
}

fn composite_is_shift(
    x: &EpSeq,
    first: &SlidingBlockCode,
    second: &SlidingBlockCode,
) -> std::result::Result<(), String> {
    let back = apply_code(first, x)
        .and_then(|y| apply_code(second, &y))
        .map_err(|e| e.to_string())?;
    let s = x
        .shift_to(&back)
        .ok_or_else(|| format!("{back} is not a shift of {x}"))?;
    let p = x.remove_anomaly();
    let back_p = apply_code_periodic(first, &p)
        .and_then(|q| apply_code_periodic(second, &q))
        .map_err(|e| e.to_string())?;
    if back_p != p.shift(s) {
        return Err(format!("periodic point is not shifted by {s}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ep::make_ep;
    use crate::sturmian::{skew_sturmian, symbol_reverse, Frequency, SturmianSpec, SturmianType};

    fn ep(w: &str, v: &str) -> EpSeq {
        make_ep(&Word::binary(w).unwrap(), &Word::binary(v).unwrap()).unwrap()
    }

    fn skew(q: u64, p: u64, t: SturmianType) -> EpSeq {
        skew_sturmian(&SturmianSpec::new(Frequency::rational(q, p).unwrap(), t, 0).unwrap()).unwrap()
    }

    fn swap_code() -> SlidingBlockCode {
        let a = Alphabet::binary();
        let table = [(vec![Symbol(0)], Symbol(1)), (vec![Symbol(1)], Symbol(0))].into();
        SlidingBlockCode::new(0, 0, a.clone(), a, table).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        let x = skew(1, 2, SturmianType::S);
        assert!(conjugate_ep(&x, &x));
        assert!(!conjugate_ep(&x, &skew(2, 1, SturmianType::S)));
        assert!(conjugate_ep(&x, &skew(2, 1, SturmianType::SPrime)));
    }

    #[test]
    fn identity_witness_for_equal_sequences() {
        let x = ep("110", "0");
        let pair = conjugacy_witness(&x, &x.shift(3)).unwrap();
        assert_eq!(pair.forward.width(), 1);
        assert_eq!(pair.forward, pair.inverse);
        verify_conjugacy(&x, &x.shift(3), &pair).unwrap();
    }

    #[test]
    fn witness_between_reciprocal_types() {
        let x = skew(1, 1, SturmianType::S);
        let y = skew(1, 1, SturmianType::SPrime);
        let pair = conjugacy_witness(&x, &y).unwrap();
        verify_conjugacy(&x, &y, &pair).unwrap();
        let swap = CodePair {
            forward: swap_code(),
            inverse: swap_code(),
        };
        verify_conjugacy(&x, &y, &swap).unwrap();
    }

    #[test]
    fn witness_across_alphabets() {
        let x = ep("0", "11");
        let ab = Alphabet::from_chars("ab").unwrap();
        let y = make_ep(&Word::parse(ab.clone(), "b").unwrap(), &Word::parse(ab, "aa").unwrap()).unwrap();
        let pair = conjugacy_witness(&x, &y).unwrap();
        verify_conjugacy(&x, &y, &pair).unwrap();
    }

    #[test]
    fn not_conjugate_is_reported() {
        let err = conjugacy_witness(&ep("0", "1"), &ep("01", "1")).unwrap_err();
        assert!(matches!(err, Error::NotConjugate { .. }));
    }

    #[test]
    fn apply_examples() {
        let x = skew(2, 5, SturmianType::S);
        let id = SlidingBlockCode::identity(x.alphabet().clone(), x.alphabet().symbols());
        assert_eq!(apply_code(&id, &x).unwrap(), x);
        assert_eq!(apply_code(&swap_code(), &x).unwrap(), symbol_reverse(&x).unwrap());

        let a = Alphabet::binary();
        let table = a
            .symbols()
            .flat_map(|s| a.symbols().map(move |t| (vec![s, t], t)))
            .collect();
        let shift = SlidingBlockCode::new(0, 1, a.clone(), a, table).unwrap();
        let y = apply_code(&shift, &x).unwrap();
        assert!(y.same_sequence(&x.shift(1)));
    }

    #[test]
    fn apply_errors() {
        let x = ep("0", "1");
        let a = Alphabet::binary();
        let partial = SlidingBlockCode::new(0, 0, a.clone(), a.clone(), [(vec![Symbol(0)], Symbol(0))].into()).unwrap();
        assert!(matches!(apply_code(&partial, &x), Err(Error::MissingBlock(_))));
        let constant = SlidingBlockCode::new(
            0,
            0,
            a.clone(),
            a,
            [(vec![Symbol(0)], Symbol(0)), (vec![Symbol(1)], Symbol(0))].into(),
        )
        .unwrap();
        assert_eq!(apply_code(&constant, &x), Err(Error::DegenerateImage));
    }

    #[test]
    fn tampered_inverse_fails_verification() {
        let x = ep("01", "1");
        let y = ep("01", "0");
        let mut pair = conjugacy_witness(&x, &y).unwrap();
        verify_conjugacy(&x, &y, &pair).unwrap();
        let (block, out) = pair
            .inverse
            .table()
            .iter()
            .next()
            .map(|(b, o)| (b.clone(), *o))
            .unwrap();
        let flipped = if out == Symbol(0) { Symbol(1) } else { Symbol(0) };
        pair.inverse.table_mut().insert(block, flipped);
        assert!(verify_conjugacy(&x, &y, &pair).is_err());
    }

    #[test]
    fn fixed_point_tails_are_all_conjugate() {
        let x = ep("0", "1");
        let y = ep("0", "11");
        assert!(conjugate_ep(&x, &y));
        let pair = conjugacy_witness(&x, &y).unwrap();
        verify_conjugacy(&x, &y, &pair).unwrap();

        // A 1-block code cannot separate the two 1s of y: it is not injective.
        let a = Alphabet::binary();
        let id = SlidingBlockCode::identity(a.clone(), a.symbols());
        let bogus = CodePair {
            forward: id.clone(),
            inverse: id,
        };
        assert!(verify_conjugacy(&x, &y, &bogus).is_err());
    }
}
