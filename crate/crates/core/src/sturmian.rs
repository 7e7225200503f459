//! Skew Sturmian sequences of rational frequency.
//!
//! A cell is the block `1 0^k`. For frequency `q/p` and lattice offset `m`
//! the cell `B_n` holds one zero per point of `G = {m + k·p/q : k ∈ ℤ}` in a
//! unit interval around `n`; the two types S and S′ differ only in which
//! interval ends are closed. All membership tests are done on the lattice
//! scaled by `q`, so no rational or floating point values appear.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bezout::restricted_bezout;
use crate::ep::{make_ep, EpSeq};
use crate::error::{Error, Result};
use crate::words::{cell_zero_count, Alphabet, Symbol, Word};

/// Limiting number of zeros per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Frequency {
    /// `q/p` in lowest terms, both positive.
    Rational {
        q: u64,
        p: u64,
    },
    Zero,
    Infinity,
}

impl Frequency {
    pub fn rational(q: u64, p: u64) -> Result<Self> {
        if q == 0 || p == 0 {
            return Err(Error::NonPositive);
        }
        if q.gcd(&p) != 1 {
            return Err(Error::NotCoprime(q, p));
        }
        Ok(Frequency::Rational { q, p })
    }

    pub fn inverse(self) -> Self {
        match self {
            Frequency::Rational { q, p } => Frequency::Rational { q: p, p: q },
            Frequency::Zero => Frequency::Infinity,
            Frequency::Infinity => Frequency::Zero,
        }
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frequency::Rational { q, p } => write!(f, "{q}/{p}"),
            Frequency::Zero => f.write_str("0"),
            Frequency::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Frequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Frequency::Zero),
            "inf" | "infinity" | "\u{221e}" => Ok(Frequency::Infinity),
            other => {
                let (q, p) = other
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("frequency {other:?}: expected q/p, 0 or inf")))?;
                let num = |t: &str| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("frequency {other:?}: {e}")))
                };
                Frequency::rational(num(q)?, num(p)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SturmianType {
    S,
    #[serde(rename = "Sprime")]
    SPrime,
}

impl SturmianType {
    pub fn opposite(self) -> Self {
        match self {
            SturmianType::S => SturmianType::SPrime,
            SturmianType::SPrime => SturmianType::S,
        }
    }
}

impl fmt::Display for SturmianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SturmianType::S => "S",
            SturmianType::SPrime => "Sprime",
        })
    }
}

impl FromStr for SturmianType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(SturmianType::S),
            "Sprime" | "S'" | "S\u{2032}" => Ok(SturmianType::SPrime),
            other => Err(Error::Parse(format!("type {other:?}: expected S or Sprime"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SturmianSpec {
    pub freq: Frequency,
    pub stype: SturmianType,
    pub m: i64,
}

impl SturmianSpec {
    pub fn new(freq: Frequency, stype: SturmianType, m: i64) -> Result<Self> {
        let spec = SturmianSpec { freq, stype, m };
        spec.validate()?;
        Ok(spec)
    }

    /// Zero frequency only exists for S′ and infinite frequency only for S.
    pub fn validate(&self) -> Result<()> {
        match (self.freq, self.stype) {
            (Frequency::Zero, SturmianType::S) => Err(Error::InvalidSpec("S(m,0) is not defined".into())),
            (Frequency::Infinity, SturmianType::SPrime) => {
                Err(Error::InvalidSpec("S\u{2032}(m,\u{221e}) is not defined".into()))
            }
            (Frequency::Rational { q, p }, _) => Frequency::rational(q, p).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// The spec with inverse frequency and opposite type.
    pub fn dual(&self) -> SturmianSpec {
        SturmianSpec {
            freq: self.freq.inverse(),
            stype: self.stype.opposite(),
            m: self.m,
        }
    }

    fn rational(&self) -> Result<(u64, u64)> {
        self.validate()?;
        match self.freq {
            Frequency::Rational { q, p } => Ok((q, p)),
            _ => Err(Error::InvalidSpec(format!(
                "{} frequency has no cell series",
                self.freq
            ))),
        }
    }
}

impl fmt::Display for SturmianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.stype, self.m, self.freq)
    }
}

/// Cells `B_n` for `n` in `[n_lo, n_lo + cells.len())`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSeries {
    pub n_lo: i64,
    pub cells: Vec<Word>,
}

impl CellSeries {
    pub fn n_hi(&self) -> i64 {
        self.n_lo + self.cells.len() as i64 - 1
    }

    pub fn cell(&self, n: i64) -> Option<&Word> {
        usize::try_from(n - self.n_lo).ok().and_then(|i| self.cells.get(i))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Clone, Copy)]
enum End {
    Open,
    Closed,
}

/// Number of integers `k` with `k·p` in the interval `lo .. hi` (ends as given).
fn multiples_between(p: i128, lo: i128, lo_end: End, hi: i128, hi_end: End) -> u64 {
    let lo = match lo_end {
        End::Closed => lo - 1,
        End::Open => lo,
    };
    let hi = match hi_end {
        End::Closed => hi,
        End::Open => hi - 1,
    };
    (hi.div_euclid(p) - lo.div_euclid(p)).max(0) as u64
}

/// Points of `G` in the interval `n .. n+1`, with `q·x = q·m + k·p`.
fn count_in_cell(q: u64, p: u64, m: i64, n: i64, lo_end: End, hi_end: End) -> u64 {
    let (q, p, m, n) = (q as i128, p as i128, m as i128, n as i128);
    multiples_between(p, n * q - m * q, lo_end, (n + 1) * q - m * q, hi_end)
}

/// Zeros in `B_n` for type S: `n < x <= n+1`, `m < x < m+1`, `n <= x < n+1`
/// according as `n < m`, `n = m`, `n > m`.
pub fn cell_zeros_s(spec: &SturmianSpec, n: i64) -> Result<u64> {
    if spec.stype != SturmianType::S {
        return Err(Error::InvalidSpec(format!("{spec} is not of type S")));
    }
    let (q, p) = spec.rational()?;
    let (lo, hi) = match n.cmp(&spec.m) {
        std::cmp::Ordering::Less => (End::Open, End::Closed),
        std::cmp::Ordering::Equal => (End::Open, End::Open),
        std::cmp::Ordering::Greater => (End::Closed, End::Open),
    };
    Ok(count_in_cell(q, p, spec.m, n, lo, hi))
}

/// Zeros in `B_n` for type S′: `n <= x < n+1`, `m <= x <= m+1`, `n < x <= n+1`
/// according as `n < m`, `n = m`, `n > m`.
pub fn cell_zeros_sprime(spec: &SturmianSpec, n: i64) -> Result<u64> {
    if spec.stype != SturmianType::SPrime {
        return Err(Error::InvalidSpec(format!("{spec} is not of type S\u{2032}")));
    }
    let (q, p) = spec.rational()?;
    let (lo, hi) = match n.cmp(&spec.m) {
        std::cmp::Ordering::Less => (End::Closed, End::Open),
        std::cmp::Ordering::Equal => (End::Closed, End::Closed),
        std::cmp::Ordering::Greater => (End::Open, End::Closed),
    };
    Ok(count_in_cell(q, p, spec.m, n, lo, hi))
}

pub fn cell_zeros(spec: &SturmianSpec, n: i64) -> Result<u64> {
    match spec.stype {
        SturmianType::S => cell_zeros_s(spec, n),
        SturmianType::SPrime => cell_zeros_sprime(spec, n),
    }
}

fn binary_symbols() -> (Symbol, Symbol) {
    let alpha = Alphabet::binary();
    (alpha.symbol("0").unwrap(), alpha.symbol("1").unwrap())
}

fn cell_word(zeros: u64) -> Word {
    let (zero, one) = binary_symbols();
    let mut symbols = vec![one];
    symbols.extend(std::iter::repeat_n(zero, zeros as usize));
    Word::from_parts_unchecked(Alphabet::binary(), symbols)
}

pub fn cell_series(spec: &SturmianSpec, n_lo: i64, n_hi: i64) -> Result<CellSeries> {
    if n_lo > n_hi {
        return Err(Error::InvalidRange(n_lo, n_hi));
    }
    let cells = (n_lo..=n_hi)
        .map(|n| cell_zeros(spec, n).map(cell_word))
        .collect::<Result<_>>()?;
    Ok(CellSeries { n_lo, cells })
}

pub fn expand_cells(cs: &CellSeries) -> Word {
    concat_cells(&cs.cells)
}

fn concat_cells(cells: &[Word]) -> Word {
    let symbols = cells.iter().flat_map(|c| c.symbols().iter().copied()).collect();
    Word::from_parts_unchecked(Alphabet::binary(), symbols)
}

/// Symbols written while the line `y = (p/q)·x + m` climbs from height `lo`
/// to just below height `hi`: `0` per vertical lattice line, `1` per
/// horizontal one. Where both are crossed at once (height `j`), type S writes
/// `01` if `j <= m` and `10` otherwise; type S′ does the reverse.
pub fn cutting_sequence(spec: &SturmianSpec, lo: i64, hi: i64) -> Result<Word> {
    if lo > hi {
        return Err(Error::InvalidRange(lo, hi));
    }
    let (q, p) = spec.rational()?;
    let (q, p, m) = (q as i128, p as i128, spec.m as i128);
    let (lo, hi) = (lo as i128, hi as i128);
    let (zero, one) = binary_symbols();

    // Abscissae scaled by p: column x = i sits at i·p, row y = j at (j − m)·q.
    let first_col = ((lo - m) * q).div_euclid(p) + i128::from(((lo - m) * q).rem_euclid(p) != 0);
    let last_col = ((hi - m) * q - 1).div_euclid(p);
    let mut cols = (first_col..=last_col).map(|i| i * p).peekable();
    let mut rows = (lo..hi).map(|j| (j, (j - m) * q)).peekable();

    let mut out = Vec::new();
    loop {
        match (cols.peek().copied(), rows.peek().copied()) {
            (Some(c), Some((j, r))) if c == r => {
                let below = j <= m;
                let zero_first = match spec.stype {
                    SturmianType::S => below,
                    SturmianType::SPrime => !below,
                };
                if zero_first {
                    out.extend([zero, one]);
                } else {
                    out.extend([one, zero]);
                }
                cols.next();
                rows.next();
            }
            (Some(c), Some((_, r))) if c < r => {
                out.push(zero);
                cols.next();
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                out.push(one);
                rows.next();
            }
            (Some(_), None) => {
                out.push(zero);
                cols.next();
            }
            (None, None) => break,
        }
    }
    Ok(Word::from_parts_unchecked(Alphabet::binary(), out))
}

/// Zero counts of every run of `n` consecutive cells, in order.
pub fn chain_zero_counts(cs: &CellSeries, n: usize) -> Result<Vec<usize>> {
    if n == 0 || n > cs.len() {
        return Err(Error::ChainLengthOutOfRange { n, cells: cs.len() });
    }
    let zeros = cs.cells.iter().map(cell_zero_count).collect::<Result<Vec<_>>>()?;
    Ok(zeros.windows(n).map(|w| w.iter().sum()).collect())
}

/// Exchanges `0` and `1` throughout the sequence.
pub fn symbol_reverse(x: &EpSeq) -> Result<EpSeq> {
    let alpha = x.alphabet();
    let (Some(zero), Some(one)) = (alpha.symbol("0"), alpha.symbol("1")) else {
        return Err(Error::WrongAlphabet);
    };
    if alpha.len() != 2 {
        return Err(Error::WrongAlphabet);
    }
    let flip = |w: &Word| {
        let symbols = w
            .symbols()
            .iter()
            .map(|&s| if s == zero { one } else { zero })
            .collect();
        Word::from_parts_unchecked(alpha.clone(), symbols)
    };
    EpSeq::with_offset(&flip(x.period()), &flip(x.anomaly()), x.offset())
}

/// The eventually periodic sequence generated by `spec`, with the cell `B_m`
/// starting at index 0.
///
/// Type S uses the closed form: the period word is `B_{m−p} ⋯ B_{m−1}` and the
/// anomaly is `B_m ⋯ B_{m+b−1}` where `(a, b)` are the restricted Bézout
/// coefficients of `(q, p)`. Type S′ reads the period word the same way and
/// locates where the right tail resumes it. Either way the result is checked
/// against a generated window of cells.
pub fn skew_sturmian(spec: &SturmianSpec) -> Result<EpSeq> {
    spec.validate()?;
    let (q, p) = match spec.freq {
        Frequency::Infinity => return make_ep(&Word::binary("0")?, &Word::binary("1")?),
        Frequency::Zero => return make_ep(&Word::binary("1")?, &Word::binary("0")?),
        Frequency::Rational { q, p } => (q, p),
    };
    let bp = restricted_bezout(q, p)?;
    let (pi, bi) = (p as i64, bp.b as i64);
    let pad = 2 * (pi + 1) + bi.max(pi);
    let m = spec.m;
    let cs = cell_series(spec, m - pad, m + pad)?;
    let cells = |from: i64, to: i64| concat_cells(&cs.cells[(from - cs.n_lo) as usize..(to - cs.n_lo) as usize]);

    let generated = expand_cells(&cs);
    let origin = cells(m - pad, m).len();
    let period = cells(m - pi, m);
    let mismatch = |what: String| Error::InternalMismatch(format!("{spec}: {what}"));

    let x = match spec.stype {
        SturmianType::S => make_ep(&period, &cells(m, m + bi)).map_err(|e| mismatch(e.to_string()))?,
        SturmianType::SPrime => {
            let g = generated.symbols();
            let n = period.len();
            let resumes = |e: usize| (e..g.len()).all(|i| g[i] == period.get((i - e) % n));
            let end = (origin + 1..g.len().saturating_sub(2 * n))
                .find(|&e| resumes(e))
                .ok_or_else(|| mismatch("right tail never resumes the period".into()))?;
            let anomaly = Word::from_parts_unchecked(Alphabet::binary(), g[origin..end].to_vec());
            make_ep(&period, &anomaly).map_err(|e| mismatch(e.to_string()))?
        }
    };

    for (i, s) in generated.symbols().iter().enumerate() {
        if x.symbol_at(i as i64 - origin as i64) != *s {
            return Err(mismatch(format!("differs from generated cells at index {i}")));
        }
    }
    if spec.stype == SturmianType::SPrime {
        let expected = (p + q - bp.sum()) as usize;
        let size = x.anomaly_size();
        if size != expected {
            return Err(mismatch(format!("anomaly size {size}, expected {expected}")));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u64, p: u64, stype: SturmianType, m: i64) -> SturmianSpec {
        SturmianSpec::new(Frequency::rational(q, p).unwrap(), stype, m).unwrap()
    }

    fn strings(cs: &CellSeries) -> Vec<String> {
        cs.cells.iter().map(|c| c.to_string()).collect()
    }

    use SturmianType::{SPrime, S};

    #[test]
    fn cell_zero_examples() {
        assert_eq!(cell_zeros_s(&spec(1, 1, S, 0), 0).unwrap(), 0);
        assert_eq!(cell_zeros_s(&spec(1, 1, S, 0), -1).unwrap(), 1);
        assert_eq!(cell_zeros_s(&spec(1, 2, S, 0), -2).unwrap(), 0);
        assert_eq!(cell_zeros_sprime(&spec(1, 1, SPrime, 0), 0).unwrap(), 2);
        assert_eq!(cell_zeros_sprime(&spec(1, 1, SPrime, 0), -1).unwrap(), 1);
        assert_eq!(cell_zeros_sprime(&spec(1, 1, SPrime, 0), 1).unwrap(), 1);
        assert!(cell_zeros_s(&spec(1, 1, SPrime, 0), 0).is_err());
        assert!(cell_zeros_sprime(&spec(1, 1, S, 0), 0).is_err());
    }

    #[test]
    fn cell_series_examples() {
        assert_eq!(
            strings(&cell_series(&spec(1, 1, S, 0), -2, 2).unwrap()),
            ["10", "10", "1", "10", "10"]
        );
        assert_eq!(
            strings(&cell_series(&spec(1, 2, S, 0), -4, 2).unwrap()),
            ["1", "10", "1", "10", "1", "1", "10"]
        );
        assert_eq!(
            strings(&cell_series(&spec(1, 1, SPrime, 0), -1, 1).unwrap()),
            ["10", "100", "10"]
        );
        assert!(cell_series(&spec(1, 1, S, 0), 1, 0).is_err());
    }

    #[test]
    fn expand_examples() {
        let cs = |v: &[&str]| CellSeries {
            n_lo: 0,
            cells: v.iter().map(|s| Word::binary(s).unwrap()).collect(),
        };
        assert_eq!(expand_cells(&cs(&["10", "1", "10"])).to_string(), "10110");
        assert_eq!(expand_cells(&cs(&[])).to_string(), "");
        assert_eq!(expand_cells(&cs(&["100"])).to_string(), "100");
    }

    #[test]
    fn cutting_sequence_examples() {
        // Every crossing of y = x is a lattice point: 01 at or below 0, 10 above.
        let c = cutting_sequence(&spec(1, 1, S, 0), -2, 3).unwrap();
        assert_eq!(c.to_string(), "0101011010");
        let cells = expand_cells(&cell_series(&spec(1, 1, S, 0), -2, 2).unwrap()).to_string();
        assert!(format!("0{c}").contains(&cells), "{c} vs {cells}");

        let c = cutting_sequence(&spec(1, 1, SPrime, 0), -2, 3).unwrap().to_string();
        assert!(c.contains("100"), "{c}");
        assert_eq!(c, "1010100101");

        let c = cutting_sequence(&spec(2, 5, S, 0), -70, 70).unwrap();
        assert_eq!(c.count_label("0") * 5, c.count_label("1") * 2);
    }

    #[test]
    fn skew_examples() {
        let x = skew_sturmian(&spec(1, 1, S, 0)).unwrap();
        assert_eq!((x.least_period(), x.anomaly_size()), (2, 1));
        assert_eq!(x.anomaly().to_string(), "1");

        let x = skew_sturmian(&spec(1, 2, S, 0)).unwrap();
        assert_eq!(x.least_period(), 3);
        assert_eq!(x.anomaly().to_string(), "1");
        assert_eq!(x.period().count_label("1"), 2);

        let inf = SturmianSpec::new(Frequency::Infinity, S, 4).unwrap();
        assert_eq!(
            skew_sturmian(&inf).unwrap(),
            make_ep(&Word::binary("0").unwrap(), &Word::binary("1").unwrap()).unwrap()
        );
        let zero = SturmianSpec::new(Frequency::Zero, SPrime, 0).unwrap();
        assert_eq!(skew_sturmian(&zero).unwrap().period().to_string(), "1");
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            SturmianSpec::new(Frequency::Zero, S, 0),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            SturmianSpec::new(Frequency::Infinity, SPrime, 0),
            Err(Error::InvalidSpec(_))
        ));
        assert_eq!(Frequency::rational(2, 4), Err(Error::NotCoprime(2, 4)));
        let bad = SturmianSpec {
            freq: Frequency::Rational { q: 2, p: 4 },
            stype: S,
            m: 0,
        };
        assert!(skew_sturmian(&bad).is_err());
        let inf = SturmianSpec::new(Frequency::Infinity, S, 0).unwrap();
        assert!(cell_series(&inf, 0, 1).is_err());
    }

    #[test]
    fn reverse_examples() {
        let x = make_ep(&Word::binary("0").unwrap(), &Word::binary("1").unwrap()).unwrap();
        let y = symbol_reverse(&x).unwrap();
        assert_eq!(
            (y.period().to_string(), y.anomaly().to_string()),
            ("1".into(), "0".into())
        );
        let z = skew_sturmian(&spec(2, 5, S, 0)).unwrap();
        assert_eq!(symbol_reverse(&symbol_reverse(&z).unwrap()).unwrap(), z);
        let rev = symbol_reverse(&z).unwrap();
        assert!(rev.similar(&skew_sturmian(&spec(5, 2, SPrime, 0)).unwrap()).unwrap());

        let abc = Alphabet::from_chars("01a").unwrap();
        let w = make_ep(&Word::parse(abc.clone(), "0").unwrap(), &Word::parse(abc, "a").unwrap()).unwrap();
        assert_eq!(symbol_reverse(&w), Err(Error::WrongAlphabet));
    }

    #[test]
    fn chain_examples() {
        let cs = cell_series(&spec(1, 1, S, 0), -3, 3).unwrap();
        assert_eq!(chain_zero_counts(&cs, 1).unwrap(), [1, 1, 1, 0, 1, 1, 1]);
        assert_eq!(chain_zero_counts(&cs, 7).unwrap().len(), 1);
        assert!(chain_zero_counts(&cs, 8).is_err());
        assert!(chain_zero_counts(&cs, 0).is_err());

        let cs = cell_series(&spec(2, 3, S, 0), -9, 9).unwrap();
        let counts = chain_zero_counts(&cs, 3).unwrap();
        assert_eq!(counts.iter().filter(|&&c| c == 1).count(), 1);
        assert!(counts.iter().all(|&c| c == 1 || c == 2));
    }

    #[test]
    fn parse_frequency_and_type() {
        assert_eq!("2/5".parse::<Frequency>().unwrap(), Frequency::Rational { q: 2, p: 5 });
        assert_eq!("0".parse::<Frequency>().unwrap(), Frequency::Zero);
        assert_eq!("inf".parse::<Frequency>().unwrap(), Frequency::Infinity);
        assert!("2/4".parse::<Frequency>().is_err());
        assert!("x".parse::<Frequency>().is_err());
        assert_eq!("Sprime".parse::<SturmianType>().unwrap(), SPrime);
        assert_eq!(Frequency::Rational { q: 2, p: 5 }.to_string(), "2/5");
    }
}
