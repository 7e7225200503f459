//! Flow equivalence by chains of conjugacies and symbol expansions.
//!
//! Any eventually periodic sequence can be moved, without leaving its flow
//! equivalence class, to one with least period `N + 1` and the same anomaly
//! size ([`raise_period`]) or to one with the same period and anomaly size
//! one larger ([`raise_anomaly`]). Raising two sequences to common
//! invariants makes them conjugate, which yields a [`FlowWitness`].

use std::sync::Arc;

use crate::classify::code::{conjugacy_witness, conjugate_ep, verify_conjugacy, CodePair};
use crate::ep::EpSeq;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowMove {
    /// A conjugacy from the current sequence's subshift onto `result`'s.
    Conjugacy { codes: CodePair, result: EpSeq },
    /// Every `symbol` replaced by `symbol fresh`.
    Expand {
        symbol: String,
        fresh: String,
        result: EpSeq,
    },
}

impl FlowMove {
    pub fn result(&self) -> &EpSeq {
        match self {
            FlowMove::Conjugacy { result, .. } | FlowMove::Expand { result, .. } => result,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FlowMove::Conjugacy { .. } => "conjugacy",
            FlowMove::Expand { .. } => "expand",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowWitness {
    pub chain_x: Vec<FlowMove>,
    pub chain_y: Vec<FlowMove>,
    pub final_conjugacy: CodePair,
}

/// Outcome of replaying a [`FlowWitness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowVerdict {
    pub passed: bool,
    pub trail: Vec<String>,
}

fn substitute(word: &Word, alphabet: &Arc<Alphabet>, s: Symbol, fresh: Symbol) -> Word {
    let mut out = Vec::with_capacity(word.len() + word.count_symbol(s));
    for &t in word.symbols() {
        out.push(t);
        if t == s {
            out.push(fresh);
        }
    }
    Word::new(alphabet.clone(), out).expect("alphabet extends the word's alphabet")
}

fn expand_with(x: &EpSeq, s: Symbol, alphabet: &Arc<Alphabet>, fresh: Symbol) -> Result<EpSeq> {
    EpSeq::with_offset(
        &substitute(x.period(), alphabet, s, fresh),
        &substitute(x.anomaly(), alphabet, s, fresh),
        x.offset(),
    )
}

/// Symbol expansion: every occurrence of `s` becomes `s f` for a freshly
/// minted symbol `f`, which is returned alongside the new sequence.
pub fn expand_symbol(x: &EpSeq, s: Symbol) -> Result<(EpSeq, Symbol)> {
    if !x.alphabet().contains(s) {
        return Err(Error::InvalidSymbol(format!("#{}", s.0)));
    }
    if x.period().count_symbol(s) + x.anomaly().count_symbol(s) == 0 {
        return Err(Error::SymbolAbsent(x.alphabet().label(s).to_string()));
    }
    let (alphabet, fresh) = x.alphabet().with_fresh();
    Ok((expand_with(x, s, &alphabet, fresh)?, fresh))
}

/// Deletes every occurrence of `fresh`, the last symbol of the alphabet.
pub fn contract(x: &EpSeq, fresh: Symbol) -> Result<EpSeq> {
    let alpha = x.alphabet();
    if fresh.index() + 1 != alpha.len() || alpha.len() < 2 {
        return Err(Error::InvalidSymbol(format!("#{}", fresh.0)));
    }
    let smaller = Alphabet::new(alpha.labels()[..alpha.len() - 1].iter().cloned())?;
    let strip = |w: &Word| {
        let symbols = w.symbols().iter().copied().filter(|&t| t != fresh).collect();
        Word::new(smaller.clone(), symbols)
    };
    EpSeq::with_offset(&strip(x.period())?, &strip(x.anomaly())?, x.offset())
}

fn replace_last(word: &Word, alphabet: &Arc<Alphabet>, with: Symbol) -> Word {
    let mut symbols = word.symbols().to_vec();
    *symbols.last_mut().expect("non-empty") = with;
    Word::new(alphabet.clone(), symbols).expect("alphabet extends the word's alphabet")
}

/// Conjugate to `target`, then expand `primed` in it.
fn conjugate_then_expand(x: &EpSeq, target: EpSeq, primed: Symbol) -> Result<Vec<FlowMove>> {
    let codes = conjugacy_witness(x, &target).map_err(|e| match e {
        Error::NotConjugate { .. } => {
            Error::PostconditionFailed(format!("primed sequence {target} is not conjugate to {x}"))
        }
        other => other,
    })?;
    let (expanded, fresh) = expand_symbol(&target, primed)?;
    let labels = expanded.alphabet().clone();
    let expand = FlowMove::Expand {
        symbol: labels.label(primed).to_string(),
        fresh: labels.label(fresh).to_string(),
        result: expanded,
    };
    Ok(vec![FlowMove::Conjugacy { codes, result: target }, expand])
}

/// Moves realising a flow equivalence to a sequence with least period
/// `N + 1` and unchanged anomaly size.
///
/// In the canonical form `⋯ w w u w w ⋯` the last letter of `w` is replaced
/// by a fresh `b′` in every period (a conjugate sequence) and `b′` is then
/// expanded.
pub fn raise_period_moves(x: &EpSeq) -> Result<Vec<FlowMove>> {
    let c = x.canonical();
    let (n, a) = (c.least_period(), c.anomaly().len());
    let (alphabet, primed) = c.alphabet().with_fresh();
    let period = replace_last(c.period(), &alphabet, primed);
    let primed_seq = EpSeq::with_offset(&period, &c.anomaly().widen(&alphabet)?, 0)?;
    let moves = conjugate_then_expand(x, primed_seq, primed)?;
    check_invariants(moves.last().expect("two moves").result(), n + 1, a, "raise_period")?;
    Ok(moves)
}

/// Moves realising a flow equivalence to a sequence with the same least
/// period and anomaly size one larger.
///
/// The last letter of the minimal anomaly `u` is replaced by a fresh `a′`
/// (a conjugate sequence) and `a′` is then expanded.
pub fn raise_anomaly_moves(x: &EpSeq) -> Result<Vec<FlowMove>> {
    let c = x.canonical();
    let (n, a) = (c.least_period(), c.anomaly().len());
    let (alphabet, primed) = c.alphabet().with_fresh();
    let anomaly = replace_last(c.anomaly(), &alphabet, primed);
    let primed_seq = EpSeq::with_offset(&c.period().widen(&alphabet)?, &anomaly, 0)?;
    let moves = conjugate_then_expand(x, primed_seq, primed)?;
    check_invariants(moves.last().expect("two moves").result(), n, a + 1, "raise_anomaly")?;
    Ok(moves)
}

fn check_invariants(y: &EpSeq, n: usize, a: usize, step: &str) -> Result<()> {
    let (got_n, got_a) = (y.least_period(), y.anomaly_size());
    if (got_n, got_a) != (n, a) {
        return Err(Error::PostconditionFailed(format!(
            "{step}: expected least period {n} and anomaly size {a}, got {got_n} and {got_a}"
        )));
    }
    Ok(())
}

pub fn raise_period(x: &EpSeq) -> Result<EpSeq> {
    Ok(raise_period_moves(x)?.pop().expect("two moves").result().clone())
}

pub fn raise_anomaly(x: &EpSeq) -> Result<EpSeq> {
    Ok(raise_anomaly_moves(x)?.pop().expect("two moves").result().clone())
}

/// Raises `x` to least period `n` and then to anomaly size `a`.
pub fn raise_chain(x: &EpSeq, n: usize, a: usize) -> Result<Vec<FlowMove>> {
    let mut chain = Vec::new();
    let mut cur = x.clone();
    while cur.least_period() < n {
        chain.extend(raise_period_moves(&cur)?);
        cur = chain.last().expect("non-empty").result().clone();
    }
    while cur.anomaly_size() < a {
        chain.extend(raise_anomaly_moves(&cur)?);
        cur = chain.last().expect("non-empty").result().clone();
    }
    Ok(chain)
}

fn endpoint<'a>(start: &'a EpSeq, chain: &'a [FlowMove]) -> &'a EpSeq {
    chain.last().map_or(start, FlowMove::result)
}

/// Chains from `x` and from `y` to common invariants
/// `(max least period, max anomaly size)` plus a conjugacy between the ends.
pub fn flow_witness(x: &EpSeq, y: &EpSeq) -> Result<FlowWitness> {
    let n = x.least_period().max(y.least_period());
    let a = x.anomaly_size().max(y.anomaly_size());
    let chain_x = raise_chain(x, n, a)?;
    let chain_y = raise_chain(y, n, a)?;
    let final_conjugacy = conjugacy_witness(endpoint(x, &chain_x), endpoint(y, &chain_y))
        .map_err(|e| Error::PostconditionFailed(format!("chain endpoints: {e}")))?;
    Ok(FlowWitness {
        chain_x,
        chain_y,
        final_conjugacy,
    })
}

fn replay(start: &EpSeq, chain: &[FlowMove], name: &str, trail: &mut Vec<String>) -> Option<EpSeq> {
    let mut cur = start.clone();
    for (i, mv) in chain.iter().enumerate() {
        let at = format!("{name}[{i}] {}", mv.kind());
        let check = match mv {
            FlowMove::Conjugacy { codes, result } => verify_conjugacy(&cur, result, codes),
            FlowMove::Expand { symbol, fresh, result } => check_expansion(&cur, symbol, fresh, result),
        };
        match check {
            Ok(()) => trail.push(format!("{at}: ok -> {}", mv.result())),
            Err(e) => {
                trail.push(format!("{at}: {e}"));
                return None;
            }
        }
        cur = mv.result().clone();
    }
    Some(cur)
}

fn check_expansion(cur: &EpSeq, symbol: &str, fresh: &str, result: &EpSeq) -> std::result::Result<(), String> {
    let alpha = cur.alphabet();
    let s = alpha
        .symbol(symbol)
        .ok_or_else(|| format!("symbol {symbol} is not in the alphabet"))?;
    if alpha.symbol(fresh).is_some() {
        return Err(format!("fresh symbol {fresh} is already in the alphabet"));
    }
    if cur.period().count_symbol(s) + cur.anomaly().count_symbol(s) == 0 {
        return Err(format!("symbol {symbol} does not occur"));
    }
    let mut labels = alpha.labels().to_vec();
    labels.push(fresh.to_string());
    let extended = Alphabet::new(labels).map_err(|e| e.to_string())?;
    if result.alphabet() != &extended {
        return Err("result alphabet is not the current alphabet plus the fresh symbol".into());
    }
    let f = extended.symbol(fresh).expect("just added");
    let expected = expand_with(cur, s, &extended, f).map_err(|e| e.to_string())?;
    if expected.canonical() != result.canonical() {
        return Err(format!("expansion gives {expected}, witness records {result}"));
    }
    Ok(())
}

/// Replays every move of both chains and the final conjugacy.
pub fn verify_flow_witness(x: &EpSeq, y: &EpSeq, w: &FlowWitness) -> FlowVerdict {
    let mut trail = Vec::new();
    let ends = (
        replay(x, &w.chain_x, "chain_x", &mut trail),
        replay(y, &w.chain_y, "chain_y", &mut trail),
    );
    let passed = match ends {
        (Some(ex), Some(ey)) => {
            if !conjugate_ep(&ex, &ey) {
                trail.push(format!("endpoints {ex} and {ey} have different invariants"));
                false
            } else {
                match verify_conjugacy(&ex, &ey, &w.final_conjugacy) {
                    Ok(()) => {
                        trail.push("final conjugacy: ok".into());
                        true
                    }
                    Err(e) => {
                        trail.push(format!("final conjugacy: {e}"));
                        false
                    }
                }
            }
        }
        _ => false,
    };
    FlowVerdict { passed, trail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ep::make_ep;
    use crate::sturmian::{skew_sturmian, Frequency, SturmianSpec, SturmianType};

    fn ep(w: &str, v: &str) -> EpSeq {
        make_ep(&Word::binary(w).unwrap(), &Word::binary(v).unwrap()).unwrap()
    }

    fn skew(q: u64, p: u64) -> EpSeq {
        skew_sturmian(&SturmianSpec::new(Frequency::rational(q, p).unwrap(), SturmianType::S, 0).unwrap()).unwrap()
    }

    #[test]
    fn expand_examples() {
        let x = ep("0", "11");
        let (y, f) = expand_symbol(&x, Symbol(1)).unwrap();
        assert_eq!(y.period().to_string(), "[0]");
        assert_eq!(y.anomaly().to_string(), "[1,x0\u{2032},1,x0\u{2032}]");
        assert_eq!(contract(&y, f).unwrap(), x);

        let x = ep("10", "1");
        let (y, f) = expand_symbol(&x, Symbol(0)).unwrap();
        assert_eq!(y.least_period(), 3);
        assert_eq!(y.period().symbols(), &[Symbol(1), Symbol(0), f]);
        assert_eq!(contract(&y, f).unwrap(), x);

        assert!(expand_symbol(&ep("0", "0000000001"), Symbol(1)).is_ok());
        let abc = Alphabet::from_chars("abc").unwrap();
        let x = make_ep(&Word::parse(abc.clone(), "a").unwrap(), &Word::parse(abc, "b").unwrap()).unwrap();
        assert_eq!(
            expand_symbol(&x, Symbol(2)).err(),
            Some(Error::SymbolAbsent("c".into()))
        );
    }

    #[test]
    fn raise_period_examples() {
        let y = raise_period(&ep("0", "11")).unwrap();
        assert_eq!((y.least_period(), y.anomaly_size()), (2, 2));
        let y = raise_period(&skew(1, 1)).unwrap();
        assert_eq!((y.least_period(), y.anomaly_size()), (3, 1));
    }

    #[test]
    fn raise_anomaly_examples() {
        let y = raise_anomaly(&ep("0", "1")).unwrap();
        assert_eq!((y.least_period(), y.anomaly_size()), (1, 2));
        let x = skew(1, 2);
        let y = raise_anomaly(&x).unwrap();
        assert_eq!((y.least_period(), y.anomaly_size()), (3, 2));
        assert_eq!(y.period().len(), x.period().len());
    }

    #[test]
    fn flow_witness_examples() {
        let x = skew(1, 1);
        let w = flow_witness(&x, &x).unwrap();
        assert!(w.chain_x.is_empty() && w.chain_y.is_empty());
        assert_eq!(w.final_conjugacy.forward.width(), 1);
        assert!(verify_flow_witness(&x, &x, &w).passed);

        let y = ep("0", "1");
        let w = flow_witness(&x, &y).unwrap();
        assert!(w.chain_x.is_empty());
        assert_eq!(w.chain_y.len(), 2);
        let end = w.chain_y.last().unwrap().result();
        assert_eq!((end.least_period(), end.anomaly_size()), (2, 1));
        assert!(verify_flow_witness(&x, &y, &w).passed);

        let (x, y) = (skew(1, 2), skew(2, 1));
        let w = flow_witness(&x, &y).unwrap();
        assert_eq!(w.chain_x.len(), 2);
        assert!(w.chain_y.is_empty());
        let end = w.chain_x.last().unwrap().result();
        assert_eq!((end.least_period(), end.anomaly_size()), (3, 2));
        assert!(verify_flow_witness(&x, &y, &w).passed);
    }

    #[test]
    fn colliding_fresh_symbol_is_rejected() {
        let (x, y) = (skew(1, 1), ep("0", "1"));
        let mut w = flow_witness(&x, &y).unwrap();
        for mv in &mut w.chain_y {
            if let FlowMove::Expand { fresh, .. } = mv {
                *fresh = "0".into();
            }
        }
        let verdict = verify_flow_witness(&x, &y, &w);
        assert!(!verdict.passed);
        assert!(
            verdict.trail.iter().any(|t| t.contains("already in the alphabet")),
            "{:?}",
            verdict.trail
        );
    }

    #[test]
    fn broken_final_codes_are_rejected() {
        let (x, y) = (skew(1, 2), skew(2, 1));
        let mut w = flow_witness(&x, &y).unwrap();
        let inv = w.final_conjugacy.inverse.table_mut();
        let first = inv.keys().next().cloned().unwrap();
        let out = inv[&first];
        let other = x.alphabet().symbols().find(|&s| s != out).unwrap();
        for v in inv.values_mut() {
            *v = other;
        }
        let verdict = verify_flow_witness(&x, &y, &w);
        assert!(!verdict.passed);
    }
}
