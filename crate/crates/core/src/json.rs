//! Version-tagged JSON formats.
//!
//! Words are written as literals (see [`Word::parse`]); code tables are
//! lists of `[block, symbol]` pairs. Every `emit_*` has a matching `parse_*`
//! and the pair round-trips.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{CodePair, FlowMove, FlowWitness, SlidingBlockCode};
use crate::ep::{EpSeq, PeriodicSeq};
use crate::error::{Error, Result};
use crate::sturmian::{Frequency, SturmianSpec, SturmianType};
use crate::words::{Alphabet, Word};

pub const EPSEQ_FORMAT: &str = "epseq/1";
pub const PERSEQ_FORMAT: &str = "perseq/1";
pub const CONJUGACY_WITNESS_FORMAT: &str = "conjugacy-witness/1";
pub const FLOW_WITNESS_FORMAT: &str = "flow-witness/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EpSeqDoc {
    format: String,
    #[serde(default)]
    alphabet: Option<Vec<String>>,
    period: String,
    anomaly: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    offset: i64,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PerSeqDoc {
    format: String,
    #[serde(default)]
    alphabet: Option<Vec<String>>,
    period: String,
    phase: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CodeDoc {
    memory: usize,
    anticipation: usize,
    source: Vec<String>,
    target: Vec<String>,
    table: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PairDoc {
    forward: CodeDoc,
    inverse: CodeDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ConjugacyDoc {
    format: String,
    forward: CodeDoc,
    inverse: CodeDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum MoveDoc {
    Conjugacy {
        forward: CodeDoc,
        inverse: CodeDoc,
        result: EpSeqDoc,
    },
    Expand {
        symbol: String,
        fresh: String,
        result: EpSeqDoc,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FlowDoc {
    format: String,
    chain_x: Vec<MoveDoc>,
    chain_y: Vec<MoveDoc>,
    final_conjugacy: PairDoc,
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!("expected format {expected:?}, found {found:?}")));
    }
    Ok(())
}

fn alphabet_or_binary(labels: Option<Vec<String>>) -> Result<Arc<Alphabet>> {
    match labels {
        Some(labels) => Alphabet::new(labels),
        None => Ok(Alphabet::binary()),
    }
}

fn ep_doc(x: &EpSeq) -> EpSeqDoc {
    EpSeqDoc {
        format: EPSEQ_FORMAT.into(),
        alphabet: Some(x.alphabet().labels().to_vec()),
        period: x.period().to_string(),
        anomaly: x.anomaly().to_string(),
        offset: x.offset(),
    }
}

fn ep_from_doc(doc: EpSeqDoc) -> Result<EpSeq> {
    check_format(&doc.format, EPSEQ_FORMAT)?;
    let alphabet = alphabet_or_binary(doc.alphabet)?;
    let w = Word::parse(alphabet.clone(), &doc.period)?;
    let v = Word::parse(alphabet, &doc.anomaly)?;
    EpSeq::with_offset(&w, &v, doc.offset)
}

pub fn epseq_to_value(x: &EpSeq) -> Value {
    serde_json::to_value(ep_doc(x)).expect("plain data")
}

pub fn epseq_from_value(v: Value) -> Result<EpSeq> {
    ep_from_doc(serde_json::from_value(v)?)
}

pub fn emit_epseq(x: &EpSeq) -> String {
    epseq_to_value(x).to_string()
}

pub fn parse_epseq(text: &str) -> Result<EpSeq> {
    ep_from_doc(serde_json::from_str(text)?)
}

pub fn perseq_to_value(p: &PeriodicSeq) -> Value {
    let doc = PerSeqDoc {
        format: PERSEQ_FORMAT.into(),
        alphabet: Some(p.alphabet().labels().to_vec()),
        period: p.period().to_string(),
        phase: p.phase(),
    };
    serde_json::to_value(doc).expect("plain data")
}

pub fn emit_perseq(p: &PeriodicSeq) -> String {
    perseq_to_value(p).to_string()
}

pub fn parse_perseq(text: &str) -> Result<PeriodicSeq> {
    let doc: PerSeqDoc = serde_json::from_str(text)?;
    check_format(&doc.format, PERSEQ_FORMAT)?;
    let alphabet = alphabet_or_binary(doc.alphabet)?;
    let period = Word::parse(alphabet, &doc.period)?;
    if period.is_empty() {
        return Err(Error::EmptyWord);
    }
    PeriodicSeq::new(period, doc.phase)
}

fn code_doc(code: &SlidingBlockCode) -> CodeDoc {
    let (source, target) = (code.source(), code.target());
    let table = code
        .table()
        .iter()
        .map(|(block, out)| {
            let block = Word::new(source.clone(), block.clone()).expect("validated code");
            (block.to_string(), target.label(*out).to_string())
        })
        .collect();
    CodeDoc {
        memory: code.memory(),
        anticipation: code.anticipation(),
        source: source.labels().to_vec(),
        target: target.labels().to_vec(),
        table,
    }
}

fn code_from_doc(doc: CodeDoc) -> Result<SlidingBlockCode> {
    let source = Alphabet::new(doc.source)?;
    let target = Alphabet::new(doc.target)?;
    let mut table = BTreeMap::new();
    for (block, out) in doc.table {
        let block = Word::parse(source.clone(), &block)?.into_symbols();
        let out = target.symbol(&out).ok_or(Error::InvalidSymbol(out))?;
        if table.insert(block, out).is_some() {
            return Err(Error::Parse("duplicate block in code table".into()));
        }
    }
    SlidingBlockCode::new(doc.memory, doc.anticipation, source, target, table)
}

fn pair_doc(pair: &CodePair) -> PairDoc {
    PairDoc {
        forward: code_doc(&pair.forward),
        inverse: code_doc(&pair.inverse),
    }
}

fn pair_from_doc(doc: PairDoc) -> Result<CodePair> {
    Ok(CodePair {
        forward: code_from_doc(doc.forward)?,
        inverse: code_from_doc(doc.inverse)?,
    })
}

pub fn conjugacy_witness_to_value(pair: &CodePair) -> Value {
    let p = pair_doc(pair);
    let doc = ConjugacyDoc {
        format: CONJUGACY_WITNESS_FORMAT.into(),
        forward: p.forward,
        inverse: p.inverse,
    };
    serde_json::to_value(doc).expect("plain data")
}

pub fn emit_conjugacy_witness(pair: &CodePair) -> String {
    conjugacy_witness_to_value(pair).to_string()
}

pub fn parse_conjugacy_witness(text: &str) -> Result<CodePair> {
    let doc: ConjugacyDoc = serde_json::from_str(text)?;
    check_format(&doc.format, CONJUGACY_WITNESS_FORMAT)?;
    pair_from_doc(PairDoc {
        forward: doc.forward,
        inverse: doc.inverse,
    })
}

fn move_doc(mv: &FlowMove) -> MoveDoc {
    match mv {
        FlowMove::Conjugacy { codes, result } => MoveDoc::Conjugacy {
            forward: code_doc(&codes.forward),
            inverse: code_doc(&codes.inverse),
            result: ep_doc(result),
        },
        FlowMove::Expand { symbol, fresh, result } => MoveDoc::Expand {
            symbol: symbol.clone(),
            fresh: fresh.clone(),
            result: ep_doc(result),
        },
    }
}

fn move_from_doc(doc: MoveDoc) -> Result<FlowMove> {
    Ok(match doc {
        MoveDoc::Conjugacy {
            forward,
            inverse,
            result,
        } => FlowMove::Conjugacy {
            codes: pair_from_doc(PairDoc { forward, inverse })?,
            result: ep_from_doc(result)?,
        },
        MoveDoc::Expand { symbol, fresh, result } => FlowMove::Expand {
            symbol,
            fresh,
            result: ep_from_doc(result)?,
        },
    })
}

pub fn flow_witness_to_value(w: &FlowWitness) -> Value {
    let doc = FlowDoc {
        format: FLOW_WITNESS_FORMAT.into(),
        chain_x: w.chain_x.iter().map(move_doc).collect(),
        chain_y: w.chain_y.iter().map(move_doc).collect(),
        final_conjugacy: pair_doc(&w.final_conjugacy),
    };
    serde_json::to_value(doc).expect("plain data")
}

pub fn emit_flow_witness(w: &FlowWitness) -> String {
    flow_witness_to_value(w).to_string()
}

pub fn parse_flow_witness(text: &str) -> Result<FlowWitness> {
    let doc: FlowDoc = serde_json::from_str(text)?;
    check_format(&doc.format, FLOW_WITNESS_FORMAT)?;
    let chain = |moves: Vec<MoveDoc>| moves.into_iter().map(move_from_doc).collect::<Result<Vec<_>>>();
    Ok(FlowWitness {
        chain_x: chain(doc.chain_x)?,
        chain_y: chain(doc.chain_y)?,
        final_conjugacy: pair_from_doc(doc.final_conjugacy)?,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpecDoc {
    freq: String,
    #[serde(rename = "type")]
    stype: SturmianType,
    #[serde(default)]
    m: i64,
}

/// `{"freq":"2/5","type":"S","m":0}`; `freq` is `q/p`, `0` or `inf`.
pub fn spec_to_value(spec: &SturmianSpec) -> Value {
    let doc = SpecDoc {
        freq: spec.freq.to_string(),
        stype: spec.stype,
        m: spec.m,
    };
    serde_json::to_value(doc).expect("plain data")
}

pub fn spec_from_value(v: Value) -> Result<SturmianSpec> {
    let doc: SpecDoc = serde_json::from_value(v)?;
    SturmianSpec::new(doc.freq.parse::<Frequency>()?, doc.stype, doc.m)
}

/// Either witness kind, dispatched on the `format` tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Conjugacy(CodePair),
    Flow(FlowWitness),
}

pub fn parse_witness(text: &str) -> Result<Witness> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("format").and_then(Value::as_str) {
        Some(CONJUGACY_WITNESS_FORMAT) => parse_conjugacy_witness(text).map(Witness::Conjugacy),
        Some(FLOW_WITNESS_FORMAT) => parse_flow_witness(text).map(Witness::Flow),
        other => Err(Error::Parse(format!("unknown witness format {other:?}"))),
    }
}
