//! Conjugacy and flow equivalence of subshifts generated by eventually
//! periodic sequences, with witnesses that can be replayed independently.

mod code;
mod flow;

use std::collections::BTreeSet;

pub use code::{
    apply_code, apply_code_periodic, conjugacy_witness, conjugate_ep, verify_conjugacy, CodePair, SlidingBlockCode,
};
pub use flow::{
    contract, expand_symbol, flow_witness, raise_anomaly, raise_anomaly_moves, raise_chain, raise_period,
    raise_period_moves, verify_flow_witness, FlowMove, FlowVerdict, FlowWitness,
};

use crate::error::Result;
use crate::sturmian::SturmianSpec;

/// The conjugacy class of a skew Sturmian spec: itself and its dual.
pub fn skew_conjugacy_class(spec: &SturmianSpec) -> Result<BTreeSet<SturmianSpec>> {
    spec.validate()?;
    Ok([*spec, spec.dual()].into_iter().collect())
}
