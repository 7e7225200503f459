//! Eventually periodic bi-infinite sequences, their conjugacy invariants,
//! and skew Sturmian sequences of rational frequency.

pub mod bezout;
pub mod classify;
pub mod ep;
pub mod error;
pub mod json;
pub mod sturmian;
pub mod verify;
pub mod words;

pub use bezout::{restricted_bezout, swapped_pair, BezoutPair};
pub use classify::{
    apply_code, conjugacy_witness, conjugate_ep, expand_symbol, flow_witness, raise_anomaly, raise_period,
    skew_conjugacy_class, verify_conjugacy, verify_flow_witness, CodePair, FlowMove, FlowVerdict, FlowWitness,
    SlidingBlockCode,
};
pub use ep::{make_ep, AnomalyWindow, EpSeq, PeriodicSeq, Removal};
pub use error::{Error, Result};
pub use sturmian::{
    cell_series, cutting_sequence, expand_cells, skew_sturmian, symbol_reverse, CellSeries, Frequency, SturmianSpec,
    SturmianType,
};
pub use words::{is_balanced_chains, Alphabet, Symbol, Word};
