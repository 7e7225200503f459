//! Fixtures shared by the benchmarks.

use subshift_core::{skew_sturmian, EpSeq, Frequency, SturmianSpec, SturmianType};

/// The skew Sturmian sequence of frequency `q/p` and the given type.
pub fn skew(q: u64, p: u64, stype: SturmianType) -> EpSeq {
    let spec = SturmianSpec::new(Frequency::rational(q, p).expect("coprime"), stype, 0).expect("valid spec");
    skew_sturmian(&spec).expect("generates")
}

/// Frequencies `q/p` with `p + q = n`, for increasing `n`.
pub const SIZES: [(u64, u64); 4] = [(2, 3), (3, 7), (5, 12), (13, 21)];
