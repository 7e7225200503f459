//! Computational checks of the structural theorems over finite families,
//! collected into a [`VerifyReport`].
//!
//! Instances are checked in parallel; failures are sorted by instance key so
//! that reports are reproducible for a fixed seed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;
use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bezout::{restricted_bezout, swapped_pair};
use crate::classify::{
    conjugacy_witness, conjugate_ep, flow_witness, skew_conjugacy_class, verify_conjugacy, verify_flow_witness,
    FlowMove,
};
use crate::ep::{make_ep, EpSeq, Removal};
use crate::json::{epseq_to_value, spec_to_value};
use crate::sturmian::{
    cell_series, cutting_sequence, expand_cells, skew_sturmian, symbol_reverse, Frequency, SturmianSpec, SturmianType,
};
use crate::words::{is_balanced_chains, Alphabet, Word};

pub const REPORT_FORMAT: &str = "verify-report/1";

/// Environment variable holding the seed of the random instance generator.
pub const SEED_VAR: &str = "SUBSHIFT_SEED";

/// Reads [`SEED_VAR`]; unset means 0.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR}={s:?} is not an unsigned integer")),
        Err(_) => Ok(0),
    }
}

/// Quantification bounds. `*_sum` bounds cap `p + q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub bezout_sum: u64,
    pub formula_sum: u64,
    pub classes_sum: u64,
    pub flow_sum: u64,
    pub reciprocals_sum: u64,
    pub generator_sum: u64,
    pub max_period_word: usize,
    pub max_anomaly_word: usize,
    pub random_instances: usize,
    pub random_flow_pairs: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            bezout_sum: 200,
            formula_sum: 25,
            classes_sum: 20,
            flow_sum: 12,
            reciprocals_sum: 20,
            generator_sum: 25,
            max_period_word: 4,
            max_anomaly_word: 6,
            random_instances: 200,
            random_flow_pairs: 50,
            seed: 0,
        }
    }
}

impl Bounds {
    /// Lowers every `p + q` bound to at most `max_sum`.
    pub fn capped(mut self, max_sum: u64) -> Self {
        for b in [
            &mut self.bezout_sum,
            &mut self.formula_sum,
            &mut self.classes_sum,
            &mut self.flow_sum,
            &mut self.reciprocals_sum,
            &mut self.generator_sum,
        ] {
            *b = (*b).min(max_sum);
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub counterexample: Value,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremResult {
    pub tag: String,
    pub bounds: Value,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub wall_seconds: f64,
    pub status: Status,
}

impl TheoremResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format: String,
    pub bounds: Bounds,
    pub status: Status,
    pub theorems: Vec<TheoremResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn theorem(&self, tag: &str) -> Option<&TheoremResult> {
        self.theorems.iter().find(|t| t.tag == tag)
    }
}

/// One checked instance: a sort key and a JSON counterexample payload.
pub trait Instance: Sync {
    fn key(&self) -> String;
    fn payload(&self) -> Value;
}

impl Instance for SturmianSpec {
    fn key(&self) -> String {
        self.to_string()
    }
    fn payload(&self) -> Value {
        spec_to_value(self)
    }
}

impl Instance for EpSeq {
    fn key(&self) -> String {
        self.to_string()
    }
    fn payload(&self) -> Value {
        epseq_to_value(self)
    }
}

impl<A: Instance, B: Instance> Instance for (A, B) {
    fn key(&self) -> String {
        format!("{} | {}", self.0.key(), self.1.key())
    }
    fn payload(&self) -> Value {
        json!([self.0.payload(), self.1.payload()])
    }
}

impl Instance for (u64, u64) {
    fn key(&self) -> String {
        format!("{:>4}/{:<4}", self.0, self.1)
    }
    fn payload(&self) -> Value {
        json!({"q": self.0, "p": self.1})
    }
}

/// Runs `check` on every instance in parallel.
pub fn run_theorem<I: Instance>(
    tag: &str,
    bounds: Value,
    instances: &[I],
    check: impl Fn(&I) -> Result<(), String> + Sync,
) -> TheoremResult {
    let start = Instant::now();
    let mut failures: Vec<Failure> = instances
        .par_iter()
        .filter_map(|inst| {
            check(inst).err().map(|message| Failure {
                instance: inst.key(),
                counterexample: inst.payload(),
                message,
            })
        })
        .collect();
    failures.sort_by(|a, b| a.instance.cmp(&b.instance));
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    TheoremResult {
        tag: tag.into(),
        bounds,
        instances: instances.len(),
        failures,
        wall_seconds: start.elapsed().as_secs_f64(),
        status,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Coprime `(q, p)` with `p, q >= 1` and `p + q <= max_sum`.
pub fn coprime_pairs(max_sum: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 2..=max_sum {
        for q in 1..s {
            let p = s - q;
            if q.gcd(&p) == 1 {
                out.push((q, p));
            }
        }
    }
    out
}

/// Both types for every rational frequency with `p + q <= max_sum`, plus
/// `∞/S` and `0/S′`.
pub fn skew_specs(max_sum: u64, m: i64) -> Vec<SturmianSpec> {
    let mut out = vec![
        SturmianSpec::new(Frequency::Infinity, SturmianType::S, m).expect("valid"),
        SturmianSpec::new(Frequency::Zero, SturmianType::SPrime, m).expect("valid"),
    ];
    for (q, p) in coprime_pairs(max_sum) {
        for t in [SturmianType::S, SturmianType::SPrime] {
            out.push(SturmianSpec::new(Frequency::Rational { q, p }, t, m).expect("coprime"));
        }
    }
    out
}

/// Every non-degenerate `EPSeq(w, v)` over `{0, 1}` with `|w| <= max_w` and
/// `|v| <= max_v`, without repeats.
pub fn binary_family(max_w: usize, max_v: usize) -> Vec<EpSeq> {
    let words = |max: usize| {
        (1..=max).flat_map(|len| {
            (0..1u32 << len).map(move |bits| {
                let lit: String = (0..len)
                    .map(|i| if bits >> (len - 1 - i) & 1 == 1 { '1' } else { '0' })
                    .collect();
                Word::binary(&lit).expect("binary literal")
            })
        })
    };
    let mut out = BTreeSet::new();
    for w in words(max_w) {
        for v in words(max_v) {
            if let Ok(x) = make_ep(&w, &v) {
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}

/// `count` random sequences over 2 or 3 symbols with `|w| <= max_w`,
/// `|v| <= max_v` and anomaly offset in `[-max_w, max_w]`.
pub fn random_family(seed: u64, count: usize, max_w: usize, max_v: usize) -> Vec<EpSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(2..=3u32);
        let alphabet = Alphabet::from_chars(&"012"[..k as usize]).expect("distinct labels");
        let mut word = |max: usize| {
            let len = rng.gen_range(1..=max);
            let symbols = (0..len).map(|_| crate::words::Symbol(rng.gen_range(0..k))).collect();
            Word::new(alphabet.clone(), symbols).expect("in range")
        };
        let (w, v) = (word(max_w), word(max_v));
        let offset = rng.gen_range(-(max_w as i64)..=max_w as i64);
        if let Ok(x) = EpSeq::with_offset(&w, &v, offset) {
            out.push(x);
        }
    }
    out
}

/// `count` random pairs drawn from [`random_family`].
pub fn random_pairs(seed: u64, count: usize, max_w: usize, max_v: usize) -> Vec<(EpSeq, EpSeq)> {
    let xs = random_family(seed.wrapping_add(1), 2 * count, max_w, max_v);
    xs.chunks_exact(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

/// Brute-force invariants read off a materialised stretch of the sequence.
pub mod oracle {
    use crate::ep::EpSeq;
    use crate::words::Symbol;

    /// The stretch `x_lo ..= x_hi` together with `lo`.
    fn stretch(x: &EpSeq, pad: i64) -> (i64, Vec<Symbol>) {
        let lo = x.offset() - pad;
        let hi = x.offset() + x.anomaly().len() as i64 + pad;
        (lo, (lo..=hi).map(|k| x.symbol_at(k)).collect())
    }

    fn pad(x: &EpSeq) -> i64 {
        (x.anomaly().len() + 6 * x.period().len() + 2) as i64
    }

    /// Smallest `d` with `x_k = x_{k+d}` throughout a stretch of the left tail.
    pub fn least_period(x: &EpSeq) -> usize {
        let (_, xs) = stretch(x, pad(x));
        let tail = &xs[..pad(x) as usize];
        (1..=tail.len())
            .find(|&d| (0..tail.len() - d).all(|i| tail[i] == tail[i + d]))
            .expect("d = len works")
    }

    fn is_periodic_with(ys: &[Symbol], d: usize) -> bool {
        (0..ys.len().saturating_sub(d)).all(|i| ys[i] == ys[i + d])
    }

    /// Smallest `L` such that deleting some `L` consecutive symbols leaves a
    /// periodic sequence. Every length up to `|v|` is tried.
    pub fn anomaly_size(x: &EpSeq) -> usize {
        let n = least_period(x);
        let pad = pad(x);
        let (lo, xs) = stretch(x, pad);
        let v = x.anomaly().len();
        let o = x.offset();
        for len in 1..=v {
            let l = len as i64;
            for s in (o - l - 2 * n as i64)..=(o + v as i64 + 2 * n as i64) {
                // y_k = x_k for k < s, x_{k+len} for k >= s, over the part of
                // the stretch where both branches are materialised.
                let ys: Vec<Symbol> = (lo..=lo + xs.len() as i64 - 1 - l)
                    .map(|k| {
                        if k < s {
                            xs[(k - lo) as usize]
                        } else {
                            xs[(k + l - lo) as usize]
                        }
                    })
                    .collect();
                if is_periodic_with(&ys, n) {
                    return len;
                }
            }
        }
        unreachable!("the stored anomaly is always removable")
    }
}

/// Brute-force `(least period, anomaly size)`, memoised.
#[derive(Default)]
pub struct OracleCache {
    memo: Mutex<HashMap<EpSeq, (usize, usize)>>,
}

impl OracleCache {
    pub fn invariants(&self, x: &EpSeq) -> (usize, usize) {
        if let Some(v) = self.memo.lock().expect("not poisoned").get(x) {
            return *v;
        }
        let v = (oracle::least_period(x), oracle::anomaly_size(x));
        self.memo.lock().expect("not poisoned").insert(x.clone(), v);
        v
    }
}

pub fn check_bezout(q: u64, p: u64) -> Result<(), String> {
    let bp = restricted_bezout(q, p).map_err(|e| e.to_string())?;
    let (qi, pi) = (q as i128, p as i128);
    let solutions: Vec<(i128, i128)> = (0..qi)
        .flat_map(|a| (1..=pi).map(move |b| (a, b)))
        .filter(|&(a, b)| b * qi - a * pi == 1)
        .collect();
    ensure(solutions.len() == 1, || {
        format!("{} solutions by search", solutions.len())
    })?;
    ensure(solutions[0] == (bp.a as i128, bp.b as i128), || {
        format!("search gives {:?}, solver gives ({}, {})", solutions[0], bp.a, bp.b)
    })?;
    ensure((bp.a + bp.b).gcd(&(p + q)) == 1, || {
        format!("gcd(a+b, p+q) = {}", (bp.a + bp.b).gcd(&(p + q)))
    })?;
    ensure(swapped_pair(&swapped_pair(&bp)) == bp, || {
        "swap is not an involution".into()
    })
}

/// Anomaly size predicted from the restricted pair of `(q, p)`.
pub fn predicted_anomaly_size(spec: &SturmianSpec) -> Option<u64> {
    let Frequency::Rational { q, p } = spec.freq else {
        return Some(1);
    };
    let bp = restricted_bezout(q, p).ok()?;
    Some(match spec.stype {
        SturmianType::S => bp.sum(),
        SturmianType::SPrime => p + q - bp.sum(),
    })
}

pub fn check_anomaly_formula(spec: &SturmianSpec) -> Result<(), String> {
    let x = skew_sturmian(spec).map_err(|e| e.to_string())?;
    let expected = predicted_anomaly_size(spec).ok_or("no restricted pair")? as usize;
    let (n, a) = (oracle::least_period(&x), oracle::anomaly_size(&x));
    ensure(a == expected, || {
        format!("brute-force anomaly size {a}, formula {expected}")
    })?;
    ensure(a == x.anomaly_size(), || {
        format!("window search gives {}, brute force {a}", x.anomaly_size())
    })?;
    if let Frequency::Rational { q, p } = spec.freq {
        ensure(n as u64 == p + q, || format!("least period {n}, expected {}", p + q))?;
    }
    Ok(())
}

/// Spot values `(q, p, N, a)` for type S.
pub const SPOT_VALUES: [(u64, u64, usize, usize); 4] = [(1, 1, 2, 1), (1, 2, 3, 1), (2, 5, 7, 4), (3, 5, 8, 3)];

pub fn check_spot_value(q: u64, p: u64, n: usize, a: usize) -> Result<(), String> {
    let spec = SturmianSpec::new(
        Frequency::rational(q, p).map_err(|e| e.to_string())?,
        SturmianType::S,
        0,
    )
    .map_err(|e| e.to_string())?;
    let x = skew_sturmian(&spec).map_err(|e| e.to_string())?;
    let got = (oracle::least_period(&x), oracle::anomaly_size(&x));
    ensure(got == (n, a), || format!("got {got:?}, expected {:?}", (n, a)))
}

/// All anomaly-window removals agree pointwise and all window lengths are
/// congruent mod `N`.
pub fn check_anomaly_removal(x: &EpSeq) -> Result<(), String> {
    let windows = x.anomaly_windows();
    ensure(!windows.is_empty(), || "no anomaly window".into())?;
    ensure(windows.contains(&x.stored_window()), || {
        "stored anomaly missing from windows".into()
    })?;
    let n = x.least_period();
    let base = x.remove_window(windows[0]).map_err(|e| e.to_string())?;
    let Removal::Periodic(base) = base else {
        return Err(format!("removal at {:?} is not periodic", windows[0]));
    };
    for w in &windows {
        ensure(w.length % n == x.anomaly().len() % n, || {
            format!("window {w:?} length not congruent mod {n}")
        })?;
        match x.remove_window(*w).map_err(|e| e.to_string())? {
            Removal::Periodic(p) => ensure(p == base, || format!("removal at {w:?} differs from {:?}", windows[0]))?,
            Removal::Eventually(_) => return Err(format!("removal at {w:?} is not periodic")),
        }
    }
    ensure(
        x.anomaly_size() == windows.iter().map(|w| w.length).min().expect("non-empty"),
        || "anomaly size is not the minimal window length".into(),
    )
}

/// Pairs on which to exercise the conjugacy witness: within every invariant
/// class `(N, a mod N)`, each member with its successor and with the class's
/// first member.
pub fn conjugate_pairs(family: &[EpSeq]) -> Vec<(EpSeq, EpSeq)> {
    let mut classes: BTreeMap<(usize, usize), Vec<&EpSeq>> = BTreeMap::new();
    for x in family {
        let n = x.least_period();
        classes.entry((n, x.anomaly_size() % n)).or_default().push(x);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        for (i, x) in members.iter().enumerate() {
            let next = members[(i + 1) % members.len()];
            out.push(((*x).clone(), next.clone()));
            if i > 0 && (i + 1) % members.len() != 0 {
                out.push(((*x).clone(), members[0].clone()));
            }
        }
    }
    out
}

pub fn check_conjugacy_witness(x: &EpSeq, y: &EpSeq) -> Result<(), String> {
    ensure(conjugate_ep(x, y), || "invariants differ".into())?;
    let pair = conjugacy_witness(x, y).map_err(|e| e.to_string())?;
    verify_conjugacy(x, y, &pair)?;
    let (px, py) = (x.remove_anomaly(), y.remove_anomaly());
    let image = crate::classify::apply_code_periodic(&pair.forward, &px).map_err(|e| e.to_string())?;
    ensure(image.least_period() == py.least_period() && image.similar(&py), || {
        "forward code does not carry the periodic orbit onto the target's".into()
    })
}

/// Conjugacy classes computed from invariants are `{spec, dual}`.
pub fn check_classes(specs: &[SturmianSpec]) -> Vec<(SturmianSpec, Result<(), String>)> {
    let generated: Vec<(SturmianSpec, Result<EpSeq, String>)> = specs
        .par_iter()
        .map(|s| (*s, skew_sturmian(s).map_err(|e| e.to_string())))
        .collect();
    generated
        .par_iter()
        .map(|(spec, x)| {
            let result = x.as_ref().map_err(Clone::clone).and_then(|x| {
                let class: BTreeSet<SturmianSpec> = generated
                    .iter()
                    .filter(|(_, y)| y.as_ref().is_ok_and(|y| conjugate_ep(x, y)))
                    .map(|(s, _)| *s)
                    .collect();
                let expected = skew_conjugacy_class(spec).map_err(|e| e.to_string())?;
                ensure(class == expected, || {
                    let show =
                        |c: &BTreeSet<SturmianSpec>| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                    format!(
                        "class from invariants {{{}}}, expected {{{}}}",
                        show(&class),
                        show(&expected)
                    )
                })?;
                ensure(class.len() == 2, || format!("class has {} members", class.len()))
            });
            (*spec, result)
        })
        .collect()
}

/// Frequencies `q/p` and `(q−c)/(p+c)` of the same type have different
/// anomaly sizes.
pub fn distinct_size_pairs(max_sum: u64) -> Vec<(SturmianSpec, SturmianSpec)> {
    let mut out = Vec::new();
    for (q, p) in coprime_pairs(max_sum) {
        for (q2, p2) in coprime_pairs(max_sum) {
            if q2 + p2 == q + p && q2 != q {
                for t in [SturmianType::S, SturmianType::SPrime] {
                    let s1 = SturmianSpec::new(Frequency::Rational { q, p }, t, 0).expect("coprime");
                    let s2 = SturmianSpec::new(Frequency::Rational { q: q2, p: p2 }, t, 0).expect("coprime");
                    out.push((s1, s2));
                }
            }
        }
    }
    out
}

pub fn check_distinct_sizes(a: &SturmianSpec, b: &SturmianSpec) -> Result<(), String> {
    let x = skew_sturmian(a).map_err(|e| e.to_string())?;
    let y = skew_sturmian(b).map_err(|e| e.to_string())?;
    ensure(x.anomaly_size() != y.anomaly_size(), || {
        format!("both have anomaly size {}", x.anomaly_size())
    })?;
    ensure(!conjugate_ep(&x, &y), || "invariants say conjugate".into())
}

/// Each raise step moves the brute-force invariants from `(N, a)` to
/// `(N + 1, a)` or `(N, a + 1)`; the last state is `target`.
fn check_chain(start: &EpSeq, chain: &[FlowMove], target: (usize, usize), cache: &OracleCache) -> Result<(), String> {
    let mut state = cache.invariants(start);
    for mv in chain {
        if let FlowMove::Expand { result, .. } = mv {
            let next = cache.invariants(result);
            let (n, a) = state;
            ensure(next == (n + 1, a) || next == (n, a + 1), || {
                format!("step from {state:?} reached {next:?}")
            })?;
            state = next;
        }
    }
    ensure(state == target, || {
        format!("chain ends at {state:?}, expected {target:?}")
    })
}

pub fn check_flow(x: &EpSeq, y: &EpSeq, cache: &OracleCache) -> Result<(), String> {
    let w = flow_witness(x, y).map_err(|e| e.to_string())?;
    let verdict = verify_flow_witness(x, y, &w);
    ensure(verdict.passed, || verdict.trail.join("; "))?;
    let (nx, ax) = cache.invariants(x);
    let (ny, ay) = cache.invariants(y);
    let target = (nx.max(ny), ax.max(ay));
    check_chain(x, &w.chain_x, target, cache)?;
    check_chain(y, &w.chain_y, target, cache)
}

pub fn check_generator(spec: &SturmianSpec) -> Result<(), String> {
    let Frequency::Rational { q, p } = spec.freq else {
        return Ok(());
    };
    let span = 3 * (p + q) as i64 + 4;
    let (lo, hi) = (spec.m - span, spec.m + span);
    let cut = cutting_sequence(spec, lo, hi).map_err(|e| e.to_string())?;
    let cs = cell_series(spec, lo + 1, hi - 2).map_err(|e| e.to_string())?;
    let cells = expand_cells(&cs);
    // Cell B_{lo+1} starts at the second horizontal crossing.
    let one = cut.alphabet().symbol("1").expect("binary");
    let start = cut
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == one)
        .nth(1)
        .map(|(i, _)| i)
        .ok_or("fewer than two rows crossed")?;
    let aligned = cut.symbols().get(start..start + cells.len());
    ensure(aligned == Some(cells.symbols()), || {
        format!("cells {cells} do not match the cutting sequence {cut} at offset {start}")
    })?;
    let balanced = is_balanced_chains(&cs.cells).map_err(|e| e.to_string())?;
    ensure(balanced, || "chain zero counts differ by more than one".into())
}

pub fn check_reciprocal(q: u64, p: u64) -> Result<(), String> {
    let s = SturmianSpec::new(Frequency::Rational { q, p }, SturmianType::S, 0).map_err(|e| e.to_string())?;
    let x = symbol_reverse(&skew_sturmian(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let y = skew_sturmian(&s.dual()).map_err(|e| e.to_string())?;
    ensure(x.similar(&y).map_err(|e| e.to_string())?, || {
        format!("reversed {x} is not similar to {y}")
    })
}

/// Every flow-equivalence pair: unordered skew spec pairs and random pairs.
pub fn flow_pairs(bounds: &Bounds) -> Vec<(EpSeq, EpSeq)> {
    let seqs: Vec<EpSeq> = skew_specs(bounds.flow_sum, 0)
        .iter()
        .map(|s| skew_sturmian(s).expect("valid spec"))
        .collect();
    let mut out = Vec::new();
    for (i, x) in seqs.iter().enumerate() {
        for y in &seqs[i..] {
            out.push((x.clone(), y.clone()));
        }
    }
    out.extend(random_pairs(bounds.seed, bounds.random_flow_pairs, 4, 6));
    out
}

/// Tags in report order.
pub const TAGS: [&str; 10] = [
    "restricted-bezout",
    "anomaly-size-formula",
    "spot-values",
    "anomaly-removal",
    "conjugacy-witness",
    "conjugacy-classes",
    "distinct-anomaly-sizes",
    "flow-equivalence",
    "generator-cross-check",
    "reciprocals",
];

/// Runs one theorem by tag.
pub fn run_tag(tag: &str, bounds: &Bounds) -> Option<TheoremResult> {
    let family = || {
        let mut f = binary_family(bounds.max_period_word, bounds.max_anomaly_word);
        f.extend(random_family(bounds.seed, bounds.random_instances, 6, 10));
        f
    };
    let family_bounds = json!({
        "max_period_word": bounds.max_period_word,
        "max_anomaly_word": bounds.max_anomaly_word,
        "random_instances": bounds.random_instances,
        "seed": bounds.seed,
    });
    Some(match tag {
        "restricted-bezout" => run_theorem(
            tag,
            json!({"max_sum": bounds.bezout_sum}),
            &coprime_pairs(bounds.bezout_sum),
            |&(q, p)| check_bezout(q, p),
        ),
        "anomaly-size-formula" => {
            let specs: Vec<_> = skew_specs(bounds.formula_sum, 0).into_iter().skip(2).collect();
            run_theorem(
                tag,
                json!({"max_sum": bounds.formula_sum}),
                &specs,
                check_anomaly_formula,
            )
        }
        "spot-values" => {
            let pairs: Vec<(u64, u64)> = SPOT_VALUES.iter().map(|&(q, p, _, _)| (q, p)).collect();
            run_theorem(tag, json!({}), &pairs, |&(q, p)| {
                let &(_, _, n, a) = SPOT_VALUES.iter().find(|s| (s.0, s.1) == (q, p)).expect("listed");
                check_spot_value(q, p, n, a)
            })
        }
        "anomaly-removal" => run_theorem(tag, family_bounds, &family(), check_anomaly_removal),
        "conjugacy-witness" => run_theorem(tag, family_bounds, &conjugate_pairs(&family()), |(x, y)| {
            check_conjugacy_witness(x, y)
        }),
        "conjugacy-classes" => {
            let specs = skew_specs(bounds.classes_sum, 0);
            let start = Instant::now();
            let results = check_classes(&specs);
            let outcome: std::collections::HashMap<_, _> = results.into_iter().collect();
            let mut r = run_theorem(tag, json!({"max_sum": bounds.classes_sum}), &specs, |s| {
                outcome[s].clone()
            });
            r.wall_seconds = start.elapsed().as_secs_f64();
            r
        }
        "distinct-anomaly-sizes" => run_theorem(
            tag,
            json!({"max_sum": bounds.classes_sum}),
            &distinct_size_pairs(bounds.classes_sum),
            |(a, b)| check_distinct_sizes(a, b),
        ),
        "flow-equivalence" => {
            let cache = OracleCache::default();
            run_theorem(
                tag,
                json!({"max_sum": bounds.flow_sum, "random_pairs": bounds.random_flow_pairs, "seed": bounds.seed}),
                &flow_pairs(bounds),
                |(x, y)| check_flow(x, y, &cache),
            )
        }
        "generator-cross-check" => {
            let specs: Vec<_> = [-1, 0, 2]
                .into_iter()
                .flat_map(|m| skew_specs(bounds.generator_sum, m).into_iter().skip(2))
                .collect();
            run_theorem(
                tag,
                json!({"max_sum": bounds.generator_sum, "m": [-1, 0, 2]}),
                &specs,
                check_generator,
            )
        }
        "reciprocals" => run_theorem(
            tag,
            json!({"max_sum": bounds.reciprocals_sum}),
            &coprime_pairs(bounds.reciprocals_sum),
            |&(q, p)| check_reciprocal(q, p),
        ),
        _ => return None,
    })
}

/// Runs every theorem in [`TAGS`].
pub fn run_all(bounds: &Bounds) -> VerifyReport {
    let theorems: Vec<TheoremResult> = TAGS.iter().map(|t| run_tag(t, bounds).expect("known tag")).collect();
    let status = if theorems.iter().all(TheoremResult::passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    VerifyReport {
        format: REPORT_FORMAT.into(),
        bounds: bounds.clone(),
        status,
        theorems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(w: &str, v: &str) -> EpSeq {
        make_ep(&Word::binary(w).unwrap(), &Word::binary(v).unwrap()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle::anomaly_size(&ep("0", "11")), 2);
        assert_eq!(oracle::anomaly_size(&ep("0", "01")), 1);
        assert_eq!(oracle::anomaly_size(&ep("110", "1")), 1);
        assert_eq!(oracle::least_period(&ep("0101", "1")), 2);
        assert_eq!(oracle::least_period(&ep("110", "1").shift(5)), 3);
    }

    #[test]
    fn families() {
        assert_eq!(coprime_pairs(3), [(1, 1), (1, 2), (2, 1)]);
        assert_eq!(skew_specs(3, 0).len(), 8);
        let fam = binary_family(1, 2);
        // w in {0, 1}; v any non-constant-equal word of length <= 2.
        assert_eq!(fam.len(), 2 * (2 + 4) - 2 * 2);
        assert_eq!(random_family(7, 20, 4, 5), random_family(7, 20, 4, 5));
        assert_ne!(random_family(7, 20, 4, 5), random_family(8, 20, 4, 5));
    }

    #[test]
    fn small_report_passes() {
        let bounds = Bounds {
            max_period_word: 2,
            max_anomaly_word: 3,
            random_instances: 10,
            random_flow_pairs: 3,
            ..Bounds::default()
        }
        .capped(5);
        let report = run_all(&bounds);
        for t in &report.theorems {
            assert!(t.passed(), "{}: {:?}", t.tag, t.failures);
            assert!(t.instances > 0, "{}", t.tag);
        }
        let text = serde_json::to_string(&report).unwrap();
        let back: VerifyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn failures_carry_counterexamples() {
        let r = run_theorem("t", json!({}), &[ep("0", "1"), ep("0", "11")], |x| {
            ensure(x.anomaly().len() == 1, || "long".into())
        });
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures.len(), 1);
        let back = crate::json::epseq_from_value(r.failures[0].counterexample.clone()).unwrap();
        assert_eq!(back, ep("0", "11"));
    }
}
