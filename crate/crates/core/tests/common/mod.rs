//! Independent oracles. Everything here reads sequences only through
//! `symbol_at` and code tables, never through the window search under test.

#![allow(dead_code)]

use std::collections::HashMap;

use subshift_core::words::Symbol;
use subshift_core::{EpSeq, SlidingBlockCode, SturmianType};

/// Every `(a, b)` with `0 <= a < q`, `0 < b <= p`, `b·q − a·p = 1`.
pub fn bezout_search(q: u64, p: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 1..=p {
            if b as i128 * q as i128 - a as i128 * p as i128 == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn materialize(x: &EpSeq, lo: i64, hi: i64) -> Vec<Symbol> {
    (lo..=hi).map(|k| x.symbol_at(k)).collect()
}

fn margin(x: &EpSeq) -> i64 {
    (x.anomaly().len() + 8 * x.period().len() + 4) as i64
}

/// Least period of the left tail, by direct comparison.
pub fn tail_period(x: &EpSeq) -> usize {
    let m = margin(x);
    let lo = x.offset() - 2 * m;
    let tail = materialize(x, lo, x.offset() - 1);
    (1..tail.len())
        .find(|&d| tail.iter().zip(&tail[d..]).all(|(a, b)| a == b))
        .unwrap_or(tail.len())
}

/// `y` on `[lo, hi]` where `y_k = x_k` for `k < s` and `x_{k+len}` otherwise.
pub fn removal(x: &EpSeq, s: i64, len: usize, lo: i64, hi: i64) -> Vec<Symbol> {
    (lo..=hi)
        .map(|k| {
            if k < s {
                x.symbol_at(k)
            } else {
                x.symbol_at(k + len as i64)
            }
        })
        .collect()
}

/// Range on which a removal is compared: both tails reach well past every
/// position the anomaly or the window can touch.
pub fn removal_range(x: &EpSeq, s: i64) -> (i64, i64) {
    let m = margin(x);
    (s.min(x.offset()) - m, s.max(x.offset()) + x.anomaly().len() as i64 + m)
}

pub fn removal_is_periodic(x: &EpSeq, s: i64, len: usize) -> bool {
    let n = tail_period(x);
    let (lo, hi) = removal_range(x, s);
    let ys = removal(x, s, len, lo, hi);
    let word = &ys[..n];
    ys.iter().enumerate().all(|(i, y)| *y == word[i % n])
}

/// Minimal removable length; every `L <= |v|` and a wide range of starts.
pub fn brute_anomaly_size(x: &EpSeq) -> usize {
    let n = tail_period(x) as i64;
    let v = x.anomaly().len();
    for len in 1..=v {
        let l = len as i64;
        for s in x.offset() - l - 4 * n..=x.offset() + v as i64 + 4 * n {
            if removal_is_periodic(x, s, len) {
                return len;
            }
        }
    }
    panic!("no removable window for {x}")
}

/// All removable windows of length `<= |v|` over the wide range.
pub fn brute_windows(x: &EpSeq, extra: i64) -> Vec<(i64, usize)> {
    let n = tail_period(x) as i64;
    let v = x.anomaly().len();
    let mut out = Vec::new();
    for len in 1..=v {
        let l = len as i64;
        for s in x.offset() - l - 2 * n - extra..=x.offset() + v as i64 + 2 * n + extra {
            if removal_is_periodic(x, s, len) {
                out.push((s, len));
            }
        }
    }
    out
}

#[derive(Default)]
pub struct Brute {
    memo: HashMap<EpSeq, (usize, usize)>,
}

impl Brute {
    pub fn invariants(&mut self, x: &EpSeq) -> (usize, usize) {
        if let Some(v) = self.memo.get(x) {
            return *v;
        }
        let v = (tail_period(x), brute_anomaly_size(x));
        self.memo.insert(x.clone(), v);
        v
    }
}

/// Zeros of cell `B_n` by listing the points `m + k·p/q` near the cell.
pub fn lattice_zeros(q: u64, p: u64, m: i64, n: i64, stype: SturmianType) -> usize {
    let (q, p, m, n) = (q as i128, p as i128, m as i128, n as i128);
    let k_lo = ((n - m) * q).div_euclid(p) - 2;
    let k_hi = ((n + 1 - m) * q).div_euclid(p) + 2;
    (k_lo..=k_hi)
        .filter(|k| {
            // q·x = q·m + k·p, compared against q·n and q·(n + 1).
            let qx = q * m + k * p;
            let (a, b) = (q * n, q * (n + 1));
            let (open_lo, open_hi) = (a < qx, qx < b);
            let (closed_lo, closed_hi) = (a <= qx, qx <= b);
            match (stype, n.cmp(&m)) {
                (SturmianType::S, std::cmp::Ordering::Less) => open_lo && closed_hi,
                (SturmianType::S, std::cmp::Ordering::Equal) => open_lo && open_hi,
                (SturmianType::S, std::cmp::Ordering::Greater) => closed_lo && open_hi,
                (SturmianType::SPrime, std::cmp::Ordering::Less) => closed_lo && open_hi,
                (SturmianType::SPrime, std::cmp::Ordering::Equal) => closed_lo && closed_hi,
                (SturmianType::SPrime, std::cmp::Ordering::Greater) => open_lo && closed_hi,
            }
        })
        .count()
}

/// Some `k` with `x_{i+k} = y_i` for all `i`, by window comparison.
pub fn window_shift(x: &EpSeq, y: &EpSeq) -> Option<i64> {
    if tail_period(x) != tail_period(y) {
        return None;
    }
    let n = tail_period(x) as i64;
    let (vx, vy) = (x.anomaly().len() as i64, y.anomaly().len() as i64);
    let reach = (x.offset() - y.offset()).abs() + vx + vy + 2 * n;
    (-reach..=reach).find(|&k| {
        let lo = y.offset().min(x.offset() - k) - 2 * n - 1;
        let hi = (y.offset() + vy).max(x.offset() - k + vx) + 2 * n + 1;
        (lo..=hi).all(|i| x.symbol_at(i + k) == y.symbol_at(i))
    })
}

/// `Φ` applied symbolwise on `[lo, hi]` of a materialised sequence `xs`
/// whose first entry is index `base`.
pub fn apply_table(code: &SlidingBlockCode, xs: &[Symbol], base: i64, lo: i64, hi: i64) -> Option<Vec<Symbol>> {
    let (m, a) = (code.memory() as i64, code.anticipation() as i64);
    (lo..=hi)
        .map(|i| {
            let from = (i - m - base) as usize;
            let to = (i + a - base) as usize;
            code.table().get(&xs[from..=to]).copied()
        })
        .collect()
}

/// Some `k` with `zs[i] = reference(i + k)` for every `i`.
pub fn aligns_with(zs: &[Symbol], lo: i64, reference: &EpSeq, reach: i64) -> Option<i64> {
    (-reach..=reach).find(|&k| {
        zs.iter()
            .enumerate()
            .all(|(j, z)| reference.symbol_at(lo + j as i64 + k) == *z)
    })
}
