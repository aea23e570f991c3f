//! Reproducible batch runs behind the `growth`, `oracle` and `littlewood`
//! commands. Every function here is a pure function of its arguments; all
//! randomness comes from a ChaCha8 stream seeded by the caller.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sepwords_core::arithmetic::IndexSet;
use sepwords_core::littlewood::{self, Evaluate, OrderCheck};
use sepwords_core::oracle::{all_pairs, exact_min_dfa};
use sepwords_core::separator::{separate_with, state_bound, verify, Mode, SeparatorConfig};
use sepwords_core::{cube_root_ceil, BinaryString, Error, Result};

use crate::output::csv;

/// Name recorded in artifact metadata for the generator behind every seed.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64)";

/// Constant in the dashboard curve `K n^{1/3} (ln n)^7`.
pub const BOUND_CONSTANT: f64 = 10.0;

pub fn random_word(rng: &mut ChaCha8Rng, n: usize) -> BinaryString {
    BinaryString::from_bools((0..n).map(|_| rng.gen_bool(0.5)))
}

/// Two independent uniform words, redrawn until distinct.
pub fn uniform_pair(rng: &mut ChaCha8Rng, n: usize) -> (BinaryString, BinaryString) {
    loop {
        let x = random_word(rng, n);
        let y = random_word(rng, n);
        if x != y {
            return (x, y);
        }
    }
}

/// A uniform `x`, and a `y` that agrees with it before a uniform position
/// `k`, differs at `k` and is uniform afterwards.
pub fn late_pair(rng: &mut ChaCha8Rng, n: usize) -> (BinaryString, BinaryString) {
    let x = random_word(rng, n);
    let k = rng.gen_range(1..=n);
    let mut bits = x.bits().to_vec();
    bits[k - 1] ^= 1;
    for b in bits.iter_mut().skip(k) {
        *b = rng.gen_range(0..2);
    }
    let y = BinaryString::from_bits(bits).expect("bits are binary");
    (x, y)
}

/// A `d`-separated subset of `[1, n]`: scan left to right, take each
/// candidate with probability `density`, and skip `d` after every pick.
pub fn random_separated_set(rng: &mut ChaCha8Rng, n: usize, d: usize, density: f64) -> IndexSet {
    let mut elements = Vec::new();
    let mut next = 1;
    while next <= n {
        if rng.gen_bool(density) {
            elements.push(next);
            next += d.max(1);
        } else {
            next += 1;
        }
    }
    IndexSet::new(elements, n).expect("increasing and in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub pair: usize,
    pub first_difference: usize,
    /// States for paper, baseline and optimize mode, in that order.
    pub states: [usize; 3],
    pub bound: u64,
    pub verified: bool,
}

/// Separates `pairs` late-differing pairs at every length in all three
/// modes.
pub fn growth(
    lengths: &[usize],
    pairs: usize,
    seed: u64,
    config: &SeparatorConfig,
) -> Result<Vec<GrowthRow>> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut jobs = Vec::new();
    for &n in lengths {
        if n == 0 {
            return Err(Error::InvalidArgument("lengths must be positive".into()));
        }
        for pair in 0..pairs {
            let (x, y) = late_pair(&mut rng, n);
            jobs.push((n, pair, x, y));
        }
    }
    jobs.par_iter()
        .map(|(n, pair, x, y)| {
            let mut states = [0; 3];
            let mut verified = true;
            for (slot, mode) in Mode::ALL.into_iter().enumerate() {
                let s = separate_with(x, y, mode, config)?;
                verified &= verify(&s.dfa, x, y) && s.certificate.verified;
                states[slot] = s.certificate.states;
            }
            let first_difference = x
                .bits()
                .iter()
                .zip(y.bits())
                .position(|(a, b)| a != b)
                .map_or(0, |k| k + 1);
            Ok(GrowthRow {
                n: *n,
                pair: *pair,
                first_difference,
                states,
                bound: state_bound(*n, BOUND_CONSTANT),
                verified,
            })
        })
        .collect()
}

pub fn growth_csv(rows: &[GrowthRow]) -> String {
    csv(
        &[
            "n",
            "pair",
            "k",
            "paper_states",
            "baseline_states",
            "optimize_states",
            "state_bound",
            "verified",
        ],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.pair.to_string(),
                r.first_difference.to_string(),
                r.states[0].to_string(),
                r.states[1].to_string(),
                r.states[2].to_string(),
                r.bound.to_string(),
                r.verified.to_string(),
            ]
        }),
    )
}

/// Least-squares slope of `ln(mean states)` against `ln n` for one mode.
pub fn fitted_exponent(rows: &[GrowthRow], mode: Mode) -> Option<f64> {
    let slot = Mode::ALL.iter().position(|&m| m == mode)?;
    let mut lengths: Vec<usize> = rows.iter().map(|r| r.n).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let points: Vec<(f64, f64)> = lengths
        .iter()
        .map(|&n| {
            let sel: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.states[slot] as f64)
                .collect();
            let mean = sel.iter().sum::<f64>() / sel.len() as f64;
            ((n as f64).ln(), mean.ln())
        })
        .collect();
    if points.len() < 2 {
        return None;
    }
    let count = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / count;
    let my = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub n: usize,
    pub pair: usize,
    pub x: BinaryString,
    pub y: BinaryString,
    pub exact: usize,
    /// Pipeline states for paper, baseline and optimize mode.
    pub pipeline: [usize; 3],
}

/// Exact minimal separator sizes next to the pipeline sizes, for every
/// unordered pair of distinct words of length `n`.
pub fn oracle_table(n: usize, s_max: usize, config: &SeparatorConfig) -> Result<Vec<OracleRow>> {
    if n == 0 || n > sepwords_core::oracle::F_OF_N_CAP {
        return Err(Error::InvalidArgument(format!(
            "n = {n} outside 1..={}",
            sepwords_core::oracle::F_OF_N_CAP
        )));
    }
    let pairs: Vec<(u64, u64)> = all_pairs(n).collect();
    pairs
        .par_iter()
        .enumerate()
        .map(|(pair, &(u, v))| {
            let x = BinaryString::from_index(u, n);
            let y = BinaryString::from_index(v, n);
            let exact = exact_min_dfa(&x, &y, s_max)?
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "no DFA with at most {s_max} states separates {x} and {y}"
                    ))
                })?
                .size;
            let mut pipeline = [0; 3];
            for (slot, mode) in Mode::ALL.into_iter().enumerate() {
                pipeline[slot] = separate_with(&x, &y, mode, config)?.certificate.states;
            }
            Ok(OracleRow {
                n,
                pair,
                x,
                y,
                exact,
                pipeline,
            })
        })
        .collect()
}

pub fn oracle_csv(rows: &[OracleRow]) -> String {
    csv(
        &["n", "pair", "x", "y", "exact", "paper", "baseline", "optimize"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.pair.to_string(),
                r.x.to_string(),
                r.y.to_string(),
                r.exact.to_string(),
                r.pipeline[0].to_string(),
                r.pipeline[1].to_string(),
                r.pipeline[2].to_string(),
            ]
        }),
    )
}

pub fn order_checks(k_max: u32, grid: usize) -> Result<Vec<OrderCheck>> {
    (1..=k_max)
        .into_par_iter()
        .map(|k| littlewood::check_order_bound(k, grid))
        .collect()
}

pub fn order_csv(rows: &[OrderCheck]) -> String {
    csv(
        &["k", "n", "lo", "lhs", "rhs", "ok"],
        rows.iter().map(|c| {
            vec![
                c.k.to_string(),
                c.n.to_string(),
                format!("{:.17e}", c.lo),
                format!("{:.17e}", c.lhs),
                format!("{:.17e}", c.rhs),
                c.ok.to_string(),
            ]
        }),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct LittlewoodRow {
    pub n: usize,
    pub sigma: u8,
    pub d: usize,
    pub tail: usize,
    pub lo: f64,
    pub hi: f64,
    pub max: f64,
    pub grid: usize,
}

/// Random pairs of distinct `⌈n^{1/3}⌉`-separated sets, turned into
/// normalized difference polynomials and maximized on `[1 - n^{-2/3}, 1]`.
pub fn littlewood_rows(n: usize, count: usize, seed: u64, grid: usize) -> Result<Vec<LittlewoodRow>> {
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let t = cube_root_ceil(n);
    let mut polys = Vec::with_capacity(count);
    while polys.len() < count {
        let a = random_separated_set(&mut rng, n, t, 0.3);
        let b = random_separated_set(&mut rng, n, t, 0.3);
        if a != b {
            polys.push(littlewood::from_set_pair(&a, &b)?);
        }
    }
    let (lo, hi) = littlewood::unit_interval_near_one(n);
    polys
        .par_iter()
        .map(|p| {
            let max = littlewood::eval_max_on_interval(p as &dyn Evaluate, lo, hi, grid)?;
            Ok(LittlewoodRow {
                n,
                sigma: p.sigma(),
                d: p.d.unwrap_or(0),
                tail: p.tail.len(),
                lo,
                hi,
                max: max.value,
                grid,
            })
        })
        .collect()
}

pub fn littlewood_csv(rows: &[LittlewoodRow]) -> String {
    csv(
        &["n", "sigma", "d", "tail_size", "lo", "hi", "max", "grid"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.sigma.to_string(),
                r.d.to_string(),
                r.tail.to_string(),
                format!("{:.17e}", r.lo),
                format!("{:.17e}", r.hi),
                format!("{:.17e}", r.max),
                r.grid.to_string(),
            ]
        }),
    )
}
