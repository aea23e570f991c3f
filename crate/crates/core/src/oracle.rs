//! Ground truth at small scale: exact minimal separating DFAs by
//! enumeration, and adversarial set pairs whose residue profiles agree for
//! every small prime.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arithmetic::{primes_up_to, profile_of, IndexSet};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::words::{positions, BinaryString};

/// Default enumeration cap on the number of states.
pub const DEFAULT_S_MAX: usize = 5;

/// Largest word length `f_of_n` will enumerate all pairs for.
pub const F_OF_N_CAP: usize = 10;

/// A smallest DFA separating two words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub size: usize,
    pub witness: Dfa,
}

/// Partial transition table explored depth-first. New states are numbered
/// in order of first use, so each relabelling class is visited once.
struct Search<'a> {
    x: &'a [u8],
    y: &'a [u8],
    states: usize,
    table: Vec<[Option<usize>; 2]>,
    used: usize,
}

enum Walk {
    Done(usize),
    Missing(usize, u8),
}

impl Search<'_> {
    fn walk(&self, word: &[u8]) -> Walk {
        let mut s = 0;
        for &b in word {
            match self.table[s][b as usize] {
                Some(t) => s = t,
                None => return Walk::Missing(s, b),
            }
        }
        Walk::Done(s)
    }

    fn run(&mut self) -> Option<(usize, usize)> {
        let missing = match self.walk(self.x) {
            Walk::Missing(s, b) => (s, b),
            Walk::Done(fx) => match self.walk(self.y) {
                Walk::Missing(s, b) => (s, b),
                Walk::Done(fy) => return (fx != fy).then_some((fx, fy)),
            },
        };
        let (s, b) = missing;
        let limit = (self.used + 1).min(self.states);
        for target in 0..limit {
            self.table[s][b as usize] = Some(target);
            let saved = self.used;
            self.used = self.used.max(target + 1);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.used = saved;
        }
        self.table[s][b as usize] = None;
        None
    }
}

/// The smallest `s <= s_max` such that some `s`-state DFA accepts `x` and
/// rejects `y`, with the first witness in search order.
pub fn exact_min_dfa(x: &BinaryString, y: &BinaryString, s_max: usize) -> Result<Option<ExactResult>> {
    if x.len() != y.len() {
        return Err(Error::invalid("words must have equal length"));
    }
    if x == y {
        return Err(Error::invalid("words are equal"));
    }
    for states in 1..=s_max {
        let mut search = Search {
            x: x.bits(),
            y: y.bits(),
            states,
            table: vec![[None; 2]; states],
            used: 1,
        };
        if let Some((fx, _)) = search.run() {
            // Unused slots loop back to the start state.
            let transitions = search
                .table
                .iter()
                .map(|row| row.map(|t| t.unwrap_or(0)))
                .collect();
            let witness = Dfa::new(transitions, 0, [fx])?;
            return Ok(Some(ExactResult {
                size: states,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Every unordered pair of distinct words of length `n`, as indices `(u, v)`
/// with `u < v`.
pub fn all_pairs(n: usize) -> impl Iterator<Item = (u64, u64)> {
    let total = 1u64 << n;
    (0..total).flat_map(move |u| (u + 1..total).map(move |v| (u, v)))
}

/// `f(n)`: the worst case of [`exact_min_dfa`] over all distinct pairs.
///
/// Separation size is symmetric in the two words (complement the accept
/// set), so only unordered pairs are examined.
pub fn f_of_n(n: usize, s_max: usize) -> Result<usize> {
    if n == 0 || n > F_OF_N_CAP {
        return Err(Error::invalid(format!(
            "n = {n} outside the enumeration range 1..={F_OF_N_CAP}"
        )));
    }
    let pairs: Vec<(u64, u64)> = all_pairs(n).collect();
    pairs
        .par_iter()
        .map(|&(u, v)| {
            let x = BinaryString::from_index(u, n);
            let y = BinaryString::from_index(v, n);
            exact_min_dfa(&x, &y, s_max)?.map(|r| r.size).ok_or_else(|| {
                Error::invalid(format!("no DFA with at most {s_max} states separates {x} and {y}"))
            })
        })
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

/// Two distinct `d`-separated sets with equal residue profiles for every
/// prime up to `verified_prime_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversarialPair {
    pub a: IndexSet,
    pub b: IndexSet,
    pub separation: usize,
    pub verified_prime_bound: usize,
}

impl AdversarialPair {
    /// Direct check of every invariant.
    pub fn is_valid(&self) -> bool {
        self.a != self.b
            && self.a.is_separated(self.separation)
            && self.b.is_separated(self.separation)
            && profiles_agree(self.a.elements(), self.b.elements(), self.verified_prime_bound)
    }
}

fn profiles_agree(a: &[usize], b: &[usize], k: usize) -> bool {
    primes_up_to(k)
        .into_iter()
        .all(|p| profile_of(a, p) == profile_of(b, p))
}

/// Concatenated residue counts for all primes `<= k`.
fn profile_tuple(elements: &[usize], primes: &[usize]) -> Vec<u32> {
    let mut out = Vec::with_capacity(primes.iter().sum());
    for &p in primes {
        out.extend(profile_of(elements, p).counts.iter().map(|&c| c as u32));
    }
    out
}

/// The blocks `[2jd + 1, (2j + 1)d] ∩ [1, n]`. Picking at most one element
/// from each block yields a `d`-separated set.
fn blocks(n: usize, d: usize) -> Vec<(usize, usize)> {
    (0..)
        .map(|j| (2 * j * d + 1, ((2 * j + 1) * d).min(n)))
        .take_while(|&(lo, _)| lo <= n)
        .collect()
}

/// Draws sample number `index` of the stream for `seed`.
///
/// Each sample picks a density `2^{-u}`, `u` uniform in `0..=log2(#blocks)`,
/// and fills each block independently with that probability.
fn sample(seed: u64, index: u64, blocks: &[(usize, usize)]) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let levels = usize::BITS - blocks.len().leading_zeros();
    let density = 0.5f64.powi(rng.gen_range(0..=levels) as i32);
    blocks
        .iter()
        .filter_map(|&(lo, hi)| rng.gen_bool(density).then(|| rng.gen_range(lo..=hi)))
        .collect()
}

/// Randomized collision search over the block family for two distinct sets
/// whose residue profiles agree for all primes `<= k`.
///
/// At most `budget` samples are drawn. The result is a function of the
/// arguments alone.
pub fn adversarial_pair(
    n: usize,
    d: usize,
    k: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<AdversarialPair>> {
    if n == 0 || d == 0 || k == 0 {
        return Err(Error::invalid("n, d and k must be positive"));
    }
    let blocks = blocks(n, d);
    let primes = primes_up_to(k);
    let mut seen: HashMap<u64, u64> = HashMap::new();
    for index in 0..budget {
        let set = sample(seed, index, &blocks);
        let tuple = profile_tuple(&set, &primes);
        let mut hasher = DefaultHasher::new();
        tuple.hash(&mut hasher);
        let key = hasher.finish();
        match seen.get(&key) {
            Some(&earlier) => {
                let other = sample(seed, earlier, &blocks);
                if other != set && profile_tuple(&other, &primes) == tuple {
                    let pair = AdversarialPair {
                        a: IndexSet::new(other, n)?,
                        b: IndexSet::new(set, n)?,
                        separation: d,
                        verified_prime_bound: k,
                    };
                    debug_assert!(pair.is_valid());
                    return Ok(Some(pair));
                }
            }
            None => {
                seen.insert(key, index);
            }
        }
    }
    Ok(None)
}

/// Indicator words of the pair, shifted right by `⌊n_out / 4⌋` and padded
/// with zeros to length `n_out`.
pub fn adversarial_strings(
    pair: &AdversarialPair,
    n_out: usize,
) -> Result<(BinaryString, BinaryString)> {
    let top = pair.a.max().into_iter().chain(pair.b.max()).max().unwrap_or(0);
    if 2 * top > n_out {
        return Err(Error::invalid(format!(
            "length {n_out} leaves too little padding for elements up to {top}"
        )));
    }
    let shift = n_out / 4;
    let word = |set: &IndexSet| {
        let mut bits = vec![0u8; n_out];
        for &e in set.elements() {
            bits[e + shift - 1] = 1;
        }
        BinaryString::from_bits(bits)
    };
    Ok((word(&pair.a)?, word(&pair.b)?))
}

/// Whether every pattern of length `1..=min(w_len_max, p)` has equal class
/// sizes in `x` and `y` for every prime `p <= p_max` and residue mod `p`.
pub fn check_profile_equality(
    x: &BinaryString,
    y: &BinaryString,
    p_max: usize,
    w_len_max: usize,
) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::invalid("words must have equal length"));
    }
    let primes = primes_up_to(p_max);
    let longest = w_len_max.min(p_max).min(x.len());
    for len in 1..=longest {
        for v in 0..(1u64 << len) {
            let w = BinaryString::from_index(v, len);
            let a = positions(x, &w)?.into_positions();
            let b = positions(y, &w)?.into_positions();
            for &p in primes.iter().filter(|&&p| p >= len) {
                if profile_of(&a, p) != profile_of(&b, p) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
