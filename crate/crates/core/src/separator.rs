//! End-to-end construction of a DFA that accepts `x` and rejects `y`.
//!
//! Three modes are available:
//!
//! * [`Mode::Paper`]: if the words differ within the first `2t` symbols
//!   (`t = ⌈n^{1/3}⌉`) a prefix acceptor suffices. Otherwise an aperiodic
//!   window `w` of length `2t` ending at the first mismatch is chosen, the
//!   smallest prime `p >= |w|` with a residue class where the occurrence
//!   counts of `w` differ is located, and a small prime `q` separates those
//!   two counts. The result has `2pq` states.
//! * [`Mode::Baseline`]: the same counting machine on the pattern `1`,
//!   with primes scanned from 2.
//! * [`Mode::Optimize`]: starts from the paper-mode machine and searches
//!   shorter windows, smaller (possibly composite) moduli and the prefix
//!   acceptor for anything cheaper.
//!
//! Every returned DFA is re-run on both words before it is handed back.

use std::fmt;
use std::str::FromStr;

use crate::arithmetic::{is_prime, primes_between, profile_of, separating_prime_of};
use crate::automata::{build_counting_machine, build_prefix_acceptor, CountingMachineSpec, Dfa};
use crate::cube_root_ceil;
use crate::error::{Error, Result};
use crate::words::{first_difference, positions, select_window, BinaryString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Paper,
    Baseline,
    Optimize,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Paper, Mode::Baseline, Mode::Optimize];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Paper => "paper",
            Mode::Baseline => "baseline",
            Mode::Optimize => "optimize",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "baseline" => Ok(Mode::Baseline),
            "optimize" => Ok(Mode::Optimize),
            other => Err(Error::invalid(format!("unknown mode `{other}`"))),
        }
    }
}

/// Search caps. `None` means the default for the word length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SeparatorConfig {
    pub p_max: Option<usize>,
    pub q_max: Option<usize>,
}

impl SeparatorConfig {
    /// `max(64, ⌈10 n^{1/3} (ln n)^6⌉)`.
    pub fn default_p_max(n: usize) -> usize {
        let nf = n.max(1) as f64;
        let bound = (10.0 * nf.cbrt() * nf.ln().powi(6)).ceil();
        if bound >= usize::MAX as f64 {
            usize::MAX
        } else {
            (bound as usize).max(64)
        }
    }

    /// `max(64, ⌈10 ln(n + 2)⌉)`.
    pub fn default_q_max(n: usize) -> usize {
        ((10.0 * ((n + 2) as f64).ln()).ceil() as usize).max(64)
    }

    pub fn p_max_for(&self, n: usize) -> usize {
        self.p_max.unwrap_or_else(|| Self::default_p_max(n))
    }

    pub fn q_max_for(&self, n: usize) -> usize {
        self.q_max.unwrap_or_else(|| Self::default_q_max(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Accepts every word beginning with `prefix`, a prefix of `x` but not `y`.
    Prefix { prefix: BinaryString },
    /// Counts occurrences of `spec.pattern` at positions `≡ spec.residue`.
    Counting {
        spec: CountingMachineSpec,
        /// First index where the words differ.
        first_difference: usize,
        /// Class size for the accepted word, `≡ spec.target (mod q)`.
        accepted_count: usize,
        rejected_count: usize,
        modulus_prime: bool,
    },
}

/// How a separating DFA was built, and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Mode,
    pub kind: CertificateKind,
    pub states: usize,
    pub verified: bool,
}

impl Certificate {
    /// Recomputes the occurrence counts from the certificate fields alone and
    /// checks them against the recorded values.
    pub fn recheck(&self, x: &BinaryString, y: &BinaryString) -> bool {
        match &self.kind {
            CertificateKind::Prefix { prefix } => {
                let k = prefix.len();
                k <= x.len()
                    && x.factor(1, k) == *prefix
                    && y.factor(1, k) != *prefix
                    && self.states == k + 2
            }
            CertificateKind::Counting {
                spec,
                accepted_count,
                rejected_count,
                ..
            } => {
                let class = |word: &BinaryString| {
                    positions(word, &spec.pattern).map(|set| {
                        set.positions()
                            .iter()
                            .filter(|&&j| j % spec.modulus == spec.residue)
                            .count()
                    })
                };
                let (Ok(cx), Ok(cy)) = (class(x), class(y)) else {
                    return false;
                };
                cx == *accepted_count
                    && cy == *rejected_count
                    && cx % spec.count_prime == spec.target
                    && cy % spec.count_prime != spec.target
                    && self.states == spec.state_count()
            }
        }
    }

    /// Key-value text block, one `key: value` per line.
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("mode: {}", self.mode)];
        match &self.kind {
            CertificateKind::Prefix { prefix } => {
                lines.push("variant: prefix".into());
                lines.push(format!("prefix: {prefix}"));
            }
            CertificateKind::Counting {
                spec,
                first_difference,
                accepted_count,
                rejected_count,
                modulus_prime,
            } => {
                lines.push("variant: counting".into());
                lines.push(format!("w: {}", spec.pattern));
                lines.push(format!("m: {}", spec.modulus));
                lines.push(format!("i: {}", spec.residue));
                lines.push(format!("q: {}", spec.count_prime));
                lines.push(format!("a: {}", spec.target));
                lines.push(format!("k: {first_difference}"));
                lines.push(format!("accepted_count: {accepted_count}"));
                lines.push(format!("rejected_count: {rejected_count}"));
                lines.push(format!("modulus_prime: {modulus_prime}"));
            }
        }
        lines.push(format!("states: {}", self.states));
        lines.push(format!("verified: {}", self.verified));
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

/// A separating DFA with its certificate.
#[derive(Clone, Debug)]
pub struct Separation {
    pub dfa: Dfa,
    pub certificate: Certificate,
}

pub fn verify(dfa: &Dfa, x: &BinaryString, y: &BinaryString) -> bool {
    dfa.run(x) && !dfa.run(y)
}

/// `⌈k · n^{1/3} · (ln n)^7⌉`, the reporting curve for dashboards.
pub fn state_bound(n: usize, k: f64) -> u64 {
    let nf = n as f64;
    (k * nf.cbrt() * nf.ln().powi(7)).ceil().max(0.0) as u64
}

/// Builds a DFA accepting `x` and rejecting `y` with the default caps.
pub fn separate(x: &BinaryString, y: &BinaryString, mode: Mode) -> Result<Separation> {
    separate_with(x, y, mode, &SeparatorConfig::default())
}

pub fn separate_with(
    x: &BinaryString,
    y: &BinaryString,
    mode: Mode,
    config: &SeparatorConfig,
) -> Result<Separation> {
    if x.is_empty() {
        return Err(Error::invalid("words must be non-empty"));
    }
    let k = first_difference(x, y)?.ok_or_else(|| Error::invalid("words are equal"))?;
    let candidate = match mode {
        Mode::Paper => paper(x, y, k, config)?,
        Mode::Baseline => baseline(x, y, k, config)?,
        Mode::Optimize => optimize(x, y, k, config)?,
    };
    finish(candidate, mode, x, y)
}

struct Candidate {
    dfa: Dfa,
    kind: CertificateKind,
}

fn finish(candidate: Candidate, mode: Mode, x: &BinaryString, y: &BinaryString) -> Result<Separation> {
    let verified = verify(&candidate.dfa, x, y);
    if !verified {
        return Err(Error::contradiction(format!(
            "{mode} construction failed to separate {x} from {y}"
        )));
    }
    let certificate = Certificate {
        mode,
        kind: candidate.kind,
        states: candidate.dfa.state_count(),
        verified,
    };
    Ok(Separation {
        dfa: candidate.dfa,
        certificate,
    })
}

fn prefix_candidate(x: &BinaryString, k: usize) -> Result<Candidate> {
    let prefix = x.factor(1, k);
    Ok(Candidate {
        dfa: build_prefix_acceptor(&prefix)?,
        kind: CertificateKind::Prefix { prefix },
    })
}

fn class_size(set: &[usize], modulus: usize, residue: usize) -> usize {
    set.iter().filter(|&&j| j % modulus == residue).count()
}

fn counting_candidate(
    pattern: BinaryString,
    modulus: usize,
    residue: usize,
    count_prime: usize,
    accepted_count: usize,
    rejected_count: usize,
    first_difference: usize,
) -> Result<Candidate> {
    let spec = CountingMachineSpec {
        modulus,
        residue,
        count_prime,
        target: accepted_count % count_prime,
        pattern,
    };
    let dfa = build_counting_machine(&spec)?;
    Ok(Candidate {
        dfa,
        kind: CertificateKind::Counting {
            spec,
            first_difference,
            accepted_count,
            rejected_count,
            modulus_prime: is_prime(modulus as u64),
        },
    })
}

/// Separating prime search over the two occurrence sets, then the count prime.
fn count_with_prime_modulus(
    x: &BinaryString,
    y: &BinaryString,
    pattern: BinaryString,
    p_min: usize,
    k: usize,
    config: &SeparatorConfig,
) -> Result<Candidate> {
    let n = x.len();
    let a = positions(x, &pattern)?.into_positions();
    let b = positions(y, &pattern)?.into_positions();
    let p_max = config.p_max_for(n);
    let (p, i) = separating_prime_of(&a, &b, p_min, p_max).ok_or_else(|| {
        Error::contradiction(format!(
            "no prime in [{p_min}, {p_max}] separates the occurrence sets of {pattern}"
        ))
    })?;
    let ca = class_size(&a, p, i);
    let cb = class_size(&b, p, i);
    let q_max = config.q_max_for(n);
    let q = primes_between(2, q_max)
        .find(|&q| ca % q != cb % q)
        .ok_or_else(|| {
            Error::contradiction(format!("no prime up to {q_max} separates counts {ca} and {cb}"))
        })?;
    counting_candidate(pattern, p, i, q, ca, cb, k)
}

fn paper(x: &BinaryString, y: &BinaryString, k: usize, config: &SeparatorConfig) -> Result<Candidate> {
    let t = cube_root_ceil(x.len());
    if k < 2 * t {
        return prefix_candidate(x, k);
    }
    let window = select_window(x, y, t)?;
    let p_min = window.w.len();
    count_with_prime_modulus(x, y, window.w, p_min, k, config)
}

fn baseline(
    x: &BinaryString,
    y: &BinaryString,
    k: usize,
    config: &SeparatorConfig,
) -> Result<Candidate> {
    let one = BinaryString::from_bools([true]);
    count_with_prime_modulus(x, y, one, 2, k, config)
}

fn optimize(
    x: &BinaryString,
    y: &BinaryString,
    k: usize,
    config: &SeparatorConfig,
) -> Result<Candidate> {
    let mut best = paper(x, y, k, config)?;
    let mut best_states = best.dfa.state_count();
    if k + 2 < best_states {
        best = prefix_candidate(x, k)?;
        best_states = k + 2;
    }
    let q_max = config.q_max_for(x.len());

    // Windows ending at the first mismatch always have differing occurrence
    // sets: exactly one word has an occurrence at k - l + 1.
    let mut l = 1;
    while l <= k && 4 * l < best_states {
        for source in [x, y] {
            let pattern = source.factor(k + 1 - l, k);
            let a = positions(x, &pattern)?.into_positions();
            let b = positions(y, &pattern)?.into_positions();
            let mut m = l;
            while 4 * m < best_states {
                let pa = profile_of(&a, m);
                let pb = profile_of(&b, m);
                for i in 0..m {
                    let (ca, cb) = (pa.counts[i], pb.counts[i]);
                    if ca == cb {
                        continue;
                    }
                    let cheapest = primes_between(2, q_max)
                        .take_while(|&q| 2 * m * q < best_states)
                        .find(|&q| ca % q != cb % q);
                    if let Some(q) = cheapest {
                        best = counting_candidate(pattern.clone(), m, i, q, ca, cb, k)?;
                        best_states = 2 * m * q;
                    }
                }
                m += 1;
            }
        }
        l += 1;
    }
    Ok(best)
}
