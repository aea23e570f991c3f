//! DFAs over `{0, 1}`: simulation, the residue-counting machine, prefix
//! acceptors, minimization, and the plain-text and DOT formats.
//!
//! States are 0-based in the Rust API. The text and DOT formats number
//! states from 1.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::arithmetic::is_prime;
use crate::error::{Error, Result};
use crate::words::BinaryString;

/// A complete DFA over the binary alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    transitions: Vec<[usize; 2]>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    /// `transitions[s][b]` is the successor of state `s` on bit `b`.
    pub fn new(
        transitions: Vec<[usize; 2]>,
        start: usize,
        accept: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        if start >= n {
            return Err(Error::invalid(format!("start state {start} out of range")));
        }
        if let Some((s, row)) = transitions
            .iter()
            .enumerate()
            .find(|(_, row)| row.iter().any(|&t| t >= n))
        {
            return Err(Error::invalid(format!(
                "state {s} has out-of-range targets {row:?}"
            )));
        }
        let mut accepting = vec![false; n];
        for a in accept {
            if a >= n {
                return Err(Error::invalid(format!("accept state {a} out of range")));
            }
            accepting[a] = true;
        }
        Ok(Self {
            transitions,
            start,
            accepting,
        })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn step(&self, state: usize, bit: u8) -> usize {
        self.transitions[state][bit as usize]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accept_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(s, &a)| a.then_some(s))
    }

    pub fn transitions(&self) -> &[[usize; 2]] {
        &self.transitions
    }

    /// State reached after reading `bits` from the start state.
    pub fn final_state(&self, bits: &[u8]) -> usize {
        bits.iter().fold(self.start, |s, &b| self.step(s, b))
    }

    pub fn run(&self, x: &BinaryString) -> bool {
        self.accepting[self.final_state(x.bits())]
    }

    /// Same transitions, accept set flipped.
    pub fn complement(&self) -> Dfa {
        Dfa {
            transitions: self.transitions.clone(),
            start: self.start,
            accepting: self.accepting.iter().map(|a| !a).collect(),
        }
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for t in self.transitions[s] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// The minimal equivalent DFA, states numbered in breadth-first order
    /// from the start state.
    pub fn minimize(&self) -> Dfa {
        let order = self.reachable();
        let mut index = vec![usize::MAX; self.state_count()];
        for (k, &s) in order.iter().enumerate() {
            index[s] = k;
        }
        let trans: Vec<[usize; 2]> = order
            .iter()
            .map(|&s| self.transitions[s].map(|t| index[t]))
            .collect();
        let accepting: Vec<bool> = order.iter().map(|&s| self.accepting[s]).collect();

        // Moore refinement: split by (class, class of 0-successor, class of 1-successor).
        let mut class: Vec<usize> = accepting.iter().map(|&a| usize::from(a)).collect();
        let mut class_count = 0;
        loop {
            let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let next: Vec<usize> = (0..trans.len())
                .map(|s| {
                    let key = (class[s], class[trans[s][0]], class[trans[s][1]]);
                    let fresh = ids.len();
                    *ids.entry(key).or_insert(fresh)
                })
                .collect();
            let count = ids.len();
            class = next;
            if count == class_count {
                break;
            }
            class_count = count;
        }

        // Renumber classes breadth-first from the start class.
        let mut rep = vec![usize::MAX; class_count];
        for (s, &c) in class.iter().enumerate().rev() {
            rep[c] = s;
        }
        let mut new_id = vec![usize::MAX; class_count];
        let mut queue = VecDeque::from([class[0]]);
        new_id[class[0]] = 0;
        let mut ordered = vec![class[0]];
        while let Some(c) = queue.pop_front() {
            for t in trans[rep[c]] {
                let tc = class[t];
                if new_id[tc] == usize::MAX {
                    new_id[tc] = ordered.len();
                    ordered.push(tc);
                    queue.push_back(tc);
                }
            }
        }
        let transitions = ordered
            .iter()
            .map(|&c| trans[rep[c]].map(|t| new_id[class[t]]))
            .collect();
        let accepting = ordered.iter().map(|&c| accepting[rep[c]]).collect();
        Dfa {
            transitions,
            start: 0,
            accepting,
        }
    }

    /// Language equivalence by a search of the product automaton.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        let mut seen = HashMap::new();
        let mut queue = VecDeque::from([(self.start, other.start)]);
        seen.insert((self.start, other.start), ());
        while let Some((a, b)) = queue.pop_front() {
            if self.accepting[a] != other.accepting[b] {
                return false;
            }
            for bit in 0..2u8 {
                let pair = (self.step(a, bit), other.step(b, bit));
                if seen.insert(pair, ()).is_none() {
                    queue.push_back(pair);
                }
            }
        }
        true
    }

    /// Plain-text serialization:
    ///
    /// ```text
    /// states N
    /// start S
    /// accept a1 a2 ...
    /// <state> <target-on-0> <target-on-1>     (N lines)
    /// ```
    ///
    /// All state numbers are 1-based and the accept list is sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states {}", self.state_count());
        let _ = writeln!(out, "start {}", self.start + 1);
        out.push_str("accept");
        for a in self.accept_states() {
            let _ = write!(out, " {}", a + 1);
        }
        out.push('\n');
        for (s, [t0, t1]) in self.transitions.iter().enumerate() {
            let _ = writeln!(out, "{} {} {}", s + 1, t0 + 1, t1 + 1);
        }
        out
    }

    /// Graphviz rendering; accept states are drawn as double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  __start [shape=point, label=\"\"];\n");
        for s in 0..self.state_count() {
            let shape = if self.accepting[s] {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {} [shape={shape}];", s + 1);
        }
        let _ = writeln!(out, "  __start -> {};", self.start + 1);
        for (s, [t0, t1]) in self.transitions.iter().enumerate() {
            if t0 == t1 {
                let _ = writeln!(out, "  {} -> {} [label=\"0,1\"];", s + 1, t0 + 1);
            } else {
                let _ = writeln!(out, "  {} -> {} [label=\"0\"];", s + 1, t0 + 1);
                let _ = writeln!(out, "  {} -> {} [label=\"1\"];", s + 1, t1 + 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

impl FromStr for Dfa {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Malformed(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<Vec<usize>> {
            let line = lines
                .next()
                .ok_or_else(|| bad(format!("missing `{key}` line")))?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some(key) {
                return Err(bad(format!("expected `{key}`, found `{line}`")));
            }
            parts
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| bad(format!("bad number `{p}` in `{line}`")))
                })
                .collect()
        };
        let states = match header("states")?.as_slice() {
            [n] if *n >= 1 => *n,
            _ => return Err(bad("`states` takes one positive count".into())),
        };
        let start = match header("start")?.as_slice() {
            [s] => *s,
            _ => return Err(bad("`start` takes one state".into())),
        };
        let accept = header("accept")?;
        let one_based = |v: usize| -> Result<usize> {
            if (1..=states).contains(&v) {
                Ok(v - 1)
            } else {
                Err(bad(format!("state {v} out of range 1..={states}")))
            }
        };
        let mut transitions = vec![None; states];
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|p| p.parse().map_err(|_| bad(format!("bad row `{line}`"))))
                .collect::<Result<_>>()?;
            let [s, t0, t1] = nums[..] else {
                return Err(bad(format!("row `{line}` needs three numbers")));
            };
            let s = one_based(s)?;
            if transitions[s].is_some() {
                return Err(bad(format!("state {} listed twice", s + 1)));
            }
            transitions[s] = Some([one_based(t0)?, one_based(t1)?]);
        }
        let transitions = transitions
            .into_iter()
            .enumerate()
            .map(|(s, row)| row.ok_or_else(|| bad(format!("state {} has no row", s + 1))))
            .collect::<Result<Vec<_>>>()?;
        let accept = accept
            .into_iter()
            .map(one_based)
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(transitions, one_based(start)?, accept)
    }
}

/// Parameters of the residue-counting machine: count occurrences of
/// `pattern` starting at positions `≡ residue (mod modulus)`, and accept when
/// that count is `≡ target (mod count_prime)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingMachineSpec {
    pub modulus: usize,
    pub residue: usize,
    pub count_prime: usize,
    pub target: usize,
    pub pattern: BinaryString,
}

impl CountingMachineSpec {
    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if self.residue >= self.modulus {
            return Err(Error::invalid(format!(
                "residue {} not below modulus {}",
                self.residue, self.modulus
            )));
        }
        if !is_prime(self.count_prime as u64) {
            return Err(Error::invalid(format!(
                "count modulus {} is not prime",
                self.count_prime
            )));
        }
        if self.target >= self.count_prime {
            return Err(Error::invalid(format!(
                "target {} not below {}",
                self.target, self.count_prime
            )));
        }
        if self.pattern.is_empty() || self.pattern.len() > self.modulus {
            return Err(Error::invalid(format!(
                "pattern length {} must lie in 1..={}",
                self.pattern.len(),
                self.modulus
            )));
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        2 * self.modulus * self.count_prime
    }
}

/// Builds the `2mq`-state machine on `ℤ_m × {0,1} × ℤ_q`.
///
/// A state `(j, flag, s)` is about to read the symbol at a position `≡ j
/// (mod m)`; `flag` marks a candidate occurrence that started at a position
/// `≡ i`, and `s` is the running count mod `q`. Every state is kept, reachable
/// or not.
pub fn build_counting_machine(spec: &CountingMachineSpec) -> Result<Dfa> {
    spec.validate()?;
    let m = spec.modulus;
    let q = spec.count_prime;
    let i = spec.residue;
    let w = spec.pattern.bits();
    let l = w.len();
    let id = |j: usize, flag: usize, s: usize| (j * 2 + flag) * q + s;

    let mut transitions = vec![[0; 2]; 2 * m * q];
    for j in 0..m {
        let next = (j + 1) % m;
        // offset into w of the symbol read at this position, for flagged states
        let offset = (j + m - i) % m;
        for s in 0..q {
            let bump = (s + 1) % q;
            for flag in 0..2 {
                let row = &mut transitions[id(j, flag, s)];
                for bit in 0..2u8 {
                    row[bit as usize] = if l == 1 {
                        if j == i && bit == w[0] {
                            id(next, 0, bump)
                        } else {
                            id(next, 0, s)
                        }
                    } else if flag == 0 {
                        if j == i && bit == w[0] {
                            id(next, 1, s)
                        } else {
                            id(next, 0, s)
                        }
                    } else if offset == l - 1 {
                        if bit == w[l - 1] {
                            id(next, 0, bump)
                        } else {
                            id(next, 0, s)
                        }
                    } else if offset < l && bit == w[offset] {
                        id(next, 1, s)
                    } else {
                        id(next, 0, s)
                    };
                }
            }
        }
    }
    let accept = (0..m).flat_map(|j| (0..2).map(move |flag| id(j, flag, spec.target)));
    Dfa::new(transitions, id(1 % m, 0, 0), accept)
}

/// Accepts exactly the words that begin with `prefix`: a match chain, one
/// absorbing accept state and one dead state.
pub fn build_prefix_acceptor(prefix: &BinaryString) -> Result<Dfa> {
    if prefix.is_empty() {
        return Err(Error::invalid("prefix must be non-empty"));
    }
    let k = prefix.len();
    let accept = k;
    let dead = k + 1;
    let mut transitions: Vec<[usize; 2]> = prefix
        .bits()
        .iter()
        .enumerate()
        .map(|(c, &b)| {
            let mut row = [dead; 2];
            row[b as usize] = c + 1;
            row
        })
        .collect();
    transitions.push([accept; 2]);
    transitions.push([dead; 2]);
    Dfa::new(transitions, 0, [accept])
}
