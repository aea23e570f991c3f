//! Binary words, occurrence sets and the aperiodic window choice.
//!
//! Positions are 1-based throughout: the first symbol of `x` is `x_1`. Slices
//! handed out by [`BinaryString::bits`] are ordinary 0-based Rust slices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An immutable word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString {
    bits: Vec<u8>,
}

impl BinaryString {
    /// Builds a word from symbols that must each be 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(Error::invalid(format!(
                "symbol {} at index {index} is not a bit",
                bits[index]
            )));
        }
        Ok(Self { bits })
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        Self {
            bits: bits.into_iter().map(u8::from).collect(),
        }
    }

    /// The `len`-bit big-endian encoding of `value`, e.g. `(5, 4)` is `0101`.
    pub fn from_index(value: u64, len: usize) -> Self {
        Self {
            bits: (0..len)
                .map(|k| ((value >> (len - 1 - k)) & 1) as u8)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The symbol `x_pos`, 1-based.
    pub fn at(&self, pos: usize) -> u8 {
        self.bits[pos - 1]
    }

    /// The factor `x_from .. x_to` (1-based, inclusive).
    pub fn factor(&self, from: usize, to: usize) -> BinaryString {
        BinaryString {
            bits: self.bits[from - 1..to].to_vec(),
        }
    }

    /// This word with one more symbol appended.
    pub fn extended(&self, bit: u8) -> BinaryString {
        let mut bits = self.bits.clone();
        bits.push(bit);
        BinaryString { bits }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let offset = s.len() - s.trim_start().len();
        let mut bits = Vec::with_capacity(trimmed.len());
        for (index, ch) in trimmed.char_indices() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                found => {
                    return Err(Error::Parse {
                        index: offset + index,
                        found,
                    })
                }
            }
        }
        Ok(Self { bits })
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryString(\"{self}\")")
    }
}

/// Starting positions (1-based, increasing) of a pattern inside a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositionSet {
    positions: Vec<usize>,
    pattern_len: usize,
}

impl PositionSet {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern_len
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.positions.binary_search(&pos).is_ok()
    }

    /// Whether consecutive positions differ by at least `d`.
    pub fn is_separated(&self, d: usize) -> bool {
        is_separated(&self.positions, d)
    }

    pub fn into_positions(self) -> Vec<usize> {
        self.positions
    }
}

/// Whether consecutive entries of an increasing sequence differ by at least `d`.
pub fn is_separated(sorted: &[usize], d: usize) -> bool {
    sorted.windows(2).all(|pair| pair[1] - pair[0] >= d)
}

/// The border array of `w`: `border[k]` is the length of the longest proper
/// border of `w[..k]`, with `border[0] = 0`.
pub fn border_array(w: &[u8]) -> Vec<usize> {
    let mut border = vec![0; w.len() + 1];
    let mut b = 0;
    for k in 1..w.len() {
        while b > 0 && w[k] != w[b] {
            b = border[b];
        }
        if w[k] == w[b] {
            b += 1;
        }
        border[k + 1] = b;
    }
    border
}

/// Every (possibly overlapping) occurrence of `w` in `x`.
///
/// A pattern longer than the text has no occurrences; an empty pattern is
/// rejected.
pub fn positions(x: &BinaryString, w: &BinaryString) -> Result<PositionSet> {
    if w.is_empty() {
        return Err(Error::invalid("pattern must be non-empty"));
    }
    let l = w.len();
    let mut out = Vec::new();
    if l <= x.len() {
        let pat = w.bits();
        let border = border_array(pat);
        let mut matched = 0;
        for (idx, &c) in x.bits().iter().enumerate() {
            while matched > 0 && (matched == l || pat[matched] != c) {
                matched = border[matched];
            }
            if pat[matched] == c {
                matched += 1;
            }
            if matched == l {
                // idx is 0-based end; 1-based start is idx - l + 2
                out.push(idx + 2 - l);
            }
        }
    }
    Ok(PositionSet {
        positions: out,
        pattern_len: l,
    })
}

/// Smallest `p >= 1` with `w_i = w_{i+p}` wherever both sides exist.
pub fn minimal_period(w: &BinaryString) -> usize {
    let border = border_array(w.bits());
    w.len() - border[w.len()]
}

/// First 1-based index where the words differ, `None` when equal.
pub fn first_difference(x: &BinaryString, y: &BinaryString) -> Result<Option<usize>> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.bits()
        .iter()
        .zip(y.bits())
        .position(|(a, b)| a != b)
        .map(|k| k + 1))
}

/// An aperiodic window ending at the first mismatch of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowChoice {
    /// The window, of length `2t`.
    pub w: BinaryString,
    /// First index where `x` and `y` differ.
    pub k: usize,
    pub t: usize,
    /// True when the occurrence starting at `k - 2t + 1` belongs to `x`.
    pub in_x: bool,
    pub positions_x: PositionSet,
    pub positions_y: PositionSet,
}

impl WindowChoice {
    /// 1-based start of the window occurrence that only one word has.
    pub fn anchor(&self) -> usize {
        self.k + 1 - 2 * self.t
    }
}

/// Picks `w ∈ {w'0, w'1}` with `w' = x_{k-2t+1} .. x_{k-1}` and
/// `minimal_period(w) > t`, so that both occurrence sets are `t`-separated.
///
/// When both extensions qualify the one ending in `x_k` wins. Requires the
/// first mismatch `k` to satisfy `k >= 2t`.
pub fn select_window(x: &BinaryString, y: &BinaryString, t: usize) -> Result<WindowChoice> {
    if t == 0 {
        return Err(Error::invalid("separation parameter t must be positive"));
    }
    let k = first_difference(x, y)?.ok_or_else(|| Error::invalid("words are equal"))?;
    if k < 2 * t {
        return Err(Error::invalid(format!(
            "first difference k = {k} is below 2t = {}",
            2 * t
        )));
    }
    let stem = x.factor(k + 1 - 2 * t, k - 1);
    let preferred = x.at(k);
    let w = [preferred, 1 - preferred]
        .into_iter()
        .map(|bit| stem.extended(bit))
        .find(|w| minimal_period(w) > t)
        .ok_or_else(|| {
            Error::contradiction(format!(
                "neither extension of {stem} has minimal period above {t}"
            ))
        })?;
    let in_x = w.at(w.len()) == x.at(k);
    let positions_x = positions(x, &w)?;
    let positions_y = positions(y, &w)?;
    Ok(WindowChoice {
        w,
        k,
        t,
        in_x,
        positions_x,
        positions_y,
    })
}
