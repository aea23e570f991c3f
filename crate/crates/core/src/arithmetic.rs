//! Primes, residue profiles of integer sets, and power-sum moments.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::words::is_separated;

/// All primes `<= k`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(k: usize) -> Vec<usize> {
    if k < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; k + 1];
    let mut out = Vec::new();
    for p in 2..=k {
        if composite[p] {
            continue;
        }
        out.push(p);
        let mut multiple = p * p;
        while multiple <= k {
            composite[multiple] = true;
            multiple += p;
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`, ascending, generated lazily so that huge upper
/// limits cost nothing unless the search actually gets there.
pub fn primes_between(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p as u64))
}

/// A strictly increasing subset of `[1, universe]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    elements: Vec<usize>,
    universe: usize,
}

impl IndexSet {
    pub fn new(elements: Vec<usize>, universe: usize) -> Result<Self> {
        if elements.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::invalid("elements must be strictly increasing"));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::invalid(format!(
                "element {bad} outside [1, {universe}]"
            )));
        }
        Ok(Self { elements, universe })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut elements: Vec<usize>, universe: usize) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements, universe)
    }

    /// Parses the comma-separated form, e.g. `"1, 4,9"`; blank means empty.
    pub fn parse(text: &str, universe: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new(Vec::new(), universe);
        }
        let elements = text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad set element `{}`", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, universe)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.elements.last().copied()
    }

    pub fn is_separated(&self, d: usize) -> bool {
        is_separated(&self.elements, d)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Universe taken as the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let probe = Self::parse(s, usize::MAX)?;
        let universe = probe.max().unwrap_or(0);
        Self::new(probe.elements, universe)
    }
}

/// `counts[i]` is the number of elements congruent to `i` modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueProfile {
    pub modulus: usize,
    pub counts: Vec<usize>,
}

impl ResidueProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn residue_profile(set: &IndexSet, p: usize) -> Result<ResidueProfile> {
    if p == 0 {
        return Err(Error::invalid("modulus must be at least 1"));
    }
    Ok(profile_of(set.elements(), p))
}

pub(crate) fn profile_of(elements: &[usize], p: usize) -> ResidueProfile {
    let mut counts = vec![0; p];
    for &e in elements {
        counts[e % p] += 1;
    }
    ResidueProfile {
        modulus: p,
        counts,
    }
}

/// First residue at which the two profiles disagree.
pub(crate) fn first_differing_residue(a: &[usize], b: &[usize], p: usize) -> Option<usize> {
    let pa = profile_of(a, p);
    let pb = profile_of(b, p);
    (0..p).find(|&i| pa.counts[i] != pb.counts[i])
}

/// Smallest prime `p` in `[p_min, p_max]` with some residue `i` where the
/// class sizes of `a` and `b` differ, paired with the smallest such `i`.
pub fn find_separating_prime(
    a: &IndexSet,
    b: &IndexSet,
    p_min: usize,
    p_max: usize,
) -> Result<Option<(usize, usize)>> {
    if a.elements() == b.elements() {
        return Err(Error::invalid("sets are equal"));
    }
    Ok(separating_prime_of(a.elements(), b.elements(), p_min, p_max))
}

pub(crate) fn separating_prime_of(
    a: &[usize],
    b: &[usize],
    p_min: usize,
    p_max: usize,
) -> Option<(usize, usize)> {
    primes_between(p_min, p_max)
        .find_map(|p| first_differing_residue(a, b, p).map(|i| (p, i)))
}

/// Smallest prime `q <= q_max` with `c1 ≢ c2 (mod q)`.
pub fn find_count_prime(c1: usize, c2: usize, q_max: usize) -> Result<Option<usize>> {
    if c1 == c2 {
        return Err(Error::invalid("counts are equal"));
    }
    Ok(primes_between(2, q_max).find(|&q| c1 % q != c2 % q))
}

/// `Σ_{a∈A} a^m`, exactly. `moment(A, 0) = |A|`.
pub fn moment(set: &IndexSet, m: u32) -> BigUint {
    set.elements()
        .iter()
        .map(|&a| BigUint::from(a).pow(m))
        .sum()
}

/// The least exponent at which two power sums differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentWitness {
    pub exponent: u32,
    pub moment_a: BigUint,
    pub moment_b: BigUint,
}

/// Scans `m = 0, 1, ..., m_max` for the first exponent with
/// `Σ a^m ≠ Σ b^m`, maintaining running powers instead of recomputing them.
pub fn find_moment_witness(
    a: &IndexSet,
    b: &IndexSet,
    m_max: u32,
) -> Result<Option<MomentWitness>> {
    if a.elements() == b.elements() {
        return Err(Error::invalid("sets are equal"));
    }
    let mut pow_a: Vec<BigUint> = vec![BigUint::from(1u32); a.len()];
    let mut pow_b: Vec<BigUint> = vec![BigUint::from(1u32); b.len()];
    for exponent in 0..=m_max {
        if exponent > 0 {
            for (p, &e) in pow_a.iter_mut().zip(a.elements()) {
                *p *= e;
            }
            for (p, &e) in pow_b.iter_mut().zip(b.elements()) {
                *p *= e;
            }
        }
        let moment_a: BigUint = pow_a.iter().sum();
        let moment_b: BigUint = pow_b.iter().sum();
        if moment_a != moment_b {
            return Ok(Some(MomentWitness {
                exponent,
                moment_a,
                moment_b,
            }));
        }
    }
    Ok(None)
}

/// From a differing moment to a separating prime: the smallest prime `p`
/// in range not dividing `moment(A, m) - moment(B, m)`, then the smallest
/// residue `i` with `|A_{i,p}| ≢ |B_{i,p}| (mod p)`.
///
/// Such an `i` always exists, since `moment(A, m) ≡ Σ_i |A_{i,p}| i^m (mod p)`.
pub fn moment_to_prime(
    a: &IndexSet,
    b: &IndexSet,
    m: u32,
    p_min: usize,
    p_max: usize,
) -> Result<Option<(usize, usize)>> {
    let diff = BigInt::from(moment(a, m)) - BigInt::from(moment(b, m));
    if diff.is_zero() {
        return Err(Error::invalid(format!("moments agree at m = {m}")));
    }
    let Some(p) = primes_between(p_min, p_max).find(|&p| {
        (&diff % BigInt::from(p))
            .to_i64()
            .is_some_and(|r| r != 0)
    }) else {
        return Ok(None);
    };
    let pa = profile_of(a.elements(), p);
    let pb = profile_of(b.elements(), p);
    let i = (0..p)
        .find(|&i| pa.counts[i] % p != pb.counts[i] % p)
        .ok_or_else(|| {
            Error::contradiction(format!(
                "p = {p} does not divide the moment difference yet all class sizes agree mod p"
            ))
        })?;
    Ok(Some((p, i)))
}

/// `Σ_i counts[i] · i^m mod p`, with `0^0 = 1`.
pub fn profile_moment_mod(profile: &ResidueProfile, m: u32) -> u64 {
    let p = profile.modulus as u64;
    profile
        .counts
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| {
            (acc + mul_mod(c as u64 % p, pow_mod(i as u64, m as u64, p), p)) % p
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(e: &[usize]) -> IndexSet {
        IndexSet::new(e.to_vec(), 100).unwrap()
    }

    fn trial_division(n: usize) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    fn random_set(rng: &mut ChaCha8Rng, n: usize) -> IndexSet {
        let elements = (1..=n).filter(|_| rng.gen_bool(0.3)).collect();
        IndexSet::new(elements, n).unwrap()
    }

    #[test]
    fn primes_examples() {
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        let oracle: Vec<usize> = (0..=30).filter(|&n| trial_division(n)).collect();
        assert_eq!(primes_up_to(30), oracle);
        assert_eq!(oracle, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sieve_and_miller_rabin_agree_with_trial_division() {
        let sieve = primes_up_to(20_000);
        let oracle: Vec<usize> = (0..=20_000).filter(|&n| trial_division(n)).collect();
        assert_eq!(sieve, oracle);
        let mr: Vec<usize> = (0..=20_000).filter(|&n| is_prime(n as u64)).collect();
        assert_eq!(mr, oracle);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn index_set_validation_and_parse() {
        assert!(IndexSet::new(vec![2, 2], 5).is_err());
        assert!(IndexSet::new(vec![0], 5).is_err());
        assert!(IndexSet::new(vec![6], 5).is_err());
        let s = IndexSet::parse(" 1, 4 ,9", 10).unwrap();
        assert_eq!(s.elements(), &[1, 4, 9]);
        assert_eq!(s.to_string(), "1,4,9");
        assert!(IndexSet::parse("", 3).unwrap().is_empty());
        assert!(IndexSet::parse("1,x", 3).is_err());
        assert_eq!("3,7".parse::<IndexSet>().unwrap().universe(), 7);
    }

    #[test]
    fn residue_profile_examples() {
        assert_eq!(residue_profile(&set(&[1, 4]), 3).unwrap().counts, vec![0, 2, 0]);
        assert_eq!(residue_profile(&set(&[]), 5).unwrap().counts, vec![0; 5]);
        assert_eq!(
            residue_profile(&set(&[1, 2, 3, 4, 5, 6]), 2).unwrap().counts,
            vec![3, 3]
        );
        assert!(residue_profile(&set(&[1]), 0).is_err());
    }

    #[test]
    fn separating_prime_examples() {
        assert_eq!(
            find_separating_prime(&set(&[2]), &set(&[]), 2, 100).unwrap(),
            Some((2, 0))
        );
        assert_eq!(
            find_separating_prime(&set(&[1, 4]), &set(&[2, 3]), 2, 100).unwrap(),
            Some((3, 0))
        );
        assert_eq!(
            find_separating_prime(&set(&[1, 4]), &set(&[2, 3]), 2, 2).unwrap(),
            None
        );
        assert!(find_separating_prime(&set(&[1]), &set(&[1]), 2, 100).is_err());
    }

    #[test]
    fn separating_prime_is_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let a = random_set(&mut rng, 40);
            let b = random_set(&mut rng, 40);
            if a == b {
                continue;
            }
            let expected = primes_up_to(60).into_iter().find_map(|p| {
                let pa = residue_profile(&a, p).unwrap();
                let pb = residue_profile(&b, p).unwrap();
                (0..p).find(|&i| pa.counts[i] != pb.counts[i]).map(|i| (p, i))
            });
            assert_eq!(find_separating_prime(&a, &b, 2, 60).unwrap(), expected);
        }
    }

    #[test]
    fn count_prime_examples() {
        assert_eq!(find_count_prime(0, 1, 64).unwrap(), Some(2));
        assert_eq!(find_count_prime(3, 5, 64).unwrap(), Some(3));
        assert_eq!(find_count_prime(6, 10, 64).unwrap(), Some(3));
        assert_eq!(find_count_prime(0, 30, 5).unwrap(), None);
        assert!(find_count_prime(4, 4, 64).is_err());
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment(&set(&[1, 4]), 2), BigUint::from(17u32));
        assert_eq!(moment(&set(&[]), 7), BigUint::zero());
        assert_eq!(moment(&set(&[2, 3]), 2), BigUint::from(13u32));
        assert_eq!(moment(&set(&[2, 3, 9]), 0), BigUint::from(3u32));
    }

    #[test]
    fn moment_witness_examples() {
        let w = find_moment_witness(&set(&[1, 4]), &set(&[2, 3]), 10)
            .unwrap()
            .unwrap();
        assert_eq!(
            (w.exponent, w.moment_a, w.moment_b),
            (2, 17u32.into(), 13u32.into())
        );
        let w = find_moment_witness(&set(&[1]), &set(&[2]), 10).unwrap().unwrap();
        assert_eq!(w.exponent, 1);
        let w = find_moment_witness(&set(&[1, 2]), &set(&[3]), 10).unwrap().unwrap();
        assert_eq!(
            (w.exponent, w.moment_a, w.moment_b),
            (0, 2u32.into(), 1u32.into())
        );
        assert!(find_moment_witness(&set(&[1, 4]), &set(&[2, 3]), 1)
            .unwrap()
            .is_none());
        assert!(find_moment_witness(&set(&[1]), &set(&[1]), 3).is_err());
    }

    #[test]
    fn moment_witness_is_minimal() {
        // Prouhet–Thue–Morse split of 1..16 agrees on moments 0..3.
        let a = set(&[1, 4, 6, 7, 10, 11, 13, 16]);
        let b = set(&[2, 3, 5, 8, 9, 12, 14, 15]);
        let w = find_moment_witness(&a, &b, 20).unwrap().unwrap();
        assert_eq!(w.exponent, 4);
        for m in 0..w.exponent {
            assert_eq!(moment(&a, m), moment(&b, m));
        }
        assert_eq!(moment(&a, 4), w.moment_a);
        assert_ne!(w.moment_a, w.moment_b);
    }

    #[test]
    fn moment_to_prime_examples() {
        assert_eq!(
            moment_to_prime(&set(&[1, 4]), &set(&[2, 3]), 2, 2, 100).unwrap(),
            Some((3, 0))
        );
        assert_eq!(
            moment_to_prime(&set(&[1]), &set(&[2]), 1, 2, 100).unwrap(),
            Some((2, 0))
        );
        assert!(moment_to_prime(&set(&[1, 4]), &set(&[2, 3]), 1, 2, 100).is_err());
    }

    #[test]
    fn residue_moment_identity_small_exhaustive() {
        for mask in 0u32..(1 << 10) {
            let a = IndexSet::new((1..=10).filter(|e| mask >> (e - 1) & 1 == 1).collect(), 10)
                .unwrap();
            for p in [2, 3, 5, 7, 11] {
                let prof = residue_profile(&a, p).unwrap();
                for m in 0..6 {
                    let direct = &moment(&a, m) % BigUint::from(p);
                    assert_eq!(direct, BigUint::from(profile_moment_mod(&prof, m)));
                }
            }
        }
    }
}
