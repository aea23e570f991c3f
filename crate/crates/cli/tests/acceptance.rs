//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see
//! the report.

use std::f64::consts::E;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sepwords_cli::experiments::{self, growth, growth_csv, late_pair, littlewood_rows, random_separated_set, uniform_pair};
use sepwords_core::arithmetic::{
    find_moment_witness, find_separating_prime, moment, moment_to_prime, primes_up_to, profile_moment_mod,
    residue_profile,
};
use sepwords_core::automata::build_counting_machine;
use sepwords_core::littlewood::{check_order_bound, DEFAULT_GRID};
use sepwords_core::oracle::{adversarial_pair, all_pairs, exact_min_dfa, f_of_n, DEFAULT_S_MAX};
use sepwords_core::separator::{separate, separate_with, verify, CertificateKind, Mode, SeparatorConfig};
use sepwords_core::{cube_root_ceil, BinaryString, CountingMachineSpec, IndexSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

fn report(id: u32, ok: bool, detail: String) -> bool {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {detail}");
    ok
}

fn criterion_1() -> bool {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut failures = 0u64;
    for n in 1..=10usize {
        let words: Vec<BinaryString> = (0..1u64 << n).map(|v| BinaryString::from_index(v, n)).collect();
        let (c, f) = words
            .par_iter()
            .map(|x| {
                let mut c = 0u64;
                let mut f = 0u64;
                for y in &words {
                    if x == y {
                        continue;
                    }
                    c += 1;
                    match separate(x, y, Mode::Paper) {
                        Ok(s) if verify(&s.dfa, x, y) && s.certificate.verified => {}
                        _ => f += 1,
                    }
                }
                (c, f)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        checked += c;
        failures += f;
    }
    report(
        1,
        failures == 0,
        format!(
            "{checked} ordered pairs, n <= 10, {failures} failures ({:.1}s)",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn within_caps(kind: &CertificateKind, config: &SeparatorConfig, n: usize) -> bool {
    match kind {
        CertificateKind::Prefix { .. } => true,
        CertificateKind::Counting { spec, .. } => {
            spec.modulus <= config.p_max_for(n) && spec.count_prime <= config.q_max_for(n)
        }
    }
}

fn criterion_2() -> bool {
    let start = Instant::now();
    let config = SeparatorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [16usize, 64, 256, 1024, 4096, 65536] {
        let mut pairs: Vec<_> = (0..1000).map(|_| uniform_pair(&mut rng, n)).collect();
        let uniform = pairs.len();
        pairs.extend((0..100).map(|_| late_pair(&mut rng, n)));
        let bad: usize = pairs
            .par_iter()
            .map(|(x, y)| match separate_with(x, y, Mode::Paper, &config) {
                Ok(s) if verify(&s.dfa, x, y) && s.certificate.verified && within_caps(&s.certificate.kind, &config, n) => 0,
                _ => 1,
            })
            .sum();
        ok &= bad == 0;
        lines.push(format!("n={n}: {uniform}+{} pairs, {bad} bad", pairs.len() - uniform));
    }
    report(
        2,
        ok,
        format!("{} ({:.1}s)", lines.join("; "), start.elapsed().as_secs_f64()),
    )
}

/// Occurrence count by direct substring comparison.
fn direct_accepts(spec: &CountingMachineSpec, x: &BinaryString) -> bool {
    let w = spec.pattern.bits();
    let bits = x.bits();
    let count = (0..bits.len())
        .filter(|&s| s + w.len() <= bits.len() && &bits[s..s + w.len()] == w && (s + 1) % spec.modulus == spec.residue)
        .count();
    count % spec.count_prime == spec.target
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> BinaryString {
    BinaryString::from_bits((0..len).map(|_| rng.gen_range(0..2u8)).collect()).unwrap()
}

fn criterion_3() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let modulus = rng.gen_range(1..=8);
        let count_prime = [2, 3, 5][rng.gen_range(0..3)];
        let len = rng.gen_range(1..=modulus);
        let spec = CountingMachineSpec {
            modulus,
            residue: rng.gen_range(0..modulus),
            count_prime,
            target: rng.gen_range(0..count_prime),
            pattern: random_word(&mut rng, len),
        };
        let dfa = build_counting_machine(&spec).unwrap();
        let x_len = rng.gen_range(0..=64);
        let x = random_word(&mut rng, x_len);
        mismatches += usize::from(dfa.run(&x) != direct_accepts(&spec, &x));
    }
    let fixed = [
        (1, 0, 2, 1, "1"),
        (5, 2, 2, 1, "0010"),
        (3, 1, 3, 2, "01"),
        (8, 7, 5, 0, "1101"),
        (7, 0, 3, 1, "0110100"),
    ];
    let mut exhaustive = 0usize;
    for (modulus, residue, count_prime, target, w) in fixed {
        let spec = CountingMachineSpec {
            modulus,
            residue,
            count_prime,
            target,
            pattern: w.parse().unwrap(),
        };
        let dfa = build_counting_machine(&spec).unwrap();
        for len in 0..=12usize {
            for v in 0..1u64 << len {
                let x = BinaryString::from_index(v, len);
                exhaustive += 1;
                mismatches += usize::from(dfa.run(&x) != direct_accepts(&spec, &x));
            }
        }
    }
    report(
        3,
        mismatches == 0,
        format!("10000 random specs + {exhaustive} exhaustive runs over 5 specs, {mismatches} mismatches"),
    )
}

fn criterion_4() -> bool {
    let mut violations = 0usize;
    let mut pairs = 0usize;
    for n in 1..=6usize {
        for (u, v) in all_pairs(n) {
            let x = BinaryString::from_index(u, n);
            let y = BinaryString::from_index(v, n);
            for (a, b) in [(&x, &y), (&y, &x)] {
                pairs += 1;
                let exact = exact_min_dfa(a, b, DEFAULT_S_MAX).unwrap().map(|r| r.size);
                let paper = separate(a, b, Mode::Paper).unwrap().certificate.states;
                if exact.is_none_or(|e| e > paper) {
                    violations += 1;
                }
            }
        }
    }
    let f: Vec<usize> = (1..=6).map(|n| f_of_n(n, DEFAULT_S_MAX).unwrap()).collect();
    let monotone = f.windows(2).all(|w| w[0] <= w[1]);
    report(
        4,
        violations == 0 && f[0] == 2,
        format!(
            "{pairs} ordered pairs, {violations} dominance violations; f(1..6) = {f:?}; nondecreasing: {monotone}"
        ),
    )
}

fn criterion_5() -> bool {
    let n = 1000;
    let t = cube_root_ceil(n);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0usize;
    let mut max_m = 0u32;
    let mut done = 0;
    while done < 100 {
        let density = [0.05, 0.2, 0.5][done % 3];
        let a = random_separated_set(&mut rng, n, t, density);
        let b = random_separated_set(&mut rng, n, t, density);
        if a == b {
            continue;
        }
        done += 1;
        let ok = (|| {
            let w = find_moment_witness(&a, &b, 2000).ok()??;
            max_m = max_m.max(w.exponent);
            let (p, i) = moment_to_prime(&a, &b, w.exponent, 2, usize::MAX).ok()??;
            let pa = residue_profile(&a, p).ok()?;
            let pb = residue_profile(&b, p).ok()?;
            Some(pa.counts[i] != pb.counts[i])
        })();
        failures += usize::from(ok != Some(true));
    }

    let primes = primes_up_to(97);
    let mut identity_failures = 0usize;
    for _ in 0..1000 {
        let p = primes[rng.gen_range(0..primes.len())];
        let m = rng.gen_range(0..=50u32);
        let universe = rng.gen_range(1..=500);
        let elements: Vec<usize> = (1..=universe).filter(|_| rng.gen_bool(0.3)).collect();
        let set = IndexSet::new(elements, universe).unwrap();
        let direct = (moment(&set, m) % BigUint::from(p)).to_u64().unwrap();
        let via_profile = profile_moment_mod(&residue_profile(&set, p).unwrap(), m);
        identity_failures += usize::from(direct != via_profile);
    }
    report(
        5,
        failures == 0 && identity_failures == 0,
        format!(
            "100 pairs at n={n} (t={t}), max witness exponent {max_m}, {failures} failures; 1000 identity checks, {identity_failures} failures"
        ),
    )
}

fn criterion_6() -> bool {
    let start = Instant::now();
    let (n, d, k) = (10_000, 21, 11);
    let found = adversarial_pair(n, d, k, 1_000_000, 6).unwrap();
    let detail;
    let ok = match &found {
        None => {
            detail = "no pair within budget".to_string();
            false
        }
        Some(pair) => {
            let mut profiles_equal = true;
            for p in primes_up_to(k) {
                profiles_equal &= residue_profile(&pair.a, p).unwrap() == residue_profile(&pair.b, p).unwrap();
            }
            let separated = pair.a.is_separated(d) && pair.b.is_separated(d);
            let absent = find_separating_prime(&pair.a, &pair.b, 2, k).unwrap().is_none();
            let distinct = pair.a != pair.b;
            detail = format!(
                "|A|={} |B|={} distinct={distinct} profiles equal p<=11: {profiles_equal}, {d}-separated: {separated}, no separating prime <= {k}: {absent} ({:.1}s)",
                pair.a.len(),
                pair.b.len(),
                start.elapsed().as_secs_f64()
            );
            profiles_equal && separated && absent && distinct
        }
    };
    report(6, ok, detail)
}

fn criterion_7() -> bool {
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 1..=15 {
        let c = check_order_bound(k, DEFAULT_GRID).unwrap();
        ok &= c.ok;
        worst = worst.max(c.lhs / c.rhs);
        if k == 1 {
            let rel = |a: f64, b: f64| ((a - b) / b).abs();
            ok &= rel(c.lhs, 1.0 / 9.0) <= 1e-9 && rel(c.rhs, 2.0 * E / 9.0) <= 1e-9;
        }
    }
    report(
        7,
        ok,
        format!("k = 1..15 all within bound, k=1 matches 1/9 and 2e/9; max lhs/rhs {worst:.3e}"),
    )
}

fn criterion_8() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    let mut lines = Vec::new();
    for n in [256usize, 4096] {
        let scale = (n as f64 * (n as f64).ln()).sqrt();
        let mut max_ratio = 0.0f64;
        let mut counted = 0;
        for _ in 0..100 {
            let (x, y) = uniform_pair(&mut rng, n);
            let s = separate(&x, &y, Mode::Baseline).unwrap();
            ok &= verify(&s.dfa, &x, &y);
            if let CertificateKind::Counting { spec, .. } = &s.certificate.kind {
                let ratio = spec.modulus as f64 / scale;
                max_ratio = max_ratio.max(ratio);
                ok &= ratio <= 10.0;
                counted += 1;
            } else {
                ok = false;
            }
        }
        lines.push(format!("n={n}: {counted} pairs, max p/sqrt(n ln n) = {max_ratio:.3}"));
    }
    report(8, ok, lines.join("; "))
}

fn criterion_9() -> bool {
    let start = Instant::now();
    let lengths: Vec<usize> = (6..=16).map(|e| 1usize << e).collect();
    let config = SeparatorConfig::default();
    let first = growth(&lengths, 10, 9, &config).unwrap();
    let second = growth(&lengths, 10, 9, &config).unwrap();
    let deterministic = growth_csv(&first) == growth_csv(&second);
    let verified = first.iter().all(|r| r.verified);
    let exponents: Vec<String> = Mode::ALL
        .into_iter()
        .map(|m| format!("{m} {:.3}", experiments::fitted_exponent(&first, m).unwrap_or(f64::NAN)))
        .collect();
    report(
        9,
        deterministic && verified,
        format!(
            "{} rows, identical CSV twice: {deterministic}, all verified: {verified}; fitted exponents: {} ({:.1}s)",
            first.len(),
            exponents.join(", "),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_10() -> bool {
    let n = 10_000;
    let coarse = littlewood_rows(n, 50, 10, DEFAULT_GRID).unwrap();
    let fine = littlewood_rows(n, 50, 10, 2 * DEFAULT_GRID - 1).unwrap();
    let positive = coarse.iter().all(|r| r.max > 0.0);
    let monotone = coarse
        .iter()
        .zip(&fine)
        .all(|(c, f)| f.max >= c.max * (1.0 - 1e-12));
    let lo = coarse.iter().map(|r| r.max).fold(f64::INFINITY, f64::min);
    let hi = coarse.iter().map(|r| r.max).fold(0.0, f64::max);
    report(
        10,
        positive && monotone,
        format!("50 polynomials at n={n}, max in [{lo:.3e}, {hi:.3e}], positive: {positive}, monotone under refinement: {monotone}"),
    )
}

#[test]
fn acceptance() {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
