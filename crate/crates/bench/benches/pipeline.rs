use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepwords_core::automata::build_counting_machine;
use sepwords_core::oracle::{exact_min_dfa, DEFAULT_S_MAX};
use sepwords_core::separator::separate;
use sepwords_core::words::positions;
use sepwords_core::{BinaryString, CountingMachineSpec, Mode};

fn word(rng: &mut ChaCha8Rng, n: usize) -> BinaryString {
    BinaryString::from_bits((0..n).map(|_| rng.gen_range(0..2u8)).collect()).unwrap()
}

/// `y` agrees with `x` on the first half, then differs.
fn late_pair(rng: &mut ChaCha8Rng, n: usize) -> (BinaryString, BinaryString) {
    let x = word(rng, n);
    let mut bits = x.bits().to_vec();
    bits[n / 2] ^= 1;
    (x, BinaryString::from_bits(bits).unwrap())
}

fn bench_positions(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("positions");
    for n in [1 << 10, 1 << 16] {
        let x = word(&mut rng, n);
        let w: BinaryString = "0110".parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| positions(black_box(x), &w).unwrap())
        });
    }
    group.finish();
}

fn bench_counting_machine(c: &mut Criterion) {
    let spec = CountingMachineSpec {
        modulus: 101,
        residue: 17,
        count_prime: 5,
        target: 2,
        pattern: "0010110".parse().unwrap(),
    };
    c.bench_function("counting_machine/build m=101 q=5", |b| {
        b.iter(|| build_counting_machine(black_box(&spec)).unwrap())
    });
    let dfa = build_counting_machine(&spec).unwrap();
    let x = word(&mut ChaCha8Rng::seed_from_u64(2), 1 << 16);
    c.bench_function("counting_machine/run n=65536", |b| b.iter(|| dfa.run(black_box(&x))));
}

fn bench_separate(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut group = c.benchmark_group("separate");
    group.sample_size(20);
    for n in [1 << 8, 1 << 12, 1 << 16] {
        let pair = late_pair(&mut rng, n);
        for mode in Mode::ALL {
            group.bench_with_input(BenchmarkId::new(mode.as_str(), n), &pair, |b, (x, y)| {
                b.iter(|| separate(x, y, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_exact(c: &mut Criterion) {
    let x: BinaryString = "000100".parse().unwrap();
    let y: BinaryString = "001000".parse().unwrap();
    c.bench_function("exact_min_dfa/n=6", |b| {
        b.iter(|| exact_min_dfa(black_box(&x), black_box(&y), DEFAULT_S_MAX).unwrap())
    });
}

criterion_group!(benches, bench_positions, bench_counting_machine, bench_separate, bench_exact);
criterion_main!(benches);
