//! Small deterministic automata that tell two binary words apart.
//!
//! Given distinct words `x` and `y` of equal length `n`, [`separator::separate`]
//! builds a DFA that accepts `x` and rejects `y`. The default pipeline picks an
//! aperiodic window `w` around the first mismatch, finds a prime modulus `p`
//! and residue `i` at which the occurrence counts of `w` differ, and counts
//! those occurrences modulo a small prime `q` with a `2pq`-state machine.
//!
//! Alongside the pipeline the crate carries the ground truth needed to judge
//! it: exhaustive minimal-DFA search ([`oracle`]), adversarial set pairs whose
//! residue profiles agree for every small prime, and numeric checks on the
//! sparse polynomials behind the moment argument ([`littlewood`]).

pub mod arithmetic;
pub mod automata;
pub mod error;
pub mod littlewood;
pub mod oracle;
pub mod separator;
pub mod words;

pub use arithmetic::{IndexSet, MomentWitness, ResidueProfile};
pub use automata::{CountingMachineSpec, Dfa};
pub use error::{Error, Result};
pub use littlewood::{DensePoly, SparsePoly};
pub use oracle::{AdversarialPair, ExactResult};
pub use separator::{Certificate, Mode, Separation, SeparatorConfig};
pub use words::{BinaryString, PositionSet, WindowChoice};

/// `⌈n^{1/3}⌉`, computed exactly in integers.
pub fn cube_root_ceil(n: usize) -> usize {
    let mut t = (n as f64).cbrt().round() as usize;
    while t.pow(3) < n {
        t += 1;
    }
    while t > 0 && (t - 1).pow(3) >= n {
        t -= 1;
    }
    t
}
