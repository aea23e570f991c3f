//! Sparse polynomials with coefficients bounded by one, and their maximum
//! modulus on short intervals ending at `x = 1`.
//!
//! The difference polynomial of two `⌈n^{1/3}⌉`-separated sets, shifted and
//! signed so its constant term is 1, has the shape
//! `1 - σ x^d + Σ_{j >= ⌈n^{1/3}⌉} a_j x^j` with `d < ⌈n^{1/3}⌉`. How fast such
//! polynomials may vanish at `x = 1` controls how many power sums two
//! separated sets can share.
//!
//! All logarithms are natural.

use crate::arithmetic::IndexSet;
use crate::cube_root_ceil;
use crate::error::{Error, Result};

/// Default number of grid points for [`eval_max_on_interval`].
pub const DEFAULT_GRID: usize = 10_000;

/// Relative bracket width at which local refinement stops.
pub const REFINE_TOLERANCE: f64 = 1e-12;

/// Largest `k` accepted by [`order_family`].
pub const ORDER_FAMILY_MAX_K: u32 = 15;

pub trait Evaluate {
    fn eval(&self, x: f64) -> f64;
}

/// Error-free sum: `a + b = s + e` exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free product via fused multiply-add.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Neumaier-compensated sum.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms {
        let (s, e) = two_sum(sum, t);
        sum = s;
        comp += e;
    }
    sum + comp
}

/// `1 - σ x^d + Σ a_j x^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly {
    /// Degree bound.
    pub n: usize,
    /// Exponent of the `-x^d` term, when present.
    pub d: Option<usize>,
    /// `(j, a_j)`, exponents strictly increasing.
    pub tail: Vec<(usize, f64)>,
}

impl SparsePoly {
    pub fn sigma(&self) -> u8 {
        u8::from(self.d.is_some())
    }

    /// Membership in the class: `1 <= d < ⌈n^{1/3}⌉`, tail exponents in
    /// `[⌈n^{1/3}⌉, n]` and strictly increasing, every `|a_j| <= 1`.
    pub fn is_member(&self) -> bool {
        let t = cube_root_ceil(self.n);
        let head_ok = self.d.is_none_or(|d| d >= 1 && d < t);
        let tail_ok = self
            .tail
            .iter()
            .all(|&(j, a)| j >= t && j <= self.n && a.is_finite() && a.abs() <= 1.0);
        let increasing = self.tail.windows(2).all(|w| w[0].0 < w[1].0);
        head_ok && tail_ok && increasing
    }

    /// All `(exponent, coefficient)` pairs including the head.
    pub fn terms(&self) -> Vec<(usize, f64)> {
        let mut out = vec![(0, 1.0)];
        out.extend(self.d.map(|d| (d, -1.0)));
        out.extend(self.tail.iter().copied());
        out
    }

    pub fn to_dense(&self) -> DensePoly {
        let degree = self.terms().iter().map(|&(j, _)| j).max().unwrap_or(0);
        let mut coefficients = vec![0.0; degree + 1];
        for (j, a) in self.terms() {
            coefficients[j] += a;
        }
        DensePoly { coefficients }
    }
}

impl Evaluate for SparsePoly {
    fn eval(&self, x: f64) -> f64 {
        compensated_sum(self.terms().into_iter().map(|(j, a)| a * pow(x, j)))
    }
}

fn pow(x: f64, j: usize) -> f64 {
    match i32::try_from(j) {
        Ok(e) => x.powi(e),
        Err(_) => x.powf(j as f64),
    }
}

/// `Σ c_j x^j` with dense coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly {
    pub coefficients: Vec<f64>,
}

impl DensePoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Largest `k` such that `(x - 1)^k` divides this polynomial, by
    /// repeated exact synthetic division. `None` when some coefficient is
    /// not an integer or an intermediate quotient overflows.
    pub fn order_at_one(&self) -> Option<usize> {
        let mut current: Vec<i128> = self
            .coefficients
            .iter()
            .map(|&c| (c.fract() == 0.0 && c.abs() < 2f64.powi(100)).then_some(c as i128))
            .collect::<Option<_>>()?;
        let mut order = 0;
        while current.len() >= 2 {
            let mut quotient = vec![0i128; current.len() - 1];
            let mut carry = 0i128;
            for j in (1..current.len()).rev() {
                carry = carry.checked_add(current[j])?;
                quotient[j - 1] = carry;
            }
            if carry.checked_add(current[0])? != 0 {
                break;
            }
            order += 1;
            current = quotient;
        }
        Some(order)
    }
}

impl Evaluate for DensePoly {
    /// Compensated Horner scheme.
    fn eval(&self, x: f64) -> f64 {
        let mut iter = self.coefficients.iter().rev();
        let Some(&lead) = iter.next() else {
            return 0.0;
        };
        let mut s = lead;
        let mut err = 0.0f64;
        for &c in iter {
            let (p, pe) = two_prod(s, x);
            let (next, se) = two_sum(p, c);
            s = next;
            err = err.mul_add(x, pe + se);
        }
        s + err
    }
}

/// Normalized difference polynomial of two separated sets.
///
/// Builds `Σ (1_A(j) - 1_B(j)) x^j`, divides out the lowest power of `x` and
/// flips the sign so the constant term is `+1`. The degree bound is the
/// larger universe.
pub fn from_set_pair(a: &IndexSet, b: &IndexSet) -> Result<SparsePoly> {
    if a.elements() == b.elements() {
        return Err(Error::invalid("sets are equal"));
    }
    let n = a.universe().max(b.universe());
    let t = cube_root_ceil(n);
    if !a.is_separated(t) || !b.is_separated(t) {
        return Err(Error::invalid(format!("sets must be {t}-separated")));
    }
    let mut terms: Vec<(usize, i32)> = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    let (ea, eb) = (a.elements(), b.elements());
    while ia < ea.len() || ib < eb.len() {
        match (ea.get(ia), eb.get(ib)) {
            (Some(&x), Some(&y)) if x == y => {
                ia += 1;
                ib += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                terms.push((x, 1));
                ia += 1;
            }
            (Some(_), Some(&y)) => {
                terms.push((y, -1));
                ib += 1;
            }
            (Some(&x), None) => {
                terms.push((x, 1));
                ia += 1;
            }
            (None, Some(&y)) => {
                terms.push((y, -1));
                ib += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let (low, sign) = terms[0];
    let mut d = None;
    let mut tail = Vec::new();
    for &(j, c) in &terms[1..] {
        let exponent = j - low;
        let coefficient = f64::from(c * sign);
        if exponent < t {
            if d.is_some() || coefficient != -1.0 {
                return Err(Error::contradiction(format!(
                    "term {coefficient} x^{exponent} cannot follow the constant term"
                )));
            }
            d = Some(exponent);
        } else {
            tail.push((exponent, coefficient));
        }
    }
    Ok(SparsePoly { n, d, tail })
}

/// `[1 - n^{-2/3}, 1]`.
pub fn unit_interval_near_one(n: usize) -> (f64, f64) {
    (1.0 - (n as f64).powf(-2.0 / 3.0), 1.0)
}

/// Largest value of `|p|` found on `[lo, hi]`, and where.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalMax {
    pub value: f64,
    pub at: f64,
}

/// Samples `|p|` at `grid` equispaced points, then refines around the
/// strongest grid-local maxima by ternary search.
///
/// Every reported value is an actual evaluation, so the result is a lower
/// bound on the true maximum.
pub fn eval_max_on_interval<P: Evaluate + ?Sized>(
    p: &P,
    lo: f64,
    hi: f64,
    grid: usize,
) -> Result<IntervalMax> {
    if !(lo <= hi) {
        return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
    }
    if grid < 2 {
        return Err(Error::invalid("grid needs at least two points"));
    }
    let abs = |x: f64| p.eval(x).abs();
    if lo == hi {
        return Ok(IntervalMax {
            value: abs(lo),
            at: lo,
        });
    }
    let step = (hi - lo) / (grid - 1) as f64;
    let point = |k: usize| if k + 1 == grid { hi } else { lo + step * k as f64 };
    let values: Vec<f64> = (0..grid).map(|k| abs(point(k))).collect();

    let mut best = IntervalMax {
        value: values[0],
        at: lo,
    };
    for (k, &v) in values.iter().enumerate() {
        if v > best.value {
            best = IntervalMax {
                value: v,
                at: point(k),
            };
        }
    }

    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&k| {
            (k == 0 || values[k] >= values[k - 1]) && (k + 1 == grid || values[k] >= values[k + 1])
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(16);

    let scale = lo.abs().max(hi.abs()).max(hi - lo);
    for k in peaks {
        let mut a = point(k.saturating_sub(1));
        let mut b = point((k + 1).min(grid - 1));
        for _ in 0..300 {
            if b - a <= REFINE_TOLERANCE * scale {
                break;
            }
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            let (v1, v2) = (abs(m1), abs(m2));
            for (v, at) in [(v1, m1), (v2, m2)] {
                if v > best.value {
                    best = IntervalMax { value: v, at };
                }
            }
            if v1 < v2 {
                a = m1;
            } else {
                b = m2;
            }
        }
    }
    Ok(best)
}

/// `Π_{i<k} (x^{2^i} - 1)`: degree `2^k - 1`, coefficients in `{-1, 0, 1}`,
/// divisible by `(x - 1)^k`.
pub fn order_family(k: u32) -> Result<DensePoly> {
    if !(1..=ORDER_FAMILY_MAX_K).contains(&k) {
        return Err(Error::invalid(format!(
            "k = {k} outside 1..={ORDER_FAMILY_MAX_K}"
        )));
    }
    let mut coeffs: Vec<i64> = vec![1];
    for i in 0..k {
        let shift = 1usize << i;
        let mut next = vec![0i64; coeffs.len() + shift];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + shift] += c;
            next[j] -= c;
        }
        coeffs = next;
    }
    Ok(DensePoly {
        coefficients: coeffs.into_iter().map(|c| c as f64).collect(),
    })
}

/// Outcome of comparing `max |f|` on `[1 - k/(9n), 1]` against
/// `(n + 1)(e/9)^k` for `f = order_family(k)`, `n = 2^k - 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderCheck {
    pub k: u32,
    pub n: usize,
    pub lo: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

pub fn check_order_bound(k: u32, grid: usize) -> Result<OrderCheck> {
    let f = order_family(k)?;
    let n = f.degree();
    let lo = 1.0 - f64::from(k) / (9.0 * n as f64);
    let lhs = eval_max_on_interval(&f, lo, 1.0, grid)?.value;
    let rhs = (n as f64 + 1.0) * (std::f64::consts::E / 9.0).powi(k as i32);
    Ok(OrderCheck {
        k,
        n,
        lo,
        lhs,
        rhs,
        ok: lhs <= rhs,
    })
}
