//! Certified floating approximations and exact sign decisions.
//!
//! `cos`/`sin` of `2πk/N` are computed in binary fixed point with 64 guard
//! bits; accumulated truncation error stays far below one unit at the
//! requested precision, so every table entry is within `2^-bits` of the true
//! value. An element `Σ (n_k/d) ζ^k` is then approximated by the exact rational
//! `Σ n_k C_k / (d 2^W)` with error at most `2^-bits · Σ|n_k|/d` per component.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, ExactError, Rational};

const GUARD_BITS: u64 = 64;
/// Precision ceiling for [`real_sign`] escalation.
pub const MAX_SIGN_PRECISION: u64 = 1 << 15;

/// Complex approximation with a rigorous absolute error bound on each component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    /// Bound on `|re - Re(x)|` and `|im - Im(x)|` for the exact rational
    /// approximants (the `f64` rounding of those adds at most one ulp).
    pub error: f64,
    pub precision: u64,
}

struct Approximant {
    re: BigInt,
    im: BigInt,
    /// Error bound in units of `2^-work / den`.
    err: BigInt,
    den: BigInt,
    work: u64,
}

fn pi_fixed(work: u64) -> BigInt {
    // Machin: π = 16 atan(1/5) - 4 atan(1/239)
    fn atan_inv(x: u64, work: u64) -> BigInt {
        let one = BigInt::one() << work;
        let x2 = BigInt::from(x * x);
        let mut term = &one / x;
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term = &term / &x2;
            let t = &term / (2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    }
    atan_inv(5, work) * 16 - atan_inv(239, work) * 4
}

fn cos_sin_fixed(theta: &BigInt, work: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << work;
    let x2 = (theta * theta) >> work;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut c_term = one;
    let mut s_term = theta.clone();
    let mut n = 1u64;
    loop {
        c_term = -((&c_term * &x2) >> work) / ((2 * n - 1) * (2 * n));
        s_term = -((&s_term * &x2) >> work) / ((2 * n) * (2 * n + 1));
        if c_term.is_zero() && s_term.is_zero() {
            break;
        }
        cos += &c_term;
        sin += &s_term;
        n += 1;
    }
    (cos, sin)
}

type Table = Arc<Vec<(BigInt, BigInt)>>;

fn trig_table(conductor: u32, len: usize, work: u64) -> Table {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("trig cache poisoned").get(&(conductor, work)) {
        if t.len() >= len {
            return t.clone();
        }
    }
    let n = conductor as i64;
    let pi = pi_fixed(work);
    let phi = super::nt::euler_phi(conductor as u64) as usize;
    let table: Vec<(BigInt, BigInt)> = (0..phi.max(len) as i64)
        .map(|k| {
            // angle in (-π, π]
            let kk = if 2 * k > n { k - n } else { k };
            let theta = (&pi * (2 * kk)) / n;
            cos_sin_fixed(&theta, work)
        })
        .collect();
    let table = Arc::new(table);
    cache
        .lock()
        .expect("trig cache poisoned")
        .insert((conductor, work), table.clone());
    table
}

fn approximant(x: &Cyclotomic, bits: u64) -> Approximant {
    let work = bits + GUARD_BITS;
    let (num, den) = x.dense_big();
    let table = trig_table(x.conductor(), num.len(), work);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut abs_sum = BigInt::zero();
    for (k, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cs, sn) = &table[k];
        re += c * cs;
        im += c * sn;
        abs_sum += c.abs();
    }
    // table error ≤ 2^-bits = 2^(work-bits) units of 2^-work
    let err = abs_sum << GUARD_BITS;
    Approximant {
        re,
        im,
        err,
        den,
        work,
    }
}

fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    Rational::new(n.clone(), d.clone()).to_f64().unwrap_or(f64::NAN)
}

/// Approximates `x` under `ζ_N = e^{2πi/N}` with a rigorous error bound.
pub fn to_float(x: &Cyclotomic, precision: u64) -> ComplexApprox {
    let bits = precision.max(64);
    let a = approximant(x, bits);
    let scale = &a.den << a.work;
    ComplexApprox {
        re: ratio_to_f64(&a.re, &scale),
        im: ratio_to_f64(&a.im, &scale),
        error: ratio_to_f64(&a.err, &scale),
        precision: bits,
    }
}

pub(crate) fn to_f64_pair(x: &Cyclotomic) -> (f64, f64) {
    let a = to_float(x, 64);
    (a.re, a.im)
}

/// Exact sign of a real cyclotomic number.
pub fn real_sign(x: &Cyclotomic) -> Result<i8, ExactError> {
    if x.is_zero() {
        return Ok(0);
    }
    if let Some(r) = x.to_rational() {
        return Ok(if r.is_positive() { 1 } else { -1 });
    }
    if !x.is_real() {
        return Err(ExactError::NotReal);
    }
    let mut bits = 64;
    while bits <= MAX_SIGN_PRECISION {
        let a = approximant(x, bits);
        if a.re.abs() > a.err {
            return Ok(if a.re.is_positive() { 1 } else { -1 });
        }
        bits *= 2;
    }
    Err(ExactError::PrecisionExhausted(MAX_SIGN_PRECISION))
}
