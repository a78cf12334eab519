//! Dense coefficient vectors over a common denominator.
//!
//! Arithmetic is written once against [`Coef`] and instantiated twice: a
//! checked `i128` fast path and a `BigInt` fallback. Every `i128` operation is
//! overflow-checked, so a `None` from the fast path means "retry with
//! `BigInt`", never a wrong answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;

pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn mul_i64(&self, c: i64) -> Option<Self>;
    /// Non-negative gcd.
    fn gcd(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn mul_i64(&self, c: i64) -> Option<Self> {
        self.checked_mul(c as i128)
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        // i128::MIN never reaches here: small values exclude it.
        a as i128
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn mul_i64(&self, c: i64) -> Option<Self> {
        Some(self * c)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `Σ num[k] ζ^k / den`, with `den > 0`, `gcd(content, den) = 1` and no
/// trailing zero coefficients. The zero element has an empty `num`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<I> {
    pub num: Vec<I>,
    pub den: I,
}

impl<I: Coef> Dense<I> {
    pub fn zero() -> Self {
        Dense {
            num: Vec::new(),
            den: I::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Brings an arbitrary numerator/denominator pair into canonical form.
    pub fn normalize(mut num: Vec<I>, mut den: I) -> Option<Self> {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Some(Self::zero());
        }
        if den.is_negative() {
            den = den.neg()?;
            for c in num.iter_mut() {
                *c = c.neg()?;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = c.exact_div(&g);
            }
            den = den.exact_div(&g);
        }
        Some(Dense { num, den })
    }

    pub fn from_terms(terms: &[(usize, I)], den: I, field: &Field) -> Option<Self> {
        let len = terms.iter().map(|(e, _)| e + 1).max().unwrap_or(0);
        let mut buf = vec![I::zero(); len.max(1)];
        for (e, c) in terms {
            buf[*e] = buf[*e].add(c)?;
        }
        reduce(&mut buf, field)?;
        Self::normalize(buf, den)
    }

    pub fn add(&self, o: &Self, negate_other: bool) -> Option<Self> {
        if o.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return if negate_other { o.neg() } else { Some(o.clone()) };
        }
        let g = self.den.gcd(&o.den);
        let fa = o.den.exact_div(&g);
        let fb = self.den.exact_div(&g);
        let den = self.den.mul(&fa)?;
        let len = self.num.len().max(o.num.len());
        let mut num = Vec::with_capacity(len);
        for k in 0..len {
            let a = match self.num.get(k) {
                Some(c) if !fa.is_one() => c.mul(&fa)?,
                Some(c) => c.clone(),
                None => I::zero(),
            };
            let b = match o.num.get(k) {
                Some(c) if !fb.is_one() => c.mul(&fb)?,
                Some(c) => c.clone(),
                None => I::zero(),
            };
            num.push(if negate_other { a.sub(&b)? } else { a.add(&b)? });
        }
        Self::normalize(num, den)
    }

    pub fn neg(&self) -> Option<Self> {
        let num = self.num.iter().map(|c| c.neg()).collect::<Option<Vec<_>>>()?;
        Some(Dense {
            num,
            den: self.den.clone(),
        })
    }

    pub fn mul(&self, o: &Self, field: &Field) -> Option<Self> {
        if self.is_zero() || o.is_zero() {
            return Some(Self::zero());
        }
        let mut buf = vec![I::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                buf[i + j] = buf[i + j].add(&a.mul(b)?)?;
            }
        }
        reduce(&mut buf, field)?;
        Self::normalize(buf, self.den.mul(&o.den)?)
    }

    /// Multiplies by the rational `n/d` (`d != 0`).
    pub fn scale(&self, n: &I, d: &I) -> Option<Self> {
        let num = self.num.iter().map(|c| c.mul(n)).collect::<Option<Vec<_>>>()?;
        Self::normalize(num, self.den.mul(d)?)
    }

    /// Sends `ζ_M^k` to `ζ_N^{(k * mult) mod N}` and reduces in `field` (of conductor N).
    pub fn remap(&self, mult: u64, field: &Field) -> Option<Self> {
        if self.num.len() <= 1 {
            return Some(self.clone());
        }
        let n = field.n as u64;
        let mut buf = vec![I::zero(); field.n as usize];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((k as u64 * mult) % n) as usize;
            buf[e] = buf[e].add(c)?;
        }
        reduce(&mut buf, field)?;
        Self::normalize(buf, self.den.clone())
    }

    pub fn to_big(&self) -> Dense<BigInt> {
        Dense {
            num: self.num.iter().map(Coef::to_big).collect(),
            den: self.den.to_big(),
        }
    }
}

impl Dense<BigInt> {
    /// Demotes to the `i128` representation when every integer fits.
    pub fn to_small(&self) -> Option<Dense<i128>> {
        let fits = |b: &BigInt| b.to_i128().filter(|v| *v != i128::MIN);
        Some(Dense {
            num: self.num.iter().map(fits).collect::<Option<Vec<_>>>()?,
            den: fits(&self.den)?,
        })
    }
}

/// Polynomial remainder modulo the cyclotomic polynomial, in place.
pub(crate) fn reduce<I: Coef>(buf: &mut Vec<I>, field: &Field) -> Option<()> {
    let phi = field.phi;
    if buf.len() > phi {
        for e in (phi..buf.len()).rev() {
            if buf[e].is_zero() {
                continue;
            }
            let c = buf[e].clone();
            let base = e - phi;
            for &(i, ci) in &field.tail {
                // x^phi = -Σ_{i<phi} Φ_i x^i
                let t = c.mul_i64(ci)?;
                buf[base + i] = buf[base + i].sub(&t)?;
            }
            buf[e] = I::zero();
        }
        buf.truncate(phi);
    }
    while buf.last().is_some_and(|c| c.is_zero()) {
        buf.pop();
    }
    Some(())
}
