use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::coef::Dense;
use super::field::{self, max_conductor, Field};
use super::{nt, ExactError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Small(Dense<i128>),
    Big(Dense<BigInt>),
}

impl Repr {
    fn from_big(d: Dense<BigInt>) -> Repr {
        match d.to_small() {
            Some(s) => Repr::Small(s),
            None => Repr::Big(d),
        }
    }

    fn big(&self) -> Dense<BigInt> {
        match self {
            Repr::Small(s) => s.to_big(),
            Repr::Big(b) => b.clone(),
        }
    }

    fn unary(
        &self,
        small: impl Fn(&Dense<i128>) -> Option<Dense<i128>>,
        big: impl Fn(&Dense<BigInt>) -> Option<Dense<BigInt>>,
    ) -> Repr {
        if let Repr::Small(a) = self {
            if let Some(r) = small(a) {
                return Repr::Small(r);
            }
        }
        let r = big(&self.big()).expect("BigInt arithmetic is total");
        Repr::from_big(r)
    }

    fn binary(
        &self,
        other: &Repr,
        small: impl Fn(&Dense<i128>, &Dense<i128>) -> Option<Dense<i128>>,
        big: impl Fn(&Dense<BigInt>, &Dense<BigInt>) -> Option<Dense<BigInt>>,
    ) -> Repr {
        if let (Repr::Small(a), Repr::Small(b)) = (self, other) {
            if let Some(r) = small(a, b) {
                return Repr::Small(r);
            }
        }
        let r = big(&self.big(), &other.big()).expect("BigInt arithmetic is total");
        Repr::from_big(r)
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small(s) => s.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    fn len(&self) -> usize {
        match self {
            Repr::Small(s) => s.num.len(),
            Repr::Big(b) => b.num.len(),
        }
    }
}

/// An exact element of the cyclotomic field `Q(ζ_N)`.
///
/// Stored as a polynomial in `ζ_N` of degree `< φ(N)`, reduced modulo `Φ_N`,
/// so equality within one conductor is structural. Values with different
/// conductors are compared (and combined) after lifting both to the lcm.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    repr: Repr,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.repr == other.repr;
        }
        match Cyclotomic::common(self, other) {
            Ok((a, b)) => a.repr == b.repr,
            Err(_) => false,
        }
    }
}

impl Cyclotomic {
    fn field(&self) -> std::sync::Arc<Field> {
        field::field(self.conductor).expect("conductor validated at construction")
    }

    fn with(conductor: u32, repr: Repr) -> Self {
        Cyclotomic { conductor, repr }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::with(conductor.max(1), Repr::Small(Dense::zero()))
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(1, conductor)
    }

    pub fn from_int(v: i64, conductor: u32) -> Self {
        let d = Dense::normalize(vec![v as i128], 1).expect("small integer");
        Self::with(conductor.max(1), Repr::Small(d))
    }

    pub fn from_rational(r: &Rational, conductor: u32) -> Self {
        let d = Dense::normalize(vec![r.numer().clone()], r.denom().clone())
            .expect("BigInt arithmetic is total");
        Self::with(conductor.max(1), Repr::from_big(d))
    }

    /// `Σ c·ζ_N^e` for arbitrary exponents `e` (taken mod `N`).
    pub fn from_terms(conductor: u32, terms: &[(u64, Rational)]) -> Result<Self, ExactError> {
        let f = field::field(conductor)?;
        let den = terms
            .iter()
            .fold(<BigInt as One>::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom().clone()));
        let scaled: Vec<(usize, BigInt)> = terms
            .iter()
            .map(|(e, c)| {
                (
                    (e % conductor as u64) as usize,
                    c.numer() * (&den / c.denom()),
                )
            })
            .collect();
        let d = Dense::from_terms(&scaled, den, &f).expect("BigInt arithmetic is total");
        Ok(Self::with(conductor, Repr::from_big(d)))
    }

    /// `ζ_N^k` at conductor `N`.
    pub fn zeta(conductor: u32, k: i64) -> Result<Self, ExactError> {
        let e = k.rem_euclid(conductor as i64) as u64;
        Self::from_terms(conductor, &[(e, Rational::one())])
    }

    /// `ζ_order^k` expressed at `conductor`, which must be a multiple of `order`.
    pub fn root_of_unity(order: u32, k: i64, conductor: u32) -> Result<Self, ExactError> {
        if order == 0 || !conductor.is_multiple_of(order) {
            return Err(ExactError::ConductorMismatch {
                needed: order as u64,
                have: conductor,
            });
        }
        Self::zeta(conductor, k * (conductor / order) as i64)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.repr.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let d = self.repr.big();
        Some(match d.num.first() {
            None => Rational::zero(),
            Some(n) => Rational::new(n.clone(), d.den.clone()),
        })
    }

    /// Rational integer value, if this element is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Nonzero coefficients `(k, c_k)` of the canonical form `Σ c_k ζ_N^k`.
    pub fn terms(&self) -> Vec<(usize, Rational)> {
        let d = self.repr.big();
        d.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| (k, Rational::new(c.clone(), d.den.clone())))
            .collect()
    }

    /// Integer numerators over the common denominator.
    pub(crate) fn dense_big(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.repr.big();
        (d.num, d.den)
    }

    /// Re-expresses this element in `Q(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, conductor: u32) -> Result<Self, ExactError> {
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        if !conductor.is_multiple_of(self.conductor) {
            return Err(ExactError::ConductorMismatch {
                needed: self.conductor as u64,
                have: conductor,
            });
        }
        let f = field::field(conductor)?;
        let mult = (conductor / self.conductor) as u64;
        let repr = self
            .repr
            .unary(|a| a.remap(mult, &f), |a| a.remap(mult, &f));
        Ok(Self::with(conductor, repr))
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self), ExactError> {
        let l = nt::lcm(a.conductor as u64, b.conductor as u64);
        if l > max_conductor() as u64 {
            return Err(ExactError::ConductorOverflow {
                conductor: l,
                cap: max_conductor(),
            });
        }
        Ok((a.lift(l as u32)?, b.lift(l as u32)?))
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(&Repr, &Repr, &Field) -> Repr,
    ) -> Result<Self, ExactError> {
        if self.conductor == other.conductor {
            let f = self.field();
            return Ok(Self::with(self.conductor, op(&self.repr, &other.repr, &f)));
        }
        let (a, b) = Self::common(self, other)?;
        let f = a.field();
        Ok(Self::with(a.conductor, op(&a.repr, &b.repr, &f)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip(other, |a, b, _| {
            a.binary(b, |x, y| x.add(y, false), |x, y| x.add(y, false))
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip(other, |a, b, _| {
            a.binary(b, |x, y| x.add(y, true), |x, y| x.add(y, true))
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip(other, |a, b, f| a.binary(b, |x, y| x.mul(y, f), |x, y| x.mul(y, f)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.conductor);
        }
        let (n, d) = (r.numer().clone(), r.denom().clone());
        let small = match (i128::try_from(&n), i128::try_from(&d)) {
            (Ok(a), Ok(b)) if a != i128::MIN => Some((a, b)),
            _ => None,
        };
        let repr = self.repr.unary(
            |x| small.and_then(|(a, b)| x.scale(&a, &b)),
            |x| x.scale(&n, &d),
        );
        Self::with(self.conductor, repr)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the automorphism `ζ_N ↦ ζ_N^k`.
    pub fn galois(&self, k: i64) -> Result<Self, ExactError> {
        let n = self.conductor as u64;
        let k = k.rem_euclid(n as i64) as u64;
        if nt::gcd(k, n) != 1 {
            return Err(ExactError::NotCoprime { k, n });
        }
        if k == 1 % n || self.is_rational() {
            return Ok(self.clone());
        }
        let f = self.field();
        let repr = self.repr.unary(|a| a.remap(k, &f), |a| a.remap(k, &f));
        Ok(Self::with(self.conductor, repr))
    }

    pub fn conj(&self) -> Self {
        self.galois(self.conductor as i64 - 1)
            .expect("-1 is a unit modulo every conductor")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse: the product of the other Galois conjugates
    /// divided by the (rational) norm.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(&r.recip(), self.conductor));
        }
        let n = self.conductor as u64;
        let mut orbit: Vec<Cyclotomic> = vec![self.clone()];
        for k in 2..n {
            if nt::gcd(k, n) != 1 {
                continue;
            }
            let y = self.galois(k as i64)?;
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        let mut others = Self::one(self.conductor);
        for y in &orbit[1..] {
            others = &others * y;
        }
        let norm = (self * &others)
            .to_rational()
            .expect("the norm of an algebraic number is rational");
        Ok(others.scale(&norm.recip()))
    }

    /// Multiplicative order when this element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        self.root_of_unity_exponent().map(|(m, j)| m / nt::gcd(j, m))
    }

    /// Finds `(M, j)` with `self = ζ_M^j`, `M = lcm(N, 2)`, if `self` is a root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<(u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let m = nt::lcm(self.conductor as u64, 2);
        let (re, im) = super::approx::to_f64_pair(self);
        if ((re * re + im * im) - 1.0).abs() > 1e-6 {
            return None;
        }
        let turns = im.atan2(re) / std::f64::consts::TAU;
        let j = ((turns * m as f64).round() as i64).rem_euclid(m as i64) as u64;
        let cand = Self::zeta(m as u32, j as i64).ok()?;
        (cand == *self).then_some((m, j))
    }

    /// Largest absolute coefficient size in bits (diagnostics).
    pub fn height_bits(&self) -> u64 {
        let d = self.repr.big();
        d.num
            .iter()
            .map(|c| c.abs().bits())
            .max()
            .unwrap_or(0)
            .max(d.den.bits())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if *k != 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("cyclotomic {}: {e}", stringify!($method)))
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let repr = self.repr.unary(|a| a.neg(), |a| a.neg());
        Cyclotomic::with(self.conductor, repr)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(1), |acc, x| acc + x)
    }
}
