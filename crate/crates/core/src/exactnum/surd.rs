//! Rational combinations of square roots, `Σ c_m √m` over squarefree `m`.
//!
//! Square roots of distinct squarefree integers are linearly independent over
//! Q, so the sparse map below is a canonical form and zero is the empty map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gauss_sqrt, nt, Cyclotomic, ExactError, QuadraticNumber, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    terms: BTreeMap<u64, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut s = Self::zero();
        s.push(1, r);
        s
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }

    /// `c·√n` for any positive `n`; the square part is pulled out.
    pub fn surd(c: Rational, n: u64) -> Self {
        let mut s = Self::zero();
        if n == 0 {
            return s;
        }
        let (sq, m) = nt::square_part(n);
        s.push(m, c * Rational::from_integer(sq.into()));
        s
    }

    pub fn sqrt(n: u64) -> Self {
        Self::surd(Rational::one(), n)
    }

    fn push(&mut self, m: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = Self::zero();
        for (m, c) in &self.terms {
            s.push(*m, c * r);
        }
        s
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * (*m as f64).sqrt())
            .sum()
    }

    /// Exact sign by interval refinement of each square root.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut k = 32u32;
        loop {
            // √m ∈ [r/2^k, (r+1)/2^k] with r = isqrt(m·4^k)
            let scale = BigUint::one() << k;
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (m, c) in &self.terms {
                let r = (BigUint::from(*m) * &scale * &scale).sqrt();
                let exact = &r * &r == BigUint::from(*m) * &scale * &scale;
                let l = Rational::new(BigInt::from(r.clone()), BigInt::from(scale.clone()));
                let u = if exact {
                    l.clone()
                } else {
                    Rational::new(BigInt::from(r + 1u32), BigInt::from(scale.clone()))
                };
                if c.is_positive() {
                    lo += c * &l;
                    hi += c * &u;
                } else {
                    lo += c * &u;
                    hi += c * &l;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            k *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// Smallest conductor in which every square root occurring here embeds.
    pub fn min_conductor(&self) -> u64 {
        self.terms
            .keys()
            .fold(1, |acc, m| nt::lcm(acc, QuadraticNumber::min_conductor(*m)))
    }

    pub fn to_cyclotomic(&self, conductor: u32) -> Result<Cyclotomic, ExactError> {
        let mut acc = Cyclotomic::zero(conductor);
        for (m, c) in &self.terms {
            let r = if *m == 1 {
                Cyclotomic::one(conductor)
            } else {
                gauss_sqrt(*m, conductor)?
            };
            acc = acc.checked_add(&r.scale(c))?;
        }
        Ok(acc)
    }
}

impl From<&QuadraticNumber> for SurdSum {
    fn from(x: &QuadraticNumber) -> Self {
        let mut s = Self::rational(x.a().clone());
        s.push(x.d(), x.b().clone());
        s
    }
}

impl From<QuadraticNumber> for SurdSum {
    fn from(x: QuadraticNumber) -> Self {
        (&x).into()
    }
}

impl Add<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn add(self, o: &SurdSum) -> SurdSum {
        let mut s = self.clone();
        for (m, c) in &o.terms {
            s.push(*m, c.clone());
        }
        s
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        self.scale(&-Rational::one())
    }
}

impl Sub<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn sub(self, o: &SurdSum) -> SurdSum {
        self + &(-o)
    }
}

impl Mul<&SurdSum> for &SurdSum {
    type Output = SurdSum;
    fn mul(self, o: &SurdSum) -> SurdSum {
        let mut s = SurdSum::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                // √m1·√m2 = g·√(m1 m2 / g²)
                let g = nt::gcd(*m1, *m2);
                let m = (m1 / g) * (m2 / g);
                s.push(m, c1 * c2 * Rational::from_integer(g.into()));
            }
        }
        s
    }
}

impl std::iter::Sum for SurdSum {
    fn sum<I: Iterator<Item = SurdSum>>(iter: I) -> SurdSum {
        iter.fold(SurdSum::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*m, a.is_one()) {
                (1, _) => write!(f, "{a}")?,
                (m, true) => write!(f, "√{m}")?,
                (m, false) => write!(f, "{a}*√{m}")?,
            }
        }
        Ok(())
    }
}
