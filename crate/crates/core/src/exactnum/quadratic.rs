//! Elements `a + b√d` of real quadratic fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gauss_sqrt, nt, Cyclotomic, ExactError, Rational};

/// `a + b√d` with `d` squarefree. For `d = 1` the value is folded into `a`.
///
/// Rational values compare equal regardless of the field they were built in.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    d: u64,
    a: Rational,
    b: Rational,
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl Eq for QuadraticNumber {}

impl std::hash::Hash for QuadraticNumber {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.a.hash(h);
        self.b.hash(h);
        if !self.b.is_zero() {
            self.d.hash(h);
        }
    }
}

impl QuadraticNumber {
    pub fn new(d: u64, a: Rational, b: Rational) -> Result<Self, ExactError> {
        if d == 0 || !nt::is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d));
        }
        Ok(Self::canonical(d, a, b))
    }

    fn canonical(d: u64, a: Rational, b: Rational) -> Self {
        if d == 1 {
            QuadraticNumber {
                d,
                a: a + b,
                b: Rational::zero(),
            }
        } else {
            QuadraticNumber { d, a, b }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticNumber {
            d: 1,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }

    /// `√d` for squarefree `d`.
    pub fn sqrt(d: u64) -> Result<Self, ExactError> {
        Self::new(d, Rational::zero(), Rational::one())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Common field of two operands; a rational operand adopts the other's `d`.
    fn field_with(&self, o: &Self) -> Result<u64, ExactError> {
        match (self.is_rational(), o.is_rational()) {
            (true, _) => Ok(o.d),
            (_, true) => Ok(self.d),
            _ if self.d == o.d => Ok(self.d),
            _ => Err(ExactError::FieldMismatch(self.d, o.d)),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.field_with(o)?;
        Ok(Self::canonical(d, &self.a + &o.a, &self.b + &o.b))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.field_with(o)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Self::canonical(d, a, b))
    }

    /// `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self::canonical(self.d, self.a.clone(), -&self.b)
    }

    pub fn trace(&self) -> Rational {
        &self.a * Rational::from_integer(2.into())
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(Self::canonical(self.d, c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&o.inverse()?)
    }

    /// Exact sign under the positive square root.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Embeds into `Q(ζ_N)` via [`gauss_sqrt`].
    pub fn to_cyclotomic(&self, conductor: u32) -> Result<Cyclotomic, ExactError> {
        let a = Cyclotomic::from_rational(&self.a, conductor);
        if self.b.is_zero() {
            return Ok(a);
        }
        let r = gauss_sqrt(self.d, conductor)?;
        a.checked_add(&r.scale(&self.b))
    }

    /// Conductor [`gauss_sqrt`] needs for `√d`; `4d` is a multiple of 8 when `d` is even.
    pub fn min_conductor(d: u64) -> u64 {
        if d == 1 {
            1
        } else {
            4 * d
        }
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        // (n + m√d)/den with a common denominator
        let den = num_integer::lcm(self.a.denom().clone(), self.b.denom().clone());
        let n = self.a.numer() * (&den / self.a.denom());
        let m = self.b.numer() * (&den / self.b.denom());
        let surd = if m.abs().is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", m.abs(), self.d)
        };
        let body = if n.is_zero() {
            format!("{}{}", if m.is_negative() { "-" } else { "" }, surd)
        } else {
            format!("{} {} {}", n, if m.is_negative() { "-" } else { "+" }, surd)
        };
        if den.is_one() {
            write!(f, "{body}")
        } else if n.is_zero() {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::canonical(self.d, -&self.a, -&self.b)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

macro_rules! quad_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("quadratic {}: {e}", stringify!($method)))
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);

pub fn quad_norm(x: &QuadraticNumber) -> Rational {
    x.norm()
}

/// Algebraic integer (integral trace and norm) of norm `±1`.
pub fn is_algebraic_unit(x: &QuadraticNumber) -> bool {
    x.is_algebraic_integer() && x.norm().abs().is_one()
}

/// Writes `x ∈ Q(ζ_N)` as `a + b√d`, failing if `x ∉ Q(√d)`.
pub fn to_quadratic(x: &Cyclotomic, d: u64) -> Result<QuadraticNumber, ExactError> {
    if d == 0 || !nt::is_squarefree(d) {
        return Err(ExactError::NotSquarefree(d));
    }
    if let Some(r) = x.to_rational() {
        return Ok(QuadraticNumber::canonical(d, r, Rational::zero()));
    }
    if d == 1 {
        return Err(ExactError::NotInSubfield(d));
    }
    let n = nt::lcm(x.conductor() as u64, QuadraticNumber::min_conductor(d));
    if n > super::max_conductor() as u64 {
        return Err(ExactError::ConductorOverflow {
            conductor: n,
            cap: super::max_conductor(),
        });
    }
    let n = n as u32;
    let x = x.lift(n)?;
    let root = gauss_sqrt(d, n)?;
    // any automorphism negating √d splits x into its two coordinates
    let sigma = (2..n as i64)
        .filter(|&k| nt::gcd(k as u64, n as u64) == 1)
        .find(|&k| root.galois(k).map(|r| r == -&root).unwrap_or(false))
        .expect("some automorphism moves √d for d > 1");
    let sx = x.galois(sigma)?;
    let half = Rational::new(1.into(), 2.into());
    let a = (&x + &sx).scale(&half).to_rational();
    let b = (&(&x - &sx) * &root)
        .scale(&Rational::new(1.into(), BigInt::from(2 * d)))
        .to_rational();
    match (a, b) {
        (Some(a), Some(b)) => {
            let q = QuadraticNumber::canonical(d, a, b);
            if q.to_cyclotomic(n)? == x {
                Ok(q)
            } else {
                Err(ExactError::NotInSubfield(d))
            }
        }
        _ => Err(ExactError::NotInSubfield(d)),
    }
}
