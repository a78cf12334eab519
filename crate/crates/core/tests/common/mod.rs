#![allow(dead_code)]

use modforge::exactnum::{
    gauss_sqrt, nt, quad_norm, ratio, to_quadratic, Cyclotomic, QuadraticNumber,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Conductors kept small so inverses stay cheap.
pub const CONDUCTORS: [u32; 9] = [1, 3, 4, 5, 7, 8, 12, 15, 21];

pub fn cyclotomic_in(n: u32) -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec((0..n as u64, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        let terms: Vec<(u64, _)> = terms.into_iter().map(|(k, a, b)| (k, ratio(a, b))).collect();
        Cyclotomic::from_terms(n, &terms).unwrap()
    })
}

pub fn cyclotomic_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    proptest::sample::select(&CONDUCTORS[..])
        .prop_flat_map(|n| (cyclotomic_in(n), cyclotomic_in(n), cyclotomic_in(n)))
}

pub fn unit_mod(n: u32) -> impl Strategy<Value = i64> {
    (1..=n.max(2) as i64).prop_filter("coprime", move |k| nt::gcd(*k as u64, n as u64) == 1)
}

pub fn galois_case() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, i64, i64)> {
    proptest::sample::select(&CONDUCTORS[..]).prop_flat_map(|n| {
        (cyclotomic_in(n), cyclotomic_in(n), unit_mod(n), unit_mod(n))
    })
}

pub fn squarefree_upto_100() -> impl Strategy<Value = u64> {
    (2u64..=100).prop_filter("squarefree", |m| nt::is_squarefree(*m))
}

pub fn quad_pair() -> impl Strategy<Value = (QuadraticNumber, QuadraticNumber)> {
    let coef = || (-20i64..=20, 1i64..=6).prop_map(|(a, b)| ratio(a, b));
    (squarefree_upto_100(), coef(), coef(), coef(), coef()).prop_map(|(d, a, b, c, e)| {
        (
            QuadraticNumber::new(d, a, b).unwrap(),
            QuadraticNumber::new(d, c, e).unwrap(),
        )
    })
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

#[allow(clippy::eq_op)]
pub fn field_axioms(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic) -> Result<(), TestCaseError> {
    let n = a.conductor();
    ensure(&(a + b) + c == a + &(b + c), "additive associativity")?;
    ensure(a + b == b + a, "additive commutativity")?;
    ensure(&(a * b) * c == a * &(b * c), "multiplicative associativity")?;
    ensure(a * b == b * a, "multiplicative commutativity")?;
    ensure(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    ensure(a - a == Cyclotomic::zero(n), "additive inverse")?;
    ensure(a * &Cyclotomic::one(n) == *a, "multiplicative identity")?;
    if !a.is_zero() {
        let inv = a.inverse().map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure((a * &inv).is_one(), "multiplicative inverse")?;
    }
    Ok(())
}

pub fn galois_laws(a: &Cyclotomic, b: &Cyclotomic, k1: i64, k2: i64) -> Result<(), TestCaseError> {
    let g = |x: &Cyclotomic, k: i64| x.galois(k).unwrap();
    let n = a.conductor() as i64;
    ensure(g(&g(a, k2), k1) == g(a, (k1 * k2).rem_euclid(n.max(1))), "composition")?;
    ensure(g(&(a * b), k1) == &g(a, k1) * &g(b, k1), "multiplicative")?;
    ensure(g(&(a + b), k1) == &g(a, k1) + &g(b, k1), "additive")?;
    ensure(a.conj().conj() == *a, "conjugation is an involution")?;
    ensure(a.conj() == g(a, n - 1), "conjugation is k = -1")?;
    ensure((a * &a.conj()).is_real(), "a·ā is real")?;
    Ok(())
}

/// `gauss_sqrt(m)² = m` at the smallest admissible conductor and a multiple.
pub fn gauss_square(m: u64, mult: u32) -> Result<(), TestCaseError> {
    let base = QuadraticNumber::min_conductor(m) as u32;
    for n in [base, base * mult] {
        let r = gauss_sqrt(m, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure(&r * &r == Cyclotomic::from_int(m as i64, n), "square")?;
        ensure(r.is_real(), "real")?;
    }
    Ok(())
}

pub fn quad_laws(x: &QuadraticNumber, y: &QuadraticNumber) -> Result<(), TestCaseError> {
    let xy = x * y;
    ensure(quad_norm(&xy) == quad_norm(x) * quad_norm(y), "norm multiplicativity")?;
    ensure(x.conjugate().conjugate() == *x, "conjugate involution")?;
    ensure((x * &x.conjugate()).is_rational(), "x·x' rational")?;
    let n = QuadraticNumber::min_conductor(x.d()) as u32;
    let c = x.to_cyclotomic(n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let back = to_quadratic(&c, x.d()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure(back == *x, "to_quadratic round trip")?;
    let prod = (x * y).to_cyclotomic(n).unwrap();
    ensure(prod == &c * &y.to_cyclotomic(n).unwrap(), "embedding is multiplicative")?;
    Ok(())
}
