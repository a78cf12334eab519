//! Square roots of squarefree integers from quadratic Gauss sums.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use super::{nt, Cyclotomic, ExactError, Rational};

/// `g_p = Σ_{j=1}^{p-1} (j/p) ζ_p^j`, expressed at `conductor` (a multiple of `p`).
pub fn quadratic_gauss_sum(p: u64, conductor: u32) -> Result<Cyclotomic, ExactError> {
    if !nt::is_odd_prime(p) {
        return Err(ExactError::NotOddPrime(p));
    }
    if !(conductor as u64).is_multiple_of(p) {
        return Err(ExactError::ConductorMismatch {
            needed: p,
            have: conductor,
        });
    }
    let step = conductor as u64 / p;
    let terms: Vec<(u64, Rational)> = (1..p)
        .map(|j| {
            let s = nt::legendre(j as i64, p).expect("p checked prime");
            (j * step, Rational::from_integer(s.into()))
        })
        .collect();
    Cyclotomic::from_terms(conductor, &terms)
}

fn prime_sqrt(l: u64, conductor: u32) -> Result<Cyclotomic, ExactError> {
    if l == 2 {
        if !conductor.is_multiple_of(8) {
            return Err(ExactError::SqrtNotInField { m: 2, conductor });
        }
        // ζ_8 + ζ_8^{-1} = 2cos(π/4)
        let z = Cyclotomic::root_of_unity(8, 1, conductor)?;
        return Ok(&z + &z.conj());
    }
    let g = quadratic_gauss_sum(l, conductor)?;
    if l % 4 == 1 {
        Ok(g)
    } else {
        // g = i√l
        let i = Cyclotomic::root_of_unity(4, 1, conductor)?;
        Ok(-(&i * &g))
    }
}

/// The positive real square root of the squarefree `m` inside `Q(ζ_N)`.
///
/// Requires `4 | N` and every prime factor of `m` to divide `N`; `√2` further
/// needs `8 | N`.
pub fn gauss_sqrt(m: u64, conductor: u32) -> Result<Cyclotomic, ExactError> {
    if m == 0 || !nt::is_squarefree(m) {
        return Err(ExactError::NotSquarefree(m));
    }
    if !conductor.is_multiple_of(4) {
        return Err(ExactError::SqrtNotInField { m, conductor });
    }
    let factors = nt::factorize(m);
    if factors.iter().any(|(l, _)| !(conductor as u64).is_multiple_of(*l)) {
        return Err(ExactError::SqrtNotInField { m, conductor });
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Cyclotomic>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(x) = cache.lock().expect("gauss cache poisoned").get(&(m, conductor)) {
        return Ok(x.clone());
    }
    let mut acc = Cyclotomic::from_rational(&Rational::one(), conductor);
    for (l, _) in factors {
        acc = acc.checked_mul(&prime_sqrt(l, conductor)?)?;
    }
    cache
        .lock()
        .expect("gauss cache poisoned")
        .insert((m, conductor), acc.clone());
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{real_sign, to_float};

    #[test]
    fn sqrt_one_is_one() {
        assert!(gauss_sqrt(1, 4).unwrap().is_one());
    }

    #[test]
    fn sqrt_three_at_twelve() {
        let z3 = |k| Cyclotomic::root_of_unity(3, k, 12).unwrap();
        let i = Cyclotomic::zeta(12, 3).unwrap();
        let expected = -(&i * &(&z3(1) - &z3(2)));
        assert_eq!(gauss_sqrt(3, 12).unwrap(), expected);
    }

    #[test]
    fn sqrt_21_is_product() {
        let s = gauss_sqrt(21, 84).unwrap();
        assert_eq!(s, &gauss_sqrt(3, 84).unwrap() * &gauss_sqrt(7, 84).unwrap());
        assert_eq!(&s * &s, Cyclotomic::from_int(21, 84));
        assert_eq!(real_sign(&s).unwrap(), 1);
        assert!((to_float(&s, 64).re - 21f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn squares_and_positivity_up_to_100() {
        for m in (1..=100u64).filter(|&m| nt::is_squarefree(m)) {
            let n = (8 * m / nt::gcd(m, 2)) as u32;
            let s = gauss_sqrt(m, n).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_int(m as i64, n), "m = {m}");
            assert!((to_float(&s, 64).re - (m as f64).sqrt()).abs() < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(gauss_sqrt(12, 24), Err(ExactError::NotSquarefree(12))));
        assert!(gauss_sqrt(3, 6).is_err());
        assert!(gauss_sqrt(5, 12).is_err());
        assert!(gauss_sqrt(2, 4).is_err());
    }
}
