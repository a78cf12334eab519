//! Per-conductor data for `Q(ζ_N)`: the cyclotomic polynomial `Φ_N`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use super::nt;
use super::ExactError;

/// Default ceiling on conductors created by arithmetic.
pub const DEFAULT_MAX_CONDUCTOR: u32 = 1 << 16;

static MAX_CONDUCTOR: AtomicU32 = AtomicU32::new(DEFAULT_MAX_CONDUCTOR);

/// Sets the largest conductor arithmetic may create. Coercions past it fail
/// with [`ExactError::ConductorOverflow`].
pub fn set_max_conductor(cap: u32) {
    MAX_CONDUCTOR.store(cap.max(1), Ordering::Relaxed);
}

pub fn max_conductor() -> u32 {
    MAX_CONDUCTOR.load(Ordering::Relaxed)
}

#[derive(Debug)]
pub(crate) struct Field {
    pub n: u32,
    pub phi: usize,
    /// Nonzero `(i, Φ_i)` for `i < phi`; `Φ_phi = 1`.
    pub tail: Vec<(usize, i64)>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn field(n: u32) -> Result<Arc<Field>, ExactError> {
    if n == 0 {
        return Err(ExactError::InvalidConductor(0));
    }
    if n > max_conductor() {
        return Err(ExactError::ConductorOverflow {
            conductor: n as u64,
            cap: max_conductor(),
        });
    }
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return Ok(f.clone());
    }
    let poly = cyclotomic_polynomial(n as u64);
    let phi = poly.len() - 1;
    let tail = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c))
        .collect();
    let f = Arc::new(Field { n, phi, tail });
    cache()
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(f.clone());
    Ok(f)
}

/// Coefficients of `Φ_n`, lowest degree first, via
/// `Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}`.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in nt::divisors(n) {
        match nt::moebius(n / d) {
            1 => {
                // multiply by x^d - 1
                let mut next = vec![0i128; num.len() + d as usize];
                for (i, c) in num.iter().enumerate() {
                    next[i] -= c;
                    next[i + d as usize] += c;
                }
                num = next;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // exact division by x^d - 1, from the top
        let deg = num.len() - 1;
        let mut q = vec![0i128; deg - d + 1];
        let mut rem = num.clone();
        for i in (d..=deg).rev() {
            let c = rem[i];
            if c != 0 {
                q[i - d] = c;
                rem[i] = 0;
                rem[i - d] += c;
            }
        }
        debug_assert!(rem.iter().all(|c| *c == 0));
        num = q;
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105)[7], -2);
    }

    #[test]
    fn degree_is_phi() {
        for n in 1..200u64 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, nt::euler_phi(n));
        }
    }
}
