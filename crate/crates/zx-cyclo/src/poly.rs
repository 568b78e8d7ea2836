//! Cyclotomic polynomials over the integers, memoized per order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, Integer, One, Zero};

type Cache = RwLock<HashMap<u32, Arc<Vec<BigInt>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
///
/// Built by dividing `X^m - 1` by every `Phi_d` with `d | m`, `d < m`.
/// Results are cached; concurrent callers may race to fill the same entry,
/// which is harmless since every fill computes the same value.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = cache().read().expect("poly cache poisoned").get(&m) {
        return p.clone();
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            num = exact_div(&num, &divisor);
        }
    }
    let poly = Arc::new(num);
    cache().write().expect("poly cache poisoned").entry(m).or_insert_with(|| poly.clone());
    poly
}

/// Exact division by a monic integer polynomial; panics if a remainder is left,
/// which cannot happen for the divisor chains used above.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact cyclotomic division");
    quot
}

/// Euler's totient, which is also `deg Phi_m`.
pub fn totient(m: u32) -> usize {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::complex::Complex64;
    use num::ToPrimitive;

    /// Expand the product of (X - w) over primitive m-th roots w in floating point.
    fn float_oracle(m: u32) -> Vec<i64> {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=m {
            if k.gcd(&m) != 1 {
                continue;
            }
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * w;
            }
            acc = next;
        }
        acc.iter().map(|c| c.re.round() as i64).collect()
    }

    fn as_i64(m: u32) -> Vec<i64> {
        cyclotomic_polynomial(m).iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn matches_root_product() {
        for m in 1..=60 {
            assert_eq!(as_i64(m), float_oracle(m), "order {m}");
            assert_eq!(totient(m) + 1, as_i64(m).len());
        }
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(8), 4);
        assert_eq!(totient(24), 8);
        assert_eq!(totient(312), 96);
    }
}
