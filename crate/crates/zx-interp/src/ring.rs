//! Entry types the contraction engine works over.

use num::complex::Complex64;
use num::{BigInt, BigRational, One};
use zx_cyclo::{sqrt_two, CycloError, CycloScalar};

pub(crate) trait Entry: Clone {
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for Complex64 {
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
}

/// An element of `Z[zeta_M]` as sparse `(exponent, coefficient)` pairs.
///
/// Exponents live in `[0, M/2)`: `zeta^(M/2) = -1` is folded eagerly so the
/// common `1 + zeta^(M/2)` cancellation happens during contraction. The
/// representation is not canonical otherwise.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct CycInt {
    half: u32,
    terms: Vec<(u32, i128)>,
}

impl CycInt {
    pub fn monomial(m: u32, exp: i64, coeff: i128) -> Self {
        let mut out = CycInt { half: m / 2, terms: Vec::new() };
        out.push(exp.rem_euclid(m as i64) as u32, coeff);
        out
    }

    fn push(&mut self, exp: u32, coeff: i128) {
        let (e, c) = if exp >= self.half { (exp - self.half, -coeff) } else { (exp, coeff) };
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(k) => {
                self.terms[k].1 += c;
                if self.terms[k].1 == 0 {
                    self.terms.remove(k);
                }
            }
            Err(k) if c != 0 => self.terms.insert(k, (e, c)),
            Err(_) => {}
        }
    }

    /// `self * 2^(k/2)`.
    pub fn times_sqrt2_pow(&self, k: u32) -> Self {
        let mut out = CycInt { half: self.half, terms: self.terms.iter().map(|&(e, c)| (e, c << (k / 2))).collect() };
        if k % 2 == 1 {
            // sqrt 2 = zeta^(M/8) - zeta^(3M/8)
            let m = 2 * self.half as i64;
            let mut root = CycInt::monomial(m as u32, m / 8, 1);
            root.add_assign(&CycInt::monomial(m as u32, 3 * m / 8, -1));
            out = out.mul(&root);
        }
        out
    }

    /// Whether the value is zero, i.e. the polynomial vanishes mod `Phi_M`.
    pub fn vanishes(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let m = 2 * self.half;
        let phi: Vec<i128> = zx_cyclo::cyclotomic_polynomial(m)
            .iter()
            .map(|c| i128::try_from(c).expect("small cyclotomic coefficient"))
            .collect();
        let deg = phi.len() - 1;
        let mut poly = vec![0i128; self.half as usize];
        for &(e, c) in &self.terms {
            poly[e as usize] += c;
        }
        for top in (deg..poly.len()).rev() {
            let c = poly[top];
            if c != 0 {
                for (k, p) in phi.iter().enumerate() {
                    poly[top - deg + k] -= c * p;
                }
            }
        }
        poly.iter().all(|&c| c == 0)
    }

    /// The value `self * 2^(-half_powers/2)` as a field element.
    pub fn to_scalar(&self, half_powers: u32) -> Result<CycloScalar, CycloError> {
        let m = 2 * self.half;
        let mut poly = vec![BigInt::from(0); self.half as usize];
        for &(e, c) in &self.terms {
            poly[e as usize] += BigInt::from(c);
        }
        let base = CycloScalar::from_int_poly(m, poly)?;
        let (base, shift) = if half_powers % 2 == 1 {
            (&base * &sqrt_two(m)?, half_powers.div_ceil(2))
        } else {
            (base, half_powers / 2)
        };
        let denom = BigRational::from_integer(BigInt::one() << shift as usize);
        Ok(base.scale(&denom.recip()))
    }
}

impl Entry for CycInt {
    fn add_assign(&mut self, other: &Self) {
        for &(e, c) in &other.terms {
            self.push(e, c);
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = CycInt { half: self.half, terms: Vec::new() };
        let m = 2 * self.half;
        for &(a, ca) in &self.terms {
            for &(b, cb) in &other.terms {
                out.push((a + b) % m, ca * cb);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding_cancels_antipodes() {
        let mut a = CycInt::monomial(8, 0, 1);
        a.add_assign(&CycInt::monomial(8, 4, 1));
        assert!(a.is_zero());
        let z = CycInt::monomial(8, 1, 1);
        assert_eq!(z.mul(&CycInt::monomial(8, 3, 1)), CycInt::monomial(8, 0, -1));
    }

    #[test]
    fn vanishing_mod_phi() {
        // 1 + zeta^2 + zeta^4 + ... over the 12th roots
        let mut sum = CycInt::monomial(24, 0, 0);
        for k in 0..12 {
            sum.add_assign(&CycInt::monomial(24, 2 * k, 1));
        }
        assert!(sum.vanishes());
        assert!(!CycInt::monomial(24, 3, 1).vanishes());
        let s = CycInt::monomial(8, 0, 1).times_sqrt2_pow(2);
        assert_eq!(s, CycInt::monomial(8, 0, 2));
        let r = CycInt::monomial(8, 0, 1).times_sqrt2_pow(1);
        let mut diff = r.mul(&r);
        diff.add_assign(&CycInt::monomial(8, 0, -2));
        assert!(diff.vanishes());
    }

    #[test]
    fn half_powers() {
        let two = CycInt::monomial(8, 0, 2);
        assert!(two.to_scalar(2).unwrap().is_one());
        let s = CycInt::monomial(8, 0, 1).to_scalar(1).unwrap();
        assert!((s.to_complex().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(&s * &s, CycloScalar::from_rational(8, BigRational::new(1.into(), 2.into())).unwrap());
    }
}
