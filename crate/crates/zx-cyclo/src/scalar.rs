use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::poly::{cyclotomic_polynomial, lcm, totient};
use crate::CycloError;

/// An element of `Q(z)`, `z = exp(2*pi*i/M)`, stored as its coefficient vector
/// in the power basis `1, z, ..., z^(phi(M)-1)`.
///
/// `M` is always a multiple of 8, so `sqrt(2)` lives in every field we use.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    modulus: u32,
    coeffs: Vec<BigRational>,
}

fn check_modulus(m: u32) -> Result<(), CycloError> {
    if m == 0 || m % 8 != 0 {
        Err(CycloError::ModulusNotMultipleOf8(m))
    } else {
        Ok(())
    }
}

/// Reduce a rational polynomial (any length) modulo `Phi_m` into `phi(m)` slots.
fn reduce(m: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    let t = &c * BigRational::from_integer(pj.clone());
                    poly[i - deg + j] -= t;
                }
            }
        }
        poly.truncate(deg);
    }
    poly.resize(deg, BigRational::zero());
    poly
}

impl CycloScalar {
    pub fn zero(m: u32) -> Result<Self, CycloError> {
        check_modulus(m)?;
        Ok(Self { modulus: m, coeffs: vec![BigRational::zero(); totient(m)] })
    }

    pub fn one(m: u32) -> Result<Self, CycloError> {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, r: BigRational) -> Result<Self, CycloError> {
        let mut s = Self::zero(m)?;
        s.coeffs[0] = r;
        Ok(s)
    }

    pub fn from_integer(m: u32, v: i64) -> Result<Self, CycloError> {
        Self::from_rational(m, BigRational::from_integer(v.into()))
    }

    /// Build from coefficients of an arbitrary-degree polynomial in `z`;
    /// the result is reduced modulo `Phi_m`.
    pub fn from_poly(m: u32, poly: Vec<BigRational>) -> Result<Self, CycloError> {
        check_modulus(m)?;
        Ok(Self { modulus: m, coeffs: reduce(m, poly) })
    }

    /// Same as [`from_poly`](Self::from_poly) for integer coefficients.
    pub fn from_int_poly(m: u32, poly: Vec<BigInt>) -> Result<Self, CycloError> {
        Self::from_poly(m, poly.into_iter().map(BigRational::from_integer).collect())
    }

    /// `z^k` for any integer `k` (negative exponents wrap mod `M`).
    pub fn zeta_pow(m: u32, k: i64) -> Result<Self, CycloError> {
        check_modulus(m)?;
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Ok(Self { modulus: m, coeffs: reduce(m, poly) })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Re-express at modulus `m2`, which must be a multiple of the current one.
    pub fn lift(&self, m2: u32) -> Result<Self, CycloError> {
        check_modulus(m2)?;
        if m2 % self.modulus != 0 {
            return Err(CycloError::NotDivisible { divisor: self.modulus, modulus: m2 });
        }
        if m2 == self.modulus {
            return Ok(self.clone());
        }
        let step = (m2 / self.modulus) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(Self { modulus: m2, coeffs: reduce(m2, poly) })
    }

    /// Lift both operands to the least common modulus.
    pub fn align(a: &Self, b: &Self) -> (Self, Self) {
        if a.modulus == b.modulus {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.modulus, b.modulus);
        (a.lift(m).expect("lcm of valid moduli"), b.lift(m).expect("lcm of valid moduli"))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Numeric value with `z = exp(2*pi*i/M)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m);
                w * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    fn add_impl(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Self { modulus: a.modulus, coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        let n = a.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self { modulus: a.modulus, coeffs: reduce(a.modulus, poly) }
    }

    /// Human-readable form with the modulus annotated, e.g. `1 + z^2  [M=8]`.
    pub fn annotated(&self) -> String {
        format!("{self}  [M={}]", self.modulus)
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::align(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: Self) -> CycloScalar {
        self.add_impl(rhs)
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: Self) -> CycloScalar {
        self.add_impl(&-rhs)
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: Self) -> CycloScalar {
        self.mul_impl(rhs)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycloScalar {
            type Output = CycloScalar;
            fn $f(self, rhs: Self) -> CycloScalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag_str = if mag.is_integer() { mag.numer().to_string() } else { format!("({mag})") };
            match j {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `exp(i * pi * num/den)` as an element of `Q(zeta_m)`.
pub fn root_of_unity(num: i64, den: u64, m: u32) -> Result<CycloScalar, CycloError> {
    check_modulus(m)?;
    let twice = 2 * den;
    if (m as u64) % twice != 0 {
        return Err(CycloError::NotDivisible { divisor: twice as u32, modulus: m });
    }
    // exp(i*pi*num/den) = zeta_m^(num * m / (2 den))
    let e = num * (m as u64 / twice) as i64;
    CycloScalar::zeta_pow(m, e)
}

/// `sqrt(2) = z^(M/8) + z^(7M/8)`.
pub fn sqrt_two(m: u32) -> Result<CycloScalar, CycloError> {
    check_modulus(m)?;
    let a = CycloScalar::zeta_pow(m, (m / 8) as i64)?;
    let b = CycloScalar::zeta_pow(m, (7 * m / 8) as i64)?;
    Ok(&a + &b)
}

/// Greatest common modulus helper for callers building many scalars.
pub fn common_modulus<I: IntoIterator<Item = u32>>(ms: I) -> u32 {
    ms.into_iter().fold(8, |acc, m| acc.lcm(&m))
}
