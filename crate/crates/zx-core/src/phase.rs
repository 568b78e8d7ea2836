use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num::Integer;

use crate::CoreError;

const TAU: f64 = 2.0 * PI;

/// A phase `num/den * pi`, normalized to `[0, 2pi)` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiRational {
    num: i64,
    den: u64,
}

impl PiRational {
    pub fn new(num: i64, den: u64) -> Result<Self, CoreError> {
        if den == 0 {
            return Err(CoreError::Phase("zero denominator".into()));
        }
        let den = den as i64;
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        // reduce n/d modulo 2
        let n = n.rem_euclid(2 * d);
        Ok(Self { num: n, den: d as u64 })
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn pi() -> Self {
        Self { num: 1, den: 1 }
    }

    /// `k * pi / d`, a convenience for grids.
    pub fn frac(k: i64, d: u64) -> Self {
        Self::new(k, d).expect("nonzero denominator")
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn radians(&self) -> f64 {
        self.num as f64 * PI / self.den as f64
    }

    pub fn add(self, other: Self) -> Self {
        let den = self.den.lcm(&other.den);
        let n = self.num * (den / self.den) as i64 + other.num * (den / other.den) as i64;
        Self::new(n, den).expect("nonzero")
    }

    pub fn neg(self) -> Self {
        Self::new(-self.num, self.den).expect("nonzero")
    }

    pub fn mul_int(self, k: i64) -> Self {
        Self::new(self.num * k.rem_euclid(2 * self.den as i64), self.den).expect("nonzero")
    }

    /// `self / k`, exact.
    pub fn div_int(self, k: u64) -> Self {
        Self::new(self.num, self.den * k).expect("nonzero")
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for PiRational {
    type Err = CoreError;

    /// Parses `"a/b"` or `"a"`, meaning `(a/b)*pi`.
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let bad = || CoreError::Phase(format!("cannot parse phase {s:?}; expected \"a/b\" (multiples of pi)"));
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                Self::new(a, b).map_err(|_| bad())
            }
            None => Self::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

/// A spider phase: exact rational multiple of pi, or a float in radians for
/// phases that are not rational multiples of pi.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealAngle {
    Exact(PiRational),
    Float(f64),
}

impl RealAngle {
    pub fn zero() -> Self {
        Self::Exact(PiRational::zero())
    }

    pub fn pi() -> Self {
        Self::Exact(PiRational::pi())
    }

    pub fn frac(k: i64, d: u64) -> Self {
        Self::Exact(PiRational::frac(k, d))
    }

    /// Float phase normalized into `[0, 2pi)`. Non-finite input is rejected.
    pub fn float(rad: f64) -> Result<Self, CoreError> {
        if !rad.is_finite() {
            return Err(CoreError::Phase(format!("non-finite float phase {rad}")));
        }
        let mut r = rad.rem_euclid(TAU);
        if r >= TAU {
            r = 0.0;
        }
        Ok(Self::Float(r))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Self::Exact(p) => p.radians(),
            Self::Float(r) => *r,
        }
    }

    pub fn exact(&self) -> Option<PiRational> {
        match self {
            Self::Exact(p) => Some(*p),
            Self::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }

    pub fn add(self, other: Self) -> Self {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a.add(b)),
            (a, b) => Self::float(a.radians() + b.radians()).expect("finite"),
        }
    }

    pub fn neg(self) -> Self {
        match self {
            Self::Exact(a) => Self::Exact(a.neg()),
            Self::Float(r) => Self::float(-r).expect("finite"),
        }
    }

    pub fn mul_int(self, k: i64) -> Self {
        match self {
            Self::Exact(a) => Self::Exact(a.mul_int(k)),
            Self::Float(r) => Self::float(r * k as f64).expect("finite"),
        }
    }

    /// Circular distance in radians.
    pub fn distance(&self, other: &Self) -> f64 {
        let d = (self.radians() - other.radians()).rem_euclid(TAU);
        d.min(TAU - d)
    }

    /// Exact equality for two exact phases; otherwise circular distance within `tol`.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a == b,
            _ => self.distance(other) <= tol,
        }
    }
}

impl fmt::Display for RealAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(p) => write!(f, "{p}"),
            Self::Float(r) => write!(f, "{r}rad"),
        }
    }
}

impl From<PiRational> for RealAngle {
    fn from(p: PiRational) -> Self {
        Self::Exact(p)
    }
}
