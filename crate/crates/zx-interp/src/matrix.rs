//! Semantic matrices, comparison and printing.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use zx_cyclo::CycloScalar;

use crate::InterpError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend {other:?} (expected exact or float)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(CycloScalar),
    Float(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(s) => s.to_complex(),
            Scalar::Float(c) => *c,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(s) => s.is_zero(),
            Scalar::Float(c) => c.norm() == 0.0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(s) => write!(f, "{s}"),
            Scalar::Float(c) => write!(f, "{}", format_complex(*c)),
        }
    }
}

/// `%.12g`-style formatting of a real number.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    let sci = format!("{x:.11e}");
    // rounding may carry into the next decade
    let (mantissa, e) = sci.split_once('e').expect("scientific");
    let e: i32 = e.parse().expect("exponent");
    if !(-5..12).contains(&e) {
        let sign = if e < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim(mantissa.to_string()), e.abs());
    }
    let decimals = (11 - e.max(exp)).max(0) as usize;
    trim(format!("{x:.decimals$}"))
}

/// `a+bi` / `a-bi` with 12 significant digits per part.
pub fn format_complex(c: Complex64) -> String {
    let clean = |v: f64| if v == 0.0 { 0.0 } else { v };
    let (re, im) = (clean(c.re), clean(c.im));
    if im.is_sign_negative() {
        format!("{}-{}i", format_real(re), format_real(-im))
    } else {
        format!("{}+{}i", format_real(re), format_real(im))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact { modulus: u32, map: BTreeMap<(u64, u64), CycloScalar> },
    Float(BTreeMap<(u64, u64), Complex64>),
}

/// A `2^outputs x 2^inputs` matrix stored sparsely. Row bits are the
/// outputs with output 0 most significant; columns likewise for inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct SemanticMatrix {
    outputs: usize,
    inputs: usize,
    entries: Entries,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Equal,
    Unequal { row: u64, col: u64, left: Scalar, right: Scalar },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

impl SemanticMatrix {
    pub fn exact(outputs: usize, inputs: usize, modulus: u32, map: BTreeMap<(u64, u64), CycloScalar>) -> Self {
        let map = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        SemanticMatrix { outputs, inputs, entries: Entries::Exact { modulus, map } }
    }

    pub fn float(outputs: usize, inputs: usize, map: BTreeMap<(u64, u64), Complex64>) -> Self {
        let map = map.into_iter().filter(|(_, v)| v.norm() != 0.0).collect();
        SemanticMatrix { outputs, inputs, entries: Entries::Float(map) }
    }

    /// Build from a dense row-major closure.
    pub fn from_fn_exact(outputs: usize, inputs: usize, modulus: u32, f: impl Fn(u64, u64) -> CycloScalar) -> Self {
        let mut map = BTreeMap::new();
        for r in 0..1u64 << outputs {
            for c in 0..1u64 << inputs {
                map.insert((r, c), f(r, c));
            }
        }
        Self::exact(outputs, inputs, modulus, map)
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn rows(&self) -> u64 {
        1 << self.outputs
    }

    pub fn cols(&self) -> u64 {
        1 << self.inputs
    }

    pub fn backend(&self) -> Backend {
        match self.entries {
            Entries::Exact { .. } => Backend::Exact,
            Entries::Float(_) => Backend::Float,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match &self.entries {
            Entries::Exact { modulus, .. } => Some(*modulus),
            Entries::Float(_) => None,
        }
    }

    pub fn get(&self, row: u64, col: u64) -> Scalar {
        match &self.entries {
            Entries::Exact { modulus, map } => Scalar::Exact(
                map.get(&(row, col)).cloned().unwrap_or_else(|| CycloScalar::zero(*modulus).expect("valid modulus")),
            ),
            Entries::Float(map) => Scalar::Float(map.get(&(row, col)).copied().unwrap_or_default()),
        }
    }

    pub fn nonzero(&self) -> Vec<(u64, u64)> {
        match &self.entries {
            Entries::Exact { map, .. } => map.keys().copied().collect(),
            Entries::Float(map) => map.keys().copied().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero().is_empty()
    }

    /// The single entry of a `0 -> 0` matrix.
    pub fn scalar(&self) -> Option<Scalar> {
        (self.outputs == 0 && self.inputs == 0).then(|| self.get(0, 0))
    }

    pub fn to_float(&self) -> SemanticMatrix {
        match &self.entries {
            Entries::Exact { map, .. } => {
                Self::float(self.outputs, self.inputs, map.iter().map(|(k, v)| (*k, v.to_complex())).collect())
            }
            Entries::Float(_) => self.clone(),
        }
    }

    fn check_same_backend(&self, other: &Self) -> Result<(), InterpError> {
        if self.backend() != other.backend() {
            return Err(InterpError::BackendMismatch);
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<SemanticMatrix, InterpError> {
        if self.inputs != other.outputs {
            return Err(InterpError::Dimension {
                left: (self.outputs, self.inputs),
                right: (other.outputs, other.inputs),
            });
        }
        self.check_same_backend(other)?;
        let (outs, ins) = (self.outputs, other.inputs);
        Ok(match (&self.entries, &other.entries) {
            (Entries::Exact { modulus: ma, map: a }, Entries::Exact { modulus: mb, map: b }) => {
                let m = zx_cyclo::lcm(*ma, *mb);
                let mut out: BTreeMap<(u64, u64), CycloScalar> = BTreeMap::new();
                for (&(r, k), va) in a {
                    for (&(_, c), vb) in b.range((k, 0)..=(k, u64::MAX)) {
                        let prod = va * vb;
                        let slot = out.entry((r, c)).or_insert_with(|| CycloScalar::zero(m).expect("valid"));
                        *slot = &*slot + &prod;
                    }
                }
                Self::exact(outs, ins, m, out)
            }
            (Entries::Float(a), Entries::Float(b)) => {
                let mut out: BTreeMap<(u64, u64), Complex64> = BTreeMap::new();
                for (&(r, k), va) in a {
                    for (&(_, c), vb) in b.range((k, 0)..=(k, u64::MAX)) {
                        *out.entry((r, c)).or_default() += va * vb;
                    }
                }
                Self::float(outs, ins, out)
            }
            _ => unreachable!("backends checked"),
        })
    }

    /// Kronecker product `self (x) other`; `self` occupies the high bits.
    pub fn kron(&self, other: &Self) -> Result<SemanticMatrix, InterpError> {
        self.check_same_backend(other)?;
        let (outs, ins) = (self.outputs + other.outputs, self.inputs + other.inputs);
        let key = |(r1, c1): (u64, u64), (r2, c2): (u64, u64)| ((r1 << other.outputs) | r2, (c1 << other.inputs) | c2);
        Ok(match (&self.entries, &other.entries) {
            (Entries::Exact { modulus: ma, map: a }, Entries::Exact { modulus: mb, map: b }) => {
                let mut out = BTreeMap::new();
                for (ka, va) in a {
                    for (kb, vb) in b {
                        out.insert(key(*ka, *kb), va * vb);
                    }
                }
                Self::exact(outs, ins, zx_cyclo::lcm(*ma, *mb), out)
            }
            (Entries::Float(a), Entries::Float(b)) => {
                let mut out = BTreeMap::new();
                for (ka, va) in a {
                    for (kb, vb) in b {
                        out.insert(key(*ka, *kb), va * vb);
                    }
                }
                Self::float(outs, ins, out)
            }
            _ => unreachable!("backends checked"),
        })
    }

    /// Multiply every entry by an exact scalar.
    pub fn scaled(&self, s: &CycloScalar) -> SemanticMatrix {
        match &self.entries {
            Entries::Exact { modulus, map } => Self::exact(
                self.outputs,
                self.inputs,
                zx_cyclo::lcm(*modulus, s.modulus()),
                map.iter().map(|(k, v)| (*k, v * s)).collect(),
            ),
            Entries::Float(map) => {
                let c = s.to_complex();
                Self::float(self.outputs, self.inputs, map.iter().map(|(k, v)| (*k, v * c)).collect())
            }
        }
    }

    /// Text rendering for the CLI.
    pub fn render(&self) -> String {
        if let Some(s) = self.scalar() {
            return match &s {
                Scalar::Exact(x) if !x.coeffs().iter().skip(1).all(num::Zero::is_zero) => {
                    format!("scalar: {}", x.annotated())
                }
                _ => format!("scalar: {s}"),
            };
        }
        let mut out = format!("matrix {}x{} ({} -> {})", self.rows(), self.cols(), self.inputs, self.outputs);
        if let Some(m) = self.modulus() {
            out.push_str(&format!("  [M={m}]"));
        }
        out.push('\n');
        if self.rows() * self.cols() <= 256 {
            for r in 0..self.rows() {
                let cells: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).to_string()).collect();
                out.push_str(&format!("  [{}]\n", cells.join(", ")));
            }
        } else {
            for (r, c) in self.nonzero() {
                out.push_str(&format!("  ({r},{c}): {}\n", self.get(r, c)));
            }
        }
        out.pop();
        out
    }
}

/// Exact comparison when both sides are exact; otherwise entrywise
/// `|a - b| <= tol` in floating point.
pub fn matrix_compare(a: &SemanticMatrix, b: &SemanticMatrix, tol: f64) -> Result<Comparison, InterpError> {
    if (a.outputs, a.inputs) != (b.outputs, b.inputs) {
        return Err(InterpError::Dimension { left: (a.outputs, a.inputs), right: (b.outputs, b.inputs) });
    }
    let mut keys = a.nonzero();
    keys.extend(b.nonzero());
    keys.sort_unstable();
    keys.dedup();
    let exact = a.backend() == Backend::Exact && b.backend() == Backend::Exact;
    for (row, col) in keys {
        let (left, right) = (a.get(row, col), b.get(row, col));
        let equal = match (&left, &right) {
            (Scalar::Exact(x), Scalar::Exact(y)) if exact => x == y,
            _ => (left.to_complex() - right.to_complex()).norm() <= tol,
        };
        if !equal {
            return Ok(Comparison::Unequal { row, col, left, right });
        }
    }
    Ok(Comparison::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format() {
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(format_real(-1234.5), "-1234.5");
        assert_eq!(format_real(1e-7), "1e-07");
        assert_eq!(format_real(2.5e13), "2.5e+13");
        assert_eq!(format_real(0.999999999999999), "1");
        assert_eq!(format_complex(Complex64::new(1.0, -2.0)), "1-2i");
        assert_eq!(format_complex(Complex64::new(-0.0, 0.0)), "0+0i");
    }

    #[test]
    fn compare_reports_witness() {
        let one = |m| CycloScalar::one(m).unwrap();
        let a = SemanticMatrix::exact(1, 0, 8, BTreeMap::from([((0, 0), one(8))]));
        let b = SemanticMatrix::exact(1, 0, 24, BTreeMap::from([((1, 0), one(24))]));
        match matrix_compare(&a, &b, 0.0).unwrap() {
            Comparison::Unequal { row, col, .. } => assert_eq!((row, col), (0, 0)),
            Comparison::Equal => panic!("distinct"),
        }
        assert!(matrix_compare(&a, &a.to_float(), 1e-12).unwrap().is_equal());
        assert!(matrix_compare(&a, &SemanticMatrix::float(0, 0, BTreeMap::new()), 0.0).is_err());
    }

    #[test]
    fn kron_and_matmul_small() {
        let z = |k| CycloScalar::zeta_pow(8, k).unwrap();
        let diag = SemanticMatrix::exact(1, 1, 8, BTreeMap::from([((0, 0), z(0)), ((1, 1), z(2))]));
        let sq = diag.matmul(&diag).unwrap();
        assert_eq!(sq.get(1, 1), Scalar::Exact(z(4)));
        let k = diag.kron(&diag).unwrap();
        assert_eq!(k.get(3, 3), Scalar::Exact(z(4)));
        assert_eq!(k.get(1, 1), Scalar::Exact(z(2)));
        assert_eq!(k.nonzero().len(), 4);
    }
}
