//! Subfield membership: is a given element of `Q(zeta_M)` inside `Q(zeta_K)`?

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::poly::totient;
use crate::{CycloError, CycloScalar};

/// Outcome of [`membership_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Coordinates over `1, w, ..., w^(phi(K)-1)`, `w = zeta_K`, when `member`.
    pub coords: Option<Vec<BigRational>>,
}

/// Solve `target = sum_j x_j * zeta_K^j` (`j < phi(K)`) over the rationals
/// inside `Q(zeta_M)`, `M = target.modulus()`.
pub fn membership_solve(target: &CycloScalar, order: u32) -> Result<Membership, CycloError> {
    let m = target.modulus();
    if order == 0 || m % order != 0 {
        return Err(CycloError::NotDivisible { divisor: order, modulus: m });
    }
    let basis_len = totient(order);
    let step = (m / order) as i64;
    let basis: Vec<CycloScalar> =
        (0..basis_len).map(|j| CycloScalar::zeta_pow(m, j as i64 * step)).collect::<Result<_, _>>()?;

    // Rows are the phi(M) coordinates; columns are basis vectors then the target.
    let rows = totient(m);
    let cols = basis_len + 1;
    let mut mat: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let entries: Vec<&BigRational> =
            basis.iter().map(|b| &b.coeffs()[r]).chain(std::iter::once(&target.coeffs()[r])).collect();
        let den = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        mat.push(entries.iter().map(|e| e.numer() * (&den / e.denom())).collect());
    }

    let pivots = bareiss(&mut mat, basis_len);
    let rank = pivots.len();
    let consistent = mat[rank..].iter().all(|row| row[cols - 1].is_zero());
    if !consistent {
        return Ok(Membership { member: false, coords: None });
    }

    let mut x = vec![BigRational::zero(); basis_len];
    for (t, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(mat[t][cols - 1].clone());
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !mat[t][j].is_zero() {
                acc -= BigRational::from_integer(mat[t][j].clone()) * xj;
            }
        }
        x[pc] = acc / BigRational::from_integer(mat[t][pc].clone());
    }
    Ok(Membership { member: true, coords: Some(x) })
}

/// Fraction-free row echelon form over the first `ncols` columns (the
/// remaining columns are carried along). Returns pivot columns in order.
fn bareiss(mat: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = mat.len();
    let width = mat.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let pivot = mat[r][c].clone();
        for i in r + 1..nrows {
            let lead = mat[i][c].clone();
            for j in c + 1..width {
                let v = &pivot * &mat[i][j] - &lead * &mat[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step was not exact");
                mat[i][j] = q;
            }
            mat[i][c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sqrt_two;

    fn sqrt2_in(k: u32) -> Membership {
        let m = num::integer::lcm(8, 2 * k);
        membership_solve(&sqrt_two(m).unwrap(), 2 * k).unwrap()
    }

    #[test]
    fn sqrt_two_membership_follows_four_divides_k() {
        for k in 1..=12 {
            assert_eq!(sqrt2_in(k).member, k % 4 == 0, "k={k}");
        }
    }

    #[test]
    fn coordinates_at_eight() {
        // sqrt2 = w + w^-1 = w - w^3 with w = zeta_8
        let got = sqrt2_in(4).coords.unwrap();
        let expect: Vec<BigRational> = [0, 1, 0, -1].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn coordinates_reconstruct_target() {
        for k in [8u32, 12] {
            let m = num::integer::lcm(8, 2 * k);
            let target = sqrt_two(m).unwrap();
            let coords = membership_solve(&target, 2 * k).unwrap().coords.unwrap();
            let step = (m / (2 * k)) as i64;
            let mut acc = CycloScalar::zero(m).unwrap();
            for (j, c) in coords.iter().enumerate() {
                acc = &acc + &CycloScalar::zeta_pow(m, j as i64 * step).unwrap().scale(c);
            }
            assert_eq!(acc, target);
        }
    }

    #[test]
    fn rationals_are_always_members() {
        let t = CycloScalar::from_integer(24, 7).unwrap();
        for order in [1, 2, 3, 4, 6, 8, 12, 24] {
            assert!(membership_solve(&t, order).unwrap().member);
        }
        assert!(membership_solve(&t, 5).is_err());
    }

    #[test]
    fn imaginary_unit_needs_order_four() {
        let i = CycloScalar::zeta_pow(24, 6).unwrap();
        assert!(!membership_solve(&i, 6).unwrap().member);
        assert!(membership_solve(&i, 12).unwrap().member);
        assert!(membership_solve(&i, 4).unwrap().member);
    }
}
