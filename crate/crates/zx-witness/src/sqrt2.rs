//! Is sqrt 2 in Q(zeta_2k)? Solved exactly inside Q(zeta_lcm(8, 2k)).

use zx_cyclo::{lcm, membership_solve, sqrt_two, Membership};

use crate::report::{SubCheck, WitnessReport};
use crate::WitnessError;

pub fn sqrt2_membership(k: u32) -> Result<Membership, WitnessError> {
    if k == 0 {
        return Err(WitnessError::Input("k must be at least 1".into()));
    }
    let order = 2 * k;
    let target = sqrt_two(lcm(8, order))?;
    Ok(membership_solve(&target, order)?)
}

/// Expected: member exactly when `k` is a multiple of 4.
pub fn witness_sqrt2(ks: &[u32]) -> Result<WitnessReport, WitnessError> {
    if ks.is_empty() {
        return Err(WitnessError::Input("no k values given".into()));
    }
    let mut checks = Vec::new();
    for &k in ks {
        let m = sqrt2_membership(k)?;
        let expected = k % 4 == 0;
        let evidence = match &m.coords {
            Some(c) => {
                let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("member, coordinates over powers of zeta_{}: [{}]", 2 * k, c.join(", "))
            }
            None => "not a member".into(),
        };
        let name = format!("k={k}: sqrt2 {} Q(zeta_{})", if expected { "in" } else { "not in" }, 2 * k);
        checks.push(SubCheck::new(name, m.member == expected, evidence));
    }
    Ok(WitnessReport::new("sqrt2", checks, vec![]))
}
