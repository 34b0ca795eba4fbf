use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupcats::categories::check_prime;
use crate::groupcats::group::{members, size, FiniteGroup, Subset};

/// A `p`-centric subgroup with the splitting `C_G(P) = Z(P) × C′_G(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentricSubgroup {
    pub subgroup: Subset,
    pub center: Subset,
    pub centralizer: Subset,
    /// Elements of `C_G(P)` of order prime to `p`.
    pub complement: Subset,
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// All `p`-subgroups `P` with `Z(P)` a Sylow subgroup of `C_G(P)`, sorted by
/// order then bitmask, each with its verified centralizer splitting.
pub fn p_centric(g: &FiniteGroup, p: usize) -> Result<Vec<CentricSubgroup>> {
    check_prime(p)?;
    let mut out = Vec::new();
    for s in g.subgroups() {
        if !g.is_p_group(s, p) {
            continue;
        }
        let centralizer = g.centralizer(s);
        let center = s & centralizer;
        if p_part(size(centralizer), p) != size(center) {
            continue;
        }
        let complement = members(centralizer).filter(|&x| !g.element_order(x).is_multiple_of(p)).fold(0u64, |a, x| a | 1 << x);
        let fail = |why: &str| Error::SplittingFailure(format!("{}: {why}", g.subgroup_name(s)));
        if !g.is_subgroup(complement) {
            return Err(fail("p′-elements of the centralizer do not form a subgroup"));
        }
        if center & complement != 1 || size(center) * size(complement) != size(centralizer) {
            return Err(fail("center and complement do not split the centralizer"));
        }
        let product = members(center).flat_map(|z| members(complement).map(move |c| (z, c))).fold(0u64, |a, (z, c)| a | 1 << g.mul(z, c));
        if product != centralizer || members(center).any(|z| members(complement).any(|c| g.mul(z, c) != g.mul(c, z))) {
            return Err(fail("center and complement do not generate a direct product"));
        }
        out.push(CentricSubgroup { subgroup: s, center, centralizer, complement });
    }
    Ok(out)
}
