use crate::covers::{induce_arrangement, stratum_vn_dims, CoverSpec};
use crate::error::{Error, Result};
use crate::linalg::{format_rat, Rat};

use super::model::Arrangement;

/// `Σ_I (-1)^{|I|} χ(D_I)`, divided by `|G|` when `a` carries a group.
pub fn euler_characteristic(a: &Arrangement) -> Rat {
    let chi: i64 = a
        .strata()
        .map(|(s, cs)| {
            let sign = if s.len() % 2 == 0 { 1 } else { -1 };
            sign * cs.iter().map(|c| c.euler()).sum::<i64>()
        })
        .sum();
    Rat::new(chi.into(), a.group().order().into())
}

/// Euler characteristic of the complement. With a cover, the ℓ²-value is
/// computed from the von Neumann dimensions of the lifted strata and must
/// equal the base value.
pub fn euler_l2(a: &Arrangement, cover: Option<&CoverSpec>) -> Result<Rat> {
    let base = euler_characteristic(a);
    let Some(c) = cover else {
        return Ok(base);
    };
    let lifted = induce_arrangement(a, c)?;
    let order = c.group().order();
    let mut l2 = Rat::from_integer(0.into());
    for (s, comps) in lifted.strata() {
        let perms = c.permutations(s).expect("lifted strata come from the cover");
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        // one representative per orbit
        let mut seen = vec![false; comps.len()];
        for x in 0..comps.len() {
            if seen[x] {
                continue;
            }
            for p in perms {
                seen[p[x]] = true;
            }
            let st = c.stabilizer_order(s, x);
            for (k, &b) in comps[x].betti.iter().enumerate() {
                let v = stratum_vn_dims(b, st, order)?;
                let sk = if k % 2 == 0 { sign } else { -sign };
                l2 += v * Rat::from_integer(sk.into());
            }
        }
    }
    if l2 != base {
        return Err(Error::EulerMismatch {
            base: format_rat(&base),
            l2: format_rat(&l2),
        });
    }
    Ok(l2)
}
