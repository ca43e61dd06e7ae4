//! Existence of homomorphisms between induced modules via mirror images in
//! `lp^e`-walls.
//!
//! The predicate is a sufficient condition. For `p = 0` every nonzero map
//! is `l`-good, so searching `e = 0` alone decides existence.

use serde::{Deserialize, Serialize};

use crate::error::{check_l, Error, Result};
use crate::lattice::{affine_reflect, decompose, pairing, PositiveRoot, Weight};

/// A wall `s_{β, m·l·p^e}` in which `λ` and `μ` are mirror images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomWitness {
    pub beta: PositiveRoot,
    pub m: i64,
    pub e: u32,
}

impl HomWitness {
    pub fn step(&self, l: i64, p: i64) -> i64 {
        l * p.pow(self.e)
    }

    /// Re-checks the witness from scratch: the reflection maps `λ` to `μ`
    /// and the closed interval of pairings holds exactly one wall.
    pub fn holds(&self, lam: Weight, mu: Weight, l: i64, p: i64) -> bool {
        if self.e > 0 && p == 0 {
            return false;
        }
        let step = self.step(l, p);
        if affine_reflect(lam, self.beta, self.m, step) != mu {
            return false;
        }
        let (lo, hi) = (pairing(mu, self.beta), pairing(lam, self.beta));
        let walls = (lo..=hi).filter(|v| v.rem_euclid(step) == 0).count();
        walls == 1
    }
}

fn check_p(p: i64) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if p == 0 || prime {
        Ok(())
    } else {
        Err(Error::BadP(p))
    }
}

/// `μ < λ`: the difference is a nonzero sum of positive roots.
fn strictly_below(mu: Weight, lam: Weight) -> bool {
    match (lam - mu).root_coords() {
        Some((x, y)) => x >= 0 && y >= 0 && x + y > 0,
        None => false,
    }
}

pub fn hom_exists_mirror(lam: Weight, mu: Weight, l: i64, p: i64) -> Result<Option<HomWitness>> {
    check_l(l)?;
    check_p(p)?;
    for x in [lam, mu] {
        if !x.is_dominant() {
            return Err(Error::NotDominant(x));
        }
    }
    if !strictly_below(mu, lam) {
        return Ok(None);
    }
    let top = PositiveRoot::ALL
        .iter()
        .map(|&b| pairing(lam, b))
        .max()
        .unwrap();
    let mut e = 0u32;
    loop {
        let step = l * p.pow(e);
        for beta in PositiveRoot::ALL {
            let pl = pairing(lam, beta);
            let diff = lam - mu;
            let v = beta.vector();
            // λ - μ = kβ with 0 < k < step puts λ and μ on either side of
            // a single wall at pl - k
            let k = if v.a != 0 { diff.a / v.a } else { diff.b / v.b };
            if k <= 0 || k * v != diff || k >= step || (pl - k) % step != 0 {
                continue;
            }
            return Ok(Some(HomWitness {
                beta,
                m: (pl - k) / step,
                e,
            }));
        }
        if p == 0 || l * p.pow(e + 1) > top {
            return Ok(None);
        }
        e += 1;
    }
}

/// Head of `Ẑ(λ)`: `L̂(2(l-1)ρ - λ)*`, where `L̂(ν)* = L̂(τν′ - lν″)`.
///
/// For `λ = l(a,b) + (r,s)` with `r, s ≤ l-2` this is
/// `(l-s-2, l-r-2) + l(a-1, b-1)`; vertex weights give `λ` back.
pub fn zhat_head_weight(lam: Weight, l: i64) -> Result<Weight> {
    check_l(l)?;
    let nu = 2 * (l - 1) * Weight::RHO - lam;
    let d = decompose(nu, l);
    Ok(d.restricted.swap() - l * d.classical)
}

/// `η = λ - (r+s+2)ρ` for `λ′ = (r,s)`.
pub fn nabla_g1_head_weight(lam: Weight, l: i64) -> Result<Weight> {
    check_l(l)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam));
    }
    let r = decompose(lam, l).restricted;
    let eta = lam - (r.a + r.b + 2) * Weight::RHO;
    if !eta.is_dominant() {
        return Err(Error::NotDominant(eta));
    }
    Ok(eta)
}

/// Dominant `μ` in `[0, box]²` with a witness, sorted. Lists witnessed
/// pairs only; for `p > 0` the predicate is not known to be complete.
/// Each such Hom space is at most one-dimensional.
pub fn enumerate_hom_targets(
    lam: Weight,
    l: i64,
    p: i64,
    box_: i64,
) -> Result<Vec<(Weight, HomWitness)>> {
    let mut out = Vec::new();
    for a in 0..=box_ {
        for b in 0..=box_ {
            let mu = Weight::new(a, b);
            if let Some(wit) = hom_exists_mirror(lam, mu, l, p)? {
                out.push((mu, wit));
            }
        }
    }
    Ok(out)
}
