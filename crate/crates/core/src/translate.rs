//! Translation functors on `∇_l` factors, as rewrites of
//! `(classical, restricted)` weight pairs.

use serde::{Deserialize, Serialize};

use crate::charring::{chi_l, weyl_char, FormalChar};
use crate::decomp::chi_decomposition;
use crate::error::{check_l, Error, Result};
use crate::lattice::{
    affine_reflect, canonicalize, decompose, facet_classify, in_upper_closure, pairing,
    replay_inverse, restricted_facet, w, walls_through, FacetType, PositiveRoot, Weight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallTranslationResult {
    pub input: Weight,
    pub output: Option<Weight>,
}

/// One section `∇̄(classical)^F ⊗ L(restricted)` of a translated module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffWallFactor {
    pub classical: Weight,
    pub restricted: Weight,
    /// The classical part is not dominant, so the section is zero.
    pub vanishes: bool,
}

impl OffWallFactor {
    fn new(classical: Weight, restricted: Weight) -> Self {
        OffWallFactor {
            classical,
            restricted,
            vanishes: !classical.is_dominant(),
        }
    }

    pub fn weight(&self, l: i64) -> Weight {
        l * self.classical + self.restricted
    }
}

/// Sections listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffWallFactorList {
    pub factors: Vec<OffWallFactor>,
}

impl OffWallFactorList {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn character(&self, l: i64) -> FormalChar {
        self.factors
            .iter()
            .map(|f| chi_l(f.weight(l), l).expect("l checked"))
            .sum()
    }
}

fn in_closed_alcove(x: Weight, l: i64) -> bool {
    canonicalize(x, l).0 == x
}

/// Whether `y` lies in the closure of the facet containing `x`.
fn in_facet_closure(y: Weight, x: Weight, l: i64) -> bool {
    PositiveRoot::ALL.into_iter().all(|r| {
        let (px, py) = (pairing(x, r), pairing(y, r));
        if px.rem_euclid(l) == 0 {
            py == px
        } else {
            let n = px.div_euclid(l);
            n * l <= py && py <= (n + 1) * l
        }
    })
}

/// `T_λ^μ ∇_l(w·λ)`: either `∇_l(w·μ)` or zero, depending on whether `w·μ`
/// lies in the upper closure of the facet of `w·λ`.
pub fn translate_onto_wall(
    nu: Weight,
    lam0: Weight,
    mu0: Weight,
    l: i64,
) -> Result<WallTranslationResult> {
    check_l(l)?;
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu));
    }
    if !in_closed_alcove(lam0, l) || !in_closed_alcove(mu0, l) {
        return Err(Error::OutOfRange(format!(
            "orbit representatives {lam0} and {mu0} must lie in the closed fundamental alcove for l={l}"
        )));
    }
    if !in_facet_closure(mu0, lam0, l) {
        return Err(Error::OutOfRange(format!(
            "{mu0} is not in the closure of the facet of {lam0}"
        )));
    }
    let (rep, path) = canonicalize(nu, l);
    if rep != lam0 {
        return Err(Error::OutOfRange(format!(
            "{nu} is not in the orbit of {lam0} for l={l}"
        )));
    }
    let image = replay_inverse(mu0, &path, l);
    let output = in_upper_closure(image, nu, l).then_some(image);
    Ok(WallTranslationResult { input: nu, output })
}

fn unsupported(mu1: Weight, target: Weight, l: i64) -> Error {
    Error::Unsupported(format!(
        "no off-wall translation rule from restricted {mu1} to {target} at l={l}"
    ))
}

/// Translation off a wall of `∇̄(μ″)^F ⊗ L(μ′)` towards restricted `λ′`.
pub fn translate_off_wall(
    classical: Weight,
    mu1: Weight,
    target: Weight,
    l: i64,
) -> Result<OffWallFactorList> {
    check_l(l)?;
    if !mu1.is_restricted(l) {
        return Err(Error::NotRestricted { w: mu1, l });
    }
    if !target.is_restricted(l) {
        return Err(Error::NotRestricted { w: target, l });
    }
    let c = classical;
    let f = OffWallFactor::new;
    let factors = if l == 2 {
        match ((mu1.a, mu1.b), (target.a, target.b)) {
            ((1, 0), (0, 0)) => vec![
                f(c, w(0, 1)),
                f(c + w(1, 0), w(0, 0)),
                f(c + w(-1, 1), w(0, 0)),
                f(c + w(0, -1), w(0, 0)),
                f(c, w(0, 1)),
            ],
            ((0, 1), (0, 0)) => vec![
                f(c, w(1, 0)),
                f(c + w(0, 1), w(0, 0)),
                f(c + w(1, -1), w(0, 0)),
                f(c + w(-1, 0), w(0, 0)),
                f(c, w(1, 0)),
            ],
            ((0, 0), (1, 0)) | ((0, 0), (0, 1)) => vec![f(c, target)],
            ((1, 0), (0, 1)) | ((0, 1), (1, 0)) => vec![f(c, w(0, 0))],
            _ => return Err(unsupported(mu1, target, l)),
        }
    } else {
        let (a, b) = (target.a, target.b);
        let into_down = restricted_facet(a, b, l) == FacetType::DownAlcove;
        match restricted_facet(mu1.a, mu1.b, l) {
            FacetType::RightWall if into_down => {
                let outer = w(l - a - 2, a + b + 1);
                vec![
                    f(c, outer),
                    f(c + w(1, 0), target),
                    f(c + w(-1, 1), target),
                    f(c + w(0, -1), target),
                    f(c, w(l - a - b - 3, a)),
                    f(c, outer),
                ]
            }
            FacetType::LeftWall if into_down => {
                let outer = w(a + b + 1, l - b - 2);
                vec![
                    f(c, outer),
                    f(c + w(0, 1), target),
                    f(c + w(1, -1), target),
                    f(c + w(-1, 0), target),
                    f(c, w(b, l - a - b - 3)),
                    f(c, outer),
                ]
            }
            FacetType::HorizontalWall if restricted_facet(a, b, l) == FacetType::UpAlcove => {
                let outer = w(l - 2 - b, l - 2 - a);
                vec![f(c, outer), f(c, target), f(c, outer)]
            }
            _ => return Err(unsupported(mu1, target, l)),
        }
    };
    Ok(OffWallFactorList { factors })
}

/// Element of the `λ`-orbit that a factor on a wall translates to: of the
/// two orbit points adjacent to the factor across its wall, the one above.
pub fn off_wall_target(factor: Weight, lam: Weight, l: i64) -> Result<Weight> {
    let walls = walls_through(factor, l);
    let [beta] = walls[..] else {
        return Err(Error::OutOfRange(format!(
            "{factor} does not lie on exactly one wall for l={l}"
        )));
    };
    let (_, path) = canonicalize(factor, l);
    let lam0 = canonicalize(lam, l).0;
    let here = replay_inverse(lam0, &path, l);
    let level = pairing(factor, beta);
    let there = affine_reflect(here, beta, level / l, l);
    Ok(if pairing(here, beta) > level {
        here
    } else {
        there
    })
}

/// Wall weight below `λ` used to build `∇(λ)` by translation, and the
/// reflection fixing it.
pub fn wall_below(lam: Weight, l: i64) -> Result<(Weight, PositiveRoot, i64)> {
    let facet = facet_classify(lam, l)?;
    let d = decompose(lam, l);
    let (a, b) = (d.classical.a, d.classical.b);
    let down = facet == FacetType::DownAlcove || (l == 2 && d.restricted == w(0, 0));
    if down {
        Ok((l * w(a - 1, b) + w(l - 1, 0), PositiveRoot::Alpha1, a))
    } else if facet == FacetType::UpAlcove {
        Ok((l * w(a, b) + w(0, l - 2), PositiveRoot::Rho, a + b + 1))
    } else {
        Err(Error::OutOfRange(format!(
            "{lam} is not an alcove weight for l={l}"
        )))
    }
}

/// Translated sections of `T_μ^λ ∇(μ)`, one list per surviving `∇_l`
/// factor of `∇(μ)`, for the wall weight `μ` below `λ`.
#[derive(Clone, Debug)]
pub struct TranslatedWall {
    pub wall: Weight,
    pub lists: Vec<OffWallFactorList>,
    /// `w·λ` for the reflection `w` fixing the wall weight.
    pub mirror: Weight,
    /// Some factor of `∇(μ)` vanished, so fewer than four lists exist.
    pub dropped: bool,
}

pub fn translated_sections(lam: Weight, l: i64) -> Result<TranslatedWall> {
    let (mu, beta, m) = wall_below(lam, l)?;
    if !mu.is_dominant() {
        return Err(Error::OutOfRange(format!(
            "wall weight {mu} below {lam} is not dominant"
        )));
    }
    let mirror = affine_reflect(lam, beta, m, l);
    let dec = chi_decomposition(mu, l)?;
    let mut lists = Vec::new();
    for (_, f) in dec.surviving() {
        let d = decompose(f, l);
        let target = off_wall_target(f, lam, l)?;
        lists.push(translate_off_wall(
            d.classical,
            d.restricted,
            decompose(target, l).restricted,
            l,
        )?);
    }
    let dropped = lists.len() < dec.factors.len();
    Ok(TranslatedWall {
        wall: mu,
        lists,
        mirror,
        dropped,
    })
}

/// Number of `∇_l` sections of the translate, for generic `λ` only.
pub fn translate_nabla_factor_count(lam: Weight, l: i64) -> Result<usize> {
    let t = translated_sections(lam, l)?;
    let generic = !t.dropped
        && t.mirror.is_dominant()
        && t.lists.iter().flat_map(|x| &x.factors).all(|f| !f.vanishes);
    if !generic {
        return Err(Error::OutOfRange(format!(
            "{lam} is not in generic position for l={l}"
        )));
    }
    Ok(t.lists.iter().map(OffWallFactorList::len).sum())
}

/// `ch ∇(λ) + ch ∇(w·λ)` recovered from the translated sections.
pub fn translated_character(lam: Weight, l: i64) -> Result<(FormalChar, FormalChar)> {
    let t = translated_sections(lam, l)?;
    let got = t.lists.iter().map(|x| x.character(l)).sum();
    let mut want = weyl_char(lam)?;
    if t.mirror.is_dominant() {
        want += &weyl_char(t.mirror)?;
    }
    Ok((got, want))
}
