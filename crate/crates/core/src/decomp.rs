//! Good `l`-filtration factors of `∇(λ)` and composition factors of `Ẑ(λ)`.
//!
//! Factor lists are transcribed from the six facet cases. Entries whose
//! `χ_l` vanishes are kept in `factors`; `nonzero` marks the entries that
//! survive as genuine sections once vanishing and mutually cancelling terms
//! are removed.

use serde::{Deserialize, Serialize};

use crate::charring::{chi_l, restricted_simple_char, FormalChar};
use crate::error::{check_l, Error, Result};
use crate::lattice::{
    decompose, facet_classify, restricted_facet, w, FacetType, PositiveRoot, Weight,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompJson", into = "DecompJson")]
pub struct DecompResult {
    pub lam: Weight,
    pub l: i64,
    pub facet: FacetType,
    pub factors: Vec<Weight>,
    pub nonzero: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DecompJson {
    lambda: Weight,
    l: i64,
    case: String,
    factors: Vec<Weight>,
    nonzero: Vec<bool>,
}

impl From<DecompResult> for DecompJson {
    fn from(d: DecompResult) -> Self {
        DecompJson {
            lambda: d.lam,
            l: d.l,
            case: d.facet.case_id().to_string(),
            factors: d.factors,
            nonzero: d.nonzero,
        }
    }
}

impl TryFrom<DecompJson> for DecompResult {
    type Error = String;

    fn try_from(j: DecompJson) -> std::result::Result<Self, String> {
        let facet = [
            FacetType::Vertex,
            FacetType::RightWall,
            FacetType::LeftWall,
            FacetType::HorizontalWall,
            FacetType::DownAlcove,
            FacetType::UpAlcove,
        ]
        .into_iter()
        .find(|f| f.case_id() == j.case)
        .ok_or_else(|| format!("unknown case {:?}", j.case))?;
        if j.factors.len() != j.nonzero.len() {
            return Err("factors and nonzero differ in length".into());
        }
        Ok(DecompResult {
            lam: j.lambda,
            l: j.l,
            facet,
            factors: j.factors,
            nonzero: j.nonzero,
        })
    }
}

impl DecompResult {
    pub fn case_id(&self) -> &'static str {
        self.facet.case_id()
    }

    /// Factors that are actual sections of the filtration, with their
    /// one-based position in the raw list.
    pub fn surviving(&self) -> impl Iterator<Item = (usize, Weight)> + '_ {
        self.factors
            .iter()
            .zip(&self.nonzero)
            .enumerate()
            .filter(|(_, (_, &keep))| keep)
            .map(|(i, (&f, _))| (i + 1, f))
    }

    pub fn character(&self) -> FormalChar {
        self.factors
            .iter()
            .map(|&f| chi_l(f, self.l).expect("l checked"))
            .sum()
    }
}

/// The nine weights around an alcove weight.
///
/// `(r,s)` is a down-alcove restricted weight; in the up case the weight
/// itself is `l(a,b) + (l-s-2, l-r-2)`.
fn alcove_family(facet: FacetType, a: i64, b: i64, r: i64, s: i64, l: i64) -> Vec<Weight> {
    let (la, lb) = (l * a, l * b);
    match facet {
        FacetType::DownAlcove => vec![
            w(la + r, lb + s),
            w(la + r + s + 1, lb - s - 2),
            w(la + l - r - s - 3, lb - 2 * l + r),
            w(la - r - 2, lb + r + s + 1),
            w(la - 2 * l + s, lb + l - r - s - 3),
            w(la + s, lb - r - s - 3),
            w(la - l + r, lb - l + s),
            w(la - r - s - 3, lb + r),
            w(la - s - 2, lb - r - 2),
        ],
        FacetType::UpAlcove => vec![
            w(la - l + s, lb + 2 * l - r - s - 3),
            w(la - r - 2, lb + r + s + 1),
            w(la - l + r, lb - l + s),
            w(la + l - s - 2, lb + l - r - 2),
            w(la - r - s - 3, lb + r),
            w(la + 2 * l - r - s - 3, lb - l + r),
            w(la + s, lb - r - s - 3),
            w(la + r, lb + s),
            w(la + r + s + 1, lb - s - 2),
        ],
        _ => unreachable!("alcove family requested for {facet:?}"),
    }
}

/// `∇_l` factor weights of `∇(λ)`, one list per facet case.
fn nabla_factor_weights(lam: Weight, l: i64, facet: FacetType) -> Vec<Weight> {
    let d = decompose(lam, l);
    let (a, b) = (d.classical.a, d.classical.b);
    let (p, q) = (d.restricted.a, d.restricted.b);
    let at = |x: i64, y: i64, rest: Weight| l * w(x, y) + rest;
    match facet {
        FacetType::Vertex => vec![lam],
        FacetType::RightWall => {
            let (r, s) = (q, l - q - 2);
            vec![
                at(a, b - 1, w(s, l - 1)),
                at(a + 1, b - 1, w(r, s)),
                at(a - 1, b, w(r, s)),
                lam,
            ]
        }
        FacetType::LeftWall => {
            let (s, r) = (p, l - p - 2);
            vec![
                at(a - 1, b, w(l - 1, r)),
                at(a - 1, b + 1, w(r, s)),
                at(a, b - 1, w(r, s)),
                lam,
            ]
        }
        FacetType::HorizontalWall => {
            let (r, s) = (p, q);
            vec![
                at(a - 1, b - 1, w(r, s)),
                at(a, b - 1, w(l - 1, r)),
                at(a - 1, b, w(s, l - 1)),
                lam,
            ]
        }
        FacetType::DownAlcove => alcove_family(facet, a, b, p, q, l),
        FacetType::UpAlcove => alcove_family(facet, a, b, l - q - 2, l - p - 2, l),
    }
}

/// Marks entries with nonvanishing `χ_l`, then unmarks pairs that cancel.
fn surviving_mask(chars: &[FormalChar]) -> Vec<bool> {
    let mut keep: Vec<bool> = chars.iter().map(|c| !c.is_zero()).collect();
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            if keep[i] && keep[j] && (&chars[i] + &chars[j]).is_zero() {
                keep[i] = false;
                keep[j] = false;
            }
        }
    }
    keep
}

pub fn chi_decomposition(lam: Weight, l: i64) -> Result<DecompResult> {
    let facet = facet_classify(lam, l)?;
    let factors = nabla_factor_weights(lam, l, facet);
    let chars: Vec<FormalChar> = factors
        .iter()
        .map(|&f| chi_l(f, l))
        .collect::<Result<_>>()?;
    Ok(DecompResult {
        lam,
        l,
        facet,
        nonzero: surviving_mask(&chars),
        factors,
    })
}

/// `ch L̂(ν) = φ(ν′)·e(lν″)`.
pub fn zhat_simple_char(nu: Weight, l: i64) -> Result<FormalChar> {
    let d = decompose(nu, l);
    Ok(restricted_simple_char(d.restricted, l)?.shift(l * d.classical))
}

/// Facet case of the restricted part, which is what `Ẑ` cares about.
pub fn zhat_case(lam: Weight, l: i64) -> FacetType {
    let r = decompose(lam, l).restricted;
    restricted_facet(r.a, r.b, l)
}

/// Composition factors of `Ẑ(λ)`, socle `λ` first.
pub fn zhat_factors(lam: Weight, l: i64) -> Result<Vec<Weight>> {
    check_l(l)?;
    let d = decompose(lam, l);
    let shift = l * d.classical;
    let (p, q) = (d.restricted.a, d.restricted.b);
    let facet = restricted_facet(p, q, l);
    let local: Vec<Weight> = match facet {
        FacetType::Vertex => vec![d.restricted],
        FacetType::RightWall => {
            let (r, s) = (q, l - q - 2);
            vec![w(l - 1, r), w(r - l, s), w(r + l, s - l), w(s, -1)]
        }
        FacetType::LeftWall => {
            let (s, r) = (p, l - p - 2);
            vec![w(s, l - 1), w(r, s - l), w(r - l, s + l), w(-1, r)]
        }
        FacetType::HorizontalWall => {
            let (r, s) = (p, q);
            vec![w(r, s), w(s - l, l - 1), w(l - 1, r - l), w(r - l, s - l)]
        }
        FacetType::DownAlcove | FacetType::UpAlcove => {
            return Ok(nabla_factor_weights(lam, l, facet));
        }
    };
    Ok(local.into_iter().map(|x| x + shift).collect())
}

/// `ch Ẑ(λ) = e(λ) Π_β (1 + e(-β) + … + e(-(l-1)β))`.
pub fn zhat_char(lam: Weight, l: i64) -> Result<FormalChar> {
    check_l(l)?;
    let mut out = FormalChar::e(lam);
    for r in PositiveRoot::ALL {
        let geometric: FormalChar = (0..l).map(|j| (-j * r.vector(), 1)).collect();
        out = &out * &geometric;
    }
    Ok(out)
}

/// Character of an actual `∇_l(μ)`; refuses virtual terms.
pub fn nabla_l_char(mu: Weight, l: i64) -> Result<FormalChar> {
    check_l(l)?;
    let d = decompose(mu, l);
    if !d.classical.is_dominant() {
        return Err(Error::NotDominant(d.classical));
    }
    chi_l(mu, l)
}
