//! First extension groups between simple modules.
//!
//! The `G₁` and `G₁B` tables are stored as data. The `G`-level groups are
//! computed from the `G₁` table by a fixed-point count, which at `p = 0`
//! reduces to Weyl-character multiplicities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charring::{weyl_char, FormalChar};
use crate::decomp::{zhat_case, zhat_factors};
use crate::error::{check_l, Error, Result};
use crate::lattice::{decompose, w, FacetType, Weight};

/// One summand of an `Ext¹_{G₁}` group, viewed as a `G/G₁`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtLabel {
    Triv,
    NablaTwist(Weight),
}

impl ExtLabel {
    /// Label of the classical `∇̄(x)`; the zero weight is the trivial module.
    pub fn of(x: Weight) -> Self {
        if x == Weight::ZERO {
            ExtLabel::Triv
        } else {
            ExtLabel::NablaTwist(x)
        }
    }

    pub fn weight(self) -> Weight {
        match self {
            ExtLabel::Triv => Weight::ZERO,
            ExtLabel::NablaTwist(x) => x,
        }
    }

    pub fn dual(self) -> Self {
        ExtLabel::of(self.weight().swap())
    }
}

impl fmt::Display for ExtLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLabel::Triv => f.write_str("k"),
            ExtLabel::NablaTwist(x) => write!(f, "nabla{x}"),
        }
    }
}

impl FromStr for ExtLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "k" {
            return Ok(ExtLabel::Triv);
        }
        let inner = s
            .strip_prefix("nabla")
            .map(|t| t.strip_suffix("^F").unwrap_or(t))
            .ok_or_else(|| format!("bad Ext label {s:?}"))?;
        let x: Weight = inner
            .parse()
            .map_err(|e| format!("bad Ext label {s:?}: {e}"))?;
        Ok(ExtLabel::NablaTwist(x))
    }
}

/// A multiset of labels; empty means the group vanishes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct ExtValue {
    parts: Vec<ExtLabel>,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = ExtLabel>) -> Self {
        let mut parts: Vec<ExtLabel> = parts.into_iter().collect();
        parts.sort();
        ExtValue { parts }
    }

    pub fn parts(&self) -> &[ExtLabel] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn count(&self, label: ExtLabel) -> usize {
        self.parts.iter().filter(|&&p| p == label).count()
    }

    /// Untwisted classical character: `k ↦ e(0)`, `∇̄(x) ↦ χ(x)`.
    pub fn character(&self) -> FormalChar {
        self.parts
            .iter()
            .map(|p| weyl_char(p.weight()).expect("labels are dominant"))
            .sum()
    }

    pub fn dim(&self) -> i64 {
        self.character().dim()
    }

    pub fn dual(&self) -> Self {
        ExtValue::from_parts(self.parts.iter().map(|p| p.dual()))
    }

    fn push(&mut self, label: ExtLabel) {
        self.parts.push(label);
        self.parts.sort();
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let shown: Vec<String> = self
            .parts
            .iter()
            .map(|p| match p {
                ExtLabel::Triv => "k".to_string(),
                ExtLabel::NablaTwist(_) => format!("{p}^F"),
            })
            .collect();
        f.write_str(&shown.join(" + "))
    }
}

impl From<ExtValue> for Vec<String> {
    fn from(v: ExtValue) -> Self {
        v.parts.iter().map(|p| p.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for ExtValue {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let parts = v
            .iter()
            .map(|s| s.parse())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ExtValue::from_parts(parts))
    }
}

const N01: ExtLabel = ExtLabel::NablaTwist(w(0, 1));
const N10: ExtLabel = ExtLabel::NablaTwist(w(1, 0));

/// Nonzero entries of the `G₁` table as `(α, β, label)`.
///
/// Coinciding `(α, β)` pairs add up. At `l = 3` the three entries of each
/// alcove row land on one column, which gives the `k ⊕ ∇̄(0,1) ⊕ ∇̄(1,0)`
/// value; the same happens at `l = 3(r+1)` for `r = s`.
fn g1_entries(l: i64) -> Vec<(Weight, Weight, ExtLabel)> {
    let mut out = Vec::new();
    for r in 0..=l - 2 {
        let s = l - 2 - r;
        let (t, right, left) = (w(r, s), w(l - 1, r), w(s, l - 1));
        out.push((t, right, N01));
        out.push((t, left, N10));
        out.push((right, t, N10));
        out.push((left, t, N01));
    }
    for r in 0..=l - 3 {
        for s in 0..=l - 3 - r {
            let down = w(r, s);
            let up = w(l - s - 2, l - r - 2);
            out.push((down, up, ExtLabel::Triv));
            out.push((down, w(r + s + 1, l - s - 2), N01));
            out.push((down, w(l - r - 2, r + s + 1), N10));
            out.push((up, down, ExtLabel::Triv));
            out.push((up, w(s, l - r - s - 3), N01));
            out.push((up, w(l - r - s - 3, r), N10));
        }
    }
    out
}

fn check_restricted(x: Weight, l: i64) -> Result<()> {
    if !x.is_restricted(l) {
        return Err(Error::NotRestricted { w: x, l });
    }
    Ok(())
}

fn check_p0(p: i64) -> Result<()> {
    if p != 0 {
        return Err(Error::PositiveCharacteristic(p));
    }
    Ok(())
}

/// `Ext¹_{G₁}(L(α), L(β))` for restricted `α`, `β`.
pub fn ext1_g1(alpha: Weight, beta: Weight, l: i64) -> Result<ExtValue> {
    check_l(l)?;
    check_restricted(alpha, l)?;
    check_restricted(beta, l)?;
    let mut out = ExtValue::zero();
    for (x, y, label) in g1_entries(l) {
        if x == alpha && y == beta {
            out.push(label);
        }
    }
    Ok(out)
}

/// Nonzero `(row, column)` positions of the `G₁B` table, one-based, in
/// the order of `zhat_factors`.
///
/// Kept as printed. The up-alcove entry `(4, 1)` disagrees with
/// `ext1_g1b_general`; that row repeats the down-alcove row `μ₄`.
fn g1b_table(case: FacetType) -> &'static [(usize, usize)] {
    match case {
        FacetType::Vertex => &[],
        FacetType::RightWall | FacetType::LeftWall => &[(2, 1), (3, 2), (4, 3)],
        FacetType::HorizontalWall => &[(2, 1), (3, 1), (4, 2), (4, 3)],
        FacetType::DownAlcove => &[
            (2, 1),
            (2, 6),
            (3, 2),
            (4, 1),
            (4, 8),
            (5, 4),
            (6, 2),
            (6, 5),
            (7, 2),
            (7, 4),
            (7, 9),
            (8, 3),
            (8, 4),
            (9, 6),
            (9, 7),
            (9, 8),
        ],
        FacetType::UpAlcove => &[
            (1, 7),
            (2, 1),
            (2, 5),
            (2, 8),
            (3, 2),
            (3, 9),
            (4, 1),
            (4, 8),
            (5, 2),
            (5, 4),
            (6, 5),
            (7, 4),
            (7, 9),
            (8, 4),
            (9, 6),
            (9, 7),
            (9, 8),
        ],
    }
}

fn factor_index(factors: &[Weight], x: Weight, mu: Weight) -> Result<usize> {
    factors.iter().position(|&f| f == x).ok_or_else(|| {
        let list: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
        Error::OutOfRange(format!(
            "{x} is not a composition factor of Zhat({mu}); factors are {}",
            list.join(", ")
        ))
    })
}

/// `dim Ext¹_{G₁B}(L̂(λ), L̂(η))` for composition factors of `Ẑ(μ)`.
pub fn ext1_g1b(mu: Weight, lam: Weight, eta: Weight, l: i64) -> Result<u32> {
    let factors = zhat_factors(mu, l)?;
    let i = factor_index(&factors, lam, mu)? + 1;
    let j = factor_index(&factors, eta, mu)? + 1;
    Ok(g1b_table(zhat_case(mu, l)).contains(&(i, j)) as u32)
}

/// `dim Ext¹_{G₁B}(L̂(λ), L̂(μ))` for arbitrary weights, at `p = 0`.
pub fn ext1_g1b_general(lam: Weight, mu: Weight, l: i64, p: i64) -> Result<u32> {
    check_l(l)?;
    check_p0(p)?;
    let (dl, dm) = (decompose(lam, l), decompose(mu, l));
    let diff = dm.classical - dl.classical;
    if diff.is_dominant() {
        if dl.restricted == dm.restricted {
            return Ok(0);
        }
        // Hom(k, E ⊗ ∇̄(d)) counts summands of E isomorphic to ∇̄(d)*
        let e = ext1_g1(dl.restricted, dm.restricted, l)?;
        return Ok(e.count(ExtLabel::of(diff.swap())) as u32);
    }
    if dl.restricted != dm.restricted {
        return Ok(0);
    }
    let hit = [w(2, -1), w(-1, 2)].into_iter().any(|alpha| {
        let mut step = 1i64;
        loop {
            let target = -step * alpha;
            if target == diff {
                return true;
            }
            if step.abs() > diff.a.abs() + diff.b.abs() {
                return false;
            }
            step *= l;
        }
    });
    Ok(hit as u32)
}

/// `dim Ext¹_G(L(μ), L(λ))` for dominant `μ`, `λ`, at `p = 0`.
pub fn ext1_g(mu: Weight, lam: Weight, l: i64, p: i64) -> Result<u32> {
    check_l(l)?;
    check_p0(p)?;
    for x in [mu, lam] {
        if !x.is_dominant() {
            return Err(Error::NotDominant(x));
        }
    }
    let (dm, dl) = (decompose(mu, l), decompose(lam, l));
    // the classical category is semisimple in characteristic zero
    if dm.restricted == dl.restricted {
        return Ok(0);
    }
    let e = ext1_g1(dm.restricted, dl.restricted, l)?;
    if e.is_zero() {
        return Ok(0);
    }
    let product = &e.character() * &weyl_char(dl.classical)?;
    let mult = product
        .weyl_expansion()
        .get(&dm.classical)
        .copied()
        .unwrap_or(0);
    Ok(mult.max(0) as u32)
}

/// Socle of `L(1,0) ⊗ L(λ)` for restricted `λ`, as printed, with two
/// editorial repairs: the `(0, l-1)` row's first entry reads `(1, l-1)`
/// and the `(r, l-2)` row's last entry reads `(r-1, l-1)`.
fn socle_row(x: Weight, l: i64) -> Option<Vec<Weight>> {
    let (r, s) = (x.a, x.b);
    let top = l - 1;
    let rows: Vec<Weight> = if (r, s) == (0, 0) {
        vec![w(1, 0)]
    } else if (r, s) == (top, top) {
        vec![w(top, l - 2)]
    } else if (r, s) == (top, 0) {
        vec![w(l - 2, 1)]
    } else if (r, s) == (0, top) {
        vec![w(1, top), w(0, l - 2)]
    } else if r == 0 && (1..=l - 3).contains(&s) {
        vec![w(1, s), w(0, s - 1)]
    } else if (r, s) == (0, l - 2) {
        vec![w(0, l - 3)]
    } else if s == 0 && (1..=l - 2).contains(&r) {
        vec![w(r + 1, 0), w(r - 1, 1)]
    } else if r + s == l - 2 && (1..=l - 3).contains(&r) {
        vec![w(r, s - 1), w(r - 1, s + 1)]
    } else if r >= 1 && s >= 1 && r + s <= l - 3 {
        vec![w(r + 1, s), w(r - 1, s + 1), w(r, s - 1)]
    } else if s == top && (1..=l - 2).contains(&r) {
        vec![w(r + 1, top), w(r, l - 2)]
    } else if r == top && (1..=l - 2).contains(&s) {
        vec![w(l - 2, s + 1), w(top, s - 1)]
    } else if (r, s) == (1, l - 2) {
        vec![w(2, l - 2), w(0, top)]
    } else if s == l - 2 && (2..=l - 2).contains(&r) {
        vec![w(r + 1, l - 2), w(r, l - 3), w(r - 1, top)]
    } else if r == l - 2 && (2..=l - 2).contains(&s) {
        vec![w(top, s), w(l - 2, s - 1), w(l - 3, s + 1)]
    } else if (r, s) == (l - 2, 1) {
        vec![w(top, 1), w(l - 3, 2)]
    } else if r + s == top && (2..=l - 3).contains(&r) {
        vec![w(r + 1, s), w(r - 1, s + 1)]
    } else if r + s >= l && r <= l - 3 && s <= l - 3 {
        vec![w(r + 1, s), w(r - 1, s + 1), w(r, s - 1)]
    } else {
        return None;
    };
    Some(rows)
}

/// `soc_G L(ω) ⊗ L(λ)` for `ω = (1,0)` or `(0,1)`, as a list of highest
/// weights.
pub fn socle_fundamental_tensor(lam: Weight, l: i64, which: Weight) -> Result<Vec<Weight>> {
    check_l(l)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam));
    }
    let dualize = match (which.a, which.b) {
        (1, 0) => false,
        (0, 1) => true,
        _ => {
            return Err(Error::Unsupported(format!(
                "socle table only for (1,0) and (0,1), got {which}"
            )))
        }
    };
    let d = decompose(lam, l);
    let key = if dualize {
        d.restricted.swap()
    } else {
        d.restricted
    };
    let row = socle_row(key, l).ok_or_else(|| {
        Error::OutOfRange(format!(
            "no socle table row for {} at l = {l}",
            d.restricted
        ))
    })?;
    Ok(row
        .into_iter()
        .map(|x| if dualize { x.swap() } else { x })
        .map(|x| x + l * d.classical)
        .collect())
}
