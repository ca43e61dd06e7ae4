//! Weight lattice of SL3 in fundamental-weight coordinates, the three
//! positive roots, the affine Weyl group acting by the dot action, and the
//! facet classification of dominant weights.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_l, Error, Result};

/// A weight `a·ω₁ + b·ω₂`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };
    pub const RHO: Weight = Weight { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn is_restricted(self, l: i64) -> bool {
        (0..l).contains(&self.a) && (0..l).contains(&self.b)
    }

    /// Swap of coordinates, i.e. `-w₀`.
    pub fn swap(self) -> Self {
        Weight::new(self.b, self.a)
    }

    /// Coordinates in the basis of simple roots, if integral.
    pub fn root_coords(self) -> Option<(i64, i64)> {
        let x = 2 * self.a + self.b;
        let y = self.a + 2 * self.b;
        if x % 3 == 0 && y % 3 == 0 {
            Some((x / 3, y / 3))
        } else {
            None
        }
    }
}

/// `w(a, b)` is shorter than `Weight::new(a, b)` in the long tables.
pub const fn w(a: i64, b: i64) -> Weight {
    Weight::new(a, b)
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<(i64, i64)> for Weight {
    fn from((a, b): (i64, i64)) -> Self {
        Weight::new(a, b)
    }
}

impl From<Weight> for (i64, i64) {
    fn from(x: Weight) -> Self {
        (x.a, x.b)
    }
}

impl std::str::FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = t.split(',').map(|x| x.trim().parse::<i64>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok(Weight::new(a, b)),
            _ => Err(format!("expected a weight of the form a,b but got {s:?}")),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, o: Weight) {
        self.a += o.a;
        self.b += o.b;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a, -self.b)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, x: Weight) -> Weight {
        Weight::new(self * x.a, self * x.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PositiveRoot {
    Alpha1,
    Alpha2,
    Rho,
}

impl PositiveRoot {
    pub const ALL: [PositiveRoot; 3] = [
        PositiveRoot::Alpha1,
        PositiveRoot::Alpha2,
        PositiveRoot::Rho,
    ];

    pub fn vector(self) -> Weight {
        match self {
            PositiveRoot::Alpha1 => w(2, -1),
            PositiveRoot::Alpha2 => w(-1, 2),
            PositiveRoot::Rho => w(1, 1),
        }
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PositiveRoot::Alpha1 => "alpha1",
            PositiveRoot::Alpha2 => "alpha2",
            PositiveRoot::Rho => "rho",
        };
        f.write_str(s)
    }
}

/// `⟨λ+ρ, β∨⟩`.
pub fn pairing(x: Weight, beta: PositiveRoot) -> i64 {
    match beta {
        PositiveRoot::Alpha1 => x.a + 1,
        PositiveRoot::Alpha2 => x.b + 1,
        PositiveRoot::Rho => x.a + x.b + 2,
    }
}

/// Split `λ = l·λ″ + λ′` with `λ′` in the restricted box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictedDecomposition {
    pub classical: Weight,
    pub restricted: Weight,
}

pub fn decompose(x: Weight, l: i64) -> RestrictedDecomposition {
    debug_assert!(l >= 2);
    let restricted = w(x.a.rem_euclid(l), x.b.rem_euclid(l));
    let classical = w(x.a.div_euclid(l), x.b.div_euclid(l));
    RestrictedDecomposition {
        classical,
        restricted,
    }
}

/// Dot reflection in the hyperplane `⟨λ+ρ, β∨⟩ = m·step`.
pub fn affine_reflect(x: Weight, beta: PositiveRoot, m: i64, step: i64) -> Weight {
    x - (pairing(x, beta) - m * step) * beta.vector()
}

/// Sign of the finite Weyl group element taking `λ` to the dominant chamber
/// under the dot action, together with the image. Singular weights give 0.
pub fn dominantize(x: Weight) -> (i32, Weight) {
    if PositiveRoot::ALL.iter().any(|&r| pairing(x, r) == 0) {
        return (0, x);
    }
    let mut sign = 1;
    let mut cur = x;
    loop {
        if pairing(cur, PositiveRoot::Alpha1) < 0 {
            cur = affine_reflect(cur, PositiveRoot::Alpha1, 0, 1);
        } else if pairing(cur, PositiveRoot::Alpha2) < 0 {
            cur = affine_reflect(cur, PositiveRoot::Alpha2, 0, 1);
        } else {
            return (sign, cur);
        }
        sign = -sign;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FacetType {
    Vertex,
    RightWall,
    LeftWall,
    HorizontalWall,
    DownAlcove,
    UpAlcove,
}

impl FacetType {
    /// The roman-numeral case of the character formula this facet selects.
    pub fn case_id(self) -> &'static str {
        match self {
            FacetType::Vertex => "i",
            FacetType::RightWall => "ii",
            FacetType::LeftWall => "iii",
            FacetType::HorizontalWall => "iv",
            FacetType::DownAlcove => "v",
            FacetType::UpAlcove => "vi",
        }
    }

    pub fn is_alcove(self) -> bool {
        matches!(self, FacetType::DownAlcove | FacetType::UpAlcove)
    }
}

impl fmt::Display for FacetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Facet of a restricted weight. Total on the restricted box.
pub fn restricted_facet(r: i64, s: i64, l: i64) -> FacetType {
    let top = l - 1;
    if r == top && s == top {
        FacetType::Vertex
    } else if r == top {
        FacetType::RightWall
    } else if s == top {
        FacetType::LeftWall
    } else if r + s == l - 2 {
        FacetType::HorizontalWall
    } else if r + s <= l - 3 {
        FacetType::DownAlcove
    } else {
        FacetType::UpAlcove
    }
}

pub fn facet_classify(x: Weight, l: i64) -> Result<FacetType> {
    check_l(l)?;
    if !x.is_dominant() {
        return Err(Error::NotDominant(x));
    }
    let r = decompose(x, l).restricted;
    Ok(restricted_facet(r.a, r.b, l))
}

/// One affine reflection `s_{β, m·l}`, recorded so a walk can be replayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub root: PositiveRoot,
    pub m: i64,
}

/// Representative of the `W_l` dot-orbit of `λ` in the closed fundamental
/// alcove, and the reflections applied on the way (first applied first).
pub fn canonicalize(x: Weight, l: i64) -> (Weight, Vec<Reflection>) {
    let cap = 10 * (x.a.abs() + x.b.abs() + l);
    let mut cur = x;
    let mut path = Vec::new();
    for _ in 0..=cap {
        let step = if pairing(cur, PositiveRoot::Alpha1) < 0 {
            Reflection {
                root: PositiveRoot::Alpha1,
                m: 0,
            }
        } else if pairing(cur, PositiveRoot::Alpha2) < 0 {
            Reflection {
                root: PositiveRoot::Alpha2,
                m: 0,
            }
        } else if pairing(cur, PositiveRoot::Rho) > l {
            Reflection {
                root: PositiveRoot::Rho,
                m: 1,
            }
        } else {
            return (cur, path);
        };
        cur = affine_reflect(cur, step.root, step.m, l);
        path.push(step);
    }
    panic!("alcove walk from {x} with l={l} did not terminate after {cap} steps");
}

/// Apply `w` to `x`, where `w` is the element taking the orbit
/// representative back to the start of a recorded walk.
pub fn replay_inverse(x: Weight, path: &[Reflection], l: i64) -> Weight {
    path.iter()
        .rev()
        .fold(x, |cur, r| affine_reflect(cur, r.root, r.m, l))
}

pub fn linked(x: Weight, y: Weight, l: i64) -> bool {
    canonicalize(x, l).0 == canonicalize(y, l).0
}

/// `-w₀λ`.
pub fn dual_weight(x: Weight) -> Weight {
    x.swap()
}

/// Roots whose `l`-hyperplanes pass through `x`.
pub fn walls_through(x: Weight, l: i64) -> Vec<PositiveRoot> {
    PositiveRoot::ALL
        .into_iter()
        .filter(|&r| pairing(x, r).rem_euclid(l) == 0)
        .collect()
}

/// Whether `y` lies in the upper closure of the facet containing `x`.
///
/// For each root, a weight strictly between walls `(n-1)l` and `nl` allows
/// the half-open range `((n-1)l, nl]`; a weight on a wall pins the value.
pub fn in_upper_closure(y: Weight, x: Weight, l: i64) -> bool {
    PositiveRoot::ALL.into_iter().all(|r| {
        let px = pairing(x, r);
        let py = pairing(y, r);
        if px.rem_euclid(l) == 0 {
            py == px
        } else {
            let n = px.div_euclid(l) + 1;
            (n - 1) * l < py && py <= n * l
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(w(0, 0), PositiveRoot::Alpha1), 1);
        assert_eq!(pairing(w(3, 3), PositiveRoot::Rho), 8);
        for l in 2..8 {
            assert_eq!(pairing(w(l - 1, l - 1), PositiveRoot::Rho), 2 * l);
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(w(4, 1), 3);
        assert_eq!((d.classical, d.restricted), (w(1, 0), w(1, 1)));
        let d = decompose(w(3, -3), 3);
        assert_eq!((d.classical, d.restricted), (w(1, -1), w(0, 0)));
        let d = decompose(w(1, 1), 3);
        assert_eq!((d.classical, d.restricted), (w(0, 0), w(1, 1)));
    }

    #[test]
    fn reflections() {
        assert_eq!(affine_reflect(w(3, 3), PositiveRoot::Rho, 2, 3), w(1, 1));
        assert_eq!(
            affine_reflect(w(-2, 1), PositiveRoot::Alpha1, 0, 1),
            w(0, 0)
        );
        // on the wall itself nothing moves
        assert_eq!(affine_reflect(w(2, 0), PositiveRoot::Alpha1, 1, 3), w(2, 0));
    }

    #[test]
    fn dominantize_examples() {
        assert_eq!(dominantize(w(-1, 5)), (0, w(-1, 5)));
        assert_eq!(dominantize(w(2, 3)), (1, w(2, 3)));
        assert_eq!(dominantize(w(-2, 1)), (-1, w(0, 0)));
        // longest element: -(λ+ρ) - ρ
        assert_eq!(dominantize(w(-4, -3)), (-1, w(1, 2)));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(facet_classify(w(3, 3), 3), Ok(FacetType::DownAlcove));
        assert_eq!(facet_classify(w(1, 1), 2), Ok(FacetType::Vertex));
        assert_eq!(facet_classify(w(1, 1), 3), Ok(FacetType::UpAlcove));
        assert_eq!(facet_classify(w(2, 1), 4), Ok(FacetType::UpAlcove));
        // r = l-1 puts this one on the right wall
        assert_eq!(facet_classify(w(2, 1), 3), Ok(FacetType::RightWall));
        assert_eq!(
            facet_classify(w(-1, 0), 3),
            Err(Error::NotDominant(w(-1, 0)))
        );
    }

    #[test]
    fn facets_partition_the_box() {
        for l in [2, 3, 5, 7] {
            for a in 0..4 * l {
                for b in 0..4 * l {
                    let x = w(a, b);
                    let r = decompose(x, l).restricted;
                    let (r, s) = (r.a, r.b);
                    let hits = [
                        r == l - 1 && s == l - 1,
                        r == l - 1 && s < l - 1,
                        s == l - 1 && r < l - 1,
                        r + s == l - 2,
                        r + s <= l - 3,
                        r <= l - 2 && s <= l - 2 && r + s >= l - 1,
                    ];
                    assert_eq!(hits.iter().filter(|&&h| h).count(), 1, "{x} l={l}");
                    let f = facet_classify(x, l).unwrap();
                    let walls = walls_through(x, l).len();
                    match f {
                        FacetType::Vertex => assert_eq!(walls, 3),
                        FacetType::DownAlcove | FacetType::UpAlcove => assert_eq!(walls, 0),
                        _ => assert_eq!(walls, 1),
                    }
                    if f == FacetType::DownAlcove {
                        let m = |rt| pairing(x, rt).rem_euclid(l);
                        let (m1, m2, m3) = (
                            m(PositiveRoot::Alpha1),
                            m(PositiveRoot::Alpha2),
                            m(PositiveRoot::Rho),
                        );
                        assert!(m1 >= 1 && m2 >= 1 && m3 == m1 + m2 && m3 < l);
                    }
                }
            }
        }
    }

    #[test]
    fn linkage_examples() {
        assert!(linked(w(3, 3), w(1, 1), 3));
        assert!(!linked(w(1, 0), w(0, 0), 5));
        // both sit in the closed alcove for l = 2 but in different orbits
        assert!(!linked(w(1, 0), w(0, 1), 2));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(w(1, 0)), w(0, 1));
        assert_eq!(dual_weight(w(2, 2)), w(2, 2));
        assert_eq!(dual_weight(w(4, 1)), w(1, 4));
    }

    #[test]
    fn parse_weights() {
        assert_eq!("3,-2".parse::<Weight>(), Ok(w(3, -2)));
        assert_eq!("(1, 1)".parse::<Weight>(), Ok(w(1, 1)));
        assert!("1,2,3".parse::<Weight>().is_err());
    }

    #[test]
    fn replay_recovers_start() {
        for l in [2, 3, 5] {
            for a in -2 * l..2 * l {
                for b in -2 * l..2 * l {
                    let (rep, path) = canonicalize(w(a, b), l);
                    assert_eq!(replay_inverse(rep, &path, l), w(a, b));
                }
            }
        }
    }

    fn root() -> impl Strategy<Value = PositiveRoot> {
        prop_oneof![
            Just(PositiveRoot::Alpha1),
            Just(PositiveRoot::Alpha2),
            Just(PositiveRoot::Rho)
        ]
    }

    proptest! {
        #[test]
        fn reflect_is_involutive(a in -50i64..50, b in -50i64..50, r in root(), m in -5i64..5, t in 1i64..9) {
            let x = w(a, b);
            prop_assert_eq!(affine_reflect(affine_reflect(x, r, m, t), r, m, t), x);
        }

        #[test]
        fn reflected_weights_stay_linked(a in 0i64..40, b in 0i64..40, r in root(), m in -4i64..8, l in 2i64..8) {
            let x = w(a, b);
            let y = affine_reflect(x, r, m, l);
            prop_assert!(linked(x, y, l));
        }

        #[test]
        fn decompose_round_trips(l in 2i64..8, a in -16i64..16, b in -16i64..16) {
            let d = decompose(w(a, b), l);
            prop_assert!(d.restricted.is_restricted(l));
            prop_assert_eq!(l * d.classical + d.restricted, w(a, b));
        }

        #[test]
        fn rho_pairing_is_additive(a in -99i64..99, b in -99i64..99) {
            let x = w(a, b);
            prop_assert_eq!(
                pairing(x, PositiveRoot::Rho),
                pairing(x, PositiveRoot::Alpha1) + pairing(x, PositiveRoot::Alpha2)
            );
        }
    }
}
