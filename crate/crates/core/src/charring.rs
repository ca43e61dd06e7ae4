//! The formal character ring `ℤX`: Weyl characters, Euler characteristics,
//! Frobenius twists, restricted simple characters and the `χ_l` products.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{check_l, Error, Result};
use crate::lattice::{decompose, dominantize, restricted_facet, w, FacetType, Weight};

/// Finite integer combination of formal exponentials `e(λ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalChar {
    coeffs: BTreeMap<Weight, i64>,
}

impl FormalChar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn e(x: Weight) -> Self {
        Self::term(x, 1)
    }

    pub fn term(x: Weight, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(x, c);
        out
    }

    pub fn add_term(&mut self, x: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(x).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&x);
        }
    }

    pub fn coeff(&self, x: Weight) -> i64 {
        self.coeffs.get(&x).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    /// Sum of coefficients.
    pub fn dim(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    /// Multiply by `e(x)`.
    pub fn shift(&self, x: Weight) -> Self {
        self.map_weights(|y| y + x)
    }

    /// Apply a lattice map to every support weight, merging collisions.
    pub fn map_weights(&self, f: impl Fn(Weight) -> Weight) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_term(f(k), v);
        }
        out
    }

    /// A maximal weight of the support in the dominance order, used when
    /// peeling a character into Weyl characters.
    pub fn highest_dominant(&self) -> Option<Weight> {
        // a+b grows strictly along the dominance order, and on a W-invariant
        // support its maximum is only reached at dominant weights
        self.coeffs.keys().copied().max_by_key(|x| (x.a + x.b, x.a))
    }

    /// Write a `W`-invariant character as `Σ c_ν weyl_char(ν)`.
    pub fn weyl_expansion(&self) -> BTreeMap<Weight, i64> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.highest_dominant() {
            assert!(
                top.is_dominant(),
                "character is not W-invariant: top weight {top}"
            );
            let c = rest.coeff(top);
            out.insert(top, c);
            rest -= &weyl_char(top).expect("dominant").scale(c);
        }
        out
    }
}

impl FromIterator<(Weight, i64)> for FormalChar {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}

impl AddAssign<&FormalChar> for FormalChar {
    fn add_assign(&mut self, o: &FormalChar) {
        for (k, v) in o.iter() {
            self.add_term(k, v);
        }
    }
}

impl SubAssign<&FormalChar> for FormalChar {
    fn sub_assign(&mut self, o: &FormalChar) {
        for (k, v) in o.iter() {
            self.add_term(k, -v);
        }
    }
}

impl Add for &FormalChar {
    type Output = FormalChar;
    fn add(self, o: &FormalChar) -> FormalChar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for FormalChar {
    type Output = FormalChar;
    fn add(mut self, o: FormalChar) -> FormalChar {
        self += &o;
        self
    }
}

impl Sub for &FormalChar {
    type Output = FormalChar;
    fn sub(self, o: &FormalChar) -> FormalChar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for FormalChar {
    type Output = FormalChar;
    fn sub(mut self, o: FormalChar) -> FormalChar {
        self -= &o;
        self
    }
}

impl Neg for FormalChar {
    type Output = FormalChar;
    fn neg(self) -> FormalChar {
        self.scale(-1)
    }
}

impl Mul for &FormalChar {
    type Output = FormalChar;
    fn mul(self, o: &FormalChar) -> FormalChar {
        let mut acc: HashMap<Weight, i64> = HashMap::new();
        for (x, c) in self.iter() {
            for (y, d) in o.iter() {
                *acc.entry(x + y).or_insert(0) += c * d;
            }
        }
        acc.into_iter().collect()
    }
}

impl Mul for FormalChar {
    type Output = FormalChar;
    fn mul(self, o: FormalChar) -> FormalChar {
        &self * &o
    }
}

impl std::iter::Sum for FormalChar {
    fn sum<I: Iterator<Item = FormalChar>>(iter: I) -> Self {
        let mut out = FormalChar::zero();
        for x in iter {
            out += &x;
        }
        out
    }
}

impl Serialize for FormalChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[i64; 3]> = self.iter().map(|(k, c)| [k.a, k.b, c]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalChar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<[i64; 3]>::deserialize(d)?;
        Ok(v.into_iter().map(|[a, b, c]| (w(a, b), c)).collect())
    }
}

/// Ordinary (not dot) action of the simple reflections.
pub fn s1(x: Weight) -> Weight {
    w(-x.a, x.a + x.b)
}

pub fn s2(x: Weight) -> Weight {
    w(x.a + x.b, -x.b)
}

type SignedAction = (i64, fn(Weight) -> Weight);

/// The six elements of `W` as (sign, action) pairs.
fn weyl_group() -> [SignedAction; 6] {
    [
        (1, |x| x),
        (-1, s1),
        (-1, s2),
        (1, |x| s1(s2(x))),
        (1, |x| s2(s1(x))),
        (-1, |x| s1(s2(s1(x)))),
    ]
}

/// `A_μ = Σ_w det(w) e(wμ)`.
pub fn alt_weyl_sum(mu: Weight) -> FormalChar {
    weyl_group().iter().map(|&(sg, f)| (f(mu), sg)).collect()
}

fn weyl_cache() -> &'static RwLock<HashMap<Weight, Arc<FormalChar>>> {
    static CACHE: OnceLock<RwLock<HashMap<Weight, Arc<FormalChar>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Character of `∇(λ)`, by enumerating semistandard tableaux of shape
/// `(a+b, b, 0)`.
pub fn weyl_char(x: Weight) -> Result<FormalChar> {
    if !x.is_dominant() {
        return Err(Error::NotDominant(x));
    }
    if let Some(hit) = weyl_cache().read().unwrap().get(&x) {
        return Ok((**hit).clone());
    }
    let ch = weyl_char_tableaux(x);
    weyl_cache()
        .write()
        .unwrap()
        .insert(x, Arc::new(ch.clone()));
    Ok(ch)
}

fn weyl_char_tableaux(x: Weight) -> FormalChar {
    let row1 = x.a + x.b;
    let row2 = x.b;
    let mut out = FormalChar::zero();
    // row 1 holds n1 ones, n2 twos, n3 threes; row 2 holds m2 twos and m3
    // threes; column strictness forces m2 ≤ n1 and row2 ≤ n1 + n2
    for n1 in 0..=row1 {
        for n2 in 0..=row1 - n1 {
            let n3 = row1 - n1 - n2;
            if n1 + n2 < row2 {
                continue;
            }
            for m2 in 0..=n1.min(row2) {
                let m3 = row2 - m2;
                let (x1, x2, x3) = (n1, n2 + m2, n3 + m3);
                out.add_term(w(x1 - x2, x2 - x3), 1);
            }
        }
    }
    out
}

/// Number of ways to write `γ` as a non-negative sum of positive roots.
fn kostant_partitions(g: Weight) -> i64 {
    match g.root_coords() {
        Some((x, y)) if x >= 0 && y >= 0 => x.min(y) + 1,
        _ => 0,
    }
}

/// Second, independent path to `weyl_char`: Kostant's multiplicity formula.
pub fn weyl_char_kostant(x: Weight) -> Result<FormalChar> {
    if !x.is_dominant() {
        return Err(Error::NotDominant(x));
    }
    let top = x + Weight::RHO;
    let n = x.a + x.b;
    let mut out = FormalChar::zero();
    for a in -n..=n {
        for b in -n..=n {
            let mu = w(a, b) + Weight::RHO;
            let m: i64 = weyl_group()
                .iter()
                .map(|&(sg, f)| sg * kostant_partitions(f(top) - mu))
                .sum();
            out.add_term(w(a, b), m);
        }
    }
    Ok(out)
}

/// `χ(μ)`: signed Weyl character, zero on singular weights.
pub fn euler_char(mu: Weight) -> FormalChar {
    match dominantize(mu) {
        (0, _) => FormalChar::zero(),
        (sg, rep) => weyl_char(rep).expect("dominant").scale(sg as i64),
    }
}

pub fn frobenius_twist(x: &FormalChar, l: i64) -> FormalChar {
    x.map_weights(|y| l * y)
}

pub fn dual_char(x: &FormalChar) -> FormalChar {
    x.map_weights(Weight::swap)
}

/// Memo of restricted simple characters, keyed by `(l, λ′)`. Entries are
/// only ever added, so readers never see a value change.
#[derive(Default)]
pub struct SimpleCharTable {
    cache: RwLock<BTreeMap<(i64, Weight), Arc<FormalChar>>>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    l: i64,
    weight: Weight,
    character: FormalChar,
}

impl SimpleCharTable {
    pub fn global() -> &'static SimpleCharTable {
        static TABLE: OnceLock<SimpleCharTable> = OnceLock::new();
        TABLE.get_or_init(SimpleCharTable::default)
    }

    pub fn len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, x: Weight, l: i64) -> Result<FormalChar> {
        check_l(l)?;
        if !x.is_restricted(l) {
            return Err(Error::NotRestricted { w: x, l });
        }
        if let Some(hit) = self.cache.read().unwrap().get(&(l, x)) {
            return Ok((**hit).clone());
        }
        let ch = compute_restricted_simple(x, l);
        self.cache
            .write()
            .unwrap()
            .entry((l, x))
            .or_insert_with(|| Arc::new(ch.clone()));
        Ok(ch)
    }

    /// Merge entries from a JSON file written by [`SimpleCharTable::save`].
    /// Entries failing the positivity check are skipped.
    pub fn load(&self, path: &Path) -> std::io::Result<usize> {
        let text = std::fs::read_to_string(path)?;
        let entries: Vec<CacheEntry> = serde_json::from_str(&text)?;
        let mut cache = self.cache.write().unwrap();
        let mut added = 0;
        for e in entries {
            if e.l < 2 || !e.weight.is_restricted(e.l) || !e.character.is_nonnegative() {
                continue;
            }
            if e.character.coeff(e.weight) != 1 {
                continue;
            }
            cache.entry((e.l, e.weight)).or_insert_with(|| {
                added += 1;
                Arc::new(e.character)
            });
        }
        Ok(added)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let cache = self.cache.read().unwrap();
        let entries: Vec<CacheEntry> = cache
            .iter()
            .map(|(&(l, weight), ch)| CacheEntry {
                l,
                weight,
                character: (**ch).clone(),
            })
            .collect();
        std::fs::write(path, serde_json::to_string(&entries)?)
    }
}

fn compute_restricted_simple(x: Weight, l: i64) -> FormalChar {
    let full = weyl_char(x).expect("restricted weights are dominant");
    if restricted_facet(x.a, x.b, l) == FacetType::UpAlcove {
        // x = (l-s-2, l-r-2); the head of ∇(x) is L(r, s)
        let head = w(l - x.b - 2, l - x.a - 2);
        full - weyl_char(head).expect("dominant")
    } else {
        full
    }
}

/// `φ(λ′) = ch L(λ′)` for restricted `λ′`.
pub fn restricted_simple_char(x: Weight, l: i64) -> Result<FormalChar> {
    SimpleCharTable::global().get(x, l)
}

/// Composition factors of the small induced modules, socle first.
pub fn small_nabla_factors(x: Weight, l: i64) -> Result<Vec<Weight>> {
    check_l(l)?;
    if x.is_restricted(l) {
        return Ok(match restricted_facet(x.a, x.b, l) {
            FacetType::UpAlcove => vec![x, w(l - x.b - 2, l - x.a - 2)],
            _ => vec![x],
        });
    }
    let d = decompose(x, l);
    let (r, s) = (d.restricted.a, d.restricted.b);
    let lower_closed = r + s <= l - 2;
    if d.classical == w(1, 0) && lower_closed {
        return Ok(vec![x, w(l - r - 2, r + s + 1)]);
    }
    if d.classical == w(0, 1) && lower_closed {
        // mirror image of the previous case; the head is the swap of
        // L(l-s-2, r+s+1)
        return Ok(vec![x, w(r + s + 1, l - s - 2)]);
    }
    Err(Error::OutOfRange(format!(
        "{x} is neither restricted nor of the form l(1,0)+(r,s) or l(0,1)+(r,s) with r+s <= l-2 (l={l})"
    )))
}

/// `χ_l(μ) = χ(μ″)^F · φ(μ′)`.
pub fn chi_l(mu: Weight, l: i64) -> Result<FormalChar> {
    check_l(l)?;
    let d = decompose(mu, l);
    let classical = euler_char(d.classical);
    if classical.is_zero() {
        return Ok(classical);
    }
    Ok(&frobenius_twist(&classical, l) * &restricted_simple_char(d.restricted, l)?)
}

/// `ch L(λ)` in characteristic zero via Steinberg's tensor product theorem.
pub fn simple_char_p0(x: Weight, l: i64, p: i64) -> Result<FormalChar> {
    if p != 0 {
        return Err(Error::PositiveCharacteristic(p));
    }
    if !x.is_dominant() {
        return Err(Error::NotDominant(x));
    }
    check_l(l)?;
    let d = decompose(x, l);
    Ok(&frobenius_twist(&weyl_char(d.classical)?, l) * &restricted_simple_char(d.restricted, l)?)
}
