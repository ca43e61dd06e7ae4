//! Sweep runner that checks the engine's identities over a weight box.
//!
//! Cases are `λ = lλ″ + λ′` with `λ″ ∈ [0, box]²` and `λ′` restricted.
//! Work is spread over a rayon pool; failures are streamed to a callback
//! as they are found and collected into the report.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charring::{alt_weyl_sum, weyl_char, weyl_char_kostant, FormalChar};
use crate::decomp::{chi_decomposition, zhat_char, zhat_factors, zhat_simple_char};
use crate::error::{check_l, Error, Result};
use crate::ext::ext1_g;
use crate::homs::{hom_exists_mirror, zhat_head_weight};
use crate::lattice::{decompose, facet_classify, w, FacetType, PositiveRoot, Weight};
use crate::structure::{nabla_l_filtration, validate_graph, zhat_structure};
use crate::translate::translated_character;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Denominator,
    Dimension,
    Decomposition,
    Zhat,
    Translate,
    Graphs,
    ExtLemmas,
    Homs,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Denominator,
        Suite::Dimension,
        Suite::Decomposition,
        Suite::Zhat,
        Suite::Translate,
        Suite::Graphs,
        Suite::ExtLemmas,
        Suite::Homs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Denominator => "denominator",
            Suite::Dimension => "dimension",
            Suite::Decomposition => "decomposition",
            Suite::Zhat => "zhat",
            Suite::Translate => "translate",
            Suite::Graphs => "graphs",
            Suite::ExtLemmas => "ext-lemmas",
            Suite::Homs => "homs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Unsupported(format!(
                    "unknown suite {s:?}; choose from {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A statement `dim Ext¹_G(L(μ), L(λ)) = expected` from the small-weight
/// families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtClaim {
    pub family: &'static str,
    pub mu: Weight,
    pub lam: Weight,
    pub expected: u32,
}

/// The small-weight Ext¹ families exactly as stated, including the `l = 3`
/// values of the twisted diagonal `(l+r, l+s)`.
pub fn ext_claims(l: i64) -> Vec<ExtClaim> {
    let mut out = Vec::new();
    let mut push = |family, mu, lam, expected| {
        out.push(ExtClaim {
            family,
            mu,
            lam,
            expected,
        })
    };
    let diag = if l == 3 { 1 } else { 0 };
    for r in 0..=l - 2 {
        let s = l - 2 - r;
        let t = w(r, s);
        push("horizontal-wall", t, w(2 * l - 1, r), 1);
        push("horizontal-wall", t, w(s, 2 * l - 1), 1);
        push("horizontal-wall", t, w(l + r, l + s), diag);
        let (right, left) = (w(l - 1, r), w(s, l - 1));
        push("wall-corner", right, w(r, l + s), 1);
        push("wall-corner", left, w(l + r, s), 1);
        push("wall-corner", right, w(l + s, l - 1), 0);
        push("wall-corner", left, w(l - 1, l + r), 0);
    }
    for r in 0..=l - 3 {
        for s in 0..=l - 3 - r {
            let t = w(r, s);
            let u = w(l - s - 2, l - r - 2);
            for nu in [t, w(l + s, l - r - s - 3), w(l - r - s - 3, l + r)] {
                push("up-alcove", u, nu, 1);
            }
            for nu in [
                u,
                w(2 * l - s - 2, l - r - 2),
                w(l - s - 2, 2 * l - r - 2),
                w(l + r, l + s),
            ] {
                push("up-alcove", u, nu, 0);
            }
            for nu in [u, w(l - r - 2, l + r + s + 1), w(l + r + s + 1, l - s - 2)] {
                push("down-alcove", t, nu, 1);
            }
            for nu in [
                t,
                w(l + s, l - r - s - 3),
                w(l - r - s - 3, l + r),
                w(s, 3 * l - r - s - 3),
                w(3 * l - r - s - 3, r),
                w(2 * l - s - 2, 2 * l - r - 2),
            ] {
                push("down-alcove", t, nu, 0);
            }
            push("down-alcove", t, w(l + r, l + s), diag);
        }
    }
    out
}

fn fail(input: String, expected: impl fmt::Display, observed: impl fmt::Display) -> Failure {
    Failure {
        input,
        expected: expected.to_string(),
        observed: observed.to_string(),
    }
}

fn char_summary(x: &FormalChar) -> String {
    format!("{} terms, dim {}", x.len(), x.dim())
}

type CaseResult = Option<Vec<Failure>>;

fn run_case(suite: Suite, lam: Weight, l: i64) -> Result<CaseResult> {
    let tag = format!("lambda={lam} l={l}");
    let mut out = Vec::new();
    match suite {
        Suite::Denominator => {
            let lhs = alt_weyl_sum(lam + Weight::RHO);
            let rhs = &weyl_char(lam)? * &alt_weyl_sum(Weight::RHO);
            if lhs != rhs {
                out.push(fail(
                    tag.clone(),
                    "A(lambda+rho) = ch * A(rho)",
                    char_summary(&rhs),
                ));
            }
            if weyl_char(lam)? != weyl_char_kostant(lam)? {
                out.push(fail(tag, "tableaux = Kostant", "differ"));
            }
        }
        Suite::Dimension => {
            let (a, b) = (lam.a, lam.b);
            let want = (a + 1) * (b + 1) * (a + b + 2) / 2;
            let got = weyl_char(lam)?.dim();
            if got != want {
                out.push(fail(tag, want, got));
            }
        }
        Suite::Decomposition => {
            let got = chi_decomposition(lam, l)?.character();
            let want = weyl_char(lam)?;
            if got != want {
                out.push(fail(tag, char_summary(&want), char_summary(&got)));
            }
        }
        Suite::Zhat => {
            let got: FormalChar = zhat_factors(lam, l)?
                .into_iter()
                .map(|f| zhat_simple_char(f, l))
                .sum::<Result<_>>()?;
            let want = zhat_char(lam, l)?;
            if got != want || got.dim() != l * l * l {
                out.push(fail(tag, char_summary(&want), char_summary(&got)));
            }
        }
        Suite::Translate => {
            let Ok((got, want)) = translated_character(lam, l) else {
                return Ok(None);
            };
            if got != want {
                out.push(fail(tag, char_summary(&want), char_summary(&got)));
            }
        }
        Suite::Graphs => {
            for g in [zhat_structure(lam, l)?, nabla_l_filtration(lam, l)?] {
                for c in validate_graph(&g).failures() {
                    out.push(fail(format!("{tag} {:?}", g.kind()), &c.name, &c.detail));
                }
            }
        }
        Suite::Homs => {
            let d = decompose(lam, l);
            let interior = d.classical.a >= 1 && d.classical.b >= 1;
            if facet_classify(lam, l)? != FacetType::DownAlcove || !interior {
                return Ok(None);
            }
            let head = zhat_head_weight(lam, l)?;
            match hom_exists_mirror(lam, head, l, 0)? {
                Some(wit)
                    if wit.beta == PositiveRoot::Rho
                        && wit.e == 0
                        && wit.holds(lam, head, l, 0) => {}
                other => out.push(fail(
                    format!("{tag} mu={head}"),
                    "rho witness, e=0",
                    format!("{other:?}"),
                )),
            }
            if hom_exists_mirror(head, lam, l, 0)?.is_some() {
                out.push(fail(
                    format!("{tag} mu={head}"),
                    "no reverse witness",
                    "reverse witness",
                ));
            }
        }
        Suite::ExtLemmas => unreachable!("handled per l"),
    }
    Ok(Some(out))
}

fn ext_lemma_case(l: i64) -> Result<(usize, Vec<Failure>)> {
    let claims = ext_claims(l);
    let mut out = Vec::new();
    for c in &claims {
        let got = ext1_g(c.mu, c.lam, l, 0)?;
        if got != c.expected {
            out.push(fail(
                format!("{} L{} L{} l={l}", c.family, c.mu, c.lam),
                c.expected,
                got,
            ));
        }
    }
    Ok((claims.len(), out))
}

/// All `(λ, l)` cases of the sweep.
pub fn sweep_cases(ls: &[i64], box_: i64) -> Vec<(Weight, i64)> {
    let mut out = Vec::new();
    for &l in ls {
        for a in 0..=box_ {
            for b in 0..=box_ {
                for r in 0..l {
                    for s in 0..l {
                        out.push((l * w(a, b) + w(r, s), l));
                    }
                }
            }
        }
    }
    out
}

/// Runs one suite. `jobs = 0` lets rayon pick the thread count.
pub fn run_suite(
    suite: Suite,
    ls: &[i64],
    box_: i64,
    jobs: usize,
    on_failure: &(dyn Fn(&Failure) + Sync),
) -> Result<VerifyReport> {
    for &l in ls {
        check_l(l)?;
    }
    if box_ < 0 {
        return Err(Error::OutOfRange(format!(
            "box must be non-negative, got {box_}"
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let report = |f: Failure| {
        on_failure(&f);
        f
    };
    let (cases_run, failures) = pool.install(|| -> Result<(usize, Vec<Failure>)> {
        if suite == Suite::ExtLemmas {
            let per_l: Vec<(usize, Vec<Failure>)> = ls
                .par_iter()
                .map(|&l| ext_lemma_case(l))
                .collect::<Result<_>>()?;
            let n = per_l.iter().map(|x| x.0).sum();
            let fails = per_l.into_iter().flat_map(|x| x.1).map(report).collect();
            return Ok((n, fails));
        }
        let results: Vec<CaseResult> = sweep_cases(ls, box_)
            .par_iter()
            .map(|&(lam, l)| {
                run_case(suite, lam, l).map(|r| r.map(|fs| fs.into_iter().map(report).collect()))
            })
            .collect::<Result<_>>()?;
        let n = results.iter().filter(|r| r.is_some()).count();
        Ok((n, results.into_iter().flatten().flatten().collect()))
    })?;
    Ok(VerifyReport {
        suite: suite.name().to_string(),
        cases_run,
        failures,
    })
}
