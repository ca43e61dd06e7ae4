//! Hasse data of `Ẑ(λ)` and of the good `l`-filtration of `∇(λ)`.
//!
//! Nodes carry the one-based position of their factor as `id`. An edge
//! `(upper, lower)` means the upper section extends the lower one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::charring::{weyl_char, FormalChar};
use crate::decomp::{
    chi_decomposition, nabla_l_char, zhat_case, zhat_char, zhat_factors, zhat_simple_char,
};
use crate::error::{check_l, Error, Result};
use crate::ext::ext1_g1b;
use crate::homs::zhat_head_weight;
use crate::lattice::{decompose, FacetType, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    G1BSimple,
    NablaL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub weight: Weight,
    pub kind: NodeKind,
    pub layer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleGraph {
    #[serde(rename = "lambda")]
    pub lam: Weight,
    pub l: i64,
    pub case: String,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize)>,
}

impl ModuleGraph {
    pub fn kind(&self) -> NodeKind {
        self.nodes.first().map_or(NodeKind::G1BSimple, |n| n.kind)
    }

    pub fn node(&self, id: usize) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn weight_of(&self, id: usize) -> Option<Weight> {
        self.node(id).map(|n| n.weight)
    }

    /// Nodes with nothing below them.
    pub fn sinks(&self) -> Vec<usize> {
        let uppers: BTreeSet<usize> = self.edges.iter().map(|e| e.0).collect();
        self.nodes
            .iter()
            .map(|n| n.id)
            .filter(|id| !uppers.contains(id))
            .collect()
    }

    /// Nodes with nothing above them.
    pub fn sources(&self) -> Vec<usize> {
        let lowers: BTreeSet<usize> = self.edges.iter().map(|e| e.1).collect();
        self.nodes
            .iter()
            .map(|n| n.id)
            .filter(|id| !lowers.contains(id))
            .collect()
    }

    pub fn character(&self) -> Result<FormalChar> {
        self.nodes
            .iter()
            .map(|n| match n.kind {
                NodeKind::G1BSimple => zhat_simple_char(n.weight, self.l),
                NodeKind::NablaL => nabla_l_char(n.weight, self.l),
            })
            .sum()
    }
}

type Edges = &'static [(usize, usize)];

const CHAIN: Edges = &[(4, 3), (3, 2), (2, 1)];
const DIAMOND_WALL: Edges = &[(4, 2), (4, 3), (2, 1), (3, 1)];
const DIAMOND_TOP: Edges = &[(1, 2), (1, 3), (2, 4), (3, 4)];
const CHAIN_TOP: Edges = &[(1, 2), (2, 3), (3, 4)];
const DOWN: Edges = &[
    (9, 6),
    (9, 7),
    (9, 8),
    (6, 5),
    (6, 2),
    (7, 2),
    (7, 4),
    (8, 4),
    (8, 3),
    (5, 4),
    (3, 2),
    (4, 1),
    (2, 1),
];
const UP: Edges = &[
    (3, 2),
    (3, 9),
    (2, 8),
    (2, 5),
    (2, 1),
    (9, 6),
    (9, 8),
    (9, 7),
    (1, 7),
    (6, 5),
    (7, 4),
    (8, 4),
    (5, 4),
];

/// Layers counted from the head, as the diagrams are drawn. Down-type
/// diagrams stack by longest path from the head, up-type ones by longest
/// path to the socle.
fn layers(ids: &[usize], edges: &[(usize, usize)], from_head: bool) -> BTreeMap<usize, usize> {
    let mut depth: BTreeMap<usize, usize> = ids.iter().map(|&i| (i, 0)).collect();
    // relax |V| times; the graphs are tiny DAGs
    for _ in 0..ids.len() {
        for &(u, v) in edges {
            let (from, to) = if from_head { (u, v) } else { (v, u) };
            let cand = depth[&from] + 1;
            if cand > depth[&to] {
                depth.insert(to, cand);
            }
        }
    }
    if from_head {
        return depth;
    }
    let top = depth.values().copied().max().unwrap_or(0);
    depth.into_iter().map(|(i, d)| (i, top - d)).collect()
}

fn build(
    lam: Weight,
    l: i64,
    case: FacetType,
    kind: NodeKind,
    nodes: Vec<(usize, Weight)>,
    edges: Vec<(usize, usize)>,
) -> ModuleGraph {
    let ids: Vec<usize> = nodes.iter().map(|n| n.0).collect();
    let from_head = !matches!(case, FacetType::UpAlcove);
    let depth = layers(&ids, &edges, from_head);
    let mut nodes: Vec<GraphNode> = nodes
        .into_iter()
        .map(|(id, weight)| GraphNode {
            id,
            weight,
            kind,
            layer: depth[&id],
        })
        .collect();
    nodes.sort_by_key(|n| (n.layer, n.id));
    let mut edges = edges;
    edges.sort_by_key(|&(u, v)| (depth[&u], u, v));
    ModuleGraph {
        lam,
        l,
        case: case.case_id().to_string(),
        nodes,
        edges,
    }
}

/// Submodule structure of `Ẑ(λ)`.
pub fn zhat_structure(lam: Weight, l: i64) -> Result<ModuleGraph> {
    check_l(l)?;
    let factors = zhat_factors(lam, l)?;
    let case = zhat_case(lam, l);
    let edges: Edges = match case {
        FacetType::Vertex => &[],
        FacetType::RightWall | FacetType::LeftWall => CHAIN,
        FacetType::HorizontalWall => DIAMOND_WALL,
        FacetType::DownAlcove => DOWN,
        FacetType::UpAlcove => UP,
    };
    let nodes = factors
        .into_iter()
        .enumerate()
        .map(|(i, f)| (i + 1, f))
        .collect();
    Ok(build(
        lam,
        l,
        case,
        NodeKind::G1BSimple,
        nodes,
        edges.to_vec(),
    ))
}

/// Edges of the alcove-case filtration under the congruence conditions.
///
/// The all-congruent and none-congruent diagrams are printed; a mixed
/// case removes only the named edge and adds the edges that the printed
/// none-congruent diagram uses to reattach its endpoints.
fn alcove_filtration_edges(case: FacetType, a: i64, b: i64, l: i64) -> Vec<(usize, usize)> {
    let (base, a_ok, b_ok, a_fix, b_fix): (Edges, bool, bool, Edges, Edges) = match case {
        FacetType::DownAlcove => (
            DOWN,
            a.rem_euclid(l) == 0,
            b.rem_euclid(l) == 0,
            &[(6, 5), (6, 4), (9, 5)],
            &[(8, 3), (9, 3), (8, 2)],
        ),
        _ => (
            UP,
            a.rem_euclid(l) == l - 1,
            b.rem_euclid(l) == l - 1,
            &[(6, 5), (6, 4), (9, 5)],
            &[(1, 7), (1, 4), (2, 7)],
        ),
    };
    let mut edges: Vec<(usize, usize)> = base.to_vec();
    for (ok, fix) in [(a_ok, a_fix), (b_ok, b_fix)] {
        if !ok {
            edges.retain(|&e| e != fix[0]);
            edges.extend_from_slice(&fix[1..]);
        }
    }
    edges
}

/// Good `l`-filtration of `∇(λ)`. Sections whose `χ_l` vanishes or cancels
/// are omitted together with their edges.
pub fn nabla_l_filtration(lam: Weight, l: i64) -> Result<ModuleGraph> {
    check_l(l)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam));
    }
    let dec = chi_decomposition(lam, l)?;
    let d = decompose(lam, l);
    let (a, b) = (d.classical.a, d.classical.b);
    let edges: Vec<(usize, usize)> = match dec.facet {
        FacetType::Vertex => vec![],
        FacetType::RightWall if a.rem_euclid(l) == l - 1 => CHAIN_TOP.to_vec(),
        FacetType::LeftWall if b.rem_euclid(l) == l - 1 => CHAIN_TOP.to_vec(),
        FacetType::RightWall | FacetType::LeftWall | FacetType::HorizontalWall => {
            DIAMOND_TOP.to_vec()
        }
        FacetType::DownAlcove | FacetType::UpAlcove => alcove_filtration_edges(dec.facet, a, b, l),
    };
    let nodes: Vec<(usize, Weight)> = dec.surviving().collect();
    let alive: BTreeSet<usize> = nodes.iter().map(|n| n.0).collect();
    let edges = edges
        .into_iter()
        .filter(|(u, v)| alive.contains(u) && alive.contains(v))
        .collect();
    Ok(build(lam, l, dec.facet, NodeKind::NablaL, nodes, edges))
}

/// `L̂(ν)* = L̂(τν′ - lν″)`.
pub fn zhat_dual_label(nu: Weight, l: i64) -> Weight {
    let d = decompose(nu, l);
    d.restricted.swap() - l * d.classical
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, outcome: std::result::Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn check_character(g: &ModuleGraph) -> std::result::Result<(), String> {
    let got = g.character().map_err(|e| e.to_string())?;
    let want = match g.kind() {
        NodeKind::G1BSimple => zhat_char(g.lam, g.l),
        NodeKind::NablaL => weyl_char(g.lam),
    }
    .map_err(|e| e.to_string())?;
    if got == want {
        Ok(())
    } else {
        Err(format!(
            "node characters sum to {} terms, target has {}",
            got.len(),
            want.len()
        ))
    }
}

fn check_unique(
    g: &ModuleGraph,
    ids: Vec<usize>,
    want: Weight,
    what: &str,
) -> std::result::Result<(), String> {
    match ids[..] {
        [one] if g.weight_of(one) == Some(want) => Ok(()),
        [one] => Err(format!("{what} is {:?}, expected {want}", g.weight_of(one))),
        _ => Err(format!("{} {what}s", ids.len())),
    }
}

fn check_edges(g: &ModuleGraph) -> std::result::Result<(), String> {
    for &(u, v) in &g.edges {
        let (Some(x), Some(y)) = (g.weight_of(u), g.weight_of(v)) else {
            return Err(format!("edge {u}-{v} names a missing node"));
        };
        if ext1_g1b(g.lam, x, y, g.l).map_err(|e| e.to_string())? != 1 {
            return Err(format!("edge {u}-{v}: no G1B extension of {x} by {y}"));
        }
    }
    Ok(())
}

fn check_duality(g: &ModuleGraph) -> std::result::Result<(), String> {
    let l = g.l;
    let dual = zhat_structure(2 * (l - 1) * Weight::RHO - g.lam, l).map_err(|e| e.to_string())?;
    let here: BTreeSet<Weight> = g
        .nodes
        .iter()
        .map(|n| zhat_dual_label(n.weight, l))
        .collect();
    let there: BTreeSet<Weight> = dual.nodes.iter().map(|n| n.weight).collect();
    if here != there || here.len() != g.nodes.len() {
        return Err("factor sets do not correspond under duality".into());
    }
    let flip = |h: &ModuleGraph, u: usize, v: usize| {
        (
            zhat_dual_label(h.weight_of(v).unwrap_or(Weight::ZERO), l),
            zhat_dual_label(h.weight_of(u).unwrap_or(Weight::ZERO), l),
        )
    };
    let reversed: BTreeSet<(Weight, Weight)> =
        g.edges.iter().map(|&(u, v)| flip(g, u, v)).collect();
    let plain: BTreeSet<(Weight, Weight)> = dual
        .edges
        .iter()
        .filter_map(|&(u, v)| Some((dual.weight_of(u)?, dual.weight_of(v)?)))
        .collect();
    if reversed.len() != g.edges.len() || reversed != plain {
        return Err("edges are not reversed by duality".into());
    }
    Ok(())
}

/// Cross-checks a graph against characters, heads and socles, the `G₁B`
/// tables, and duality. The last four checks only apply to `Ẑ` graphs.
pub fn validate_graph(g: &ModuleGraph) -> ValidationReport {
    let mut report = ValidationReport { checks: Vec::new() };
    report.record("character", check_character(g));
    if g.kind() == NodeKind::NablaL {
        return report;
    }
    report.record("socle", check_unique(g, g.sinks(), g.lam, "sink"));
    let head = zhat_head_weight(g.lam, g.l).unwrap_or(g.lam);
    report.record("head", check_unique(g, g.sources(), head, "source"));
    report.record("ext", check_edges(g));
    report.record("duality", check_duality(g));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::w;

    #[test]
    fn zhat_examples() {
        let g = zhat_structure(w(3, 3), 3).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (9, 13));
        assert_eq!(g.sinks(), [1]);
        assert_eq!(g.weight_of(g.sources()[0]), Some(w(1, 1)));
        assert!(validate_graph(&g).passed(), "{:?}", validate_graph(&g));
        let v = zhat_structure(w(2, 2), 3).unwrap();
        assert_eq!((v.nodes.len(), v.edges.len()), (1, 0));
        assert!(validate_graph(&v).passed());
        let h = zhat_structure(w(1, 1) + 4 * w(1, 1), 4).unwrap();
        assert_eq!(h.case, "iv");
        assert_eq!((h.nodes.len(), h.edges.len()), (4, 4));
    }

    #[test]
    fn displayed_layers() {
        let g = zhat_structure(w(11, 11), 5).unwrap();
        let rows: Vec<(usize, usize)> = g.nodes.iter().map(|n| (n.layer, n.id)).collect();
        assert_eq!(
            rows,
            [
                (0, 9),
                (1, 6),
                (1, 7),
                (1, 8),
                (2, 3),
                (2, 5),
                (3, 2),
                (3, 4),
                (4, 1)
            ]
        );
        let g = zhat_structure(w(13, 12), 5).unwrap();
        let rows: Vec<(usize, usize)> = g.nodes.iter().map(|n| (n.layer, n.id)).collect();
        assert_eq!(
            rows,
            [
                (0, 3),
                (1, 2),
                (1, 9),
                (2, 1),
                (2, 6),
                (3, 5),
                (3, 7),
                (3, 8),
                (4, 4)
            ]
        );
    }

    #[test]
    fn zhat_sweep_validates() {
        for l in [2, 3, 4, 5] {
            for a in -1..=3 {
                for b in -1..=3 {
                    for r in 0..l {
                        for s in 0..l {
                            let lam = l * w(a, b) + w(r, s);
                            let g = zhat_structure(lam, l).unwrap();
                            let rep = validate_graph(&g);
                            assert!(
                                rep.passed(),
                                "{lam} l={l}: {:?}",
                                rep.failures().collect::<Vec<_>>()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn filtration_examples() {
        let g = nabla_l_filtration(w(3, 3), 3).unwrap();
        assert_eq!(g.nodes.len(), 7);
        assert!(g.node(3).is_none() && g.node(5).is_none());
        assert!(validate_graph(&g).passed());
        // λ = l(a,0) + (r,s) with (r,s) in C: chain μ₅ - μ₄ - μ₁
        let g = nabla_l_filtration(5 * w(3, 0) + w(1, 1), 5).unwrap();
        let ids: Vec<usize> = g.nodes.iter().map(|n| n.id).collect();
        assert_eq!(ids, [5, 4, 1]);
        assert_eq!(g.edges, [(5, 4), (4, 1)]);
        let g = nabla_l_filtration(5 * w(0, 3) + w(1, 1), 5).unwrap();
        assert_eq!(g.edges, [(3, 2), (2, 1)]);
        let st = nabla_l_filtration(w(7, 7), 4).unwrap();
        assert_eq!(st.nodes.len(), 1);
    }

    #[test]
    fn filtration_congruence_variants() {
        let l = 3;
        let both = nabla_l_filtration(l * w(3, 3) + w(0, 0), l).unwrap();
        assert_eq!(both.edges.len(), 13);
        let neither = nabla_l_filtration(l * w(4, 4) + w(0, 0), l).unwrap();
        let mut e = neither.edges.clone();
        e.sort();
        let mut want = vec![
            (9, 5),
            (9, 3),
            (9, 6),
            (9, 8),
            (9, 7),
            (5, 4),
            (6, 2),
            (6, 4),
            (7, 2),
            (7, 4),
            (8, 4),
            (8, 2),
            (3, 2),
            (4, 1),
            (2, 1),
        ];
        want.sort();
        assert_eq!(e, want);
        let up = nabla_l_filtration(l * w(4, 4) + w(1, 1), l).unwrap();
        let mut e = up.edges.clone();
        e.sort();
        let mut want = vec![
            (3, 2),
            (3, 9),
            (2, 8),
            (2, 5),
            (2, 7),
            (2, 1),
            (9, 5),
            (9, 8),
            (9, 7),
            (9, 6),
            (1, 4),
            (7, 4),
            (8, 4),
            (5, 4),
            (6, 4),
        ];
        want.sort();
        assert_eq!(e, want);
        let rows: Vec<usize> = up.nodes.iter().map(|n| n.layer).collect();
        assert_eq!(rows, [0, 1, 1, 2, 2, 2, 2, 2, 3]);
    }

    #[test]
    fn filtration_sweep() {
        for l in [2, 3, 5] {
            for a in 0..=4 {
                for b in 0..=4 {
                    for r in 0..l {
                        for s in 0..l {
                            let lam = l * w(a, b) + w(r, s);
                            let g = nabla_l_filtration(lam, l).unwrap();
                            assert!(validate_graph(&g).passed(), "{lam} l={l}");
                            let dec = chi_decomposition(lam, l).unwrap();
                            let want: Vec<Weight> = dec.surviving().map(|x| x.1).collect();
                            let mut got: Vec<(usize, Weight)> =
                                g.nodes.iter().map(|n| (n.id, n.weight)).collect();
                            got.sort();
                            assert_eq!(got.into_iter().map(|x| x.1).collect::<Vec<_>>(), want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corrupted_edges_fail() {
        let g = zhat_structure(w(11, 11), 5).unwrap();
        for i in 0..g.edges.len() {
            let mut bad = g.clone();
            let (u, v) = bad.edges[i];
            bad.edges[i] = (v, u);
            assert!(!validate_graph(&bad).passed());
            let mut gone = g.clone();
            gone.edges.remove(i);
            assert!(!validate_graph(&gone).passed());
        }
    }

    #[test]
    fn json_round_trip() {
        let g = zhat_structure(w(3, 3), 3).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<ModuleGraph>(&s).unwrap(), g);
    }
}
