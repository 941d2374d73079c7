//! Input and output formats.
//!
//! Graphs arrive as JSON `{"n": int, "edges": [[u,v], ...]}` or as a
//! line-based edge list (`u v` per line, `#` comments allowed, vertex count
//! inferred as the largest endpoint plus one).  Matroids arrive as JSON
//! recipes.  Certificates — separations, orientations, trees, verdicts —
//! leave as JSON, and trees also as DOT with side and separator sizes on
//! the edge labels.  All JSON printers emit deterministic, canonically
//! sorted output, and `parse(print(x)) = x` holds for every format.

use serde::{Deserialize, Serialize};

use crate::cluster::ClusterVerdict;
use crate::duality::{DualityVerdict, Outcome};
use crate::graph::Graph;
use crate::matroid::Matroid;
use crate::sep::{side_elems, side_from, Orientation, Sep, SepSystem};
use crate::stree::STree;
use crate::widths::{Witness, WidthResult};
use crate::{Error, Result};

fn bad(e: impl std::fmt::Display) -> Error {
    Error::Input(e.to_string())
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// The JSON shape of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl GraphJson {
    pub fn of(g: &Graph) -> GraphJson {
        GraphJson {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        Graph::new(self.n, &self.edges)
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::of(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let dto: GraphJson = serde_json::from_str(text).map_err(bad)?;
    dto.build()
}

/// Parse `u v` lines into a graph; `#` starts a comment, blank lines are
/// skipped, and the vertex count is one more than the largest endpoint.
pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max = None::<u32>;
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = (it.next(), it.next());
        let trailing = it.next();
        let (u, v) = match (u, v, trailing) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::Input(format!(
                    "line {}: expected `u v`, got {line:?}",
                    ln + 1
                )))
            }
        };
        let parse = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::Input(format!("line {}: bad vertex {s:?}", ln + 1)))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        max = Some(max.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    match max {
        None => Err(Error::Input("edge list holds no edges".into())),
        Some(m) => Graph::new(m as usize + 1, &edges),
    }
}

/// Accept either graph format, sniffing JSON by its leading brace.
pub fn graph_from_text(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_edge_list(text)
    }
}

// ---------------------------------------------------------------------------
// Matroids
// ---------------------------------------------------------------------------

/// The JSON shape of a matroid: a recipe naming one of the supported kinds.
/// GF(2) columns are 0/1 vectors, all of one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidRecipe {
    Graphic { graph: GraphJson },
    Gf2 { columns: Vec<Vec<u8>> },
    Uniform { r: u32, n: usize },
}

impl MatroidRecipe {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidRecipe::Graphic { graph } => Matroid::graphic(&graph.build()?),
            MatroidRecipe::Gf2 { columns } => {
                let height = columns.first().map_or(0, |c| c.len());
                if height > 64 {
                    return Err(Error::Input(format!(
                        "gf2 columns support up to 64 rows, got {height}"
                    )));
                }
                let mut masks = Vec::with_capacity(columns.len());
                for (i, col) in columns.iter().enumerate() {
                    if col.len() != height {
                        return Err(Error::Input(format!(
                            "gf2 column {i} has {} rows, expected {height}",
                            col.len()
                        )));
                    }
                    let mut mask = 0u64;
                    for (row, &bit) in col.iter().enumerate() {
                        match bit {
                            0 => {}
                            1 => mask |= 1 << row,
                            _ => {
                                return Err(Error::Input(format!(
                                    "gf2 column {i} row {row} holds {bit}; entries are 0 or 1"
                                )))
                            }
                        }
                    }
                    masks.push(mask);
                }
                Matroid::binary(&masks)
            }
            MatroidRecipe::Uniform { r, n } => Matroid::uniform(*r, *n),
        }
    }
}

pub fn matroid_recipe_from_json(text: &str) -> Result<MatroidRecipe> {
    serde_json::from_str(text).map_err(bad)
}

pub fn matroid_recipe_to_json(r: &MatroidRecipe) -> String {
    serde_json::to_string(r).expect("matroid recipe serializes")
}

// ---------------------------------------------------------------------------
// Separations, orientations, trees
// ---------------------------------------------------------------------------

/// The JSON shape of an oriented separation: `{"a": [...], "b": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepJson {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl SepJson {
    pub fn of(s: Sep) -> SepJson {
        SepJson {
            a: side_elems(s.a),
            b: side_elems(s.b),
        }
    }

    pub fn build(&self) -> Sep {
        Sep::new(side_from(&self.a), side_from(&self.b))
    }
}

/// The JSON shape of an orientation: its separations, canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub separations: Vec<SepJson>,
}

impl OrientationJson {
    pub fn of(o: &Orientation, sys: &SepSystem) -> OrientationJson {
        let mut seps = o.seps(sys);
        seps.sort_by(|x, y| x.cmp_key(*y));
        OrientationJson {
            separations: seps.into_iter().map(SepJson::of).collect(),
        }
    }
}

pub fn orientation_to_json(o: &Orientation, sys: &SepSystem) -> String {
    serde_json::to_string(&OrientationJson::of(o, sys)).expect("orientation serializes")
}

pub fn orientation_from_json(text: &str) -> Result<OrientationJson> {
    serde_json::from_str(text).map_err(bad)
}

/// The JSON shape of a labelled tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct STreeJson {
    pub nodes: usize,
    pub edges: Vec<STreeEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct STreeEdgeJson {
    pub x: u32,
    pub y: u32,
    pub alpha: SepJson,
}

impl STreeJson {
    pub fn of(t: &STree) -> STreeJson {
        STreeJson {
            nodes: t.n_nodes(),
            edges: t
                .edges()
                .iter()
                .map(|&(x, y, s)| STreeEdgeJson {
                    x,
                    y,
                    alpha: SepJson::of(s),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<STree> {
        STree::from_edges(
            self.nodes,
            self.edges
                .iter()
                .map(|e| (e.x, e.y, e.alpha.build()))
                .collect(),
        )
    }
}

pub fn stree_to_json(t: &STree) -> String {
    serde_json::to_string(&STreeJson::of(t)).expect("tree serializes")
}

pub fn stree_from_json(text: &str) -> Result<STree> {
    let dto: STreeJson = serde_json::from_str(text).map_err(bad)?;
    dto.build()
}

/// DOT rendering of a labelled tree.  Each stored edge appears once as a
/// directed edge x→y whose label carries the side sizes of α(x,y) and the
/// size of the separator A∩B.
pub fn stree_to_dot(t: &STree) -> String {
    use std::fmt::Write;
    let mut out = String::from("digraph stree {\n");
    for v in 0..t.n_nodes() {
        let _ = writeln!(out, "  {v} [label=\"{v}\"];");
    }
    for &(x, y, s) in t.edges() {
        let _ = writeln!(
            out,
            "  {x} -> {y} [label=\"{}|{}, sep {}\"];",
            s.a.count_ones(),
            s.b.count_ones(),
            (s.a & s.b).count_ones()
        );
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Verdicts and width results
// ---------------------------------------------------------------------------

/// The JSON shape of a duality verdict: which side holds, with the witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub family: String,
    pub k: u32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangle: Option<OrientationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<STreeJson>,
}

pub fn verdict_to_json(v: &DualityVerdict, sys: &SepSystem) -> String {
    let dto = match &v.outcome {
        Outcome::Tangle(o) => VerdictJson {
            family: v.family.clone(),
            k: v.k,
            outcome: "tangle".into(),
            tangle: Some(OrientationJson::of(o, sys)),
            tree: None,
        },
        Outcome::Tree(t) => VerdictJson {
            family: v.family.clone(),
            k: v.k,
            outcome: "tree".into(),
            tangle: None,
            tree: Some(STreeJson::of(t)),
        },
    };
    serde_json::to_string(&dto).expect("verdict serializes")
}

/// The JSON shape of a width computation: the value and its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthJson {
    pub parameter: String,
    pub value: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<STreeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

pub fn width_to_json(parameter: &str, w: &WidthResult) -> String {
    let dto = match &w.witness {
        Witness::Tree { k, tree } => WidthJson {
            parameter: parameter.into(),
            value: w.value,
            k: Some(*k),
            tree: Some(STreeJson::of(tree)),
            case: None,
        },
        Witness::Case(reason) => WidthJson {
            parameter: parameter.into(),
            value: w.value,
            k: None,
            tree: None,
            case: Some((*reason).into()),
        },
    };
    serde_json::to_string(&dto).expect("width serializes")
}

/// The JSON shape of a clustering verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub k: u32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangle: Option<OrientationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<SepJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<STreeJson>,
}

pub fn cluster_verdict_to_json(v: &ClusterVerdict) -> String {
    let dto = match v {
        ClusterVerdict::Coherent { k, system, tangle } => ClusterJson {
            k: *k,
            outcome: "coherent".into(),
            tangle: Some(OrientationJson::of(tangle, system)),
            lines: None,
            tree: None,
        },
        ClusterVerdict::Segmented { k, lines, tree } => ClusterJson {
            k: *k,
            outcome: "segmented".into(),
            tangle: None,
            lines: Some(lines.iter().map(|&s| SepJson::of(s)).collect()),
            tree: Some(STreeJson::of(tree)),
        },
    };
    serde_json::to_string(&dto).expect("cluster verdict serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::verify_duality;
    use crate::graph::vertex_separations;
    use crate::sep::SepSystem;

    #[test]
    fn graph_round_trips() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = graph_to_json(&g);
        // Edges print in the graph's canonical sorted order.
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let back = graph_from_json(&text).unwrap();
        assert_eq!(GraphJson::of(&back), GraphJson::of(&g));

        let listed = graph_from_edge_list("0 1\n1 2 # a comment\n\n2 3\n0 3\n").unwrap();
        assert_eq!(GraphJson::of(&listed), GraphJson::of(&g));
        assert!(graph_from_edge_list("0 1 2\n").is_err());
        assert!(graph_from_edge_list("# nothing\n").is_err());

        let sniffed = graph_from_text(" {\"n\":2,\"edges\":[[0,1]]}").unwrap();
        assert_eq!(sniffed.n(), 2);
        assert_eq!(graph_from_text("0 1\n").unwrap().n(), 2);
    }

    #[test]
    fn matroid_recipes_round_trip_and_build() {
        let recipes = [
            MatroidRecipe::Graphic {
                graph: GraphJson {
                    n: 3,
                    edges: vec![(0, 1), (1, 2), (0, 2)],
                },
            },
            MatroidRecipe::Gf2 {
                columns: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            },
            MatroidRecipe::Uniform { r: 2, n: 4 },
        ];
        for r in &recipes {
            let text = matroid_recipe_to_json(r);
            let back = matroid_recipe_from_json(&text).unwrap();
            assert_eq!(&back, r);
            back.build().unwrap();
        }
        assert_eq!(
            matroid_recipe_to_json(&recipes[2]),
            r#"{"kind":"uniform","r":2,"n":4}"#
        );
        // The triangle's cycle matroid and the three nonzero GF(2) pairs
        // agree rank for rank.
        let m1 = recipes[0].build().unwrap();
        let m2 = recipes[1].build().unwrap();
        for s in 0..8u64 {
            assert_eq!(m1.rank_of(s), m2.rank_of(s));
        }
        // Bad entries and ragged columns parse as JSON but refuse to build.
        let bad_entry = matroid_recipe_from_json(r#"{"kind":"gf2","columns":[[2]]}"#).unwrap();
        assert!(bad_entry.build().is_err());
        let ragged = matroid_recipe_from_json(r#"{"kind":"gf2","columns":[[1],[1,0]]}"#).unwrap();
        assert!(ragged.build().is_err());
    }

    #[test]
    fn certificate_round_trips() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let sys = vertex_separations(&g, 4);
        let fam = crate::family::BagFamily::tree(4, 4);

        // K₄ has tree-width 3 ≥ 4−1, so at k = 4 the bag family's verdict
        // is the tangle side.
        let v = verify_duality(&sys, &fam, 4, 10_000).unwrap();
        let printed = verdict_to_json(&v, &sys);
        let parsed: VerdictJson = serde_json::from_str(&printed).unwrap();
        assert_eq!(parsed.outcome, "tangle");
        let o = parsed.tangle.unwrap();
        assert_eq!(
            serde_json::to_string(&o).unwrap(),
            serde_json::to_string(
                &orientation_from_json(&serde_json::to_string(&o).unwrap()).unwrap()
            )
            .unwrap()
        );

        // A tree certificate for a path, round-tripped through JSON.
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let r = crate::widths::treewidth(&p, 10_000).unwrap();
        match r.witness {
            Witness::Tree { ref tree, .. } => {
                let text = stree_to_json(tree);
                let back = stree_from_json(&text).unwrap();
                assert_eq!(STreeJson::of(&back), STreeJson::of(tree));
                let dot = stree_to_dot(tree);
                assert!(dot.starts_with("digraph"));
                assert!(dot.contains("->"));
                assert!(dot.contains("sep "));
            }
            _ => panic!("expected tree witness"),
        }
        assert_eq!(width_to_json("tw", &r).contains("\"parameter\":\"tw\""), true);
    }
}
