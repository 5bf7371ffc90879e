//! JSON interchange formats for graphs, ideals and covers.

use std::collections::BTreeMap;

use edgereg_core::invariants::CochordalCover;
use edgereg_core::monomial::MonomialIdeal;
use edgereg_core::Graph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> GraphDoc {
        GraphDoc {
            vertices: g.names().to_vec(),
            edges: g
                .edge_names()
                .into_iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<Graph, String> {
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::new(&self.vertices, &edges).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub vars: Vec<String>,
    pub gens: Vec<BTreeMap<String, u32>>,
}

impl IdealDoc {
    pub fn from_ideal(i: &MonomialIdeal) -> IdealDoc {
        IdealDoc {
            vars: i.vars().to_vec(),
            gens: i.named_gens(),
        }
    }

    pub fn into_ideal(self) -> Result<MonomialIdeal, String> {
        MonomialIdeal::from_named(self.vars, &self.gens).map_err(|e| e.to_string())
    }
}

/// Cover classes as lists of edges.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub classes: Vec<Vec<[String; 2]>>,
}

impl CoverDoc {
    pub fn from_cover(c: &CochordalCover) -> CoverDoc {
        CoverDoc {
            classes: c
                .classes
                .iter()
                .map(|class| class.iter().map(|(a, b)| [a.clone(), b.clone()]).collect())
                .collect(),
        }
    }

    pub fn into_cover(self) -> CochordalCover {
        CochordalCover {
            classes: self
                .classes
                .into_iter()
                .map(|class| class.into_iter().map(|[a, b]| (a, b)).collect())
                .collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| format!("malformed graph JSON: {e}"))?;
    doc.into_graph()
}

/// Compact canonical form: declared vertex order, edges in graph order.
pub fn serialize_graph(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from_graph(g)).expect("graph documents serialize")
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, String> {
    let doc: IdealDoc = serde_json::from_str(text).map_err(|e| format!("malformed ideal JSON: {e}"))?;
    doc.into_ideal()
}

pub fn serialize_ideal(i: &MonomialIdeal) -> String {
    serde_json::to_string(&IdealDoc::from_ideal(i)).expect("ideal documents serialize")
}

pub fn parse_cover(text: &str) -> Result<CochordalCover, String> {
    let doc: CoverDoc = serde_json::from_str(text).map_err(|e| format!("malformed cover JSON: {e}"))?;
    Ok(doc.into_cover())
}
