//! JSON graph files.
//!
//! ```json
//! { "vertices": ["a", "b"], "edges": [["a", "b"]], "ports": ["a"], "labels": { "b": "red" } }
//! ```

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{GraphError, PortGraph, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub ports: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl GraphFile {
    pub fn from_graph(g: &PortGraph) -> Self {
        let labels: BTreeMap<String, String> = (0..g.vertex_count())
            .filter_map(|v| g.label(v).map(|l| (g.name(v).to_string(), l.to_string())))
            .collect();
        GraphFile {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .map(|(a, b)| [g.name(a).to_string(), g.name(b).to_string()])
                .collect(),
            ports: g.ports().iter().map(|&p| g.name(p).to_string()).collect(),
            labels: (!labels.is_empty()).then_some(labels),
        }
    }

    pub fn to_graph(&self) -> Result<PortGraph> {
        let index = name_index(&self.vertices)?;
        let lookup = |s: &String| {
            index
                .get(s.as_str())
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(s.clone()))
        };
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let ports = self.ports.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let mut labels = vec![None; self.vertices.len()];
        for (v, l) in self.labels.iter().flatten() {
            labels[lookup(v)?] = Some(l.clone());
        }
        PortGraph::new(self.vertices.clone(), &edges, ports, labels)
    }
}

pub(crate) fn name_index(names: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(GraphError::DuplicateVertex(n.clone()));
        }
    }
    Ok(index)
}

impl PortGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
        file.to_graph()
    }

    /// Deterministic pretty JSON; parsing it back and serializing again
    /// reproduces the same bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from_graph(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_bit_exact() {
        let text = r#"{"vertices":["x","y","z"],"edges":[["z","x"],["y","x"]],"ports":["y"],"labels":{"z":"red"}}"#;
        let g = PortGraph::from_json(text).unwrap();
        let once = g.to_json();
        let twice = PortGraph::from_json(&once).unwrap().to_json();
        assert_eq!(once, twice);
        assert_eq!(PortGraph::from_json(&once).unwrap(), g);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            PortGraph::from_json(r#"{"vertices":["a"],"edges":[["a","b"]],"ports":[]}"#),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            PortGraph::from_json(r#"{"vertices":["a"],"edges":[],"ports":[],"extra":1}"#),
            Err(GraphError::Format(_))
        ));
        assert!(matches!(
            PortGraph::from_json(r#"{"vertices":[],"edges":[],"ports":[]}"#),
            Err(GraphError::Empty)
        ));
    }
}
