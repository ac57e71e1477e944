//! JSON context files.
//!
//! ```json
//! { "arity": 1, "vertices": ["a", "b"], "edges": [["a", "b"]],
//!   "left": { "1": "a" }, "right": { "1": "b" } }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Context, ContextError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub arity: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub left: BTreeMap<usize, String>,
    pub right: BTreeMap<usize, String>,
}

impl ContextFile {
    pub fn from_context(c: &Context) -> Self {
        let side = |map: &[Option<usize>]| {
            map.iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| (i + 1, c.name(v).to_string())))
                .collect()
        };
        ContextFile {
            arity: c.arity(),
            vertices: c.names().to_vec(),
            edges: c
                .edges()
                .map(|(a, b)| [c.name(a).to_string(), c.name(b).to_string()])
                .collect(),
            left: side(c.left_ports()),
            right: side(c.right_ports()),
        }
    }

    pub fn to_context(&self) -> Result<Context> {
        let index = crate::graph::name_index(&self.vertices)
            .map_err(|e| ContextError::Format(e.to_string()))?;
        let lookup = |s: &String| {
            index
                .get(s.as_str())
                .copied()
                .ok_or_else(|| ContextError::UnknownVertex(s.clone()))
        };
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let side = |map: &BTreeMap<usize, String>| {
            let mut out = vec![None; self.arity];
            for (&i, v) in map {
                if i == 0 || i > self.arity {
                    return Err(ContextError::PortOutOfRange(i, self.arity));
                }
                out[i - 1] = Some(lookup(v)?);
            }
            Ok(out)
        };
        Context::new(
            self.vertices.clone(),
            &edges,
            side(&self.left)?,
            side(&self.right)?,
        )
    }
}

impl Context {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ContextFile =
            serde_json::from_str(text).map_err(|e| ContextError::Format(e.to_string()))?;
        file.to_context()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ContextFile::from_context(self)).expect("serializable")
    }
}
