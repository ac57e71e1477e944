//! JSON monoid and recognizer files.
//!
//! ```json
//! { "size": 2, "identity": 0, "table": [[0, 1], [1, 0]],
//!   "arity": 1, "gen_map": { "g0": 0, "g1": 1 }, "accepting": [0] }
//! ```
//!
//! A monoid file has only the first four keys (`zero` is optional).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FiniteMonoid, MonoidError, Recognizer, Result};
use crate::context::GeneratorAlphabet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

impl MonoidFile {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidFile {
            size: m.size(),
            identity: m.identity(),
            table: m.table().to_vec(),
            zero: m.zero(),
        }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid> {
        if self.table.len() != self.size {
            return Err(MonoidError::TableShape {
                size: self.size,
                rows: self.table.len(),
                cols: self.table.iter().map(Vec::len).collect(),
            });
        }
        FiniteMonoid::new(self.identity, self.table.clone(), self.zero)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MonoidError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognizerFile {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    pub arity: usize,
    pub gen_map: BTreeMap<String, usize>,
    pub accepting: Vec<usize>,
}

impl RecognizerFile {
    pub fn from_recognizer(r: &Recognizer) -> Self {
        let m = MonoidFile::from_monoid(&r.monoid);
        RecognizerFile {
            size: m.size,
            identity: m.identity,
            table: m.table,
            zero: m.zero,
            arity: r.arity,
            gen_map: r
                .gen_map
                .iter()
                .enumerate()
                .map(|(g, &a)| (GeneratorAlphabet::id_name(g), a))
                .collect(),
            accepting: (0..r.monoid.size()).filter(|&a| r.accepting[a]).collect(),
        }
    }

    /// Checks the table and that the generator map is total on `alphabet`.
    pub fn to_recognizer(&self, alphabet: &GeneratorAlphabet) -> Result<Recognizer> {
        let monoid = MonoidFile {
            size: self.size,
            identity: self.identity,
            table: self.table.clone(),
            zero: self.zero,
        }
        .to_monoid()?;
        if self.arity != alphabet.arity() {
            return Err(MonoidError::ArityMismatch(self.arity, alphabet.arity()));
        }
        for key in self.gen_map.keys() {
            alphabet.parse_id(key)?;
        }
        if self.gen_map.len() != alphabet.len() {
            return Err(MonoidError::GenMapSize(self.gen_map.len(), alphabet.len()));
        }
        let mut gen_map = Vec::with_capacity(alphabet.len());
        for g in 0..alphabet.len() {
            let name = GeneratorAlphabet::id_name(g);
            match self.gen_map.get(&name) {
                Some(&a) => gen_map.push(a),
                None => return Err(MonoidError::GenMapMissing(name)),
            }
        }
        let mut accepting = vec![false; self.size];
        for &a in &self.accepting {
            if a >= self.size {
                return Err(MonoidError::BadElement(a, self.size));
            }
            accepting[a] = true;
        }
        Recognizer::new(monoid, gen_map, accepting, self.arity)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MonoidError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::enumerate_k_generators;
    use crate::monoid::beta_recognizer;

    #[test]
    fn recognizer_roundtrip() {
        let a = enumerate_k_generators(1).unwrap();
        let (r, _) = beta_recognizer(&a, |t| t.persistent != 0);
        let text = RecognizerFile::from_recognizer(&r).to_json();
        let back = RecognizerFile::from_json(&text)
            .unwrap()
            .to_recognizer(&a)
            .unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn missing_generator() {
        let a = enumerate_k_generators(1).unwrap();
        let (r, _) = beta_recognizer(&a, |_| true);
        let mut f = RecognizerFile::from_recognizer(&r);
        f.gen_map.remove("g3");
        assert!(f.to_recognizer(&a).is_err());
    }

    #[test]
    fn monoid_file_rejects_bad_tables() {
        let f = MonoidFile::from_json(r#"{"size":2,"identity":0,"table":[[0,1],[0,1]]}"#).unwrap();
        assert!(matches!(f.to_monoid(), Err(MonoidError::NotIdentity(..))));
        assert!(MonoidFile::from_json(r#"{"size":1,"identity":0,"table":[[0]],"x":1}"#).is_err());
    }
}
