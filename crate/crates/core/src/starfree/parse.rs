use std::path::Path;

use super::{Result, StarExpr, StarFreeError};
use crate::graph::{GraphFile, PortGraph};
use crate::logic::parse::Cursor;
use crate::logic::ParseError;

/// Parses an expression; graph references given as JSON strings are read
/// as files relative to the working directory.
///
/// Grammar: `finite@k{ g, ... }` where each `g` is an inline graph object or
/// a quoted file name, prefix `!`, `forget(e)`, `add(e)`, `perm[2,1](e)`,
/// and the infix operators `(+)`, `&`, `|` in decreasing binding strength,
/// all left-associative.
pub fn parse_expr(text: &str) -> Result<StarExpr> {
    parse_expr_with(text, &mut |name| {
        let body = std::fs::read_to_string(Path::new(name)).map_err(|e| format!("{name}: {e}"))?;
        PortGraph::from_json(&body).map_err(|e| format!("{name}: {e}"))
    })
}

/// Like [`parse_expr`] with a caller-supplied loader for graph references.
pub fn parse_expr_with(
    text: &str,
    load: &mut dyn FnMut(&str) -> std::result::Result<PortGraph, String>,
) -> Result<StarExpr> {
    let mut p = Parser {
        c: Cursor::new(text),
        load,
    };
    let e = p.or()?;
    p.c.finish()?;
    e.arity_check()?;
    Ok(e)
}

struct Parser<'a, 'l> {
    c: Cursor<'a>,
    load: &'l mut dyn FnMut(&str) -> std::result::Result<PortGraph, String>,
}

impl Parser<'_, '_> {
    fn or(&mut self) -> Result<StarExpr> {
        let mut e = self.and()?;
        while self.c.eat("|") {
            e = StarExpr::or(e, self.and()?);
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<StarExpr> {
        let mut e = self.fuse()?;
        while self.c.eat("&") {
            e = StarExpr::and(e, self.fuse()?);
        }
        Ok(e)
    }

    fn fuse(&mut self) -> Result<StarExpr> {
        let mut e = self.unary()?;
        while self.c.eat("(+)") {
            e = StarExpr::fuse(e, self.unary()?);
        }
        Ok(e)
    }

    fn wrapped(&mut self) -> Result<StarExpr> {
        self.c.expect("(")?;
        let e = self.or()?;
        self.c.expect(")")?;
        Ok(e)
    }

    fn unary(&mut self) -> Result<StarExpr> {
        if self.c.eat("!") {
            return Ok(StarExpr::not(self.unary()?));
        }
        if self.c.peek() == Some('(') {
            return self.wrapped();
        }
        let start = self.c.pos;
        let word = self.c.ident()?;
        match word.as_str() {
            "forget" => Ok(StarExpr::forget(self.wrapped()?)),
            "add" => Ok(StarExpr::add(self.wrapped()?)),
            "perm" => {
                self.c.expect("[")?;
                let mut sigma = vec![self.c.number()?];
                while self.c.eat(",") {
                    sigma.push(self.c.number()?);
                }
                self.c.expect("]")?;
                Ok(StarExpr::permute(self.wrapped()?, sigma))
            }
            "finite" => {
                self.c.expect("@")?;
                let k = self.c.number()?;
                self.c.expect("{")?;
                let mut graphs = Vec::new();
                if !self.c.eat("}") {
                    loop {
                        graphs.push(self.graph()?);
                        if self.c.eat("}") {
                            break;
                        }
                        self.c.expect(",")?;
                    }
                }
                StarExpr::finite(k, graphs)
            }
            _ => {
                self.c.pos = start;
                Err(self.err(format!("expected an expression, found `{word}`")))
            }
        }
    }

    fn graph(&mut self) -> Result<PortGraph> {
        self.c.skip_ws();
        let start = self.c.pos;
        let rest = &self.c.text[start..];
        let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<serde_json::Value>();
        let value = match stream.next() {
            Some(Ok(v)) => v,
            Some(Err(e)) => return Err(self.err(format!("bad graph literal: {e}"))),
            None => return Err(self.err("expected a graph")),
        };
        let used = stream.byte_offset();
        let g = match value {
            serde_json::Value::String(name) => (self.load)(&name).map_err(|m| self.err(m))?,
            v @ serde_json::Value::Object(_) => {
                let file: GraphFile = serde_json::from_value(v)
                    .map_err(|e| self.err(format!("bad graph literal: {e}")))?;
                file.to_graph()?
            }
            _ => return Err(self.err("expected a graph object or a file name")),
        };
        self.c.pos = start + used;
        Ok(g)
    }

    fn err(&self, message: impl Into<String>) -> StarFreeError {
        StarFreeError::Parse(ParseError {
            pos: self.c.pos,
            message: message.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_connectedness() {
        let e = parse_expr("!(!finite@0{} (+) !finite@0{})").unwrap();
        assert_eq!(
            e,
            StarExpr::not(StarExpr::fuse(StarExpr::all(0), StarExpr::all(0)))
        );
        assert_eq!(parse_expr(&e.render()).unwrap(), e);
    }

    #[test]
    fn precedence() {
        let e = parse_expr("finite@1{} | finite@1{} & finite@1{} (+) finite@1{}").unwrap();
        let f = StarExpr::empty(1);
        assert_eq!(
            e,
            StarExpr::or(
                f.clone(),
                StarExpr::and(f.clone(), StarExpr::fuse(f.clone(), f))
            )
        );
    }

    #[test]
    fn inline_and_referenced_graphs() {
        let text = r#"perm[2,1](finite@2{ {"vertices":["a","b"],"edges":[["a","b"]],"ports":["a","b"]}, "g" })"#;
        let mut calls = 0;
        let e = parse_expr_with(text, &mut |name| {
            calls += 1;
            assert_eq!(name, "g");
            PortGraph::from_json(r#"{"vertices":["a","b"],"edges":[],"ports":["b","a"]}"#)
                .map_err(|e| e.to_string())
        })
        .unwrap();
        assert_eq!(calls, 1);
        match &e {
            StarExpr::Permute(inner, sigma) => {
                assert_eq!(sigma, &vec![2, 1]);
                assert!(matches!(&**inner, StarExpr::Finite(l) if l.graphs().len() == 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_expr(&e.render()).unwrap(), e);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_expr("forget(finite@0{})"),
            Err(StarFreeError::ForgetArityZero)
        ));
        assert!(matches!(
            parse_expr("finite@1{} (+)"),
            Err(StarFreeError::Parse(_))
        ));
        assert!(matches!(
            parse_expr("finite@1{} & add(finite@1{})"),
            Err(StarFreeError::ArityMismatch { .. })
        ));
        assert!(matches!(parse_expr("bogus"), Err(StarFreeError::Parse(_))));
    }
}
