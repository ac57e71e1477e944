use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

/// Character cursor shared by the formula and expression parsers.
pub(crate) struct Cursor<'a> {
    pub text: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    pub fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    pub fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected `{s}`, found `{c}`")),
                None => self.error(format!("expected `{s}`, found end of input")),
            }
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c == '_'
                    || c.is_ascii_alphabetic()
                    || (i > 0 && (c.is_ascii_digit() || c == '\'')))
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return match rest.chars().next() {
                Some(c) => self.error(format!("expected identifier, found `{c}`")),
                None => self.error("expected identifier, found end of input"),
            };
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    pub fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        match rest[..len].parse() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.error("expected number"),
        }
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}`")),
        }
    }
}

/// Parses the ASCII formula syntax.
///
/// Atoms are `E(x,y)`, `S0(x,y)`, `S2(x,y|z,w)`, `x=y` and `lab:c(x)`.
/// Connectives bind `!` tighter than `&` tighter than `|`; both binary
/// operators associate to the left; `exists x.` and `forall x.` extend as
/// far right as possible.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut c = Cursor::new(text);
    let f = parse_or(&mut c)?;
    c.finish()?;
    Ok(f)
}

fn parse_or(c: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = parse_and(c)?;
    while c.eat("|") {
        f = Formula::or(f, parse_and(c)?);
    }
    Ok(f)
}

fn parse_and(c: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = parse_unary(c)?;
    while c.eat("&") {
        f = Formula::and(f, parse_unary(c)?);
    }
    Ok(f)
}

fn parse_unary(c: &mut Cursor) -> Result<Formula, ParseError> {
    if c.eat("!") {
        return Ok(Formula::not(parse_unary(c)?));
    }
    if c.eat("(") {
        let f = parse_or(c)?;
        c.expect(")")?;
        return Ok(f);
    }
    let start = c.pos;
    let word = c.ident()?;
    match word.as_str() {
        "exists" | "forall" => {
            let x = c.ident()?;
            c.expect(".")?;
            let body = parse_or(c)?;
            Ok(if word == "exists" {
                Formula::exists(&x, body)
            } else {
                Formula::forall(&x, body)
            })
        }
        "E" if c.peek() == Some('(') => {
            c.expect("(")?;
            let x = c.ident()?;
            c.expect(",")?;
            let y = c.ident()?;
            c.expect(")")?;
            Ok(Formula::Edge(x, y))
        }
        "lab" if c.peek() == Some(':') => {
            c.expect(":")?;
            let label = c.ident()?;
            c.expect("(")?;
            let x = c.ident()?;
            c.expect(")")?;
            Ok(Formula::Label(label, x))
        }
        w if is_sep_name(w) && c.peek() == Some('(') => {
            let n: usize = match w[1..].parse() {
                Ok(n) => n,
                Err(_) => {
                    c.pos = start;
                    return c.error("separator arity out of range");
                }
            };
            c.expect("(")?;
            let x = c.ident()?;
            c.expect(",")?;
            let y = c.ident()?;
            let mut zs = Vec::new();
            if n > 0 {
                c.expect("|")?;
                zs.push(c.ident()?);
                while c.eat(",") {
                    zs.push(c.ident()?);
                }
            }
            if zs.len() != n {
                return c.error(format!(
                    "S{n} expects {n} separator variables, got {}",
                    zs.len()
                ));
            }
            c.expect(")")?;
            Ok(Formula::Sep(x, y, zs))
        }
        _ => {
            if !c.eat("=") {
                c.pos = start;
                return c.error(format!("expected an atom, found `{word}`"));
            }
            let y = c.ident()?;
            Ok(Formula::Eq(word, y))
        }
    }
}

fn is_sep_name(w: &str) -> bool {
    w.len() > 1 && w.starts_with('S') && w[1..].bytes().all(|b| b.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms() {
        assert_eq!(parse_formula("E(x,y)").unwrap(), Formula::edge("x", "y"));
        assert_eq!(
            parse_formula("S0(x, y)").unwrap(),
            Formula::sep("x", "y", &[])
        );
        assert_eq!(
            parse_formula("S2(x,y|a,b)").unwrap(),
            Formula::sep("x", "y", &["a", "b"])
        );
        assert_eq!(parse_formula("x1 = x2").unwrap(), Formula::eq("x1", "x2"));
        assert_eq!(
            parse_formula("lab:red(v)").unwrap(),
            Formula::label("red", "v")
        );
    }

    #[test]
    fn disconnectedness_sentence() {
        let f = parse_formula("exists x. exists y. S0(x,y)").unwrap();
        assert_eq!(
            f,
            Formula::exists("x", Formula::exists("y", Formula::sep("x", "y", &[])))
        );
    }

    #[test]
    fn precedence_and_scope() {
        let f = parse_formula("!E(x,y) & x=y | E(y,x)").unwrap();
        assert_eq!(
            f,
            Formula::or(
                Formula::and(Formula::not(Formula::edge("x", "y")), Formula::eq("x", "y")),
                Formula::edge("y", "x")
            )
        );
        let g = parse_formula("E(x,y) & exists z. E(x,z) | E(y,z)").unwrap();
        assert_eq!(
            g,
            Formula::and(
                Formula::edge("x", "y"),
                Formula::exists(
                    "z",
                    Formula::or(Formula::edge("x", "z"), Formula::edge("y", "z"))
                )
            )
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_formula("exists x. (E(x,x").unwrap_err();
        assert_eq!(e.pos, 16);
        assert!(parse_formula("S2(x,y|z)").is_err());
        assert!(parse_formula("E(x,y) &").is_err());
        assert!(parse_formula("foo").is_err());
        assert!(parse_formula("E(x,y))").is_err());
    }
}
