//! Separator logic: first-order logic over graphs with the edge relation,
//! equality, vertex labels and the separator predicates `S_n`.

mod ef;
mod eval;
pub(crate) mod parse;

pub use ef::ef_equivalent;
pub use eval::{eval, eval_on_ports, port_valuation, EvalError, Valuation};
pub use parse::{parse_formula, ParseError};

use std::collections::BTreeSet;
use std::fmt;

pub type Var = String;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Edge(Var, Var),
    /// `Sep(x, y, zs)`: every path from `x` to `y` meets `zs`.
    Sep(Var, Var, Vec<Var>),
    Eq(Var, Var),
    Label(String, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn edge(x: &str, y: &str) -> Self {
        Formula::Edge(x.into(), y.into())
    }

    pub fn sep(x: &str, y: &str, zs: &[&str]) -> Self {
        Formula::Sep(
            x.into(),
            y.into(),
            zs.iter().map(|z| z.to_string()).collect(),
        )
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn label(c: &str, x: &str) -> Self {
        Formula::Label(c.into(), x.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    /// Quantifier rank.
    pub fn qrank(&self) -> usize {
        match self {
            Formula::Edge(..) | Formula::Sep(..) | Formula::Eq(..) | Formula::Label(..) => 0,
            Formula::Not(f) => f.qrank(),
            Formula::And(a, b) | Formula::Or(a, b) => a.qrank().max(b.qrank()),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.qrank(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Edge(x, y) | Formula::Eq(x, y) => {
                note(x, bound);
                note(y, bound);
            }
            Formula::Sep(x, y, zs) => {
                note(x, bound);
                note(y, bound);
                zs.iter().for_each(|z| note(z, bound));
            }
            Formula::Label(_, x) => note(x, bound),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn uses_labels(&self) -> bool {
        match self {
            Formula::Label(..) => true,
            Formula::Edge(..) | Formula::Sep(..) | Formula::Eq(..) => false,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.uses_labels(),
            Formula::And(a, b) | Formula::Or(a, b) => a.uses_labels() || b.uses_labels(),
        }
    }

    /// Renders in the concrete syntax with the fewest parentheses that
    /// parse back to the same tree.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, 0, true);
        s
    }

    // Levels: 1 = `|`, 2 = `&`, 3 = unary and atoms. A quantifier body
    // extends as far right as possible, so a quantifier needs parentheses
    // unless it ends the enclosing text.
    fn render_into(&self, out: &mut String, min: u8, rightmost: bool) {
        let (level, open) = match self {
            Formula::Or(..) => (1, min > 1),
            Formula::And(..) => (2, min > 2),
            Formula::Exists(..) | Formula::Forall(..) => (0, !rightmost),
            _ => (3, false),
        };
        if open {
            out.push('(');
        }
        let rightmost = rightmost || open;
        match self {
            Formula::Edge(x, y) => out.push_str(&format!("E({x},{y})")),
            Formula::Eq(x, y) => out.push_str(&format!("{x}={y}")),
            Formula::Label(c, x) => out.push_str(&format!("lab:{c}({x})")),
            Formula::Sep(x, y, zs) if zs.is_empty() => out.push_str(&format!("S0({x},{y})")),
            Formula::Sep(x, y, zs) => {
                out.push_str(&format!("S{}({x},{y}|{})", zs.len(), zs.join(",")))
            }
            Formula::Not(f) => {
                out.push('!');
                f.render_into(out, 3, rightmost);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.render_into(out, level, false);
                out.push_str(if level == 1 { " | " } else { " & " });
                b.render_into(out, level + 1, rightmost);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                let q = if matches!(self, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                };
                out.push_str(&format!("{q} {x}. "));
                f.render_into(out, 0, true);
            }
        }
        if open {
            out.push(')');
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qrank_examples() {
        assert_eq!(Formula::edge("x", "y").qrank(), 0);
        let one = Formula::exists("x", Formula::eq("x", "x"));
        assert_eq!(one.qrank(), 1);
        let two = Formula::exists("y", one.clone());
        assert_eq!(Formula::and(one, two).qrank(), 2);
    }

    #[test]
    fn free_variables() {
        let f = parse_formula("exists x. E(x,y) & S1(x,z|w)").unwrap();
        let fv: Vec<_> = f.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["w", "y", "z"]);
    }

    #[test]
    fn render_is_minimal() {
        let f = Formula::and(
            Formula::or(Formula::edge("x", "y"), Formula::eq("x", "y")),
            Formula::not(Formula::exists("z", Formula::edge("x", "z"))),
        );
        assert_eq!(f.render(), "(E(x,y) | x=y) & !exists z. E(x,z)");
        let g = Formula::and(
            Formula::exists("z", Formula::edge("x", "z")),
            Formula::edge("x", "y"),
        );
        assert_eq!(g.render(), "(exists z. E(x,z)) & E(x,y)");
    }
}
