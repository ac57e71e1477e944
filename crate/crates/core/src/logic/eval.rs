use std::collections::HashMap;

use thiserror::Error;

use super::Formula;
use crate::graph::{separated_by_mask, GraphError, PortGraph};
use crate::mask::bit;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("free variable `{0}` is not assigned")]
    Unbound(String),
    #[error("formula has free variable `{0}`, expected only x1..x{1}")]
    NotAPortVariable(String, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Partial assignment of variables to vertex indices.
pub type Valuation = HashMap<String, usize>;

/// Sets `x1..xk` to the ports of `g` in order.
pub fn port_valuation(g: &PortGraph) -> Valuation {
    g.ports()
        .iter()
        .enumerate()
        .map(|(i, &p)| (format!("x{}", i + 1), p))
        .collect()
}

/// Tarskian evaluation; quantifiers range over all vertices.
pub fn eval(f: &Formula, g: &PortGraph, v: &Valuation) -> Result<bool, EvalError> {
    let mut slots = Slots::default();
    let mut env = Vec::new();
    for x in f.free_vars() {
        let &vertex = v.get(&x).ok_or_else(|| EvalError::Unbound(x.clone()))?;
        g.check_vertex(vertex)?;
        slots.bind(&x);
        env.push(vertex);
    }
    let ir = lower(f, &mut slots);
    env.resize(slots.count, 0);
    Ok(run(&ir, g, &mut env))
}

/// Language membership: the `i`-th port interprets the variable `x<i>`.
pub fn eval_on_ports(f: &Formula, g: &PortGraph) -> Result<bool, EvalError> {
    let k = g.arity();
    for x in f.free_vars() {
        let ok = x
            .strip_prefix('x')
            .and_then(|n| n.parse::<usize>().ok())
            .is_some_and(|i| (1..=k).contains(&i) && x == format!("x{i}"));
        if !ok {
            return Err(EvalError::NotAPortVariable(x, k));
        }
    }
    eval(f, g, &port_valuation(g))
}

#[derive(Default)]
struct Slots {
    scope: Vec<(String, usize)>,
    count: usize,
}

impl Slots {
    fn bind(&mut self, x: &str) -> usize {
        let s = self.count;
        self.count += 1;
        self.scope.push((x.to_string(), s));
        s
    }

    fn get(&self, x: &str) -> usize {
        self.scope
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|&(_, s)| s)
            .expect("free variables bound before lowering")
    }
}

enum Ir {
    Edge(usize, usize),
    Sep(usize, usize, Vec<usize>),
    Eq(usize, usize),
    Label(String, usize),
    Not(Box<Ir>),
    And(Box<Ir>, Box<Ir>),
    Or(Box<Ir>, Box<Ir>),
    Exists(usize, Box<Ir>),
    Forall(usize, Box<Ir>),
}

fn lower(f: &Formula, s: &mut Slots) -> Ir {
    match f {
        Formula::Edge(x, y) => Ir::Edge(s.get(x), s.get(y)),
        Formula::Eq(x, y) => Ir::Eq(s.get(x), s.get(y)),
        Formula::Sep(x, y, zs) => {
            Ir::Sep(s.get(x), s.get(y), zs.iter().map(|z| s.get(z)).collect())
        }
        Formula::Label(c, x) => Ir::Label(c.clone(), s.get(x)),
        Formula::Not(a) => Ir::Not(Box::new(lower(a, s))),
        Formula::And(a, b) => Ir::And(Box::new(lower(a, s)), Box::new(lower(b, s))),
        Formula::Or(a, b) => Ir::Or(Box::new(lower(a, s)), Box::new(lower(b, s))),
        Formula::Exists(x, a) | Formula::Forall(x, a) => {
            let slot = s.bind(x);
            let body = Box::new(lower(a, s));
            s.scope.pop();
            if matches!(f, Formula::Exists(..)) {
                Ir::Exists(slot, body)
            } else {
                Ir::Forall(slot, body)
            }
        }
    }
}

fn run(ir: &Ir, g: &PortGraph, env: &mut Vec<usize>) -> bool {
    match ir {
        Ir::Edge(x, y) => g.has_edge(env[*x], env[*y]),
        Ir::Eq(x, y) => env[*x] == env[*y],
        Ir::Sep(x, y, zs) => {
            let z = zs.iter().fold(0u64, |m, &s| m | bit(env[s]));
            separated_by_mask(g.adjacency(), env[*x], env[*y], z)
        }
        Ir::Label(c, x) => g.label(env[*x]) == Some(c.as_str()),
        Ir::Not(a) => !run(a, g, env),
        Ir::And(a, b) => run(a, g, env) && run(b, g, env),
        Ir::Or(a, b) => run(a, g, env) || run(b, g, env),
        Ir::Exists(s, a) => (0..g.vertex_count()).any(|v| {
            env[*s] = v;
            run(a, g, env)
        }),
        Ir::Forall(s, a) => (0..g.vertex_count()).all(|v| {
            env[*s] = v;
            run(a, g, env)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn point_pair() -> PortGraph {
        PortGraph::from_names(&["a", "b"], &[], &[]).unwrap()
    }

    fn edge() -> PortGraph {
        PortGraph::from_names(&["a", "b"], &[("a", "b")], &[]).unwrap()
    }

    fn sentence(text: &str, g: &PortGraph) -> bool {
        eval(&parse_formula(text).unwrap(), g, &Valuation::new()).unwrap()
    }

    #[test]
    fn disconnectedness() {
        let f = "exists x. exists y. S0(x,y)";
        assert!(sentence(f, &point_pair()));
        assert!(!sentence(f, &edge()));
    }

    #[test]
    fn cycle_detection() {
        let f = "exists x. exists y. exists z. E(x,y) & E(x,z) & !(y=z) & !S1(y,z|x)";
        let tri =
            PortGraph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], &[])
                .unwrap();
        let path = PortGraph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]).unwrap();
        assert!(sentence(f, &tri));
        assert!(!sentence(f, &path));
    }

    #[test]
    fn pinned_separator_sentence_is_unsatisfiable() {
        // z may be chosen as x, and an endpoint in the separator always counts
        let f = "exists x. exists y. forall z. !S1(x,y|z)";
        let tri =
            PortGraph::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], &[])
                .unwrap();
        assert!(!sentence(f, &tri));
    }

    #[test]
    fn equality_of_distinct_ports_is_false() {
        let g = PortGraph::from_names(&["a", "b"], &[], &["a", "b"]).unwrap();
        assert!(!eval_on_ports(&parse_formula("x1=x2").unwrap(), &g).unwrap());
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let f = parse_formula("E(x,y)").unwrap();
        let mut v = Valuation::new();
        v.insert("x".into(), 0);
        assert_eq!(eval(&f, &edge(), &v), Err(EvalError::Unbound("y".into())));
        assert!(matches!(
            eval_on_ports(&parse_formula("E(x1,y)").unwrap(), &edge()),
            Err(EvalError::NotAPortVariable(..))
        ));
    }

    #[test]
    fn shadowing_uses_innermost_binding() {
        let f = parse_formula("exists x. E(x,x1) & exists x. x=x1").unwrap();
        let g = PortGraph::from_names(&["a", "b"], &[("a", "b")], &["a"]).unwrap();
        assert!(eval_on_ports(&f, &g).unwrap());
    }
}
