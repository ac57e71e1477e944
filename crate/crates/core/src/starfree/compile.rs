use std::collections::HashMap;

use super::{Result, StarExpr, StarFreeError};
use crate::graph::PortGraph;
use crate::logic::Formula;

/// Compiles a label-free formula whose free variables are among `x1..xk`
/// into an expression with the same language over arity-`k` graphs.
pub fn compile_formula(f: &Formula, k: usize) -> Result<StarExpr> {
    if f.uses_labels() {
        return Err(StarFreeError::UnsupportedAtom);
    }
    let mut env = HashMap::new();
    for i in 1..=k {
        env.insert(format!("x{i}"), i);
    }
    for x in f.free_vars() {
        if !env.contains_key(&x) {
            return Err(StarFreeError::FreeVariable(x, k));
        }
    }
    let mut c = Compiler::default();
    c.compile(f, &env, k)
}

#[derive(Default)]
struct Compiler {
    isolated: HashMap<(usize, usize), StarExpr>,
}

impl Compiler {
    fn compile(&mut self, f: &Formula, env: &HashMap<String, usize>, k: usize) -> Result<StarExpr> {
        let port = |x: &String| env[x];
        Ok(match f {
            Formula::Eq(x, y) => {
                if port(x) == port(y) {
                    StarExpr::all(k)
                } else {
                    StarExpr::empty(k)
                }
            }
            Formula::Edge(x, y) => edge(k, port(x), port(y))?,
            Formula::Sep(x, y, zs) => {
                let inside: Vec<usize> = zs.iter().map(port).collect();
                self.separator(k, port(x), port(y), &inside)?
            }
            Formula::Label(..) => return Err(StarFreeError::UnsupportedAtom),
            Formula::Not(a) => StarExpr::not(self.compile(a, env, k)?),
            Formula::And(a, b) => StarExpr::and(self.compile(a, env, k)?, self.compile(b, env, k)?),
            Formula::Or(a, b) => StarExpr::or(self.compile(a, env, k)?, self.compile(b, env, k)?),
            Formula::Forall(x, a) => {
                let neg = Formula::exists(x, Formula::not((**a).clone()));
                StarExpr::not(self.compile(&neg, env, k)?)
            }
            Formula::Exists(x, a) => {
                // either a fresh vertex, forgotten after use as port k+1,
                // or one of the current ports
                let mut inner = env.clone();
                inner.insert(x.clone(), k + 1);
                let mut e = StarExpr::forget(self.compile(a, &inner, k + 1)?);
                for i in 1..=k {
                    inner.insert(x.clone(), i);
                    e = StarExpr::or(e, self.compile(a, &inner, k)?);
                }
                e
            }
        })
    }

    /// Ports `s` and `t` separated by the ports in `inside`.
    fn separator(&mut self, k: usize, s: usize, t: usize, inside: &[usize]) -> Result<StarExpr> {
        if inside.contains(&s) || inside.contains(&t) {
            return Ok(StarExpr::all(k));
        }
        if s == t {
            return Ok(StarExpr::empty(k));
        }
        let free: Vec<usize> = (1..=k)
            .filter(|i| !inside.contains(i) && *i != s && *i != t)
            .collect();
        let mut out: Option<StarExpr> = None;
        for split in 0u32..(1 << free.len()) {
            let mut side_s = vec![s];
            let mut side_t = vec![t];
            for (b, &p) in free.iter().enumerate() {
                if split >> b & 1 == 1 {
                    side_s.push(p);
                } else {
                    side_t.push(p);
                }
            }
            // the s side may not touch ports of the t side and vice versa
            let left = self.all_isolated(k, &side_t)?;
            let right = self.all_isolated(k, &side_s)?;
            let term = StarExpr::fuse(left, right);
            out = Some(match out {
                None => term,
                Some(e) => StarExpr::or(e, term),
            });
        }
        Ok(out.expect("at least one split"))
    }

    fn all_isolated(&mut self, k: usize, ports: &[usize]) -> Result<StarExpr> {
        let mut out = StarExpr::all(k);
        for &j in ports {
            out = StarExpr::and(out, self.isolated_port(k, j)?);
        }
        Ok(out)
    }

    /// Graphs in which port `j` has no neighbor: no edge to another port and
    /// no edge to a non-port vertex, which is what forgetting a fresh
    /// adjacent port would expose.
    fn isolated_port(&mut self, k: usize, j: usize) -> Result<StarExpr> {
        if let Some(e) = self.isolated.get(&(k, j)) {
            return Ok(e.clone());
        }
        let mut touched = StarExpr::forget(edge(k + 1, j, k + 1)?);
        for i in (1..=k).filter(|&i| i != j) {
            touched = StarExpr::or(touched, edge(k, i, j)?);
        }
        let e = StarExpr::not(touched);
        self.isolated.insert((k, j), e.clone());
        Ok(e)
    }
}

/// Graphs with an edge between ports `i` and `j`.
fn edge(k: usize, i: usize, j: usize) -> Result<StarExpr> {
    if i == j {
        return Ok(StarExpr::empty(k));
    }
    let g = PortGraph::ports_only(k, &[(i, j)])?;
    Ok(StarExpr::fuse(
        StarExpr::all(k),
        StarExpr::finite(k, vec![g])?,
    ))
}
