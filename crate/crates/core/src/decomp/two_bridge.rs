use serde::Serialize;

use super::instructions::states;
use super::{
    dealternate, pathwidth_exact_frame, to_instructions, Dealternation, DecompError, Frame, Instr,
    PathDecomposition, Result,
};
use crate::context::{bridges, compose_strict, context_iso, persistent_ports, Context};
use crate::mask::{bit, bits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// At most `k + 1` vertices.
    Generator,
    /// More persistent ports than the input; `gained` counts the extra ones.
    Persistent { gained: usize },
}

#[derive(Clone, Debug)]
pub struct TwoBridge {
    pub factors: Vec<Context>,
    pub kinds: Vec<FactorKind>,
    /// Instruction positions where the sequence is cut, starting with `0`
    /// and ending with the number of instructions.
    pub cuts: Vec<usize>,
    pub instructions: Vec<Instr>,
    pub pd: PathDecomposition,
    pub width: usize,
    /// Whether some bridge is a single edge from a left port to a right port,
    /// in which case the optimal decomposition is used as is.
    pub direct_edge: bool,
    pub dealternation: Option<Dealternation>,
}

/// Factors `w` into contexts that are `k`-generators or have strictly more
/// persistent ports than `w`, so that composing them in order gives back `w`.
///
/// Starts from an optimal decomposition, separates one bridge from the rest
/// of the non-port vertices with [`dealternate`], and then cuts the
/// instruction sequence into as few admissible slices as possible.
pub fn two_bridge_decompose(w: &Context, k: usize) -> Result<TwoBridge> {
    if w.arity() != k {
        return Err(DecompError::WrongArity(w.arity(), k));
    }
    let found = bridges(w);
    if found.len() < 2 {
        return Err(DecompError::TooFewBridges(found.len()));
    }
    let frame = Frame::of_context(w);
    let (width, pd) = pathwidth_exact_frame(frame)?;
    if width > k {
        return Err(DecompError::TooWide(width, k));
    }
    let ports = w.port_vertices();
    let pers_vertices = bits(persistent_ports(w)).fold(0u64, |m, i| m | bit(w.left(i).unwrap()));
    let lefts = w.left_vertices() & !pers_vertices;
    let rights = w.right_vertices() & !pers_vertices;
    let direct_edge = found.iter().any(|b| {
        b.len() == 1 && {
            let (x, y) = b[0];
            (lefts & bit(x) != 0 && rights & bit(y) != 0)
                || (lefts & bit(y) != 0 && rights & bit(x) != 0)
        }
    });
    let x = found[0].iter().fold(0u64, |m, &(a, b)| m | bit(a) | bit(b)) & !ports;
    let (instructions, dealternation) = if direct_edge || x == 0 {
        (to_instructions(&pd, frame)?, None)
    } else {
        let y = w.all_mask() & !ports & !x;
        let d = dealternate(&pd, frame, x, y)?;
        (d.instructions.clone(), Some(d))
    };
    let st = states(&instructions, frame.left);
    let (cuts, maps) = cut(w, k, &st)?;
    let (factors, kinds) = slice(w, k, &st, &cuts, &maps)?;

    let mut fold = factors[0].clone();
    for f in &factors[1..] {
        fold = compose_strict(&fold, f)?;
    }
    if !context_iso(&fold, w) {
        return Err(DecompError::NoFactorization(
            "composed factors are not isomorphic to the input".into(),
        ));
    }
    Ok(TwoBridge {
        factors,
        kinds,
        cuts,
        instructions,
        pd: PathDecomposition::new(st),
        width,
        direct_edge,
        dealternation,
    })
}

type Ports = Vec<Option<usize>>;

fn injections(set: u64, k: usize) -> Vec<Ports> {
    fn go(vs: &[usize], slots: &mut Ports, out: &mut Vec<Ports>) {
        let Some((&v, rest)) = vs.split_first() else {
            out.push(slots.clone());
            return;
        };
        for i in 0..slots.len() {
            if slots[i].is_none() {
                slots[i] = Some(v);
                go(rest, slots, out);
                slots[i] = None;
            }
        }
    }
    let vs: Vec<usize> = bits(set).collect();
    let mut out = Vec::new();
    go(&vs, &mut vec![None; k], &mut out);
    out
}

fn shared(a: &Ports, b: &Ports) -> usize {
    a.iter()
        .zip(b)
        .filter(|(x, y)| x.is_some() && x == y)
        .count()
}

// a vertex that is a port on both sides must keep its index
fn compatible(a: &Ports, b: &Ports) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, v)| v.is_none_or(|v| b.iter().enumerate().all(|(j, u)| *u != Some(v) || i == j)))
}

/// Shortest chain of admissible slices, each cut carrying a port assignment.
fn cut(w: &Context, k: usize, st: &[u64]) -> Result<(Vec<usize>, Vec<Ports>)> {
    let t_end = st.len() - 1;
    let base = persistent_ports(w).count_ones() as usize;
    let options: Vec<Vec<Ports>> = (0..=t_end)
        .map(|t| {
            if t == 0 {
                vec![w.left_ports().to_vec()]
            } else if t == t_end {
                vec![w.right_ports().to_vec()]
            } else if st[t].count_ones() as usize <= k {
                injections(st[t], k)
            } else {
                Vec::new()
            }
        })
        .collect();
    const NONE: usize = usize::MAX;
    let mut dist: Vec<Vec<usize>> = options.iter().map(|o| vec![NONE; o.len()]).collect();
    let mut parent: Vec<Vec<(usize, usize)>> = options
        .iter()
        .map(|o| vec![(NONE, NONE); o.len()])
        .collect();
    dist[0][0] = 0;
    for t in 0..t_end {
        for a in 0..options[t].len() {
            let d = dist[t][a];
            if d == NONE {
                continue;
            }
            let mut union = st[t];
            for t2 in t + 1..=t_end {
                union |= st[t2];
                let small = union.count_ones() as usize <= k + 1;
                for b in 0..options[t2].len() {
                    let (p, q) = (&options[t][a], &options[t2][b]);
                    let ok = compatible(p, q) && (small || shared(p, q) > base);
                    if ok && d + 1 < dist[t2][b] {
                        dist[t2][b] = d + 1;
                        parent[t2][b] = (t, a);
                    }
                }
            }
        }
    }
    if dist[t_end][0] == NONE {
        let reach = (0..=t_end)
            .filter(|&t| dist[t].iter().any(|&d| d != NONE))
            .max();
        return Err(DecompError::NoFactorization(format!(
            "no admissible slicing of {} instructions; cuts reachable up to position {}",
            t_end,
            reach.unwrap_or(0)
        )));
    }
    let mut cuts = vec![t_end];
    let mut maps = vec![options[t_end][0].clone()];
    let (mut t, mut a) = (t_end, 0);
    while t != 0 {
        (t, a) = parent[t][a];
        cuts.push(t);
        maps.push(options[t][a].clone());
    }
    cuts.reverse();
    maps.reverse();
    Ok((cuts, maps))
}

fn slice(
    w: &Context,
    k: usize,
    st: &[u64],
    cuts: &[usize],
    maps: &[Ports],
) -> Result<(Vec<Context>, Vec<FactorKind>)> {
    let segments = cuts.len() - 1;
    let mut edges_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); segments];
    for (a, b) in w.edges() {
        let both = bit(a) | bit(b);
        let s = st
            .iter()
            .position(|&x| x & both == both)
            .ok_or_else(|| DecompError::EdgeUncovered(w.name(a).into(), w.name(b).into()))?;
        let seg = (0..segments)
            .find(|&i| cuts[i] <= s && s <= cuts[i + 1])
            .expect("cuts span the sequence");
        edges_of[seg].push((a, b));
    }
    let base = persistent_ports(w).count_ones() as usize;
    let mut factors = Vec::with_capacity(segments);
    let mut kinds = Vec::with_capacity(segments);
    for i in 0..segments {
        let verts = st[cuts[i]..=cuts[i + 1]].iter().fold(0u64, |m, &s| m | s);
        let mut index = vec![usize::MAX; w.vertex_count()];
        let mut names = Vec::new();
        for v in bits(verts) {
            index[v] = names.len();
            names.push(w.name(v).to_string());
        }
        let edges: Vec<(usize, usize)> = edges_of[i]
            .iter()
            .map(|&(a, b)| (index[a], index[b]))
            .collect();
        let remap = |p: &Ports| p.iter().map(|v| v.map(|v| index[v])).collect();
        let f = Context::new(names, &edges, remap(&maps[i]), remap(&maps[i + 1]))?;
        let gained = (persistent_ports(&f).count_ones() as usize).saturating_sub(base);
        let kind = if f.vertex_count() <= k + 1 {
            FactorKind::Generator
        } else if gained > 0 {
            FactorKind::Persistent { gained }
        } else {
            return Err(DecompError::NoFactorization(format!(
                "slice {} is neither small nor gains persistent ports",
                i + 1
            )));
        };
        factors.push(f);
        kinds.push(kind);
    }
    Ok((factors, kinds))
}
