use std::fmt;

use serde::Serialize;

use super::instructions::states;
use super::{to_instructions, DecompError, Frame, Instr, PathDecomposition, Result};
use crate::mask::{bit, bits};

/// Which part of the split an instruction operates on. `P` marks port vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    X,
    Y,
    P,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::X => "X",
            Label::Y => "Y",
            Label::P => "P",
        };
        f.write_str(s)
    }
}

/// A maximal run of instructions with one label, as the half-open range
/// `start..end` of instruction positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub label: Label,
}

impl Interval {
    /// Bags touched by the run: bag `i` is the state after `i` instructions.
    pub fn bags(&self) -> (usize, usize) {
        (self.start, self.end)
    }
}

#[derive(Clone, Debug)]
pub struct Dealternation {
    pub instructions: Vec<Instr>,
    pub labels: Vec<Label>,
    pub pd: PathDecomposition,
    pub intervals: Vec<Interval>,
    pub width: i64,
    pub original_width: i64,
    pub original_interval_count: usize,
}

impl Dealternation {
    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }
}

pub(crate) fn runs(labels: &[Label]) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        match out.last_mut() {
            Some(last) if last.label == l => last.end = i + 1,
            _ => out.push(Interval {
                start: i,
                end: i + 1,
                label: l,
            }),
        }
    }
    out
}

pub(crate) fn check_split(frame: Frame, x: u64, y: u64) -> Result<()> {
    let inner = frame.all() & !(frame.left | frame.right);
    if x & y != 0 {
        let v = (x & y).trailing_zeros() as usize;
        return Err(DecompError::BadSplit(format!(
            "`{}` is on both sides",
            frame.names[v]
        )));
    }
    if (x | y) & !inner != 0 {
        let v = ((x | y) & !inner).trailing_zeros() as usize;
        return Err(DecompError::BadSplit(format!(
            "`{}` is a port or unknown",
            name(frame, v)
        )));
    }
    if let Some(v) = bits(inner & !(x | y)).next() {
        return Err(DecompError::BadSplit(format!(
            "`{}` is on neither side",
            frame.names[v]
        )));
    }
    for a in bits(x) {
        if let Some(b) = bits(frame.adj[a] & y).next() {
            return Err(DecompError::CrossEdge(
                frame.names[a].clone(),
                frame.names[b].clone(),
            ));
        }
    }
    Ok(())
}

fn name(frame: Frame, v: usize) -> String {
    frame
        .names
        .get(v)
        .cloned()
        .unwrap_or_else(|| format!("#{v}"))
}

pub(crate) fn label_of(v: usize, x: u64, y: u64) -> Label {
    if x & bit(v) != 0 {
        Label::X
    } else if y & bit(v) != 0 {
        Label::Y
    } else {
        Label::P
    }
}

/// Reorders the instructions of `pd` by a separated permutation: the order
/// among `X` instructions, among `Y` instructions and of the port
/// instructions relative to everything is kept. Among all such orders the
/// result first minimizes the width, then the number of label runs.
///
/// `x` and `y` must partition the non-port vertices with no edge between them.
pub fn dealternate(pd: &PathDecomposition, frame: Frame, x: u64, y: u64) -> Result<Dealternation> {
    check_split(frame, x, y)?;
    let seq = to_instructions(pd, frame)?;
    let labels: Vec<Label> = seq.iter().map(|i| label_of(i.vertex(), x, y)).collect();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut ps = Vec::new();
    // for X and Y instructions: ports executed before; for ports: (X, Y) executed before
    let mut xs_at = Vec::new();
    let mut ys_at = Vec::new();
    let mut ps_at = Vec::new();
    for (&ins, &l) in seq.iter().zip(&labels) {
        match l {
            Label::X => {
                xs.push(ins);
                xs_at.push(ps.len());
            }
            Label::Y => {
                ys.push(ins);
                ys_at.push(ps.len());
            }
            Label::P => {
                ps.push(ins);
                ps_at.push((xs.len(), ys.len()));
            }
        }
    }
    let sizes = |list: &[Instr], start: u64| -> Vec<u32> {
        states(list, start).iter().map(|s| s.count_ones()).collect()
    };
    let a = sizes(&xs, 0);
    let b = sizes(&ys, 0);
    let p = sizes(&ps, frame.left);
    let (nx, ny, np) = (xs.len(), ys.len(), ps.len());
    let id = |i: usize, j: usize, c: usize| (i * (ny + 1) + j) * (np + 1) + c;
    let total = (nx + 1) * (ny + 1) * (np + 1);
    let size = |i: usize, j: usize, c: usize| a[i] + b[j] + p[c];

    let moves = |i: usize, j: usize, c: usize| {
        let mut out = [None; 3];
        if i < nx && xs_at[i] == c {
            out[0] = Some((Label::X, i + 1, j, c));
        }
        if j < ny && ys_at[j] == c {
            out[1] = Some((Label::Y, i, j + 1, c));
        }
        if c < np && ps_at[c] == (i, j) {
            out[2] = Some((Label::P, i, j, c + 1));
        }
        out
    };

    // bottleneck pass; nested loops visit every predecessor first
    const NONE: u32 = u32::MAX;
    let mut bott = vec![NONE; total];
    bott[id(0, 0, 0)] = size(0, 0, 0);
    for i in 0..=nx {
        for j in 0..=ny {
            for c in 0..=np {
                let here = bott[id(i, j, c)];
                if here == NONE {
                    continue;
                }
                for (_, i2, j2, c2) in moves(i, j, c).into_iter().flatten() {
                    let v = here.max(size(i2, j2, c2));
                    let slot = &mut bott[id(i2, j2, c2)];
                    if v < *slot {
                        *slot = v;
                    }
                }
            }
        }
    }
    let bound = bott[id(nx, ny, np)];
    debug_assert_ne!(bound, NONE);

    // fewest runs among paths staying within the bound; label slot 3 = nothing yet
    let lab_ix = |l: Label| l as usize;
    let mut best = vec![[NONE; 4]; total];
    let mut parent = vec![[(usize::MAX, 0usize); 4]; total];
    best[id(0, 0, 0)][3] = 0;
    for i in 0..=nx {
        for j in 0..=ny {
            for c in 0..=np {
                let from = id(i, j, c);
                for last in 0..4 {
                    let r = best[from][last];
                    if r == NONE {
                        continue;
                    }
                    for (l, i2, j2, c2) in moves(i, j, c).into_iter().flatten() {
                        if size(i2, j2, c2) > bound {
                            continue;
                        }
                        let to = id(i2, j2, c2);
                        let li = lab_ix(l);
                        let cost = r + u32::from(li != last);
                        if cost < best[to][li] {
                            best[to][li] = cost;
                            parent[to][li] = (from, last);
                        }
                    }
                }
            }
        }
    }
    let end = id(nx, ny, np);
    let mut last = (0..4).min_by_key(|&l| best[end][l]).expect("nonempty");
    let mut node = end;
    let mut order = Vec::with_capacity(seq.len());
    while node != id(0, 0, 0) || last != 3 {
        order.push(last);
        let (prev, prev_last) = parent[node][last];
        node = prev;
        last = prev_last;
    }
    order.reverse();

    let (mut i, mut j, mut c) = (0, 0, 0);
    let mut instructions = Vec::with_capacity(seq.len());
    let mut new_labels = Vec::with_capacity(seq.len());
    for l in order {
        match l {
            0 => {
                instructions.push(xs[i]);
                new_labels.push(Label::X);
                i += 1;
            }
            1 => {
                instructions.push(ys[j]);
                new_labels.push(Label::Y);
                j += 1;
            }
            _ => {
                instructions.push(ps[c]);
                new_labels.push(Label::P);
                c += 1;
            }
        }
    }
    let out_pd = PathDecomposition::new(states(&instructions, frame.left));
    Ok(Dealternation {
        width: out_pd.width(),
        intervals: runs(&new_labels),
        instructions,
        labels: new_labels,
        pd: out_pd,
        original_width: pd.width(),
        original_interval_count: runs(&labels).len(),
    })
}
