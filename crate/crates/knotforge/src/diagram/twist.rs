use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError};

/// Half the volume of the figure-eight knot complement.
pub const V0: f64 = 1.014_941_606_409_653_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistData {
    pub t_strong_reverse: usize,
    pub t_strong: usize,
    /// The two-crossing Hopf diagram, counted as a single twist.
    pub hopf_exception: bool,
}

/// A bigon between two distinct crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Bigon {
    pub c1: usize,
    pub c2: usize,
    pub alternating: bool,
    pub reverse: bool,
}

pub(crate) fn bigons(d: &Diagram) -> Vec<Bigon> {
    let idx = d.index();
    let xs = d.crossings();
    let mut out = Vec::new();
    for f in d.faces() {
        if f.len() != 2 || f[0].0 == f[1].0 {
            continue;
        }
        let (c1, s1) = f[0];
        let (c2, s2) = f[1];
        let (_, arrive) = idx.other_end(d, c1, s1);
        let alternating = (s1 % 2) != (arrive % 2);
        let e1_forward = !xs[c1].is_in(s1);
        let e2_forward = !xs[c2].is_in(s2);
        out.push(Bigon {
            c1,
            c2,
            alternating,
            reverse: e1_forward == e2_forward,
        });
    }
    out
}

fn classes(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while p[r] != r {
            r = p[r];
        }
        p[a] = r;
        r
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Flype-free twist counts: crossings joined by chains of alternating
/// bigons, once using only reverse bigons and once using all of them.
pub fn twist_classes(d: &Diagram) -> TwistData {
    let n = d.crossing_count();
    if n == 2 && d.component_count() == 2 && d.loops() == 0 {
        return TwistData {
            t_strong_reverse: 1,
            t_strong: 1,
            hopf_exception: true,
        };
    }
    let bs: Vec<Bigon> = bigons(d).into_iter().filter(|b| b.alternating).collect();
    TwistData {
        t_strong_reverse: classes(n, bs.iter().filter(|b| b.reverse).map(|b| (b.c1, b.c2))),
        t_strong: classes(n, bs.iter().map(|b| (b.c1, b.c2))),
        hopf_exception: false,
    }
}

/// `10 V0 (t - 1)` with `t` the strong twist count.
pub fn volume_bound(d: &Diagram) -> Result<f64, DiagramError> {
    if d.crossing_count() == 0 {
        return Err(DiagramError::Trivial);
    }
    Ok(10.0 * V0 * (twist_classes(d).t_strong as f64 - 1.0))
}
