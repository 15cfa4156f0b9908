//! Compile an edge-labelled plane graph of Seifert circles into a PD code.
//!
//! Vertices are Seifert circles placed side by side, alternately oriented
//! counterclockwise and clockwise. An edge labelled `x` becomes a twisted
//! band of `|x|` crossings of sign `sgn(x)`, threaded through `|x| - 1`
//! small intermediate circles.

use crate::diagram::{Crossing, Diagram, DiagramError, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SeifertGraph {
    pub edges: Vec<Edge>,
    /// Edge ids around each vertex in counterclockwise order.
    pub rotation: Vec<Vec<usize>>,
    /// Orientation of each circle.
    pub ccw: Vec<bool>,
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub diagram: Diagram,
    /// Crossing indices of every edge, listed from `u` towards `v`.
    pub edge_crossings: Vec<Vec<usize>>,
}

impl SeifertGraph {
    pub fn compile(&self) -> Result<Compiled, DiagramError> {
        let mut crossing_sign = Vec::new();
        // (left circle, right circle) per crossing, circles numbered with the
        // main vertices first
        let mut sides: Vec<(usize, usize)> = Vec::new();
        let mut ccw = self.ccw.clone();
        let mut circles: Vec<Vec<usize>> = vec![Vec::new(); self.ccw.len()];
        let mut edge_crossings = Vec::with_capacity(self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            let m = edge.label.unsigned_abs() as usize;
            let parity_ok = (self.ccw[edge.u] != self.ccw[edge.v]) == (m % 2 == 1);
            if m == 0 || !parity_ok {
                return Err(DiagramError::Structure {
                    crossing: e,
                    msg: "edge label incompatible with circle orientations".into(),
                });
            }
            let mut chain = vec![edge.u];
            for j in 1..m {
                circles.push(Vec::new());
                ccw.push(self.ccw[edge.u] ^ (j % 2 == 1));
                chain.push(ccw.len() - 1);
            }
            chain.push(edge.v);
            let mut ks = Vec::with_capacity(m);
            for j in 0..m {
                let k = crossing_sign.len();
                crossing_sign.push(if edge.label > 0 { 1i8 } else { -1 });
                let (a, b) = (chain[j], chain[j + 1]);
                sides.push(if ccw[a] { (a, b) } else { (b, a) });
                if j > 0 {
                    let small = chain[j];
                    circles[small].push(ks[j - 1]);
                    circles[small].push(k);
                }
                ks.push(k);
            }
            edge_crossings.push(ks);
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut order: Vec<usize> = rot
                .iter()
                .map(|&e| {
                    let ks = &edge_crossings[e];
                    if self.edges[e].u == v {
                        ks[0]
                    } else {
                        ks[ks.len() - 1]
                    }
                })
                .collect();
            if !self.ccw[v] {
                order.reverse();
            }
            circles[v] = order;
        }
        let n = crossing_sign.len();
        let mut frames: Vec<[u32; 4]> = vec![[0; 4]; n];
        const SW: usize = 0;
        const SE: usize = 1;
        const NW: usize = 2;
        const NE: usize = 3;
        let mut next = 1u32;
        for (c, seq) in circles.iter().enumerate() {
            let len = seq.len();
            for j in 0..len {
                let (from, to) = (seq[j], seq[(j + 1) % len]);
                let arc = next;
                next += 1;
                let left_from = sides[from].0 == c;
                let left_to = sides[to].0 == c;
                frames[from][if left_from { NW } else { NE }] = arc;
                frames[to][if left_to { SW } else { SE }] = arc;
            }
        }
        let crossings: Vec<Crossing> = frames
            .iter()
            .zip(&crossing_sign)
            .map(|(f, &s)| {
                Crossing::from_frame(
                    Frame {
                        sw: f[SW],
                        se: f[SE],
                        nw: f[NW],
                        ne: f[NE],
                    },
                    s,
                )
            })
            .collect();
        let diagram = Diagram::new(crossings, 0)?.relabeled();
        Ok(Compiled {
            diagram,
            edge_crossings,
        })
    }
}

/// Edge roles in the knot template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Template {
    pub graph: SeifertGraph,
    pub top: usize,
    pub mid: usize,
    /// The `2a_i - 1` band edges, `i = 1..d-1`.
    pub bands: Vec<usize>,
    /// The final `2a_d + 1` edge.
    pub last: usize,
}

/// Seifert graph with `2d` circles: a hub `L` and a chain `W_0 .. W_{2d-2}`.
/// Labels are `-1, -1` for the clasp between `L` and `W_0`, then per step
/// `2a_i - 1, 2, -1, -1`, closing with `2a_d + 1`.
pub(crate) fn template(a: &[i64]) -> Template {
    let d = a.len();
    assert!(d >= 1);
    let l = 0;
    let w = |j: usize| j + 1;
    let mut edges = Vec::new();
    let mut push = |u: usize, v: usize, label: i64| {
        edges.push(Edge { u, v, label });
        edges.len() - 1
    };
    let top = push(l, w(0), -1);
    let mid = push(l, w(0), -1);
    let mut bands = Vec::new();
    let mut l_cw = vec![top, mid];
    let mut w_rot: Vec<Vec<usize>> = vec![Vec::new(); 2 * d - 1];
    w_rot[0].extend([top, mid]);
    for i in 1..d {
        let (p, q, r) = (w(2 * i - 2), w(2 * i - 1), w(2 * i));
        let band = push(p, q, 2 * a[i - 1] - 1);
        let lq = push(l, q, 2);
        let qr = push(q, r, -1);
        let lr = push(l, r, -1);
        bands.push(band);
        w_rot[2 * i - 2].push(band);
        w_rot[2 * i - 1].extend([band, lq, qr]);
        w_rot[2 * i].extend([qr, lr]);
        l_cw.extend([lq, lr]);
    }
    let last = push(l, w(2 * d - 2), 2 * a[d - 1] + 1);
    l_cw.push(last);
    w_rot[2 * d - 2].push(last);
    let mut rotation = vec![l_cw.into_iter().rev().collect::<Vec<_>>()];
    rotation.extend(w_rot);
    let mut ccw = vec![true];
    ccw.extend((0..2 * d - 1).map(|j| j % 2 == 1));
    Template {
        graph: SeifertGraph {
            edges,
            rotation,
            ccw,
        },
        top,
        mid,
        bands,
        last,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{conway_skein, twist_classes};
    use crate::ConwayPoly;

    fn target(a: &[i64]) -> ConwayPoly {
        ConwayPoly::from_coeff_vector(a)
    }

    #[test]
    fn genus_one_template() {
        for a in -3..=3i64 {
            if a == 0 {
                continue;
            }
            let c = template(&[a]).graph.compile().unwrap();
            let d = &c.diagram;
            assert_eq!(d.component_count(), 1);
            assert_eq!(d.seifert_data().genus, 1);
            assert_eq!(conway_skein(d).unwrap(), target(&[a]), "a = {a}");
        }
    }

    #[test]
    fn genus_two_template() {
        let c = template(&[2, 2]).graph.compile().unwrap();
        let d = &c.diagram;
        assert_eq!(d.seifert_data().genus, 2);
        assert_eq!(conway_skein(d).unwrap(), "1 - 2z^2 + 2z^4".parse().unwrap());
        let t = twist_classes(d);
        assert_eq!(t.t_strong_reverse, 7);
        assert_eq!(t.t_strong, 6);
    }
}
