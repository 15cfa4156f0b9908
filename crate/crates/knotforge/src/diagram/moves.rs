//! Local rewrites: Reidemeister insertions, twists, claspings, sums.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, DiagramError, Frame};

/// Two arcs bordering a common face. For parallel pairs both strands point
/// the same way with `left` on the left; for reverse pairs `left` runs up
/// the left side and `right` runs down the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StrandPair {
    pub left: u32,
    pub right: u32,
}

fn face_pairs(d: &Diagram, reverse: bool) -> Vec<StrandPair> {
    let xs = d.crossings();
    let mut out = BTreeSet::new();
    for f in d.faces() {
        let darts: Vec<(u32, bool)> = f
            .iter()
            .map(|&(c, s)| (xs[c].arcs[s], !xs[c].is_in(s)))
            .collect();
        for &(a, fa) in &darts {
            for &(b, fb) in &darts {
                if a == b || !fa {
                    continue;
                }
                if fb == reverse {
                    out.insert(StrandPair { left: a, right: b });
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn parallel_pairs(d: &Diagram) -> Vec<StrandPair> {
    face_pairs(d, false)
}

pub fn reverse_pairs(d: &Diagram) -> Vec<StrandPair> {
    face_pairs(d, true)
}

struct Builder {
    xs: Vec<Crossing>,
    next: u32,
}

impl Builder {
    fn new(d: &Diagram) -> Builder {
        Builder {
            xs: d.crossings().to_vec(),
            next: d.max_arc() + 1,
        }
    }

    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next - 1
    }

    fn finish(self, loops: usize) -> Result<Diagram, DiagramError> {
        let d = Diagram::from_parts(self.xs, loops).relabeled();
        d.validate()?;
        Ok(d)
    }
}

fn head_slot(d: &Diagram, a: u32) -> Result<(usize, usize), DiagramError> {
    d.index()
        .head
        .get(&a)
        .copied()
        .ok_or(DiagramError::NoArc(a))
}

/// Insert a twist word between the parallel strands of `pair`; `+1` and
/// `-1` letters give crossings of that sign. New crossings are appended.
pub fn insert_twist(d: &Diagram, pair: StrandPair, word: &[i8]) -> Result<Diagram, DiagramError> {
    if !parallel_pairs(d).contains(&pair) {
        return Err(DiagramError::NotParallel(pair.left, pair.right));
    }
    let hl = head_slot(d, pair.left)?;
    let hr = head_slot(d, pair.right)?;
    let mut b = Builder::new(d);
    let (mut l, mut r) = (pair.left, pair.right);
    for &sign in word {
        let (lo, ro) = (b.fresh(), b.fresh());
        b.xs.push(Crossing::from_frame(
            Frame {
                sw: l,
                se: r,
                nw: lo,
                ne: ro,
            },
            sign,
        ));
        l = lo;
        r = ro;
    }
    b.xs[hl.0].arcs[hl.1] = l;
    b.xs[hr.0].arcs[hr.1] = r;
    b.finish(d.loops())
}

/// Insert `count` crossings of the given sign between the strands of a
/// reverse pair; `left` meets them bottom to top. New crossings are
/// appended bottom first.
pub fn insert_reverse_twist(
    d: &Diagram,
    pair: StrandPair,
    count: usize,
    sign: i8,
) -> Result<Diagram, DiagramError> {
    if !reverse_pairs(d).contains(&pair) {
        return Err(DiagramError::NotParallel(pair.left, pair.right));
    }
    if count == 0 {
        return Ok(d.clone());
    }
    let hx = head_slot(d, pair.left)?;
    let hy = head_slot(d, pair.right)?;
    let mut b = Builder::new(d);
    let xs: Vec<u32> = std::iter::once(pair.left)
        .chain((0..count).map(|_| b.fresh()))
        .collect();
    let mut ys: Vec<u32> = (0..count).map(|_| b.fresh()).collect();
    ys.push(pair.right);
    for i in 1..=count {
        let (x_in, x_out, y_in, y_out) = (xs[i - 1], xs[i], ys[i], ys[i - 1]);
        let x_over = (i % 2 == 1) == (sign < 0);
        let arcs = match (i % 2 == 1, x_over) {
            (true, true) => [y_in, x_in, y_out, x_out],
            (true, false) => [x_in, y_out, x_out, y_in],
            (false, true) => [y_in, x_out, y_out, x_in],
            (false, false) => [x_in, y_in, x_out, y_out],
        };
        b.xs.push(Crossing {
            arcs,
            sign: if sign > 0 { 1 } else { -1 },
        });
    }
    b.xs[hx.0].arcs[hx.1] = xs[count];
    b.xs[hy.0].arcs[hy.1] = ys[0];
    b.finish(d.loops())
}

/// Reidemeister II between the strands of a reverse pair.
pub fn insert_r2(d: &Diagram, pair: StrandPair, left_over: bool) -> Result<Diagram, DiagramError> {
    if !reverse_pairs(d).contains(&pair) {
        return Err(DiagramError::NotParallel(pair.left, pair.right));
    }
    let hx = head_slot(d, pair.left)?;
    let hy = head_slot(d, pair.right)?;
    let mut b = Builder::new(d);
    let (x_in, y_in) = (pair.left, pair.right);
    let (mid_x, x_out, mid_y, y_out) = (b.fresh(), b.fresh(), b.fresh(), b.fresh());
    let mut top = Crossing {
        arcs: [y_in, x_out, mid_y, mid_x],
        sign: 1,
    };
    let mut bot = Crossing {
        arcs: [mid_y, x_in, y_out, mid_x],
        sign: -1,
    };
    if !left_over {
        top = top.switched();
        bot = bot.switched();
    }
    b.xs[hx.0].arcs[hx.1] = x_out;
    b.xs[hy.0].arcs[hy.1] = y_out;
    b.xs.push(top);
    b.xs.push(bot);
    b.finish(d.loops())
}

/// Reidemeister I kink on arc `a`. On a crossingless diagram `a` is
/// ignored and one free loop is kinked.
pub fn insert_kink(
    d: &Diagram,
    a: u32,
    sign: i8,
    over_first: bool,
) -> Result<Diagram, DiagramError> {
    let mut b = Builder::new(d);
    let mut loops = d.loops();
    let (a_in, a_out) = if d.crossing_count() == 0 {
        if loops == 0 {
            return Err(DiagramError::NoArc(a));
        }
        loops -= 1;
        let a = b.fresh();
        (a, a)
    } else {
        let h = head_slot(d, a)?;
        let out = b.fresh();
        b.xs[h.0].arcs[h.1] = out;
        (a, out)
    };
    let l = b.fresh();
    let arcs = match (over_first, sign > 0) {
        (false, true) => [a_in, a_out, l, l],
        (false, false) => [a_in, l, l, a_out],
        (true, true) => [l, l, a_out, a_in],
        (true, false) => [l, a_in, a_out, l],
    };
    b.xs.push(Crossing {
        arcs,
        sign: if sign > 0 { 1 } else { -1 },
    });
    b.finish(loops)
}

/// Replace crossing `i` by a parallel clasp of the given sign. The first
/// clasp crossing keeps index `i`, the second is appended.
pub fn clasping(d: &Diagram, i: usize, sign: i8) -> Result<Diagram, DiagramError> {
    let x = *d.crossings().get(i).ok_or(DiagramError::Index(i))?;
    let f = x.frame();
    let mut b = Builder::new(d);
    let (m1, m2) = (b.fresh(), b.fresh());
    b.xs[i] = Crossing::from_frame(
        Frame {
            sw: f.sw,
            se: f.se,
            ne: m1,
            nw: m2,
        },
        sign,
    );
    b.xs.push(Crossing::from_frame(
        Frame {
            sw: m2,
            se: m1,
            ne: f.ne,
            nw: f.nw,
        },
        sign,
    ));
    b.finish(d.loops())
}

fn shifted(d: &Diagram, by: u32) -> Vec<Crossing> {
    d.crossings()
        .iter()
        .map(|x| Crossing {
            arcs: x.arcs.map(|a| a + by),
            sign: x.sign,
        })
        .collect()
}

pub fn disjoint_union(d1: &Diagram, d2: &Diagram) -> Diagram {
    let mut xs = d1.crossings().to_vec();
    xs.extend(shifted(d2, d1.max_arc()));
    Diagram::from_parts(xs, d1.loops() + d2.loops()).relabeled()
}

/// Band sum of the first component of each diagram.
pub fn connected_sum(d1: &Diagram, d2: &Diagram) -> Diagram {
    if d1.crossing_count() == 0 && d1.loops() > 0 {
        return Diagram::from_parts(d2.crossings().to_vec(), d2.loops() + d1.loops() - 1)
            .relabeled();
    }
    if d2.crossing_count() == 0 && d2.loops() > 0 {
        return Diagram::from_parts(d1.crossings().to_vec(), d1.loops() + d2.loops() - 1)
            .relabeled();
    }
    let off = d1.max_arc();
    let mut xs = d1.crossings().to_vec();
    xs.extend(shifted(d2, off));
    let a = d1.components()[0][0];
    let b = d2.components()[0][0] + off;
    let h1 = d1.index().head[&a];
    let h2 = d2.index().head[&(b - off)];
    xs[h1.0].arcs[h1.1] = b;
    xs[d1.crossing_count() + h2.0].arcs[h2.1] = a;
    Diagram::from_parts(xs, d1.loops() + d2.loops()).relabeled()
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;

    #[test]
    fn kinks_are_planar() {
        let t = trefoil();
        for sign in [1, -1] {
            for over in [false, true] {
                let k = insert_kink(&t, 1, sign, over).unwrap();
                assert_eq!(k.crossing_count(), 4);
                assert_eq!(k.component_count(), 1);
                let u = insert_kink(&Diagram::unknot(), 0, sign, over).unwrap();
                assert_eq!(u.crossing_count(), 1);
                assert_eq!(u.component_count(), 1);
            }
        }
    }

    #[test]
    fn r2_on_every_reverse_pair() {
        let f = figure_eight();
        let pairs = reverse_pairs(&f);
        assert!(!pairs.is_empty());
        for p in pairs {
            for over in [true, false] {
                let g = insert_r2(&f, p, over).unwrap();
                assert_eq!(g.crossing_count(), 6);
                assert_eq!(g.writhe(), 0);
            }
        }
    }

    #[test]
    fn twists_on_every_parallel_pair() {
        let t = trefoil();
        let pairs = parallel_pairs(&t);
        assert!(!pairs.is_empty());
        for p in pairs {
            let g = insert_twist(&t, p, &[1, -1, 1]).unwrap();
            assert_eq!(g.crossing_count(), 6);
        }
    }

    #[test]
    fn reverse_twists_match_r2() {
        let f = figure_eight();
        for p in reverse_pairs(&f) {
            for sign in [1, -1] {
                let g = insert_reverse_twist(&f, p, 2, sign).unwrap();
                assert_eq!(g.crossing_count(), 6);
                assert!(g.crossings()[4..].iter().all(|x| x.sign == sign));
                let h = g.switch(4).unwrap();
                assert_eq!(h.writhe(), f.writhe());
            }
        }
    }

    #[test]
    fn clasping_changes_components() {
        let t = trefoil();
        for i in 0..3 {
            let c = clasping(&t, i, 1).unwrap();
            assert_eq!(c.component_count(), 2);
            assert_eq!(c.crossing_count(), 4);
        }
        let h = clasping(&hopf(), 0, -1).unwrap();
        assert_eq!(h.component_count(), 1);
    }

    #[test]
    fn sums() {
        let s = connected_sum(&trefoil(), &figure_eight());
        assert_eq!(s.crossing_count(), 7);
        assert_eq!(s.component_count(), 1);
        s.validate().unwrap();
        let u = disjoint_union(&trefoil(), &hopf());
        assert_eq!(u.component_count(), 3);
        assert!(u.is_split());
    }
}
