//! Oriented link diagrams as planar-diagram (PD) crossing codes.
//!
//! A crossing lists its four arcs counterclockwise, starting from the
//! incoming under-strand; the under-strand runs from slot 0 to slot 2. For a
//! positive crossing the over-strand runs from slot 3 to slot 1, for a
//! negative one from slot 1 to slot 3.

pub(crate) mod alexander;
mod braid;
mod moves;
mod pd;
mod skein;
pub(crate) mod twist;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use alexander::alexander_det;
pub use moves::{
    clasping, connected_sum, disjoint_union, insert_kink, insert_r2, insert_reverse_twist,
    insert_twist, parallel_pairs, reverse_pairs, StrandPair,
};
pub use skein::{conway_skein, default_limit, SkeinEvaluator};
pub use twist::{twist_classes, volume_bound, TwistData, V0};

use crate::ConwayPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {crossing}: {msg}")]
    Structure { crossing: usize, msg: String },
    #[error("diagram is not planar ({faces} faces, expected {expected})")]
    NotPlanar { faces: usize, expected: usize },
    #[error("crossing index {0} out of range")]
    Index(usize),
    #[error("component index {0} out of range")]
    Component(usize),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("a knot has no linking graph")]
    Knot,
    #[error("volume bound needs a diagram with at least one crossing")]
    Trivial,
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("crossing count {count} exceeds the evaluator limit {limit}")]
    Limit { count: usize, limit: usize },
    #[error("arcs {0} and {1} are not parallel strands on a common face")]
    NotParallel(u32, u32),
    #[error("arc {0} does not occur in the diagram")]
    NoArc(u32),
    #[error("braid generator {0} is out of range for {1} strands")]
    Generator(i32, usize),
    #[error("PD parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

/// Position of a crossing in the local frame where both strands point up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Frame {
    pub sw: u32,
    pub se: u32,
    pub nw: u32,
    pub ne: u32,
}

impl Crossing {
    pub fn positive(&self) -> bool {
        self.sign > 0
    }

    /// Slot where the over-strand enters.
    pub fn over_in(&self) -> usize {
        if self.positive() {
            3
        } else {
            1
        }
    }

    pub fn over_out(&self) -> usize {
        if self.positive() {
            1
        } else {
            3
        }
    }

    pub fn is_in(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }

    pub(crate) fn frame(&self) -> Frame {
        let a = self.arcs;
        if self.positive() {
            Frame {
                se: a[0],
                ne: a[1],
                nw: a[2],
                sw: a[3],
            }
        } else {
            Frame {
                sw: a[0],
                se: a[1],
                ne: a[2],
                nw: a[3],
            }
        }
    }

    pub(crate) fn from_frame(f: Frame, sign: i8) -> Crossing {
        let arcs = if sign > 0 {
            [f.se, f.ne, f.nw, f.sw]
        } else {
            [f.sw, f.se, f.ne, f.nw]
        };
        Crossing { arcs, sign }
    }

    pub fn switched(&self) -> Crossing {
        Crossing::from_frame(self.frame(), -self.sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub s: usize,
    pub c: usize,
    pub chi: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl LinkingGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|e| (e.0, e.1) == (a, b) || (e.0, e.1) == (b, a))
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let n = self.vertices;
        let Some(start) = (0..n).find(|&v| Some(v) != skip) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && Some(y) != skip && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..n).all(|v| seen[v] || Some(v) == skip)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    pub fn cut_vertices(&self) -> Vec<usize> {
        if !self.is_connected() {
            return Vec::new();
        }
        (0..self.vertices)
            .filter(|&v| !self.connected_without(Some(v)))
            .collect()
    }

    /// Triangle for three vertices; for more, a Hamiltonian cycle plus one
    /// chord joining two vertices at distance two along it.
    pub fn matches_template(&self) -> bool {
        let n = self.vertices;
        if n < 3 || self.edges.len() != if n == 3 { 3 } else { n + 1 } {
            return false;
        }
        if n == 3 {
            return true;
        }
        let deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let hubs: Vec<usize> = (0..n).filter(|&v| deg[v] == 3).collect();
        if hubs.len() != 2 || (0..n).any(|v| deg[v] != 2 && deg[v] != 3) {
            return false;
        }
        if !self.adjacent(hubs[0], hubs[1]) {
            return false;
        }
        // removing the chord must leave a single cycle with the hubs at distance two
        let cycle = LinkingGraph {
            vertices: n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| {
                    !((e.0 == hubs[0] && e.1 == hubs[1]) || (e.0 == hubs[1] && e.1 == hubs[0]))
                })
                .collect(),
        };
        cycle.is_connected()
            && (0..n).any(|v| {
                v != hubs[0]
                    && v != hubs[1]
                    && cycle.adjacent(v, hubs[0])
                    && cycle.adjacent(v, hubs[1])
            })
    }
}

/// Oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    loops: usize,
}

/// Where the two ends of every arc sit.
pub(crate) struct ArcIndex {
    pub head: HashMap<u32, (usize, usize)>,
    pub tail: HashMap<u32, (usize, usize)>,
}

impl ArcIndex {
    pub fn other_end(&self, d: &Diagram, c: usize, s: usize) -> (usize, usize) {
        let a = d.crossings[c].arcs[s];
        if d.crossings[c].is_in(s) {
            self.tail[&a]
        } else {
            self.head[&a]
        }
    }
}

impl Diagram {
    /// Checked constructor.
    pub fn new(crossings: Vec<Crossing>, loops: usize) -> Result<Diagram, DiagramError> {
        let d = Diagram { crossings, loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, loops: usize) -> Diagram {
        Diagram { crossings, loops }
    }

    pub fn unknot() -> Diagram {
        Diagram {
            crossings: Vec::new(),
            loops: 1,
        }
    }

    pub fn unlink(n: usize) -> Diagram {
        Diagram {
            crossings: Vec::new(),
            loops: n,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub(crate) fn index(&self) -> ArcIndex {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if x.is_in(s) {
                    head.insert(x.arcs[s], (i, s));
                } else {
                    tail.insert(x.arcs[s], (i, s));
                }
            }
        }
        ArcIndex { head, tail }
    }

    fn check_structure(&self) -> Result<(), DiagramError> {
        let mut heads: HashMap<u32, usize> = HashMap::new();
        let mut tails: HashMap<u32, usize> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if x.sign != 1 && x.sign != -1 {
                return Err(DiagramError::Structure {
                    crossing: i,
                    msg: "sign must be +1 or -1".into(),
                });
            }
            for s in 0..4 {
                let map = if x.is_in(s) { &mut heads } else { &mut tails };
                if map.insert(x.arcs[s], i).is_some() {
                    let what = if x.is_in(s) { "enters" } else { "leaves" };
                    return Err(DiagramError::Structure {
                        crossing: i,
                        msg: format!("arc {} {} two crossings", x.arcs[s], what),
                    });
                }
            }
        }
        for (a, &i) in heads.iter() {
            if !tails.contains_key(a) {
                return Err(DiagramError::Structure {
                    crossing: i,
                    msg: format!("arc {a} has no tail"),
                });
            }
        }
        for (a, &i) in tails.iter() {
            if !heads.contains_key(a) {
                return Err(DiagramError::Structure {
                    crossing: i,
                    msg: format!("arc {a} has no head"),
                });
            }
        }
        Ok(())
    }

    /// Check the invariants and run Seifert's algorithm.
    pub fn validate(&self) -> Result<SeifertData, DiagramError> {
        self.check_structure()?;
        let faces = self.faces().len();
        let pieces = self.crossing_pieces();
        let expected = self.crossings.len() + 2 * pieces;
        if faces != expected {
            return Err(DiagramError::NotPlanar { faces, expected });
        }
        Ok(self.seifert_data())
    }

    pub fn seifert_data(&self) -> SeifertData {
        let s = self.seifert_circles();
        let c = self.crossings.len();
        let chi = s as i64 - c as i64;
        let n = self.component_count() as i64;
        let pieces = (self.crossing_pieces() + self.loops) as i64;
        SeifertData {
            s,
            c,
            chi,
            genus: (2 * pieces - n - chi) / 2,
        }
    }

    /// Number of Seifert circles.
    pub fn seifert_circles(&self) -> usize {
        let mut uf = UnionFind::default();
        for x in &self.crossings {
            let a = x.arcs;
            if x.positive() {
                uf.union(a[0], a[1]);
                uf.union(a[3], a[2]);
            } else {
                uf.union(a[0], a[3]);
                uf.union(a[1], a[2]);
            }
        }
        uf.classes() + self.loops
    }

    /// Connected pieces formed by the crossings (loops excluded).
    pub fn crossing_pieces(&self) -> usize {
        let mut uf = UnionFind::default();
        for x in &self.crossings {
            for s in 1..4 {
                uf.union(x.arcs[0], x.arcs[s]);
            }
        }
        uf.classes()
    }

    pub fn is_split(&self) -> bool {
        self.crossing_pieces() + self.loops > 1
    }

    /// Faces as cyclic dart sequences `(crossing, slot)`.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let idx = self.index();
        let c = self.crossings.len();
        let mut seen = vec![[false; 4]; c];
        let mut out = Vec::new();
        for i in 0..c {
            for s in 0..4 {
                if seen[i][s] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut ci, mut si) = (i, s);
                while !seen[ci][si] {
                    seen[ci][si] = true;
                    face.push((ci, si));
                    let (cj, sj) = idx.other_end(self, ci, si);
                    ci = cj;
                    si = (sj + 1) % 4;
                }
                out.push(face);
            }
        }
        out
    }

    /// Components as arc lists in traversal order. Crossingless loops are
    /// not listed; see [`Diagram::component_count`].
    pub fn components(&self) -> Vec<Vec<u32>> {
        let idx = self.index();
        let mut seen: HashMap<u32, usize> = HashMap::new();
        let mut out: Vec<Vec<u32>> = Vec::new();
        for x in &self.crossings {
            for s in [0, x.over_in()] {
                let start = x.arcs[s];
                if seen.contains_key(&start) {
                    continue;
                }
                let k = out.len();
                let mut comp = Vec::new();
                let mut a = start;
                loop {
                    seen.insert(a, k);
                    comp.push(a);
                    let (c, hs) = idx.head[&a];
                    a = self.crossings[c].arcs[(hs + 2) % 4];
                    if a == start {
                        break;
                    }
                }
                out.push(comp);
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.loops
    }

    /// Component index of every arc.
    pub fn component_map(&self) -> HashMap<u32, usize> {
        let mut m = HashMap::new();
        for (k, comp) in self.components().iter().enumerate() {
            for &a in comp {
                m.insert(a, k);
            }
        }
        m
    }

    pub fn crossing_sign(&self, i: usize) -> Result<i8, DiagramError> {
        self.crossings
            .get(i)
            .map(|x| x.sign)
            .ok_or(DiagramError::Index(i))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    pub fn mirror(&self) -> Diagram {
        let crossings = self.crossings.iter().map(|x| x.switched()).collect();
        Diagram {
            crossings,
            loops: self.loops,
        }
        .relabeled()
    }

    /// Reverse the orientation of one component (indexed as in
    /// [`Diagram::components`]).
    pub fn reverse_component(&self, k: usize) -> Result<Diagram, DiagramError> {
        let comps = self.components();
        if k >= comps.len() {
            return Err(DiagramError::Component(k));
        }
        let cm = self.component_map();
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let under = cm[&x.arcs[0]] == k;
                let over = cm[&x.arcs[x.over_in()]] == k;
                let a = x.arcs;
                let arcs = if under { [a[2], a[3], a[0], a[1]] } else { a };
                let sign = if under != over { -x.sign } else { x.sign };
                Crossing { arcs, sign }
            })
            .collect();
        Ok(Diagram {
            crossings,
            loops: self.loops,
        }
        .relabeled())
    }

    pub fn switch(&self, i: usize) -> Result<Diagram, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::Index(i));
        }
        let mut crossings = self.crossings.clone();
        crossings[i] = crossings[i].switched();
        Ok(Diagram {
            crossings,
            loops: self.loops,
        }
        .relabeled())
    }

    /// Oriented smoothing of crossing `i`; later crossings shift down by one.
    pub fn smooth(&self, i: usize) -> Result<Diagram, DiagramError> {
        if i >= self.crossings.len() {
            return Err(DiagramError::Index(i));
        }
        let x = self.crossings[i];
        let a = x.arcs;
        let joins = if x.positive() {
            [(a[0], a[1]), (a[3], a[2])]
        } else {
            [(a[0], a[3]), (a[1], a[2])]
        };
        Ok(self.remove_joining(&[i], &joins))
    }

    /// Delete the given crossings, identify the listed arc pairs, and turn
    /// arc classes without any remaining endpoint into free loops.
    pub(crate) fn remove_joining(&self, drop: &[usize], joins: &[(u32, u32)]) -> Diagram {
        let mut uf = UnionFind::default();
        for &(p, q) in joins {
            uf.union(p, q);
        }
        for &i in drop {
            for &a in &self.crossings[i].arcs {
                uf.find(a);
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, x)| Crossing {
                arcs: x.arcs.map(|a| uf.find(a)),
                sign: x.sign,
            })
            .collect();
        let mut live = std::collections::HashSet::new();
        for x in &crossings {
            for &a in &x.arcs {
                live.insert(a);
            }
        }
        let mut roots = std::collections::HashSet::new();
        for &i in drop {
            for &a in &self.crossings[i].arcs {
                roots.insert(uf.find(a));
            }
        }
        let new_loops = roots.iter().filter(|r| !live.contains(r)).count();
        Diagram {
            crossings,
            loops: self.loops + new_loops,
        }
        .relabeled()
    }

    /// Renumber arcs 1, 2, ... in traversal order, keeping crossing order.
    pub fn relabeled(&self) -> Diagram {
        let mut map = HashMap::new();
        let mut next = 1u32;
        for comp in self.components() {
            for a in comp {
                map.insert(a, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing {
                arcs: x.arcs.map(|a| map[&a]),
                sign: x.sign,
            })
            .collect();
        Diagram {
            crossings,
            loops: self.loops,
        }
    }

    pub fn max_arc(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|x| x.arcs)
            .max()
            .unwrap_or(0)
    }

    /// Component of the under- and over-strand at each crossing.
    fn strand_components(&self) -> Vec<(usize, usize)> {
        let cm = self.component_map();
        self.crossings
            .iter()
            .map(|x| (cm[&x.arcs[0]], cm[&x.arcs[x.over_in()]]))
            .collect()
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        let n = self.component_count();
        for k in [i, j] {
            if k >= n {
                return Err(DiagramError::Component(k));
            }
        }
        if i == j {
            return Err(DiagramError::SameComponent);
        }
        let sum: i64 = self
            .strand_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| (*u == i && *o == j) || (*u == j && *o == i))
            .map(|(_, x)| x.sign as i64)
            .sum();
        Ok(sum / 2)
    }

    pub fn linking_graph(&self) -> Result<LinkingGraph, DiagramError> {
        let n = self.component_count();
        if n < 2 {
            return Err(DiagramError::Knot);
        }
        let mut sums: HashMap<(usize, usize), i64> = HashMap::new();
        for ((u, o), x) in self.strand_components().iter().zip(&self.crossings) {
            if u != o {
                *sums.entry((*u.min(o), *u.max(o))).or_default() += x.sign as i64;
            }
        }
        let mut edges: Vec<(usize, usize, i64)> = sums
            .into_iter()
            .filter(|(_, s)| *s != 0)
            .map(|((a, b), s)| (a, b, s / 2))
            .collect();
        edges.sort();
        Ok(LinkingGraph { vertices: n, edges })
    }

    /// The other crossing indices sharing a bigon face with crossing `i`.
    pub fn bigon_partners(&self, i: usize) -> Vec<usize> {
        self.faces()
            .iter()
            .filter(|f| f.len() == 2 && f[0].0 != f[1].0)
            .filter_map(|f| {
                if f[0].0 == i {
                    Some(f[1].0)
                } else if f[1].0 == i {
                    Some(f[0].0)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn conway(&self) -> Result<ConwayPoly, DiagramError> {
        conway_skein(self)
    }
}

#[derive(Default)]
pub(crate) struct UnionFind {
    parent: HashMap<u32, u32>,
}

impl UnionFind {
    pub fn find(&mut self, a: u32) -> u32 {
        let p = *self.parent.entry(a).or_insert(a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }

    pub fn classes(&mut self) -> usize {
        let keys: Vec<u32> = self.parent.keys().copied().collect();
        let mut roots = std::collections::HashSet::new();
        for k in keys {
            roots.insert(self.find(k));
        }
        roots.len()
    }
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;

    pub fn d(rows: &[[u32; 5]]) -> Diagram {
        let crossings = rows
            .iter()
            .map(|r| Crossing {
                arcs: [r[0], r[1], r[2], r[3]],
                sign: if r[4] == 1 { 1 } else { -1 },
            })
            .collect();
        Diagram::new(crossings, 0).unwrap()
    }

    /// Right-handed trefoil.
    pub fn trefoil() -> Diagram {
        d(&[[1, 5, 2, 4, 1], [3, 1, 4, 6, 1], [5, 3, 6, 2, 1]])
    }

    pub fn figure_eight() -> Diagram {
        d(&[
            [4, 2, 5, 1, 1],
            [8, 6, 1, 5, 1],
            [6, 3, 7, 4, 0],
            [2, 7, 3, 8, 0],
        ])
    }

    pub fn hopf() -> Diagram {
        d(&[[1, 3, 2, 4, 1], [3, 1, 4, 2, 1]])
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn unknot_seifert() {
        let s = Diagram::unknot().validate().unwrap();
        assert_eq!(
            s,
            SeifertData {
                s: 1,
                c: 0,
                chi: 1,
                genus: 0
            }
        );
    }

    #[test]
    fn trefoil_seifert() {
        let s = trefoil().validate().unwrap();
        assert_eq!(
            s,
            SeifertData {
                s: 2,
                c: 3,
                chi: -1,
                genus: 1
            }
        );
        assert!((0..3).all(|i| trefoil().crossing_sign(i).unwrap() == 1));
    }

    #[test]
    fn figure_eight_is_planar() {
        let s = figure_eight().validate().unwrap();
        assert_eq!(s.genus, 1);
        assert_eq!(figure_eight().writhe(), 0);
    }

    #[test]
    fn hopf_linking() {
        let h = hopf();
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.linking_number(0, 1).unwrap(), 1);
        assert_eq!(h.mirror().linking_number(0, 1).unwrap(), -1);
        assert_eq!(h.mirror().crossing_sign(0).unwrap(), -1);
        assert_eq!(h.linking_number(0, 0), Err(DiagramError::SameComponent));
        let g = h.linking_graph().unwrap();
        assert_eq!(g.edges, vec![(0, 1, 1)]);
        let u = Diagram::unlink(2).linking_graph().unwrap();
        assert!(u.edges.is_empty());
    }

    #[test]
    fn smoothing_hopf_gives_unknot() {
        let s = hopf().smooth(0).unwrap();
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.crossing_count(), 1);
        assert_eq!(s.seifert_data().genus, 0);
    }

    #[test]
    fn switch_twice_is_identity() {
        let t = trefoil();
        assert_eq!(t.switch(1).unwrap().switch(1).unwrap(), t.relabeled());
        assert_eq!(t.switch(5), Err(DiagramError::Index(5)));
    }

    #[test]
    fn non_planar_rejected() {
        // virtual trefoil-like code: a single crossing with two disjoint strands
        let bad = Diagram::new(
            vec![Crossing {
                arcs: [1, 2, 1, 2],
                sign: 1,
            }],
            0,
        );
        assert!(matches!(bad, Err(DiagramError::NotPlanar { .. })));
        let bad = Diagram::new(
            vec![Crossing {
                arcs: [1, 2, 3, 4],
                sign: 1,
            }],
            0,
        );
        assert!(matches!(
            bad,
            Err(DiagramError::Structure { crossing: 0, .. })
        ));
    }
}
