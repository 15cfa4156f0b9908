//! Unoriented crossing networks with four-ended tangle operations, and
//! conversion of closed networks to oriented diagrams.
//!
//! Tangle ends are numbered counterclockwise: 0 = NE, 1 = NW, 2 = SW,
//! 3 = SE. Every crossing lists four slot points counterclockwise; the
//! strands run between slots 0-2 and 1-3.

use std::collections::{HashMap, HashSet};

use crate::diagram::{Crossing, Diagram, DiagramError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Pt {
    Slot(usize, u8),
    Free(usize),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Net {
    /// Over-strand on slots 1 and 3.
    pub over_odd: Vec<bool>,
    pub wires: Vec<(Pt, Pt)>,
    /// Empty for a closed network.
    pub ends: Vec<Pt>,
    pub free: usize,
    /// Wires with a prescribed direction of travel.
    pub directed: HashSet<(Pt, Pt)>,
}

impl Net {
    fn fresh(&mut self) -> Pt {
        self.free += 1;
        Pt::Free(self.free - 1)
    }

    fn four_free() -> (Net, [Pt; 4]) {
        let mut n = Net::default();
        let e = [n.fresh(), n.fresh(), n.fresh(), n.fresh()];
        n.ends = e.to_vec();
        (n, e)
    }

    /// The `[0]` tangle: NE-NW and SW-SE.
    pub fn zero() -> Net {
        let (mut n, e) = Net::four_free();
        n.wires = vec![(e[0], e[1]), (e[2], e[3])];
        n
    }

    /// The infinity tangle: NW-SW and NE-SE.
    pub fn infinity() -> Net {
        let (mut n, e) = Net::four_free();
        n.wires = vec![(e[1], e[2]), (e[0], e[3])];
        n
    }

    /// `[+1]` has the NW-SE strand over.
    pub fn unit(sign: i64) -> Net {
        let mut n = Net {
            over_odd: vec![sign > 0],
            ..Net::default()
        };
        n.ends = (0..4).map(|s| Pt::Slot(0, s)).collect();
        n
    }

    pub fn integer(k: i64) -> Net {
        if k == 0 {
            return Net::zero();
        }
        let mut acc = Net::unit(k.signum());
        for _ in 1..k.abs() {
            acc = acc.sum(&Net::unit(k.signum()));
        }
        acc
    }

    fn shift_pt(p: Pt, dc: usize, df: usize) -> Pt {
        match p {
            Pt::Slot(c, s) => Pt::Slot(c + dc, s),
            Pt::Free(f) => Pt::Free(f + df),
        }
    }

    /// Disjoint copy of `other` appended to `self`; returns the point map.
    pub fn absorb(&mut self, other: &Net) -> impl Fn(Pt) -> Pt {
        let (dc, df) = (self.over_odd.len(), self.free);
        let m = move |p: Pt| Net::shift_pt(p, dc, df);
        self.over_odd.extend(&other.over_odd);
        self.wires
            .extend(other.wires.iter().map(|&(a, b)| (m(a), m(b))));
        self.directed
            .extend(other.directed.iter().map(|&(a, b)| (m(a), m(b))));
        self.free += other.free;
        m
    }

    /// Tangle sum: this tangle on the left, `other` on the right.
    pub fn sum(&self, other: &Net) -> Net {
        let mut n = self.clone();
        let m = n.absorb(other);
        let (a, b) = (&self.ends, &other.ends);
        n.wires.push((a[0], m(b[1])));
        n.wires.push((a[3], m(b[2])));
        n.ends = vec![m(b[0]), a[1], a[2], m(b[3])];
        n
    }

    /// Quarter turn counterclockwise.
    pub fn rotate(&self) -> Net {
        let mut n = self.clone();
        n.ends = (0..4).map(|i| self.ends[(i + 3) % 4]).collect();
        n
    }

    pub fn mirror(&self) -> Net {
        let mut n = self.clone();
        for o in &mut n.over_odd {
            *o = !*o;
        }
        n
    }

    /// Reflection used by products and ramifications; sends fraction `F`
    /// to `1/F`.
    pub fn reflect(&self) -> Net {
        self.rotate().mirror()
    }

    /// Conway product `a b`: reflect `a`, then add `b`.
    pub fn product(&self, other: &Net) -> Net {
        self.reflect().sum(other)
    }

    /// Numerator closure.
    pub fn numerator(&self) -> Net {
        let mut n = self.clone();
        let e = std::mem::take(&mut n.ends);
        n.wires.push((e[0], e[1]));
        n.wires.push((e[2], e[3]));
        n
    }

    /// Orient and convert a closed network. Components carrying a directed
    /// wire follow it; the rest are oriented to maximize Seifert circles,
    /// taking the first maximum in enumeration order.
    pub fn to_diagram(&self) -> Result<Diagram, DiagramError> {
        let bad = |msg: &str| DiagramError::Structure {
            crossing: 0,
            msg: msg.to_string(),
        };
        if !self.ends.is_empty() {
            return Err(bad("network is not closed"));
        }
        let mut adj: HashMap<Pt, Vec<Pt>> = HashMap::new();
        for &(a, b) in &self.wires {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let nc = self.over_odd.len();
        // chain from every slot to the next slot, with the wires passed
        let mut link: HashMap<(usize, u8), ((usize, u8), Vec<(Pt, Pt)>)> = HashMap::new();
        let mut seen_free: HashSet<Pt> = HashSet::new();
        for c in 0..nc {
            for s in 0..4u8 {
                let start = Pt::Slot(c, s);
                let nb = adj.get(&start).map(Vec::as_slice).unwrap_or(&[]);
                if nb.len() != 1 {
                    return Err(bad("crossing slot without exactly one wire"));
                }
                let (mut prev, mut cur) = (start, nb[0]);
                let mut path = vec![(prev, cur)];
                while let Pt::Free(_) = cur {
                    seen_free.insert(cur);
                    let nb = &adj[&cur];
                    if nb.len() != 2 {
                        return Err(bad("dangling wire"));
                    }
                    let next = if nb[0] == prev && nb[1] != prev {
                        nb[1]
                    } else if nb[1] == prev && nb[0] != prev {
                        nb[0]
                    } else if nb[0] == prev {
                        nb[1]
                    } else {
                        nb[0]
                    };
                    prev = cur;
                    cur = next;
                    path.push((prev, cur));
                }
                let Pt::Slot(c2, s2) = cur else {
                    unreachable!()
                };
                link.insert((c, s), ((c2, s2), path));
            }
        }
        // free loops
        let mut loops = 0;
        let mut in_loop: HashSet<Pt> = HashSet::new();
        let mut frees: Vec<Pt> = adj
            .keys()
            .copied()
            .filter(|p| matches!(p, Pt::Free(_)))
            .collect();
        frees.sort();
        for p in frees {
            if seen_free.contains(&p) || in_loop.contains(&p) {
                continue;
            }
            if adj[&p].len() != 2 {
                return Err(bad("dangling wire"));
            }
            let mut stack = vec![p];
            in_loop.insert(p);
            while let Some(q) = stack.pop() {
                for &r in &adj[&q] {
                    if in_loop.insert(r) {
                        stack.push(r);
                    }
                }
            }
            loops += 1;
        }
        // components as arrival sequences
        let mut comp_of: HashMap<(usize, u8), (usize, bool)> = HashMap::new();
        let mut comps: Vec<Vec<(usize, u8)>> = Vec::new();
        let mut forced: Vec<Option<bool>> = Vec::new();
        for c in 0..nc {
            for s in 0..4u8 {
                if comp_of.contains_key(&(c, s)) {
                    continue;
                }
                let k = comps.len();
                let mut seq = Vec::new();
                let mut force = None;
                let mut at = (c, s);
                loop {
                    comp_of.insert(at, (k, true));
                    let exit = (at.0, (at.1 + 2) % 4);
                    comp_of.insert(exit, (k, false));
                    seq.push(at);
                    let (next, path) = &link[&exit];
                    for &(a, b) in path {
                        if self.directed.contains(&(a, b)) {
                            force = Some(true);
                        } else if self.directed.contains(&(b, a)) {
                            force = Some(false);
                        }
                    }
                    at = *next;
                    if at == (c, s) {
                        break;
                    }
                }
                comps.push(seq);
                forced.push(force);
            }
        }
        let free: Vec<usize> = (0..comps.len()).filter(|&k| forced[k].is_none()).collect();
        let build = |orient: &[bool]| -> Vec<Crossing> {
            // arrival slot per crossing strand
            let mut arrivals: Vec<Vec<u8>> = vec![Vec::new(); nc];
            for (k, seq) in comps.iter().enumerate() {
                for &(c, s) in seq {
                    arrivals[c].push(if orient[k] { s } else { (s + 2) % 4 });
                }
            }
            // arc label per forward chain, keyed by its tail slot
            let mut arc: HashMap<(usize, u8), u32> = HashMap::new();
            let mut next = 1u32;
            let mut keys: Vec<(usize, u8)> = Vec::new();
            for c in 0..nc {
                for &s in &arrivals[c] {
                    keys.push((c, (s + 2) % 4));
                }
            }
            keys.sort();
            for t in keys {
                let (h, _) = &link[&t];
                arc.insert(t, next);
                arc.insert(*h, next);
                next += 1;
            }
            (0..nc)
                .map(|c| {
                    let under: u8 = if self.over_odd[c] { 0 } else { 1 };
                    let ua = *arrivals[c]
                        .iter()
                        .find(|&&s| s % 2 == under)
                        .expect("under strand");
                    let oa = *arrivals[c]
                        .iter()
                        .find(|&&s| s % 2 != under)
                        .expect("over strand");
                    let arcs = [0, 1, 2, 3].map(|k| arc[&(c, (ua + k) % 4)]);
                    let sign = if (oa + 4 - ua) % 4 == 3 { 1 } else { -1 };
                    Crossing { arcs, sign }
                })
                .collect()
        };
        let mut orient: Vec<bool> = forced.iter().map(|f| f.unwrap_or(true)).collect();
        if free.len() > 1 || (free.len() == 1 && free.len() < comps.len()) {
            // the first free component keeps its direction when nothing is forced
            let fixed_first = free.len() == comps.len();
            let vary: Vec<usize> = if fixed_first {
                free[1..].to_vec()
            } else {
                free.clone()
            };
            let mut best: Option<(usize, u64)> = None;
            for mask in 0..(1u64 << vary.len()) {
                for (j, &k) in vary.iter().enumerate() {
                    orient[k] = mask & (1 << j) == 0;
                }
                let s = Diagram::from_parts(build(&orient), loops).seifert_circles();
                if best.is_none_or(|(b, _)| s > b) {
                    best = Some((s, mask));
                }
            }
            let (_, mask) = best.expect("at least one orientation");
            for (j, &k) in vary.iter().enumerate() {
                orient[k] = mask & (1 << j) == 0;
            }
        }
        Diagram::new(build(&orient), loops).map(|d| d.relabeled())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::conway_skein;
    use crate::ConwayPoly;

    fn pretzel(ps: &[i64]) -> Diagram {
        let mut acc = Net::integer(ps[0]).reflect();
        for &p in &ps[1..] {
            acc = acc.sum(&Net::integer(p).reflect());
        }
        acc.numerator().to_diagram().unwrap()
    }

    #[test]
    fn positive_unit_pretzel_is_positive() {
        let d = pretzel(&[1, 1, 1]);
        assert!(d.crossings().iter().all(|x| x.sign == 1));
        assert_eq!(
            conway_skein(&d).unwrap(),
            "1 + z^2".parse::<ConwayPoly>().unwrap()
        );
    }

    #[test]
    fn closures_of_basic_tangles() {
        assert_eq!(
            Net::zero().numerator().to_diagram().unwrap(),
            Diagram::unlink(2)
        );
        assert_eq!(
            Net::infinity().numerator().to_diagram().unwrap(),
            Diagram::unknot()
        );
        let h = Net::integer(2).numerator().to_diagram().unwrap();
        assert_eq!(h.component_count(), 2);
    }
}
