//! Conway polynomial by the skein relation, with Reidemeister
//! simplification, bigon-first branching, descending resolution and
//! memoization on a relabeling-invariant diagram code.

use std::collections::HashMap;

use super::twist::bigons;
use super::{Diagram, DiagramError};
use crate::ConwayPoly;

pub const DEFAULT_LIMIT: usize = 64;

/// Crossing limit, overridable through `KNOTFORGE_LIMIT`.
pub fn default_limit() -> usize {
    std::env::var("KNOTFORGE_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

pub fn conway_skein(d: &Diagram) -> Result<ConwayPoly, DiagramError> {
    SkeinEvaluator::new(default_limit()).eval(d)
}

#[derive(Debug, Clone)]
pub struct SkeinEvaluator {
    limit: usize,
    memo: HashMap<Vec<i64>, ConwayPoly>,
}

impl Default for SkeinEvaluator {
    fn default() -> Self {
        SkeinEvaluator::new(default_limit())
    }
}

/// Traversal data from a chosen start arc.
struct Labeling {
    code: Vec<i64>,
    /// crossing indices in order of first visit, with whether that visit was under
    first_visits: Vec<(usize, bool)>,
}

fn label_from(d: &Diagram, start: u32, idx: &super::ArcIndex) -> Labeling {
    let xs = d.crossings();
    let c = xs.len();
    let mut arc_label: HashMap<u32, i64> = HashMap::with_capacity(2 * c);
    let mut cross_label: Vec<Option<usize>> = vec![None; c];
    let mut order: Vec<usize> = Vec::with_capacity(c);
    let mut first_visits = Vec::with_capacity(c);
    let mut lengths = Vec::new();
    let mut next = 0i64;
    let mut begin = Some(start);
    while let Some(s) = begin {
        let mut a = s;
        let mut len = 0;
        loop {
            arc_label.insert(a, next);
            next += 1;
            len += 1;
            let (ci, slot) = idx.head[&a];
            if cross_label[ci].is_none() {
                cross_label[ci] = Some(order.len());
                order.push(ci);
                first_visits.push((ci, slot == 0));
            }
            a = xs[ci].arcs[(slot + 2) % 4];
            if a == s {
                break;
            }
        }
        lengths.push(len);
        begin = None;
        'find: for &ci in &order {
            let x = &xs[ci];
            for slot in [0, x.over_in()] {
                if !arc_label.contains_key(&x.arcs[slot]) {
                    begin = Some(x.arcs[slot]);
                    break 'find;
                }
            }
        }
    }
    let mut code = Vec::with_capacity(lengths.len() + 2 + 3 * c);
    code.extend(lengths);
    code.push(-(d.loops() as i64) - 1);
    for &ci in &order {
        let x = &xs[ci];
        code.push(arc_label[&x.arcs[0]]);
        code.push(arc_label[&x.arcs[x.over_in()]]);
        code.push(x.sign as i64);
    }
    Labeling { code, first_visits }
}

/// Lexicographically least code over all start arcs.
fn canonical(d: &Diagram) -> Labeling {
    let idx = d.index();
    let mut best: Option<Labeling> = None;
    for x in d.crossings() {
        for slot in [0, x.over_in()] {
            let l = label_from(d, x.arcs[slot], &idx);
            if best.as_ref().is_none_or(|b| l.code < b.code) {
                best = Some(l);
            }
        }
    }
    best.unwrap_or(Labeling {
        code: vec![-(d.loops() as i64) - 1],
        first_visits: Vec::new(),
    })
}

/// One Reidemeister I or II reduction, if any applies.
fn reduce_once(d: &Diagram) -> Option<Diagram> {
    for (i, x) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            if x.arcs[s] == x.arcs[(s + 1) % 4] {
                let a = x.arcs;
                return Some(d.remove_joining(&[i], &[(a[0], a[2]), (a[1], a[3])]));
            }
        }
    }
    for b in bigons(d) {
        if !b.alternating {
            let mut joins = Vec::new();
            for c in [b.c1, b.c2] {
                let a = d.crossings()[c].arcs;
                joins.push((a[0], a[2]));
                joins.push((a[1], a[3]));
            }
            return Some(d.remove_joining(&[b.c1, b.c2], &joins));
        }
    }
    None
}

pub(crate) fn simplify(d: &Diagram) -> Diagram {
    let mut cur = d.clone();
    while let Some(next) = reduce_once(&cur) {
        cur = next;
    }
    cur
}

impl SkeinEvaluator {
    pub fn new(limit: usize) -> SkeinEvaluator {
        SkeinEvaluator {
            limit,
            memo: HashMap::new(),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn eval(&mut self, d: &Diagram) -> Result<ConwayPoly, DiagramError> {
        if d.crossing_count() > self.limit {
            return Err(DiagramError::Limit {
                count: d.crossing_count(),
                limit: self.limit,
            });
        }
        Ok(self.rec(d))
    }

    fn rec(&mut self, d: &Diagram) -> ConwayPoly {
        let d = simplify(d);
        if d.crossing_count() == 0 {
            return if d.loops() == 1 {
                ConwayPoly::one()
            } else {
                ConwayPoly::zero()
            };
        }
        if d.is_split() {
            return ConwayPoly::zero();
        }
        let lab = canonical(&d);
        if let Some(v) = self.memo.get(&lab.code) {
            return v.clone();
        }
        let value = match bigons(&d).into_iter().find(|b| b.alternating) {
            Some(b) => self.branch(&d, b.c1),
            None => self.descend(&d, &lab),
        };
        self.memo.insert(lab.code, value.clone());
        value
    }

    /// `∇(D) = ∇(switch_i D) + sign_i z ∇(smooth_i D)`.
    fn branch(&mut self, d: &Diagram, i: usize) -> ConwayPoly {
        let sign = d.crossings()[i].sign as i64;
        let sw = self.rec(&d.switch(i).expect("index in range"));
        let sm = self.rec(&d.smooth(i).expect("index in range"));
        &sw + &sm.shift_up(1).scale(sign)
    }

    /// Switch the crossings first met from below, one at a time, until the
    /// diagram is descending and hence an unlink.
    fn descend(&mut self, d: &Diagram, lab: &Labeling) -> ConwayPoly {
        let mut cur = d.clone();
        let mut total = ConwayPoly::zero();
        for &(ci, under) in &lab.first_visits {
            if !under {
                continue;
            }
            let sign = cur.crossings()[ci].sign as i64;
            let sm = self.rec(&cur.smooth(ci).expect("index in range"));
            total = &total + &sm.shift_up(1).scale(sign);
            cur = cur.switch(ci).expect("index in range");
        }
        if cur.component_count() == 1 {
            total = &total + &ConwayPoly::one();
        }
        total
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}
