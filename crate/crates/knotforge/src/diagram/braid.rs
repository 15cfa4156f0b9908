use std::collections::HashMap;

use super::{Crossing, Diagram, DiagramError};

impl Diagram {
    /// Closure of a braid on `strands` strands, drawn upward. Generator `i`
    /// crosses strand `i` over strand `i + 1` positively, `-i` is its
    /// inverse. Strands fixed by the braid and never crossed become loops.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let mut next = strands as u32 + 1;
        let mut xs = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(DiagramError::Generator(g, strands));
            }
            let (bl, br, tl, tr) = (cur[i - 1], cur[i], next, next + 1);
            next += 2;
            let (arcs, sign) = if g > 0 {
                ([br, tr, tl, bl], 1)
            } else {
                ([bl, br, tr, tl], -1)
            };
            xs.push(Crossing { arcs, sign });
            cur[i - 1] = tl;
            cur[i] = tr;
        }
        let mut loops = 0;
        let mut close = HashMap::new();
        for (j, &top) in cur.iter().enumerate() {
            if top == j as u32 + 1 {
                loops += 1;
            } else {
                close.insert(top, j as u32 + 1);
            }
        }
        for x in &mut xs {
            for a in &mut x.arcs {
                if let Some(&b) = close.get(a) {
                    *a = b;
                }
            }
        }
        Diagram::new(xs, loops)
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::conway_skein;
    use crate::Diagram;

    #[test]
    fn small_closures() {
        let t = Diagram::braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(conway_skein(&t).unwrap().to_string(), "1 + z^2");
        assert_eq!(t.writhe(), 3);
        let f = Diagram::braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(conway_skein(&f).unwrap().to_string(), "1 - z^2");
        let h = Diagram::braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(h.linking_number(0, 1).unwrap(), 1);
        let u = Diagram::braid_closure(3, &[1]).unwrap();
        assert_eq!((u.component_count(), u.loops()), (2, 1));
        assert!(Diagram::braid_closure(2, &[2]).is_err());
    }
}
