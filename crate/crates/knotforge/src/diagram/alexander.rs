//! Alexander polynomial from the Fox-calculus matrix of the Wirtinger
//! presentation, as an independent check on the skein evaluator.

use std::collections::HashMap;

use super::{Diagram, DiagramError, UnionFind};
use crate::poly::Laurent;
use crate::IntLaurent;

type L = Laurent<i128>;

/// Determinant by fraction-free elimination.
pub(crate) fn bareiss(mut m: Vec<Vec<L>>) -> L {
    let n = m.len();
    if n == 0 {
        return L::one();
    }
    let mut sign = 1i128;
    let mut prev = L::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return L::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("exact Bareiss division");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

/// Alexander polynomial in `u = t^(1/2)`, normalized up to `±u^k` to be
/// centered with positive value at `u = 1` when that is nonzero.
pub fn alexander_det(d: &Diagram) -> Result<IntLaurent, DiagramError> {
    if d.is_split() {
        return Err(DiagramError::Disconnected);
    }
    if d.crossing_count() == 0 {
        return Ok(IntLaurent::one());
    }
    let mut uf = UnionFind::default();
    for x in d.crossings() {
        uf.union(x.arcs[x.over_in()], x.arcs[x.over_out()]);
    }
    let mut gens: HashMap<u32, usize> = HashMap::new();
    for x in d.crossings() {
        for &a in &x.arcs {
            let r = uf.find(a);
            let k = gens.len();
            gens.entry(r).or_insert(k);
        }
    }
    let c = d.crossing_count();
    if gens.len() > c {
        return Ok(IntLaurent::zero());
    }
    let t = L::monomial(1, 2);
    let one = L::one();
    let mut m = vec![vec![L::zero(); c]; c];
    for (row, x) in d.crossings().iter().enumerate() {
        let gi = gens[&uf.find(x.arcs[0])];
        let go = gens[&uf.find(x.arcs[2])];
        let gy = gens[&uf.find(x.arcs[x.over_in()])];
        let (ci, co, cy) = if x.positive() {
            (t.clone(), -&one, &one - &t)
        } else {
            (one.clone(), -&t, &t - &one)
        };
        m[row][gi] += &ci;
        m[row][go] += &co;
        m[row][gy] += &cy;
    }
    let minor: Vec<Vec<L>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    let det = bareiss(minor).normalize_units();
    Ok(det.convert::<i64>().expect("coefficients fit in i64"))
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;

    #[test]
    fn known_polynomials() {
        let tr: IntLaurent = "t - 1 + t^-1".parse().unwrap();
        let fe: IntLaurent = "3 - t - t^-1".parse().unwrap();
        assert!(alexander_det(&trefoil()).unwrap().associate_eq(&tr));
        assert!(alexander_det(&figure_eight()).unwrap().associate_eq(&fe));
        assert_eq!(
            alexander_det(&Diagram::unknot()).unwrap(),
            IntLaurent::one()
        );
        let h = hopf().conway().unwrap().to_alexander();
        assert!(alexander_det(&hopf()).unwrap().associate_eq(&h));
    }
}
