use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Fraction, TangleError};

/// `M(q_1/p_1, ..., q_n/p_n; e)` with `p_i > 0` and `0 < |q_i| < p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MontesinosForm {
    pub fractions: Vec<Fraction>,
    pub e: i64,
}

impl MontesinosForm {
    pub fn new(fractions: Vec<Fraction>, e: i64) -> Result<MontesinosForm, TangleError> {
        for f in &fractions {
            if f.is_infinite() || f.p() == 0 || f.p().abs() >= f.q() {
                return Err(TangleError::Montesinos(format!(
                    "entry {f} needs 0 < |q| < p"
                )));
            }
        }
        Ok(MontesinosForm { fractions, e })
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    /// `e + sum q_i/p_i`.
    pub fn entry_sum(&self) -> Fraction {
        self.fractions
            .iter()
            .fold(Fraction::integer(self.e), |s, &f| s + f)
    }

    pub fn mirror(&self) -> MontesinosForm {
        MontesinosForm {
            fractions: self.fractions.iter().map(|&f| -f).collect(),
            e: -self.e,
        }
    }
}

/// Move every entry into `0 < q_i < p_i`, adjusting `e`.
pub fn montesinos_canonical(m: &MontesinosForm) -> MontesinosForm {
    let mut e = m.e;
    let fractions = m
        .fractions
        .iter()
        .map(|f| {
            if f.p() < 0 {
                e -= 1;
                Fraction::new(f.p() + f.q(), f.q()).expect("denominator positive")
            } else {
                *f
            }
        })
        .collect();
    MontesinosForm { fractions, e }
}

fn dihedral_eq(a: &[Fraction], b: &[Fraction]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    (0..n).any(|r| {
        (0..n).all(|i| a[i] == b[(i + r) % n]) || (0..n).all(|i| a[i] == b[(n + r - i) % n])
    })
}

/// Equality of canonical forms up to cyclic order and reversal, optionally
/// also against the mirror image.
pub fn montesinos_equal(
    m1: &MontesinosForm,
    m2: &MontesinosForm,
    allow_mirror: bool,
) -> Result<bool, TangleError> {
    for m in [m1, m2] {
        if m.len() < 3 {
            return Err(TangleError::ShortMontesinos(m.len()));
        }
    }
    let a = montesinos_canonical(m1);
    let same = |b: &MontesinosForm| {
        let b = montesinos_canonical(b);
        a.e == b.e && dihedral_eq(&a.fractions, &b.fractions)
    };
    Ok(same(m2) || (allow_mirror && same(&m2.mirror())))
}

impl fmt::Display for MontesinosForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .fractions
            .iter()
            .map(|x| format!("{}/{}", x.p(), x.q()))
            .collect();
        write!(f, "M({};{})", parts.join(","), self.e)
    }
}

impl FromStr for MontesinosForm {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<MontesinosForm, TangleError> {
        let syntax = |msg: &str| TangleError::Syntax {
            pos: 0,
            msg: msg.to_string(),
        };
        let t = s.trim();
        let body = t
            .strip_prefix("M(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| syntax("expected `M(q1/p1,...;e)`"))?;
        let (fr, e) = match body.split_once(';') {
            Some((a, b)) => (
                a,
                b.trim()
                    .parse::<i64>()
                    .map_err(|_| syntax("bad integer part"))?,
            ),
            None => (body, 0),
        };
        let fractions = if fr.trim().is_empty() {
            Vec::new()
        } else {
            fr.split(',')
                .map(|x| x.parse::<Fraction>())
                .collect::<Result<Vec<_>, _>>()?
        };
        MontesinosForm::new(fractions, e)
    }
}
