use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::TangleError;

/// Reduced fraction `p/q` with `q >= 0`; `1/0` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    p: i64,
    q: i64,
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Fraction, TangleError> {
        if p == 0 && q == 0 {
            return Err(TangleError::Undefined);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Fraction { p, q })
    }

    pub fn integer(n: i64) -> Fraction {
        Fraction { p: n, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    pub fn recip(&self) -> Fraction {
        Fraction::new(self.q, self.p).expect("nonzero pair")
    }
}

impl Add for Fraction {
    type Output = Fraction;

    fn add(self, o: Fraction) -> Fraction {
        if self.is_infinite() || o.is_infinite() {
            return Fraction::INFINITY;
        }
        let l = self.q.lcm(&o.q);
        Fraction::new(self.p * (l / self.q) + o.p * (l / o.q), l).expect("finite sum")
    }
}

impl Neg for Fraction {
    type Output = Fraction;

    fn neg(self) -> Fraction {
        if self.is_infinite() {
            self
        } else {
            Fraction {
                p: -self.p,
                q: self.q,
            }
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

impl FromStr for Fraction {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Fraction, TangleError> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Fraction::INFINITY);
        }
        let bad = || TangleError::Syntax {
            pos: 0,
            msg: format!("bad fraction `{s}`"),
        };
        match s.split_once('/') {
            Some((a, b)) => Fraction::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Fraction::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// `[[c_1, ..., c_n]]` where each step is `c_k + 1/[[c_1, ..., c_{k-1}]]`.
pub fn cf_eval(c: &[i64]) -> Result<Fraction, TangleError> {
    let (first, rest) = c.split_first().ok_or(TangleError::Empty)?;
    Ok(rest.iter().fold(Fraction::integer(*first), |f, &s| {
        Fraction::integer(s) + f.recip()
    }))
}

/// Expansion with entries carrying the sign of `f`, built by truncating
/// division from the last entry backwards.
pub fn cf_expand(f: Fraction) -> Vec<i64> {
    if f.is_infinite() {
        return vec![0, 0];
    }
    let (mut p, mut q) = (f.p, f.q);
    let mut out = Vec::new();
    loop {
        let s = p / q;
        out.push(s);
        let r = p - s * q;
        if r == 0 {
            break;
        }
        (p, q) = (q, r);
    }
    out.reverse();
    out
}
