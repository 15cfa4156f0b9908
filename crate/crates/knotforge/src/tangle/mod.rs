//! Conway notation, rational tangle calculus and Montesinos forms.
//!
//! Grammar accepted by [`parse_conway`]:
//!
//! ```text
//! top     = "N(" product ")" | product
//! product = factor { [ws] factor }
//! factor  = "(" product { "," product } ")"
//!         | sign digit { digit }          (one signed integer)
//!         | digit { digit }               (each digit a separate integer)
//!         | "inf" | "∞"
//! sign    = "+" | "-"
//! ```
//!
//! A bare digit run such as `213` is the product `2 1 3`; integers of
//! absolute value 10 or more must carry an explicit sign (`+12`, `-12`).
//! Juxtaposition is the left-associative Conway product `a b = a^r + b`,
//! a comma list `(a,b,...)` is the ramification `a^r + b^r + ...`, where
//! `^r` is the reflection sending a tangle fraction `F` to `1/F`.

mod fraction;
mod montesinos;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fraction::{cf_eval, cf_expand, Fraction};
pub use montesinos::{montesinos_canonical, montesinos_equal, MontesinosForm};

use crate::diagram::{Diagram, DiagramError};
use crate::net::Net;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty continued fraction")]
    Empty,
    #[error("0/0 is not a fraction")]
    Undefined,
    #[error("invalid Montesinos form: {0}")]
    Montesinos(String),
    #[error("Montesinos forms of length {0} < 3 must be compared as rational links")]
    ShortMontesinos(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleExpr {
    Integer(i64),
    Infinity,
    Product(Vec<TangleExpr>),
    Ramification(Vec<TangleExpr>),
    Closure(Box<TangleExpr>),
}

/// Result of a parse, with the byte positions of expanded digit runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayParse {
    pub expr: TangleExpr,
    pub digit_runs: Vec<usize>,
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
    runs: Vec<usize>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, TangleError> {
        Err(TangleError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let r = self.rest();
        let n = r.bytes().take_while(u8::is_ascii_digit).count();
        self.pos += n;
        &r[..n]
    }

    fn factor(&mut self, out: &mut Vec<TangleExpr>) -> Result<bool, TangleError> {
        self.skip_ws();
        let r = self.rest();
        let Some(ch) = r.chars().next() else {
            return Ok(false);
        };
        match ch {
            '(' => {
                self.pos += 1;
                let mut items = vec![self.product()?];
                while self.eat(",") {
                    items.push(self.product()?);
                }
                if !self.eat(")") {
                    return self.err("expected `)` or `,`");
                }
                out.push(if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    TangleExpr::Ramification(items)
                });
            }
            '+' | '-' => {
                let start = self.pos;
                self.pos += 1;
                let d = self.digits();
                if d.is_empty() {
                    self.pos = start;
                    return self.err("sign must be followed by digits");
                }
                let v: i64 = d.parse().map_err(|_| TangleError::Syntax {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
                out.push(TangleExpr::Integer(if ch == '-' { -v } else { v }));
            }
            '0'..='9' => {
                let start = self.pos;
                let d = self.digits();
                if d.len() > 1 {
                    self.runs.push(start);
                }
                out.extend(d.bytes().map(|b| TangleExpr::Integer((b - b'0') as i64)));
            }
            '∞' => {
                self.pos += ch.len_utf8();
                out.push(TangleExpr::Infinity);
            }
            'i' if r.starts_with("inf") => {
                self.pos += 3;
                out.push(TangleExpr::Infinity);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn product(&mut self) -> Result<TangleExpr, TangleError> {
        let mut items = Vec::new();
        while self.factor(&mut items)? {}
        match items.len() {
            0 => self.err("expected a tangle"),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(TangleExpr::Product(items)),
        }
    }

    fn top(&mut self) -> Result<TangleExpr, TangleError> {
        let e = if self.eat("N(") {
            let inner = self.product()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            TangleExpr::Closure(Box::new(inner))
        } else {
            self.product()?
        };
        self.skip_ws();
        if !self.rest().is_empty() {
            return self.err("unexpected character");
        }
        Ok(e)
    }
}

pub fn parse_conway_report(s: &str) -> Result<ConwayParse, TangleError> {
    let mut p = Parser {
        s,
        pos: 0,
        runs: Vec::new(),
    };
    let expr = p.top()?;
    Ok(ConwayParse {
        expr,
        digit_runs: p.runs,
    })
}

pub fn parse_conway(s: &str) -> Result<TangleExpr, TangleError> {
    parse_conway_report(s).map(|r| r.expr)
}

fn is_digit(e: &TangleExpr) -> bool {
    matches!(e, TangleExpr::Integer(0..=9))
}

fn bracketed(e: &TangleExpr) -> bool {
    matches!(e, TangleExpr::Ramification(_) | TangleExpr::Product(_))
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Integer(n) if *n >= 10 => write!(f, "+{n}"),
            TangleExpr::Integer(n) => write!(f, "{n}"),
            TangleExpr::Infinity => write!(f, "inf"),
            TangleExpr::Closure(x) => write!(f, "N({x})"),
            TangleExpr::Ramification(items) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            TangleExpr::Product(items) => {
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        let prev = &items[i - 1];
                        let tight =
                            (is_digit(prev) && is_digit(x)) || bracketed(prev) || bracketed(x);
                        if !tight {
                            write!(f, " ")?;
                        }
                    }
                    match x {
                        TangleExpr::Product(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl TangleExpr {
    /// Tangle fraction of a rational expression.
    pub fn fraction(&self) -> Option<Fraction> {
        match self {
            TangleExpr::Integer(n) => Some(Fraction::integer(*n)),
            TangleExpr::Infinity => Some(Fraction::INFINITY),
            TangleExpr::Product(items) => {
                let mut it = items.iter();
                let mut acc = it.next()?.fraction()?;
                for x in it {
                    acc = x.fraction()? + acc.recip();
                }
                Some(acc)
            }
            _ => None,
        }
    }

    pub(crate) fn to_net(&self) -> Net {
        match self {
            TangleExpr::Integer(n) => Net::integer(*n),
            TangleExpr::Infinity => Net::infinity(),
            TangleExpr::Product(items) => {
                let mut acc = items[0].to_net();
                for x in &items[1..] {
                    acc = acc.product(&x.to_net());
                }
                acc
            }
            TangleExpr::Ramification(items) => {
                let mut acc = items[0].to_net().reflect();
                for x in &items[1..] {
                    acc = acc.sum(&x.to_net().reflect());
                }
                acc
            }
            TangleExpr::Closure(x) => x.to_net().numerator(),
        }
    }

    /// Sum of absolute values of the integer leaves.
    pub fn crossing_count(&self) -> usize {
        match self {
            TangleExpr::Integer(n) => n.unsigned_abs() as usize,
            TangleExpr::Infinity => 0,
            TangleExpr::Product(v) | TangleExpr::Ramification(v) => {
                v.iter().map(Self::crossing_count).sum()
            }
            TangleExpr::Closure(x) => x.crossing_count(),
        }
    }
}

pub fn rational_tangle(f: Fraction) -> TangleExpr {
    let c = cf_expand(f);
    if c.len() == 1 {
        TangleExpr::Integer(c[0])
    } else {
        TangleExpr::Product(c.into_iter().map(TangleExpr::Integer).collect())
    }
}

/// Ramification of the rational tangles `p_i/q_i` followed by `e 0`.
pub fn montesinos_to_conway(m: &MontesinosForm) -> TangleExpr {
    let int = TangleExpr::Integer;
    match m.fractions.len() {
        0 => int(m.e),
        1 => {
            let mut items = match rational_tangle(m.fractions[0].recip()) {
                TangleExpr::Product(v) => v,
                x => vec![x],
            };
            items.push(int(m.e));
            TangleExpr::Product(items)
        }
        _ => {
            let mut items: Vec<TangleExpr> = m
                .fractions
                .iter()
                .map(|f| rational_tangle(f.recip()))
                .collect();
            if m.e != 0 {
                items.push(TangleExpr::Product(vec![int(m.e), int(0)]));
            }
            TangleExpr::Ramification(items)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    pub diagram: Diagram,
    /// The expression had no closure and its numerator closure was taken.
    pub implicit_closure: bool,
}

pub fn tangle_to_diagram(t: &TangleExpr) -> Result<TangleDiagram, TangleError> {
    let (net, implicit_closure) = match t {
        TangleExpr::Closure(_) => (t.to_net(), false),
        _ => (t.to_net().numerator(), true),
    };
    Ok(TangleDiagram {
        diagram: net.to_diagram()?,
        implicit_closure,
    })
}

/// Numerator closure of vertical twists of the given lengths, side by side.
pub fn pretzel_diagram(params: &[i64]) -> Result<Diagram, TangleError> {
    let ints: Vec<TangleExpr> = params.iter().map(|&p| TangleExpr::Integer(p)).collect();
    let inner = match ints.len() {
        0 => return Err(TangleError::Empty),
        1 => TangleExpr::Product(vec![ints[0].clone(), TangleExpr::Integer(0)]),
        _ => TangleExpr::Ramification(ints),
    };
    Ok(tangle_to_diagram(&TangleExpr::Closure(Box::new(inner)))?.diagram)
}
