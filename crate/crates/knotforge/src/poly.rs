//! Exact integer Laurent and Conway polynomials.
//!
//! Alexander polynomials are stored in `u = t^(1/2)`, so links with an even
//! number of components (half-integer powers of `t`) still live in an integer
//! exponent ring. Conway polynomials are ordinary polynomials in `z`.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer types usable as polynomial coefficients.
pub trait Coeff:
    PrimInt + Signed + Integer + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: PrimInt + Signed + Integer + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    #[error("polynomial is not of the form nabla(u - u^-1)")]
    NotRealizable,
    #[error("polynomial is not admissible for {0} component(s)")]
    Inadmissible(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees<C> {
    pub mindeg: i64,
    pub maxdeg: i64,
    pub span: i64,
    pub leading: C,
}

/// Laurent polynomial in `u = t^(1/2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

/// Polynomial in `z` with non-negative exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conway<C> {
    inner: Laurent<C>,
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `u = t^(1/2)`.
    pub fn u() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `t = u^2`.
    pub fn t() -> Self {
        Self::monomial(C::one(), 2)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let v = *self.terms.get(&e).unwrap_or(&C::zero()) + c;
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).copied().unwrap_or_else(C::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, C)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    fn last_term(&self) -> Option<(i64, C)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> Result<Degrees<C>, PolyError> {
        let (&lo, _) = self.terms.iter().next().ok_or(PolyError::ZeroDegree)?;
        let (&hi, &lead) = self.terms.iter().next_back().unwrap();
        Ok(Degrees {
            mindeg: lo,
            maxdeg: hi,
            span: hi - lo,
            leading: lead,
        })
    }

    pub fn is_monic(&self) -> Result<bool, PolyError> {
        Ok(self.degrees()?.leading.abs().is_one())
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, c: C) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a * c)))
    }

    /// Substitute `u -> u^-1`.
    pub fn invert_var(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Value at `u = 1`.
    pub fn eval_one(&self) -> C {
        self.terms.values().fold(C::zero(), |a, &c| a + c)
    }

    /// Value at `u = -1`.
    pub fn eval_minus_one(&self) -> C {
        self.terms.iter().fold(
            C::zero(),
            |a, (&e, &c)| if e.is_odd() { a - c } else { a + c },
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Exact division; `None` if `rhs` does not divide `self` over the integers.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (rlo, _) = rhs.terms().next().unwrap();
        let (rhi, rlead) = rhs.terms().next_back().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((hi, c)) = rem.last_term() {
            let lo = rem.terms().next().unwrap().0;
            if hi - lo < rhi - rlo {
                return None;
            }
            let (qc, r) = c.div_rem(&rlead);
            if !r.is_zero() {
                return None;
            }
            let m = Self::monomial(qc, hi - rhi);
            rem = &rem - &(&m * rhs);
            q = &q + &m;
        }
        Some(q)
    }

    /// Equality up to multiplication by `±u^k`.
    pub fn associate_eq(&self, other: &Self) -> bool {
        match (self.terms().next(), other.terms().next()) {
            (None, None) => true,
            (Some((e1, c1)), Some((e2, c2))) => {
                let s = other.shift(e1 - e2);
                if c1 == c2 {
                    *self == s
                } else if c1 == -c2 {
                    *self == -s
                } else {
                    false
                }
            }
            _ => false,
        }
    }

    /// Shift so the exponents are centered at zero and make the sign positive
    /// at `u = 1` (or on the top coefficient if that value vanishes).
    pub fn normalize_units(&self) -> Self {
        let Ok(dg) = self.degrees() else {
            return Self::zero();
        };
        let s = self.shift(-(dg.mindeg + dg.maxdeg) / 2);
        let v = s.eval_one();
        let neg = if v.is_zero() {
            dg.leading.is_negative()
        } else {
            v.is_negative()
        };
        if neg {
            -s
        } else {
            s
        }
    }

    pub fn to_i64_terms(&self) -> Vec<(i64, i64)> {
        self.terms()
            .map(|(e, c)| (e, c.to_i64().expect("coefficient fits i64")))
            .collect()
    }

    /// Convert between coefficient types; `None` on overflow.
    pub fn convert<D: Coeff>(&self) -> Option<Laurent<D>> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            terms.insert(e, D::from(c)?);
        }
        Some(Laurent { terms })
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -self.clone()
    }
}

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

impl<C: Coeff> Add for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: Self) -> Laurent<C> {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl<C: Coeff> Sub for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: Self) -> Laurent<C> {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl<C: Coeff> Mul for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: Self) -> Laurent<C> {
        let mut r = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

macro_rules! by_value_ops {
    ($t:ident) => {
        impl<C: Coeff> Add for $t<C> {
            type Output = $t<C>;
            fn add(self, rhs: Self) -> $t<C> {
                &self + &rhs
            }
        }
        impl<C: Coeff> Sub for $t<C> {
            type Output = $t<C>;
            fn sub(self, rhs: Self) -> $t<C> {
                &self - &rhs
            }
        }
        impl<C: Coeff> Mul for $t<C> {
            type Output = $t<C>;
            fn mul(self, rhs: Self) -> $t<C> {
                &self * &rhs
            }
        }
    };
}

by_value_ops!(Laurent);
by_value_ops!(Conway);

impl<C: Coeff> Default for Conway<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Conway<C> {
    pub fn zero() -> Self {
        Conway {
            inner: Laurent::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Conway {
            inner: Laurent::constant(c),
        }
    }

    pub fn z() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, e: u32) -> Self {
        Conway {
            inner: Laurent::monomial(c, e as i64),
        }
    }

    /// Build from `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (u32, C)>>(iter: I) -> Self {
        Conway {
            inner: Laurent::from_terms(iter.into_iter().map(|(e, c)| (e as i64, c))),
        }
    }

    /// Build from dense coefficients `c_0 + c_1 z + ...`.
    pub fn from_coeffs(cs: &[C]) -> Self {
        Self::from_terms(cs.iter().enumerate().map(|(i, &c)| (i as u32, c)))
    }

    /// The knot polynomial `1 - a_1 z^2 + a_2 z^4 - ...`.
    pub fn from_coeff_vector(a: &[C]) -> Self {
        let mut p = Self::one();
        for (i, &ai) in a.iter().enumerate() {
            let e = 2 * (i as u32 + 1);
            let c = if (i + 1) % 2 == 1 { -ai } else { ai };
            p = &p + &Self::monomial(c, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn coeff(&self, e: u32) -> C {
        self.inner.coeff(e as i64)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, C)> + '_ {
        self.inner.terms().map(|(e, c)| (e as u32, c))
    }

    pub fn degrees(&self) -> Result<Degrees<C>, PolyError> {
        self.inner.degrees()
    }

    /// `|Δ(-1)|`, i.e. `|∇(2i)|`; one of the real and imaginary parts
    /// vanishes on admissible polynomials.
    pub fn determinant(&self) -> C {
        let two = C::one() + C::one();
        let (mut re, mut im) = (C::zero(), C::zero());
        for (e, c) in self.terms() {
            let v = c * num_traits::pow(two, e as usize);
            let neg = (e / 2) % 2 == 1;
            let v = if neg { -v } else { v };
            if e % 2 == 0 {
                re = re + v;
            } else {
                im = im + v;
            }
        }
        re.abs() + im.abs()
    }

    pub fn maxdeg(&self) -> Option<u32> {
        self.inner.terms().next_back().map(|(e, _)| e as u32)
    }

    pub fn is_monic(&self) -> Result<bool, PolyError> {
        self.inner.is_monic()
    }

    /// Admissibility as the Conway polynomial of an `n`-component link.
    pub fn is_admissible(&self, n: usize) -> bool {
        if n == 0 {
            return false;
        }
        if n == 1 {
            return self.coeff(0).is_one() && self.terms().all(|(e, _)| e % 2 == 0);
        }
        let m = (n - 1) as u32;
        self.terms().all(|(e, _)| e >= m && e % 2 == m % 2)
    }

    /// `(a_1, ..., a_d)` with `a_i = (-1)^i [nabla]_{2i}`.
    pub fn coeff_vector(&self) -> Result<Vec<C>, PolyError> {
        if !self.is_admissible(1) {
            return Err(PolyError::Inadmissible(1));
        }
        let d = self.maxdeg().unwrap_or(0) / 2;
        Ok((1..=d)
            .map(|i| {
                let c = self.coeff(2 * i);
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect())
    }

    pub fn scale(&self, c: C) -> Self {
        Conway {
            inner: self.inner.scale(c),
        }
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        Conway {
            inner: self.inner.shift(k as i64),
        }
    }

    /// Divide by `z^k`; `None` if some exponent is below `k`.
    pub fn shift_down(&self, k: u32) -> Option<Self> {
        if self.terms().any(|(e, _)| e < k) {
            return None;
        }
        Some(Conway {
            inner: self.inner.shift(-(k as i64)),
        })
    }

    /// `nabla(-z)`, the effect of mirroring on the link polynomial up to sign.
    pub fn negate_var(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|(e, c)| (e, if e % 2 == 1 { -c } else { c })),
        )
    }

    /// Substitute `z = u - u^-1`.
    pub fn to_alexander(&self) -> Laurent<C> {
        let x = Laurent::from_terms([(1, C::one()), (-1, -C::one())]);
        let mut acc = Laurent::zero();
        let mut pw = Laurent::one();
        let mut k = 0;
        for (e, c) in self.terms() {
            while k < e {
                pw = &pw * &x;
                k += 1;
            }
            acc += &pw.scale(c);
        }
        acc
    }

    /// Inverse of [`Conway::to_alexander`]; rejects polynomials outside its image.
    pub fn from_alexander(delta: &Laurent<C>) -> Result<Self, PolyError> {
        let x = Laurent::from_terms([(1, C::one()), (-1, -C::one())]);
        let mut rem = delta.clone();
        let mut out = Self::zero();
        while let Some((hi, c)) = rem.last_term() {
            if hi < 0 {
                return Err(PolyError::NotRealizable);
            }
            rem -= &x.pow(hi as u32).scale(c);
            out = &out + &Self::monomial(c, hi as u32);
        }
        Ok(out)
    }

    pub fn as_laurent(&self) -> &Laurent<C> {
        &self.inner
    }

    pub fn convert<D: Coeff>(&self) -> Option<Conway<D>> {
        Some(Conway {
            inner: self.inner.convert()?,
        })
    }
}

impl<C: Coeff> Neg for Conway<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Conway { inner: -self.inner }
    }
}

impl<C: Coeff> Neg for &Conway<C> {
    type Output = Conway<C>;
    fn neg(self) -> Conway<C> {
        -self.clone()
    }
}

impl<C: Coeff> Add for &Conway<C> {
    type Output = Conway<C>;
    fn add(self, rhs: Self) -> Conway<C> {
        Conway {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<C: Coeff> Sub for &Conway<C> {
    type Output = Conway<C>;
    fn sub(self, rhs: Self) -> Conway<C> {
        Conway {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl<C: Coeff> Mul for &Conway<C> {
    type Output = Conway<C>;
    fn mul(self, rhs: Self) -> Conway<C> {
        Conway {
            inner: &self.inner * &rhs.inner,
        }
    }
}

// ---------------------------------------------------------------------------
// text form

fn write_terms<C: Coeff>(f: &mut fmt::Formatter<'_>, terms: &[(i64, C)], var: char) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, &(e, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if e == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        if e == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    Ok(())
}

impl<C: Coeff> Display for Conway<C> {
    /// Ascending powers of `z`: `1 - 2z^2 + 2z^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.inner.terms().collect();
        write_terms(f, &terms, 'z')
    }
}

impl<C: Coeff> Display for Laurent<C> {
    /// Descending powers of `t` when every `u`-exponent is even, else of `u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms().all(|(e, _)| e % 2 == 0) {
            let terms: Vec<_> = self.terms().rev().map(|(e, c)| (e / 2, c)).collect();
            write_terms(f, &terms, 't')
        } else {
            let terms: Vec<_> = self.terms().rev().collect();
            write_terms(f, &terms, 'u')
        }
    }
}

impl<C: Coeff> Debug for Conway<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conway({self})")
    }
}

impl<C: Coeff> Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

struct TermParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<Option<u128>, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse::<u128>()
            .map(Some)
            .map_err(|_| self.err("number too large"))
    }

    fn signed(&mut self) -> Result<i64, PolyError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self
            .number()?
            .ok_or_else(|| self.err("expected integer exponent"))?;
        let n = i64::try_from(n).map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    /// Exponent after `^`, returned in half-units (so `t^(1/2)` gives 1).
    fn exponent(&mut self, halves_allowed: bool) -> Result<i64, PolyError> {
        if self.eat(b'(') {
            let n = self.signed()?;
            let r = if self.eat(b'/') {
                let d = self
                    .number()?
                    .ok_or_else(|| self.err("expected denominator"))?;
                if d != 2 || !halves_allowed {
                    return Err(self.err("only halves are allowed as fractional exponents"));
                }
                n
            } else {
                2 * n
            };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(r)
        } else {
            Ok(2 * self.signed()?)
        }
    }

    /// Parse a sum of monomials. `vars` maps a variable letter to the
    /// exponent multiplier in half-units.
    fn parse<C: Coeff>(&mut self, vars: &[(u8, i64)]) -> Result<Vec<(i64, C)>, PolyError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.err(format!("unexpected '{}'", c as char))),
            };
            first = false;
            let coeff = self.number()?;
            if coeff.is_some() {
                self.eat(b'*');
            }
            let mut e2 = 0i64;
            if let Some(c) = self.peek() {
                if let Some(&(_, mult)) = vars.iter().find(|(v, _)| *v == c) {
                    self.pos += 1;
                    let ex = if self.eat(b'^') {
                        self.exponent(mult == 2)?
                    } else {
                        2
                    };
                    if mult == 1 && ex % 2 != 0 {
                        return Err(self.err("fractional exponent"));
                    }
                    e2 = ex * mult / 2;
                } else if coeff.is_none() {
                    return Err(self.err(format!("unexpected '{}'", c as char)));
                }
            } else if coeff.is_none() {
                return Err(self.err("dangling sign"));
            }
            let mag = coeff.unwrap_or(1);
            let mag = C::from(mag).ok_or_else(|| self.err("coefficient overflow"))?;
            out.push((e2, if neg { -mag } else { mag }));
        }
        Ok(out)
    }
}

impl<C: Coeff> FromStr for Conway<C> {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut p = TermParser {
            s: s.as_bytes(),
            pos: 0,
        };
        let terms = p.parse::<C>(&[(b'z', 2)])?;
        let mut out = Laurent::zero();
        for (e, c) in terms {
            if e < 0 {
                return Err(PolyError::Parse {
                    pos: 0,
                    msg: "negative power of z".into(),
                });
            }
            out.add_term(e / 2, c);
        }
        Ok(Conway { inner: out })
    }
}

impl<C: Coeff> FromStr for Laurent<C> {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut p = TermParser {
            s: s.as_bytes(),
            pos: 0,
        };
        // `t` exponents count double in u; `u` exponents count once.
        let terms = p.parse::<C>(&[(b't', 2), (b'u', 1)])?;
        Ok(Laurent::from_terms(terms))
    }
}

impl<C: Coeff> Serialize for Conway<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Conway<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Laurent<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Conway<i64>;
    type L = Laurent<i64>;

    fn z(s: &str) -> Z {
        s.parse().unwrap()
    }

    fn l(s: &str) -> L {
        s.parse().unwrap()
    }

    #[test]
    fn degrees_examples() {
        let d = L::one().degrees().unwrap();
        assert_eq!((d.mindeg, d.maxdeg, d.span, d.leading), (0, 0, 0, 1));
        let d = l("t - 1 + t^-1").degrees().unwrap();
        assert_eq!((d.mindeg, d.maxdeg, d.span, d.leading), (-2, 2, 4, 1));
        let d = z("1 - 2z^2 + 2z^4").degrees().unwrap();
        assert_eq!((d.maxdeg, d.leading), (4, 2));
        assert_eq!(L::zero().degrees(), Err(PolyError::ZeroDegree));
    }

    #[test]
    fn monic() {
        assert!(z("1 + z^2").is_monic().unwrap());
        assert!(!z("1 - 2z^2 + 2z^4").is_monic().unwrap());
        assert!(z("-z^2").is_monic().unwrap());
        assert!(Z::zero().is_monic().is_err());
    }

    #[test]
    fn admissibility() {
        assert!(z("1 + z^2").is_admissible(1));
        assert!(z("z").is_admissible(2));
        assert!(!z("1 + z").is_admissible(1));
        assert!(Z::zero().is_admissible(2));
        assert!(!Z::zero().is_admissible(1));
        assert!(!z("z").is_admissible(3));
        assert!(z("-z^2 + z^4").is_admissible(3));
    }

    #[test]
    fn substitution() {
        assert_eq!(Z::one().to_alexander(), L::one());
        assert_eq!(z("1 + z^2").to_alexander(), l("t - 1 + t^-1"));
        assert_eq!(z("z").to_alexander(), l("u - u^-1"));
        assert_eq!(Z::from_alexander(&l("t - 1 + t^-1")).unwrap(), z("1 + z^2"));
        assert_eq!(Z::from_alexander(&l("3 - t - t^-1")).unwrap(), z("1 - z^2"));
        assert_eq!(Z::from_alexander(&l("t")), Err(PolyError::NotRealizable));
    }

    #[test]
    fn coefficient_vectors() {
        assert_eq!(z("1 - 2z^2 + 2z^4").coeff_vector().unwrap(), vec![2, 2]);
        assert!(Z::one().coeff_vector().unwrap().is_empty());
        assert_eq!(z("1 + z^2 - z^4").coeff_vector().unwrap(), vec![-1, -1]);
        assert_eq!(Z::from_coeff_vector(&[2, 2]), z("1 - 2z^2 + 2z^4"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["1 - 2z^2 + 2z^4", "0", "z", "-z^3 + 4z^5", "-1"] {
            assert_eq!(z(s).to_string(), s);
        }
        for s in ["t - 1 + t^-1", "u - u^-1", "-2t^3 + 5", "0"] {
            assert_eq!(l(s).to_string(), s);
        }
        assert_eq!(l("t^(1/2) - t^(-1/2)"), l("u - u^-1"));
        assert_eq!(z("2*z^2+1"), z("1 + 2z^2"));
        assert!("1 + + z".parse::<Z>().is_err());
        assert!("z^-1".parse::<Z>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = l("t - 1");
        let b = l("t^2 - 1");
        assert_eq!(b.div_exact(&a).unwrap(), l("t + 1"));
        assert!(a.div_exact(&b).is_none());
        assert!(l("2t + 1").div_exact(&l("2")).is_none());
    }

    #[test]
    fn units() {
        let a = l("t - 1 + t^-1");
        assert!(a.associate_eq(&(-a.shift(6))));
        assert!(!a.associate_eq(&l("t + 1 + t^-1")));
        assert_eq!((-a.shift(4)).normalize_units(), a);
    }
}
