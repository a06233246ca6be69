//! The base ring A = F_q[T] and its fraction field K = F_q(T).
//!
//! `PolyA` is dense, low coefficient first, with no trailing zeros; the
//! zero polynomial has an empty coefficient vector and degree `None` (the
//! -infinity sentinel).  `RatK` keeps the invariant: denominator monic,
//! numerator and denominator coprime, zero represented as 0/1.
//!
//! The valuation `v_inf` is normalized by v_inf(T) = -1, i.e. |x| = q^(-v)
//! and |T| = q.

use crate::error::{Error, Result};
use crate::field::{Gf, GfElem};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyA {
    field: Gf,
    c: Vec<GfElem>,
}

impl PolyA {
    pub fn zero(field: &Gf) -> PolyA {
        PolyA { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Gf) -> PolyA {
        PolyA::constant(field, 1)
    }

    pub fn constant(field: &Gf, a: GfElem) -> PolyA {
        PolyA { field: field.clone(), c: if a == 0 { vec![] } else { vec![a] } }
    }

    pub fn t(field: &Gf) -> PolyA {
        PolyA { field: field.clone(), c: vec![0, 1] }
    }

    /// c * T^d.
    pub fn term(field: &Gf, c: GfElem, d: usize) -> PolyA {
        if c == 0 {
            return PolyA::zero(field);
        }
        let mut v = vec![0; d + 1];
        v[d] = c;
        PolyA { field: field.clone(), c: v }
    }

    pub fn from_coeffs(field: &Gf, mut c: Vec<GfElem>) -> PolyA {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyA { field: field.clone(), c }
    }

    /// T^(q^j) - T, the j-th "bracket" that drives every recursion here.
    pub fn bracket(field: &Gf, j: u32) -> PolyA {
        let qj = (field.q() as u64).pow(j) as usize;
        let mut v = vec![0; qj + 1];
        v[qj] = 1;
        v[1] = field.neg(1);
        PolyA::from_coeffs(field, v)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.c
    }

    pub fn coeff(&self, d: usize) -> GfElem {
        self.c.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` plays the role of -infinity.
    pub fn deg(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() as i64 - 1)
        }
    }

    pub fn lead(&self) -> GfElem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, other: &PolyA) -> PolyA {
        assert_eq!(self.field, other.field, "mixed fields");
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(self.coeff(i), other.coeff(i)));
        }
        PolyA::from_coeffs(&self.field, out)
    }

    pub fn neg(&self) -> PolyA {
        let c = self.c.iter().map(|&x| self.field.neg(x)).collect();
        PolyA { field: self.field.clone(), c }
    }

    pub fn sub(&self, other: &PolyA) -> PolyA {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyA) -> PolyA {
        assert_eq!(self.field, other.field, "mixed fields");
        if self.is_zero() || other.is_zero() {
            return PolyA::zero(&self.field);
        }
        let mut out = vec![0; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        PolyA::from_coeffs(&self.field, out)
    }

    pub fn mul_scalar(&self, a: GfElem) -> PolyA {
        let c = self.c.iter().map(|&x| self.field.mul(x, a)).collect();
        PolyA::from_coeffs(&self.field, c)
    }

    /// Euclidean division; panics on zero divisor.
    pub fn divrem(&self, d: &PolyA) -> (PolyA, PolyA) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.c.len() < d.c.len() {
            return (PolyA::zero(f), self.clone());
        }
        let dd = d.c.len() - 1;
        let dl_inv = f.inv(d.lead());
        let mut rem = self.c.clone();
        let mut quo = vec![0; self.c.len() - dd];
        for k in (0..=self.c.len() - 1 - dd).rev() {
            let top = rem[k + dd];
            if top != 0 {
                let c = f.mul(top, dl_inv);
                quo[k] = c;
                for i in 0..=dd {
                    rem[k + i] = f.sub(rem[k + i], f.mul(c, d.c[i]));
                }
            }
        }
        rem.truncate(dd);
        (PolyA::from_coeffs(f, quo), PolyA::from_coeffs(f, rem))
    }

    pub fn rem(&self, d: &PolyA) -> PolyA {
        self.divrem(d).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &PolyA) -> PolyA {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let s = self.field.inv(a.lead());
            a.mul_scalar(s)
        }
    }

    pub fn pow(&self, n: u64) -> PolyA {
        let mut acc = PolyA::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// x -> x^t for t a power of the characteristic: coefficientwise
    /// Frobenius plus exponent dilation.  Cheaper than `pow` and used for
    /// the many q-power twists in the expansion recursions.
    pub fn frobenius(&self, t: u64) -> PolyA {
        debug_assert!(t >= 1 && t % self.field.p() as u64 == 0 || t == 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0; (self.c.len() - 1) * t as usize + 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x != 0 {
                out[i * t as usize] = self.field.pow(x, t);
            }
        }
        PolyA::from_coeffs(&self.field, out)
    }

    pub fn eval(&self, x: GfElem) -> GfElem {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = self.field.add(self.field.mul(acc, x), c);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        let d = match self.deg() {
            None | Some(0) => return false,
            Some(d) => d as u32,
        };
        for dd in 1..=d / 2 {
            for g in monic_polys(&self.field, dd) {
                if self.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical text form, e.g. `T^3+2*T+1`; element codes are printed as
    /// integers.
    pub fn parse(field: &Gf, s: &str) -> Result<PolyA> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = PolyA::zero(field);
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let end = rest
                .char_indices()
                .find(|&(i, ch)| i > 0 && (ch == '+' || ch == '-'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (tok, tail) = rest.split_at(end);
            let term = Self::parse_term(field, tok.trim())?;
            out = if sign >= 0 { out.add(&term) } else { out.sub(&term) };
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('+') { 1 } else { -1 };
            rest = &tail[1..];
        }
        Ok(out)
    }

    fn parse_term(field: &Gf, tok: &str) -> Result<PolyA> {
        let bad = || Error::Parse(format!("bad term `{tok}`"));
        if tok.is_empty() {
            return Err(bad());
        }
        let (cstr, tstr) = match tok.find('T') {
            None => (tok, None),
            Some(0) => ("1", Some(&tok[..])),
            Some(i) => {
                let c = tok[..i].strip_suffix('*').ok_or_else(bad)?;
                (c, Some(&tok[i..]))
            }
        };
        let c: u64 = cstr.trim().parse().map_err(|_| bad())?;
        if c >= field.q() as u64 {
            return Err(Error::Parse(format!("coefficient code {c} not in F_{}", field.q())));
        }
        let d = match tstr {
            None => 0,
            Some("T") => 1,
            Some(t) => {
                let e = t.strip_prefix("T^").ok_or_else(bad)?;
                e.trim().parse::<usize>().map_err(|_| bad())?
            }
        };
        Ok(PolyA::term(field, c as GfElem, d))
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.c.len()).rev() {
            let c = self.c[d];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, d) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "T^{d}")?,
                (_, 1) => write!(f, "{c}*T")?,
                (_, _) => write!(f, "{c}*T^{d}")?,
            }
        }
        Ok(())
    }
}

/// All monic polynomials of degree exactly d, in lexicographic order of
/// their coefficient codes (leading coefficient compared first).
pub fn monic_polys(field: &Gf, d: u32) -> Vec<PolyA> {
    let q = field.q() as u64;
    let n = q.pow(d);
    let mut out = Vec::with_capacity(n as usize);
    for code in 0..n {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut rest = code;
        for _ in 0..d {
            c.push((rest % q) as GfElem);
            rest /= q;
        }
        c.push(1);
        out.push(PolyA { field: field.clone(), c });
    }
    out
}

/// Monic irreducibles of degree exactly d, in the same order.
pub fn monic_irreducibles(field: &Gf, d: u32) -> Vec<PolyA> {
    monic_polys(field, d)
        .into_iter()
        .filter(|f| f.is_irreducible())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatK {
    num: PolyA,
    den: PolyA,
}

impl RatK {
    pub fn zero(field: &Gf) -> RatK {
        RatK { num: PolyA::zero(field), den: PolyA::one(field) }
    }

    pub fn one(field: &Gf) -> RatK {
        RatK { num: PolyA::one(field), den: PolyA::one(field) }
    }

    pub fn from_poly(p: PolyA) -> RatK {
        let den = PolyA::one(p.field());
        RatK { num: p, den }
    }

    pub fn from_int(field: &Gf, n: i64) -> RatK {
        RatK::from_poly(PolyA::constant(field, field.from_int(n)))
    }

    pub fn new(num: PolyA, den: PolyA) -> Result<RatK> {
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolyA, den: PolyA) -> RatK {
        let field = num.field().clone();
        if num.is_zero() {
            return RatK::zero(&field);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.deg() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let s = field.inv(den.lead());
        if s != 1 {
            num = num.mul_scalar(s);
            den = den.mul_scalar(s);
        }
        RatK { num, den }
    }

    pub fn field(&self) -> &Gf {
        self.num.field()
    }
    pub fn num(&self) -> &PolyA {
        &self.num
    }
    pub fn den(&self) -> &PolyA {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.deg() == Some(0) && self.num.lead() == 1 && self.den.deg() == Some(0)
    }

    /// True for elements of A.
    pub fn is_integral(&self) -> bool {
        self.den.deg() == Some(0)
    }

    pub fn add(&self, other: &RatK) -> RatK {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(num, den)
    }

    pub fn neg(&self) -> RatK {
        RatK { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatK) -> RatK {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatK) -> RatK {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<RatK> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatK) -> Result<RatK> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<RatK> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = RatK::one(self.field());
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn frobenius(&self, t: u64) -> RatK {
        RatK { num: self.num.frobenius(t), den: self.den.frobenius(t) }
    }

    /// v_inf = deg(den) - deg(num); `None` for zero (v = +infinity).
    pub fn v_inf(&self) -> Option<i64> {
        Some(self.den.deg().unwrap() - self.num.deg()?)
    }

    pub fn parse(field: &Gf, s: &str) -> Result<RatK> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            // (num)/(den)
            let close = rest.find(')').ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))?;
            let num = PolyA::parse(field, &rest[..close])?;
            let tail = rest[close + 1..].trim();
            let tail = tail
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))?
                .trim();
            let den_s = tail
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))?;
            let den = PolyA::parse(field, den_s)?;
            RatK::new(num, den)
        } else {
            Ok(RatK::from_poly(PolyA::parse(field, s)?))
        }
    }
}

impl fmt::Display for RatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
