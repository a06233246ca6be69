//! The graded coefficient ring of t-expansions.
//!
//! For rank r = s + 1, expansion coefficients live in
//! R_s = K[g1, ..., g_{s-1}, h, h^{-1}] with K = F_q(T): the boundary
//! coefficient forms g_i of weight q^i - 1 and the invertible cusp form
//! h of weight (q^s - 1)/(q - 1).  The boundary discriminant is not a
//! free generator; it is always rewritten as (-1)^(s-1) h^(q-1).
//!
//! Elements are sparse sums of monomials with rational-function
//! coefficients.  The monomial order (exponent vectors, lexicographic,
//! then the h exponent) fixes a canonical term order used for display,
//! parsing, and serialization.

use crate::error::{Error, Result};
use crate::field::{Gf, GfExt};
use crate::laurent::InfLaurent;
use crate::poly::RatK;
use std::collections::BTreeMap;
use std::fmt;

/// g exponents (length s - 1, index i-1 for g_i) and the h exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub g: Vec<u32>,
    pub h: i64,
}

impl Mono {
    pub fn unit(s: u32) -> Mono {
        Mono { g: vec![0; s.saturating_sub(1) as usize], h: 0 }
    }

    /// Sum of the generator weights, g_i carrying q^i - 1 and h carrying
    /// 1 + q + ... + q^(s-1).
    pub fn weight(&self, q: i64, s: u32) -> i64 {
        let mut w = 0i64;
        let mut qi = 1i64;
        for (i, &a) in self.g.iter().enumerate() {
            let _ = i;
            qi *= q;
            w += a as i64 * (qi - 1);
        }
        let mut hw = 0i64;
        let mut t = 1i64;
        for _ in 0..s {
            hw += t;
            t *= q;
        }
        w + self.h * hw
    }

    fn mul(&self, other: &Mono) -> Mono {
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Mono { g, h: self.h + other.h }
    }

    fn dilate(&self, t: u64) -> Mono {
        let g = self
            .g
            .iter()
            .map(|&a| a.checked_mul(t as u32).expect("exponent overflow"))
            .collect();
        Mono { g, h: self.h.checked_mul(t as i64).expect("exponent overflow") }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElem {
    field: Gf,
    s: u32,
    terms: BTreeMap<Mono, RatK>,
}

impl GradedElem {
    pub fn zero(field: &Gf, s: u32) -> GradedElem {
        assert!(s >= 1, "boundary rank must be at least 1");
        GradedElem { field: field.clone(), s, terms: BTreeMap::new() }
    }

    pub fn from_ratk(field: &Gf, s: u32, c: RatK) -> GradedElem {
        let mut e = Self::zero(field, s);
        if !c.is_zero() {
            e.terms.insert(Mono::unit(s), c);
        }
        e
    }

    pub fn one(field: &Gf, s: u32) -> GradedElem {
        Self::from_ratk(field, s, RatK::one(field))
    }

    pub fn from_int(field: &Gf, s: u32, n: i64) -> GradedElem {
        Self::from_ratk(field, s, RatK::from_int(field, n))
    }

    pub fn term(field: &Gf, s: u32, m: Mono, c: RatK) -> GradedElem {
        assert_eq!(m.g.len() as u32 + 1, s, "monomial arity does not match rank");
        let mut e = Self::zero(field, s);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// The coefficient form g_i, 1 <= i <= s - 1.
    pub fn gen_g(field: &Gf, s: u32, i: u32) -> Result<GradedElem> {
        if i < 1 || i >= s {
            return Err(Error::IndexOutOfRange(format!(
                "g_{i} does not exist at boundary rank {s}"
            )));
        }
        let mut m = Mono::unit(s);
        m.g[(i - 1) as usize] = 1;
        Ok(Self::term(field, s, m, RatK::one(field)))
    }

    pub fn gen_h(field: &Gf, s: u32) -> GradedElem {
        let mut m = Mono::unit(s);
        m.h = 1;
        Self::term(field, s, m, RatK::one(field))
    }

    /// The boundary discriminant (-1)^(s-1) h^(q-1), of weight q^s - 1.
    pub fn boundary_delta(field: &Gf, s: u32) -> GradedElem {
        Self::boundary_delta_pow(field, s, 1)
    }

    /// ((-1)^(s-1) h^(q-1))^k for any integer k; stays a unit.
    pub fn boundary_delta_pow(field: &Gf, s: u32, k: i64) -> GradedElem {
        let mut m = Mono::unit(s);
        m.h = (field.q() as i64 - 1) * k;
        let sign = if (s as i64 - 1) * k % 2 == 0 { 1 } else { -1 };
        Self::term(field, s, m, RatK::from_int(field, sign))
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::unit(self.s))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatK)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> RatK {
        self.terms.get(m).cloned().unwrap_or_else(|| RatK::zero(&self.field))
    }

    /// The common weight of all terms; None for zero, an error if mixed.
    pub fn weight(&self) -> Result<Option<i64>> {
        let q = self.field.q() as i64;
        let mut w = None;
        for m in self.terms.keys() {
            let mw = m.weight(q, self.s);
            match w {
                None => w = Some(mw),
                Some(prev) if prev != mw => {
                    return Err(Error::WeightMismatch(prev, mw));
                }
                _ => {}
            }
        }
        Ok(w)
    }

    fn compatible(&self, other: &GradedElem) {
        assert_eq!(self.field, other.field, "mixed base fields");
        assert_eq!(self.s, other.s, "mixed boundary ranks");
    }

    pub fn add(&self, other: &GradedElem) -> GradedElem {
        self.compatible(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(acc) => {
                    let sum = acc.add(c);
                    if sum.is_zero() {
                        terms.remove(m);
                    } else {
                        *acc = sum;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        GradedElem { field: self.field.clone(), s: self.s, terms }
    }

    pub fn neg(&self) -> GradedElem {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        GradedElem { field: self.field.clone(), s: self.s, terms }
    }

    pub fn sub(&self, other: &GradedElem) -> GradedElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GradedElem) -> GradedElem {
        self.compatible(other);
        let mut terms: BTreeMap<Mono, RatK> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match terms.get_mut(&m) {
                    Some(acc) => {
                        let sum = acc.add(&c);
                        if sum.is_zero() {
                            terms.remove(&m);
                        } else {
                            *acc = sum;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            terms.insert(m, c);
                        }
                    }
                }
            }
        }
        GradedElem { field: self.field.clone(), s: self.s, terms }
    }

    pub fn mul_scalar(&self, c: &RatK) -> GradedElem {
        if c.is_zero() {
            return Self::zero(&self.field, self.s);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect();
        GradedElem { field: self.field.clone(), s: self.s, terms }
    }

    pub fn mul_int(&self, n: i64) -> GradedElem {
        self.mul_scalar(&RatK::from_int(&self.field, n))
    }

    pub fn pow(&self, n: u64) -> GradedElem {
        let mut acc = Self::one(&self.field, self.s);
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

    /// x -> x^t for t a power of the characteristic: Frobenius on the
    /// coefficients, dilation of the exponents.
    pub fn frobenius(&self, t: u64) -> GradedElem {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.dilate(t), c.frobenius(t)))
            .collect();
        GradedElem { field: self.field.clone(), s: self.s, terms }
    }

    /// Rescaling the underlying lattice by c multiplies every term of
    /// weight w by c^w.
    pub fn homothety_scale(&self, c: &RatK) -> Result<GradedElem> {
        let q = self.field.q() as i64;
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let scaled = x.mul(&c.pow(m.weight(q, self.s))?);
            if !scaled.is_zero() {
                terms.insert(m.clone(), scaled);
            }
        }
        Ok(GradedElem { field: self.field.clone(), s: self.s, terms })
    }

    /// Units are the single terms c * h^b with no g factors.
    pub fn inv(&self) -> Result<GradedElem> {
        if self.terms.len() != 1 {
            return Err(Error::NonUnitConstantTerm);
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.g.iter().any(|&a| a != 0) {
            return Err(Error::NonUnitConstantTerm);
        }
        let mi = Mono { g: m.g.clone(), h: -m.h };
        Ok(Self::term(&self.field, self.s, mi, c.inv()?))
    }

    /// Evaluate at numeric generator values (g_1, ..., g_{s-1}, h) in a
    /// Laurent field at the given working precision.
    pub fn numeric_eval(
        &self,
        ext: &GfExt,
        g_vals: &[InfLaurent],
        h_val: &InfLaurent,
        prec: i64,
    ) -> Result<InfLaurent> {
        if g_vals.len() as u32 + 1 != self.s {
            return Err(Error::IndexOutOfRange(format!(
                "expected {} generator values, got {}",
                self.s - 1,
                g_vals.len()
            )));
        }
        let mut acc = InfLaurent::zero(ext).truncate(prec);
        for (m, c) in &self.terms {
            let mut v = InfLaurent::from_ratk(ext, c, prec)?;
            for (i, &a) in m.g.iter().enumerate() {
                if a > 0 {
                    v = v.mul(&g_vals[i].truncate(prec).pow(a as i64)?);
                }
            }
            if m.h != 0 {
                v = v.mul(&h_val.truncate(prec).pow(m.h)?);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Evaluate using a value for the boundary discriminant instead of h.
    /// Requires every h exponent to be divisible by q - 1; rewrites
    /// h^(b) = ((-1)^(s-1) delta)^(b/(q-1)).
    pub fn numeric_eval_delta(
        &self,
        ext: &GfExt,
        g_vals: &[InfLaurent],
        delta_val: &InfLaurent,
        prec: i64,
    ) -> Result<InfLaurent> {
        if g_vals.len() as u32 + 1 != self.s {
            return Err(Error::IndexOutOfRange(format!(
                "expected {} generator values, got {}",
                self.s - 1,
                g_vals.len()
            )));
        }
        let qm1 = self.field.q() as i64 - 1;
        let mut acc = InfLaurent::zero(ext).truncate(prec);
        for (m, c) in &self.terms {
            if m.h % qm1 != 0 {
                return Err(Error::IndexOutOfRange(format!(
                    "h exponent {} not divisible by q-1; no discriminant rewrite",
                    m.h
                )));
            }
            let k = m.h / qm1;
            let mut v = InfLaurent::from_ratk(ext, c, prec)?;
            if (self.s as i64 - 1) * k % 2 != 0 {
                v = v.neg();
            }
            for (i, &a) in m.g.iter().enumerate() {
                if a > 0 {
                    v = v.mul(&g_vals[i].truncate(prec).pow(a as i64)?);
                }
            }
            if k != 0 {
                v = v.mul(&delta_val.truncate(prec).pow(k)?);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    pub fn parse(field: &Gf, s: u32, input: &str) -> Result<GradedElem> {
        let input = input.trim();
        if input == "0" {
            return Ok(Self::zero(field, s));
        }
        let mut acc = Self::zero(field, s);
        for part in split_top_level(input) {
            let part = part.trim();
            if !part.starts_with('(') {
                return Err(Error::Parse(format!("term must start with a coefficient: {part}")));
            }
            let close = matching_paren(part)?;
            let coeff = RatK::parse(field, &part[1..close])?;
            let mut m = Mono::unit(s);
            let rest = part[close + 1..].trim();
            if !rest.is_empty() {
                for factor in rest.trim_start_matches('*').split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad exponent in {factor}")))?,
                        ),
                        None => (factor, 1),
                    };
                    if name == "h" {
                        m.h += exp;
                    } else if let Some(i) = name.strip_prefix('g') {
                        let i: u32 = i
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad generator {name}")))?;
                        if i < 1 || i >= s || exp < 0 {
                            return Err(Error::Parse(format!("bad factor {factor}")));
                        }
                        m.g[(i - 1) as usize] += exp as u32;
                    } else {
                        return Err(Error::Parse(format!("unknown generator {name}")));
                    }
                }
            }
            acc = acc.add(&Self::term(field, s, m, coeff));
        }
        Ok(acc)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = vec![];
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn matching_paren(s: &str) -> Result<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("unbalanced parentheses in {s}")))
}

/// The coefficient is always parenthesized so terms survive reparsing.
impl fmt::Display for GradedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &a) in m.g.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*g{}", i + 1)?,
                    _ => write!(f, "*g{}^{}", i + 1, a)?,
                }
            }
            match m.h {
                0 => {}
                1 => write!(f, "*h")?,
                b => write!(f, "*h^{b}")?,
            }
        }
        Ok(())
    }
}
