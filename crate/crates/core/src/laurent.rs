//! Truncated Laurent series at the infinite place.
//!
//! An `InfLaurent` models an element of F_{q^m}((1/T)) by its digits in
//! descending powers of T.  We index digits by the valuation v (so the
//! digit at v is the coefficient of T^(-v); v_inf(T) = -1) and track an
//! *absolute* precision: all digits at v < prec are known exactly, digits
//! at v >= prec are unknown.  A value may be "zero to precision P" (no
//! known nonzero digit, v >= P guaranteed); exact values, including exact
//! zero, carry `prec == PREC_EXACT`.
//!
//! Precision propagation is the usual ultrametric bookkeeping:
//! add takes the min, mul of units takes min(prec_a + lead_b,
//! prec_b + lead_a), inversion of a value with leading valuation l costs
//! 2l.  Every returned value is certified: its stated digits are exact
//! digits of the modeled element.

use crate::error::{Error, Result};
use crate::field::{GfExt, GfExtElem};
use crate::poly::{PolyA, RatK};
use std::fmt;

pub const PREC_EXACT: i64 = i64::MAX;

/// Precision shift: PREC_EXACT is infinite and absorbs.
fn sat(a: i64, b: i64) -> i64 {
    if a == PREC_EXACT || b == PREC_EXACT {
        PREC_EXACT
    } else {
        a.saturating_add(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfLaurent {
    field: GfExt,
    /// Valuation of the first stored digit; meaningless when `c` is empty.
    lead: i64,
    /// Digits c[i] at valuation lead + i; c[0] != 0 and the last entry != 0.
    c: Vec<GfExtElem>,
    prec: i64,
}

impl InfLaurent {
    fn normalized(field: GfExt, mut lead: i64, mut c: Vec<GfExtElem>, prec: i64) -> InfLaurent {
        // drop unknown digits
        if prec != PREC_EXACT {
            let keep = sat(prec, -lead).max(0).min(c.len() as i64) as usize;
            c.truncate(keep);
        }
        while c.first() == Some(&0) {
            c.remove(0);
            lead += 1;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        if c.is_empty() {
            lead = 0;
        }
        InfLaurent { field, lead, c, prec }
    }

    /// Exact zero.
    pub fn zero(field: &GfExt) -> InfLaurent {
        InfLaurent { field: field.clone(), lead: 0, c: vec![], prec: PREC_EXACT }
    }

    /// Zero to precision: v >= prec, digits unknown beyond that.
    pub fn zero_to_prec(field: &GfExt, prec: i64) -> InfLaurent {
        InfLaurent { field: field.clone(), lead: 0, c: vec![], prec }
    }

    pub fn one(field: &GfExt) -> InfLaurent {
        InfLaurent { field: field.clone(), lead: 0, c: vec![1], prec: PREC_EXACT }
    }

    /// A single exact digit a at valuation v (i.e. a * T^(-v)).
    pub fn monomial(field: &GfExt, a: GfExtElem, v: i64) -> InfLaurent {
        if a == 0 {
            return InfLaurent::zero(field);
        }
        InfLaurent { field: field.clone(), lead: v, c: vec![a], prec: PREC_EXACT }
    }

    /// Exact image of a polynomial in T (coefficients lifted from F_q).
    pub fn from_poly(field: &GfExt, p: &PolyA) -> InfLaurent {
        let d = match p.deg() {
            None => return InfLaurent::zero(field),
            Some(d) => d,
        };
        let c: Vec<GfExtElem> =
            (0..=d).rev().map(|i| field.lift(p.coeff(i as usize))).collect();
        Self::normalized(field.clone(), -d, c, PREC_EXACT)
    }

    /// num/den evaluated to the given absolute precision.
    pub fn from_ratk(field: &GfExt, x: &RatK, prec: i64) -> Result<InfLaurent> {
        let num = Self::from_poly(field, x.num());
        if x.is_integral() {
            return Ok(num.truncate(prec));
        }
        let den = Self::from_poly(field, x.den());
        // give the division enough slack that the result is good to `prec`
        let work = sat(prec, sat(den.lead.abs() * 2, num.lead.abs() + 8));
        Ok(num.truncate(work).mul(&den.truncate(work).inv()?).truncate(prec))
    }

    pub fn field(&self) -> &GfExt {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Valuation; `None` when the value is zero to its precision.
    pub fn v(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec == PREC_EXACT
    }

    /// Digit at valuation v, if certified.
    pub fn digit(&self, v: i64) -> Result<GfExtElem> {
        if v >= self.prec {
            return Err(Error::PrecisionExhausted(format!(
                "digit at v={v} beyond precision {}",
                self.prec
            )));
        }
        if self.c.is_empty() || v < self.lead || v - self.lead >= self.c.len() as i64 {
            return Ok(0);
        }
        Ok(self.c[(v - self.lead) as usize])
    }

    pub fn truncate(&self, prec: i64) -> InfLaurent {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalized(self.field.clone(), self.lead, self.c.clone(), prec)
    }

    pub fn add(&self, other: &InfLaurent) -> InfLaurent {
        assert_eq!(self.field, other.field, "mixed residue fields");
        let prec = self.prec.min(other.prec);
        if self.c.is_empty() {
            return other.truncate(prec);
        }
        if other.c.is_empty() {
            return self.truncate(prec);
        }
        let lead = self.lead.min(other.lead);
        let hi = (self.lead + self.c.len() as i64).max(other.lead + other.c.len() as i64);
        let mut c = vec![0; (hi - lead) as usize];
        for (i, &x) in self.c.iter().enumerate() {
            c[(self.lead - lead) as usize + i] = x;
        }
        for (i, &y) in other.c.iter().enumerate() {
            let k = (other.lead - lead) as usize + i;
            c[k] = self.field.add(c[k], y);
        }
        Self::normalized(self.field.clone(), lead, c, prec)
    }

    pub fn neg(&self) -> InfLaurent {
        let c = self.c.iter().map(|&x| self.field.neg(x)).collect();
        InfLaurent { field: self.field.clone(), lead: self.lead, c, prec: self.prec }
    }

    pub fn sub(&self, other: &InfLaurent) -> InfLaurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &InfLaurent) -> InfLaurent {
        assert_eq!(self.field, other.field, "mixed residue fields");
        let bound = |x: &InfLaurent| if x.c.is_empty() { x.prec } else { x.lead };
        if self.c.is_empty() || other.c.is_empty() {
            let p = sat(bound(self), bound(other));
            return InfLaurent::zero_to_prec(&self.field, p);
        }
        let prec = sat(self.prec, other.lead).min(sat(other.prec, self.lead));
        let lead = self.lead + other.lead;
        let len = if prec == PREC_EXACT {
            self.c.len() + other.c.len() - 1
        } else {
            ((prec - lead).max(0) as usize).min(self.c.len() + other.c.len() - 1)
        };
        let mut c = vec![0; len];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] = self.field.add(c[i + j], self.field.mul(x, y));
            }
        }
        Self::normalized(self.field.clone(), lead, c, prec)
    }

    /// Multiplication by the exact monomial T^k.
    pub fn shift_t(&self, k: i64) -> InfLaurent {
        let prec = if self.prec == PREC_EXACT { PREC_EXACT } else { self.prec - k };
        InfLaurent { field: self.field.clone(), lead: self.lead - k, c: self.c.clone(), prec }
    }

    /// Inverse.  Requires a certified nonzero leading digit and finite
    /// precision (an exact value must be truncated first, since its inverse
    /// has infinitely many digits).
    pub fn inv(&self) -> Result<InfLaurent> {
        if self.c.is_empty() {
            return Err(Error::DivisionByZeroToPrecision);
        }
        if self.prec == PREC_EXACT {
            return Err(Error::PrecisionExhausted(
                "inverse of an exact value: truncate to a working precision first".into(),
            ));
        }
        // digits of the inverse of the unit part, by long division
        let rel = (self.prec - self.lead) as usize;
        let f = &self.field;
        let c0inv = f.inv(self.c[0]);
        let mut d = vec![0; rel];
        d[0] = c0inv;
        for k in 1..rel {
            let mut acc = 0;
            for j in 1..=k.min(self.c.len() - 1) {
                acc = f.add(acc, f.mul(self.c[j], d[k - j]));
            }
            d[k] = f.neg(f.mul(c0inv, acc));
        }
        Ok(Self::normalized(f.clone(), -self.lead, d, self.prec - 2 * self.lead))
    }

    pub fn div(&self, other: &InfLaurent) -> Result<InfLaurent> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<InfLaurent> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = InfLaurent::one(&self.field).truncate(if self.prec == PREC_EXACT {
            PREC_EXACT
        } else {
            sat(self.prec, -self.lead)
        });
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

    /// x -> x^t for t a power of the characteristic: digitwise Frobenius
    /// with valuation dilation, exact in char p.
    pub fn frobenius(&self, t: u64) -> InfLaurent {
        let prec = self.prec.saturating_mul(t as i64);
        if self.c.is_empty() {
            return InfLaurent { field: self.field.clone(), lead: 0, c: vec![], prec };
        }
        let mut c = vec![0; (self.c.len() - 1) * t as usize + 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x != 0 {
                c[i * t as usize] = self.field.pow(x, t);
            }
        }
        Self::normalized(self.field.clone(), self.lead * t as i64, c, prec)
    }
}

impl fmt::Display for InfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let e = -(self.lead + i as i64);
            match (x, e) {
                (_, 0) => write!(f, "{x}")?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "T^{e}")?,
                (_, 1) => write!(f, "{x}*T")?,
                (_, _) => write!(f, "{x}*T^{e}")?,
            }
        }
        if self.prec == PREC_EXACT {
            if first {
                write!(f, "0")?;
            }
        } else {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "O(T^{})", -self.prec)?;
        }
        Ok(())
    }
}
