//! Truncated t-expansions of modular forms at the infinite boundary.
//!
//! A weight-k form of rank r = s + 1 restricts to a series
//! f = sum(a_n t^n) in the uniformizer t, with a_n in the boundary ring
//! of rank s and homogeneous of weight k - n.  We store the coefficients
//! 0 <= n <= n_max exactly and track the nominal weight and the type
//! (the class of supported n mod q - 1).
//!
//! Truncation bookkeeping mirrors certified Laurent numerics: a product
//! is good to min(Na + ord_b, Nb + ord_a), a p-th power to p(N + 1) - 1,
//! and substituting a series of t-order d >= 1 into a truncation at N is
//! good to (N + 1) d - 1.

use crate::error::{Error, Result};
use crate::field::Gf;
use crate::goss::GossTable;
use crate::graded::GradedElem;
use crate::poly::{PolyA, RatK};
use crate::skew::{phi_top_coeff, s_poly_terms};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TExp {
    field: Gf,
    s: u32,
    weight: i64,
    /// Type: supported exponents are congruent to this mod q - 1.
    typ: i64,
    n_max: i64,
    c: BTreeMap<i64, GradedElem>,
}

impl TExp {
    pub fn zero(field: &Gf, s: u32, weight: i64, typ: i64, n_max: i64) -> TExp {
        let qm1 = (field.q() as i64 - 1).max(1);
        TExp {
            field: field.clone(),
            s,
            weight,
            typ: typ.rem_euclid(qm1),
            n_max,
            c: BTreeMap::new(),
        }
    }

    pub fn one(field: &Gf, s: u32, n_max: i64) -> TExp {
        let mut f = Self::zero(field, s, 0, 0, n_max);
        f.c.insert(0, GradedElem::one(field, s));
        f
    }

    /// The uniformizer itself: weight 1, type 1.
    pub fn t(field: &Gf, s: u32, n_max: i64) -> TExp {
        let mut f = Self::zero(field, s, 1, 1, n_max);
        if n_max >= 1 {
            f.c.insert(1, GradedElem::one(field, s));
        }
        f
    }

    pub fn from_parts(
        field: &Gf,
        s: u32,
        weight: i64,
        typ: i64,
        n_max: i64,
        coeffs: impl IntoIterator<Item = (i64, GradedElem)>,
    ) -> Result<TExp> {
        let mut f = Self::zero(field, s, weight, typ, n_max);
        for (n, x) in coeffs {
            if n < 0 || n > n_max {
                return Err(Error::IndexOutOfRange(format!(
                    "coefficient index {n} outside 0..={n_max}"
                )));
            }
            if !x.is_zero() {
                f.c.insert(n, x);
            }
        }
        Ok(f)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn typ(&self) -> i64 {
        self.typ
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &GradedElem)> {
        self.c.iter().map(|(&n, x)| (n, x))
    }

    pub fn coeff(&self, n: i64) -> Result<GradedElem> {
        if n > self.n_max {
            return Err(Error::TruncationUnderflow { have: self.n_max, need: n });
        }
        Ok(self
            .c
            .get(&n)
            .cloned()
            .unwrap_or_else(|| GradedElem::zero(&self.field, self.s)))
    }

    /// Least supported exponent, None when zero to the truncation order.
    pub fn order(&self) -> Option<i64> {
        self.c.keys().next().copied()
    }

    /// First index that could be nonzero: the t-order, or just past the
    /// truncation for a series with no visible term.
    fn low_bound(&self) -> i64 {
        self.order().unwrap_or(self.n_max + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn truncate(&self, n_max: i64) -> TExp {
        let mut f = self.clone();
        if n_max < f.n_max {
            f.n_max = n_max;
            f.c = f.c.into_iter().filter(|&(n, _)| n <= n_max).collect();
        }
        f
    }

    /// Checks that the support matches the type and every coefficient is
    /// homogeneous of weight `weight - n`.
    pub fn validate(&self) -> Result<()> {
        let qm1 = (self.field.q() as i64 - 1).max(1);
        for (&n, x) in &self.c {
            if n.rem_euclid(qm1) != self.typ {
                return Err(Error::IndexOutOfRange(format!(
                    "exponent {n} incompatible with type {} mod {qm1}",
                    self.typ
                )));
            }
            match x.weight()? {
                Some(w) if w != self.weight - n => {
                    return Err(Error::WeightMismatch(self.weight - n, w));
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn compatible(&self, other: &TExp) {
        assert_eq!(self.field, other.field, "mixed base fields");
        assert_eq!(self.s, other.s, "mixed boundary ranks");
    }

    pub fn add(&self, other: &TExp) -> TExp {
        self.compatible(other);
        assert_eq!(self.weight, other.weight, "adding forms of different weight");
        assert_eq!(self.typ, other.typ, "adding forms of different type");
        let n_max = self.n_max.min(other.n_max);
        let mut f = Self::zero(&self.field, self.s, self.weight, self.typ, n_max);
        for (&n, x) in self.c.iter().chain(other.c.iter()) {
            if n > n_max {
                continue;
            }
            let acc = match f.c.get(&n) {
                Some(y) => y.add(x),
                None => x.clone(),
            };
            if acc.is_zero() {
                f.c.remove(&n);
            } else {
                f.c.insert(n, acc);
            }
        }
        f
    }

    pub fn neg(&self) -> TExp {
        let mut f = self.clone();
        f.c = f.c.into_iter().map(|(n, x)| (n, x.neg())).collect();
        f
    }

    pub fn sub(&self, other: &TExp) -> TExp {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TExp) -> TExp {
        self.compatible(other);
        let n_max = (self.n_max + other.low_bound()).min(other.n_max + self.low_bound());
        let qm1 = (self.field.q() as i64 - 1).max(1);
        let mut f = Self::zero(
            &self.field,
            self.s,
            self.weight + other.weight,
            (self.typ + other.typ).rem_euclid(qm1),
            n_max,
        );
        for (&na, xa) in &self.c {
            for (&nb, xb) in &other.c {
                let n = na + nb;
                if n > n_max {
                    break;
                }
                let prod = xa.mul(xb);
                let acc = match f.c.get(&n) {
                    Some(y) => y.add(&prod),
                    None => prod,
                };
                if acc.is_zero() {
                    f.c.remove(&n);
                } else {
                    f.c.insert(n, acc);
                }
            }
        }
        f
    }

    /// Scale by a graded element (weight shifts by its weight).
    pub fn mul_graded(&self, x: &GradedElem) -> TExp {
        let w = x.weight().expect("scale by a homogeneous element").unwrap_or(0);
        let mut f = self.clone();
        f.weight += w;
        f.c = f
            .c
            .into_iter()
            .filter_map(|(n, y)| {
                let z = y.mul(x);
                if z.is_zero() {
                    None
                } else {
                    Some((n, z))
                }
            })
            .collect();
        f
    }

    pub fn mul_scalar(&self, c: &RatK) -> TExp {
        self.mul_graded(&GradedElem::from_ratk(&self.field, self.s, c.clone()))
    }

    pub fn mul_int(&self, n: i64) -> TExp {
        self.mul_scalar(&RatK::from_int(&self.field, n))
    }

    /// x -> x^t for t a power of the characteristic, exact beyond the
    /// naive truncation: good to t(n_max + 1) - 1.
    pub fn frobenius(&self, t: u64) -> TExp {
        let qm1 = (self.field.q() as i64 - 1).max(1);
        let mut f = Self::zero(
            &self.field,
            self.s,
            self.weight * t as i64,
            (self.typ * t as i64).rem_euclid(qm1),
            t as i64 * (self.n_max + 1) - 1,
        );
        f.c = self
            .c
            .iter()
            .map(|(&n, x)| (n * t as i64, x.frobenius(t)))
            .collect();
        f
    }

    pub fn pow(&self, e: u64) -> TExp {
        let p = self.field.p() as u64;
        // factor out the characteristic for sharper truncation
        if e > 1 && e % p == 0 {
            return self.frobenius(p).pow(e / p);
        }
        // seed with a truncation loose enough not to clip the products
        let mut acc = Self::one(&self.field, self.s, i64::MAX / 4);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Power-series inverse; the constant term must be a unit of the
    /// boundary ring.
    pub fn inv(&self) -> Result<TExp> {
        let a0 = match self.c.get(&0) {
            Some(x) => x,
            None => return Err(Error::NonUnitConstantTerm),
        };
        let a0i = a0.inv()?;
        let qm1 = (self.field.q() as i64 - 1).max(1);
        let mut f = Self::zero(
            &self.field,
            self.s,
            -self.weight,
            (-self.typ).rem_euclid(qm1),
            self.n_max,
        );
        f.c.insert(0, a0i.clone());
        for n in 1..=self.n_max {
            let mut acc = GradedElem::zero(&self.field, self.s);
            for (&j, aj) in self.c.range(1..=n) {
                if let Some(d) = f.c.get(&(n - j)) {
                    acc = acc.add(&aj.mul(d));
                }
            }
            if !acc.is_zero() {
                f.c.insert(n, a0i.mul(&acc).neg());
            }
        }
        Ok(f)
    }

    /// Rescale the lattice by c: every coefficient of weight w picks up
    /// c^w, so the whole form of weight k maps to c^(k-n) a_n at level n.
    pub fn homothety_scale(&self, c: &RatK) -> Result<TExp> {
        let mut f = self.clone();
        let mut out = BTreeMap::new();
        for (n, x) in std::mem::take(&mut f.c) {
            let y = x.homothety_scale(c)?;
            if !y.is_zero() {
                out.insert(n, y);
            }
        }
        f.c = out;
        Ok(f)
    }

    /// Substitute t -> c t: a_n picks up c^n.
    pub fn scale_t(&self, c: &RatK) -> Result<TExp> {
        let mut f = self.clone();
        let mut out = BTreeMap::new();
        for (n, x) in std::mem::take(&mut f.c) {
            let y = x.mul_scalar(&c.pow(n)?);
            if !y.is_zero() {
                out.insert(n, y);
            }
        }
        f.c = out;
        Ok(f)
    }

    /// Substitute a weight-1, type-1 series of positive t-order for t.
    /// The result is good to min over the used powers and the tail bound
    /// (N + 1) ord(x) - 1.
    pub fn substitute(&self, x: &TExp) -> Result<TExp> {
        self.compatible(x);
        assert_eq!(x.weight, 1, "substitute a weight-1 uniformizer series");
        let d = match x.order() {
            Some(d) if d >= 1 => d,
            Some(_) => return Err(Error::ZeroInput),
            None => x.n_max + 1,
        };
        let mut n_out = (self.n_max + 1).saturating_mul(d) - 1;
        // constant term passes through; powers computed incrementally
        let mut acc_nmax = n_out;
        let mut terms: Vec<(i64, GradedElem, TExp)> = vec![];
        let mut cur: Option<(i64, TExp)> = None;
        for (&n, a) in &self.c {
            if n == 0 {
                continue;
            }
            let xp = match cur.take() {
                None => x.pow(n as u64),
                Some((m, xm)) if m == n => xm,
                Some((m, xm)) => xm.mul(&x.pow((n - m) as u64)),
            };
            acc_nmax = acc_nmax.min(xp.n_max);
            terms.push((n, a.clone(), xp.clone()));
            cur = Some((n, xp));
        }
        n_out = n_out.min(acc_nmax);
        let mut f = Self::zero(&self.field, self.s, self.weight, self.typ, n_out);
        if let Some(a0) = self.c.get(&0) {
            f.c.insert(0, a0.clone());
        }
        for (_, a, xp) in terms {
            f = f.add(&xp.mul_graded(&a).truncate(n_out));
        }
        Ok(f)
    }

    /// Evaluate a Goss polynomial at this series (which must have
    /// positive t-order), walking the sparse exponents incrementally.
    pub fn goss_eval(table: &GossTable<GradedElem>, k: usize, x: &TExp) -> Result<TExp> {
        if x.order().map(|d| d < 1).unwrap_or(false) {
            return Err(Error::ZeroInput);
        }
        let mut result: Option<TExp> = None;
        let mut cur: Option<(u64, TExp)> = None;
        let ord = x.order().unwrap_or(x.n_max() + 1).max(1);
        let mut skipped = false;
        for (&e, c) in table.poly(k) {
            // x^e starts beyond the truncation: nothing more can land,
            // but the claimed precision must then stop at x's
            if (e as i128) * (ord as i128) > x.n_max() as i128 {
                skipped = true;
                break;
            }
            let xp = match cur.take() {
                None => x.pow(e),
                Some((m, xm)) if m == e => xm,
                Some((m, xm)) => xm.mul(&x.pow(e - m)),
            };
            let term = xp.mul_graded(c);
            result = Some(match result {
                Some(acc) => acc.truncate(term.n_max).add(&term.truncate(acc.n_max)),
                None => term,
            });
            cur = Some((e, xp));
        }
        match result {
            Some(f) => Ok(if skipped { f.truncate(x.n_max) } else { f }),
            None => Ok(Self::zero(&x.field, x.s, 0, 0, x.n_max)),
        }
    }
}

/// S_a(t) as a weight-0, type-0 expansion (monic a).
pub fn s_a_series(field: &Gf, s: u32, a: &PolyA, n_max: i64) -> Result<TExp> {
    let terms = s_poly_terms(field, s, a)?;
    let coeffs = terms
        .into_iter()
        .filter(|&(e, _)| (e as i64) <= n_max)
        .map(|(e, c)| (e as i64, c));
    TExp::from_parts(field, s, 0, 0, n_max, coeffs)
}

/// The uniformizer at level a: t_a = delta_a^(-1) t^(q^(sd)) / S_a(t),
/// a monic of degree d; weight 1, type 1, t-order q^(sd).
pub fn t_a_series(field: &Gf, s: u32, a: &PolyA, n_max: i64) -> Result<TExp> {
    let d = a.deg().ok_or(Error::ZeroInput)? as u32;
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let q = field.q() as u64;
    let sd = s * d;
    let lead = match q.checked_pow(sd).map(|x| x as i64) {
        Some(x) if x <= n_max => x,
        _ => return Ok(TExp::zero(field, s, 1, 1, n_max)),
    };
    let sa = s_a_series(field, s, a, n_max - lead)?;
    let dia = phi_top_coeff(field, s, d).inv()?;
    let mut f = sa.inv()?.mul_graded(&dia);
    // multiply by t^lead: shift support, fix weight/type bookkeeping
    f.c = f.c.into_iter().map(|(n, x)| (n + lead, x)).collect();
    f.n_max += lead;
    f.weight += lead;
    f.typ = (f.typ + lead).rem_euclid((field.q() as i64 - 1).max(1));
    debug_assert_eq!(f.weight, 1);
    Ok(f)
}

impl fmt::Display for TExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (&n, x) in &self.c {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match n {
                    0 => write!(f, "[{x}]")?,
                    1 => write!(f, "[{x}]*t")?,
                    _ => write!(f, "[{x}]*t^{n}")?,
                }
            }
        }
        write!(f, " + O(t^{})", self.n_max + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::exp_coeffs;

    fn f3() -> Gf {
        Gf::new(3, 1).unwrap()
    }

    #[test]
    fn uniformizer_at_t_matches_hand_expansion() {
        // rank 2: t_T = delta^-1 t^q - T delta^-2 t^(2q-1) + T^2 delta^-3 t^(3q-2) ...
        let f = f3();
        let q = 3i64;
        let a = PolyA::t(&f);
        let ta = t_a_series(&f, 1, &a, 12).unwrap();
        assert_eq!(ta.order(), Some(q));
        assert_eq!(ta.weight(), 1);
        assert_eq!(ta.typ(), 1);
        ta.validate().unwrap();
        let dinv = |k: i64| GradedElem::boundary_delta_pow(&f, 1, -k);
        let t_ratk = RatK::from_poly(PolyA::t(&f));
        assert_eq!(ta.coeff(q).unwrap(), dinv(1));
        assert_eq!(
            ta.coeff(2 * q - 1).unwrap(),
            dinv(2).mul_scalar(&t_ratk).neg()
        );
        assert_eq!(
            ta.coeff(3 * q - 2).unwrap(),
            dinv(3).mul_scalar(&t_ratk.mul(&t_ratk))
        );
        assert_eq!(ta.coeff(q + 1).unwrap(), GradedElem::zero(&f, 1));
    }

    #[test]
    fn uniformizer_inverts_the_module_action() {
        // 1/t_T = T/t + delta/t^q termwise: t_T * (T*t^(q-1) + delta) = t^q * S_T-free check
        let f = f3();
        let ta = t_a_series(&f, 1, &PolyA::t(&f), 20).unwrap();
        // phi_T(1/t) * t_T should be 1 + O(t): multiply t_T by (T t^(-1) + delta t^(-q)),
        // i.e. t_T * T * t^(q-1) + t_T * delta shifted: check via S-series identity instead
        let sa = s_a_series(&f, 1, &PolyA::t(&f), 17).unwrap();
        let delta = GradedElem::boundary_delta(&f, 1);
        let lhs = ta.mul(&sa).mul_graded(&delta);
        // t_T * S_T * delta = t^q exactly
        assert_eq!(lhs.order(), Some(3));
        assert!(lhs.coeff(3).unwrap().is_one());
        for n in 4..=lhs.n_max() {
            assert!(lhs.coeff(n).unwrap().is_zero(), "residual at {n}");
        }
    }

    #[test]
    fn truncation_rules_for_products() {
        let f = f3();
        let t = TExp::t(&f, 1, 10);
        let one = TExp::one(&f, 1, 7);
        // ord(t) = 1 lifts the partner's truncation by 1
        let p = t.mul(&one);
        assert_eq!(p.n_max(), 8);
        let zero = TExp::zero(&f, 1, 0, 0, 5);
        assert_eq!(t.mul(&zero).n_max(), 6);
        assert!(t.mul(&zero).is_zero());
    }

    #[test]
    fn frobenius_power_truncation() {
        let f = f3();
        let mut x = TExp::t(&f, 1, 4);
        x = x.add(&TExp::zero(&f, 1, 1, 1, 4)); // keep n_max at 4
        let cube = x.pow(3);
        // (t + O(t^5))^3 = t^3 + O(t^15): exact to 14
        assert_eq!(cube.n_max(), 14);
        assert_eq!(cube.order(), Some(3));
        assert_eq!(x.frobenius(3), cube);
    }

    #[test]
    fn inversion_round_trip() {
        let f = f3();
        let sa = s_a_series(&f, 1, &PolyA::parse(&f, "T+1").unwrap(), 9).unwrap();
        let inv = sa.inv().unwrap();
        let prod = sa.mul(&inv);
        assert!(prod.coeff(0).unwrap().is_one());
        for n in 1..=prod.n_max() {
            assert!(prod.coeff(n).unwrap().is_zero());
        }
        assert!(matches!(
            TExp::t(&f, 1, 3).inv(),
            Err(Error::NonUnitConstantTerm)
        ));
    }

    #[test]
    fn substitution_identity_and_composition() {
        let f = f3();
        let t = TExp::t(&f, 1, 30);
        let ta = t_a_series(&f, 1, &PolyA::t(&f), 30).unwrap();
        // substituting into the identity series returns the series
        let sub = t.substitute(&ta).unwrap();
        assert_eq!(sub.truncate(30), ta.truncate(sub.n_max()).truncate(30));
    }

    #[test]
    fn goss_evaluation_is_power_substitution_low_range() {
        let f = f3();
        let alphas = exp_coeffs(&f, 1, 1).unwrap();
        let table = GossTable::build(
            3,
            3,
            GradedElem::one(&f, 1),
            alphas[1..].to_vec(),
            None,
            3,
        )
        .unwrap();
        let ta = t_a_series(&f, 1, &PolyA::t(&f), 40).unwrap();
        let g2 = TExp::goss_eval(&table, 2, &ta).unwrap();
        assert_eq!(g2, ta.pow(2).truncate(g2.n_max()));
    }

    #[test]
    fn homothety_and_t_scaling() {
        let f = f3();
        let pi = RatK::from_poly(PolyA::parse(&f, "T+1").unwrap());
        let ta = t_a_series(&f, 1, &PolyA::t(&f), 15).unwrap();
        let h = ta.homothety_scale(&pi).unwrap();
        // coefficient at n has weight 1 - n, so it scales by pi^(1-n)
        let n = 5i64; // 2q - 1
        assert_eq!(
            h.coeff(n).unwrap(),
            ta.coeff(n).unwrap().mul_scalar(&pi.pow(1 - n).unwrap())
        );
        let sc = ta.scale_t(&pi).unwrap();
        assert_eq!(
            sc.coeff(n).unwrap(),
            ta.coeff(n).unwrap().mul_scalar(&pi.pow(n).unwrap())
        );
    }
}
