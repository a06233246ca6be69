//! Goss polynomials of an F_q-module from its exponential coefficients.
//!
//! For an F_q-module with exponential e(z) = z + sum(alpha_i z^(q^i)),
//! the Goss polynomials G_k satisfy
//!   sum over the module of 1/(z - v)^k  =  G_k(1/e(z)),
//! and are generated by G_k = X (G_{k-1} + alpha_1 G_{k-q} +
//! alpha_2 G_{k-q^2} + ...) with G_k = 0 for k <= 0 and G_1 = X.
//!
//! The table is generic over the coefficient ring, so the same code
//! serves exact graded coefficients (generic lattices, torsion modules)
//! and certified Laurent numerics (concrete lattices at the infinite
//! place).

use crate::error::{Error, Result};
use crate::graded::GradedElem;
use crate::laurent::InfLaurent;
use std::collections::BTreeMap;

/// What the Goss recursion needs of its coefficients.  `frob_p` is
/// x -> x^t for t a power of the characteristic; `is_one` may be "up to
/// stated precision" for certified numeric rings.
pub trait CoeffRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn frob_p(&self, t: u64) -> Self;
    fn scale_int(&self, n: i64) -> Self;
}

impl CoeffRing for GradedElem {
    fn add(&self, other: &Self) -> Self {
        GradedElem::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        GradedElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        GradedElem::neg(self)
    }
    fn is_zero(&self) -> bool {
        GradedElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        GradedElem::is_one(self)
    }
    fn frob_p(&self, t: u64) -> Self {
        self.frobenius(t)
    }
    fn scale_int(&self, n: i64) -> Self {
        self.mul_int(n)
    }
}

impl CoeffRing for InfLaurent {
    fn add(&self, other: &Self) -> Self {
        InfLaurent::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        InfLaurent::mul(self, other)
    }
    fn neg(&self) -> Self {
        InfLaurent::neg(self)
    }
    fn is_zero(&self) -> bool {
        // zero as far as certified
        self.is_zero_to_prec()
    }
    fn is_one(&self) -> bool {
        self.v() == Some(0) && {
            let d = self.sub(&InfLaurent::one(self.field()));
            d.is_zero_to_prec()
        }
    }
    fn frob_p(&self, t: u64) -> Self {
        self.frobenius(t)
    }
    fn scale_int(&self, n: i64) -> Self {
        let c = self.field().from_int(n);
        self.mul(&InfLaurent::monomial(self.field(), c, 0))
    }
}

/// X-sparse polynomial: exponent -> nonzero coefficient.
pub type XPoly<C> = BTreeMap<u64, C>;

pub struct GossTable<C: CoeffRing> {
    q: u64,
    p: u64,
    /// alpha[j-1] is alpha_j; alpha_0 = 1 is implicit.
    alphas: Vec<C>,
    /// F_q-dimension when the module is finite (alphas then complete).
    finite_dim: Option<u32>,
    polys: Vec<XPoly<C>>,
}

impl<C: CoeffRing> GossTable<C> {
    /// Build G_1..G_kmax.  `one` is the unit of the coefficient ring
    /// (seeding G_1 = X).  For an infinite module the supplied alphas
    /// must reach every q^j <= kmax; a finite module's alphas are
    /// complete by definition and vanish beyond its dimension.
    pub fn build(
        q: u64,
        p: u64,
        one: C,
        alphas: Vec<C>,
        finite_dim: Option<u32>,
        kmax: usize,
    ) -> Result<GossTable<C>> {
        let mut need = 0usize;
        while q.pow(need as u32 + 1) <= kmax as u64 {
            need += 1;
        }
        if finite_dim.is_none() && alphas.len() < need {
            return Err(Error::InsufficientAlphas { have: alphas.len(), need });
        }
        // polys[k] is G_k; G_0 = 0 and the recursion starts from G_1 = X.
        let mut polys: Vec<XPoly<C>> = Vec::with_capacity(kmax + 1);
        polys.push(XPoly::new());
        if kmax >= 1 {
            let mut g1 = XPoly::new();
            g1.insert(1, one);
            polys.push(g1);
        }
        for k in 2..=kmax {
            let mut body: XPoly<C> = XPoly::new();
            {
                let mut absorb = |poly: &XPoly<C>, scale: Option<&C>| {
                    for (&e, c) in poly {
                        let c = match scale {
                            Some(a) => a.mul(c),
                            None => c.clone(),
                        };
                        match body.get_mut(&e) {
                            Some(acc) => {
                                let sum = acc.add(&c);
                                if sum.is_zero() {
                                    body.remove(&e);
                                } else {
                                    *acc = sum;
                                }
                            }
                            None => {
                                if !c.is_zero() {
                                    body.insert(e, c);
                                }
                            }
                        }
                    }
                };
                absorb(&polys[k - 1], None);
                for (j, alpha) in alphas.iter().enumerate() {
                    let qj = match q.checked_pow(j as u32 + 1) {
                        Some(v) if v <= k as u64 => v as usize,
                        _ => break,
                    };
                    absorb(&polys[k - qj], Some(alpha));
                }
            }
            let g: XPoly<C> = body.into_iter().map(|(e, c)| (e + 1, c)).collect();
            polys.push(g);
        }
        Ok(GossTable { q, p, alphas, finite_dim, polys })
    }

    pub fn kmax(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn poly(&self, k: usize) -> &XPoly<C> {
        &self.polys[k]
    }

    pub fn alphas(&self) -> &[C] {
        &self.alphas
    }

    /// X-adic order of G_k, i.e. its least exponent.
    pub fn order(&self, k: usize) -> Option<u64> {
        self.polys[k].keys().next().copied()
    }

    /// Evaluate G_k at a point of the coefficient ring.
    pub fn eval(&self, k: usize, x: &C) -> C {
        let mut acc: Option<C> = None;
        for (&e, c) in &self.polys[k] {
            let term = c.mul(&pow_pos(x, e));
            acc = Some(match acc {
                Some(a) => a.add(&term),
                None => term,
            });
        }
        acc.unwrap_or_else(|| x.add(&x.neg()))
    }

    /// Structural identities every table must satisfy up to kmax; returns
    /// human-readable descriptions of any violations.
    pub fn property_violations(&self) -> Vec<String> {
        let mut bad = vec![];
        let q = self.q as usize;
        let p = self.p as usize;
        for k in 1..=self.kmax() {
            let g = &self.polys[k];
            // monic of degree k with no constant term
            match g.iter().next_back() {
                Some((&e, c)) => {
                    if e != k as u64 {
                        bad.push(format!("G_{k} has degree {e}, expected {k}"));
                    } else if !c.is_one() {
                        bad.push(format!("G_{k} is not monic"));
                    }
                }
                None => bad.push(format!("G_{k} is zero")),
            }
            if g.contains_key(&0) {
                bad.push(format!("G_{k}(0) != 0"));
            }
            // G_k = X^k in the low range
            if k <= q && g.len() != 1 {
                bad.push(format!("G_{k} should be X^{k}"));
            }
            // p-power multiplicativity
            if k % p == 0 {
                let m = k / p;
                let lifted: XPoly<C> = self.polys[m]
                    .iter()
                    .map(|(&e, c)| (e * self.p, c.frob_p(self.p)))
                    .collect();
                if !xpoly_eq(g, &lifted) {
                    bad.push(format!("G_{k} != G_{m}^{p}"));
                }
            }
            // X^2 G_k' = k G_{k+1}
            if k + 1 <= self.kmax() {
                let mut lhs: XPoly<C> = XPoly::new();
                for (&e, c) in g {
                    let d = c.scale_int((e % self.p) as i64);
                    if !d.is_zero() {
                        lhs.insert(e + 1, d);
                    }
                }
                let rhs: XPoly<C> = self.polys[k + 1]
                    .iter()
                    .filter_map(|(&e, c)| {
                        let d = c.scale_int((k % p) as i64);
                        if d.is_zero() {
                            None
                        } else {
                            Some((e, d))
                        }
                    })
                    .collect();
                if !xpoly_eq(&lhs, &rhs) {
                    bad.push(format!("X^2 G_{k}' != {k} G_{}", k + 1));
                }
            }
            // finite module of dimension m: order at least floor(k/q^m) + 1
            if let Some(dim) = self.finite_dim {
                if let Some(qm) = (self.q).checked_pow(dim) {
                    let bound = (k as u64) / qm + 1;
                    if self.order(k).map(|o| o < bound).unwrap_or(false) {
                        bad.push(format!(
                            "G_{k} has order {} below the finite-module bound {bound}",
                            self.order(k).unwrap()
                        ));
                    }
                }
            }
        }
        bad
    }
}

fn pow_pos<C: CoeffRing>(x: &C, e: u64) -> C {
    assert!(e >= 1);
    let mut acc: Option<C> = None;
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                Some(a) => a.mul(&base),
                None => base.clone(),
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc.unwrap()
}

fn xpoly_eq<C: CoeffRing>(a: &XPoly<C>, b: &XPoly<C>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().zip(b.iter()).all(|((ea, ca), (eb, cb))| {
        ea == eb && ca.add(&cb.neg()).is_zero()
    })
}
