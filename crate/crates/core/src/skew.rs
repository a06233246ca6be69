//! Twisted polynomials and the generic boundary module.
//!
//! A `SkewPoly` is an F_q-linear endomorphism sum(c_i X^(q^i)) with
//! coefficients in the graded boundary ring; composition is the twisted
//! product (a X^(q^i)) o (b X^(q^j)) = a b^(q^i) X^(q^(i+j)).
//!
//! The generic rank-s boundary module sends T to
//!   phi_T = T X + g_1 X^q + ... + g_{s-1} X^(q^(s-1)) + delta X^(q^s),
//! delta = (-1)^(s-1) h^(q-1), and extends multiplicatively to all of
//! F_q[T] by Horner evaluation over the base-T digits.  From phi we read
//! off the exponential coefficients of the generic lattice, Eisenstein
//! values by power-series inversion, and the sparse division polynomials
//! S_a whose products drive every t-expansion.

use crate::error::{Error, Result};
use crate::field::Gf;
use crate::graded::GradedElem;
use crate::poly::{PolyA, RatK};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    field: Gf,
    s: u32,
    /// c[i] multiplies X^(q^i); normalized to no trailing zeros.
    c: Vec<GradedElem>,
}

impl SkewPoly {
    pub fn new(field: &Gf, s: u32, mut c: Vec<GradedElem>) -> SkewPoly {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        SkewPoly { field: field.clone(), s, c }
    }

    pub fn zero(field: &Gf, s: u32) -> SkewPoly {
        SkewPoly { field: field.clone(), s, c: vec![] }
    }

    pub fn constant(field: &Gf, s: u32, c: GradedElem) -> SkewPoly {
        Self::new(field, s, vec![c])
    }

    pub fn coeffs(&self) -> &[GradedElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> GradedElem {
        self.c.get(i).cloned().unwrap_or_else(|| GradedElem::zero(&self.field, self.s))
    }

    /// Degree in the Frobenius twist tau, or None for zero.
    pub fn tau_deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let n = self.c.len().max(other.c.len());
        let z = GradedElem::zero(&self.field, self.s);
        let c = (0..n)
            .map(|i| {
                self.c.get(i).unwrap_or(&z).add(other.c.get(i).unwrap_or(&z))
            })
            .collect();
        Self::new(&self.field, self.s, c)
    }

    /// Composition product: coefficients of the right factor are twisted
    /// by the Frobenius power of the left exponent.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        if self.c.is_empty() || other.c.is_empty() {
            return Self::zero(&self.field, self.s);
        }
        let q = self.field.q() as u64;
        let n = self.c.len() + other.c.len() - 1;
        let mut c = vec![GradedElem::zero(&self.field, self.s); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let qi = q.pow(i as u32);
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&a.mul(&b.frobenius(qi)));
            }
        }
        Self::new(&self.field, self.s, c)
    }
}

/// The image of T under the generic rank-s boundary module.
pub fn phi_t(field: &Gf, s: u32) -> SkewPoly {
    let mut c = Vec::with_capacity(s as usize + 1);
    c.push(GradedElem::from_ratk(field, s, RatK::from_poly(PolyA::t(field))));
    for i in 1..s {
        c.push(GradedElem::gen_g(field, s, i).expect("i < s"));
    }
    c.push(GradedElem::boundary_delta(field, s));
    SkewPoly::new(field, s, c)
}

/// The image of an arbitrary a in F_q[T], by Horner over the digits of a.
pub fn phi_a(field: &Gf, s: u32, a: &PolyA) -> SkewPoly {
    let digits = a.coeffs();
    if digits.is_empty() {
        return SkewPoly::zero(field, s);
    }
    let t = phi_t(field, s);
    let embed = |d| {
        SkewPoly::constant(
            field,
            s,
            GradedElem::from_ratk(field, s, RatK::from_poly(PolyA::constant(field, d))),
        )
    };
    let mut acc = embed(digits[digits.len() - 1]);
    for &d in digits.iter().rev().skip(1) {
        acc = acc.mul(&t);
        if d != 0 {
            acc = acc.add(&embed(d));
        }
    }
    acc
}

/// Leading coefficient of phi_a for monic a of degree d:
/// delta^((q^(sd)-1)/(q^s-1)), as an element of the boundary ring.
pub fn phi_top_coeff(field: &Gf, s: u32, d: u32) -> GradedElem {
    let q = field.q() as i64;
    let qs = q.pow(s);
    let e = (qs.pow(d) - 1) / (qs - 1);
    GradedElem::boundary_delta_pow(field, s, e)
}

/// Exponential coefficients alpha_0..alpha_n of the generic boundary
/// lattice, from e(Tz) = phi_T(e(z)):
///   alpha_k (T^(q^k) - T) = sum_{1<=j<=min(k,s)} phi_j alpha_{k-j}^(q^j).
pub fn exp_coeffs(field: &Gf, s: u32, n: usize) -> Result<Vec<GradedElem>> {
    let q = field.q() as u64;
    let phi = phi_t(field, s);
    let mut alpha = Vec::with_capacity(n + 1);
    alpha.push(GradedElem::one(field, s));
    for k in 1..=n {
        if k as u32 > 25 || q.checked_pow(k as u32).is_none() {
            return Err(Error::TooLarge(format!("exponential coefficient index {k}")));
        }
        let mut acc = GradedElem::zero(field, s);
        for j in 1..=(k.min(s as usize)) {
            let prev: &GradedElem = &alpha[k - j];
            acc = acc.add(&phi.coeff(j).mul(&prev.frobenius(q.pow(j as u32))));
        }
        let bracket = RatK::from_poly(PolyA::bracket(field, k as u32));
        alpha.push(acc.mul_scalar(&bracket.inv()?));
    }
    Ok(alpha)
}

/// Eisenstein values E_0..E_kmax of the generic boundary lattice,
/// E_k = -[z^(k-1)] (1/e(z) - 1/z), with the convention E_0 = -1.
/// E_k = 0 unless q - 1 divides k.
pub fn eisenstein_values(field: &Gf, s: u32, kmax: usize) -> Result<Vec<GradedElem>> {
    let q = field.q() as usize;
    // e(z) = z u(z) with u = 1 + sum alpha_k z^(q^k - 1); then
    // E_k = -[z^k] u^(-1) for k >= 1.
    let mut nalpha = 0;
    while q.pow(nalpha as u32 + 1) - 1 <= kmax {
        nalpha += 1;
    }
    let alpha = exp_coeffs(field, s, nalpha)?;
    let zero = GradedElem::zero(field, s);
    let mut u = vec![zero.clone(); kmax + 1];
    u[0] = GradedElem::one(field, s);
    for k in 1..=nalpha {
        let e = q.pow(k as u32) - 1;
        if e <= kmax {
            u[e] = alpha[k].clone();
        }
    }
    // series inversion: uinv[0] = 1, uinv[k] = -sum_{j>=1} u[j] uinv[k-j]
    let mut uinv = vec![zero.clone(); kmax + 1];
    uinv[0] = GradedElem::one(field, s);
    for k in 1..=kmax {
        let mut acc = GradedElem::zero(field, s);
        for j in 1..=k {
            if !u[j].is_zero() && !uinv[k - j].is_zero() {
                acc = acc.add(&u[j].mul(&uinv[k - j]));
            }
        }
        uinv[k] = acc.neg();
    }
    let mut e = vec![zero; kmax + 1];
    e[0] = GradedElem::from_int(field, s, -1);
    for k in 1..=kmax {
        e[k] = uinv[k].neg();
    }
    Ok(e)
}

/// Sparse coefficients of the division polynomial
///   S_a(X) = delta_a^(-1) sum_i l_i X^(q^(sd) - q^i),
/// where phi_a = sum_i l_i tau^i; monic a only.  Equivalently
/// 1/phi_a(1/t) = delta_a^(-1) t^(q^(sd)) / S_a(t).  Returns
/// (exponent, coefficient) pairs in ascending exponent order;
/// S_a(0) = 1 and all exponents are divisible by q - 1.
pub fn s_poly_terms(field: &Gf, s: u32, a: &PolyA) -> Result<Vec<(u64, GradedElem)>> {
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = a.deg().unwrap() as u32;
    let q = field.q() as u64;
    let sd = s
        .checked_mul(d)
        .filter(|&sd| q.checked_pow(sd).is_some())
        .ok_or_else(|| Error::TooLarge(format!("division polynomial for degree {d}")))?;
    let qsd = q.pow(sd);
    let phi = phi_a(field, s, a);
    let delta_inv = phi_top_coeff(field, s, d).inv()?;
    let mut terms: Vec<(u64, GradedElem)> = phi
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (qsd - q.pow(i as u32), delta_inv.mul(c)))
        .collect();
    terms.sort_by_key(|&(e, _)| e);
    Ok(terms)
}

/// Exponential coefficients of the a-torsion module: the roots of phi_a
/// are the a-division points, so e(X) = phi_a(X)/a has derivative 1 and
/// its X^(q^i) coefficients are the alpha_i of a finite module of
/// F_q-dimension s*deg(a).
pub fn torsion_exp_coeffs(field: &Gf, s: u32, a: &PolyA) -> Result<Vec<GradedElem>> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ainv = RatK::from_poly(a.clone()).inv()?;
    Ok(phi_a(field, s, a).coeffs().iter().map(|c| c.mul_scalar(&ainv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Gf {
        Gf::new(3, 1).unwrap()
    }

    #[test]
    fn twisted_square_of_phi_t_rank_one() {
        // (T + delta tau)^2 = T^2 + delta (T + T^q) tau + delta^(q+1) tau^2
        let f = f3();
        let s = 1;
        let phi = phi_t(&f, s);
        let sq = phi.mul(&phi);
        let delta = GradedElem::boundary_delta(&f, s);
        let t = RatK::from_poly(PolyA::t(&f));
        let tq = RatK::from_poly(PolyA::term(&f, 1, 3));
        assert_eq!(sq.coeff(0), GradedElem::from_ratk(&f, s, t.mul(&t)));
        assert_eq!(sq.coeff(1), delta.mul_scalar(&t.add(&tq)));
        assert_eq!(sq.coeff(2), delta.pow(4));
        // Horner agrees with explicit composition
        assert_eq!(phi_a(&f, s, &PolyA::parse(&f, "T^2").unwrap()), sq);
    }

    #[test]
    fn phi_is_a_ring_homomorphism() {
        let f = f3();
        for s in [1u32, 2] {
            let a = PolyA::parse(&f, "T^2+2*T+1").unwrap();
            let b = PolyA::parse(&f, "T+2").unwrap();
            let lhs = phi_a(&f, s, &a.mul(&b));
            let rhs = phi_a(&f, s, &a).mul(&phi_a(&f, s, &b));
            assert_eq!(lhs, rhs);
            let sum = phi_a(&f, s, &a.add(&b));
            assert_eq!(sum, phi_a(&f, s, &a).add(&phi_a(&f, s, &b)));
        }
    }

    #[test]
    fn top_coefficient_of_monic_images() {
        let f = f3();
        for s in [1u32, 2] {
            for a in ["T", "T+1", "T^2+1", "T^2+T+2"] {
                let a = PolyA::parse(&f, a).unwrap();
                let d = a.deg().unwrap() as u32;
                let phi = phi_a(&f, s, &a);
                assert_eq!(phi.tau_deg(), Some((s * d) as usize));
                assert_eq!(phi.coeff((s * d) as usize), phi_top_coeff(&f, s, d));
            }
        }
    }

    #[test]
    fn first_exponential_coefficient() {
        // alpha_1 = delta / (T^q - T) in rank one
        let f = f3();
        let alpha = exp_coeffs(&f, 1, 2).unwrap();
        assert!(alpha[0].is_one());
        let bracket = RatK::from_poly(PolyA::bracket(&f, 1));
        assert_eq!(
            alpha[1],
            GradedElem::boundary_delta(&f, 1).mul_scalar(&bracket.inv().unwrap())
        );
        // rank two: alpha_1 = g_1 / (T^q - T)
        let alpha2 = exp_coeffs(&f, 2, 2).unwrap();
        assert_eq!(
            alpha2[1],
            GradedElem::gen_g(&f, 2, 1)
                .unwrap()
                .mul_scalar(&bracket.inv().unwrap())
        );
    }

    #[test]
    fn eisenstein_low_values() {
        let f = f3();
        let q = 3usize;
        let e = eisenstein_values(&f, 1, q * q - 1).unwrap();
        // E_k = 0 unless q-1 | k; E_(q-1) = delta/(T^q - T)
        for k in 1..e.len() {
            if k % (q - 1) != 0 {
                assert!(e[k].is_zero(), "E_{k} should vanish");
            }
        }
        let bracket = RatK::from_poly(PolyA::bracket(&f, 1));
        assert_eq!(
            e[q - 1],
            GradedElem::boundary_delta(&f, 1).mul_scalar(&bracket.inv().unwrap())
        );
        // E_(2(q-1)) = -[z^(2q-2)] u^(-1) = alpha_1^2 (no alpha_2 term yet)
        let alpha = exp_coeffs(&f, 1, 1).unwrap();
        assert_eq!(e[2 * (q - 1)], alpha[1].pow(2).neg());
    }

    #[test]
    fn division_polynomial_shape() {
        let f = f3();
        let a = PolyA::parse(&f, "T").unwrap();
        let terms = s_poly_terms(&f, 1, &a).unwrap();
        // S_T(X) = delta^(-1) (T X^(q-1) + delta) / 1 -> constant 1, then T/delta at q-1
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, 0);
        assert!(terms[0].1.is_one());
        assert_eq!(terms[1].0, 2);
        let expected = GradedElem::boundary_delta_pow(&f, 1, -1)
            .mul_scalar(&RatK::from_poly(PolyA::t(&f)));
        assert_eq!(terms[1].1, expected);
        // non-monic input is rejected
        assert!(matches!(
            s_poly_terms(&f, 1, &PolyA::parse(&f, "2*T").unwrap()),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn torsion_exponential_has_unit_derivative() {
        let f = f3();
        let a = PolyA::parse(&f, "T^2+1").unwrap();
        let alphas = torsion_exp_coeffs(&f, 1, &a).unwrap();
        assert_eq!(alphas.len(), 3);
        assert!(alphas[0].is_one());
        // top coefficient: delta^(q+1)/a
        let top = phi_top_coeff(&f, 1, 2)
            .mul_scalar(&RatK::from_poly(a.clone()).inv().unwrap());
        assert_eq!(alphas[2], top);
    }
}
