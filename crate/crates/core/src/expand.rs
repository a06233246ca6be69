//! t-expansions of the standard forms.
//!
//! Eisenstein series are expanded through Goss polynomial sums over the
//! monic ideals,
//!   E_k = E_k(boundary) - sum over monic a of G_k(t_a),
//! the coefficient forms g_1, ..., g_r follow by the weight bootstrap
//!   g_k = (T^(q^k) - T) E_(q^k - 1)
//!       + sum_{1<=j<k} E_(q^(k-j) - 1) g_j^(q^(k-j)),
//! whose k = r case is the discriminant; the discriminant and the
//! normalized cusp form h also come as boundary-unit multiples of powers
//! of the product of all division polynomials, which gives an
//! independent route used for cross-checks; and the para-Eisenstein
//! series alpha_i solve the exponential recursion in expansion form.
//!
//! Supported exponents obey two congruences: n matches the type mod
//! q - 1, and type-0 forms only carry n congruent to 0 or -1 mod q.

use crate::error::{Error, Result};
use crate::field::Gf;
use crate::goss::GossTable;
use crate::graded::GradedElem;
use crate::poly::{monic_polys, PolyA, RatK};
use crate::skew::{eisenstein_values, exp_coeffs};
use crate::texp::{s_a_series, t_a_series, TExp};
use std::fmt;
use std::str::FromStr;

/// Goss table of the generic boundary lattice, good through G_kmax.
pub fn boundary_goss_table(field: &Gf, s: u32, kmax: usize) -> Result<GossTable<GradedElem>> {
    let q = field.q() as u64;
    let mut n = 0usize;
    while q.pow(n as u32 + 1) <= kmax as u64 {
        n += 1;
    }
    let alphas = exp_coeffs(field, s, n)?;
    GossTable::build(
        q,
        field.p() as u64,
        GradedElem::one(field, s),
        alphas[1..].to_vec(),
        None,
        kmax,
    )
}

/// P(t): the product of S_a(t) over all monic a, truncated at n_max.
/// A degree-d factor first deviates from 1 at q^(sd) - q^(sd-1).
pub fn s_product(field: &Gf, s: u32, n_max: i64) -> Result<TExp> {
    let q = field.q() as u64;
    let mut p = TExp::one(field, s, n_max);
    for d in 1u32.. {
        let dev = match q.checked_pow(s * d) {
            Some(x) => (x - x / q) as i64,
            None => break,
        };
        if dev > n_max {
            break;
        }
        for a in monic_polys(field, d) {
            p = p.mul(&s_a_series(field, s, &a, n_max)?).truncate(n_max);
        }
    }
    Ok(p)
}

/// E_k as a t-expansion of rank r, truncated at n_max.
pub fn eisenstein_expansion(field: &Gf, r: u32, k: u64, n_max: i64) -> Result<TExp> {
    if r < 2 {
        return Err(Error::RankUnsupported { expected: 2, got: r });
    }
    let s = r - 1;
    let q = field.q() as u64;
    if k == 0 {
        return Err(Error::ZeroInput);
    }
    let qm1 = (field.q() as i64 - 1).max(1);
    if (k as i64) % qm1 != 0 {
        // summing a^{-k} over a lattice groups into unit-scaling orbits,
        // and sum_{c in F_q^*} c^{-k} = 0 away from the (q-1)-grading,
        // so E_k vanishes identically; the monic-representative sum
        // below is only the orbit decomposition for (q-1) | k
        return Ok(TExp::zero(field, s, k as i64, (k as i64).rem_euclid(qm1), n_max));
    }
    let values = eisenstein_values(field, s, k as usize)?;
    let mut f = TExp::from_parts(
        field,
        s,
        k as i64,
        (k as i64).rem_euclid(qm1),
        n_max,
        [(0, values[k as usize].clone())],
    )?;
    let table = boundary_goss_table(field, s, k as usize)?;
    // the sum runs over all monic a including the constant 1 (whose
    // uniformizer is t itself)
    for d in 0u32.. {
        match q.checked_pow(s * d) {
            Some(x) if (x as i64) <= n_max => {}
            _ => break,
        };
        for a in monic_polys(field, d) {
            let ta = t_a_series(field, s, &a, n_max)?;
            let g = TExp::goss_eval(&table, k as usize, &ta)?.truncate(n_max);
            if !g.is_zero() {
                f = f.sub(&g);
            }
        }
    }
    Ok(f)
}

/// The coefficient form g_k of weight q^k - 1, for 1 <= k <= r; the top
/// case k = r is the discriminant (so its constant term cancels).
pub fn g_expansion(field: &Gf, r: u32, k: u32, n_max: i64) -> Result<TExp> {
    if r < 2 {
        return Err(Error::RankUnsupported { expected: 2, got: r });
    }
    if k < 1 || k > r {
        return Err(Error::IndexOutOfRange(format!("g_{k} at rank {r}")));
    }
    let q = field.q() as u64;
    let mut gs: Vec<TExp> = vec![];
    for i in 1..=k {
        let qi = q
            .checked_pow(i)
            .ok_or_else(|| Error::TooLarge(format!("q^{i}")))?;
        let e = eisenstein_expansion(field, r, qi - 1, n_max)?;
        let bracket = RatK::from_poly(PolyA::bracket(field, i));
        let mut g = e.mul_scalar(&bracket);
        for j in 1..i {
            let ej = eisenstein_expansion(field, r, q.pow(i - j) - 1, n_max)?;
            let gj = gs[(j - 1) as usize].frobenius(q.pow(i - j));
            g = g.add(&ej.mul(&gj).truncate(n_max));
        }
        gs.push(g);
    }
    Ok(gs.pop().unwrap())
}

/// The discriminant by the product formula:
/// -delta^q t^(q-1) P(t)^((q^r - 1)(q - 1)).
pub fn delta_expansion(field: &Gf, r: u32, n_max: i64) -> Result<TExp> {
    if r < 2 {
        return Err(Error::RankUnsupported { expected: 2, got: r });
    }
    let s = r - 1;
    let q = field.q() as i64;
    let qm1 = q - 1;
    let e = (q.checked_pow(r).ok_or_else(|| Error::TooLarge(format!("q^{r}")))? - 1) * qm1;
    let p = s_product(field, s, n_max - qm1)?;
    let unit = GradedElem::boundary_delta_pow(field, s, q).neg();
    Ok(shift_t(p.pow(e as u64).truncate(n_max - qm1).mul_graded(&unit), qm1))
}

/// The normalized cusp form: h = h'^q t P(t)^(q^r - 1), of weight
/// (q^r - 1)/(q - 1) and type 1; h^(q-1) = (-1)^(r-1) delta.
pub fn h_expansion(field: &Gf, r: u32, n_max: i64) -> Result<TExp> {
    if r < 2 {
        return Err(Error::RankUnsupported { expected: 2, got: r });
    }
    let s = r - 1;
    let q = field.q() as i64;
    let e = q.checked_pow(r).ok_or_else(|| Error::TooLarge(format!("q^{r}")))? - 1;
    let p = s_product(field, s, n_max - 1)?;
    let unit = GradedElem::gen_h(field, s).pow(q as u64);
    Ok(shift_t(p.pow(e as u64).truncate(n_max - 1).mul_graded(&unit), 1))
}

/// The para-Eisenstein form alpha_i of weight q^i - 1, from the
/// exponential recursion alpha_k = sum_{1<=i<=k} E_(q^i-1) alpha_(k-i)^(q^i).
pub fn para_eisenstein_expansion(field: &Gf, r: u32, i: u32, n_max: i64) -> Result<TExp> {
    if r < 2 {
        return Err(Error::RankUnsupported { expected: 2, got: r });
    }
    if i < 1 {
        return Err(Error::IndexOutOfRange("alpha_0 is the constant 1".into()));
    }
    let s = r - 1;
    let q = field.q() as u64;
    let mut alphas: Vec<TExp> = vec![TExp::one(field, s, n_max)];
    for k in 1..=i {
        let mut acc = TExp::zero(field, s, q.pow(k) as i64 - 1, 0, n_max);
        for j in 1..=k {
            let qj = q.pow(j);
            let e = eisenstein_expansion(field, r, qj - 1, n_max)?;
            let prev = alphas[(k - j) as usize].frobenius(qj);
            acc = acc.add(&e.mul(&prev).truncate(n_max));
        }
        alphas.push(acc);
    }
    Ok(alphas.pop().unwrap())
}

/// Multiply by t^e: shifts support, weight, and type together.
fn shift_t(f: TExp, e: i64) -> TExp {
    let t = TExp::t(f.field(), f.s(), i64::MAX / 4);
    f.mul(&t.pow(e as u64))
}

/// Exponents in the support that violate the congruences: every n must
/// match the type mod q - 1, and a type-0 form only carries n congruent
/// to 0 or -1 mod q.
pub fn congruence_violations(f: &TExp) -> Vec<i64> {
    let q = f.field().q() as i64;
    let qm1 = (q - 1).max(1);
    let mut bad = vec![];
    for (n, _) in f.coeffs() {
        if n.rem_euclid(qm1) != f.typ() {
            bad.push(n);
            continue;
        }
        if f.typ() == 0 {
            let m = n.rem_euclid(q);
            if m != 0 && m != q - 1 {
                bad.push(n);
            }
        }
    }
    bad
}

/// Restriction to the boundary: the constant coefficient.
pub fn boundary_restrict(f: &TExp) -> Result<GradedElem> {
    f.coeff(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormId {
    /// g_i, 1 <= i <= r (i = r is the discriminant via the bootstrap).
    G(u32),
    Delta,
    H,
    E(u64),
    Alpha(u32),
}

impl FormId {
    pub fn expand(&self, field: &Gf, r: u32, n_max: i64) -> Result<TExp> {
        match *self {
            FormId::G(i) => g_expansion(field, r, i, n_max),
            FormId::Delta => delta_expansion(field, r, n_max),
            FormId::H => h_expansion(field, r, n_max),
            FormId::E(k) => eisenstein_expansion(field, r, k, n_max),
            FormId::Alpha(i) => para_eisenstein_expansion(field, r, i, n_max),
        }
    }

    pub fn weight(&self, field: &Gf, r: u32) -> i64 {
        let q = field.q() as i64;
        match *self {
            FormId::G(i) => q.pow(i) - 1,
            FormId::Delta => q.pow(r) - 1,
            FormId::H => (q.pow(r) - 1) / (q - 1),
            FormId::E(k) => k as i64,
            FormId::Alpha(i) => q.pow(i) - 1,
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::G(i) => write!(f, "g:{i}"),
            FormId::Delta => write!(f, "delta"),
            FormId::H => write!(f, "h"),
            FormId::E(k) => write!(f, "E:{k}"),
            FormId::Alpha(i) => write!(f, "alpha:{i}"),
        }
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FormId> {
        let bad = || Error::Parse(format!("unknown form {s}"));
        match s {
            "delta" => Ok(FormId::Delta),
            "h" => Ok(FormId::H),
            _ => {
                let (name, idx) = s.split_once(':').ok_or_else(bad)?;
                match name {
                    "g" => Ok(FormId::G(idx.parse().map_err(|_| bad())?)),
                    "E" => Ok(FormId::E(idx.parse().map_err(|_| bad())?)),
                    "alpha" => Ok(FormId::Alpha(idx.parse().map_err(|_| bad())?)),
                    _ => Err(bad()),
                }
            }
        }
    }
}
