//! Degeneracy counting and Hecke operators in rank two.
//!
//! For a monic prime pi of degree d with residue cardinality P = q^d,
//! the superlattices L' of a rank-r lattice L with L'/L = (A/pi)^i
//! correspond to i-dimensional subspaces of F_P^r; their count is the
//! Gaussian binomial c_{r,i}(P), computed exactly and cross-checked by
//! reduced-row-echelon enumeration.
//!
//! In rank two the operator acting on t-expansions takes the closed
//! form (weight k, T_{pi,1})
//!   (T f)(t) = pi^k f(t_pi) + sum_{n>=1} a_n G_{n,W}(pi t),
//! where W is the pi-torsion module of the boundary (F_q-dimension d),
//! and T_{pi,2} f = pi^k f.  The first term is also computed by an
//! unsimplified route - rescale the boundary lattice by pi and expand in
//! the superlattice's own uniformizer - for cross-checking.

use crate::error::{Error, Result};
use crate::expand::boundary_goss_table;
use crate::field::{Gf, GfElem};
use crate::goss::GossTable;
use crate::graded::GradedElem;
use crate::poly::{PolyA, RatK};
use crate::skew::torsion_exp_coeffs;
use crate::texp::{t_a_series, TExp};

/// Gaussian binomial c_{r,i}(P): the number of i-dimensional subspaces
/// of an r-dimensional space over a field with P elements.  Every
/// partial product below is itself a Gaussian binomial, so the division
/// is exact at each step.
pub fn gaussian_count(r: u32, i: u32, cardinality: u64) -> Result<u128> {
    if i > r {
        return Ok(0);
    }
    let p = cardinality as u128;
    let pow = |e: u32| -> Result<u128> {
        p.checked_pow(e)
            .ok_or_else(|| Error::TooLarge(format!("{cardinality}^{e}")))
    };
    let mut c: u128 = 1;
    for j in 1..=i {
        let num = pow(r - i + j)? - 1;
        c = c
            .checked_mul(num)
            .ok_or_else(|| Error::TooLarge("subspace count".into()))?;
        let den = pow(j)? - 1;
        debug_assert_eq!(c % den, 0);
        c /= den;
    }
    Ok(c)
}

/// The deletion/contraction recursion
/// c_{r,i} = c_{r-1,i} + P^(r-i) c_{r-1,i-1}.
pub fn gaussian_recursion_holds(r: u32, i: u32, cardinality: u64) -> Result<bool> {
    if r == 0 || i == 0 || i > r {
        return Ok(true);
    }
    let lhs = gaussian_count(r, i, cardinality)?;
    let keep = gaussian_count(r - 1, i, cardinality)?;
    let drop = gaussian_count(r - 1, i - 1, cardinality)?;
    let scale = (cardinality as u128).pow(r - i);
    Ok(lhs == keep + scale * drop)
}

/// An i-dimensional subspace of F_P^r as its canonical reduced
/// row-echelon basis (rows are basis vectors).
pub type Subspace = Vec<Vec<GfElem>>;

/// Enumerate all i-dimensional subspaces in canonical form.
pub fn enumerate_subspaces(fp: &Gf, r: u32, i: u32) -> Vec<Subspace> {
    let r = r as usize;
    let i = i as usize;
    let mut out = vec![];
    if i > r {
        return out;
    }
    if i == 0 {
        out.push(vec![]);
        return out;
    }
    // choose pivot columns, then run an odometer over the free entries
    let mut pivots: Vec<usize> = (0..i).collect();
    loop {
        let mut free: Vec<(usize, usize)> = vec![];
        for (row, &pj) in pivots.iter().enumerate() {
            for col in pj + 1..r {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let q = fp.q() as u64;
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut m = vec![vec![0 as GfElem; r]; i];
            for (row, &pj) in pivots.iter().enumerate() {
                m[row][pj] = 1;
            }
            let mut rest = code;
            for &(row, col) in &free {
                m[row][col] = (rest % q) as GfElem;
                rest /= q;
            }
            out.push(m);
        }
        // next pivot combination in lexicographic order
        let mut k = i;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if pivots[k] < r - (i - k) {
                pivots[k] += 1;
                for l in k + 1..i {
                    pivots[l] = pivots[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Is the subspace contained in the hyperplane x_1 = 0?  In canonical
/// form this happens exactly when no basis row has a nonzero first
/// coordinate.
pub fn in_first_hyperplane(sub: &Subspace) -> bool {
    sub.iter().all(|row| row.first().map(|&x| x == 0).unwrap_or(true))
}

/// Membership test against the canonical basis.
pub fn subspace_contains(fp: &Gf, sub: &Subspace, v: &[GfElem]) -> bool {
    let mut v = v.to_vec();
    for row in sub {
        let pj = match row.iter().position(|&x| x != 0) {
            Some(j) => j,
            None => continue,
        };
        let c = v[pj];
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(row.iter()) {
                *x = fp.sub(*x, fp.mul(c, y));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

fn check_prime(pi: &PolyA) -> Result<u32> {
    if !pi.is_monic() {
        return Err(Error::NotMonic);
    }
    if !pi.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(pi.deg().unwrap() as u32)
}

/// Goss table of the pi-torsion module W of the rank-one boundary: a
/// finite module of F_q-dimension deg(pi).
pub fn torsion_goss_table(field: &Gf, pi: &PolyA, kmax: usize) -> Result<GossTable<GradedElem>> {
    let d = check_prime(pi)?;
    let alphas = torsion_exp_coeffs(field, 1, pi)?;
    GossTable::build(
        field.q() as u64,
        field.p() as u64,
        GradedElem::one(field, 1),
        alphas[1..].to_vec(),
        Some(d),
        kmax,
    )
}

/// T_{pi,i} on a rank-two expansion of weight k, truncated at n_out.
/// For i = 1 the input must be known to order at least
/// (n_out + 1)/q^d - 1 so the substituted series certifies n_out.
pub fn hecke_r2(f: &TExp, pi: &PolyA, i: u32, n_out: i64) -> Result<TExp> {
    if f.s() != 1 {
        return Err(Error::RankUnsupported { expected: 2, got: f.s() + 1 });
    }
    let d = check_prime(pi)?;
    let k = f.weight();
    let pi_k = RatK::from_poly(pi.clone()).pow(k)?;
    match i {
        2 => Ok(f.truncate(n_out).mul_scalar(&pi_k)),
        1 => {
            let field = f.field();
            let q = field.q() as u64;
            let qd = q
                .checked_pow(d)
                .ok_or_else(|| Error::TooLarge(format!("q^{d}")))? as i64;
            let need = (n_out + 1 + qd - 1) / qd - 1;
            if f.n_max() < need {
                return Err(Error::InsufficientInputOrder { have: f.n_max(), need });
            }
            // the substituted series is truncated to n_out below, so the
            // uniformizer series only needs to be certified that far
            let tlen = ((f.n_max() + 1) * qd - 1).min(n_out + qd);
            let tpi = t_a_series(field, 1, pi, tlen)?;
            let mut out = f.substitute(&tpi)?.mul_scalar(&pi_k).truncate(n_out);
            // torsion part: only n with floor(n/q^d) + 1 <= n_out can reach
            // the window, by the finite-module order bound
            let n_reach = ((n_out - 1) * qd + qd - 1).min(f.n_max());
            if n_reach >= 1 {
                let table = torsion_goss_table(field, pi, n_reach as usize)?;
                let pit = TExp::t(field, 1, n_out).mul_scalar(&RatK::from_poly(pi.clone()));
                for (n, a) in f.coeffs() {
                    if n < 1 || n > n_reach {
                        continue;
                    }
                    let g = TExp::goss_eval(&table, n as usize, &pit)?;
                    if g.is_zero() {
                        continue;
                    }
                    out = out.add(&g.mul_graded(a).truncate(n_out));
                }
            }
            Ok(out)
        }
        _ => Err(Error::IndexOutOfRange(format!("rank-two operator index {i}"))),
    }
}

/// The principal (non-torsion) term of T_{pi,1} by the unsimplified
/// route: rescale the boundary by pi (coefficients of weight w pick up
/// pi^w) and expand in the superlattice uniformizer pi t_pi.  Must agree
/// with pi^k f(t_pi).
pub fn hecke_r2_principal_unsimplified(f: &TExp, pi: &PolyA, n_out: i64) -> Result<TExp> {
    if f.s() != 1 {
        return Err(Error::RankUnsupported { expected: 2, got: f.s() + 1 });
    }
    let d = check_prime(pi)?;
    let qd = (f.field().q() as u64).pow(d) as i64;
    let scaled = f.homothety_scale(&RatK::from_poly(pi.clone()))?;
    let tlen = ((f.n_max() + 1) * qd - 1).min(n_out + qd);
    let tpi = t_a_series(f.field(), 1, pi, tlen)?;
    let u = tpi.mul_scalar(&RatK::from_poly(pi.clone()));
    Ok(scaled.substitute(&u)?.truncate(n_out))
}

/// The closed-form image of the single Goss term G_n(t_a) under the
/// principal rank-two operator:
///   pi^n G_n(t_{a pi})               when pi divides a,
///   pi^n G_n(t_{a pi}) + pi^n G_n(t_a)  when it does not,
/// with G_n the Goss polynomial of the rank-one boundary.  This is an
/// independent route for the same series as hecke_r2 applied to the
/// expansion of G_n(t_a).
pub fn hecke_on_goss_term(
    field: &Gf,
    n: u64,
    a: &PolyA,
    pi: &PolyA,
    n_out: i64,
) -> Result<TExp> {
    check_prime(pi)?;
    if n == 0 || a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let table = boundary_goss_table(field, 1, n as usize)?;
    let typ = (n as i64).rem_euclid((field.q() as i64 - 1).max(1));
    let mut out = TExp::zero(field, 1, n as i64, typ, n_out);
    let t_api = t_a_series(field, 1, &a.mul(pi), n_out)?;
    let g = TExp::goss_eval(&table, n as usize, &t_api)?.truncate(n_out);
    if !g.is_zero() {
        out = out.add(&g);
    }
    if !a.rem(pi).is_zero() {
        let t_a = t_a_series(field, 1, a, n_out)?;
        let g = TExp::goss_eval(&table, n as usize, &t_a)?.truncate(n_out);
        if !g.is_zero() {
            out = out.add(&g);
        }
    }
    Ok(out.mul_scalar(&RatK::from_poly(pi.clone()).pow(n as i64)?))
}

/// Apply T_{pi,i}, certify proportionality to f across the window, and
/// return the eigenvalue.
pub fn eigenvalue(f: &TExp, pi: &PolyA, i: u32, n_out: i64) -> Result<RatK> {
    let tf = hecke_r2(f, pi, i, n_out)?;
    proportionality_scalar(&tf, &f.truncate(n_out))
}

/// Does the operator commute with the p-power map on f?  Compares
/// T(f^p) against (T f)^p across the window.
pub fn p_power_commutes(f: &TExp, pi: &PolyA, i: u32, n_out: i64) -> Result<bool> {
    let p = f.field().p() as u64;
    let lhs = hecke_r2(&f.frobenius(p), pi, i, n_out)?;
    let rhs = hecke_r2(f, pi, i, n_out)?.frobenius(p).truncate(n_out);
    Ok(lhs == rhs)
}

/// The scalar lambda with tf = lambda f, certified across the common
/// truncation; fails with NotProportional otherwise.
pub fn proportionality_scalar(tf: &TExp, f: &TExp) -> Result<RatK> {
    let n0 = f.order().ok_or(Error::ZeroInput)?;
    let b = f.coeff(n0)?;
    let a = tf.coeff(n0)?;
    let (m, cb) = b.terms().next().ok_or(Error::ZeroInput)?;
    let lam = a.coeff(m).div(cb)?;
    let nm = tf.n_max().min(f.n_max());
    for n in 0..=nm {
        let want = f.coeff(n)?.mul_scalar(&lam);
        let got = tf.coeff(n)?;
        if want != got {
            return Err(Error::NotProportional(format!(
                "coefficient {n}: expected {want}, got {got}"
            )));
        }
    }
    Ok(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::{g_expansion, h_expansion};

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_count(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_count(2, 1, 5).unwrap(), 6);
        assert_eq!(gaussian_count(3, 1, 2).unwrap(), 7);
        assert_eq!(gaussian_count(3, 3, 9).unwrap(), 1);
        assert_eq!(gaussian_count(3, 0, 9).unwrap(), 1);
        assert_eq!(gaussian_count(2, 3, 2).unwrap(), 0);
        for r in 1..=4 {
            for i in 1..=r {
                for p in [2u64, 3, 4] {
                    assert!(gaussian_recursion_holds(r, i, p).unwrap());
                    // always congruent to 1 modulo the characteristic
                    let c = gaussian_count(r, i, p).unwrap();
                    let ch = if p == 4 { 2 } else { p as u128 };
                    assert_eq!(c % ch, 1, "c_{{{r},{i}}}({p})");
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_counting() {
        let f2 = Gf::new(2, 1).unwrap();
        let subs = enumerate_subspaces(&f2, 3, 1);
        assert_eq!(subs.len(), 7);
        let inside = subs.iter().filter(|s| in_first_hyperplane(s)).count();
        assert_eq!(inside, 3);
        assert_eq!(subs.len() - inside, 4);
        // planes through a fixed nonzero vector
        let planes = enumerate_subspaces(&f2, 3, 2);
        assert_eq!(planes.len(), 7);
        for v in [[1, 0, 0], [1, 1, 0], [1, 1, 1]] {
            let through = planes
                .iter()
                .filter(|s| subspace_contains(&f2, s, &v))
                .count();
            assert_eq!(through as u128, gaussian_count(2, 1, 2).unwrap());
        }
    }

    #[test]
    fn hecke_smoke_g_eigenform() {
        // q = 2, pi = T: g_1 is an eigenform with eigenvalue pi^(q-1) = T
        let f = Gf::new(2, 1).unwrap();
        let pi = PolyA::t(&f);
        let n_out = 4;
        let g = g_expansion(&f, 2, 1, 2 * n_out + 1).unwrap();
        let tg = hecke_r2(&g, &pi, 1, n_out).unwrap();
        let lam = proportionality_scalar(&tg, &g.truncate(n_out)).unwrap();
        assert_eq!(lam, RatK::from_poly(PolyA::t(&f)));
    }

    #[test]
    fn hecke_smoke_h_eigenform() {
        // h has weight q + 1 and eigenvalue pi
        let f = Gf::new(2, 1).unwrap();
        let pi = PolyA::parse(&f, "T+1").unwrap();
        let n_out = 4;
        let h = h_expansion(&f, 2, 2 * n_out + 1).unwrap();
        let th = hecke_r2(&h, &pi, 1, n_out).unwrap();
        let lam = proportionality_scalar(&th, &h.truncate(n_out)).unwrap();
        assert_eq!(lam, RatK::from_poly(pi));
    }

    #[test]
    fn principal_term_routes_agree() {
        let f = Gf::new(3, 1).unwrap();
        let pi = PolyA::t(&f);
        let g = g_expansion(&f, 2, 1, 17).unwrap();
        let direct = {
            let tpi = t_a_series(&f, 1, &pi, 53).unwrap();
            let k = g.weight();
            g.substitute(&tpi)
                .unwrap()
                .mul_scalar(&RatK::from_poly(pi.clone()).pow(k).unwrap())
                .truncate(5)
        };
        let unsimplified = hecke_r2_principal_unsimplified(&g, &pi, 5).unwrap();
        assert_eq!(direct, unsimplified);
    }

    #[test]
    fn second_operator_is_scalar() {
        let f = Gf::new(2, 1).unwrap();
        let pi = PolyA::parse(&f, "T^2+T+1").unwrap();
        let g = g_expansion(&f, 2, 1, 6).unwrap();
        let tg = hecke_r2(&g, &pi, 2, 6).unwrap();
        let lam = proportionality_scalar(&tg, &g).unwrap();
        // pi^k with k = q - 1 = 1
        assert_eq!(lam, RatK::from_poly(pi));
    }

    #[test]
    fn goss_term_routes_agree() {
        // closed-form image of a Goss term vs. the generic operator
        let f = Gf::new(2, 1).unwrap();
        let pi = PolyA::t(&f);
        let n_out = 10;
        let table = boundary_goss_table(&f, 1, 3).unwrap();
        for a in [PolyA::one(&f), PolyA::t(&f), PolyA::parse(&f, "T+1").unwrap()] {
            for n in 1..=3usize {
                let ta = t_a_series(&f, 1, &a, 2 * (n_out + 1) - 1).unwrap();
                let fa = TExp::goss_eval(&table, n, &ta).unwrap();
                let lhs = hecke_r2(&fa, &pi, 1, n_out).unwrap();
                let rhs = hecke_on_goss_term(&f, n as u64, &a, &pi, n_out).unwrap();
                assert_eq!(lhs, rhs, "a={a}, n={n}");
            }
        }
    }

    #[test]
    fn operator_input_validation() {
        let f = Gf::new(2, 1).unwrap();
        let g = g_expansion(&f, 2, 1, 4).unwrap();
        let reducible = PolyA::parse(&f, "T^2+1").unwrap();
        assert!(matches!(
            hecke_r2(&g, &reducible, 1, 2),
            Err(Error::NotIrreducible)
        ));
        let f3 = Gf::new(3, 1).unwrap();
        let g3 = g_expansion(&f3, 2, 1, 4).unwrap();
        let nonmonic = PolyA::parse(&f3, "2*T").unwrap();
        assert!(matches!(hecke_r2(&g3, &nonmonic, 1, 2), Err(Error::NotMonic)));
        // truncation too short to certify the requested window
        let pi = PolyA::parse(&f, "T^2+T+1").unwrap();
        assert!(matches!(
            hecke_r2(&g, &pi, 1, 40),
            Err(Error::InsufficientInputOrder { .. })
        ));
    }
}
