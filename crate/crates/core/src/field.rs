//! Small finite fields.
//!
//! Two layers: `Gf` is the coefficient field F_q (q = p^e) of the base ring
//! A = F_q[T], and `GfExt` is an unramified extension F_{q^m} used as the
//! residue field of numeric Laurent series.  Elements are integer codes:
//! a `GfElem` encodes the base-p digits of its polynomial-basis
//! representation (low digit first), a `GfExtElem` encodes base-q digits
//! whose entries are `GfElem` codes.  The constant embedding F_q -> F_{q^m}
//! is therefore the identity on codes.
//!
//! The modulus is not a choice the caller makes: for every (p, e) we take
//! the *first* monic irreducible of degree e in lexicographic order
//! (coefficients compared from the leading one down, i.e. increasing
//! integer code), and likewise for the extension modulus over F_q.  This
//! pins the element encoding so that serialized data is stable.
//!
//! All operations go through tables built at construction time; fields are
//! cheap handles (`Rc`) and compare equal iff they have the same (p, e)
//! resp. (p, e, m).

use crate::error::{Error, Result};
use std::rc::Rc;

/// Largest supported base-field order.
pub const MAX_Q: u32 = 64;
/// Largest supported extension order q^m.
pub const MAX_EXT_ORDER: u64 = 4096;

pub type GfElem = u16;
pub type GfExtElem = u32;

#[derive(Debug)]
struct GfRepr {
    p: u16,
    e: u32,
    q: u16,
    /// Non-leading coefficients of the monic modulus, low to high, length e.
    modulus: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

/// The coefficient field F_q.
#[derive(Clone, Debug)]
pub struct Gf(Rc<GfRepr>);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}
impl Eq for Gf {}

fn is_prime(n: u16) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n as u32 {
        if n as u32 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// --- dense polynomial helpers over F_p (digit vectors, low to high) ---

fn fp_trim(a: &mut Vec<u16>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mul(p: u16, a: &[u16], b: &[u16]) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u32 * y as u32) % p as u32;
        }
    }
    let mut out: Vec<u16> = out.into_iter().map(|c| c as u16).collect();
    fp_trim(&mut out);
    out
}

/// Remainder of `a` by the monic polynomial `m` (full coefficients).
fn fp_rem(p: u16, mut a: Vec<u16>, m: &[u16]) -> Vec<u16> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            // subtract lead * m * X^shift; this zeroes the top coefficient
            for i in 0..dm {
                let v = (a[shift + i] as u32 + (p as u32 - lead as u32) * m[i] as u32)
                    % p as u32;
                a[shift + i] = v as u16;
            }
        }
        a.pop();
    }
    fp_trim(&mut a);
    a
}

/// Monic degree-d candidates over F_p in lexicographic (= code) order.
fn fp_candidates(p: u16, d: u32) -> impl Iterator<Item = Vec<u16>> {
    let n: u64 = (p as u64).pow(d);
    (0..n).map(move |code| {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut rest = code;
        for _ in 0..d {
            c.push((rest % p as u64) as u16);
            rest /= p as u64;
        }
        c.push(1);
        c
    })
}

fn fp_is_irreducible(p: u16, f: &[u16]) -> bool {
    let d = (f.len() - 1) as u32;
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for g in fp_candidates(p, dd) {
            if fp_rem(p, f.to_vec(), &g).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Gf {
    /// F_{p^e} with the canonical lexicographically-first modulus.
    pub fn new(p: u16, e: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::TooLarge(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::TooLarge("extension degree 0".into()));
        }
        let q = (p as u64).pow(e);
        if q > MAX_Q as u64 {
            return Err(Error::TooLarge(format!("field order {q} exceeds {MAX_Q}")));
        }
        let q = q as u16;
        let modulus_full = fp_candidates(p, e)
            .find(|f| fp_is_irreducible(p, f))
            .expect("an irreducible of every degree exists");
        let modulus: Vec<u16> = modulus_full[..e as usize].to_vec();

        // element code <-> digit vector
        let digits = |a: u16| -> Vec<u16> {
            let mut v = Vec::with_capacity(e as usize);
            let mut rest = a;
            for _ in 0..e {
                v.push(rest % p);
                rest /= p;
            }
            fp_trim(&mut v);
            v
        };
        let code = |v: &[u16]| -> u16 {
            let mut c = 0u16;
            for &d in v.iter().rev() {
                c = c * p + d;
            }
            c
        };

        let mut mul = vec![0u16; q as usize * q as usize];
        for a in 0..q {
            for b in 0..q {
                let prod = fp_rem(p, fp_mul(p, &digits(a), &digits(b)), &modulus_full);
                mul[a as usize * q as usize + b as usize] = code(&prod);
            }
        }
        let mut inv = vec![0u16; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[a as usize * q as usize + b as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
            debug_assert!(inv[a as usize] != 0);
        }
        Ok(Gf(Rc::new(GfRepr { p, e, q, modulus, mul, inv })))
    }

    /// F_q for a prime power q.
    pub fn of_order(q: u32) -> Result<Gf> {
        for p in 2..=q {
            if is_prime(p as u16) && q % p == 0 {
                let mut e = 0u32;
                let mut rest = q;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                if rest != 1 {
                    return Err(Error::TooLarge(format!("{q} is not a prime power")));
                }
                return Gf::new(p as u16, e);
            }
        }
        Err(Error::TooLarge(format!("{q} is not a prime power")))
    }

    pub fn p(&self) -> u16 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u16 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u16] {
        &self.0.modulus
    }

    pub fn zero(&self) -> GfElem {
        0
    }
    pub fn one(&self) -> GfElem {
        1
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        let p = self.0.p;
        let mut out = 0u16;
        let (mut a, mut b) = (a, b);
        let mut place = 1u16;
        for _ in 0..self.0.e {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place = place.saturating_mul(p);
        }
        out
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        let p = self.0.p;
        let mut out = 0u16;
        let mut a = a;
        let mut place = 1u16;
        for _ in 0..self.0.e {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * place;
            a /= p;
            place = place.saturating_mul(p);
        }
        out
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    /// Panics on zero: callers must guard.
    pub fn inv(&self, a: GfElem) -> GfElem {
        assert!(a != 0, "inverse of zero in F_{}", self.0.q);
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: GfElem, n: u64) -> GfElem {
        let mut base = a;
        let mut n = n;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> F_p subset F_q.
    pub fn from_int(&self, n: i64) -> GfElem {
        let p = self.0.p as i64;
        (n.rem_euclid(p)) as u16
    }

    pub fn elems(&self) -> impl Iterator<Item = GfElem> {
        0..self.0.q
    }
}

#[derive(Debug)]
struct GfExtRepr {
    base: Gf,
    m: u32,
    order: u32,
    /// Non-leading coefficients of the monic modulus over F_q, length m.
    modulus: Vec<GfElem>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// Unramified extension F_{q^m} of a `Gf`.
#[derive(Clone, Debug)]
pub struct GfExt(Rc<GfExtRepr>);

impl PartialEq for GfExt {
    fn eq(&self, other: &Self) -> bool {
        self.0.base == other.0.base && self.0.m == other.0.m
    }
}
impl Eq for GfExt {}

// --- dense polynomial helpers over F_q (GfElem vectors, low to high) ---

fn fq_trim(a: &mut Vec<GfElem>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fq_mul(f: &Gf, a: &[GfElem], b: &[GfElem]) -> Vec<GfElem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    fq_trim(&mut out);
    out
}

fn fq_rem(f: &Gf, mut a: Vec<GfElem>, m: &[GfElem]) -> Vec<GfElem> {
    let dm = m.len() - 1;
    loop {
        fq_trim(&mut a);
        if a.len() <= dm {
            return a;
        }
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for i in 0..dm {
            a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
        }
        a.pop();
    }
}

fn fq_candidates(f: &Gf, d: u32) -> impl Iterator<Item = Vec<GfElem>> + '_ {
    let q = f.q() as u64;
    let n = q.pow(d);
    (0..n).map(move |code| {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut rest = code;
        for _ in 0..d {
            c.push((rest % q) as u16);
            rest /= q;
        }
        c.push(1);
        c
    })
}

fn fq_is_irreducible(f: &Gf, cand: &[GfElem]) -> bool {
    let d = (cand.len() - 1) as u32;
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for g in fq_candidates(f, dd) {
            if fq_rem(f, cand.to_vec(), &g).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GfExt {
    pub fn new(base: &Gf, m: u32) -> Result<GfExt> {
        if m == 0 {
            return Err(Error::TooLarge("extension degree 0".into()));
        }
        let order = (base.q() as u64).pow(m);
        if order > MAX_EXT_ORDER {
            return Err(Error::TooLarge(format!(
                "extension order {order} exceeds {MAX_EXT_ORDER}"
            )));
        }
        let order = order as u32;
        let modulus_full = fq_candidates(base, m)
            .find(|c| fq_is_irreducible(base, c))
            .expect("an irreducible of every degree exists");
        let modulus: Vec<GfElem> = modulus_full[..m as usize].to_vec();

        let q = base.q() as u32;
        let digits = |a: u32| -> Vec<GfElem> {
            let mut v = Vec::with_capacity(m as usize);
            let mut rest = a;
            for _ in 0..m {
                v.push((rest % q) as u16);
                rest /= q;
            }
            fq_trim(&mut v);
            v
        };
        let code = |v: &[GfElem]| -> u32 {
            let mut c = 0u32;
            for &d in v.iter().rev() {
                c = c * q + d as u32;
            }
            c
        };

        let mut mul = vec![0u32; order as usize * order as usize];
        for a in 0..order {
            for b in 0..=a {
                let prod = fq_rem(base, fq_mul(base, &digits(a), &digits(b)), &modulus_full);
                let cc = code(&prod);
                mul[a as usize * order as usize + b as usize] = cc;
                mul[b as usize * order as usize + a as usize] = cc;
            }
        }
        let mut inv = vec![0u32; order as usize];
        for a in 1..order {
            for b in 1..order {
                if mul[a as usize * order as usize + b as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
            debug_assert!(inv[a as usize] != 0);
        }
        Ok(GfExt(Rc::new(GfExtRepr { base: base.clone(), m, order, modulus, mul, inv })))
    }

    pub fn base(&self) -> &Gf {
        &self.0.base
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn order(&self) -> u32 {
        self.0.order
    }
    pub fn modulus(&self) -> &[GfElem] {
        &self.0.modulus
    }

    /// Constant embedding F_q -> F_{q^m}; identity on codes.
    pub fn lift(&self, a: GfElem) -> GfExtElem {
        a as u32
    }

    /// The class of the adjoined root (code q); equals `1` when m = 1 is
    /// degenerate, so callers wanting a generator should use m >= 2.
    pub fn gen(&self) -> GfExtElem {
        self.0.base.q() as u32
    }

    pub fn zero(&self) -> GfExtElem {
        0
    }
    pub fn one(&self) -> GfExtElem {
        1
    }

    pub fn add(&self, a: GfExtElem, b: GfExtElem) -> GfExtElem {
        let q = self.0.base.q() as u32;
        let mut out = 0u32;
        let (mut a, mut b) = (a, b);
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let s = self.0.base.add((a % q) as u16, (b % q) as u16) as u32;
            out += s * place;
            a /= q;
            b /= q;
            place = place.saturating_mul(q);
        }
        out
    }

    pub fn neg(&self, a: GfExtElem) -> GfExtElem {
        let q = self.0.base.q() as u32;
        let mut out = 0u32;
        let mut a = a;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            out += self.0.base.neg((a % q) as u16) as u32 * place;
            a /= q;
            place = place.saturating_mul(q);
        }
        out
    }

    pub fn sub(&self, a: GfExtElem, b: GfExtElem) -> GfExtElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfExtElem, b: GfExtElem) -> GfExtElem {
        self.0.mul[a as usize * self.0.order as usize + b as usize]
    }

    pub fn inv(&self, a: GfExtElem) -> GfExtElem {
        assert!(a != 0, "inverse of zero in F_{}", self.0.order);
        self.0.inv[a as usize]
    }

    pub fn pow(&self, a: GfExtElem, n: u64) -> GfExtElem {
        let mut base = a;
        let mut n = n;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn from_int(&self, n: i64) -> GfExtElem {
        self.lift(self.0.base.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_are_the_lex_first_irreducibles() {
        // F_4 = F_2[x]/(x^2+x+1), F_8 = F_2[x]/(x^3+x+1),
        // F_9 = F_3[x]/(x^2+1), F_27 = F_3[x]/(x^3+2x+1).
        assert_eq!(Gf::new(2, 2).unwrap().modulus(), &[1, 1]);
        assert_eq!(Gf::new(2, 3).unwrap().modulus(), &[1, 1, 0]);
        assert_eq!(Gf::new(3, 2).unwrap().modulus(), &[1, 0]);
        assert_eq!(Gf::new(3, 3).unwrap().modulus(), &[1, 2, 0]);
    }

    #[test]
    fn f4_arithmetic() {
        let f = Gf::new(2, 2).unwrap();
        let g = 2; // the adjoined root
        assert_eq!(f.mul(g, g), 3); // g^2 = g + 1
        assert_eq!(f.mul(f.mul(g, g), g), 1); // g^3 = 1
        assert_eq!(f.inv(g), 3);
        assert_eq!(f.add(g, 3), 1);
    }

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f = Gf::new(5, 1).unwrap();
        for a in 0..5u16 {
            for b in 0..5u16 {
                assert_eq!(f.add(a, b), (a + b) % 5);
                assert_eq!(f.mul(a, b), (a * b) % 5);
            }
        }
        assert_eq!(f.from_int(-1), 4);
    }

    #[test]
    fn of_order_factors_prime_powers() {
        assert_eq!(Gf::of_order(4).unwrap(), Gf::new(2, 2).unwrap());
        assert_eq!(Gf::of_order(27).unwrap(), Gf::new(3, 3).unwrap());
        assert!(Gf::of_order(6).is_err());
        assert!(Gf::of_order(128).is_err());
    }

    #[test]
    fn extension_respects_base_embedding() {
        let f2 = Gf::new(2, 1).unwrap();
        let f4 = GfExt::new(&f2, 2).unwrap();
        // same modulus as the direct construction of F_4
        assert_eq!(f4.modulus(), &[1, 1]);
        let z = f4.gen();
        assert_eq!(f4.mul(z, z), f4.add(z, 1)); // z^2 = z + 1
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f4.lift(f2.add(a, b)), f4.add(f4.lift(a), f4.lift(b)));
            }
        }
    }

    #[test]
    fn extension_field_axioms_smoke() {
        let f3 = Gf::new(3, 1).unwrap();
        let f9 = GfExt::new(&f3, 2).unwrap();
        for a in 0..f9.order() {
            assert_eq!(f9.add(a, f9.neg(a)), 0);
            if a != 0 {
                assert_eq!(f9.mul(a, f9.inv(a)), 1);
                assert_eq!(f9.pow(a, 8), 1);
            }
            for b in 0..f9.order() {
                for c in 0..f9.order() {
                    assert_eq!(
                        f9.mul(a, f9.add(b, c)),
                        f9.add(f9.mul(a, b), f9.mul(a, c))
                    );
                }
            }
        }
    }
}
