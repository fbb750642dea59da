//! Arithmetic in GF(p^m).
//!
//! Elements are stored by their canonical representation: the coefficient
//! vector `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` of the polynomial basis read as
//! the base-`p` integer `c_0 + c_1 p + ...`. Multiplication goes through
//! log/antilog tables built from a generator of the multiplicative group.
//!
//! In debug builds every element carries a tag identifying its field and
//! mixed-field operations panic; release builds drop the tag.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

/// Addition tables are kept for fields up to this order.
const ADD_TABLE_MAX: u32 = 256;

#[derive(Clone, Copy)]
pub struct Elem {
    repr: u16,
    #[cfg(debug_assertions)]
    tag: u64,
}

impl Elem {
    #[inline]
    pub fn repr(self) -> u32 {
        self.repr as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.repr == 0
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        #[cfg(debug_assertions)]
        debug_assert_eq!(self.tag, other.tag, "comparing elements of different fields");
        self.repr == other.repr
    }
}

impl Eq for Elem {}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.repr.cmp(&other.repr)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length `m + 1`.
    modulus: Vec<u32>,
    generator: u16,
    tag: u64,
    exp: Vec<u16>,
    log: Vec<u16>,
    neg: Vec<u16>,
    add: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^m`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d)).unwrap();
    let (mut rest, mut m) = (q, 0);
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over Z_p as coefficient vectors, low degree first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let idx = dr - db + i;
            let sub = (factor as u64 * bc as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Whether the monic polynomial `f` (low coefficient first) is irreducible
/// over Z_p, by trial division with every monic polynomial of degree at most
/// `deg f / 2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = poly_trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for dg in 1..=deg / 2 {
        let count = (p as u64).pow(dg as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, dg as u32);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `m` over Z_p.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = digits(low as u32, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    /// GF(p^m) with the default modulus.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Self::with_max_order(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u32, m: u32, max_order: u64) -> Result<Field> {
        Self::check_params(p, m, max_order)?;
        Self::build(p, m, default_modulus(p, m))
    }

    /// GF(q) for a prime power `q`.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q)?;
        Self::new(p, m)
    }

    /// GF(p^m) with a caller-chosen monic irreducible modulus, low coefficient
    /// first. For `m = 1` the modulus is ignored beyond its degree.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        let f = poly_trim(modulus.to_vec());
        if f.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let m = (f.len() - 1) as u32;
        Self::check_params(p, m, DEFAULT_MAX_ORDER)?;
        if f.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
        }
        if f[m as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(&f, p) {
            return Err(Error::InvalidModulus(format!("{} is reducible over GF({p})", format_poly(&f))));
        }
        if m == 1 {
            return Self::build(p, 1, vec![0, 1]);
        }
        Self::build(p, m, f)
    }

    fn check_params(p: u32, m: u32, max_order: u64) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::domain("extension degree must be at least 1"));
        }
        let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        let max = max_order.min(DEFAULT_MAX_ORDER);
        if order > max {
            return Err(Error::OrderTooLarge { order, max });
        }
        Ok(())
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Field> {
        let q = p.pow(m);
        let slow_mul = |a: u32, b: u32| -> u32 {
            if m == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let (da, db) = (digits(a, p, m), digits(b, p, m));
            let mut prod = vec![0u32; 2 * m as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(m as usize, 0);
            undigits(&r, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let (mut acc, mut base) = (1u32, a);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| factors.iter().all(|&f| slow_pow(g, order / f) != 1))
                .ok_or_else(|| Error::InvalidModulus("no generator found".into()))?
        };

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; q as usize];
        let mut seen = vec![false; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().take(order as usize).enumerate() {
            if seen[cur as usize] {
                return Err(Error::InvalidModulus("generator order is not q - 1".into()));
            }
            seen[cur as usize] = true;
            *slot = cur as u16;
            log[cur as usize] = i as u16;
            cur = slow_mul(cur, generator);
        }
        if cur != 1 {
            return Err(Error::InvalidModulus("generator order is not q - 1".into()));
        }
        for i in order as usize..exp.len() {
            exp[i] = exp[i - order as usize];
        }

        let digit_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, m), digits(b, p, m));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, p)
        };
        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let s: Vec<u32> = digits(a, p, m).iter().map(|&x| (p - x) % p).collect();
                undigits(&s, p) as u16
            })
            .collect();
        let add = (q <= ADD_TABLE_MAX && p != 2).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b) as u16;
                }
            }
            t
        });

        let tag = (p as u64) << 40 | undigits(&modulus, p) as u64;
        Ok(Field { p, m, q, modulus, generator: generator as u16, tag, exp, log, neg, add })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        format_poly(&self.modulus)
    }

    pub fn generator(&self) -> Elem {
        self.wrap(self.generator)
    }

    #[inline]
    fn wrap(&self, repr: u16) -> Elem {
        Elem {
            repr,
            #[cfg(debug_assertions)]
            tag: self.tag,
        }
    }

    #[inline]
    fn check(&self, a: Elem) {
        #[cfg(debug_assertions)]
        assert_eq!(a.tag, self.tag, "element used with a foreign field");
        let _ = a;
    }

    /// Whether `a` was produced by this field. Always true in release builds.
    pub fn owns(&self, a: Elem) -> bool {
        #[cfg(debug_assertions)]
        {
            a.tag == self.tag
        }
        #[cfg(not(debug_assertions))]
        {
            let _ = a;
            true
        }
    }

    pub fn elem(&self, repr: u32) -> Result<Elem> {
        if repr >= self.q {
            return Err(Error::ElementOutOfRange { repr: repr as u64, q: self.q });
        }
        Ok(self.wrap(repr as u16))
    }

    pub fn zero(&self) -> Elem {
        self.wrap(0)
    }

    pub fn one(&self) -> Elem {
        self.wrap(1)
    }

    /// All elements in ascending representation order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(move |r| self.wrap(r as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(move |r| self.wrap(r as u16))
    }

    // Representation-level arithmetic for the enumeration loops.

    #[inline]
    pub(crate) fn add_repr(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &self.add {
            return t[a as usize * self.q as usize + b as usize];
        }
        if self.m == 1 {
            let s = a as u32 + b as u32;
            return if s >= self.q { (s - self.q) as u16 } else { s as u16 };
        }
        let (mut x, mut y, mut out, mut place) = (a as u32, b as u32, 0u32, 1u32);
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out as u16
    }

    #[inline]
    pub(crate) fn neg_repr(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn mul_repr(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    #[inline]
    pub(crate) fn inv_repr(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        let order = self.q as usize - 1;
        self.exp[(order - self.log[a as usize] as usize) % order]
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        self.wrap(self.add_repr(a.repr, b.repr))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.check(a);
        self.wrap(self.neg_repr(a.repr))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        self.wrap(self.add_repr(a.repr, self.neg_repr(b.repr)))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.check(a);
        self.check(b);
        self.wrap(self.mul_repr(a.repr, b.repr))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.wrap(self.inv_repr(a.repr)))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        self.check(a);
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        let order = self.q as u64 - 1;
        let l = self.log[a.repr as usize] as u64 * (e % order) % order;
        self.wrap(self.exp[l as usize])
    }

    /// Checked binary operation: rejects foreign operands in every build and
    /// reports division by zero as an error.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Elem) -> Result<Elem> {
        if a.repr as u32 >= self.q || b.repr as u32 >= self.q || !self.owns(a) || !self.owns(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }
}

/// Renders a polynomial (low coefficient first) as `x^2 + x + 1`.
pub fn format_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        let (a, b) = (f.elem(3).unwrap(), f.elem(4).unwrap());
        assert_eq!(f.mul(a, b).repr(), 2);
        let g7 = Field::new(7, 1).unwrap();
        assert_eq!(g7.inv(g7.elem(3).unwrap()).unwrap().repr(), 5);
    }

    #[test]
    fn gf4_default_modulus() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x has repr 2, x + 1 has repr 3.
        let x = f.elem(2).unwrap();
        assert_eq!(f.mul(x, x).repr(), 3);
        for a in f.nonzero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 17), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(Field::from_order(12), Err(Error::NotPrimePower(12))));
        assert!(Field::with_modulus(2, &[1, 0, 1]).is_err()); // x^2 + 1 = (x + 1)^2
        assert!(Field::with_modulus(3, &[1, 0, 2]).is_err()); // not monic
    }

    #[test]
    fn custom_modulus_gf8() {
        let f = Field::with_modulus(2, &[1, 0, 1, 1]).unwrap();
        assert_eq!(f.modulus_string(), "x^3 + x^2 + 1");
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(7, 1).unwrap();
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
        assert!(matches!(f.arith(ArithOp::Div, f.one(), f.zero()), Err(Error::ZeroInverse)));
    }

    #[cfg(debug_assertions)]
    #[test]
    fn cross_field_is_rejected() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let r = f5.arith(ArithOp::Add, f5.one(), f7.one());
        assert!(matches!(r, Err(Error::FieldMismatch)));
    }

    fn exhaustive_axioms(f: &Field) {
        let els: Vec<Elem> = f.elements().collect();
        let q = f.order() as usize;
        if q <= 16 {
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(q as u64);
            for _ in 0..100_000 {
                let a = els[rng.gen_range(0..q)];
                let b = els[rng.gen_range(0..q)];
                let c = els[rng.gen_range(0..q)];
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
        for &a in &els {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
        // Adding p copies of 1 gives 0.
        let mut acc = f.zero();
        for _ in 0..f.characteristic() {
            acc = f.add(acc, f.one());
        }
        assert_eq!(acc, f.zero());
    }

    #[test]
    fn field_axioms_up_to_256() {
        for q in 2..=256u64 {
            if let Ok(f) = Field::from_order(q) {
                exhaustive_axioms(&f);
            }
        }
    }

    #[test]
    fn generator_enumerates_the_group() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256, 65536] {
            let f = Field::from_order(q).unwrap();
            let g = f.generator();
            let mut seen = vec![false; q as usize];
            let mut cur = f.one();
            for _ in 0..q - 1 {
                assert!(!seen[cur.repr() as usize]);
                seen[cur.repr() as usize] = true;
                cur = f.mul(cur, g);
            }
            assert_eq!(cur, f.one());
            assert!(!seen[0]);
        }
    }

    #[test]
    fn polynomial_reduction_oracle_gf9() {
        // GF(9) = Z_3[x]/(x^2 + 1): x * x = -1 = 2.
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let x = f.elem(3).unwrap();
        assert_eq!(f.mul(x, x).repr(), 2);
        // (x + 1)(x + 2) = x^2 + 3x + 2 = x^2 + 2 = 1
        let a = f.elem(4).unwrap();
        let b = f.elem(5).unwrap();
        assert_eq!(f.mul(a, b).repr(), 1);
    }

    #[test]
    fn pow_and_default_moduli() {
        let f = Field::new(13, 1).unwrap();
        let a = f.elem(2).unwrap();
        assert_eq!(f.pow(a, 12), f.one());
        assert_eq!(f.pow(f.zero(), 0), f.one());
        assert_eq!(default_modulus(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(default_modulus(5, 2), vec![2, 0, 1]);
    }
}
