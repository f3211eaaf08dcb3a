//! Arithmetic in GF(q), q = p^f.
//!
//! Elements are stored as integers in `[0, q)`: the base-p digits of the
//! value are the coefficients of a polynomial of degree `< f`, lowest digit
//! first, reduced modulo a fixed monic irreducible polynomial. Multiplication
//! goes through exp/log tables built from a primitive element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Element of a [`Field`], encoded as an integer in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    /// Unchecked constructor for values already known to be `< q`.
    #[inline]
    pub(crate) fn from_index(v: u32) -> FieldElement {
        debug_assert!(v <= u16::MAX as u32);
        FieldElement(v as u16)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so log a + log b never needs a reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

/// The finite field GF(p^f). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.f == other.0.f)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.f)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small; Fermat.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division against every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let f = modulus.len() - 1;
    let da = digits(a, p, f);
    let db = digits(b, p, f);
    let mut prod = vec![0u32; 2 * f];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem(&prod, modulus, p);
    undigits(&r, p)
}

fn slow_pow(mut a: u32, mut e: u64, p: u32, modulus: &[u32]) -> u32 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(acc, a, p, modulus);
        }
        a = slow_mul(a, a, p, modulus);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds GF(p^f) using the smallest monic irreducible modulus, where
    /// candidates `x^f + c_{f-1} x^{f-1} + ... + c_0` are ordered by the
    /// integer `sum c_i p^i`.
    pub fn new(p: u32, f: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if f < 1 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{f} exceeds the supported order {MAX_ORDER}")))?;

        let modulus = (0..q)
            .map(|low| {
                let mut m = digits(low, p, f as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| slow_pow(g, (order / r) as u64, p, &modulus) != 1)
                })
                .expect("multiplicative group is cyclic")
        };

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x as u16;
            exp[(i + order) as usize] = x as u16;
            log[x as usize] = i;
            x = slow_mul(x, generator, p, &modulus);
        }

        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, f as usize).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p) as u16
            })
            .collect();

        let add = (p != 2 && q <= 256).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, f) as u16;
                }
            }
            t
        });

        Ok(Field(Arc::new(Tables { p, f, q, modulus, exp, log, add, neg })))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Field::new(p, f)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.f
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Coefficients `[c_0, ..., c_f]` of the modulus, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elem(&self, v: u32) -> Result<FieldElement> {
        if v < self.0.q {
            Ok(FieldElement(v as u16))
        } else {
            Err(Error::OutOfRange(format!("element {v} of {self}")))
        }
    }

    /// The image of an integer under `Z -> GF(p)`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(|v| FieldElement(v as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.0;
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &t.add {
            Some(table) => FieldElement(table[a.0 as usize * t.q as usize + b.0 as usize]),
            None => FieldElement(digit_add(a.0 as u32, b.0 as u32, t.p, t.f) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.0;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.0;
        let order = t.q - 1;
        Ok(FieldElement(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.0;
        let order = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(t.exp[l as usize])
    }

    /// `a^(p^i)`; the identity when `i` is a multiple of the degree.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> FieldElement {
        let i = i % self.0.f;
        if i == 0 {
            return a;
        }
        self.pow(a, (self.0.p as u64).pow(i))
    }
}

fn digit_add(mut a: u32, mut b: u32, p: u32, f: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..f {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u32,
    f: u32,
    modulus: Vec<u32>,
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRepr { p: self.p(), f: self.degree(), modulus: self.modulus().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FieldRepr::deserialize(d)?;
        let field = Field::new(repr.p, repr.f).map_err(D::Error::custom)?;
        if field.modulus() != repr.modulus.as_slice() {
            return Err(D::Error::custom("modulus differs from the canonical choice"));
        }
        Ok(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Field> {
        [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
            .iter()
            .map(|&q| Field::with_order(q).unwrap())
            .collect()
    }

    #[test]
    fn constructor_examples() {
        let gf2 = Field::new(2, 1).unwrap();
        assert_eq!(gf2.modulus(), &[0, 1]);
        let gf4 = Field::new(2, 2).unwrap();
        assert_eq!(gf4.modulus(), &[1, 1, 1]);
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 0).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::new(2, 16).is_ok());
    }

    #[test]
    fn gf4_modulus_is_the_only_irreducible_quadratic() {
        let irreducible: Vec<u32> = (0..4)
            .filter(|&low| {
                let mut m = digits(low, 2, 2);
                m.push(1);
                // brute force: no root in GF(2) means irreducible for degree 2
                (0..2).all(|x| !(m[0] + m[1] * x + x * x).is_multiple_of(2))
            })
            .collect();
        assert_eq!(irreducible, vec![3]);
    }

    #[test]
    fn arithmetic_examples() {
        let gf2 = Field::prime(2).unwrap();
        assert_eq!(gf2.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
        let gf4 = Field::new(2, 2).unwrap();
        let alpha = gf4.elem(2).unwrap();
        assert_eq!(gf4.mul(alpha, alpha), gf4.elem(3).unwrap());
        let gf5 = Field::prime(5).unwrap();
        assert_eq!(gf5.inv(gf5.elem(2).unwrap()).unwrap(), gf5.elem(3).unwrap());
        assert!(matches!(gf5.inv(FieldElement::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mul_matches_polynomial_reduction() {
        for field in small_fields() {
            for a in field.elements() {
                for b in field.elements() {
                    let slow = slow_mul(a.value(), b.value(), field.p(), field.modulus());
                    assert_eq!(field.mul(a, b).value(), slow, "{field:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for k in small_fields() {
            for a in k.elements() {
                assert_eq!(k.add(a, k.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElement::ONE);
                }
                for b in k.elements() {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in k.elements() {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for k in small_fields() {
            for a in k.elements() {
                assert_eq!(k.frobenius(a, k.degree()), a);
                assert_eq!(k.frobenius(a, 1), k.pow(a, k.p() as u64));
                for b in k.elements() {
                    for i in 0..k.degree() {
                        assert_eq!(k.frobenius(k.add(a, b), i), k.add(k.frobenius(a, i), k.frobenius(b, i)));
                        assert_eq!(k.frobenius(k.mul(a, b), i), k.mul(k.frobenius(a, i), k.frobenius(b, i)));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn json_shape() {
        let gf4 = Field::new(2, 2).unwrap();
        let s = serde_json::to_string(&gf4).unwrap();
        assert_eq!(s, r#"{"p":2,"f":2,"modulus":[1,1,1]}"#);
        let back: Field = serde_json::from_str(&s).unwrap();
        assert_eq!(back, gf4);
    }
}
