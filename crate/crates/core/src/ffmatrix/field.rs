use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field elements are encoded as integers `c0 + c1·p + … + c_{k-1}·p^{k-1}` in `0..q`,
/// where `c0 + c1·x + …` is the reduced polynomial representative. For prime fields
/// this is the usual residue.
pub type FieldElem = u32;

/// Largest field order accepted.
const MAX_ORDER: u64 = 1 << 20;
/// Fields up to this order get precomputed addition and multiplication tables.
const TABLE_ORDER: u32 = 256;

/// Default moduli for GF(2^k), low coefficient first.
const GF2_MODULI: [&[u32]; 8] = [
    &[0, 1],
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 1, 0, 0, 0, 1],
];

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
}

/// GF(p^k) with a fixed monic irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

fn is_prime(n: u32) -> bool {
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

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(p^k). Without an explicit modulus, GF(2^k) for k ≤ 8 uses the fixed table
    /// (x²+x+1, x³+x+1, x⁴+x+1, x⁵+x²+1, x⁶+x+1, x⁷+x+1, x⁸+x⁴+x³+x²+1); every other
    /// field uses the monic irreducible whose lower coefficients have the smallest
    /// encoding.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Field("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::Field(format!("field order {p}^{k} exceeds {MAX_ORDER}"))
        })? as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::Field(format!(
                        "modulus {m:?} must be monic of degree {k} (coefficients c0..c{k})"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Field(format!("modulus {m:?} has coefficients outside GF({p})")));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::Field(format!("modulus {m:?} is reducible over GF({p})")));
                }
                m
            }
            None => default_modulus(p, k),
        };
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            add: None,
            mul: None,
            inv: Vec::new(),
        };
        if q <= TABLE_ORDER {
            let mut add = vec![0; (q * q) as usize];
            let mut mul = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = slow_add(&inner, a, b);
                    mul[(a * q + b) as usize] = slow_mul(&inner, a, b);
                }
            }
            inner.add = Some(add);
            inner.mul = Some(mul);
        }
        let mut inv = vec![0; q as usize];
        if q <= 1 << 16 {
            for a in 1..q {
                if inv[a as usize] != 0 {
                    continue;
                }
                for b in 1..q {
                    if slow_mul(&inner, a, b) == 1 {
                        inv[a as usize] = b;
                        inv[b as usize] = a;
                        break;
                    }
                }
            }
        }
        inner.inv = inv;
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_default_modulus(&self) -> bool {
        self.inner.modulus == default_modulus(self.inner.p, self.inner.k)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.add {
            Some(t) => t[(a * self.inner.q + b) as usize],
            None => slow_add(&self.inner, a, b),
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.inner.p;
        self.from_coeffs(&self.coeffs(a).iter().map(|&c| (p - c) % p).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.mul {
            Some(t) => t[(a * self.inner.q + b) as usize],
            None => slow_mul(&self.inner, a, b),
        }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::Field("inverse of zero".into()));
        }
        if let Some(&b) = self.inner.inv.get(a as usize).filter(|&&b| b != 0) {
            return Ok(b);
        }
        // a^(q-2)
        let mut exp = self.inner.q - 2;
        let (mut base, mut acc) = (a, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Image of an integer under `Z → GF(p)`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    /// Reduces a coefficient list (low degree first, any length) to a field element.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElem {
        let p = self.inner.p;
        let poly: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let reduced = poly_rem(&poly, &self.inner.modulus, p);
        encode(&reduced, p)
    }

    /// Coefficients `c0..c_{k-1}` of an element.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let p = self.inner.p;
        let mut out = Vec::with_capacity(self.inner.k as usize);
        let mut x = a;
        for _ in 0..self.inner.k {
            out.push(x % p);
            x /= p;
        }
        out
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a < self.inner.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        0..self.inner.q
    }
}

fn encode(poly: &[u32], p: u32) -> u32 {
    poly.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut x = a;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn slow_add(f: &Inner, a: u32, b: u32) -> u32 {
    let (ca, cb) = (decode(a, f.p, f.k), decode(b, f.p, f.k));
    let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % f.p).collect();
    encode(&sum, f.p)
}

fn slow_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let (ca, cb) = (decode(a, f.p, f.k), decode(b, f.p, f.k));
    let prod = poly_mul(&ca, &cb, f.p);
    encode(&poly_rem(&prod, &f.modulus, f.p), f.p)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`, padded to `deg m` coefficients.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in m[..deg].iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
    }
    r.resize(deg, 0);
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = decode(low as u32, p, d as u32);
            cand.push(1);
            if trim(poly_rem(m, &cand, p)).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    if p == 2 && k <= 8 {
        return GF2_MODULI[k as usize - 1].to_vec();
    }
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut cand = decode(low as u32, p, k);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf3_examples() {
        let f = FiniteField::prime(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.inv(2).unwrap(), 2);
        assert!(f.inv(0).is_err());
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.from_int(-1), 2);
    }

    #[test]
    fn gf4_examples() {
        let f = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coeffs(&[0, 1]);
        assert_eq!(f.coeffs(f.mul(x, x)), vec![1, 1]);
    }

    #[test]
    fn default_gf2_table_is_irreducible() {
        for (k, m) in GF2_MODULI.iter().enumerate().skip(1) {
            assert!(is_irreducible(m, 2), "k={}", k + 1);
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteField::new(4, 1, None).is_err());
        assert!(FiniteField::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FiniteField::new(2, 2, Some(vec![1, 1])).is_err());
        assert!(FiniteField::new(3, 2, Some(vec![1, 0, 1])).is_ok());
    }

    #[test]
    fn generic_default_moduli() {
        let f = FiniteField::new(3, 2, None).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // GF(1024) has no tables
        let g = FiniteField::new(2, 10, None).unwrap();
        let a = 517;
        assert_eq!(g.mul(a, g.inv(a).unwrap()), 1);
    }

    fn fields() -> impl Strategy<Value = FiniteField> {
        prop_oneof![
            Just(FiniteField::prime(3).unwrap()),
            Just(FiniteField::prime(7).unwrap()),
            Just(FiniteField::new(2, 3, None).unwrap()),
            Just(FiniteField::new(3, 2, None).unwrap()),
            Just(FiniteField::new(2, 9, None).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(f in fields(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let q = f.order();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
