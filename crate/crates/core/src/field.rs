//! Table-driven arithmetic in GF(p^k).
//!
//! Elements are integer codes in `[0, q)`: the base-p little-endian digits of
//! a code are the coefficients of its polynomial representative modulo the
//! Conway polynomial of degree `k`. Code 0 is zero and code 1 is one.

use std::fmt;

use thiserror::Error;

/// A field element, stored as its integer code.
pub type Elem = u8;

/// Largest field order accepted by [`Field::new`].
pub const DEFAULT_ORDER_CAP: u32 = 81;

/// Conway polynomials `(p, k, coefficients low to high)`, all monic.
const CONWAY: &[(u32, u32, &[u8])] = &[
    (2, 1, &[1, 1]),
    (3, 1, &[1, 1]),
    (5, 1, &[3, 1]),
    (7, 1, &[4, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the cap {cap}")]
    OrderTooLarge { p: u32, k: u32, cap: u32 },
    #[error("no Conway polynomial tabulated for GF({p}^{k})")]
    NoConwayPolynomial { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} is not in GF({q})")]
    InvalidCode { code: u32, q: u32 },
    #[error("automorphism exponent {m} must be below the degree {k}")]
    InvalidAutomorphism { m: u32, k: u32 },
    #[error("field axiom violated: {0}")]
    Axiom(String),
}

/// The Frobenius power `x -> x^(p^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Automorphism {
    m: u32,
}

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism { m: 0 };

    pub fn exponent(self) -> u32 {
        self.m
    }

    pub fn is_identity(self) -> bool {
        self.m == 0
    }

    /// `self` followed by `other`, exponents added mod `k`.
    pub fn then(self, other: Automorphism, k: u32) -> Automorphism {
        Automorphism { m: (self.m + other.m) % k }
    }

    pub fn inverse(self, k: u32) -> Automorphism {
        Automorphism { m: (k - self.m) % k }
    }

    /// True when applying twice gives the identity, i.e. `2m = 0 (mod k)`.
    pub fn is_involution(self, k: u32) -> bool {
        (2 * self.m).is_multiple_of(k)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            write!(f, "id")
        } else {
            write!(f, "x^(p^{})", self.m)
        }
    }
}

/// GF(p^k) with precomputed operation tables. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    conway: Vec<u8>,
    primitive: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn digits(code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = code;
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field {
    /// GF(p^k) under the default order cap.
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        Field::with_cap(p, k, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u32, k: u32, cap: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p.checked_pow(k).filter(|&q| q <= cap.min(255)).ok_or(FieldError::OrderTooLarge { p, k, cap })?;
        let conway = CONWAY
            .iter()
            .find(|(cp, ck, _)| *cp == p && *ck == k)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(FieldError::NoConwayPolynomial { p, k })?;

        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as Elem;
                mul[(a * q + b) as usize] = undigits(&poly_mul_mod(&da, &db, &conway, p), p) as Elem;
            }
        }
        let mut neg = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
        }

        let primitive = if k == 1 { ((p - conway[0] as u32) % p) as Elem } else { p as Elem };
        let mut exp = Vec::with_capacity(qs - 1);
        let mut log = vec![u32::MAX; qs];
        let mut x: Elem = 1;
        for i in 0..(q - 1) {
            if log[x as usize] != u32::MAX {
                return Err(FieldError::Axiom(format!("root of the Conway polynomial has order {i} < {}", q - 1)));
            }
            log[x as usize] = i;
            exp.push(x);
            x = mul[x as usize * qs + primitive as usize];
        }
        let mut inv = vec![0; qs];
        for a in 1..qs {
            inv[a] = exp[((q - 1 - log[a]) % (q - 1)) as usize];
        }

        let field = Field { p, k, q, conway, primitive, add, mul, neg, inv, exp, log };
        if q <= 16 {
            field.verify_axioms()?;
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Conway polynomial coefficients, constant term first.
    pub fn conway_polynomial(&self) -> &[u8] {
        &self.conway
    }

    /// The root of the Conway polynomial, a generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.q as Elem
    }

    pub fn is_valid(&self, code: u32) -> bool {
        code < self.q
    }

    pub fn check(&self, code: u32) -> Result<Elem, FieldError> {
        if self.is_valid(code) {
            Ok(code as Elem)
        } else {
            Err(FieldError::InvalidCode { code, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log to the base of [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn automorphism(&self, m: u32) -> Result<Automorphism, FieldError> {
        if m < self.k {
            Ok(Automorphism { m })
        } else {
            Err(FieldError::InvalidAutomorphism { m, k: self.k })
        }
    }

    /// `x^(p^m)`.
    #[inline]
    pub fn apply(&self, a: Automorphism, x: Elem) -> Elem {
        if a.m == 0 || x == 0 {
            return x;
        }
        let l = self.log[x as usize] as u64;
        let e = (self.p as u64).pow(a.m);
        self.exp[((l * e) % (self.q as u64 - 1)) as usize]
    }

    /// Checked variant of [`Field::apply`] for untrusted codes.
    pub fn apply_automorphism(&self, a: Automorphism, x: u32) -> Result<Elem, FieldError> {
        if a.m >= self.k {
            return Err(FieldError::InvalidAutomorphism { m: a.m, k: self.k });
        }
        Ok(self.apply(a, self.check(x)?))
    }

    /// Square root in characteristic 2 (inverse Frobenius). `None` in odd
    /// characteristic.
    pub fn sqrt_char2(&self, x: Elem) -> Option<Elem> {
        if self.p != 2 {
            return None;
        }
        Some(self.apply(Automorphism { m: self.k - 1 }, x))
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn verify_axioms(&self) -> Result<(), FieldError> {
        let fail = |s: String| Err(FieldError::Axiom(s));
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return fail(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return fail(format!("multiplicative inverse fails at {a}"));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail(format!("commutativity fails at ({a},{b})"));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Product of two coefficient vectors reduced modulo the monic `modulus`.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u8], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let t = deg - k + i;
            prod[t] = (prod[t] + (p - c) * m as u32) % p;
        }
    }
    prod.truncate(k);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Polynomial arithmetic over GF(p) independent of the tables.
    fn brute_mul(a: u32, b: u32, p: u32, modulus: &[u8]) -> u32 {
        let k = (modulus.len() - 1) as u32;
        let da = digits(a, p, k);
        let db = digits(b, p, k);
        // schoolbook, then long division by repeated subtraction of shifted modulus
        let mut prod = vec![0i64; 2 * k as usize];
        for i in 0..k as usize {
            for j in 0..k as usize {
                prod[i + j] += (da[i] * db[j]) as i64;
            }
        }
        let p = p as i64;
        for deg in (k as usize..prod.len()).rev() {
            let c = prod[deg].rem_euclid(p);
            for (i, &m) in modulus.iter().enumerate() {
                prod[deg - k as usize + i] -= c * m as i64;
            }
        }
        let ds: Vec<u32> = prod[..k as usize].iter().map(|x| x.rem_euclid(p) as u32).collect();
        undigits(&ds, p as u32)
    }

    #[test]
    fn gf2_codes() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_omega_squared() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(brute_mul(2, 2, 2, &[1, 1, 1]), 3);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.conway_polynomial(), &[1, 1, 1]);
    }

    #[test]
    fn gf3_two_squared() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.mul(2, 2), 1);
    }

    #[test]
    fn tables_match_brute_force() {
        for &(p, k, poly) in CONWAY {
            let f = Field::new(p, k).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul(a as Elem, b as Elem) as u32, brute_mul(a, b, p, poly), "GF({p}^{k}) {a}*{b}");
                }
            }
        }
    }

    #[test]
    fn conway_roots_are_primitive_and_compatible() {
        // norm-compatibility: alpha_k^((q^k - 1)/(q^d - 1)) is a root of the degree-d Conway polynomial
        for &(p, k, _) in CONWAY {
            let f = Field::new(p, k).unwrap();
            assert_eq!(f.exp.len() as u32, f.order() - 1);
            for d in (1..k).filter(|d| k % d == 0) {
                let sub = Field::new(p, d).unwrap();
                let e = (f.order() as u64 - 1) / (sub.order() as u64 - 1);
                let beta = f.pow(f.primitive_element(), e);
                // evaluate sub's Conway polynomial at beta inside f; prime-field digits embed directly
                let mut acc: Elem = 0;
                for &c in sub.conway_polynomial().iter().rev() {
                    acc = f.add(f.mul(acc, beta), c);
                }
                assert_eq!(acc, 0, "GF({p}^{k}) not compatible with GF({p}^{d})");
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(4, 1), Err(FieldError::NotPrime(4)));
        assert!(matches!(Field::new(3, 5), Err(FieldError::OrderTooLarge { .. })));
        assert!(matches!(Field::new(2, 5), Err(FieldError::NoConwayPolynomial { .. })));
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.inv(0), Err(FieldError::DivisionByZero));
        assert_eq!(f.div(3, 0), Err(FieldError::DivisionByZero));
        assert!(f.check(5).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let f4 = Field::new(2, 2).unwrap();
        let frob = f4.automorphism(1).unwrap();
        assert_eq!(f4.apply(frob, 2), 3);
        assert_eq!(f4.apply(Automorphism::IDENTITY, 2), 2);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.apply(f9.automorphism(1).unwrap(), 0), 0);
        assert!(f9.automorphism(2).is_err());
        assert!(f9.apply_automorphism(frob, 9).is_err());
    }

    #[test]
    fn automorphisms_are_ring_homomorphisms() {
        for &(p, k, _) in CONWAY {
            let f = Field::new(p, k).unwrap();
            for m in 0..k {
                let a = f.automorphism(m).unwrap();
                let back = a.inverse(k);
                for x in f.elements() {
                    assert_eq!(f.apply(back, f.apply(a, x)), x);
                    for y in f.elements() {
                        assert_eq!(f.apply(a, f.add(x, y)), f.add(f.apply(a, x), f.apply(a, y)));
                        assert_eq!(f.apply(a, f.mul(x, y)), f.mul(f.apply(a, x), f.apply(a, y)));
                    }
                }
            }
            let frob = f.automorphism(if k > 1 { 1 } else { 0 }).unwrap();
            for x in f.elements() {
                let y = (0..k).fold(x, |acc, _| f.apply(frob, acc));
                assert_eq!(y, x);
                assert_eq!(f.apply(frob, x), f.pow(x, p as u64));
            }
        }
    }

    #[test]
    fn sqrt_in_char2() {
        let f = Field::new(2, 3).unwrap();
        for x in f.elements() {
            let r = f.sqrt_char2(x).unwrap();
            assert_eq!(f.mul(r, r), x);
        }
        assert_eq!(Field::new(3, 1).unwrap().sqrt_char2(1), None);
    }
}
