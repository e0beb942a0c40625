//! Small finite fields `GF(p^e)` with exact table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of an encoding
//! are the coefficients of the element written in the polynomial basis
//! `1, x, x^2, ...` modulo the field's defining polynomial (constant
//! coefficient first). Addition works digit-wise; multiplication goes through
//! discrete-log tables built once per field.
//!
//! The defining polynomial is always primitive, so `x` itself generates the
//! multiplicative group. Primitivity is not assumed: building the antilog
//! table walks the powers of `x` and fails if the cycle closes early or does
//! not close at order `q - 1`, which also rules out reducible moduli. A field
//! handle is therefore a proof that its modulus is primitive.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

const LOG_UNSET: u32 = u32::MAX;

/// Built-in primitive polynomials, one per `(p, e)`, constant coefficient
/// first. Each entry is the first monic polynomial of its degree in encoding
/// order (free coefficients read as a base-`p` integer, ascending) that is
/// primitive over `GF(p)`; a unit test re-derives every entry with
/// [`primitive_polynomial`] so the table cannot drift from the search.
const PRIMITIVE_POLYS: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (5, 4, &[2, 2, 1, 0, 1]),
    (5, 5, &[2, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (7, 1, &[2, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (7, 4, &[5, 3, 1, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (11, 1, &[3, 1]),
    (11, 2, &[7, 1, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (13, 1, &[2, 1]),
    (13, 2, &[2, 1, 1]),
    (13, 3, &[6, 1, 0, 1]),
    (13, 4, &[2, 1, 1, 0, 1]),
];

/// Trial-division primality test for moduli of supported size.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative order of `g` modulo a prime `p` (`g` nonzero).
fn mult_order_mod(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut ord = 1u64;
    while x != 1 {
        x = x * (g % p) % p;
        ord += 1;
    }
    ord
}

/// Degree-one modulus `x + c0` of `GF(p)` by the same rule as the table:
/// smallest `c0` whose root `-c0` is a primitive root modulo `p`.
fn degree_one_modulus(p: u64) -> Vec<u64> {
    for c0 in 0..p {
        let g = (p - c0) % p;
        if g != 0 && mult_order_mod(g, p) == p - 1 {
            return vec![c0, 1];
        }
    }
    unreachable!("every prime has a primitive root");
}

#[derive(Debug)]
struct FieldData {
    p: u64,
    e: u32,
    q: u64,
    /// Monic defining polynomial, length `e + 1`, constant coefficient first.
    modulus: Vec<u64>,
    /// `exp[i]` encodes `x^i`; length `q - 1`.
    exp: Vec<u16>,
    /// `log[v]` is the discrete log of encoding `v`; `log[0]` is unset.
    log: Vec<u32>,
}

/// A finite field `GF(p^e)` with `q = p^e <= 2^16`. Cheap to clone (shared
/// handle); two handles compare equal when `p`, `e`, and the modulus agree.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.e == other.0.e
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.q)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl FiniteField {
    /// Builds `GF(p^e)`. With `modulus: None` the defining polynomial comes
    /// from the built-in table (or, failing that, a deterministic search for
    /// the first primitive polynomial in encoding order). A supplied modulus
    /// must be monic of degree `e` with coefficients below `p`, constant
    /// coefficient first; it is verified primitive during table construction.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be positive".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).unwrap_or(u64::MAX);
            if q > MAX_FIELD_SIZE {
                return Err(Error::FieldTooLarge { p, e });
            }
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected degree {e} (length {}), got length {}",
                        e + 1,
                        m.len()
                    )));
                }
                if m[e as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficients must be below {p}")));
                }
                m.to_vec()
            }
            None => default_modulus(p, e)?,
        };
        let (exp, log) = build_tables(p, e, q, &modulus)?;
        Ok(FiniteField(Arc::new(FieldData {
            p,
            e,
            q,
            modulus,
            exp,
            log,
        })))
    }

    /// The field of order `q` with the built-in modulus.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, e) = factor_prime_power(q)
            .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?;
        FiniteField::new(p, e, None)
    }

    /// Parses a field spec: a plain prime power `q`, `p^e`, or
    /// `p^e/c0,c1,...,ce` with an explicit modulus (constant first).
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (head, coeffs) = match spec.split_once('/') {
            Some((h, c)) => (h, Some(c)),
            None => (spec, None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => {
                let p = p
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad characteristic in {spec:?}")))?;
                let e = e
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad degree in {spec:?}")))?;
                (p, e)
            }
            None => {
                let q = head
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad field size {spec:?}")))?;
                factor_prime_power(q)
                    .ok_or_else(|| Error::Parse(format!("{q} is not a prime power")))?
            }
        };
        let modulus = match coeffs {
            Some(c) => Some(
                c.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad modulus coefficient {t:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()?,
            ),
            None => None,
        };
        FiniteField::new(p, e, modulus.as_deref())
    }

    /// Field characteristic.
    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Number of elements `q = p^e`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Defining polynomial, constant coefficient first (length `e + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Encoding of the multiplicative generator: the residue of `x`, which is
    /// the polynomial `x` itself when `e > 1` and the primitive root `g` of
    /// the degree-one modulus `x - g` when `e = 1`.
    pub fn generator(&self) -> u16 {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    /// Wraps an encoding as a checked element.
    pub fn elem(&self, value: u64) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::BadEncoding {
                value,
                q: self.0.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value: value as u16,
        })
    }

    /// The additive identity.
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1,
        }
    }

    /// All element encodings in ascending order.
    pub fn encodings(&self) -> impl Iterator<Item = u16> {
        (0..self.0.q as u32).map(|v| v as u16)
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.encodings().map(move |v| FieldElement {
            field: self.clone(),
            value: v,
        })
    }

    #[inline]
    fn check(&self, a: u16) {
        debug_assert!((a as u64) < self.0.q, "encoding out of range");
    }

    /// Sum of two encodings.
    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.check(a);
        self.check(b);
        let d = &*self.0;
        if d.p == 2 {
            return a ^ b;
        }
        if d.e == 1 {
            return ((a as u64 + b as u64) % d.p) as u16;
        }
        let p = d.p as u32;
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 || b != 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u16
    }

    /// Additive inverse of an encoding.
    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.check(a);
        let d = &*self.0;
        if d.p == 2 {
            return a;
        }
        if d.e == 1 {
            return ((d.p - a as u64) % d.p) as u16;
        }
        let p = d.p as u32;
        let mut a = a as u32;
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out as u16
    }

    /// Difference of two encodings.
    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        if self.0.p == 2 {
            self.check(a);
            self.check(b);
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    /// Product of two encodings.
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.check(a);
        self.check(b);
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        let n = d.q as u32 - 1;
        let s = d.log[a as usize] + d.log[b as usize];
        d.exp[(s % n) as usize]
    }

    /// Multiplicative inverse of a nonzero encoding. Panics on zero; use
    /// [`FieldElement::inv`] for a checked version.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.check(a);
        assert!(a != 0, "inverse of zero in {self}");
        let d = &*self.0;
        let n = d.q as u32 - 1;
        d.exp[((n - d.log[a as usize]) % n) as usize]
    }

    /// `a^n` with the convention `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: u16, n: u64) -> u16 {
        self.check(a);
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let d = &*self.0;
        let m = d.q - 1;
        let l = d.log[a as usize] as u64 * (n % m) % m;
        d.exp[l as usize]
    }

    /// Discrete log of a nonzero encoding with respect to the generator.
    pub fn dlog(&self, a: u16) -> Result<u64> {
        self.check(a);
        if a == 0 {
            return Err(Error::ZeroInverse { q: self.0.q });
        }
        Ok(self.0.log[a as usize] as u64)
    }

    /// Encoding of `generator^i`.
    #[inline]
    pub fn exp(&self, i: u64) -> u16 {
        self.0.exp[(i % (self.0.q - 1)) as usize]
    }

    /// Base-`p` digits of an encoding (the coordinates over the prime field
    /// in the polynomial basis), lowest power first, length `e`.
    pub fn digits(&self, a: u16) -> Vec<u64> {
        self.check(a);
        let d = &*self.0;
        let mut v = a as u64;
        (0..d.e)
            .map(|_| {
                let r = v % d.p;
                v /= d.p;
                r
            })
            .collect()
    }

    /// Inverse of [`FiniteField::digits`].
    pub fn from_digits(&self, digits: &[u64]) -> Result<u16> {
        let d = &*self.0;
        if digits.len() != d.e as usize {
            return Err(Error::BadModulus(format!(
                "expected {} digits, got {}",
                d.e,
                digits.len()
            )));
        }
        let mut v = 0u64;
        for (i, &c) in digits.iter().enumerate() {
            if c >= d.p {
                return Err(Error::BadEncoding { value: c, q: d.p });
            }
            v += c * d.p.pow(i as u32);
        }
        Ok(v as u16)
    }
}

/// Pulls the built-in modulus for `(p, e)` or falls back to the search.
fn default_modulus(p: u64, e: u32) -> Result<Vec<u64>> {
    if let Some((_, _, coeffs)) = PRIMITIVE_POLYS
        .iter()
        .find(|&&(tp, te, _)| tp == p && te == e)
    {
        return Ok(coeffs.to_vec());
    }
    if e == 1 {
        return Ok(degree_one_modulus(p));
    }
    let base = FiniteField::new(p, 1, None)?;
    let poly = primitive_polynomial(&base, e as usize)?;
    Ok(poly.into_iter().map(u64::from).collect())
}

/// Splits `q` into `(p, e)` when `q` is a prime power.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            return if v == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Walks the powers of `x` modulo the candidate polynomial. Returns the exp
/// table on success; fails if the cycle closes before `q - 1` steps or does
/// not return to `1` exactly then. Success proves the modulus primitive (and
/// in particular irreducible): a reducible modulus has a unit group smaller
/// than `q - 1`, so `x` can never have full order.
fn build_tables(p: u64, e: u32, q: u64, modulus: &[u64]) -> Result<(Vec<u16>, Vec<u32>)> {
    let e = e as usize;
    let mut cur = vec![0u64; e];
    cur[0] = 1;
    let encode = |c: &[u64]| -> u64 {
        let mut v = 0u64;
        for (i, &d) in c.iter().enumerate() {
            v += d * p.pow(i as u32);
        }
        v
    };
    let mut exp = Vec::with_capacity((q - 1) as usize);
    for i in 0..q - 1 {
        let enc = encode(&cur);
        if enc == 0 {
            return Err(Error::NotPrimitive {
                q,
                reason: format!("x^{i} vanishes modulo the candidate (zero constant term)"),
            });
        }
        if enc == 1 && i > 0 {
            return Err(Error::NotPrimitive {
                q,
                reason: format!("x has order {i} < {}", q - 1),
            });
        }
        exp.push(enc as u16);
        // cur <- x * cur mod modulus
        let carry = cur[e - 1];
        for j in (1..e).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for j in 0..e {
                cur[j] = (cur[j] + (p - carry * modulus[j] % p) % p) % p;
            }
        }
    }
    if encode(&cur) != 1 {
        return Err(Error::NotPrimitive {
            q,
            reason: format!("x^{} != 1", q - 1),
        });
    }
    let mut log = vec![LOG_UNSET; q as usize];
    for (i, &v) in exp.iter().enumerate() {
        if log[v as usize] != LOG_UNSET {
            return Err(Error::NotPrimitive {
                q,
                reason: "repeated power of x".into(),
            });
        }
        log[v as usize] = i as u32;
    }
    Ok((exp, log))
}

/// Checks whether a monic polynomial over `field` (constant coefficient
/// first) is primitive: `x` must have order exactly `q^deg - 1` in the
/// quotient ring. `q^deg` is capped at `2^20`.
pub fn is_primitive_polynomial(field: &FiniteField, coeffs: &[u16]) -> Result<bool> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 || coeffs[deg] != 1 {
        return Err(Error::BadModulus(
            "candidate must be monic of positive degree".into(),
        ));
    }
    let q = field.q() as u128;
    let size = q
        .checked_pow(deg as u32)
        .ok_or(Error::CapExceeded {
            needed: u128::MAX,
            cap: 1 << 20,
        })?;
    if size > 1 << 20 {
        return Err(Error::CapExceeded {
            needed: size,
            cap: 1 << 20,
        });
    }
    let order = size as u64 - 1;
    let mut cur = vec![0u16; deg];
    cur[0] = 1;
    for i in 0..order {
        let is_one = cur[0] == 1 && cur[1..].iter().all(|&c| c == 0);
        if is_one != (i == 0) {
            return Ok(false);
        }
        if cur.iter().all(|&c| c == 0) {
            return Ok(false);
        }
        let carry = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for (j, c) in cur.iter_mut().enumerate() {
                *c = field.sub(*c, field.mul(carry, coeffs[j]));
            }
        }
    }
    Ok(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0))
}

/// First primitive polynomial of the given degree over `field`, in encoding
/// order: candidates are monic with free coefficients `c_0..c_{deg-1}` read
/// as a base-`q` integer, ascending. Deterministic. Returns the coefficients
/// constant-first, length `deg + 1`.
pub fn primitive_polynomial(field: &FiniteField, degree: usize) -> Result<Vec<u16>> {
    if degree == 0 {
        return Err(Error::BadModulus("degree must be positive".into()));
    }
    let q = field.q();
    let total = (q as u128).checked_pow(degree as u32);
    if total.is_none() || total.unwrap() > 1 << 20 {
        return Err(Error::CapExceeded {
            needed: total.unwrap_or(u128::MAX),
            cap: 1 << 20,
        });
    }
    let mut coeffs = vec![0u16; degree + 1];
    coeffs[degree] = 1;
    loop {
        if is_primitive_polynomial(field, &coeffs)? {
            return Ok(coeffs);
        }
        // increment the free coefficients as a base-q counter
        let mut j = 0;
        loop {
            if j == degree {
                return Err(Error::NoPrimitivePolynomial { q, degree });
            }
            if (coeffs[j] as u64) + 1 < q {
                coeffs[j] += 1;
                break;
            }
            coeffs[j] = 0;
            j += 1;
        }
    }
}

/// An element of a specific [`FiniteField`]. Arithmetic checks that both
/// operands come from the same field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: FiniteField,
    value: u16,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    /// Integer encoding of the element.
    pub fn value(&self) -> u64 {
        self.value as u64
    }

    /// Raw `u16` encoding.
    pub fn encoding(&self) -> u16 {
        self.value
    }

    /// The field this element belongs to.
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, rhs: &FieldElement) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::MixedFields {
                left: self.field.q(),
                right: rhs.field.q(),
            })
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.add(self.value, rhs.value),
        })
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.sub(self.value, rhs.value),
        })
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.mul(self.value, rhs.value),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.neg(self.value),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse {
                q: self.field.q(),
            });
        }
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.inv(self.value),
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        self.mul(&rhs.inv()?)
    }

    /// `self^n` with the convention `0^0 = 1`.
    pub fn pow(&self, n: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.pow(self.value, n),
        }
    }
}
