//! Exact arithmetic over the supported commutative rings.
//!
//! Every ring here is a principal ideal ring with computable normal forms:
//! the integers, the rationals, prime fields, residue rings `Z/m` and the
//! truncated polynomial rings `F_p[e]/(e^n)`. Elements are stored as
//! canonical representatives so that structural equality is ring equality.

mod hom;
mod matrix;
mod module;
mod normal_form;

pub use hom::{HomKind, RingHom};
pub use matrix::Matrix;
pub use module::{cokernel, constant_rank, Cokernel, ModulePresentation};
pub use normal_form::{
    howell_form, invariant_factors, is_invertible, kernel_basis, normal_form, rank, smith_form,
    solve, NormalFormKind, NormalFormResult,
};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A computable commutative ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
    IntegersMod(u64),
    /// `F_p[e]/(e^n)`.
    TruncatedPoly {
        p: u64,
        n: usize,
    },
}

/// An element of some [`RingSpec`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    /// Residue in `[0, m)` for `Z/m` and `F_p`.
    Residue(u64),
    /// Coefficients `c_0 .. c_{n-1}` in `[0, p)`.
    Poly(Vec<u64>),
}

/// Output of [`RingSpec::gcdex`]: the matrix `[[s, t], [u, v]]` has
/// determinant one, `s*a + t*b = g` and `u*a + v*b = 0`.
#[derive(Clone, Debug)]
pub struct Gcdex {
    pub g: RingElem,
    pub s: RingElem,
    pub t: RingElem,
    pub u: RingElem,
    pub v: RingElem,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, as `(p, k)` pairs in increasing order.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Extended gcd on signed 128-bit integers: `(g, x, y)` with `a x + b y = g >= 0`.
fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd_i128(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!(
                "modulus {m} must be at least 2"
            )));
        }
        Ok(RingSpec::IntegersMod(m))
    }

    pub fn truncated_poly(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidRing(
                "truncation degree must be at least 1".into(),
            ));
        }
        Ok(RingSpec::TruncatedPoly { p, n })
    }

    pub fn is_field(&self) -> bool {
        match *self {
            RingSpec::Rationals | RingSpec::PrimeField(_) => true,
            RingSpec::IntegersMod(m) => is_prime(m),
            RingSpec::TruncatedPoly { n, .. } => n == 1,
            RingSpec::Integers => false,
        }
    }

    /// Integral domains among the supported rings: `Z` and the fields.
    pub fn is_domain(&self) -> bool {
        matches!(self, RingSpec::Integers) || self.is_field()
    }

    /// Characteristic modulus for the finite residue-style rings.
    fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::PrimeField(p) | RingSpec::IntegersMod(p) => Some(p),
            RingSpec::TruncatedPoly { p, .. } => Some(p),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        match *self {
            RingSpec::Integers => RingElem::Int(BigInt::zero()),
            RingSpec::Rationals => RingElem::Rat(BigRational::zero()),
            RingSpec::PrimeField(_) | RingSpec::IntegersMod(_) => RingElem::Residue(0),
            RingSpec::TruncatedPoly { n, .. } => RingElem::Poly(vec![0; n]),
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> RingElem {
        self.from_bigint(&BigInt::from(x))
    }

    /// Image of an integer under the unique ring map from `Z`.
    pub fn from_bigint(&self, x: &BigInt) -> RingElem {
        match *self {
            RingSpec::Integers => RingElem::Int(x.clone()),
            RingSpec::Rationals => RingElem::Rat(BigRational::from_integer(x.clone())),
            RingSpec::PrimeField(m) | RingSpec::IntegersMod(m) => {
                RingElem::Residue(x.mod_floor(&BigInt::from(m)).to_u64().unwrap())
            }
            RingSpec::TruncatedPoly { p, n } => {
                let mut c = vec![0; n];
                c[0] = x.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                RingElem::Poly(c)
            }
        }
    }

    /// Checks that `x` is a canonical element of this ring.
    pub fn contains(&self, x: &RingElem) -> bool {
        match (self, x) {
            (RingSpec::Integers, RingElem::Int(_)) => true,
            (RingSpec::Rationals, RingElem::Rat(_)) => true,
            (RingSpec::PrimeField(m) | RingSpec::IntegersMod(m), RingElem::Residue(r)) => r < m,
            (RingSpec::TruncatedPoly { p, n }, RingElem::Poly(c)) => {
                c.len() == *n && c.iter().all(|x| x < p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &RingElem) -> bool {
        match x {
            RingElem::Int(a) => a.is_zero(),
            RingElem::Rat(a) => a.is_zero(),
            RingElem::Residue(r) => *r == 0,
            RingElem::Poly(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, x: &RingElem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x + y),
            (RingElem::Rat(x), RingElem::Rat(y)) => RingElem::Rat(x + y),
            (RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.modulus().unwrap();
                RingElem::Residue(((*x as u128 + *y as u128) % m as u128) as u64)
            }
            (RingElem::Poly(x), RingElem::Poly(y)) => {
                let p = self.modulus().unwrap();
                RingElem::Poly(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect())
            }
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match a {
            RingElem::Int(x) => RingElem::Int(-x),
            RingElem::Rat(x) => RingElem::Rat(-x),
            RingElem::Residue(x) => {
                let m = self.modulus().unwrap();
                RingElem::Residue(if *x == 0 { 0 } else { m - x })
            }
            RingElem::Poly(c) => {
                let p = self.modulus().unwrap();
                RingElem::Poly(c.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
            }
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x * y),
            (RingElem::Rat(x), RingElem::Rat(y)) => RingElem::Rat(x * y),
            (RingElem::Residue(x), RingElem::Residue(y)) => {
                RingElem::Residue(mul_mod(*x, *y, self.modulus().unwrap()))
            }
            (RingElem::Poly(x), RingElem::Poly(y)) => {
                let p = self.modulus().unwrap();
                let n = x.len();
                let mut out = vec![0u64; n];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate().take(n - i) {
                        out[i + j] = (out[i + j] + mul_mod(xi, yj, p)) % p;
                    }
                }
                RingElem::Poly(out)
            }
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Int(x) => x.abs().is_one(),
            RingElem::Rat(x) => !x.is_zero(),
            RingElem::Residue(x) => gcd_u64(*x, self.modulus().unwrap()) == 1,
            RingElem::Poly(c) => c[0] != 0,
        }
    }

    pub fn inv(&self, a: &RingElem) -> Option<RingElem> {
        match a {
            RingElem::Int(x) => x.abs().is_one().then(|| a.clone()),
            RingElem::Rat(x) => (!x.is_zero()).then(|| RingElem::Rat(x.recip())),
            RingElem::Residue(x) => inv_mod(*x, self.modulus().unwrap()).map(RingElem::Residue),
            RingElem::Poly(c) => {
                let p = self.modulus().unwrap();
                let a0 = inv_mod(c[0], p)?;
                let n = c.len();
                let mut b = vec![0u64; n];
                b[0] = a0;
                for k in 1..n {
                    let mut acc = 0u64;
                    for j in 1..=k {
                        acc = (acc + mul_mod(c[j], b[k - j], p)) % p;
                    }
                    b[k] = mul_mod(p - acc % p, a0, p) % p;
                }
                Some(RingElem::Poly(b))
            }
        }
    }

    /// Order of vanishing at `e` for truncated polynomials (`n` for zero).
    fn valuation(c: &[u64]) -> usize {
        c.iter().position(|&x| x != 0).unwrap_or(c.len())
    }

    fn shift_down(c: &[u64], v: usize) -> Vec<u64> {
        let n = c.len();
        let mut out = vec![0u64; n];
        out[..n - v].copy_from_slice(&c[v..]);
        out
    }

    fn monomial(&self, v: usize) -> RingElem {
        match *self {
            RingSpec::TruncatedPoly { n, .. } => {
                let mut c = vec![0; n];
                if v < n {
                    c[v] = 1;
                }
                RingElem::Poly(c)
            }
            _ => unreachable!(),
        }
    }

    /// Returns `q` with `a = b * q`, if one exists.
    pub fn div_exact(&self, a: &RingElem, b: &RingElem) -> Option<RingElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(RingElem::Int(q))
            }
            (RingElem::Rat(x), RingElem::Rat(y)) => (!y.is_zero()).then(|| RingElem::Rat(x / y)),
            (RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.modulus().unwrap();
                let g = gcd_u64(*y, m);
                if x % g != 0 {
                    return None;
                }
                let m2 = m / g;
                if m2 == 1 {
                    return Some(RingElem::Residue(0));
                }
                let inv = inv_mod((y / g) % m2, m2).unwrap();
                Some(RingElem::Residue(mul_mod((x / g) % m2, inv, m2)))
            }
            (RingElem::Poly(x), RingElem::Poly(y)) => {
                let va = Self::valuation(x);
                let vb = Self::valuation(y);
                if vb > va {
                    return None;
                }
                let unit = RingElem::Poly(Self::shift_down(y, vb));
                let rest = RingElem::Poly(Self::shift_down(x, vb));
                Some(self.mul(&rest, &self.inv(&unit).unwrap()))
            }
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn divides(&self, b: &RingElem, a: &RingElem) -> bool {
        self.div_exact(a, b).is_some()
    }

    /// Unimodular elimination step for a pair of elements.
    pub fn gcdex(&self, a: &RingElem, b: &RingElem) -> Gcdex {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => {
                let e = x.extended_gcd(y);
                let g = e.gcd;
                if g.is_zero() {
                    return Gcdex {
                        g: self.zero(),
                        s: self.one(),
                        t: self.zero(),
                        u: self.zero(),
                        v: self.one(),
                    };
                }
                Gcdex {
                    u: RingElem::Int(-(y / &g)),
                    v: RingElem::Int(x / &g),
                    g: RingElem::Int(g),
                    s: RingElem::Int(e.x),
                    t: RingElem::Int(e.y),
                }
            }
            (RingElem::Residue(x), RingElem::Residue(y)) if !self.is_field() => {
                let m = self.modulus().unwrap() as i128;
                let (g, s, t) = ext_gcd_i128(*x as i128, *y as i128);
                if g == 0 {
                    return Gcdex {
                        g: self.zero(),
                        s: self.one(),
                        t: self.zero(),
                        u: self.zero(),
                        v: self.one(),
                    };
                }
                let r = |z: i128| RingElem::Residue(z.rem_euclid(m) as u64);
                Gcdex {
                    g: r(g),
                    s: r(s),
                    t: r(t),
                    u: r(-(*y as i128 / g)),
                    v: r(*x as i128 / g),
                }
            }
            _ => {
                // Fields and chain rings: one of a, b divides the other.
                if let Some(q) = self.div_exact(b, a) {
                    if !self.is_zero(a) || self.is_zero(b) {
                        return Gcdex {
                            g: a.clone(),
                            s: self.one(),
                            t: self.zero(),
                            u: self.neg(&q),
                            v: self.one(),
                        };
                    }
                }
                let q = self
                    .div_exact(a, b)
                    .expect("chain ring elements are comparable");
                Gcdex {
                    g: b.clone(),
                    s: self.zero(),
                    t: self.one(),
                    u: self.neg(&self.one()),
                    v: q,
                }
            }
        }
    }

    /// Generator of the annihilator ideal of `a`.
    pub fn ann(&self, a: &RingElem) -> RingElem {
        if self.is_zero(a) {
            return self.one();
        }
        match a {
            RingElem::Residue(x) => {
                let m = self.modulus().unwrap();
                RingElem::Residue((m / gcd_u64(*x, m)) % m)
            }
            RingElem::Poly(c) => {
                let n = c.len();
                self.monomial(n - Self::valuation(c))
            }
            _ => self.zero(),
        }
    }

    /// Splits `a = unit * canonical` where `canonical` is the preferred
    /// generator of the ideal `(a)`. Returns `(canonical, unit)`.
    pub fn canonical_associate(&self, a: &RingElem) -> (RingElem, RingElem) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        match a {
            RingElem::Int(x) => {
                if x.is_negative() {
                    (RingElem::Int(-x), self.from_i64(-1))
                } else {
                    (a.clone(), self.one())
                }
            }
            RingElem::Rat(_) => (self.one(), a.clone()),
            RingElem::Residue(x) => {
                let m = self.modulus().unwrap();
                let g = gcd_u64(*x, m);
                let step = m / g;
                let mut u = (x / g) % m;
                // Lift x/g mod m/g to a unit mod m.
                while gcd_u64(u, m) != 1 {
                    u = (u + step) % m;
                }
                (RingElem::Residue(g % m), RingElem::Residue(u))
            }
            RingElem::Poly(c) => {
                let v = Self::valuation(c);
                (self.monomial(v), RingElem::Poly(Self::shift_down(c, v)))
            }
        }
    }

    /// Canonical remainder and quotient of `b` modulo the ideal generated by
    /// the canonical element `p`: `b = q * p + r`.
    pub fn quo_rem(&self, b: &RingElem, p: &RingElem) -> (RingElem, RingElem) {
        match (b, p) {
            (RingElem::Int(x), RingElem::Int(y)) => {
                if y.is_zero() {
                    return (self.zero(), b.clone());
                }
                let (q, r) = x.div_mod_floor(y);
                (RingElem::Int(q), RingElem::Int(r))
            }
            (RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.modulus().unwrap();
                let g = if *y == 0 { m } else { gcd_u64(*y, m) };
                if self.is_field() {
                    if *y == 0 {
                        return (self.zero(), b.clone());
                    }
                    let inv = inv_mod(*y, m).unwrap();
                    return (RingElem::Residue(mul_mod(*x, inv, m)), self.zero());
                }
                let r = x % g;
                ((RingElem::Residue(((x - r) / g) % m)), RingElem::Residue(r))
            }
            (RingElem::Poly(x), RingElem::Poly(y)) => {
                let v = Self::valuation(y);
                let mut low = x.clone();
                for c in low.iter_mut().skip(v) {
                    *c = 0;
                }
                let high: Vec<u64> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if i >= v { c } else { 0 })
                    .collect();
                if v == x.len() {
                    return (self.zero(), b.clone());
                }
                // y = e^v * unit; divide the high part exactly.
                let unit = RingElem::Poly(Self::shift_down(y, v));
                let q = self.mul(
                    &RingElem::Poly(Self::shift_down(&high, v)),
                    &self.inv(&unit).unwrap(),
                );
                (q, RingElem::Poly(low))
            }
            (RingElem::Rat(x), RingElem::Rat(y)) => {
                if y.is_zero() {
                    (self.zero(), b.clone())
                } else {
                    (RingElem::Rat(x / y), self.zero())
                }
            }
            _ => panic!("mixed ring elements"),
        }
    }

    /// Ordering key for pivot selection: smaller is a better pivot.
    pub(crate) fn pivot_cmp(&self, a: &RingElem, b: &RingElem) -> Ordering {
        match (a, b) {
            (RingElem::Int(x), RingElem::Int(y)) => x.abs().cmp(&y.abs()),
            (RingElem::Residue(x), RingElem::Residue(y)) => {
                let m = self.modulus().unwrap();
                gcd_u64(*x, m).cmp(&gcd_u64(*y, m))
            }
            (RingElem::Poly(x), RingElem::Poly(y)) => Self::valuation(x).cmp(&Self::valuation(y)),
            _ => Ordering::Equal,
        }
    }

    /// Parses an element literal: integers everywhere, `a/b` over `Q`,
    /// coefficient arrays over truncated polynomial rings.
    pub fn parse_elem(&self, v: &serde_json::Value) -> Result<RingElem> {
        use serde_json::Value;
        match v {
            Value::Number(n) => {
                let s = n.to_string();
                let x: BigInt = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an integer literal: {s}")))?;
                Ok(self.from_bigint(&x))
            }
            Value::String(s) => {
                if let RingSpec::Rationals = self {
                    let q = parse_rational(s)?;
                    Ok(RingElem::Rat(q))
                } else {
                    let x: BigInt = s
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("not an integer literal: {s}")))?;
                    Ok(self.from_bigint(&x))
                }
            }
            Value::Array(items) => match *self {
                RingSpec::TruncatedPoly { p, n } => {
                    if items.len() > n {
                        return Err(Error::Parse(format!(
                            "coefficient array longer than truncation degree {n}"
                        )));
                    }
                    let mut c = vec![0u64; n];
                    for (i, it) in items.iter().enumerate() {
                        let x: BigInt = match it {
                            Value::Number(k) => k
                                .to_string()
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad coefficient {k}")))?,
                            _ => return Err(Error::Parse("bad coefficient".into())),
                        };
                        c[i] = x.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                    }
                    Ok(RingElem::Poly(c))
                }
                _ => Err(Error::Parse(format!("array literal not valid over {self}"))),
            },
            _ => Err(Error::Parse(format!("unsupported element literal {v}"))),
        }
    }

    /// Inverse of [`RingSpec::parse_elem`].
    pub fn elem_to_json(&self, x: &RingElem) -> serde_json::Value {
        use serde_json::Value;
        match x {
            RingElem::Int(a) => match a.to_i64() {
                Some(v) => Value::from(v),
                None => Value::String(a.to_string()),
            },
            RingElem::Rat(q) => {
                if q.is_integer() {
                    match q.numer().to_i64() {
                        Some(v) => Value::from(v),
                        None => Value::String(q.numer().to_string()),
                    }
                } else {
                    Value::String(format!("{}/{}", q.numer(), q.denom()))
                }
            }
            RingElem::Residue(r) => Value::from(*r),
            RingElem::Poly(c) => {
                if c.iter().skip(1).all(|&x| x == 0) {
                    Value::from(c[0])
                } else {
                    let last = c.iter().rposition(|&x| x != 0).unwrap();
                    Value::Array(c[..=last].iter().map(|&x| Value::from(x)).collect())
                }
            }
        }
    }

    pub fn format_elem(&self, x: &RingElem) -> String {
        match x {
            RingElem::Int(a) => a.to_string(),
            RingElem::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            RingElem::Residue(r) => r.to_string(),
            RingElem::Poly(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| match i {
                        0 => x.to_string(),
                        1 if x == 1 => "e".to_string(),
                        1 => format!("{x}e"),
                        _ if x == 1 => format!("e^{i}"),
                        _ => format!("{x}e^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "F:{p}"),
            RingSpec::IntegersMod(m) => write!(f, "Zmod:{m}"),
            RingSpec::TruncatedPoly { p, n } => write!(f, "Feps:{p}:{n}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |x: &str| -> Result<u64> {
            x.parse()
                .map_err(|_| Error::Parse(format!("bad ring parameter {x:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["Z"] => Ok(RingSpec::Integers),
            ["Q"] => Ok(RingSpec::Rationals),
            ["F", p] => RingSpec::prime_field(num(p)?),
            ["Zmod", m] => RingSpec::integers_mod(num(m)?),
            ["Feps", p, n] => RingSpec::truncated_poly(num(p)?, num(n)? as usize),
            _ => Err(Error::Parse(format!("unknown ring spec {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Z", "Q", "F:5", "Zmod:6", "Feps:2:3"] {
            assert_eq!(r(s).to_string(), s);
        }
        assert!("F:6".parse::<RingSpec>().is_err());
        assert!("Zmod:1".parse::<RingSpec>().is_err());
        assert!("Feps:4:2".parse::<RingSpec>().is_err());
        assert!("Feps:2:0".parse::<RingSpec>().is_err());
        assert!("W".parse::<RingSpec>().is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn residue_arithmetic_is_canonical() {
        let z6 = r("Zmod:6");
        assert_eq!(z6.from_i64(-1), RingElem::Residue(5));
        assert_eq!(
            z6.mul(&z6.from_i64(4), &z6.from_i64(5)),
            RingElem::Residue(2)
        );
        assert!(z6.is_unit(&z6.from_i64(5)));
        assert!(!z6.is_unit(&z6.from_i64(3)));
        assert_eq!(z6.ann(&z6.from_i64(4)), RingElem::Residue(3));
        let (c, u) = z6.canonical_associate(&z6.from_i64(4));
        assert_eq!(c, RingElem::Residue(2));
        assert_eq!(z6.mul(&u, &c), z6.from_i64(4));
        assert!(z6.is_unit(&u));
    }

    #[test]
    fn truncated_poly_inverse_and_division() {
        let t = r("Feps:3:4");
        let a = RingElem::Poly(vec![2, 1, 0, 1]);
        let ai = t.inv(&a).unwrap();
        assert_eq!(t.mul(&a, &ai), t.one());
        let e2 = t.monomial(2);
        let b = t.mul(&e2, &a);
        let q = t.div_exact(&b, &e2).unwrap();
        assert_eq!(t.mul(&e2, &q), b);
        assert!(t.div_exact(&e2, &b.clone()).is_some());
        assert!(t.div_exact(&t.one(), &e2).is_none());
        assert_eq!(t.ann(&e2), t.monomial(2));
    }

    #[test]
    fn gcdex_is_unimodular() {
        for ring in [r("Z"), r("Zmod:12"), r("Feps:2:3"), r("F:7"), r("Q")] {
            let vals: Vec<RingElem> = match ring {
                RingSpec::TruncatedPoly { .. } => vec![
                    RingElem::Poly(vec![0, 1, 1]),
                    RingElem::Poly(vec![1, 0, 1]),
                    RingElem::Poly(vec![0, 0, 1]),
                    RingElem::Poly(vec![0, 0, 0]),
                ],
                _ => [0i64, 3, 4, 8, 9, -6]
                    .iter()
                    .map(|&x| ring.from_i64(x))
                    .collect(),
            };
            for a in &vals {
                for b in &vals {
                    let g = ring.gcdex(a, b);
                    let det = ring.sub(&ring.mul(&g.s, &g.v), &ring.mul(&g.t, &g.u));
                    assert!(ring.is_one(&det), "{ring} det");
                    let top = ring.add(&ring.mul(&g.s, a), &ring.mul(&g.t, b));
                    assert_eq!(top, g.g, "{ring}");
                    let bottom = ring.add(&ring.mul(&g.u, a), &ring.mul(&g.v, b));
                    assert!(ring.is_zero(&bottom), "{ring}");
                }
            }
        }
    }

    #[test]
    fn quo_rem_reconstructs() {
        let z8 = r("Zmod:8");
        let (q, rem) = z8.quo_rem(&z8.from_i64(7), &z8.from_i64(4));
        assert_eq!(rem, RingElem::Residue(3));
        assert_eq!(z8.add(&z8.mul(&q, &z8.from_i64(4)), &rem), z8.from_i64(7));
        let t = r("Feps:2:3");
        let b = RingElem::Poly(vec![1, 1, 1]);
        let p = t.monomial(1);
        let (q, rem) = t.quo_rem(&b, &p);
        assert_eq!(rem, RingElem::Poly(vec![1, 0, 0]));
        assert_eq!(t.add(&t.mul(&q, &p), &rem), b);
        let z = r("Z");
        let (q, rem) = z.quo_rem(&z.from_i64(-7), &z.from_i64(3));
        assert_eq!(rem, z.from_i64(2));
        assert_eq!(q, z.from_i64(-3));
    }

    #[test]
    fn element_json_round_trip() {
        let q = r("Q");
        let x = q.parse_elem(&serde_json::json!("-3/6")).unwrap();
        assert_eq!(q.format_elem(&x), "-1/2");
        assert_eq!(q.parse_elem(&q.elem_to_json(&x)).unwrap(), x);
        let t = r("Feps:5:3");
        let y = t.parse_elem(&serde_json::json!([1, 7])).unwrap();
        assert_eq!(y, RingElem::Poly(vec![1, 2, 0]));
        assert_eq!(t.parse_elem(&t.elem_to_json(&y)).unwrap(), y);
        assert_eq!(t.format_elem(&y), "1+2e");
    }
}
