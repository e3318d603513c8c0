//! Exact arithmetic in cyclotomic fields `Q(zeta_L)` and q-combinatorics.
//!
//! Elements are kept in canonical form: coefficient vectors of length
//! `phi(L)` over the power basis `1, zeta, ..., zeta^(phi(L)-1)`, reduced
//! modulo the `L`-th cyclotomic polynomial. Equality is coefficientwise
//! after embedding into a common field.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

/// Monic integer coefficients of the `l`-th cyclotomic polynomial, ascending
/// by degree. Computed by dividing `x^l - 1` by all proper-divisor factors.
fn cyclotomic_polynomial(l: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    // x^l - 1
    let mut num = vec![BigInt::zero(); l as usize + 1];
    num[0] = -BigInt::one();
    num[l as usize] = BigInt::one();
    for d in 1..l {
        if l % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(l, arc.clone());
    arc
}

/// Exact division of integer polynomials; `den` must be monic and divide `num`.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[dd + i].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An exact element of `Q(zeta_order)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_L^(e mod L)` in canonical reduced form.
    pub fn root(order: u32, e: i64) -> Self {
        assert!(order >= 1);
        let e = e.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(order, poly)
    }

    /// Builds an element from an arbitrary-degree polynomial in `zeta_order`.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Self {
        let coeffs = reduce_mod_cyclotomic(order, poly);
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// If the element lies in the rational subfield, returns the rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embeds into `Q(zeta_m)`; `m` must be a multiple of the current order.
    pub fn promote(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "cannot embed Q(zeta_{}) into Q(zeta_{})", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let stride = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len() * stride];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * stride] = c.clone();
            }
        }
        Self::from_poly(m, poly)
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            (self.clone(), other.clone())
        } else {
            let l = (self.order as u64).lcm(&(other.order as u64)) as u32;
            (self.promote(l), other.promote(l))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unify(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, poly)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`
    /// modulo the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        let phi = cyclotomic_polynomial(self.order);
        let modulus: Vec<BigRational> = phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        // extended gcd of self.coeffs with modulus
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_div_rem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (nonzero constant since the cyclotomic polynomial is irreducible)
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let inv_coeffs: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
        Ok(Self::from_poly(self.order, inv_coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Pretty form as a polynomial in `q = zeta_order` using powers
    /// `q^0..q^(order-1)`, choosing the lift with the fewest terms so output
    /// matches the usual root-of-unity notation (for example `3*q^2` instead
    /// of `-3 - 3*q` when the order is 3).
    pub fn to_q_string(&self) -> String {
        let l = self.order as usize;
        let phi = self.coeffs.len();
        let mut best: Vec<BigRational> = {
            let mut v = self.coeffs.clone();
            v.resize(l, BigRational::zero());
            v
        };
        // for prime order, 1 + q + ... + q^(L-1) = 0 gives alternative lifts
        if l > 1 && is_prime(self.order) {
            let mut candidates: Vec<BigRational> = self.coeffs.iter().cloned().collect();
            candidates.push(BigRational::zero());
            for t in candidates {
                let mut cand = vec![-t.clone(); l];
                for (i, c) in self.coeffs.iter().enumerate() {
                    cand[i] += c;
                }
                let nz = |v: &[BigRational]| v.iter().filter(|c| !c.is_zero()).count();
                if nz(&cand) < nz(&best) {
                    best = cand;
                }
            }
        }
        let _ = phi;
        format_q_poly(&best)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn format_q_poly(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_str = rational_to_string(&abs);
        if i == 0 {
            out.push_str(&coeff_str);
        } else {
            if !abs.is_one() {
                out.push_str(&coeff_str);
                out.push('*');
            }
            if i == 1 {
                out.push('q');
            } else {
                out.push_str(&format!("q^{}", i));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn reduce_mod_cyclotomic(order: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = euler_phi(order) as usize;
    let cp = cyclotomic_polynomial(order);
    while poly.len() > phi {
        let d = poly.len() - 1;
        let lead = poly[d].clone();
        if !lead.is_zero() {
            for (j, cj) in cp.iter().enumerate() {
                if !cj.is_zero() {
                    let t = &lead * BigRational::from_integer(cj.clone());
                    poly[d - phi + j] -= t;
                }
            }
        }
        poly.pop();
    }
    poly.resize(phi, BigRational::zero());
    poly
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead_inv = b[db].recip();
    for i in (0..quot.len()).rev() {
        let c = &rem[db + i] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                rem[i + j] -= t;
            }
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.unify(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_q_string())
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a scalar expression in `q = zeta_order`: a sum of terms like
/// `3`, `-1/3`, `q`, `2*q^2`, `q^2/3`.
pub fn parse_scalar(order: u32, input: &str) -> Result<Cyclotomic> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut acc = Cyclotomic::zero(order);
    let bytes = s.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = BigRational::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &s[start..i];
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {input:?}")));
        }
        acc = acc.add(&parse_term(order, term)?.scale(&sign));
    }
    Ok(acc)
}

fn parse_term(order: u32, term: &str) -> Result<Cyclotomic> {
    // [coef][*]q[^exp][/den]  or plain rational
    match term.find('q') {
        None => Ok(Cyclotomic::from_rational(order, parse_rational(term)?)),
        Some(pos) => {
            let coef_part = term[..pos].trim_end_matches('*');
            let coef = if coef_part.is_empty() { BigRational::one() } else { parse_rational(coef_part)? };
            let rest = &term[pos + 1..];
            let (exp, den) = if let Some(r) = rest.strip_prefix('^') {
                match r.split_once('/') {
                    Some((e, d)) => (e, Some(d)),
                    None => (r, None),
                }
            } else if let Some(d) = rest.strip_prefix('/') {
                ("1", Some(d))
            } else if rest.is_empty() {
                ("1", None)
            } else {
                return Err(Error::Parse(format!("bad term {term:?}")));
            };
            let e: i64 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
            let mut c = coef;
            if let Some(d) = den {
                let d = parse_rational(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {term:?}")));
                }
                c /= d;
            }
            Ok(Cyclotomic::root(order, e).scale(&c))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycRepr::deserialize(deserializer)?;
        let phi = euler_phi(repr.order) as usize;
        if repr.coeffs.len() != phi {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                phi,
                repr.order,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Cyclotomic { order: repr.order, coeffs })
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// `(n)_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(q.order());
    let mut p = Cyclotomic::one(q.order());
    for _ in 0..n {
        acc = acc.add(&p);
        p = p.mul(q);
    }
    acc
}

/// `(n)!_q = (1)_q (2)_q ... (n)_q`.
pub fn q_factorial(n: u32, q: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::one(q.order());
    for i in 1..=n {
        acc = acc.mul(&q_int(i, q));
    }
    acc
}

/// Gaussian binomial via the Pascal recursion
/// `binom(n+1,k) = q^k binom(n,k) + binom(n,k-1)`, which stays well defined
/// at roots of unity where the factorial quotient degenerates.
pub fn q_binom(n: u32, k: u32, q: &Cyclotomic) -> Result<Cyclotomic> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let one = Cyclotomic::one(q.order());
    let mut row = vec![one.clone()]; // row for n = 0
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(one.clone());
        for j in 1..row.len() {
            let t = q.pow(j as i64).unwrap().mul(&row[j]);
            next.push(t.add(&row[j - 1]));
        }
        next.push(one.clone());
        row = next;
    }
    Ok(row[k as usize].clone())
}
