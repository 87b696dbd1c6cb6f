//! Base rings: ℤ, ℚ, 𝔽_p and one-variable Laurent rings over a field.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring with explicit elements.
///
/// Ring objects carry whatever parameters the arithmetic needs (a prime,
/// a coefficient field) so elements can stay plain data.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;
    /// Short name used in reports and scene files.
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a` if `negate` is false, `-a` otherwise.
    fn signed(&self, negate: bool, a: &Self::Elem) -> Self::Elem {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

/// A Euclidean domain with a unit normalization.
pub trait EuclideanRing: Ring {
    /// Euclidean function; zero only for the zero element.
    fn norm(&self, a: &Self::Elem) -> BigUint;
    /// `(q, r)` with `a = q b + r` and `r = 0` or `norm(r) < norm(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Returns a unit `u` such that `u a` is the normal representative of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.normalizing_unit(a), a)
    }
}

pub trait Field: EuclideanRing {
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.unit_inverse(a).expect("inverse of zero")
    }
}

fn parse_error(s: &str, what: &str) -> Error {
    Error::Parse(format!("cannot read {s:?} as {what}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|_| parse_error(s, "an integer"))
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "integers".into()
    }
}

impl EuclideanRing for Integers {
    fn norm(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // floor division by |b| keeps remainders in [0, |b|)
        let (q, r) = a.div_mod_floor(&b.abs());
        if b.is_negative() {
            (-q, r)
        } else {
            (q, r)
        }
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.magnitude().is_one()).then(|| a.clone())
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| parse_error(s, "a rational"))?;
        let d: BigInt = d.parse().map_err(|_| parse_error(s, "a rational"))?;
        if d.is_zero() {
            return Err(parse_error(s, "a rational"));
        }
        Ok(BigRational::new(n, d))
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "rationals".into()
    }
}

impl EuclideanRing for Rationals {
    fn norm(&self, a: &BigRational) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        }
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
}

impl Field for Rationals {}

/// The prime field 𝔽_p, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p > u32::MAX as u64 {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: BigInt = s.trim().parse().map_err(|_| parse_error(s, "a residue"))?;
        Ok(self.reduce(&n))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("fp:{}", self.p)
    }
}

impl EuclideanRing for PrimeField {
    fn norm(&self, a: &u64) -> BigUint {
        BigUint::from((*a != 0) as u8)
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.inv(b)), 0)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.inv(a)
        }
    }
}

impl Field for PrimeField {}

/// Laurent polynomial `Σ coeffs[i] t^(low + i)`; zero has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<E> {
    low: i64,
    coeffs: Vec<E>,
}

impl<E> LaurentPoly<E> {
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
}

/// The ring `K[t, t⁻¹]` over a field `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F: Field> {
    field: F,
}

impl<F: Field> Laurent<F> {
    pub fn new(field: F) -> Self {
        Laurent { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    fn trim(&self, low: i64, mut coeffs: Vec<F::Elem>) -> LaurentPoly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| self.field.is_zero(c)).count();
        if lead == coeffs.len() {
            return LaurentPoly { low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    pub fn monomial(&self, c: F::Elem, exp: i64) -> LaurentPoly<F::Elem> {
        self.trim(exp, vec![c])
    }

    /// The variable `t`.
    pub fn t(&self) -> LaurentPoly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn from_coeffs(&self, low: i64, coeffs: Vec<F::Elem>) -> LaurentPoly<F::Elem> {
        self.trim(low, coeffs)
    }

    fn coeff(&self, a: &LaurentPoly<F::Elem>, e: i64) -> F::Elem {
        let i = e - a.low;
        if i < 0 || i >= a.coeffs.len() as i64 {
            self.field.zero()
        } else {
            a.coeffs[i as usize].clone()
        }
    }

    fn parse_term(&self, body: &str, whole: &str) -> Result<LaurentPoly<F::Elem>> {
        let body = body.trim();
        let Some(pos) = body.find('t') else {
            return Ok(self.monomial(self.field.parse(body)?, 0));
        };
        let coef = body[..pos].trim().trim_end_matches('*').trim();
        let coef = if coef.is_empty() {
            self.field.one()
        } else {
            self.field.parse(coef.trim_start_matches('(').trim_end_matches(')'))?
        };
        let rest = body[pos + 1..].trim();
        let exp = if rest.is_empty() {
            1
        } else {
            let e = rest.strip_prefix('^').ok_or_else(|| parse_error(whole, "a Laurent polynomial"))?;
            let e = e.trim().trim_start_matches('(').trim_end_matches(')');
            e.trim().parse::<i64>().map_err(|_| parse_error(whole, "a Laurent polynomial"))?
        };
        Ok(self.monomial(coef, exp))
    }
}

impl<F: Field> Ring for Laurent<F> {
    type Elem = LaurentPoly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }
    fn one(&self) -> Self::Elem {
        self.monomial(self.field.one(), 0)
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.monomial(self.field.from_i64(n), 0)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return b.clone();
        }
        if self.is_zero(b) {
            return a.clone();
        }
        let low = a.low.min(b.low);
        let high = a.high().max(b.high());
        let coeffs = (low..=high)
            .map(|e| self.field.add(&self.coeff(a, e), &self.coeff(b, e)))
            .collect();
        self.trim(low, coeffs)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LaurentPoly { low: a.low, coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let mut coeffs = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(x, y));
            }
        }
        self.trim(a.low + b.low, coeffs)
    }

    /// Reads sums of terms like `3/4`, `-2t`, `t^-1`, `5*t^(2)`.
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_error(s, "a Laurent polynomial"));
        }
        let mut acc = self.zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 0..=bytes.len() {
            let boundary = i == bytes.len()
                || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(');
            if !boundary {
                continue;
            }
            let piece = &compact[start..i];
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(parse_error(s, "a Laurent polynomial"));
            }
            let term = self.parse_term(body, s)?;
            acc = self.add(&acc, &self.signed(neg, &term));
            start = i;
        }
        Ok(acc)
    }

    fn render(&self, a: &Self::Elem) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e = a.low + i as i64;
            let text = self.field.render(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if mag.contains('/') && e != 0 { format!("({mag})") } else { mag };
            match (e, mag.as_str()) {
                (0, m) => out.push_str(m),
                (1, "1") => out.push('t'),
                (1, m) => out.push_str(&format!("{m}t")),
                (e, "1") => out.push_str(&format!("t^{e}")),
                (e, m) => out.push_str(&format!("{m}t^{e}")),
            }
        }
        out
    }

    fn name(&self) -> String {
        match self.field.name().as_str() {
            "rationals" => "laurent-q".into(),
            other => format!("laurent-{other}"),
        }
    }
}

impl<F: Field> EuclideanRing for Laurent<F> {
    /// Degree span `high - low`, shifted by one so only zero has norm zero.
    fn norm(&self, a: &Self::Elem) -> BigUint {
        if self.is_zero(a) {
            BigUint::zero()
        } else {
            BigUint::from((a.high() - a.low + 1) as u64)
        }
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        assert!(!self.is_zero(b), "division by zero");
        let span_b = b.high() - b.low;
        let lead_inv = self.field.inv(b.coeffs.last().unwrap());
        let mut q = self.zero();
        let mut r = a.clone();
        while !self.is_zero(&r) && r.high() - r.low >= span_b {
            let c = self.field.mul(r.coeffs.last().unwrap(), &lead_inv);
            let term = self.monomial(c, r.high() - b.high());
            r = self.sub(&r, &self.mul(&term, b));
            q = self.add(&q, &term);
        }
        (q, r)
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.coeffs.len() != 1 {
            return None;
        }
        Some(self.monomial(self.field.inv(&a.coeffs[0]), -a.low))
    }

    /// Normal forms are polynomials with nonzero constant term and leading coefficient one.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return self.one();
        }
        self.monomial(self.field.inv(a.coeffs.last().unwrap()), -a.low)
    }
}

/// Exponent of `t` in a monomial, if the element is `c t^k`.
pub fn monomial_exponent<F: Field>(a: &LaurentPoly<F::Elem>) -> Option<i64> {
    (a.coeffs.len() == 1).then_some(a.low)
}

/// Sign helper: `(-1)^e`.
pub fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// Converts an arbitrary-precision integer into an element of `ring`.
pub fn from_bigint<R: Ring>(ring: &R, n: &BigInt) -> R::Elem {
    let chunk = BigInt::from(1u64 << 62);
    let (sign, mag) = (n.sign(), n.magnitude().clone());
    let mut acc = ring.zero();
    let mut scale = ring.one();
    let base = ring.from_i64(1 << 62);
    let mut rest = BigInt::from_biguint(Sign::Plus, mag);
    while !rest.is_zero() {
        let (q, r) = rest.div_mod_floor(&chunk);
        acc = ring.add(&acc, &ring.mul(&scale, &ring.from_i64(r.to_i64().unwrap())));
        scale = ring.mul(&scale, &base);
        rest = q;
    }
    ring.signed(sign == Sign::Minus, &acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_division_keeps_small_remainders() {
        let z = Integers;
        let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
        assert_eq!((q, r), (BigInt::from(-3), BigInt::from(2)));
        let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(-3));
        assert_eq!(q * BigInt::from(-3) + &r, BigInt::from(7));
        assert!(r < BigInt::from(3));
    }

    #[test]
    fn laurent_parse_and_render() {
        let l = Laurent::new(Rationals);
        let a = l.parse("1 - t + 2t^-1").unwrap();
        assert_eq!(l.render(&a), "2t^-1 + 1 - t");
        assert_eq!(l.parse(&l.render(&a)).unwrap(), a);
        let b = l.parse("3/4*t^(2) - 1/2").unwrap();
        assert_eq!(l.render(&b), "-1/2 + (3/4)t^2");
        assert_eq!(l.parse(&l.render(&b)).unwrap(), b);
    }

    #[test]
    fn laurent_division() {
        let l = Laurent::new(Rationals);
        let a = l.parse("t^-2 - t").unwrap();
        let b = l.parse("1 - t").unwrap();
        let (q, r) = l.div_rem(&a, &b);
        assert!(l.is_zero(&r));
        assert_eq!(l.mul(&q, &b), a);
        let (q, r) = l.div_rem(&l.parse("t^3 + 2").unwrap(), &b);
        assert_eq!(l.add(&l.mul(&q, &b), &r), l.parse("t^3 + 2").unwrap());
        assert!(l.norm(&r) < l.norm(&b));
    }

    #[test]
    fn laurent_units_and_normal_forms() {
        let l = Laurent::new(Rationals);
        let u = l.parse("-3t^-4").unwrap();
        assert!(l.is_unit(&u));
        assert_eq!(l.mul(&u, &l.unit_inverse(&u).unwrap()), l.one());
        let a = l.parse("2t^3 - 2t^4").unwrap();
        assert_eq!(l.render(&l.normalize(&a)), "-1 + t");
    }

    #[test]
    fn prime_field_arithmetic() {
        assert!(PrimeField::new(9).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert_eq!(f.reduce(&BigInt::from(-15)), 6);
    }

    #[test]
    fn bigint_embedding() {
        let n: BigInt = "-123456789012345678901234567890".parse().unwrap();
        assert_eq!(from_bigint(&Integers, &n), n);
        let f = PrimeField::new(101).unwrap();
        assert_eq!(from_bigint(&f, &n), f.reduce(&n));
    }
}
