//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! All arithmetic in this crate is exact; there is no floating point anywhere.
//! The two fields used by the pipeline are `Rationals` (backed by
//! arbitrary-precision integers) and `PrimeField` with a runtime odd prime
//! modulus (default 32003).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A field together with its element representation.
///
/// Elements carry no back-pointer to the field; every operation goes through
/// the field descriptor, which lets `PrimeField` keep its modulus in one
/// place and elements stay as bare residues.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers guard with `is_zero`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number in this field, or `None` when the
    /// denominator is not invertible (bad prime).
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    /// `a - b*c`, the elimination kernel primitive.
    fn mul_sub(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
    /// A unit to multiply a nonzero coefficient sequence through for the
    /// field's canonical generator scaling: the lead inverse (monic) by
    /// default; the rationals override this with the primitive-integer
    /// scaling that keeps Buchberger coefficients small.
    fn scaling_unit(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        self.inv(&coeffs[0])
    }
    /// Short tag used in reports ("q" or "fp:32003").
    fn name(&self) -> String;
}

/// The field of rational numbers with arbitrary-precision arithmetic.
///
/// `BigRational` keeps values reduced to lowest terms with positive
/// denominator, which is exactly the canonical form the serialization
/// format requires.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn elem_to_string(&self, a: &BigRational) -> String {
        rational_to_string(a)
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn scaling_unit(&self, coeffs: &[BigRational]) -> BigRational {
        // lcm of denominators over gcd of numerators, sign matching the lead
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let unit = BigRational::new(den_lcm, num_gcd);
        if coeffs[0].is_negative() {
            -unit
        } else {
            unit
        }
    }
    fn name(&self) -> String {
        "q".to_string()
    }
}

/// Serialize as `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

/// A prime field `F_p` with runtime modulus; elements are residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The default computation prime, a common computer-algebra choice.
    pub const DEFAULT_PRIME: u64 = 32003;
    /// Second prime for two-prime agreement checks.
    pub const CROSSCHECK_PRIME: u64 = 31013;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Parse(format!("modulus {p} too large (must be < 2^31)")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p);
        let den = q.denom().mod_floor(&p);
        let den_u: u64 = den.try_into().ok()?;
        if den_u == 0 {
            return None;
        }
        let num_u: u64 = num.try_into().ok()?;
        Some(self.mul_raw(num_u, self.inv(&den_u)))
    }
    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
            .ok_or_else(|| Error::BadPrime(self.p, s.to_string()))
    }
    fn name(&self) -> String {
        format!("fp:{}", self.p)
    }
}

use num_integer::Integer;

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Rational reconstruction: find `n/d` with `|n|, d <= sqrt(m/2)` and
/// `n ≡ a·d (mod m)`, via the half-extended Euclidean algorithm.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound2: BigInt = m / 2;
    // invariants: r0 = s0*m + t0*a, r1 = s1*m + t1*a
    let mut r0 = m.clone();
    let mut r1 = a.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while &r1 * &r1 > bound2 {
        if r1.is_zero() {
            return None;
        }
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || &t1 * &t1 > bound2 {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    if den.is_zero() || num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        for s in ["3/4", "-7", "0", "22/7", "-5/9"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&q), s);
        }
        // canonical form: reduced, positive denominator
        assert_eq!(rational_to_string(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(rational_to_string(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(32003).unwrap();
        let a = f.from_i64(-5);
        assert_eq!(a, 31998);
        assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        assert_eq!(f.add(&f.from_i64(32000), &f.from_i64(5)), 2);
        assert!(PrimeField::new(32004).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(32003));
        assert!(is_prime(31013));
        assert!(is_prime(73) && is_prime(89) && is_prime(71) && is_prime(79));
        assert!(!is_prime(1) && !is_prime(32001));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn reconstruction() {
        let p = BigInt::from(32003u64) * BigInt::from(31013u64);
        let val = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let f = PrimeField::new(32003).unwrap();
        let g = PrimeField::new(31013).unwrap();
        let a = f.from_rational(&val).unwrap();
        let b = g.from_rational(&val).unwrap();
        // CRT
        let m1 = BigInt::from(32003u64);
        let m2 = BigInt::from(31013u64);
        let inv = BigInt::from(g.inv(&(32003 % 31013)));
        let x = BigInt::from(a) + &m1 * ((BigInt::from(b) - BigInt::from(a)) * inv).mod_floor(&m2);
        let rec = rational_reconstruct(&x, &p).unwrap();
        assert_eq!(rec, val);
    }
}
