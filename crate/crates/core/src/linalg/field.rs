//! Exact scalar fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Characteristic of a working field. `0` stands for the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Characteristic(pub u64);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A field with exact arithmetic.
///
/// Elements are plain values; the field object carries whatever context the
/// arithmetic needs (the modulus for prime fields).
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync;

    fn characteristic(&self) -> Characteristic;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Draws a random element. Prime fields sample uniformly; the rationals
    /// sample small integers so that sample points stay readable.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Portable scalar form, used in reports.
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let den = self.from_bigint(q.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.from_bigint(q.numer()), &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `acc += a * b`.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }
}

/// The prime field `Z/pZ`, with `p < 2^32` so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Panics unless `p` is a prime below 2^32.
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 32), "prime field modulus too large: {p}");
        assert!(is_prime(p), "{p} is not prime");
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for Fp {
    type Elem = u64;

    fn characteristic(&self) -> Characteristic {
        Characteristic(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn to_scalar(&self, a: &u64) -> FieldScalar {
        FieldScalar::Residue { p: self.p, value: *a }
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> Characteristic {
        Characteristic::ZERO
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
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

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }

    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rational {
            num: a.numer().to_string(),
            den: a.denom().to_string(),
        }
    }
}

/// A field element detached from its field: a rational in characteristic 0
/// or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldScalar {
    Rational { num: String, den: String },
    Residue { p: u64, value: u64 },
}

impl FieldScalar {
    pub fn characteristic(&self) -> Characteristic {
        match self {
            FieldScalar::Rational { .. } => Characteristic::ZERO,
            FieldScalar::Residue { p, .. } => Characteristic(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational { num, .. } => num == "0",
            FieldScalar::Residue { value, .. } => *value == 0,
        }
    }

    /// The value without its modulus, for reports that already record `p`.
    pub fn plain(&self) -> String {
        match self {
            FieldScalar::Residue { value, .. } => value.to_string(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational { num, den } if den == "1" => write!(f, "{num}"),
            FieldScalar::Rational { num, den } => write!(f, "{num}/{den}"),
            FieldScalar::Residue { p, value } => write!(f, "{value} mod {p}"),
        }
    }
}

/// Trial-division primality; every modulus here is small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `|n|`, ascending. Empty for 0 and ±1.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("prime factor beyond u64"));
    }
    out
}
