//! Exact arithmetic in Z[ω, 1/√2] with ω = e^{iπ/4}.
//!
//! A value is stored as `(a + bω + cω² + dω³) / √2^k`. The representation is
//! kept canonical (smallest `k`), so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingScalar {
    coeffs: [i64; 4],
    k: u32,
}

type Wide = [i128; 4];

fn add_wide(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow)
}

fn sub_wide(x: i128, y: i128) -> Result<i128> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

// √2 = ω − ω³, so √2·(a, b, c, d) = (b − d, a + c, b + d, c − a).
fn times_sqrt2(v: Wide) -> Result<Wide> {
    Ok([
        sub_wide(v[1], v[3])?,
        add_wide(v[0], v[2])?,
        add_wide(v[1], v[3])?,
        sub_wide(v[2], v[0])?,
    ])
}

// Negation for the infallible automorphisms; i64::MIN has no negation.
fn flip(x: i64) -> i64 {
    x.checked_neg().expect("ring overflow in conjugation")
}

fn widen(c: [i64; 4]) -> Wide {
    c.map(i128::from)
}

impl RingScalar {
    pub const ZERO: RingScalar = RingScalar { coeffs: [0; 4], k: 0 };
    pub const ONE: RingScalar = RingScalar { coeffs: [1, 0, 0, 0], k: 0 };

    /// Builds `(a + bω + cω² + dω³) / √2^k` and reduces it to canonical form.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u32) -> Result<Self> {
        Self::reduce(widen([a, b, c, d]), k)
    }

    fn reduce(mut v: Wide, mut k: u32) -> Result<Self> {
        if v == [0; 4] {
            return Ok(Self::ZERO);
        }
        // Divisible by √2 exactly when a ≡ c and b ≡ d (mod 2); the quotient is
        // √2·x / 2.
        while k > 0 && (v[0] ^ v[2]) & 1 == 0 && (v[1] ^ v[3]) & 1 == 0 {
            let t = times_sqrt2(v)?;
            v = t.map(|x| x / 2);
            k -= 1;
        }
        let mut coeffs = [0i64; 4];
        for (dst, src) in coeffs.iter_mut().zip(v) {
            *dst = i64::try_from(src).map_err(|_| Error::Overflow)?;
        }
        Ok(RingScalar { coeffs, k })
    }

    pub fn from_int(n: i64) -> Self {
        RingScalar { coeffs: [n, 0, 0, 0], k: 0 }
    }

    /// `re + i·im` with integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        RingScalar { coeffs: [re, 0, im, 0], k: 0 }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    /// ω^m for any integer m (ω⁸ = 1).
    pub fn omega_pow(m: i64) -> Self {
        let m = m.rem_euclid(8) as usize;
        let mut coeffs = [0i64; 4];
        if m < 4 {
            coeffs[m] = 1;
        } else {
            coeffs[m - 4] = -1;
        }
        RingScalar { coeffs, k: 0 }
    }

    pub fn sqrt2() -> Self {
        RingScalar { coeffs: [0, 1, 0, -1], k: 0 }
    }

    pub fn inv_sqrt2() -> Self {
        RingScalar { coeffs: [1, 0, 0, 0], k: 1 }
    }

    /// Multiplies by √2^j; negative `j` divides.
    pub fn mul_sqrt2_pow(&self, j: i32) -> Result<Self> {
        if j >= 0 {
            let mut v = widen(self.coeffs);
            for _ in 0..j {
                v = times_sqrt2(v)?;
            }
            Self::reduce(v, self.k)
        } else {
            let k = self.k.checked_add(j.unsigned_abs()).ok_or(Error::Overflow)?;
            Self::reduce(widen(self.coeffs), k)
        }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.coeffs
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The interchange 5-tuple `[a, b, c, d, k]`.
    pub fn to_tuple(&self) -> [i64; 5] {
        let [a, b, c, d] = self.coeffs;
        [a, b, c, d, i64::from(self.k)]
    }

    pub fn from_tuple(t: [i64; 5]) -> Result<Self> {
        let k = u32::try_from(t[4])
            .map_err(|_| Error::InvalidArgument(format!("denominator exponent {} is negative or too large", t[4])))?;
        Self::new(t[0], t[1], t[2], t[3], k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0; 4]
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    fn aligned(&self, k: u32) -> Result<Wide> {
        let mut v = widen(self.coeffs);
        let d = k - self.k;
        if d >= 2 {
            let f = 2i128.checked_pow(d / 2).ok_or(Error::Overflow)?;
            for x in v.iter_mut() {
                *x = x.checked_mul(f).ok_or(Error::Overflow)?;
            }
        }
        if d % 2 == 1 {
            v = times_sqrt2(v)?;
        }
        Ok(v)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let k = self.k.max(other.k);
        let x = self.aligned(k)?;
        let y = other.aligned(k)?;
        let mut v = [0i128; 4];
        for i in 0..4 {
            v[i] = add_wide(x[i], y[i])?;
        }
        Self::reduce(v, k)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let mut coeffs = [0i64; 4];
        for (dst, src) in coeffs.iter_mut().zip(self.coeffs) {
            *dst = src.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(RingScalar { coeffs, k: self.k })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let x = widen(self.coeffs);
        let y = widen(other.coeffs);
        let mut v = [0i128; 4];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let p = xi.checked_mul(*yj).ok_or(Error::Overflow)?;
                let m = i + j;
                if m < 4 {
                    v[m] = add_wide(v[m], p)?;
                } else {
                    v[m - 4] = sub_wide(v[m - 4], p)?;
                }
            }
        }
        let k = self.k.checked_add(other.k).ok_or(Error::Overflow)?;
        Self::reduce(v, k)
    }

    /// Complex conjugate: ω ↦ −ω³, ω² ↦ −ω², ω³ ↦ −ω.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.coeffs;
        RingScalar { coeffs: [a, flip(d), flip(c), flip(b)], k: self.k }
    }

    // Galois automorphisms ω ↦ ω³ and ω ↦ ω⁵.
    fn sigma3(&self) -> Self {
        let [a, b, c, d] = self.coeffs;
        RingScalar { coeffs: [a, d, flip(c), b], k: self.k }
    }

    fn sigma5(&self) -> Self {
        let [a, b, c, d] = self.coeffs;
        RingScalar { coeffs: [a, flip(b), c, flip(d)], k: self.k }
    }

    /// |x|², an exact real element.
    pub fn norm_sq(&self) -> Result<Self> {
        self.checked_mul(&self.conj())
    }

    pub fn is_unit_modulus(&self) -> Result<bool> {
        Ok(self.norm_sq()?.is_one())
    }

    /// Exact quotient, failing when it leaves the ring.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = RingScalar { coeffs: other.coeffs, k: 0 };
        let co = num.sigma3().checked_mul(&num.sigma5())?.checked_mul(&num.conj())?;
        let norm = num.checked_mul(&co)?;
        // The product over all Galois conjugates is a rational integer.
        debug_assert!(norm.coeffs[1..] == [0, 0, 0] && norm.k == 0);
        let mut n = norm.coeffs[0];
        let mut twos = 0u32;
        while n % 2 == 0 {
            n /= 2;
            twos += 1;
        }
        let q = self.checked_mul(&co)?;
        let mut coeffs = [0i64; 4];
        for (dst, src) in coeffs.iter_mut().zip(q.coeffs) {
            if src % n != 0 {
                return Err(Error::NotDivisible);
            }
            *dst = src / n;
        }
        let k = q.k.checked_add(2 * twos).ok_or(Error::Overflow)?;
        let k_other = i32::try_from(other.k).map_err(|_| Error::Overflow)?;
        Self::reduce(widen(coeffs), k)?.mul_sqrt2_pow(k_other)
    }

    /// Returns `m` with `self = ω^m`, if any.
    pub fn omega_exponent(&self) -> Option<u8> {
        (0..8u8).find(|&m| *self == Self::omega_pow(i64::from(m)))
    }

    /// For a real value, `(p, q, k)` with value `(p + q√2) / √2^k`.
    pub fn real_parts(&self) -> Option<(i64, i64, u32)> {
        let [a, b, c, d] = self.coeffs;
        (c == 0 && d == -b).then_some((a, b, self.k))
    }

    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a, b, c, d] = self.coeffs.map(|x| x as f64);
        let re = a + (b - d) * h;
        let im = c + (b + d) * h;
        let mut scale = 0.5f64.powi((self.k / 2) as i32);
        if self.k % 2 == 1 {
            scale *= h;
        }
        Complex64::new(re * scale, im * scale)
    }

    /// Short label for units and simple values, used in rendered tables.
    pub fn render(&self) -> String {
        const UNITS: [&str; 8] = ["1", "w", "i", "iw", "-1", "-w", "-i", "-iw"];
        match self.omega_exponent() {
            Some(m) => UNITS[m as usize].to_string(),
            None => self.to_string(),
        }
    }
}

impl Default for RingScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for RingScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, k] = self.to_tuple();
        write!(f, "[{a}, {b}, {c}, {d}, {k}]")
    }
}

impl fmt::Debug for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingScalar{self}")
    }
}

// The operator forms panic on overflow; the checked_* methods report it.
impl Add for RingScalar {
    type Output = RingScalar;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("ring overflow in addition")
    }
}

impl Sub for RingScalar {
    type Output = RingScalar;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("ring overflow in subtraction")
    }
}

impl Mul for RingScalar {
    type Output = RingScalar;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("ring overflow in multiplication")
    }
}

impl Neg for RingScalar {
    type Output = RingScalar;
    fn neg(self) -> Self {
        self.checked_neg().expect("ring overflow in negation")
    }
}

impl Serialize for RingScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(5)?;
        for x in self.to_tuple() {
            t.serialize_element(&x)?;
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for RingScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(deserializer)?;
        let t: [i64; 5] = v.as_slice().try_into().map_err(|_| {
            de::Error::invalid_length(v.len(), &"a scalar tuple [a, b, c, d, k] of five integers")
        })?;
        RingScalar::from_tuple(t).map_err(de::Error::custom)
    }
}
