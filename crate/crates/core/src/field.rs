//! Exact scalar fields.
//!
//! [`Scalar`] abstracts over the three number systems used here: arbitrary
//! precision rationals, residues modulo a runtime prime, and dual numbers
//! `a + bε` (`ε² = 0`) over either of them. Elements of a prime field carry
//! their modulus, so constructors take a field descriptor ([`Scalar::Ctx`]).

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::matrix::{gaussian_determinant, Matrix};

pub use num_rational::BigRational as Rational;

/// The Mersenne prime `2³¹ − 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Runtime description of the field an element lives in.
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for non-units.
    fn try_inv(&self) -> Option<Self>;
    /// Sampling distribution used by the random samplers: integers in
    /// `[−10, 10]` over the rationals, uniform residues over `F_p`.
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    fn determinant(m: &Matrix<Self>) -> Self {
        gaussian_determinant(m)
    }
}

/// Marker descriptor for the field of rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Scalar for Rational {
    type Ctx = Rationals;

    fn ctx(&self) -> Rationals {
        Rationals
    }
    fn zero(_: &Rationals) -> Self {
        Zero::zero()
    }
    fn one(_: &Rationals) -> Self {
        One::one()
    }
    fn from_i64(_: &Rationals, v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn random<R: Rng + ?Sized>(_: &Rationals, rng: &mut R) -> Self {
        Rational::from_integer(BigInt::from(rng.gen_range(-10i64..=10)))
    }
}

/// Render a rational as `p/q` in lowest terms, integers without a denominator.
pub fn format_rational(r: &Rational) -> alloc::string::String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// `F_p` for a prime `p < 2⁶³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2⁶³`.
    pub fn new(p: u64) -> Option<Self> {
        (p < (1 << 63) && is_prime(p)).then_some(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, v: i64) -> Fp {
        let p = self.p as i128;
        Fp {
            value: (v as i128).rem_euclid(p) as u64,
            field: *self,
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        let p = self.field.p;
        let s = self.value as u128 + rhs.value as u128;
        Fp {
            value: (s % p as u128) as u64,
            field: self.field,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let value = if self.value == 0 { 0 } else { self.field.p - self.value };
        Fp {
            value,
            field: self.field,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.field, rhs.field);
        Fp {
            value: mul_mod(self.value, rhs.value, self.field.p),
            field: self.field,
        }
    }
}

impl Scalar for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field
    }
    fn zero(ctx: &PrimeField) -> Self {
        ctx.element(0)
    }
    fn one(ctx: &PrimeField) -> Self {
        ctx.element(1)
    }
    fn from_i64(ctx: &PrimeField, v: i64) -> Self {
        ctx.element(v)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn try_inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let p = self.field.p;
        Some(Fp {
            value: pow_mod(self.value, p - 2, p),
            field: self.field,
        })
    }
    fn random<R: Rng + ?Sized>(ctx: &PrimeField, rng: &mut R) -> Self {
        Fp {
            value: rng.gen_range(0..ctx.p),
            field: *ctx,
        }
    }
}

/// First-order dual number `re + eps·ε` with `ε² = 0`.
///
/// Evaluating a polynomial at `x + ε` leaves `∂/∂x` in the `eps` part.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<F> {
    pub re: F,
    pub eps: F,
}

impl<F: Scalar> Dual<F> {
    pub fn constant(re: F) -> Self {
        let eps = F::zero(&re.ctx());
        Self { re, eps }
    }

    pub fn variable(re: F) -> Self {
        let eps = F::one(&re.ctx());
        Self { re, eps }
    }
}

impl<F: Scalar> Add for Dual<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            re: self.re + rhs.re,
            eps: self.eps + rhs.eps,
        }
    }
}

impl<F: Scalar> Sub for Dual<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            re: self.re - rhs.re,
            eps: self.eps - rhs.eps,
        }
    }
}

impl<F: Scalar> Neg for Dual<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            eps: -self.eps,
        }
    }
}

impl<F: Scalar> Mul for Dual<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.re.clone() * rhs.eps + self.eps * rhs.re.clone();
        Dual {
            re: self.re * rhs.re,
            eps,
        }
    }
}

impl<F: Scalar> Scalar for Dual<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.re.ctx()
    }
    fn zero(ctx: &F::Ctx) -> Self {
        Dual {
            re: F::zero(ctx),
            eps: F::zero(ctx),
        }
    }
    fn one(ctx: &F::Ctx) -> Self {
        Dual {
            re: F::one(ctx),
            eps: F::zero(ctx),
        }
    }
    fn from_i64(ctx: &F::Ctx, v: i64) -> Self {
        Dual {
            re: F::from_i64(ctx, v),
            eps: F::zero(ctx),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    /// `(a + bε)⁻¹ = a⁻¹ − b a⁻² ε`; pure infinitesimals are not units.
    fn try_inv(&self) -> Option<Self> {
        let inv = self.re.try_inv()?;
        let eps = -(self.eps.clone() * inv.clone() * inv.clone());
        Some(Dual { re: inv, eps })
    }
    fn random<R: Rng + ?Sized>(ctx: &F::Ctx, rng: &mut R) -> Self {
        Dual::constant(F::random(ctx, rng))
    }

    /// `det(A + εB) = det A + ε Σ_j det(A with column j taken from B)`.
    ///
    /// Only base-field determinants are needed, so singular real parts (common
    /// on the section) are handled without dividing by infinitesimals.
    fn determinant(m: &Matrix<Self>) -> Self {
        let n = m.n();
        let re = m.map(|x| x.re.clone());
        let ctx = m.get(1, 1).ctx();
        let mut eps = F::zero(&ctx);
        for col in 1..=n {
            if (1..=n).all(|row| m.get(row, col).eps.is_zero()) {
                continue;
            }
            let mut replaced = re.clone();
            for row in 1..=n {
                replaced.set(row, col, m.get(row, col).eps.clone());
            }
            eps = eps + F::determinant(&replaced);
        }
        Dual {
            re: F::determinant(&re),
            eps,
        }
    }
}
