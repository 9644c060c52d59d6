//! Exact field arithmetic: arbitrary-precision rationals and prime fields F_p.
//!
//! All downstream rank and nullspace decisions are exact, so scalars must be
//! canonical: rationals are kept in lowest terms with positive denominator
//! (guaranteed by `BigRational`), F_p residues are kept in `[0, p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Errors raised by scalar construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is rejected unless the allow-char-2 flag is set")]
    CharacteristicTwo,
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: String },
    #[error("unknown field spec {0:?} (expected \"rational\" or \"fp:<p>\")")]
    UnknownSpec(String),
}

/// Which exact field computations run over.
///
/// The textual form used by the CLI and by file headers is `"rational"` or
/// `"fp:<p>"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Validates a prime modulus. `p = 2` is rejected by default; the
    /// set-map oracle may opt in with [`FieldSpec::prime_allowing_char2`].
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        Self::prime_allowing_char2(p)
    }

    pub fn prime_allowing_char2(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn parse(text: &str, allow_char2: bool) -> Result<Self, FieldError> {
        if text == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = text.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| FieldError::UnknownSpec(text.to_owned()))?;
            return if allow_char2 {
                Self::prime_allowing_char2(p)
            } else {
                Self::prime(p)
            };
        }
        Err(FieldError::UnknownSpec(text.to_owned()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element usable by the generic linear algebra.
///
/// Elements of F_p need a modulus to be constructed, so constructors take a
/// runtime context (`()` for the rationals, the modulus for F_p). Arithmetic
/// is total except for inversion; mixing moduli is reported through the
/// `try_*` variants and is a panic in the plain ones.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn spec(ctx: &Self::Ctx) -> FieldSpec;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, value: i64) -> Self;
    fn parse(ctx: &Self::Ctx, text: &str) -> Result<Self, FieldError>;
    /// Canonical textual form, e.g. `"3/2"` or `"4 mod 5"`. Equal scalars
    /// render identically.
    fn render(&self) -> String;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.add(rhs))
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.sub(rhs))
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(rhs))
    }
}

impl Field for BigRational {
    type Ctx = ();

    fn spec(_: &()) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_i64(_: &(), value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn parse(_: &(), text: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse {
            text: text.to_owned(),
            field: "rational".to_owned(),
        };
        let t = text.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
                let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BigRational::new(numer, denom))
            }
            None => {
                let numer: BigInt = t.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(numer))
            }
        }
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// An element of F_p. Carries its modulus so values stay self-describing;
/// the residue is always reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

/// Construction context for [`Fp`]: a validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpCtx {
    modulus: u64,
}

impl FpCtx {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        match spec {
            FieldSpec::Prime(p) => Ok(FpCtx { modulus: p }),
            FieldSpec::Rational => Err(FieldError::UnknownSpec("rational".to_owned())),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Fp {
    pub fn new(value: i64, ctx: &FpCtx) -> Self {
        <Fp as Field>::from_i64(ctx, value)
    }

    pub fn residue(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "scalars belong to different prime fields: fp:{} vs fp:{}",
            self.modulus, rhs.modulus
        );
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Field for Fp {
    type Ctx = FpCtx;

    fn spec(ctx: &FpCtx) -> FieldSpec {
        FieldSpec::Prime(ctx.modulus)
    }

    fn zero(ctx: &FpCtx) -> Self {
        Fp {
            value: 0,
            modulus: ctx.modulus,
        }
    }

    fn one(ctx: &FpCtx) -> Self {
        Fp {
            value: 1 % ctx.modulus,
            modulus: ctx.modulus,
        }
    }

    fn from_i64(ctx: &FpCtx, value: i64) -> Self {
        let p = ctx.modulus as i128;
        let v = ((value as i128 % p) + p) % p;
        Fp {
            value: v as u64,
            modulus: ctx.modulus,
        }
    }

    fn parse(ctx: &FpCtx, text: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse {
            text: text.to_owned(),
            field: format!("fp:{}", ctx.modulus),
        };
        let t = text.trim();
        // Accepted forms: "4", "-1", "4 mod 5", "3/2" (with invertible denominator).
        let t = match t.split_once("mod") {
            Some((lhs, rhs)) => {
                let stated: u64 = rhs.trim().parse().map_err(|_| bad())?;
                if stated != ctx.modulus {
                    return Err(FieldError::FieldMismatch(
                        format!("fp:{stated}"),
                        format!("fp:{}", ctx.modulus),
                    ));
                }
                lhs.trim()
            }
            None => t,
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let numer: i64 = n.trim().parse().map_err(|_| bad())?;
                let denom: i64 = d.trim().parse().map_err(|_| bad())?;
                let numer = Fp::from_i64(ctx, numer);
                let denom = Fp::from_i64(ctx, denom);
                numer.div(&denom)
            }
            None => {
                let v: i64 = t.parse().map_err(|_| bad())?;
                Ok(Fp::from_i64(ctx, v))
            }
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Fp {
            value: ((self.value as u128 + rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        let p = self.modulus as u128;
        Fp {
            value: ((self.value as u128 + p - rhs.value as u128) % p) as u64,
            modulus: self.modulus,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Fp {
            value: ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }

    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Extended Euclid on (value, p); p prime so the gcd is 1.
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let p = self.modulus as i128;
        Ok(Fp {
            value: (((t0 % p) + p) % p) as u64,
            modulus: self.modulus,
        })
    }

    fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.add(rhs))
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.sub(rhs))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.mul(rhs))
    }
}

impl Fp {
    fn require_same(&self, rhs: &Self) -> Result<(), FieldError> {
        if self.modulus == rhs.modulus {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(
                format!("fp:{}", self.modulus),
                format!("fp:{}", rhs.modulus),
            ))
        }
    }
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
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
