//! The exact scalar tower: rationals, Gaussian rationals, and the
//! quadratic extension by a formal sqrt(2).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rational = num_rational::BigRational;

/// Exact field operations; blanket-implemented so each tower layer feeds
/// the next.
pub trait FieldOps:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> FieldOps for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Coefficient field required by the expression layer.
///
/// Implementations must be exact: `is_zero` decides equality, and division
/// by a nonzero element is always exact.
pub trait Coeff: FieldOps + fmt::Debug + fmt::Display {
    /// Complex conjugation (identity on real subfields).
    fn conj(&self) -> Self;
    fn from_int(n: i64) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// `re + i*im` over a base field `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gaussian<R> {
    pub re: R,
    pub im: R,
}

impl<R: FieldOps> Gaussian<R> {
    pub fn new(re: R, im: R) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: R) -> Self {
        Gaussian { re, im: R::zero() }
    }

    pub fn i() -> Self {
        Gaussian {
            re: R::zero(),
            im: R::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Inverse by the conjugate: 1/(a+ib) = (a-ib)/(a^2+b^2).
    pub fn inv(&self) -> Option<Self> {
        let norm = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        if norm.is_zero() {
            return None;
        }
        Some(Gaussian {
            re: self.re.clone() / norm.clone(),
            im: -(self.im.clone() / norm),
        })
    }
}

impl<R: FieldOps> Zero for Gaussian<R> {
    fn zero() -> Self {
        Gaussian {
            re: R::zero(),
            im: R::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<R: FieldOps> One for Gaussian<R> {
    fn one() -> Self {
        Gaussian {
            re: R::one(),
            im: R::zero(),
        }
    }
}

impl<R: FieldOps> Add for Gaussian<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<R: FieldOps> Sub for Gaussian<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<R: FieldOps> Mul for Gaussian<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gaussian {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<R: FieldOps> Neg for Gaussian<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<R: FieldOps> Div for Gaussian<R> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero scalar")
    }
}

/// `base + sqrt(2)*surd` over a base field `R`.
///
/// sqrt(2) is irrational over Q(i), so `base^2 - 2*surd^2` vanishes only at
/// zero and the extension is again a field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqrtExt<R> {
    pub base: R,
    pub surd: R,
}

impl<R: FieldOps> SqrtExt<R> {
    pub fn new(base: R, surd: R) -> Self {
        SqrtExt { base, surd }
    }

    pub fn from_base(base: R) -> Self {
        SqrtExt {
            base,
            surd: R::zero(),
        }
    }

    pub fn sqrt2() -> Self {
        SqrtExt {
            base: R::zero(),
            surd: R::one(),
        }
    }

    fn two() -> R {
        R::one() + R::one()
    }

    pub fn inv(&self) -> Option<Self> {
        let norm = self.base.clone() * self.base.clone()
            - Self::two() * self.surd.clone() * self.surd.clone();
        if norm.is_zero() {
            // Over Q(i) this forces base = surd = 0.
            return None;
        }
        Some(SqrtExt {
            base: self.base.clone() / norm.clone(),
            surd: -(self.surd.clone() / norm),
        })
    }
}

impl<R: FieldOps> Zero for SqrtExt<R> {
    fn zero() -> Self {
        SqrtExt {
            base: R::zero(),
            surd: R::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.surd.is_zero()
    }
}

impl<R: FieldOps> One for SqrtExt<R> {
    fn one() -> Self {
        SqrtExt {
            base: R::one(),
            surd: R::zero(),
        }
    }
}

impl<R: FieldOps> Add for SqrtExt<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SqrtExt {
            base: self.base + rhs.base,
            surd: self.surd + rhs.surd,
        }
    }
}

impl<R: FieldOps> Sub for SqrtExt<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        SqrtExt {
            base: self.base - rhs.base,
            surd: self.surd - rhs.surd,
        }
    }
}

impl<R: FieldOps> Mul for SqrtExt<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SqrtExt {
            base: self.base.clone() * rhs.base.clone()
                + Self::two() * self.surd.clone() * rhs.surd.clone(),
            surd: self.base * rhs.surd + self.surd * rhs.base,
        }
    }
}

impl<R: FieldOps> Neg for SqrtExt<R> {
    type Output = Self;
    fn neg(self) -> Self {
        SqrtExt {
            base: -self.base,
            surd: -self.surd,
        }
    }
}

impl<R: FieldOps> Div for SqrtExt<R> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero scalar")
    }
}

/// The concrete tower Q(i, sqrt(2)).
pub type Qi = Gaussian<Rational>;
pub type Qis = SqrtExt<Qi>;

impl Qis {
    pub fn rat(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator literal");
        SqrtExt::from_base(Gaussian::real(Rational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn int(n: i64) -> Self {
        Self::rat(n, 1)
    }

    pub fn imag_unit() -> Self {
        SqrtExt::from_base(Gaussian::i())
    }

    /// n * i as a scalar.
    pub fn int_i(n: i64) -> Self {
        Self::imag_unit() * Self::int(n)
    }

    pub fn from_rational(r: Rational) -> Self {
        SqrtExt::from_base(Gaussian::real(r))
    }

    pub fn from_gaussian(g: Qi) -> Self {
        SqrtExt::from_base(g)
    }

    /// True when the value lies in Q (no i, no sqrt(2) part).
    pub fn is_rational(&self) -> bool {
        self.surd.is_zero() && self.base.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.base.re)
        } else {
            None
        }
    }
}

impl Coeff for Qis {
    fn conj(&self) -> Self {
        SqrtExt {
            base: self.base.conj(),
            surd: self.surd.conj(),
        }
    }

    fn from_int(n: i64) -> Self {
        Qis::int(n)
    }

    fn inv(&self) -> Option<Self> {
        SqrtExt::inv(self)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Additive pieces of a scalar: rational coefficient times `I`/`r2` units.
fn parts(s: &Qis) -> Vec<(Rational, &'static str)> {
    let mut out = Vec::new();
    if !s.base.re.is_zero() {
        out.push((s.base.re.clone(), ""));
    }
    if !s.base.im.is_zero() {
        out.push((s.base.im.clone(), "I"));
    }
    if !s.surd.re.is_zero() {
        out.push((s.surd.re.clone(), "r2"));
    }
    if !s.surd.im.is_zero() {
        out.push((s.surd.im.clone(), "I*r2"));
    }
    out
}

impl fmt::Display for Qis {
    /// Prints in the expression grammar, e.g. `3/2`, `-2*I`, `1/2*r2`.
    /// Multi-part values are parenthesized by the expression printer, not
    /// here.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps = parts(self);
        if ps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, unit) in ps {
            let (sign, mag) = if r.is_negative() {
                ("-", -r.clone())
            } else {
                ("+", r.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if unit.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", unit)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), unit)?;
            }
        }
        Ok(())
    }
}
