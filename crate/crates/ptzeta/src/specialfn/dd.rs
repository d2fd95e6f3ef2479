//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 values
//! carrying roughly 32 significant digits.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

use crate::real::Real;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const PI_DD: DoubleDouble = DoubleDouble::new_raw(3.141592653589793, 1.2246467991473532e-16);
const LN2_DD: DoubleDouble = DoubleDouble::new_raw(0.6931471805599453, 2.3190468138462996e-17);
const E_DD: DoubleDouble = DoubleDouble::new_raw(2.718281828459045, 1.4456468917292502e-16);
const LN10_DD: DoubleDouble = DoubleDouble::new_raw(2.302585092994046, -2.1707562233822494e-16);
const EULER_DD: DoubleDouble = DoubleDouble::new_raw(0.5772156649015329, -4.942915152430645e-18);

impl DoubleDouble {
    pub const fn new_raw(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        DoubleDouble { hi: h, lo: l }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn from_f(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn mul_f(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }

    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble { hi: self.hi * f, lo: self.lo * f }
    }

    fn sqr(self) -> Self {
        self * self
    }

    fn nonfinite(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn expm1_small(r: Self) -> Self {
        let mut term = r;
        let mut sum = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / Self::from_f(n);
            sum = sum + term;
            if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) || n > 40.0 {
                break;
            }
        }
        sum
    }

    fn exp_m1_impl(self) -> (Self, bool) {
        if self.hi.is_nan() {
            return (self, false);
        }
        if self.hi > 709.0 {
            return (Self::nonfinite(f64::INFINITY), false);
        }
        if self.hi < -745.0 {
            return (-Self::one(), true);
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - LN2_DD.mul_f(k);
        let mut s = Self::expm1_small(r.ldexp(-10));
        for _ in 0..10 {
            s = s * (s + Self::from_f(2.0));
        }
        if k == 0.0 {
            (s, true)
        } else {
            ((s + Self::one()).ldexp(k as i32) - Self::one(), true)
        }
    }

    fn sin_cos_taylor(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            term = -term * r2 / Self::from_f((n + 1.0) * (n + 2.0));
            n += 2.0;
            s = s + term;
            if term.hi.abs() < 1e-35 || n > 60.0 {
                break;
            }
        }
        let mut c = Self::one();
        let mut term = Self::one();
        let mut n = 0.0;
        loop {
            term = -term * r2 / Self::from_f((n + 1.0) * (n + 2.0));
            n += 2.0;
            c = c + term;
            if term.hi.abs() < 1e-35 || n > 60.0 {
                break;
            }
        }
        (s, c)
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*}", p, self.hi + self.lo),
            None => write!(f, "{}", self.hi + self.lo),
        }
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::nonfinite(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return Self::nonfinite(p1);
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self::nonfinite(q1);
        }
        let r = self - b.mul_f(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + Self::from_f(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - b * (self / b).trunc()
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::from_f(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::from_f(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Self::from_f)
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        let h = t.hi.to_i64()?;
        h.checked_add(t.lo.to_i64()?)
    }
    fn to_u64(&self) -> Option<u64> {
        let v = self.to_i64()?;
        u64::try_from(v).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Some(DoubleDouble::new(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleDouble::new(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::from_f(x))
    }
}

impl NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(Self::from_f)
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::from_f(f64::NAN)
    }
    fn infinity() -> Self {
        Self::from_f(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Self::from_f(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Self::from_f(-0.0)
    }
    fn min_value() -> Self {
        Self::from_f(f64::MIN)
    }
    fn min_positive_value() -> Self {
        Self::from_f(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        Self::from_f(4.930380657631324e-32)
    }
    fn max_value() -> Self {
        Self::from_f(f64::MAX)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }
    fn floor(self) -> Self {
        let f = self.hi.floor();
        if f == self.hi {
            DoubleDouble::new(f, self.lo.floor())
        } else {
            Self::from_f(f)
        }
    }
    fn ceil(self) -> Self {
        let c = self.hi.ceil();
        if c == self.hi {
            DoubleDouble::new(c, self.lo.ceil())
        } else {
            Self::from_f(c)
        }
    }
    fn round(self) -> Self {
        if self.hi >= 0.0 {
            (self + Self::from_f(0.5)).floor()
        } else {
            (self - Self::from_f(0.5)).ceil()
        }
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::from_f(self.hi.signum())
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }
    fn powf(self, n: Self) -> Self {
        if n == n.trunc() && n.abs().hi < 2e9 {
            return self.powi(n.hi as i32);
        }
        (n * self.ln()).exp()
    }
    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::zero() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = Self::from_f(self.hi * x);
        ax + Self::from_f((self - ax.sqr()).hi * x * 0.5)
    }
    fn exp(self) -> Self {
        let (m, ok) = self.exp_m1_impl();
        if !ok {
            return m;
        }
        m + Self::one()
    }
    fn exp2(self) -> Self {
        (self * LN2_DD).exp()
    }
    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::neg_infinity() } else { Self::nan() };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut x = Self::from_f(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - Self::one();
        }
        x
    }
    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / LN2_DD
    }
    fn log10(self) -> Self {
        self.ln() / LN10_DD
    }
    fn max(self, other: Self) -> Self {
        if self >= other || other.is_nan() {
            self
        } else {
            other
        }
    }
    fn min(self, other: Self) -> Self {
        if self <= other || other.is_nan() {
            self
        } else {
            other
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Self::zero()
        }
    }
    fn cbrt(self) -> Self {
        if self.hi == 0.0 {
            return self;
        }
        let a = self.abs();
        let mut x = Self::from_f(a.hi.cbrt());
        x = x - (x * x * x - a) / (Self::from_f(3.0) * x * x);
        if self.hi < 0.0 {
            -x
        } else {
            x
        }
    }
    fn hypot(self, other: Self) -> Self {
        let a = self.abs();
        let b = other.abs();
        let m = a.max(b);
        if m.hi == 0.0 {
            return Self::zero();
        }
        if !m.hi.is_finite() {
            return m;
        }
        let k = m.hi.log2().floor() as i32;
        let a = a.ldexp(-k);
        let b = b.ldexp(-k);
        (a * a + b * b).sqrt().ldexp(k)
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }
    fn asin(self) -> Self {
        self.atan2((Self::one() - self * self).sqrt())
    }
    fn acos(self) -> Self {
        (Self::one() - self * self).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::one())
    }
    fn atan2(self, other: Self) -> Self {
        let y = self;
        let x = other;
        if x.hi == 0.0 && y.hi == 0.0 {
            return Self::from_f(y.hi.atan2(x.hi));
        }
        let mut z = Self::from_f(y.hi.atan2(x.hi));
        let r = x.hypot(y);
        let (xs, ys) = (x / r, y / r);
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            z = z + (ys * c - xs * s) / (xs * c + ys * s);
        }
        z
    }
    fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::nan(), Self::nan());
        }
        let half_pi = PI_DD.ldexp(-1);
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let r = self - half_pi.mul_f(k);
        let (s, c) = Self::sin_cos_taylor(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
    fn exp_m1(self) -> Self {
        self.exp_m1_impl().0
    }
    fn ln_1p(self) -> Self {
        if self.hi.abs() > 0.5 {
            return (Self::one() + self).ln();
        }
        let mut x = Self::from_f(self.hi.ln_1p());
        for _ in 0..2 {
            let e = x.exp_m1();
            x = x - (e - self) / (e + Self::one());
        }
        x
    }
    fn sinh(self) -> Self {
        if self.hi.abs() < 0.5 {
            let e = self.exp_m1();
            return (e - (-self).exp_m1()) * Self::from_f(0.5);
        }
        let e = self.exp();
        (e - e.recip()) * Self::from_f(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()) * Self::from_f(0.5)
    }
    fn tanh(self) -> Self {
        if self.hi.abs() > 40.0 {
            return Self::from_f(self.hi.signum());
        }
        let e = (self * Self::from_f(2.0)).exp_m1();
        e / (e + Self::from_f(2.0))
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = (a + (a * a + Self::one()).sqrt()).ln();
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        (self + (self * self - Self::one()).sqrt()).ln()
    }
    fn atanh(self) -> Self {
        ((Self::one() + self) / (Self::one() - self)).ln() * Self::from_f(0.5)
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.hi.integer_decode()
    }
    fn to_degrees(self) -> Self {
        self * Self::from_f(180.0) / PI_DD
    }
    fn to_radians(self) -> Self {
        self * PI_DD / Self::from_f(180.0)
    }
}

impl FloatConst for DoubleDouble {
    fn E() -> Self {
        E_DD
    }
    fn FRAC_1_PI() -> Self {
        PI_DD.recip()
    }
    fn FRAC_1_SQRT_2() -> Self {
        Self::from_f(2.0).sqrt().recip()
    }
    fn FRAC_2_PI() -> Self {
        Self::from_f(2.0) / PI_DD
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Self::from_f(2.0) / PI_DD.sqrt()
    }
    fn FRAC_PI_2() -> Self {
        PI_DD.ldexp(-1)
    }
    fn FRAC_PI_3() -> Self {
        PI_DD / Self::from_f(3.0)
    }
    fn FRAC_PI_4() -> Self {
        PI_DD.ldexp(-2)
    }
    fn FRAC_PI_6() -> Self {
        PI_DD / Self::from_f(6.0)
    }
    fn FRAC_PI_8() -> Self {
        PI_DD.ldexp(-3)
    }
    fn LN_10() -> Self {
        LN10_DD
    }
    fn LN_2() -> Self {
        LN2_DD
    }
    fn LOG10_E() -> Self {
        LN10_DD.recip()
    }
    fn LOG2_E() -> Self {
        LN2_DD.recip()
    }
    fn PI() -> Self {
        PI_DD
    }
    fn SQRT_2() -> Self {
        Self::from_f(2.0).sqrt()
    }
}

impl Real for DoubleDouble {
    fn euler_gamma() -> Self {
        EULER_DD
    }

    fn from_rational(r: &BigRational) -> Self {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Self::from_f(hi);
        }
        let rem = r - BigRational::from_float(hi).unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
        DoubleDouble::new(hi, rem.to_f64().unwrap_or(0.0))
    }
}
