use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the numerical core is written against.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}

/// `log(1 + w)` on the principal branch, accurate for small `|w|`.
pub fn ln_1p<T: Real>(w: Complex<T>) -> Complex<T> {
    let two = lit::<T>(2.0);
    let re = (two * w.re + w.norm_sqr()).ln_1p() / two;
    let im = w.im.atan2(T::one() + w.re);
    Complex::new(re, im)
}

/// Principal argument of `b / a`, i.e. the signed angle from `a` to `b`.
#[inline]
pub fn angle_between<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let cross = a.re * b.im - a.im * b.re;
    let dot = a.re * b.re + a.im * b.im;
    cross.atan2(dot)
}

pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
