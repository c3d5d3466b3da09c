use num_complex::Complex;

use super::DiscMap;
use crate::scalar::{is_finite, lit, ln_1p, Real};
use crate::{Error, Result};

/// `b(z) = z (z + a) / (1 + a z)` with real `a` in `[0, 1)`.
///
/// Besides `a` the factor keeps `1 - a` exactly, so that every quantity that
/// tends to zero as `a -> 1` can be evaluated without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkeFactor<T> {
    a: T,
    gap: T,
}

impl<T: Real> BlaschkeFactor<T> {
    pub fn new(a: T) -> Result<Self> {
        if !(a >= T::zero() && a < T::one()) {
            return Err(Error::domain(format!("factor parameter {a} not in [0, 1)")));
        }
        Ok(Self { a, gap: T::one() - a })
    }

    /// Builds the factor from `1 - a`.
    pub fn from_gap(gap: T) -> Result<Self> {
        if !(gap > T::zero() && gap <= T::one()) {
            return Err(Error::domain(format!("factor gap {gap} not in (0, 1]")));
        }
        Ok(Self { a: T::one() - gap, gap })
    }

    /// Takes `a` and `1 - a` from separate closed forms, each accurate in its own regime.
    pub(crate) fn from_parts(a: T, gap: T) -> Result<Self> {
        if !(a >= T::zero() && a <= T::one() && gap > T::zero() && gap <= T::one()) {
            return Err(Error::domain(format!(
                "factor parameter a = {a}, 1 - a = {gap} out of range"
            )));
        }
        Ok(Self { a, gap })
    }

    pub fn a(&self) -> T {
        self.a
    }

    /// `1 - a`.
    pub fn gap(&self) -> T {
        self.gap
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !is_finite(z) || z.norm() > T::one() {
            return Err(Error::domain(format!("|z| > 1 for z = {z}")));
        }
        Ok(self.eval_unchecked(z))
    }

    #[inline]
    pub fn eval_unchecked(&self, z: Complex<T>) -> Complex<T> {
        z * self.ratio(z)
    }

    /// `b(z) / z = (z + a) / (1 + a z)`.
    #[inline]
    pub fn ratio(&self, z: Complex<T>) -> Complex<T> {
        (z + self.a) / (z * self.a + T::one())
    }

    /// `1 - b(z)/z = (1 - a)(1 - z) / (1 + a z)`.
    #[inline]
    pub fn ratio_defect(&self, z: Complex<T>) -> Complex<T> {
        (Complex::new(T::one(), T::zero()) - z) * self.gap / (z * self.a + T::one())
    }

    /// `log(b(z)/z)` on the branch that is real at `z = 0`.
    pub fn log_ratio(&self, z: Complex<T>) -> Complex<T> {
        ln_1p(-self.ratio_defect(z))
    }

    /// `b'(z) = (a z^2 + 2 z + a) / (1 + a z)^2`.
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let den = z * self.a + T::one();
        (z * z * self.a + z * lit::<T>(2.0) + self.a) / (den * den)
    }

    /// `z b'(z) / b(z) - 1`, which equals `z (1 - a^2) / ((1 + a z)(z + a))`.
    pub fn log_derivative_defect(&self, z: Complex<T>) -> Complex<T> {
        z * self.one_minus_a_squared() / ((z * self.a + T::one()) * (z + self.a))
    }

    pub fn one_minus_a_squared(&self) -> T {
        self.gap * (T::one() + self.a)
    }

    /// Critical point inside the disc, `(-1 + sqrt(1 - a^2)) / a` (the origin when `a = 0`).
    pub fn critical_point(&self) -> Complex<T> {
        if self.a == T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let s = self.one_minus_a_squared().sqrt();
        Complex::new((s - T::one()) / self.a, T::zero())
    }

    /// Drop `d(z, w) - d(b(z), b(w))` of the hyperbolic distance under one
    /// application of the factor, evaluated without subtracting nearly equal
    /// distances. Stays relatively accurate when `1 - a` is far below machine
    /// epsilon.
    pub fn hyperbolic_decrement(&self, z: Complex<T>, w: Complex<T>) -> T {
        let one = T::one();
        let two = lit::<T>(2.0);
        if z == w {
            return T::zero();
        }
        let cross = Complex::new(one, T::zero()) - w.conj() * z;
        let q_before = (one - z.norm_sqr()) * (one - w.norm_sqr()) / cross.norm_sqr();
        let p_before = (z - w).norm() / cross.norm();

        // (1 - |b(z)|^2) / (1 - |z|^2) = 1 + |z|^2 (1 - a^2) / |1 + a z|^2
        let s = |v: Complex<T>| v.norm_sqr() * self.one_minus_a_squared() / (v * self.a + one).norm_sqr();
        // conj(m(w)) m(z) = 1 - eta with m = b / z
        let (dz, dw) = (self.ratio_defect(z), self.ratio_defect(w).conj());
        let eta = dz + dw - dz * dw;
        let kappa = w.conj() * z * eta / cross;
        let t = two * kappa.re + kappa.norm_sqr();
        let log_growth = s(z).ln_1p() + s(w).ln_1p() - t.ln_1p();

        let (bz, bw) = (self.eval_unchecked(z), self.eval_unchecked(w));
        let p_after = (bz - bw).norm() / (Complex::new(one, T::zero()) - bw.conj() * bz).norm();
        let p_drop = q_before * log_growth.exp_m1() / (p_before + p_after);
        two * (p_drop / (one + p_after)).ln_1p() + log_growth
    }
}

impl<T: Real> DiscMap<T> for BlaschkeFactor<T> {
    fn apply(&self, z: Complex<T>) -> Complex<T> {
        self.eval_unchecked(z)
    }

    fn derivative_at_zero(&self) -> T {
        self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeo::disc_distance;
    use proptest::prelude::*;

    type C = Complex<f64>;

    #[test]
    fn trivial_factor_squares() {
        let b = BlaschkeFactor::new(0.0).unwrap();
        let z = C::new(0.3, -0.4);
        assert!((b.eval(z).unwrap() - z * z).norm() < 1e-15);
    }

    #[test]
    fn origin_is_fixed() {
        for a in [0.0, 0.3, 0.99] {
            assert_eq!(
                BlaschkeFactor::new(a).unwrap().eval(C::new(0.0, 0.0)).unwrap(),
                C::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn direct_arithmetic_value() {
        let b = BlaschkeFactor::new(0.5).unwrap();
        let v = b.eval(C::new(0.5, 0.0)).unwrap();
        assert!((v - C::new(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn outside_closed_disc_is_rejected() {
        let b = BlaschkeFactor::new(0.5).unwrap();
        assert!(b.eval(C::new(1.0, 0.0)).is_ok());
        assert!(matches!(b.eval(C::new(1.01, 0.0)), Err(Error::Domain(_))));
        assert!(BlaschkeFactor::new(1.0).is_err());
        assert!(BlaschkeFactor::new(-0.1).is_err());
    }

    #[test]
    fn derivative_at_zero_matches_central_difference() {
        let h = 1e-5;
        for (a, tol) in [(0.0, 1e-9), (0.5, 1e-9), (0.99, 1e-8)] {
            let b = BlaschkeFactor::new(a).unwrap();
            let fd = (b.eval(C::new(h, 0.0)).unwrap() - b.eval(C::new(-h, 0.0)).unwrap()) / (2.0 * h);
            assert!((fd.re - b.derivative_at_zero()).abs() < tol, "a = {a}");
            assert!(fd.im.abs() < tol);
        }
    }

    #[test]
    fn derivative_matches_finite_differences_off_origin() {
        let b = BlaschkeFactor::new(0.7).unwrap();
        let z = C::new(0.2, 0.35);
        let h = 1e-5;
        let fd = (b.eval_unchecked(z + h) - b.eval_unchecked(z - h)) / (2.0 * h);
        assert!((fd - b.derivative(z)).norm() < 1e-9);
    }

    #[test]
    fn critical_point_is_a_zero_of_the_derivative() {
        let b = BlaschkeFactor::new(0.5).unwrap();
        assert!(b.derivative(b.critical_point()).norm() < 1e-14);
        assert!(b.critical_point().norm() < 1.0);
    }

    #[test]
    fn log_derivative_defect_matches_quotient_rule() {
        let b = BlaschkeFactor::new(0.5).unwrap();
        for k in 0..16 {
            let z = C::from_polar(0.2, k as f64 * 0.4);
            let direct = z * b.derivative(z) / b.eval_unchecked(z) - 1.0;
            assert!((direct - b.log_derivative_defect(z)).norm() < 1e-14);
        }
    }

    #[test]
    fn decrement_agrees_with_naive_difference_for_moderate_a() {
        let b = BlaschkeFactor::new(0.5).unwrap();
        let z = C::new(0.3, 0.2);
        let w = C::new(-0.4, 0.5);
        let naive = disc_distance(z, w).unwrap() - disc_distance(b.eval_unchecked(z), b.eval_unchecked(w)).unwrap();
        assert!((naive - b.hyperbolic_decrement(z, w)).abs() < 1e-13);
    }

    #[test]
    fn decrement_stays_resolved_when_gap_is_tiny() {
        // decrement scales linearly with 1 - a in that regime
        let z = C::new(0.2, 0.1);
        let w = C::new(0.5, -0.3);
        let d1 = BlaschkeFactor::from_gap(1e-30).unwrap().hyperbolic_decrement(z, w);
        let d2 = BlaschkeFactor::from_gap(2e-30).unwrap().hyperbolic_decrement(z, w);
        assert!(d1 > 0.0);
        assert!((d2 / d1 - 2.0).abs() < 1e-6);
        let mid = BlaschkeFactor::from_gap(1e-4).unwrap();
        let naive = disc_distance(z, w).unwrap() - disc_distance(mid.eval_unchecked(z), mid.eval_unchecked(w)).unwrap();
        assert!((naive - mid.hyperbolic_decrement(z, w)).abs() < 1e-12);
        assert!((d1 * 1e26 - mid.hyperbolic_decrement(z, w)).abs() < 1e-3 * d1 * 1e26);
    }

    proptest! {
        #[test]
        fn schwarz_pick_decrement_is_nonnegative(
            a in 0.0..0.999_f64,
            r1 in 0.0..0.95_f64, t1 in 0.0..std::f64::consts::TAU,
            r2 in 0.0..0.95_f64, t2 in 0.0..std::f64::consts::TAU,
        ) {
            let b = BlaschkeFactor::new(a).unwrap();
            let (z, w) = (C::from_polar(r1, t1), C::from_polar(r2, t2));
            let d = b.hyperbolic_decrement(z, w);
            prop_assert!(d >= -1e-12);
            let naive = disc_distance(z, w).unwrap() - disc_distance(b.eval_unchecked(z), b.eval_unchecked(w)).unwrap();
            prop_assert!((naive - d).abs() < 1e-9 * (1.0 + disc_distance(z, w).unwrap()));
        }

        #[test]
        fn closed_disc_maps_into_itself(a in 0.0..0.999_f64, r in 0.0..1.0_f64, t in 0.0..std::f64::consts::TAU) {
            let b = BlaschkeFactor::new(a).unwrap();
            prop_assert!(b.eval(C::from_polar(r, t)).unwrap().norm() <= 1.0 + 1e-12);
        }
    }
}
