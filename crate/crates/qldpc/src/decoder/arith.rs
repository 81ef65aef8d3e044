//! Message arithmetic backends.
//!
//! The float backend stores `f32` messages. The integer backends store `i8`
//! or `i16` messages holding `round(value × quant_scale)`, accumulate in
//! `i32`, and saturate symmetrically to `±MAX` on every store, so sums can
//! never wrap.

use std::fmt::Debug;

/// Magnitude used in place of the empty excluding-self minimum at a
/// degree-1 check, float mode.
pub const FLOAT_DEGREE_ONE_MAGNITUDE: f32 = 64.0;

/// Float messages are clamped to this magnitude on store so that sums of a
/// node's inputs stay finite however many iterations run.
pub const FLOAT_LIMIT: f32 = 1.0e30;

pub(crate) trait MessageArith: Send + Sync {
    type Msg: Copy + Send + Sync + Default + PartialOrd + Debug;
    type Acc: Copy;

    fn quantize(&self, value: f64) -> Self::Msg;
    /// Stored value as a float, in message units.
    fn raw(m: Self::Msg) -> f64;

    /// `sign(0)` counts as positive.
    fn is_negative(m: Self::Msg) -> bool;
    fn magnitude(m: Self::Msg) -> Self::Msg;
    /// `±α · magnitude`.
    fn check_output(&self, magnitude: Self::Msg, negative: bool) -> Self::Msg;
    fn degree_one_magnitude(&self) -> Self::Msg;
    /// Any value at least as large as every magnitude.
    fn max_magnitude() -> Self::Msg;

    fn widen(m: Self::Msg) -> Self::Acc;
    fn add(acc: Self::Acc, m: Self::Msg) -> Self::Acc;
    fn acc_is_negative(acc: Self::Acc) -> bool;
    /// Saturating narrow back to message width.
    fn store(acc: Self::Acc) -> Self::Msg;
}

#[derive(Clone, Debug)]
pub(crate) struct FloatArith {
    alpha: f32,
}

impl FloatArith {
    pub fn new(alpha: f64) -> Self {
        Self { alpha: alpha as f32 }
    }
}

impl MessageArith for FloatArith {
    type Msg = f32;
    type Acc = f32;

    fn quantize(&self, value: f64) -> f32 {
        (value as f32).clamp(-FLOAT_LIMIT, FLOAT_LIMIT)
    }

    fn raw(m: f32) -> f64 {
        f64::from(m)
    }

    #[inline]
    fn is_negative(m: f32) -> bool {
        m < 0.0
    }

    #[inline]
    fn magnitude(m: f32) -> f32 {
        m.abs()
    }

    #[inline]
    fn check_output(&self, magnitude: f32, negative: bool) -> f32 {
        let v = self.alpha * magnitude;
        if negative {
            -v
        } else {
            v
        }
    }

    fn degree_one_magnitude(&self) -> f32 {
        FLOAT_DEGREE_ONE_MAGNITUDE
    }

    fn max_magnitude() -> f32 {
        f32::INFINITY
    }

    #[inline]
    fn widen(m: f32) -> f32 {
        m
    }

    #[inline]
    fn add(acc: f32, m: f32) -> f32 {
        acc + m
    }

    #[inline]
    fn acc_is_negative(acc: f32) -> bool {
        acc < 0.0
    }

    #[inline]
    fn store(acc: f32) -> f32 {
        acc.clamp(-FLOAT_LIMIT, FLOAT_LIMIT)
    }
}

/// Fixed-point fraction bits of the integer-mode scaling factor.
const ALPHA_FRAC_BITS: u32 = 15;

pub(crate) trait IntMsg: Copy + Send + Sync + Default + PartialOrd + Debug {
    const MAX: i32;
    fn from_i32(v: i32) -> Self;
    fn to_i32(self) -> i32;
}

impl IntMsg for i8 {
    const MAX: i32 = i8::MAX as i32;
    #[inline]
    fn from_i32(v: i32) -> Self {
        v as i8
    }
    #[inline]
    fn to_i32(self) -> i32 {
        i32::from(self)
    }
}

impl IntMsg for i16 {
    const MAX: i32 = i16::MAX as i32;
    #[inline]
    fn from_i32(v: i32) -> Self {
        v as i16
    }
    #[inline]
    fn to_i32(self) -> i32 {
        i32::from(self)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct IntArith<T> {
    scale: f64,
    /// α in Q15.
    alpha_fixed: i64,
    _marker: std::marker::PhantomData<T>,
}

impl<T: IntMsg> IntArith<T> {
    pub fn new(alpha: f64, scale: f64) -> Self {
        Self {
            scale,
            alpha_fixed: (alpha * f64::from(1u32 << ALPHA_FRAC_BITS)).round() as i64,
            _marker: std::marker::PhantomData,
        }
    }

    #[inline]
    fn saturate(v: i64) -> T {
        T::from_i32(v.clamp(-i64::from(T::MAX), i64::from(T::MAX)) as i32)
    }
}

impl<T: IntMsg> MessageArith for IntArith<T> {
    type Msg = T;
    type Acc = i32;

    fn quantize(&self, value: f64) -> T {
        let scaled = (value * self.scale).round();
        let bound = f64::from(T::MAX);
        T::from_i32(scaled.clamp(-bound, bound) as i32)
    }

    fn raw(m: T) -> f64 {
        f64::from(m.to_i32())
    }

    #[inline]
    fn is_negative(m: T) -> bool {
        m.to_i32() < 0
    }

    #[inline]
    fn magnitude(m: T) -> T {
        // symmetric saturation keeps -MAX-1 out of storage, so abs is exact
        T::from_i32(m.to_i32().abs())
    }

    #[inline]
    fn check_output(&self, magnitude: T, negative: bool) -> T {
        let half = 1i64 << (ALPHA_FRAC_BITS - 1);
        let v = (i64::from(magnitude.to_i32()) * self.alpha_fixed + half) >> ALPHA_FRAC_BITS;
        Self::saturate(if negative { -v } else { v })
    }

    fn degree_one_magnitude(&self) -> T {
        T::from_i32(T::MAX)
    }

    fn max_magnitude() -> T {
        T::from_i32(T::MAX)
    }

    #[inline]
    fn widen(m: T) -> i32 {
        m.to_i32()
    }

    #[inline]
    fn add(acc: i32, m: T) -> i32 {
        acc.saturating_add(m.to_i32())
    }

    #[inline]
    fn acc_is_negative(acc: i32) -> bool {
        acc < 0
    }

    #[inline]
    fn store(acc: i32) -> T {
        Self::saturate(i64::from(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int8_prior_scaling() {
        let a = IntArith::<i8>::new(0.8, 8.0);
        assert_eq!(a.quantize(1.0), 8);
        assert_eq!(a.quantize(100.0), 127);
        assert_eq!(a.quantize(-100.0), -127);
    }

    #[test]
    fn int8_store_saturates_never_wraps() {
        let acc = (0..10).fold(IntArith::<i8>::widen(100), |acc, _| IntArith::<i8>::add(acc, 100));
        assert_eq!(IntArith::<i8>::store(acc), 127);
        let acc = (0..10).fold(IntArith::<i8>::widen(-100), |acc, _| IntArith::<i8>::add(acc, -100));
        assert_eq!(IntArith::<i8>::store(acc), -127);
    }

    #[test]
    fn int_alpha_rounding() {
        let a = IntArith::<i16>::new(0.8, 256.0);
        assert_eq!(a.check_output(256, false), 205); // 204.8
        assert_eq!(a.check_output(256, true), -205);
        let one = IntArith::<i8>::new(1.0, 8.0);
        assert_eq!(one.check_output(127, false), 127);
        assert_eq!(one.check_output(127, true), -127);
    }

    #[test]
    fn float_clamps_on_store() {
        assert_eq!(FloatArith::store(f32::INFINITY), FLOAT_LIMIT);
        assert_eq!(FloatArith::store(-3.0e38 * 10.0), -FLOAT_LIMIT);
    }
}
