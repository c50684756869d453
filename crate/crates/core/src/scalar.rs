//! Floating point scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real field used for all matrix and state arithmetic: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{iθ}`.
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// `e^{2πi k / n}`.
pub fn root_of_unity<T: Real>(k: i64, n: usize) -> Complex<T> {
    let k = k.rem_euclid(n as i64) as usize;
    // Exact values on the axes avoid sin(π) ≈ 1e-16 noise.
    if (4 * k).is_multiple_of(n) {
        return match (4 * k) / n {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        };
    }
    cis(T::TAU() * T::of_usize(k) / T::of_usize(n))
}

pub fn to_pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

pub fn from_pair<T: Real>(p: [f64; 2]) -> Complex<T> {
    Complex::new(T::of(p[0]), T::of(p[1]))
}

pub fn to_pairs<T: Real>(zs: &[Complex<T>]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| to_pair(z)).collect()
}

pub fn from_pairs<T: Real>(ps: &[[f64; 2]]) -> Vec<Complex<T>> {
    ps.iter().map(|&p| from_pair(p)).collect()
}
