//! Scalar abstractions shared by every numerical module.
//!
//! [`Real`] is the floating-point type the library is generic over (`f32` or
//! `f64`). [`Elem`] is the matrix element type: either a real number or a
//! complex number built on top of a [`Real`]. Kernels that only ever scale by
//! real coefficients (the dissipators, Householder reflections on real input)
//! are written once against [`Elem`] and run on either representation.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::Tolerances;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Elem<Real = Self>
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default tolerance record for this precision.
    fn tolerances() -> Tolerances;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tolerances() -> Tolerances {
        Tolerances::F64
    }
}

impl Real for f32 {
    fn tolerances() -> Tolerances {
        Tolerances::F32
    }
}

/// Matrix element: a real number or a complex number over a [`Real`].
///
/// Method names avoid those of [`Float`] so that both traits can be bounds
/// on the same type without ambiguity.
pub trait Elem:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    type Real: Real;

    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_real(x: Self::Real) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;
    /// `|z|^2`
    fn abs2(self) -> Self::Real;
    /// Multiplication by a real scalar.
    fn scale(self, k: Self::Real) -> Self;
    fn to_complex(self) -> Complex<Self::Real>;
    /// Narrows a complex number; real types drop the imaginary part.
    fn from_complex(z: Complex<Self::Real>) -> Self;

    /// `|z|`
    #[inline]
    fn modulus(self) -> Self::Real {
        self.abs2().sqrt()
    }

    #[inline]
    fn all_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }

    /// Replaces subnormal components by zero. NaN passes through.
    fn flush_subnormal(self) -> Self;
}

macro_rules! impl_real_elem {
    ($t:ty) => {
        impl Elem for $t {
            type Real = $t;

            #[inline]
            fn zero_elem() -> Self {
                0.0
            }
            #[inline]
            fn one_elem() -> Self {
                1.0
            }
            #[inline]
            fn from_real(x: $t) -> Self {
                x
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn abs2(self) -> $t {
                self * self
            }
            #[inline]
            fn scale(self, k: $t) -> Self {
                self * k
            }
            #[inline]
            fn to_complex(self) -> Complex<$t> {
                Complex::new(self, 0.0)
            }
            #[inline]
            fn from_complex(z: Complex<$t>) -> Self {
                z.re
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }

            #[inline]
            fn flush_subnormal(self) -> $t {
                if self.abs() < <$t>::MIN_POSITIVE {
                    0.0
                } else {
                    self
                }
            }
        }
    };
}

impl_real_elem!(f32);
impl_real_elem!(f64);

impl<T: Real> Elem for Complex<T> {
    type Real = T;

    #[inline]
    fn zero_elem() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    #[inline]
    fn one_elem() -> Self {
        Complex::new(T::one(), T::zero())
    }
    #[inline]
    fn from_real(x: T) -> Self {
        Complex::new(x, T::zero())
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn im(self) -> T {
        self.im
    }
    #[inline]
    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }
    #[inline]
    fn abs2(self) -> T {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    fn scale(self, k: T) -> Self {
        Complex::new(self.re * k, self.im * k)
    }
    #[inline]
    fn to_complex(self) -> Complex<T> {
        self
    }
    #[inline]
    fn from_complex(z: Complex<T>) -> Self {
        z
    }

    #[inline]
    fn flush_subnormal(self) -> Self {
        Complex::new(self.re.flush_subnormal(), self.im.flush_subnormal())
    }
}
