use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};

/// Real scalar the tensor routines are generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + Sum + Debug + Display + FromStr + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion from a count.
    fn count(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar type")
    }

    /// Positive real `deg`-th root; `deg == 1` is the identity.
    fn root(self, deg: usize) -> Self {
        match deg {
            1 => self,
            2 => self.sqrt(),
            _ => self.powf(Self::count(deg).recip()),
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
