//! The differential ring `Q(x)[v, v', z, z', z'', ...]` in which every
//! hyperbolic sum of the pipeline has a closed form, its `y`-derivation, and
//! exact evaluation at `x = 1/2`.

mod elem;
mod polyx;
mod ratfun;
mod special;

pub use elem::{MonoKey, VFactor, ZMonomial, ZRingElem};
pub use polyx::PolyX;
pub use ratfun::RatFunX;
pub use special::{zjet_at_half, QXYPoly, SpecialValue};
