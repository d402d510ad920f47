//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Every dimension, twist and S-matrix entry in this crate is a [`CycNum`].
//! Orders are capped at [`MAX_ORDER`]; operations that would need a larger
//! field fail with [`ExactError::CapExceeded`].

mod cycnum;
mod field;
mod parse;
mod quad;
mod render;
mod serde_impl;

use thiserror::Error;

pub use cycnum::CycNum;
pub use field::{cyclotomic_polynomial, totient};
pub use parse::parse;
pub use quad::QuadInt;
pub use render::{as_real_quadratic, as_root_of_unity, render, render_rational};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest cyclotomic order any computation may reach.
pub const MAX_ORDER: u32 = 72;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("ζ ↦ ζ^{j} is not an automorphism of Q(ζ_{order})")]
    BadAutomorphism { order: u32, j: i64 },
    #[error("cyclotomic order {0} exceeds the cap of 72")]
    CapExceeded(u64),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("order {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },
    #[error("order {order} needs {expected} coefficients, got {got}")]
    Length { order: u32, expected: usize, got: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse `{input}` at byte {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
}

/// Lowest common order of a collection, respecting the cap.
pub fn common_order<'a>(values: impl IntoIterator<Item = &'a CycNum>) -> Result<u32, ExactError> {
    use num_integer::Integer;
    let mut l: u64 = 1;
    for v in values {
        l = l.lcm(&(v.order() as u64));
        if l > MAX_ORDER as u64 {
            return Err(ExactError::CapExceeded(l));
        }
    }
    Ok(l as u32)
}
