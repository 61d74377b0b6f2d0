use rug::ops::PowAssign;
use rug::Float;

use crate::error::{Error, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

pub const MIN_DIGITS: u32 = 10;
pub const MIN_GUARD_DIGITS: u32 = 5;
pub const DEFAULT_GUARD_DIGITS: u32 = 10;

/// Decimal working precision, passed explicitly to every evaluation.
///
/// Arithmetic runs at `digits + guard_digits` decimal digits; results are
/// trusted to `digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "digits = {digits}, need at least {MIN_DIGITS}"
            )));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "guard_digits = {guard_digits}, need at least {MIN_GUARD_DIGITS}"
            )));
        }
        Ok(Self { digits, guard_digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// Binary precision used for every `Float` created under this context.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// Same context with `extra` more trusted digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self { digits: self.digits + extra, guard_digits: self.guard_digits }
    }

    /// Same context with twice the trusted digits.
    pub fn doubled(&self) -> Self {
        self.raised(self.digits)
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), val)
    }

    /// 10^-digits: the accuracy promised to callers.
    pub fn target_eps(&self) -> Float {
        pow10_neg(self.digits)
    }

    /// 10^-(digits + guard): the accuracy aimed for by truncation rules.
    pub fn working_eps(&self) -> Float {
        pow10_neg(self.working_digits())
    }

    /// Relative size of one rounding error at working precision.
    pub fn ulp(&self) -> Float {
        let mut u = Float::with_val(64, 1);
        u >>= self.bits() - 1;
        u
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
}

/// 10^-n at 64-bit precision, the form used for error radii.
pub fn pow10_neg(n: u32) -> Float {
    let mut x = Float::with_val(64, 10);
    x.pow_assign(-(n as i32));
    x
}
