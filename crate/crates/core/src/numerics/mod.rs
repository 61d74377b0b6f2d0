//! Precision substrate: the working-precision context, multi-precision
//! reals and complexes, prime tables and small arithmetic functions.

mod arith;
mod complex;
mod float;
mod precision;
mod primes;

pub use arith::{big_omega, mobius, mobius_table, prime_divisors, small_omega, two_adic_valuation};
pub use complex::BigComplex;
pub use float::{
    format_decimal, format_fixed, format_sig, parse_decimal, parse_decimal_bits, radius, radius_of, BigFloat,
    RADIUS_BITS,
};
pub use precision::{digits_to_bits, pow10_neg, PrecisionContext, DEFAULT_GUARD_DIGITS, MIN_DIGITS, MIN_GUARD_DIGITS};
pub use primes::{primes_up_to, shared_table, smallest_prime_factors, PrimeTable};
