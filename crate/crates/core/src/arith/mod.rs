//! Exact arithmetic: rationals, p-adic valuations and factorization.

pub mod factor;
pub mod rational;
pub mod valuation;

pub use factor::{is_prime, odd_prime_divisors, square_free_check};
pub use rational::Rational;
pub use valuation::{vp, Valuation};
