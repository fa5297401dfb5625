//! Exact arithmetic: rationals, squarefree decomposition and multiquadratic
//! field elements.

pub mod factor;
pub mod multiquad;
pub mod rational;

pub use factor::{
    exact_sqrt, factorize, factorize_int, is_prime_u64, is_squarefree, positive_divisors, prime_support,
    squarefree_decompose, squarefree_part,
};
pub use multiquad::{MultiQuad, Radicand};
pub use rational::{format_rational, parse_rational, rat, rat_frac, rational_sqrt, Rational};
