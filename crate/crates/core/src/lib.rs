//! Exact computation of h(n): the greatest product of distinct primes whose
//! sum does not exceed n (OEIS A159685).
//!
//! The library has three layers:
//!
//! * a dense DP ([`h_table`]) that computes the restricted maxima h_j(n) for
//!   every n up to a few thousand, exactly, in big integers;
//! * a sublinear summation engine ([`prime_sum`]) for pi_f(x) = sum of f(p)
//!   over primes p <= x, for a completely multiplicative integer weight f,
//!   used with the identity weight to locate the largest k with
//!   p_1 + ... + p_k <= n;
//! * a prime-fraction optimizer ([`g_func`]) and the assembly pipeline
//!   ([`h_large`]) that express h(n) = N_k * G(p_k, n') in factored form for
//!   n up to 10^35 without ever materializing the (astronomical) integer.
//!
//! [`verify`] packages the computation underlying every checkable statement
//! about h into runnable property suites.

pub mod analytic;
pub mod arith;
pub mod error;
pub mod g_func;
pub mod h_large;
pub mod h_table;
pub mod primes;
pub mod prime_sum;
pub mod verify;

pub use error::{Error, Result};
pub use g_func::{g, GConfig, GStats, PrimeFraction};
pub use h_large::{FactoredH, HConfig, HEngine, LocatedK};
pub use h_table::{brute_force_h, compute_table, Alphabet, HTable};
pub use prime_sum::{pif, summatory, PifBreakdown, PifConfig, Weight};
pub use primes::{next_prime, prev_prime, sieve_segment, PrimeTables};
