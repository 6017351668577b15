//! Exact arithmetic for E-polynomials and stringy rational functions.
//!
//! Fractional powers of `uv` are carried by one root variable `z` with
//! `uv = z^N`; denominators are always products of cyclotomic polynomials
//! in `z`, so reduction is trial exact division.

mod cyclotomic;
mod epoly;
mod fraction;
mod ring;
mod series;
mod termsum;

pub use cyclotomic::{
    cyclotomic_factors, cyclotomic_poly, divisors, euler_phi, CyclotomicMultiset, MAX_CYCLOTOMIC_INDEX,
};
pub(crate) use cyclotomic::{sparse_divexact, sparse_mul_dense, SparseLaurent};
pub use epoly::EPolynomial;
pub(crate) use epoly::write_term;
pub use fraction::{constant, reduce_fraction, uv_power, StringyFraction};
pub use ring::{ring_multiply, NormalMonomial, RingElement};
pub use series::series_expand_u;
pub use termsum::{euler_limit, Term, TermSum};
