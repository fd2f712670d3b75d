//! Exact linear algebra: rationals, integers and a large prime field.

mod lattice;
mod modp;
mod rational;

pub use lattice::{bareiss_rank, hermite_rows, integer_kernel};
pub use modp::{lifted_nullspace, Fp};
pub use rational::{parse_rational, rank, rref, nullspace, QMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
