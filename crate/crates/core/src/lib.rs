//! Exact-arithmetic toolkit for divisors with polyhedral coefficients.
//!
//! The crate computes with formal sums `D = sum_i  Delta_i  (x)  D_i` where the
//! `D_i` are prime divisors on a fixed surface model and each coefficient
//! `Delta_i` is a rational polyhedron sharing one pointed tail cone.  On top of
//! that core type it implements the torus downgrade that produces such sums
//! from a weight matrix, evaluation to ordinary Q-divisors, push-forward and
//! pull-back along lattice maps and cyclic covers, linear equivalence with
//! explicit witness functions, and the two quotient constructions (subgroup of
//! the torus, and a group acting effectively on the base) together with
//! ready-made fixtures for the Koras-Russell style threefolds.
//!
//! All arithmetic is exact: integers are arbitrary precision and every
//! geometric predicate is decided over Q.  There is no floating point anywhere.

pub mod convex;
pub mod divisors;
pub mod downgrade;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod notation;
pub mod ppdiv;
pub mod quotients;

pub use error::Error;

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number used throughout.
pub type Rat = num_rational::BigRational;

/// Integer vector (a lattice point).
pub type IVec = Vec<Int>;
/// Rational vector.
pub type QVec = Vec<Rat>;

use num_traits::Zero;

/// `v` as a rational vector.
pub fn to_qvec(v: &[Int]) -> QVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Exact dot product of rational vectors.
pub fn dot_qq(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dot product of an integer vector with a rational vector.
pub fn dot_iq(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| Rat::from_integer(x.clone()) * y).sum()
}

/// Dot product of integer vectors.
pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Clear denominators: smallest positive integer multiple of `v` that is an
/// integer vector, reduced to primitive form.  Returns `None` for the zero
/// vector.
pub fn qvec_to_primitive(v: &[Rat]) -> Option<IVec> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = Int::from(1);
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: IVec = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    Some(crate::linalg::primitive_vector(&ints).expect("nonzero by construction"))
}
