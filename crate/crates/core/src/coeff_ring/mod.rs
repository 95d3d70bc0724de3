//! Coefficient rings: cyclotomic fields, a prime above p, Galois rings.

pub mod cyclotomic;
pub mod fp_poly;
pub mod galois;
pub mod linalg;
pub mod prime;

pub use cyclotomic::{product_identity, Cyclotomic};
pub use galois::{GaloisRing, GrElem, SmallRing};
pub use prime::PrimeAbove;

/// zeta_n^a
pub fn root_of_unity(n: u64, a: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, a)
}
