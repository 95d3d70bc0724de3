//! Character theory of E and of the block B = OGe_phi.


pub mod block;
pub mod dixon;


pub use block::{BCharacter, BlockCharacters, BrauerCharacter};
pub use dixon::character_table;

use num_rational::BigRational;
use serde::Serialize;

use crate::coeff_ring::cyclotomic::tables;
use crate::coeff_ring::Cyclotomic;
use crate::error::{WbError, WbResult};
use crate::group_build::Classes;

/// Values per conjugacy class as power-basis integer vectors in Z[zeta_conductor].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    pub conductor: u64,
    pub values: Vec<Vec<i64>>,
}

impl ClassFunction {
    pub fn zero(conductor: u64, classes: usize) -> Self {
        let phi = tables(conductor).phi;
        ClassFunction {
            conductor,
            values: vec![vec![0; phi]; classes],
        }
    }

    /// Value at the identity class, as an integer.
    pub fn degree(&self) -> i64 {
        self.values[0][0]
    }

    pub fn value(&self, c: usize) -> Cyclotomic {
        Cyclotomic::from_int_coords(self.conductor, &self.values[c])
    }

    pub fn is_rational_integer_at(&self, c: usize, v: i64) -> bool {
        self.values[c][0] == v && self.values[c][1..].iter().all(|&x| x == 0)
    }

    /// The same values viewed in Q(zeta_m) for a multiple m of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        ClassFunction {
            conductor: m,
            values: self.values.iter().map(|v| lift_coords(v, self.conductor, m)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        ClassFunction {
            conductor: self.conductor,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        ClassFunction {
            conductor: self.conductor,
            values: self.values.iter().map(|v| v.iter().map(|x| x * k).collect()).collect(),
        }
    }

    /// <self, other> = (1/|H|) sum_g self(g) other(g^{-1}), exactly; None if not rational.
    pub fn inner(&self, other: &Self, classes: &Classes) -> Option<BigRational> {
        let n = crate::arith::lcm(self.conductor, other.conductor);
        let a = self.lift(n);
        let b = other.lift(n);
        let t = tables(n);
        let mut acc = vec![0i128; t.phi];
        for c in 0..classes.len() {
            let prod = t.mul_int(&a.values[c], &b.values[classes.inverse_class[c]]);
            for (x, y) in acc.iter_mut().zip(prod) {
                *x += classes.sizes[c] as i128 * y as i128;
            }
        }
        if acc[1..].iter().any(|&x| x != 0) {
            return None;
        }
        let order: usize = classes.sizes.iter().sum();
        Some(BigRational::new(acc[0].into(), (order as i64).into()))
    }

    /// Integral inner product, or an error naming `what`.
    pub fn inner_int(&self, other: &Self, classes: &Classes, what: &str) -> WbResult<i64> {
        let r = self
            .inner(other, classes)
            .ok_or_else(|| WbError::verification("decomposition", format!("{what}: inner product is irrational")))?;
        if !r.is_integer() {
            return Err(WbError::verification(
                "decomposition",
                format!("{what}: inner product {r} is not an integer"),
            ));
        }
        num_traits::ToPrimitive::to_i64(&r.to_integer())
            .ok_or_else(|| WbError::verification("decomposition", "inner product overflow"))
    }

    pub fn to_serial(&self) -> SerialClassFunction {
        SerialClassFunction {
            conductor: self.conductor,
            values: self.values.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SerialClassFunction {
    pub conductor: u64,
    pub values: Vec<Vec<i64>>,
}

/// Re-express power-basis coordinates from conductor `from` in conductor `to` (from | to).
pub fn lift_coords(v: &[i64], from: u64, to: u64) -> Vec<i64> {
    if from == to {
        return v.to_vec();
    }
    assert_eq!(to % from, 0, "conductor {from} does not divide {to}");
    let step = to / from;
    let t = tables(to);
    let mut counts = vec![0i64; to as usize];
    for (i, &c) in v.iter().enumerate() {
        counts[(i as u64 * step) as usize] += c;
    }
    t.from_counts(&counts)
}

/// d * zeta_m^a as a power-basis vector at conductor n (m | n).
pub fn scaled_root(n: u64, m: u64, a: u64, d: i64) -> Vec<i64> {
    let t = tables(n);
    t.pow[((a % m) * (n / m)) as usize].iter().map(|x| x * d).collect()
}
