//! Galois rings GR(p^m, d) = (Z/p^m)[X]/(f) with f the lift of the lex-first
//! monic irreducible of degree d over F_p.

use serde::Serialize;

use super::fp_poly;
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GrElem(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisRing {
    pub p: u64,
    pub m: u32,
    pub d: usize,
    pub pm: u64,
    pub modulus: Vec<u64>,
}

impl GaloisRing {
    pub fn new(p: u64, m: u32, d: usize) -> Self {
        assert!(crate::arith::is_prime(p) && m >= 1 && d >= 1);
        let modulus = fp_poly::first_irreducible(d, p);
        GaloisRing {
            p,
            m,
            d,
            pm: p.pow(m),
            modulus,
        }
    }

    pub fn order(&self) -> u64 {
        self.pm.pow(self.d as u32)
    }

    /// Size of the residue field.
    pub fn q(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    pub fn zero(&self) -> GrElem {
        GrElem(vec![0; self.d])
    }

    pub fn one(&self) -> GrElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> GrElem {
        let mut c = vec![0; self.d];
        c[0] = v.rem_euclid(self.pm as i64) as u64;
        GrElem(c)
    }

    pub fn is_zero(&self, a: &GrElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &GrElem, b: &GrElem) -> GrElem {
        GrElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.pm).collect())
    }

    pub fn neg(&self, a: &GrElem) -> GrElem {
        GrElem(a.0.iter().map(|&x| (self.pm - x) % self.pm).collect())
    }

    pub fn sub(&self, a: &GrElem, b: &GrElem) -> GrElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GrElem, b: &GrElem) -> GrElem {
        let d = self.d;
        let pm = self.pm as u128;
        let mut full = vec![0u128; 2 * d - 1];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                full[i + j] = (full[i + j] + a.0[i] as u128 * b.0[j] as u128) % pm;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = full[k];
            if c == 0 {
                continue;
            }
            full[k] = 0;
            for i in 0..d {
                let sub = c * self.modulus[i] as u128 % pm;
                full[k - d + i] = (full[k - d + i] + pm - sub) % pm;
            }
        }
        GrElem(full[..d].iter().map(|&c| c as u64).collect())
    }

    pub fn scale(&self, a: &GrElem, s: i64) -> GrElem {
        self.mul(a, &self.from_int(s))
    }

    pub fn pow(&self, a: &GrElem, mut e: u64) -> GrElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Units are exactly the elements with nonzero reduction mod p.
    pub fn is_unit(&self, a: &GrElem) -> bool {
        a.0.iter().any(|&c| c % self.p != 0)
    }

    /// Order of the unit group.
    pub fn unit_count(&self) -> u64 {
        let q = self.q();
        q.pow(self.m - 1) * (q - 1)
    }

    pub fn inv(&self, a: &GrElem) -> WbResult<GrElem> {
        if !self.is_unit(a) {
            return Err(WbError::NonUnit);
        }
        Ok(self.pow(a, self.unit_count() - 1))
    }

    /// p-adic valuation: largest v with a in p^v R (m for zero).
    pub fn valuation(&self, a: &GrElem) -> u32 {
        a.0.iter()
            .filter(|&&c| c != 0)
            .map(|&c| crate::arith::vp(self.p, c))
            .min()
            .unwrap_or(self.m)
    }

    /// Teichmüller representative of the residue class of a.
    pub fn teichmuller(&self, a: &GrElem) -> GrElem {
        self.pow(a, self.q().pow(self.m - 1))
    }

    /// Elements in index order: coordinate i is digit i base p^m.
    pub fn element(&self, mut idx: u64) -> GrElem {
        let mut c = vec![0; self.d];
        for slot in c.iter_mut() {
            *slot = idx % self.pm;
            idx /= self.pm;
        }
        GrElem(c)
    }

    pub fn index(&self, a: &GrElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.pm + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = GrElem> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: &GrElem) -> u64 {
        let one = self.one();
        let mut x = a.clone();
        let mut k = 1;
        while x != one {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// Lex-first (by index) element of the residue field generating F_q^x, lifted by Teichmüller.
    pub fn teichmuller_generator(&self) -> GrElem {
        let field = GaloisRing::new(self.p, 1, self.d);
        let q1 = self.q() - 1;
        let fs = crate::arith::factorize(q1);
        let g = field
            .elements()
            .find(|x| {
                !field.is_zero(x) && fs.iter().all(|&(r, _)| field.pow(x, q1 / r) != field.one())
            })
            .expect("finite fields have primitive elements");
        self.teichmuller(&self.lift_from_field(&g))
    }

    /// A residue-field element viewed in R with digits in [0, p).
    pub fn lift_from_field(&self, a: &GrElem) -> GrElem {
        GrElem(a.0.iter().map(|&c| c % self.p).collect())
    }

    pub fn reduce_to_field(&self, a: &GrElem) -> GrElem {
        GrElem(a.0.iter().map(|&c| c % self.p).collect())
    }

    /// The image of the integer-valued root of unity zeta_r^k, using a fixed
    /// primitive r-th root taken from the Teichmüller generator.
    pub fn root_of_unity(&self, r: u64, k: i64) -> WbResult<GrElem> {
        let q1 = self.q() - 1;
        if q1 % r != 0 {
            return Err(WbError::Unsupported(format!(
                "GR({},{},{}) has no primitive {r}-th root of unity",
                self.p, self.m, self.d
            )));
        }
        let eta = self.pow(&self.teichmuller_generator(), q1 / r);
        Ok(self.pow(&eta, k.rem_euclid(r as i64) as u64))
    }
}

/// Lookup tables for rings of at most 1024 elements; elements are u16 indices.
#[derive(Debug, Clone)]
pub struct SmallRing {
    pub ring: GaloisRing,
    pub size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    val: Vec<u8>,
    pub one: u16,
}

pub const SMALL_RING_LIMIT: u64 = 1024;

impl SmallRing {
    pub fn new(ring: GaloisRing) -> WbResult<Self> {
        let size = ring.order();
        if size > SMALL_RING_LIMIT {
            return Err(WbError::Unsupported(format!(
                "ring of order {size} too large for lookup tables"
            )));
        }
        let size = size as usize;
        let els: Vec<GrElem> = ring.elements().collect();
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for i in 0..size {
            for j in 0..size {
                add[i * size + j] = ring.index(&ring.add(&els[i], &els[j])) as u16;
                mul[i * size + j] = ring.index(&ring.mul(&els[i], &els[j])) as u16;
            }
        }
        let neg = els.iter().map(|a| ring.index(&ring.neg(a)) as u16).collect();
        let one = ring.index(&ring.one()) as u16;
        let mut inv = vec![u16::MAX; size];
        for i in 0..size {
            for j in 0..size {
                if mul[i * size + j] == one {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        let val = els.iter().map(|a| ring.valuation(a) as u8).collect();
        Ok(SmallRing {
            ring,
            size,
            add,
            mul,
            neg,
            inv,
            val,
            one,
        })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        let v = self.inv[a as usize];
        (v != u16::MAX).then_some(v)
    }
    #[inline]
    pub fn valuation(&self, a: u16) -> u32 {
        self.val[a as usize] as u32
    }
    pub fn m(&self) -> u32 {
        self.ring.m
    }
    pub fn from_int(&self, v: i64) -> u16 {
        self.ring.index(&self.ring.from_int(v)) as u16
    }
    pub fn encode(&self, a: &GrElem) -> u16 {
        self.ring.index(a) as u16
    }
    pub fn decode(&self, a: u16) -> GrElem {
        self.ring.element(a as u64)
    }
    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut r = self.one;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Elements of p^j R, each listed once.
    pub fn multiples_of_p_power(&self, j: u32) -> Vec<u16> {
        (0..self.size as u16).filter(|&a| self.valuation(a) >= j).collect()
    }

    /// Solve b x = a; returns one solution if it exists.
    pub fn div(&self, a: u16, b: u16) -> Option<u16> {
        let va = self.valuation(a);
        let vb = self.valuation(b);
        if a == 0 {
            return Some(0);
        }
        if vb > va {
            return None;
        }
        (0..self.size as u16).find(|&x| self.mul(b, x) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_three() {
        let r = GaloisRing::new(3, 1, 1);
        let order2: Vec<GrElem> = r
            .elements()
            .filter(|x| r.is_unit(x) && r.unit_order(x) == 2)
            .collect();
        assert_eq!(order2, vec![r.from_int(-1)]);
    }

    #[test]
    fn z_mod_four() {
        let r = GaloisRing::new(2, 2, 1);
        let units: Vec<i64> = r
            .elements()
            .filter(|x| r.is_unit(x))
            .map(|x| x.0[0] as i64)
            .collect();
        assert_eq!(units, vec![1, 3]);
        assert!(r.inv(&r.from_int(2)).is_err());
    }

    #[test]
    fn teichmuller_order() {
        let r = GaloisRing::new(3, 1, 2);
        let g = r.teichmuller_generator();
        assert_eq!(r.unit_order(&g), 8);
        let max = r.elements().filter(|x| r.is_unit(x)).map(|x| r.unit_order(&x)).max();
        assert_eq!(max, Some(8));
        let r2 = GaloisRing::new(2, 2, 3);
        let t = r2.teichmuller_generator();
        assert_eq!(r2.unit_order(&t), 7);
    }

    #[test]
    fn fields_invertible() {
        for (p, d) in [(2u64, 1usize), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)] {
            let r = GaloisRing::new(p, 1, d);
            if r.order() > 81 {
                continue;
            }
            for x in r.elements().skip(1) {
                let y = r.inv(&x).unwrap();
                assert_eq!(r.mul(&x, &y), r.one());
            }
        }
    }

    #[test]
    fn small_ring_tables_agree() {
        let r = GaloisRing::new(2, 2, 2);
        let s = SmallRing::new(r.clone()).unwrap();
        for a in 0..16u16 {
            for b in 0..16u16 {
                assert_eq!(s.decode(s.mul(a, b)), r.mul(&s.decode(a), &s.decode(b)));
            }
            assert_eq!(s.inv(a).is_some(), r.is_unit(&s.decode(a)));
        }
        assert_eq!(s.multiples_of_p_power(1).len(), 4);
        assert_eq!(s.div(s.from_int(2), s.from_int(2)).map(|x| s.mul(x, s.from_int(2))), Some(s.from_int(2)));
        assert_eq!(s.div(s.from_int(1), s.from_int(2)), None);
    }

    #[test]
    fn roots_of_unity() {
        let r = GaloisRing::new(2, 1, 6);
        let w = r.root_of_unity(9, 1).unwrap();
        assert_eq!(r.unit_order(&w), 9);
        assert!(r.root_of_unity(5, 1).is_err());
    }
}
