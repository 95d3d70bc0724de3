//! A fixed prime ideal P above p in Z[zeta_n] and membership in its powers.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::cyclotomic::{tables, Cyclotomic};
use super::fp_poly;
use crate::arith::{euler_phi, ext_gcd, mult_order, split_p};
use crate::error::{WbError, WbResult};

/// Echelon basis (Howell form) of a lattice L with M*Z^phi <= L <= Z^phi, stored mod M.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    pub k: u32,
    pub modulus: i128,
    rows: Vec<Option<Vec<i128>>>,
}

impl IdealBasis {
    fn new(k: u32, modulus: i128, phi: usize) -> Self {
        IdealBasis {
            k,
            modulus,
            rows: vec![None; phi],
        }
    }

    fn insert(&mut self, v: Vec<i128>) {
        let m = self.modulus;
        let mut stack = vec![(v, 0usize)];
        while let Some((mut v, start)) = stack.pop() {
            for x in v.iter_mut() {
                *x = x.rem_euclid(m);
            }
            let mut c = start;
            while c < v.len() && v[c] == 0 {
                c += 1;
            }
            if c == v.len() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    let g = gcd_i(v[c], m);
                    // scale to make the pivot divide M
                    let (_, x, _) = ext_gcd(v[c], m);
                    let unit = make_unit(x, m / g, m);
                    let mut r: Vec<i128> = v.iter().map(|&a| (a * unit).rem_euclid(m)).collect();
                    r[c] = g;
                    let ann: Vec<i128> = r.iter().map(|&a| a * (m / g)).collect();
                    self.rows[c] = Some(r);
                    stack.push((ann, c + 1));
                }
                Some(r) => {
                    let a = r[c];
                    let b = v[c];
                    let (g, x, y) = ext_gcd(a, b);
                    let n: Vec<i128> = r
                        .iter()
                        .zip(&v)
                        .map(|(&ri, &vi)| (x * ri + y * vi).rem_euclid(m))
                        .collect();
                    let w: Vec<i128> = r
                        .iter()
                        .zip(&v)
                        .map(|(&ri, &vi)| ((b / g) * ri - (a / g) * vi).rem_euclid(m))
                        .collect();
                    if g == a {
                        self.rows[c] = Some(r);
                        stack.push((w, c + 1));
                    } else {
                        let g2 = gcd_i(g, m);
                        let ann: Vec<i128> = n.iter().map(|&z| z * (m / g2)).collect();
                        self.rows[c] = Some(n);
                        stack.push((w, c + 1));
                        stack.push((ann, c + 1));
                        // the old row is n-combination plus w; nothing else is lost
                    }
                }
            }
        }
    }

    /// Membership of an integer vector.
    pub fn contains(&self, x: &[i128]) -> bool {
        let m = self.modulus;
        let mut v: Vec<i128> = x.iter().map(|&a| a.rem_euclid(m)).collect();
        for c in 0..v.len() {
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                None => return false,
                Some(r) => {
                    if v[c] % r[c] != 0 {
                        return false;
                    }
                    let f = v[c] / r[c];
                    for j in c..v.len() {
                        v[j] = (v[j] - f * r[j]).rem_euclid(m);
                    }
                }
            }
        }
        true
    }

    /// Index [Z^phi : L] as a product of pivots.
    pub fn index(&self) -> BigInt {
        self.rows
            .iter()
            .map(|r| match r {
                None => BigInt::from(self.modulus),
                Some(r) => BigInt::from(r.iter().find(|&&a| a != 0).copied().unwrap_or(self.modulus)),
            })
            .fold(BigInt::from(1), |a, b| a * b)
    }
}

fn gcd_i(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

// x is a unit modulo M/g; find a unit mod M congruent to x mod M/g.
fn make_unit(x: i128, mg: i128, m: i128) -> i128 {
    let mut u = x.rem_euclid(mg.max(1));
    while gcd_i(u, m) != 1 {
        u += mg;
    }
    u
}

#[derive(Debug, Serialize, Clone)]
pub struct PrimeInfo {
    pub p: u64,
    pub n: u64,
    pub factor: Vec<u64>,
    pub e: u32,
    pub f: u32,
}

#[derive(Debug)]
pub struct PrimeAbove {
    pub p: u64,
    pub n: u64,
    pub phi: usize,
    /// Irreducible factor of Phi_n mod p, monic, low to high.
    pub factor: Vec<u64>,
    pub e: u32,
    pub f: u32,
    pi: Vec<i64>,
    cache: Mutex<BTreeMap<u32, Arc<IdealBasis>>>,
}

impl PrimeAbove {
    pub fn new(p: u64, n: u64) -> WbResult<Self> {
        if !crate::arith::is_prime(p) {
            return Err(WbError::spec(format!("{p} is not prime")));
        }
        let (a, m) = split_p(p, n);
        let e = euler_phi(p.pow(a)) as u32;
        let f = mult_order(p % m.max(1), m.max(1)) as u32;
        let phi_m = super::cyclotomic::cyclotomic_polynomial(m);
        let phi_m_p = fp_poly::reduce_coeffs(&phi_m, p);
        if (p as f64).powi(f as i32) > 4.0e6 {
            return Err(WbError::Unsupported(format!(
                "residue field of size {p}^{f} too large for factor search"
            )));
        }
        let factor = fp_poly::monic_lex(f as usize, p)
            .find(|g| fp_poly::is_zero(&fp_poly::rem(&phi_m_p, g, p)))
            .expect("Phi_m splits into degree-f factors mod p");
        // Phi_n = Phi_m^{phi(p^a)} mod p, so g also divides Phi_n and P = (p, g(zeta_n)).
        let t = tables(n);
        let mut pi = vec![0i64; t.phi];
        for (i, &c) in factor.iter().enumerate() {
            let row = &t.pow[i % n as usize];
            for (o, &v) in pi.iter_mut().zip(row) {
                *o += c as i64 * v;
            }
        }
        let prime = PrimeAbove {
            p,
            n,
            phi: t.phi,
            factor,
            e,
            f,
            pi,
            cache: Mutex::new(BTreeMap::new()),
        };
        let mut pv = vec![0i64; t.phi];
        pv[0] = p as i64;
        if !prime.contains_int(&pv, e) || prime.contains_int(&pv, e + 1) {
            return Err(WbError::verification(
                "prime-above",
                format!("v_P(p) differs from the ramification index {e}"),
            ));
        }
        Ok(prime)
    }

    pub fn info(&self) -> PrimeInfo {
        PrimeInfo {
            p: self.p,
            n: self.n,
            factor: self.factor.clone(),
            e: self.e,
            f: self.f,
        }
    }

    /// Basis of P^k, built on demand and cached.
    pub fn power(&self, k: u32) -> Arc<IdealBasis> {
        if let Some(b) = self.cache.lock().unwrap().get(&k) {
            return b.clone();
        }
        let b = Arc::new(self.build_power(k));
        self.cache.lock().unwrap().insert(k, b.clone());
        b
    }

    fn build_power(&self, k: u32) -> IdealBasis {
        let t = tables(self.n);
        let mexp = k.div_ceil(self.e).max(1);
        let m = (self.p as i128).pow(mexp);
        let mut basis = IdealBasis::new(k, m, self.phi);
        let mut pi_pow = vec![0i128; self.phi];
        pi_pow[0] = 1;
        let pi: Vec<i128> = self.pi.iter().map(|&c| c as i128).collect();
        // pi^b for b = 0..=k
        let mut pis = Vec::with_capacity(k as usize + 1);
        for _ in 0..=k {
            pis.push(pi_pow.clone());
            pi_pow = mul_mod(&t, &pi_pow, &pi, m);
        }
        for a in 0..=k.min(mexp) {
            let b = k - a;
            let pa = (self.p as i128).pow(a);
            if pa % m == 0 {
                continue;
            }
            let gen: Vec<i128> = pis[b as usize].iter().map(|&c| c * pa % m).collect();
            for i in 0..self.phi {
                let row = rotate_mod(&t, &gen, i as u64, m);
                basis.insert(row);
            }
        }
        basis
    }

    pub fn contains_int(&self, x: &[i64], k: u32) -> bool {
        if k == 0 {
            return true;
        }
        let v: Vec<i128> = x.iter().map(|&c| c as i128).collect();
        self.power(k).contains(&v)
    }

    /// v_P of a nonzero integral power-basis vector; None for zero.
    pub fn valuation_int(&self, x: &[i64]) -> Option<u32> {
        if x.iter().all(|&c| c == 0) {
            return None;
        }
        let mut k = 0;
        while self.contains_int(x, k + 1) {
            k += 1;
        }
        Some(k)
    }

    fn coords_of(&self, x: &Cyclotomic) -> WbResult<Vec<i64>> {
        let y = if x.conductor() == self.n {
            x.clone()
        } else if self.n % x.conductor() == 0 {
            x.lift(self.n)
        } else {
            return Err(WbError::spec(format!(
                "element of conductor {} not in Q(zeta_{})",
                x.conductor(),
                self.n
            )));
        };
        let ints = y
            .int_coords()
            .ok_or_else(|| WbError::NonIntegral(y.to_string()))?;
        ints.iter()
            .map(|c| c.to_i64().ok_or_else(|| WbError::NonIntegral("coordinate overflow".into())))
            .collect()
    }

    /// v_P(x) for x in Z[zeta_n]; None means infinity.
    pub fn valuation(&self, x: &Cyclotomic) -> WbResult<Option<u32>> {
        Ok(self.valuation_int(&self.coords_of(x)?))
    }

    /// x in p^k O, i.e. v_P(x) >= k e.
    pub fn in_power_of_p(&self, x: &Cyclotomic, k: u32) -> WbResult<bool> {
        let c = self.coords_of(x)?;
        Ok(self.contains_int(&c, k * self.e))
    }

    /// x / c lies in the localization O_P for a positive integer c.
    pub fn divisible_by_int(&self, x: &[i64], c: u64) -> bool {
        let k = crate::arith::vp(self.p, c) * self.e;
        self.contains_int(x, k)
    }
}

fn mul_mod(t: &super::cyclotomic::CycTables, a: &[i128], b: &[i128], m: i128) -> Vec<i128> {
    let phi = t.phi;
    let mut full = vec![0i128; 2 * phi];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            full[i + j] = (full[i + j] + x * y) % m;
        }
    }
    for k in (phi..2 * phi).rev() {
        let c = full[k];
        if c == 0 {
            continue;
        }
        for i in 0..phi {
            full[k - phi + i] = (full[k - phi + i] - c * t.modulus[i] as i128).rem_euclid(m);
        }
    }
    full.truncate(phi);
    full.iter_mut().for_each(|x| *x = x.rem_euclid(m));
    full
}

fn rotate_mod(t: &super::cyclotomic::CycTables, x: &[i128], a: u64, m: i128) -> Vec<i128> {
    let mut out = vec![0i128; t.phi];
    for (i, &c) in x.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let row = &t.pow[((i as u64 + a) % t.n) as usize];
        for (o, &v) in out.iter_mut().zip(row) {
            *o = (*o + c * v as i128).rem_euclid(m);
        }
    }
    out
}

/// Absolute norm N(x) by the determinant of the multiplication matrix (Bareiss).
pub fn norm(x: &[i64], n: u64) -> BigInt {
    let t = tables(n);
    let phi = t.phi;
    let mut m: Vec<Vec<BigInt>> = (0..phi)
        .map(|j| t.rotate(x, j as u64).into_iter().map(BigInt::from).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for c in 0..phi {
        let Some(piv) = (c..phi).find(|&r| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if piv != c {
            m.swap(piv, c);
            sign = -sign;
        }
        for r in c + 1..phi {
            for k in c + 1..phi {
                let v = &m[r][k] * &m[c][c] - &m[r][c] * &m[c][k];
                m[r][k] = v.div_floor(&prev);
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn one_minus_zeta(n: u64) -> Cyclotomic {
        Cyclotomic::one(n).sub(&Cyclotomic::root_of_unity(n, 1))
    }

    #[test]
    fn ramified_examples() {
        let p3 = PrimeAbove::new(3, 3).unwrap();
        assert_eq!(p3.e, 2);
        assert_eq!(p3.valuation(&one_minus_zeta(3)).unwrap(), Some(1));
        assert_eq!(p3.valuation(&Cyclotomic::from_int(3, 3)).unwrap(), Some(2));
        // norm oracle: N(1 - zeta_3) = 3
        assert_eq!(norm(&[1, -1], 3), BigInt::from(3));
        let p2 = PrimeAbove::new(2, 4).unwrap();
        assert_eq!(p2.e, 2);
        assert_eq!(p2.valuation(&one_minus_zeta(4)).unwrap(), Some(1));
        assert_eq!(p2.valuation(&Cyclotomic::from_int(4, 2)).unwrap(), Some(2));
        assert_eq!(p2.valuation(&Cyclotomic::zero(4)).unwrap(), None);
    }

    #[test]
    fn in_power_examples() {
        let p2 = PrimeAbove::new(2, 2).unwrap();
        let two = Cyclotomic::one(2).sub(&Cyclotomic::root_of_unity(2, 1));
        assert!(p2.in_power_of_p(&two, 1).unwrap());
        let p3 = PrimeAbove::new(3, 3).unwrap();
        assert!(!p3.in_power_of_p(&one_minus_zeta(3), 1).unwrap());
        assert!(p3.in_power_of_p(&Cyclotomic::zero(3), 5).unwrap());
        let half = Cyclotomic::from_rational(3, num_rational::BigRational::new(1.into(), 2.into()));
        assert!(p3.valuation(&half).is_err());
    }

    #[test]
    fn unramified_and_mixed() {
        // 3 is inert in Q(i)
        let p = PrimeAbove::new(3, 4).unwrap();
        assert_eq!((p.e, p.f), (1, 2));
        assert_eq!(p.valuation(&Cyclotomic::from_int(4, 3)).unwrap(), Some(1));
        assert_eq!(p.valuation(&Cyclotomic::root_of_unity(4, 1)).unwrap(), Some(0));
        // 5 splits in Q(i): the lex-first factor is X + 2 (root 3), so P contains i - 3
        let p5 = PrimeAbove::new(5, 4).unwrap();
        assert_eq!(p5.factor, vec![2, 1]);
        let x = Cyclotomic::root_of_unity(4, 1).sub(&Cyclotomic::from_int(4, 3));
        assert_eq!(p5.valuation(&x).unwrap(), Some(1));
        let y = Cyclotomic::root_of_unity(4, 1).add(&Cyclotomic::from_int(4, 3));
        assert_eq!(p5.valuation(&y).unwrap(), Some(0));
        // mixed conductor 12 at p = 2: e = 2, f = 2
        let p12 = PrimeAbove::new(2, 12).unwrap();
        assert_eq!((p12.e, p12.f), (2, 2));
    }

    #[test]
    fn one_minus_root_in_p() {
        // 1 - w in pO only for p = 2, w = -1
        for p in [2u64, 3, 5] {
            for k in 1..=3u32 {
                let n = p.pow(k);
                if n > 125 {
                    continue;
                }
                let pr = PrimeAbove::new(p, n).unwrap();
                for a in 1..n {
                    let x = Cyclotomic::one(n).sub(&Cyclotomic::root_of_unity(n, a as i64));
                    let expect = p == 2 && 2 * a == n;
                    assert_eq!(pr.in_power_of_p(&x, 1).unwrap(), expect, "p={p} n={n} a={a}");
                }
            }
        }
    }

    #[test]
    fn valuation_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(2u64, 4u64), (3, 3), (3, 9), (2, 8), (3, 12), (5, 5), (2, 6)] {
            let pr = PrimeAbove::new(p, n).unwrap();
            let t = tables(n);
            for _ in 0..200 {
                let x: Vec<i64> = (0..t.phi).map(|_| rng.gen_range(-6..=6)).collect();
                let y: Vec<i64> = (0..t.phi).map(|_| rng.gen_range(-6..=6)).collect();
                let (Some(vx), Some(vy)) = (pr.valuation_int(&x), pr.valuation_int(&y)) else {
                    continue;
                };
                let xy = t.mul_int(&x, &y);
                assert_eq!(pr.valuation_int(&xy), Some(vx + vy), "p={p} n={n} x={x:?} y={y:?}");
                // norm bound: v_P(x) <= e * v_p(N(x)) / f-scaled
                let nx = norm(&x, n);
                let mut vn = 0u32;
                let mut nn = nx.clone();
                while !nn.is_zero() && (&nn % p).is_zero() {
                    nn /= p;
                    vn += 1;
                }
                assert!(vx <= pr.e * vn);
            }
        }
    }
}
