//! Exact elements of Q(zeta_n) on the power basis modulo the n-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, lcm};

/// Phi_n with integer coefficients, low to high.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // X^n - 1 divided by Phi_d for all proper divisors d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; da - db + 1];
    for k in (db..=da).rev() {
        let c = r[k];
        q[k - db] = c;
        for j in 0..=db {
            r[k - db + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CycTables {
    pub n: u64,
    pub phi: usize,
    pub modulus: Vec<i64>,
    /// zeta^k on the power basis for 0 <= k < n.
    pub pow: Vec<Vec<i64>>,
}

impl CycTables {
    fn build(n: u64) -> Self {
        let modulus = cyclotomic_polynomial(n);
        let phi = euler_phi(n) as usize;
        let mut pow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            pow.push(cur.clone());
            // multiply by zeta
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        CycTables { n, phi, modulus, pow }
    }

    /// Integer product of two power-basis vectors.
    pub fn mul_int(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let phi = self.phi;
        let mut full = vec![0i128; 2 * phi];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                full[i + j] += x as i128 * y as i128;
            }
        }
        self.reduce_i128(&mut full)
    }

    fn reduce_i128(&self, full: &mut [i128]) -> Vec<i64> {
        let phi = self.phi;
        for k in (phi..full.len()).rev() {
            let c = full[k];
            if c == 0 {
                continue;
            }
            full[k] = 0;
            for i in 0..phi {
                full[k - phi + i] -= c * self.modulus[i] as i128;
            }
        }
        full[..phi]
            .iter()
            .map(|&c| i64::try_from(c).expect("cyclotomic integer overflow"))
            .collect()
    }

    /// Power-basis vector of sum_s counts[s] zeta^s.
    pub fn from_counts(&self, counts: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.phi];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(&self.pow[s]) {
                *o += c * v;
            }
        }
        out
    }

    /// Multiply a power-basis vector by zeta^a.
    pub fn rotate(&self, x: &[i64], a: u64) -> Vec<i64> {
        let mut out = vec![0i64; self.phi];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = &self.pow[((i as u64 + a) % self.n) as usize];
            for (o, &v) in out.iter_mut().zip(row) {
                *o += c * v;
            }
        }
        out
    }
}

pub fn tables(n: u64) -> Arc<CycTables> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(CycTables::build(n));
    cache.lock().unwrap().insert(n, t.clone());
    t
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    coords: Vec<BigRational>,
}

fn q(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        Cyclotomic {
            n,
            coords: vec![BigRational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u64, v: i64) -> Self {
        Self::from_rational(n, q(v))
    }

    pub fn from_rational(n: u64, v: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coords[0] = v;
        z
    }

    /// Build from power-basis coordinates; panics on wrong length.
    pub fn from_coords(n: u64, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), euler_phi(n) as usize, "coordinate length");
        Cyclotomic { n, coords }
    }

    pub fn from_int_coords(n: u64, coords: &[i64]) -> Self {
        Self::from_coords(n, coords.iter().map(|&c| q(c)).collect())
    }

    /// sum_s counts[s] * zeta_n^s
    pub fn from_counts(n: u64, counts: &[i64]) -> Self {
        Self::from_int_coords(n, &tables(n).from_counts(counts))
    }

    pub fn root_of_unity(n: u64, a: i64) -> Self {
        assert!(n >= 1);
        let k = a.rem_euclid(n as i64) as usize;
        Self::from_int_coords(n, &tables(n).pow[k])
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Lies in Z[zeta_n] (the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coords.iter().map(|c| c.to_integer()).collect())
    }

    pub fn i64_coords(&self) -> Option<Vec<i64>> {
        self.int_coords()?.iter().map(|c| c.to_i64()).collect()
    }

    /// Embed into Q(zeta_m) for n | m.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.n == 0, "lift: {} does not divide {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let t = tables(m);
        let step = (m / self.n) as usize;
        let mut out = vec![BigRational::zero(); t.phi];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(&t.pow[i * step % m as usize]) {
                if v != 0 {
                    *o += c * q(v);
                }
            }
        }
        Cyclotomic { n: m, coords: out }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.n, b.n);
        (a.lift(m), b.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Cyclotomic { n: a.n, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Cyclotomic {
            n: self.n,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let t = tables(a.n);
        let (ai, da) = integerize(&a.coords);
        let (bi, db) = integerize(&b.coords);
        let phi = t.phi;
        let mut full = vec![BigInt::zero(); 2 * phi];
        for (i, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bi.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        for k in (phi..2 * phi).rev() {
            let c = std::mem::take(&mut full[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..phi {
                let m = t.modulus[i];
                if m != 0 {
                    full[k - phi + i] -= &c * m;
                }
            }
        }
        let den = da * db;
        let coords = full[..phi]
            .iter()
            .map(|c| BigRational::new(c.clone(), den.clone()))
            .collect();
        Cyclotomic { n: a.n, coords }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Self::one(self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse by solving the multiplication-matrix system.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let t = tables(self.n);
        let phi = t.phi;
        // column j of the matrix = self * zeta^j
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul(&Self::root_of_unity(self.n, j as i64));
            for i in 0..phi {
                m[i][j] = col.coords[i].clone();
            }
        }
        m[0][phi] = BigRational::one();
        let sol = solve_rational(m)?;
        Some(Cyclotomic {
            n: self.n,
            coords: sol,
        })
    }

    /// The Galois automorphism zeta -> zeta^k, gcd(k, n) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n;
        let kk = k.rem_euclid(n as i64) as u64;
        assert!(gcd(kk, n) == 1 || n == 1, "galois: {k} not a unit mod {n}");
        let t = tables(n);
        let mut out = vec![BigRational::zero(); t.phi];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.pow[(i as u64 * kk % n) as usize];
            for (o, &v) in out.iter_mut().zip(row) {
                if v != 0 {
                    *o += c * q(v);
                }
            }
        }
        Cyclotomic { n, coords: out }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Shrink to the smallest conductor dividing n that contains the element.
    pub fn normalize_conductor(&self) -> Self {
        let mut best = self.clone();
        for d in crate::arith::divisors(self.n) {
            if d == self.n {
                break;
            }
            // Q(zeta_d) elements lift to coordinates supported on images of zeta_d^i;
            // test by solving for coordinates.
            let t = tables(d);
            let step = self.n / d;
            let big = tables(self.n);
            let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); t.phi + 1]; big.phi];
            for j in 0..t.phi {
                for (i, &v) in big.pow[(j as u64 * step) as usize].iter().enumerate() {
                    m[i][j] = q(v);
                }
            }
            for i in 0..big.phi {
                m[i][t.phi] = self.coords[i].clone();
            }
            if let Some(sol) = solve_overdetermined(m, t.phi) {
                best = Cyclotomic { n: d, coords: sol };
                break;
            }
        }
        best
    }

    /// Serialized form: coordinates as exact rational strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

/// Common denominator form.
fn integerize(c: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in c {
        if !x.denom().is_one() {
            den = num_integer::Integer::lcm(&den, x.denom());
        }
    }
    let v = c
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    (v, den)
}

/// Solve a square augmented system; None if singular.
fn solve_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let v = &m[c][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Solve rows x cols augmented system (cols unknowns, consistent or None).
fn solve_overdetermined(mut m: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][cols].clone();
    }
    Some(sol)
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, i),
            };
            let t = if mon.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mon
            } else if (-c).is_one() {
                format!("-{mon}")
            } else {
                format!("{c}*{mon}")
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let s = terms.join(" + ").replace("+ -", "- ");
        write!(f, "{s}")
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    conductor: u64,
    coords: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycRepr {
            conductor: self.n,
            coords: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = CycRepr::deserialize(d)?;
        if r.conductor == 0 || r.coords.len() != euler_phi(r.conductor) as usize {
            return Err(D::Error::custom("bad cyclotomic coordinates"));
        }
        let coords = r
            .coords
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cyclotomic {
            n: r.conductor,
            coords,
        })
    }
}

/// Product over 0 <= i < p^n, p not dividing i, of (1 - zeta_{p^n}^i).
pub fn product_identity(p: u64, n: u32) -> Cyclotomic {
    let m = p.pow(n);
    let one = Cyclotomic::one(m);
    (0..m)
        .filter(|i| i % p != 0)
        .fold(one.clone(), |acc, i| {
            acc.mul(&one.sub(&Cyclotomic::root_of_unity(m, i as i64)))
        })
}

/// Smallest k >= 1 with x^k = 1, if x is a root of unity of order dividing n (or 2n for odd n).
pub fn root_order(x: &Cyclotomic) -> Option<u64> {
    let bound = if x.n % 2 == 1 { 2 * x.n } else { x.n };
    let mut cur = x.clone();
    for k in 1..=bound {
        if cur.is_one() {
            return Some(k);
        }
        cur = cur.mul(x);
    }
    None
}
