//! Dense polynomials over F_p, coefficients low to high, u64 entries in [0, p).

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn reduce_coeffs(a: &[i64], p: u64) -> Poly {
    trim(a.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// (quotient, remainder) of a by nonzero b.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = crate::arith::mod_inverse(b[db], p).expect("p prime");
    let mut r: Vec<u64> = a.to_vec();
    let da = match degree(&r) {
        Some(d) if d >= db => d,
        _ => return (vec![0], trim(r)),
    };
    let mut q = vec![0u64; da - db + 1];
    for k in (db..=da).rev() {
        let c = r[k] * inv % p;
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for j in 0..=db {
            r[k - db + j] = (r[k - db + j] + p * p - c * b[j] % p) % p;
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero(&y) {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => vec![0],
        Some(d) => {
            let inv = crate::arith::mod_inverse(a[d], p).unwrap();
            trim(a.iter().map(|&c| c * inv % p).collect())
        }
    }
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Poly {
    let mut r = vec![1u64];
    let mut b = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    r
}

/// Monic f is irreducible over F_p iff gcd(X^{p^i} - X, f) = 1 for i <= deg/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..d / 2 {
        h = powmod(&h, p, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Monic polynomials of degree d in lex order of (c_0, ..., c_{d-1}).
pub fn monic_lex(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    let total = p.pow(d as u32);
    (0..total).map(move |mut k| {
        let mut c = vec![0u64; d + 1];
        for i in (0..d).rev() {
            c[i] = k % p;
            k /= p;
        }
        c[d] = 1;
        c
    })
}

/// Lex-first monic irreducible polynomial of degree d over F_p.
pub fn first_irreducible(d: usize, p: u64) -> Poly {
    monic_lex(d, p)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
