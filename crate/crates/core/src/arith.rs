//! Small-integer number theory used everywhere.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Exponent of p in n (n > 0).
pub fn vp(p: u64, mut n: u64) -> u32 {
    debug_assert!(n > 0);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Split n = p^a * m with p not dividing m.
pub fn split_p(p: u64, n: u64) -> (u32, u64) {
    let a = vp(p, n);
    (a, n / p.pow(a))
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Multiplicative order of a modulo n, for gcd(a, n) = 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(gcd(a, n) == 1, "mult_order: {a} not a unit mod {n}");
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// Order of x in Z/n.
pub fn additive_order(x: u64, n: u64) -> u64 {
    n / gcd(x % n, n)
}

pub fn modn(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Smallest prime q with q = 1 mod m and q > lower.
pub fn prime_one_mod(m: u64, lower: u64) -> u64 {
    let mut q = (lower / m + 1) * m + 1;
    while !is_prime(q) {
        q += m;
    }
    q
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// A generator of (Z/q)^× for prime q.
pub fn primitive_root(q: u64) -> u64 {
    let fs = factorize(q - 1);
    (2..q)
        .find(|&g| fs.iter().all(|&(r, _)| pow_mod(g, (q - 1) / r, q) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(mult_order(2, 9), 6);
        assert_eq!(mult_order(3, 8), 2);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(split_p(3, 36), (2, 4));
        assert_eq!(prime_one_mod(12, 20), 37);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(isqrt(80), 8);
        assert_eq!(pow_mod(3, 4, 5), 1);
    }
}
