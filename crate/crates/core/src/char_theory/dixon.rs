//! Character tables by simultaneous eigenvectors of class matrices mod a prime q,
//! lifted exactly to Z[zeta_N] with N the group exponent.

use super::ClassFunction;
use crate::arith::{isqrt, mod_inverse, pow_mod, prime_one_mod, primitive_root};
use crate::coeff_ring::cyclotomic::tables;
use crate::error::{WbError, WbResult};
use crate::group_build::{exponent, Classes, FinGroup};

fn inv(a: u64, q: u64) -> u64 {
    mod_inverse(a % q, q).expect("nonzero mod q")
}

/// Row-reduce in place; returns pivot columns. Rows are dropped when zero.
fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let s = inv(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * s % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    rows[i][k] = (rows[i][k] + (q - f) * rows[r][k]) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Column vectors c with a c = 0.
fn nullspace(a: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    let piv = rref(&mut m, q);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !piv.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&piv) {
            v[pc] = (q - row[free]) % q;
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
fn charpoly(a: &[Vec<u64>], q: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let tinv = inv(h[m][m - 1], q);
        for j in m + 1..n {
            let u = h[j][m - 1] * tinv % q;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[j][k] = (h[j][k] + (q - u) * h[m][k]) % q;
            }
            for k in 0..n {
                h[k][m] = (h[k][m] + u * h[k][j]) % q;
            }
        }
    }
    // p[m] has degree m
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let hm = |i: usize, j: usize| h[i - 1][j - 1];
        let prev = &p[m - 1];
        let mut cur = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % q;
            cur[k] = (cur[k] + (q - hm(m, m)) * c) % q;
        }
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = prod * hm(i + 1, i) % q;
            let coef = hm(i, m) * prod % q;
            if coef == 0 {
                continue;
            }
            for (k, &c) in p[i - 1].iter().enumerate() {
                cur[k] = (cur[k] + (q - coef) * c % q) % q;
            }
        }
        p.push(cur);
    }
    p.pop().unwrap()
}

fn roots(poly: &[u64], q: u64) -> Vec<u64> {
    (0..q)
        .filter(|&t| poly.iter().rev().fold(0u64, |acc, &c| (acc * t + c) % q) == 0)
        .collect()
}

/// The full set of irreducible characters, sorted by (degree, values).
pub fn character_table<G: FinGroup + ?Sized>(g: &G, classes: &Classes) -> WbResult<Vec<ClassFunction>> {
    let n = g.order() as u64;
    let k = classes.len();
    let big_n = exponent(classes);
    let q = prime_one_mod(big_n, 2 * isqrt(n) + 2);
    let zeta = pow_mod(primitive_root(q), (q - 1) / big_n, q);
    let err = |m: String| WbError::verification("chartable", m);

    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; k]; k];
        for s in 0..k {
            for &x in &classes.members[j] {
                let r = classes.class_of[g.mul(g.inv(x), classes.reps[s])];
                m[r][s] += 1;
            }
        }
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x %= q;
            }
        }
        m
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    let mut j = 1;
    while spaces.iter().any(|s| s.len() > 1) {
        if j >= k {
            return Err(err("class matrices do not separate the characters".into()));
        }
        let mj = class_matrix(j);
        j += 1;
        let mut next = Vec::new();
        for mut basis in spaces {
            let m = basis.len();
            if m == 1 {
                next.push(basis);
                continue;
            }
            let piv = rref(&mut basis, q);
            // images of basis vectors, in basis coordinates (via pivot entries)
            let mut r = vec![vec![0u64; m]; m];
            for (i, b) in basis.iter().enumerate() {
                for (l, &pl) in piv.iter().enumerate() {
                    let v: u64 = (0..k).fold(0, |acc, s| (acc + mj[pl][s] * b[s]) % q);
                    r[l][i] = v;
                }
            }
            let cp = charpoly(&r, q);
            let ev = roots(&cp, q);
            let mut total = 0;
            for t in ev {
                let shifted: Vec<Vec<u64>> = (0..m)
                    .map(|a| (0..m).map(|b| (r[a][b] + if a == b { q - t } else { 0 }) % q).collect())
                    .collect();
                let ns = nullspace(&shifted, q);
                total += ns.len();
                let vecs: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|s| (0..m).fold(0, |acc, i| (acc + c[i] * basis[i][s]) % q))
                            .collect()
                    })
                    .collect();
                next.push(vecs);
            }
            if total != m {
                return Err(err(format!("eigenspaces of class matrix {} do not span", j - 1)));
            }
        }
        spaces = next;
    }

    let t = tables(big_n);
    let mut out = Vec::with_capacity(k);
    let mut sum_sq = 0u64;
    for sp in spaces {
        let mut w = sp.into_iter().next().unwrap();
        if w[0] == 0 {
            return Err(err("eigenvector vanishes at the identity class".into()));
        }
        let s0 = inv(w[0], q);
        for x in w.iter_mut() {
            *x = *x * s0 % q;
        }
        let mut ssum = 0u64;
        for r in 0..k {
            ssum = (ssum + w[r] * w[classes.inverse_class[r]] % q * inv(classes.sizes[r] as u64, q)) % q;
        }
        let dsq = (n % q) * inv(ssum, q) % q;
        let d = (1..=isqrt(n))
            .find(|&d| d * d % q == dsq)
            .ok_or_else(|| err("no degree matches the norm".into()))?;
        sum_sq += d * d;
        let modq: Vec<u64> = (0..k)
            .map(|r| d % q * w[r] % q * inv(classes.sizes[r] as u64, q) % q)
            .collect();
        let mut values = Vec::with_capacity(k);
        for r in 0..k {
            let o = classes.rep_orders[r];
            let x = classes.reps[r];
            let mut pcls = Vec::with_capacity(o as usize);
            let mut y = 0usize;
            for _ in 0..o {
                pcls.push(classes.class_of[y]);
                y = g.mul(y, x);
            }
            let zo = pow_mod(zeta, big_n / o, q);
            let zo_inv = inv(zo, q);
            let oinv = inv(o, q);
            let mut counts = vec![0i64; big_n as usize];
            let mut total = 0;
            for s in 0..o {
                let step = pow_mod(zo_inv, s, q);
                let mut acc = 0u64;
                let mut f = 1u64;
                for &pc in &pcls {
                    acc = (acc + modq[pc] * f) % q;
                    f = f * step % q;
                }
                let ms = acc * oinv % q;
                if ms > d {
                    return Err(err(format!("eigenvalue multiplicity {ms} exceeds degree {d}")));
                }
                total += ms;
                counts[(s * (big_n / o)) as usize] += ms as i64;
            }
            if total != d {
                return Err(err("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(t.from_counts(&counts));
        }
        out.push(ClassFunction {
            conductor: big_n,
            values,
        });
    }
    if sum_sq != n || out.len() != k {
        return Err(err(format!("sum of squared degrees {sum_sq} != |G| = {n}")));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.values.cmp(&b.values)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_build::{conjugacy_classes, CentralExtensionE, TableGroup};

    fn check_orthonormal<G: FinGroup>(g: &G) -> Vec<ClassFunction> {
        let cl = conjugacy_classes(g);
        let tab = character_table(g, &cl).unwrap();
        for (i, a) in tab.iter().enumerate() {
            for (j, b) in tab.iter().enumerate() {
                let ip = a.inner(b, &cl).unwrap();
                assert_eq!(ip, num_rational::BigRational::from_integer((i == j).into()));
            }
        }
        tab
    }

    #[test]
    fn charpoly_small() {
        // [[1,2],[3,4]] : x^2 - 5x - 2
        let cp = charpoly(&[vec![1, 2], vec![3, 4]], 101);
        assert_eq!(cp, vec![99, 96, 1]);
        let cp3 = charpoly(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], 7);
        assert_eq!(cp3, vec![6, 0, 0, 1]);
    }

    #[test]
    fn q8_table() {
        let tab = check_orthonormal(&CentralExtensionE::q8());
        let degs: Vec<i64> = tab.iter().map(|c| c.degree()).collect();
        assert_eq!(degs, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn cyclic_and_extraspecial() {
        let c7 = CentralExtensionE::abelian(vec![7], 1).unwrap();
        assert_eq!(check_orthonormal(&c7).len(), 7);
        let e27 = CentralExtensionE::new(crate::group_build::extension::Presentation {
            orders: vec![3, 3],
            power_z: vec![0, 0],
            comm: vec![vec![0, 1], vec![-1, 0]],
            z_ord: 3,
        })
        .unwrap();
        let tab = check_orthonormal(&e27);
        assert_eq!(tab.iter().filter(|c| c.degree() == 3).count(), 2);
    }

    #[test]
    fn s3_from_table() {
        // S3 on indices via permutation composition
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        let mut table = vec![0u32; 36];
        for i in 0..6 {
            for j in 0..6 {
                let c = [perms[i][perms[j][0]], perms[i][perms[j][1]], perms[i][perms[j][2]]];
                table[i * 6 + j] = idx(c) as u32;
            }
        }
        let s3 = TableGroup::from_table(6, table).unwrap();
        let tab = check_orthonormal(&s3);
        let degs: Vec<i64> = tab.iter().map(|c| c.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2]);
    }
}
