//! Dense linear algebra over a finite field GR(p, 1, d).

use super::galois::{GaloisRing, GrElem};

pub type FMat = Vec<Vec<GrElem>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &GaloisRing, m: &mut FMat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(&m[r][c]).expect("nonzero field element");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for k in 0..cols {
                    let t = f.mul(&factor, &m[r][k]);
                    m[i][k] = f.sub(&m[i][k], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(f: &GaloisRing, m: &FMat) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of {v : m v = 0}.
pub fn nullspace(f: &GaloisRing, m: &FMat) -> Vec<Vec<GrElem>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[row][fc]);
            }
            v
        })
        .collect()
}

pub fn from_ints(f: &GaloisRing, m: &[Vec<i64>]) -> FMat {
    m.iter()
        .map(|row| row.iter().map(|&x| f.from_int(x)).collect())
        .collect()
}

pub fn mat_vec(f: &GaloisRing, m: &FMat, v: &[GrElem]) -> Vec<GrElem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

/// m - lambda I
pub fn shift(f: &GaloisRing, m: &FMat, lambda: &GrElem) -> FMat {
    let mut a = m.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = f.sub(&row[i], lambda);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_over_f4() {
        let f = GaloisRing::new(2, 1, 2);
        // [[0,1],[1,1]] has eigenvalues the two primitive cube roots in F_4
        let a = from_ints(&f, &[vec![0, 1], vec![1, 1]]);
        let w = f.root_of_unity(3, 1).unwrap();
        let ns = nullspace(&f, &shift(&f, &a, &w));
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let av = mat_vec(&f, &a, v);
        let wv: Vec<GrElem> = v.iter().map(|x| f.mul(&w, x)).collect();
        assert_eq!(av, wv);
        assert_eq!(rank(&f, &a), 2);
    }
}
