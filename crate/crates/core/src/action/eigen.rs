//! Eigenvalue structure of an indecomposable action on its Frattini quotient.

use serde::Serialize;

use super::{Mat, PAction};
use crate::arith::{mod_inverse, mult_order};
use crate::coeff_ring::linalg::{from_ints, nullspace, shift};
use crate::coeff_ring::{GaloisRing, GrElem};
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, Serialize)]
pub struct EigenOrbit {
    /// A generator of the (cyclic) acting group.
    pub generator: Mat,
    pub h_order: usize,
    pub m: usize,
    /// Degree d of the field F_{p^d} holding the eigenvalues.
    pub field_degree: usize,
    /// Eigenvalues as exponents k of a fixed primitive |H|-th root eta: lambda = eta^k.
    /// The first is the smallest; the rest are its Frobenius images k p^j.
    pub orbit_exps: Vec<u64>,
}

pub fn eigen_orbit(act: &PAction) -> WbResult<EigenOrbit> {
    let h = act.order();
    let gen = act
        .elements
        .iter()
        .find(|a| act.mat_order(a) == h)
        .cloned()
        .ok_or_else(|| WbError::verification("jacobi", format!("acting group of order {h} is not cyclic")))?;
    let p = act.group.p;
    let abar = act.frattini_matrix(&gen);
    let m = abar.len();
    let o = h as u64;
    let d = if o == 1 { 1 } else { mult_order(p % o, o) as usize };
    let f = GaloisRing::new(p, 1, d);
    let fm = from_ints(&f, &abar);
    let eta = f.root_of_unity(o, 1)?;
    let mut exps = Vec::new();
    let mut mu = f.one();
    for k in 0..o {
        let ns = nullspace(&f, &shift(&f, &fm, &mu));
        match ns.len() {
            0 => {}
            1 => exps.push(k),
            n => {
                return Err(WbError::verification(
                    "jacobi",
                    format!("eigenvalue eta^{k} has a {n}-dimensional eigenspace"),
                ))
            }
        }
        mu = f.mul(&mu, &eta);
    }
    if exps.len() != m {
        return Err(WbError::verification(
            "jacobi",
            format!("{} distinct eigenvalues in F_{}^{} for an action of rank {m}", exps.len(), p, d),
        ));
    }
    let k0 = exps[0];
    let mut orbit = vec![k0];
    let mut k = k0 * p % o.max(1);
    while k != k0 {
        orbit.push(k);
        k = k * p % o;
    }
    let mut sorted = orbit.clone();
    sorted.sort_unstable();
    if sorted != exps || d != m {
        return Err(WbError::verification(
            "jacobi",
            format!("eigenvalues {exps:?} are not a single Frobenius orbit of length {m}"),
        ));
    }
    check_free_on_quotient(act)?;
    Ok(EigenOrbit {
        generator: gen,
        h_order: h,
        m,
        field_degree: d,
        orbit_exps: orbit,
    })
}

/// Every nonzero vector of P/Phi(P) has trivial stabiliser in H.
pub fn check_free_on_quotient(act: &PAction) -> WbResult<()> {
    let fa = act.frattini_action();
    let id = fa.identity();
    for v in fa.group.elements().skip(1) {
        for a in fa.elements.iter().filter(|a| **a != id) {
            if fa.apply(a, &v) == v {
                return Err(WbError::verification(
                    "jacobi",
                    format!("nonzero vector {v:?} of the Frattini quotient has a nontrivial stabiliser"),
                ));
            }
        }
    }
    Ok(())
}

/// Eigenvalue of each generator matrix of `act` on a common eigenvector in F_{p^d}^m,
/// as exponents of the fixed primitive r-th root of unity. The eigenvector is chosen
/// as the eta^{k}-eigenvector of the cyclic generator for the given k.
pub fn common_eigenvalues(
    act: &PAction,
    field: &GaloisRing,
    r: u64,
    gen_eigen: &GrElem,
) -> WbResult<Vec<u64>> {
    let h = act.order();
    let gen = act
        .elements
        .iter()
        .find(|a| act.mat_order(a) == h)
        .cloned()
        .ok_or_else(|| WbError::verification("jacobi", "acting group is not cyclic"))?;
    let fm = from_ints(field, &act.frattini_matrix(&gen));
    let ns = nullspace(field, &shift(field, &fm, gen_eigen));
    if ns.len() != 1 {
        return Err(WbError::verification("jacobi", "eigenvector of the generator is not unique"));
    }
    let v = &ns[0];
    let eta = field.root_of_unity(r, 1)?;
    let mut out = Vec::new();
    for a in &act.gens {
        let am = from_ints(field, &act.frattini_matrix(a));
        let av = crate::coeff_ring::linalg::mat_vec(field, &am, v);
        let piv = v.iter().position(|x| !field.is_zero(x)).unwrap();
        let ratio = field.mul(&av[piv], &field.inv(&v[piv])?);
        let scaled: Vec<GrElem> = v.iter().map(|x| field.mul(&ratio, x)).collect();
        if scaled != av {
            return Err(WbError::verification("jacobi", "generators have no common eigenvector"));
        }
        let mut e = field.one();
        let mut found = None;
        for k in 0..r {
            if e == ratio {
                found = Some(k);
                break;
            }
            e = field.mul(&e, &eta);
        }
        out.push(found.ok_or_else(|| WbError::verification("jacobi", "eigenvalue is not an r-th root of unity"))?);
    }
    Ok(out)
}

/// The map x -> 1 - x from P to J/J^2 of F_p P intertwines the H-actions.
pub fn check_jj2_intertwining(act: &PAction) -> WbResult<()> {
    let g = &act.group;
    let p = g.p as i64;
    let n = g.order() as usize;
    let els: Vec<_> = g.elements().collect();
    let mut basis = EchelonFp::new(n, p);
    let gens: Vec<usize> = (0..g.rank()).filter(|&i| g.orders[i] >= 1).collect();
    let one_minus = |x: &[u64]| -> Vec<i64> {
        let mut v = vec![0i64; n];
        v[0] += 1;
        v[g.index(x)] -= 1;
        v
    };
    let mulv = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let k = g.index(&g.add(&els[i], &els[j]));
                    out[k] = (out[k] + x * y).rem_euclid(p);
                }
            }
        }
        out
    };
    for (ia, &a) in gens.iter().enumerate() {
        for &b in &gens[ia..] {
            let prod = mulv(&one_minus(&g.generator(a)), &one_minus(&g.generator(b)));
            for x in &els {
                let mut gx = vec![0i64; n];
                gx[g.index(x)] = 1;
                basis.insert(mulv(&prod, &gx));
            }
        }
    }
    for mat in &act.gens {
        for &i in &gens {
            let xi = g.generator(i);
            let hx = act.apply(mat, &xi);
            let mut lhs = one_minus(&hx);
            for &k in &gens {
                let c = mat[k][i].rem_euclid(p);
                let t = one_minus(&g.generator(k));
                for (x, &tv) in lhs.iter_mut().zip(&t) {
                    *x = (*x - c * tv).rem_euclid(p);
                }
            }
            if !basis.contains(lhs) {
                return Err(WbError::verification(
                    "jacobi",
                    format!("1 - h(x_{i}) differs from the Frattini-matrix image modulo J^2"),
                ));
            }
        }
    }
    Ok(())
}

struct EchelonFp {
    p: i64,
    rows: Vec<Option<Vec<i64>>>,
}

impl EchelonFp {
    fn new(n: usize, p: i64) -> Self {
        EchelonFp { p, rows: vec![None; n] }
    }

    fn reduce(&self, mut v: Vec<i64>) -> (Vec<i64>, Option<usize>) {
        let p = self.p;
        for c in 0..v.len() {
            v[c] = v[c].rem_euclid(p);
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                Some(r) => {
                    let f = v[c];
                    for k in c..v.len() {
                        v[k] = (v[k] - f * r[k]).rem_euclid(p);
                    }
                }
                None => return (v, Some(c)),
            }
        }
        (v, None)
    }

    fn insert(&mut self, v: Vec<i64>) {
        let (mut v, piv) = self.reduce(v);
        if let Some(c) = piv {
            let inv = mod_inverse(v[c] as u64, self.p as u64).unwrap() as i64;
            for x in v.iter_mut() {
                *x = (*x * inv).rem_euclid(self.p);
            }
            self.rows[c] = Some(v);
        }
    }

    fn contains(&self, v: Vec<i64>) -> bool {
        self.reduce(v).1.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPGroup;

    fn act(p: u64, orders: &[u32], gens: Vec<Mat>) -> PAction {
        PAction::new(AbelianPGroup::new(p, orders.to_vec()), gens).unwrap()
    }

    #[test]
    fn c3_on_klein() {
        let a = act(2, &[1, 1], vec![vec![vec![0, 1], vec![1, 1]]]);
        let e = eigen_orbit(&a).unwrap();
        assert_eq!(e.m, 2);
        assert_eq!(e.field_degree, 2);
        // primitive cube roots eta, eta^2
        assert_eq!(e.orbit_exps, vec![1, 2]);
        check_jj2_intertwining(&a).unwrap();
    }

    #[test]
    fn sign_on_c3() {
        let a = act(3, &[1], vec![vec![vec![2]]]);
        let e = eigen_orbit(&a).unwrap();
        assert_eq!((e.m, e.field_degree), (1, 1));
        assert_eq!(e.orbit_exps, vec![1]);
    }

    #[test]
    fn rejects_split_c4_on_c5_squared() {
        // X^2 + 1 = (X - 2)(X - 3) over F_5
        let a = act(5, &[1, 1], vec![vec![vec![0, 4], vec![1, 0]]]);
        let err = eigen_orbit(&a).unwrap_err();
        assert!(err.is_verification());
    }

    #[test]
    fn jj2_on_c4_squared() {
        let a = act(2, &[2, 2], vec![vec![vec![0, 3], vec![1, 3]]]);
        check_jj2_intertwining(&a).unwrap();
        let e = eigen_orbit(&a).unwrap();
        assert_eq!(e.m, 2);
    }
}
