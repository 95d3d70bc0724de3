//! Faithful actions of abelian p'-groups H on abelian p-groups P, given by matrices.

pub mod decompose;
pub mod eigen;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::abelian::{AbelianPGroup, Elem, Subgroup};
use crate::arith::gcd;
use crate::error::{WbError, WbResult};

/// Integer matrix acting on exponent column vectors: (A x)_i = sum_j A_ij x_j mod p^{n_i}.
pub type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PAction {
    pub group: AbelianPGroup,
    pub gens: Vec<Mat>,
    /// All elements of H, identity first, in discovery order.
    #[serde(skip)]
    pub elements: Vec<Mat>,
}

pub fn identity(r: usize) -> Mat {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl PAction {
    /// Validate and close the generators under composition.
    pub fn new(group: AbelianPGroup, gens: Vec<Mat>) -> WbResult<Self> {
        let r = group.rank();
        let moduli = group.moduli();
        let mut norm = Vec::new();
        for (k, a) in gens.iter().enumerate() {
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(WbError::spec(format!("action matrix {k} has wrong shape")));
            }
            for i in 0..r {
                for j in 0..r {
                    let need = if group.orders[i] > group.orders[j] {
                        group.p.pow(group.orders[i] - group.orders[j])
                    } else {
                        1
                    };
                    if a[i][j].rem_euclid(need as i64) != 0 {
                        return Err(WbError::spec(format!(
                            "action matrix {k}: entry ({i},{j}) must be divisible by {need} to be well defined"
                        )));
                    }
                }
            }
            norm.push(normalize(&moduli, a));
        }
        let mut act = PAction {
            group,
            gens: norm,
            elements: vec![],
        };
        for (k, a) in act.gens.iter().enumerate() {
            if !act.frattini_invertible(a) {
                return Err(WbError::spec(format!("action matrix {k} is not an automorphism")));
            }
        }
        for (i, a) in act.gens.iter().enumerate() {
            for b in &act.gens[i + 1..] {
                if act.compose(a, b) != act.compose(b, a) {
                    return Err(WbError::spec("action generators do not commute"));
                }
            }
        }
        act.elements = act.closure()?;
        let h = act.elements.len() as u64;
        if gcd(h, act.group.p) != 1 {
            return Err(WbError::spec(format!(
                "acting group has order {h}, divisible by p = {}",
                act.group.p
            )));
        }
        Ok(act)
    }

    pub fn trivial(group: AbelianPGroup) -> Self {
        let id = identity(group.rank());
        PAction {
            group,
            gens: vec![],
            elements: vec![id],
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn apply(&self, a: &Mat, x: &[u64]) -> Elem {
        let moduli = self.group.moduli();
        a.iter()
            .zip(&moduli)
            .map(|(row, &m)| {
                let s: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&c, &v)| c as i128 * v as i128)
                    .sum();
                s.rem_euclid(m as i128) as u64
            })
            .collect()
    }

    pub fn compose(&self, a: &Mat, b: &Mat) -> Mat {
        let r = self.rank();
        let moduli = self.group.moduli();
        let mut c = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let s: i128 = (0..r).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                c[i][j] = s.rem_euclid(moduli[i] as i128) as i64;
            }
        }
        c
    }

    pub fn identity(&self) -> Mat {
        normalize(&self.group.moduli(), &identity(self.rank()))
    }

    pub fn inverse(&self, a: &Mat) -> Mat {
        let mut x = self.identity();
        let mut prev = x.clone();
        loop {
            x = self.compose(&x, a);
            if x == self.identity() {
                return prev;
            }
            prev = x.clone();
        }
    }

    pub fn mat_order(&self, a: &Mat) -> usize {
        let id = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.compose(&x, a);
            k += 1;
        }
        k
    }

    fn closure(&self) -> WbResult<Vec<Mat>> {
        let id = self.identity();
        let mut seen: HashMap<Mat, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let y = self.compose(&out[i], g);
                if seen.insert(y.clone(), ()).is_none() {
                    out.push(y);
                    if out.len() > 100_000 {
                        return Err(WbError::spec("acting group too large"));
                    }
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// Matrix modulo p on the coordinates with n_i >= 1.
    pub fn frattini_matrix(&self, a: &Mat) -> Mat {
        let p = self.group.p as i64;
        let idx: Vec<usize> = (0..self.rank()).filter(|&i| self.group.orders[i] >= 1).collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| a[i][j].rem_euclid(p)).collect())
            .collect()
    }

    fn frattini_invertible(&self, a: &Mat) -> bool {
        let m = self.frattini_matrix(a);
        let f = crate::coeff_ring::GaloisRing::new(self.group.p, 1, 1);
        let fm = crate::coeff_ring::linalg::from_ints(&f, &m);
        crate::coeff_ring::linalg::rank(&f, &fm) == m.len()
    }

    /// The induced action on P/Phi(P), as an action on an elementary abelian group.
    pub fn frattini_action(&self) -> PAction {
        let r = self.group.frattini().quotient_rank;
        let q = AbelianPGroup::new(self.group.p, vec![1; r]);
        let gens: Vec<Mat> = self.gens.iter().map(|a| self.frattini_matrix(a)).collect();
        PAction::new(q, gens).expect("quotient of a valid action is valid")
    }

    /// Subgroup invariant under every generator.
    pub fn is_invariant(&self, s: &Subgroup) -> bool {
        s.gens.iter().all(|x| self.gens.iter().all(|a| s.contains(&self.apply(a, x))))
    }

    /// Orbit span of x: the smallest invariant subgroup containing x.
    pub fn invariant_span(&self, x: &[u64]) -> Subgroup {
        let imgs: Vec<Elem> = self.elements.iter().map(|a| self.apply(a, x)).collect();
        self.group.span(&imgs)
    }

    /// Matrices of the generators restricted to an invariant subgroup with independent basis `basis`.
    /// Returns the induced action on the abstract group of that basis.
    pub fn restrict(&self, basis: &[Elem]) -> WbResult<PAction> {
        let sub = AbelianPGroup::new(
            self.group.p,
            basis
                .iter()
                .map(|b| crate::arith::vp(self.group.p, self.group.element_order(b)))
                .collect(),
        );
        let coords = coordinate_map(&self.group, basis, &sub);
        let k = basis.len();
        let mut gens = Vec::new();
        for a in &self.gens {
            let mut m = vec![vec![0i64; k]; k];
            for (j, b) in basis.iter().enumerate() {
                let img = self.apply(a, b);
                let c = coords
                    .get(&img)
                    .ok_or_else(|| WbError::verification("restrict", "subgroup not invariant"))?;
                for i in 0..k {
                    m[i][j] = c[i] as i64;
                }
            }
            gens.push(m);
        }
        PAction::new(sub, gens)
    }
}

pub fn normalize(moduli: &[u64], a: &Mat) -> Mat {
    a.iter()
        .zip(moduli)
        .map(|(row, &m)| row.iter().map(|&x| x.rem_euclid(m as i64)).collect())
        .collect()
}

/// Element of P -> coordinates on an independent basis.
pub fn coordinate_map(g: &AbelianPGroup, basis: &[Elem], sub: &AbelianPGroup) -> HashMap<Elem, Elem> {
    let mut map = HashMap::new();
    for c in sub.elements() {
        let mut x = g.zero();
        for (b, &k) in basis.iter().zip(&c) {
            x = g.add(&x, &g.scalar(k as i64, b));
        }
        map.insert(x, c);
    }
    map
}

#[derive(Debug, Clone)]
pub struct FixedCommutator {
    pub fixed: Subgroup,
    pub commutator: Subgroup,
}

/// C_P(H) and [P,H], with the internal direct product verified.
pub fn fixed_and_commutator(act: &PAction) -> WbResult<FixedCommutator> {
    let g = &act.group;
    let fixed_set: BTreeSet<Elem> = g
        .elements()
        .filter(|x| act.gens.iter().all(|a| act.apply(a, x) == *x))
        .collect();
    let fixed_gens: Vec<Elem> = fixed_set.iter().cloned().collect();
    let fixed = Subgroup {
        elements: fixed_set,
        gens: fixed_gens,
    };
    let mut comm_gens = Vec::new();
    for a in &act.gens {
        for i in 0..g.rank() {
            let x = g.generator(i);
            comm_gens.push(g.sub(&act.apply(a, &x), &x));
        }
    }
    let commutator = g.span(&comm_gens);
    let inter = fixed.intersect(&commutator);
    if fixed.order() * commutator.order() != g.order() as usize || inter.len() != 1 {
        return Err(WbError::verification(
            "decompP",
            format!(
                "|C_P(H)| = {}, |[P,H]| = {}, |P| = {}, intersection {}",
                fixed.order(),
                commutator.order(),
                g.order(),
                inter.len()
            ),
        ));
    }
    let fixed_basis = g.splitting_basis(&fixed);
    let comm_basis = g.splitting_basis(&commutator);
    Ok(FixedCommutator {
        fixed: Subgroup {
            elements: fixed.elements,
            gens: fixed_basis,
        },
        commutator: Subgroup {
            elements: commutator.elements,
            gens: comm_basis,
        },
    })
}

/// Whether some nontrivial character of P is fixed by H; checked against C_P(H) != 1.
pub fn fixed_char_exists(act: &PAction) -> WbResult<bool> {
    let g = &act.group;
    let gens: Vec<Elem> = (0..g.rank()).map(|i| g.generator(i)).collect();
    let images: Vec<Vec<Elem>> = act
        .gens
        .iter()
        .map(|a| gens.iter().map(|x| act.apply(a, x)).collect())
        .collect();
    let found = g.elements().any(|lam| {
        !g.is_zero(&lam)
            && images.iter().all(|imgs| {
                imgs.iter()
                    .zip(&gens)
                    .all(|(hx, x)| g.pairing_exponent(&lam, hx) == g.pairing_exponent(&lam, x))
            })
    });
    let fc = fixed_and_commutator(act)?;
    if found != !fc.fixed.is_trivial() {
        return Err(WbError::verification(
            "actirr",
            format!("fixed character exists = {found}, C_P(H) nontrivial = {}", !fc.fixed.is_trivial()),
        ));
    }
    Ok(found)
}
