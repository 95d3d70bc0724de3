//! G = D x| E with E acting through L = E/Z.

use super::{conjugacy_classes, CentralExtensionE, Classes, FinGroup};
use crate::abelian::{AbelianPGroup, Elem};
use crate::action::{Mat, PAction};
use crate::arith::gcd;
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone)]
pub struct GroupG {
    pub d: AbelianPGroup,
    pub e: CentralExtensionE,
    /// A(e) for every E-element index
    pub e_mats: Vec<Mat>,
    nd: usize,
    ne: usize,
    dadd: Vec<u32>,
    dneg: Vec<u32>,
    /// act[e * nd + x] = index of e.x
    act: Vec<u32>,
    pub classes: Classes,
    /// Indices of the p-regular classes.
    pub p_regular: Vec<usize>,
}

/// Largest |G| we build.
pub const G_LIMIT: usize = 1 << 16;

impl GroupG {
    /// `mats[i]` is the action of e_i on D as column exponent vectors; z acts trivially.
    pub fn new(d: AbelianPGroup, e: CentralExtensionE, mats: &[Mat]) -> WbResult<Self> {
        if mats.len() != e.rank() {
            return Err(WbError::spec(format!(
                "action: expected {} matrices (one per E-generator), got {}",
                e.rank(),
                mats.len()
            )));
        }
        let nd = d.order() as usize;
        let ne = e.order();
        if nd * ne > G_LIMIT {
            return Err(WbError::BoundExceeded {
                count: format!("|G| = {}", nd * ne),
                bound: G_LIMIT.to_string(),
            });
        }
        let pa = PAction::new(d.clone(), mats.to_vec())?;
        let gens = pa.gens.clone();
        for (i, a) in gens.iter().enumerate() {
            let o = e.pres.orders[i];
            let mut m = pa.identity();
            for _ in 0..o {
                m = pa.compose(&m, a);
            }
            if m != pa.identity() {
                return Err(WbError::spec(format!(
                    "action does not factor through L: e_{}^{} acts nontrivially",
                    i + 1,
                    o
                )));
            }
        }
        let e_mats: Vec<Mat> = (0..ne)
            .map(|idx| {
                let x = e.element(idx);
                let mut m = pa.identity();
                for (a, &k) in gens.iter().zip(&x.a) {
                    for _ in 0..k {
                        m = pa.compose(&m, a);
                    }
                }
                m
            })
            .collect();
        let d_elems: Vec<Elem> = d.elements().collect();
        let mut dadd = vec![0u32; nd * nd];
        for i in 0..nd {
            for j in 0..nd {
                dadd[i * nd + j] = d.index(&d.add(&d_elems[i], &d_elems[j])) as u32;
            }
        }
        let dneg = d_elems.iter().map(|x| d.index(&d.neg(x)) as u32).collect();
        let mut act = vec![0u32; ne * nd];
        for (ei, m) in e_mats.iter().enumerate() {
            for (xi, x) in d_elems.iter().enumerate() {
                act[ei * nd + xi] = d.index(&pa.apply(m, x)) as u32;
            }
        }
        let mut g = GroupG {
            d,
            e,
            e_mats,
            nd,
            ne,
            dadd,
            dneg,
            act,
            classes: Classes {
                reps: vec![],
                class_of: vec![],
                sizes: vec![],
                members: vec![],
                inverse_class: vec![],
                rep_orders: vec![],
            },
            p_regular: vec![],
        };
        g.classes = conjugacy_classes(&g);
        let p = g.d.p;
        g.p_regular = (0..g.classes.len())
            .filter(|&c| gcd(g.classes.rep_orders[c], p) == 1)
            .collect();
        Ok(g)
    }

    pub fn d_order(&self) -> usize {
        self.nd
    }

    pub fn e_order(&self) -> usize {
        self.ne
    }

    pub fn pair(&self, d: usize, e: usize) -> usize {
        d * self.ne + e
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.ne, g % self.ne)
    }

    /// Index of e.x in D.
    pub fn act_d(&self, e: usize, x: usize) -> usize {
        self.act[e * self.nd + x] as usize
    }

    pub fn d_add(&self, x: usize, y: usize) -> usize {
        self.dadd[x * self.nd + y] as usize
    }

    pub fn d_neg(&self, x: usize) -> usize {
        self.dneg[x] as usize
    }

    /// G-index of the E-element e (trivial D-part).
    pub fn from_e(&self, e: usize) -> usize {
        e
    }

    pub fn is_p_regular_class(&self, c: usize) -> bool {
        self.p_regular.binary_search(&c).is_ok()
    }

    /// d in [D, e] = Im(1 - A(e)); equivalent to (d, e) being p-regular.
    pub fn in_commutator_image(&self, d: usize, e: usize) -> bool {
        (0..self.nd).any(|x| self.d_add(x, self.d_neg(self.act_d(e, x))) == d)
    }
}

impl FinGroup for GroupG {
    fn order(&self) -> usize {
        self.nd * self.ne
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (d1, e1) = self.split(a);
        let (d2, e2) = self.split(b);
        let d = self.d_add(d1, self.act_d(e1, d2));
        self.pair(d, self.e.mul(e1, e2))
    }
    fn inv(&self, a: usize) -> usize {
        let (d, e) = self.split(a);
        let ei = self.e.inv(e);
        self.pair(self.act_d(ei, self.d_neg(d)), ei)
    }
    fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = (0..self.d.rank())
            .map(|i| self.pair(self.d.index(&self.d.generator(i)), 0))
            .filter(|&x| x != 0)
            .collect();
        g.extend(self.e.generators());
        g
    }
}
