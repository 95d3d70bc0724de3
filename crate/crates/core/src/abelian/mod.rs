//! Finite abelian p-groups as exponent vectors with mixed moduli.

pub mod group_algebra;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::gcd;
use crate::coeff_ring::Cyclotomic;
use crate::error::{WbError, WbResult};

pub type Elem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianPGroup {
    pub p: u64,
    /// Exponents n_i: the group is prod C_{p^{n_i}}.
    pub orders: Vec<u32>,
}

impl AbelianPGroup {
    pub fn new(p: u64, orders: Vec<u32>) -> Self {
        AbelianPGroup { p, orders }
    }

    /// From a list of cyclic orders such as [9, 3]; all must be powers of p.
    pub fn from_cyclic_orders(p: u64, cyc: &[u64]) -> WbResult<Self> {
        let mut orders = Vec::new();
        for &c in cyc {
            let (a, rest) = crate::arith::split_p(p, c.max(1));
            if rest != 1 {
                return Err(WbError::spec(format!("defect factor C_{c} is not a {p}-group")));
            }
            orders.push(a);
        }
        Ok(AbelianPGroup { p, orders })
    }

    pub fn trivial(p: u64) -> Self {
        AbelianPGroup { p, orders: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.orders.iter().map(|&n| self.p.pow(n)).collect()
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.orders.iter().sum())
    }

    pub fn exponent(&self) -> u64 {
        self.p.pow(self.orders.iter().copied().max().unwrap_or(0))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        if self.orders[i] > 0 {
            e[i] = 1;
        }
        e
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        a.iter()
            .zip(b)
            .zip(self.moduli())
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        a.iter().zip(self.moduli()).map(|(x, m)| (m - x % m) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scalar(&self, k: i64, a: &[u64]) -> Elem {
        a.iter()
            .zip(self.moduli())
            .map(|(&x, m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
            .collect()
    }

    pub fn reduce(&self, a: &[i64]) -> Elem {
        a.iter()
            .zip(self.moduli())
            .map(|(&x, m)| x.rem_euclid(m as i64) as u64)
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(self.moduli())
            .map(|(&x, m)| m / gcd(x, m))
            .max()
            .unwrap_or(1)
    }

    /// Mixed-radix index, first coordinate least significant.
    pub fn index(&self, a: &[u64]) -> usize {
        let mut idx = 0usize;
        for (x, m) in a.iter().zip(self.moduli()).rev() {
            idx = idx * m as usize + *x as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Elem {
        self.moduli()
            .iter()
            .map(|&m| {
                let x = idx % m as usize;
                idx /= m as usize;
                x as u64
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as usize).map(|i| self.element(i))
    }

    /// lambda(x) as an exponent of zeta_{exp(P)}.
    pub fn pairing_exponent(&self, lambda: &[u64], x: &[u64]) -> u64 {
        let e = self.exponent();
        let mut s = 0u64;
        for ((a, b), m) in lambda.iter().zip(x).zip(self.moduli()) {
            s = (s + (a * b % m) * (e / m)) % e;
        }
        s
    }

    /// Subgroup generated by a list of elements.
    pub fn span(&self, gens: &[Elem]) -> Subgroup {
        let mut set: BTreeSet<Elem> = BTreeSet::new();
        set.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            elements: set,
            gens: gens.iter().filter(|g| !self.is_zero(g)).cloned().collect(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        let gens: Vec<Elem> = (0..self.rank()).map(|i| self.generator(i)).collect();
        self.span(&gens)
    }

    /// Dual character whose restriction to the cyclic group generated by x is faithful.
    pub fn faithful_dual_on(&self, x: &[u64]) -> Elem {
        let o = self.element_order(x);
        // pick a coordinate where x has full order
        let moduli = self.moduli();
        let i = (0..self.rank())
            .find(|&i| moduli[i] / gcd(x[i], moduli[i]) == o)
            .expect("some coordinate realises the order");
        let mut l = self.zero();
        l[i] = 1;
        l
    }

    /// Basis of independent elements for a subgroup: S = <b_1> + ... + <b_k> (direct).
    pub fn splitting_basis(&self, s: &Subgroup) -> Vec<Elem> {
        let mut cur: Vec<Elem> = s.elements.iter().cloned().collect();
        let mut basis = Vec::new();
        loop {
            let Some(x) = cur
                .iter()
                .max_by(|a, b| {
                    self.element_order(a)
                        .cmp(&self.element_order(b))
                        .then_with(|| b.cmp(a))
                })
                .cloned()
            else {
                break;
            };
            if self.is_zero(&x) {
                break;
            }
            let lam = self.faithful_dual_on(&x);
            basis.push(x);
            cur.retain(|y| self.pairing_exponent(&lam, y) == 0);
        }
        basis
    }

    /// Frattini subgroup pP and the quotient data.
    pub fn frattini(&self) -> Frattini {
        let orders: Vec<u32> = self
            .orders
            .iter()
            .filter(|&&n| n >= 1)
            .map(|&n| n - 1)
            .collect();
        Frattini {
            sub: AbelianPGroup {
                p: self.p,
                orders,
            },
            quotient_rank: self.orders.iter().filter(|&&n| n >= 1).count(),
        }
    }

    /// Image in P/Phi(P) = F_p^r.
    pub fn frattini_quotient(&self, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.orders)
            .filter(|(_, &n)| n >= 1)
            .map(|(&v, _)| v % self.p)
            .collect()
    }

    /// Subgroup pP as an element set of P.
    pub fn frattini_subgroup(&self) -> Subgroup {
        let gens: Vec<Elem> = (0..self.rank())
            .map(|i| self.scalar(self.p as i64, &self.generator(i)))
            .collect();
        self.span(&gens)
    }

    pub fn is_homocyclic(&self) -> bool {
        self.orders.windows(2).all(|w| w[0] == w[1])
    }

    /// Isomorphism type of a subgroup as sorted exponents.
    pub fn subgroup_type(&self, s: &Subgroup) -> Vec<u32> {
        let mut t: Vec<u32> = self
            .splitting_basis(s)
            .iter()
            .map(|b| crate::arith::vp(self.p, self.element_order(b)))
            .collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn check_same(&self, other: &AbelianPGroup) -> WbResult<()> {
        if self != other {
            return Err(WbError::spec("group mismatch"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: BTreeSet<Elem>,
    pub gens: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn contains(&self, x: &[u64]) -> bool {
        self.elements.contains(x)
    }
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
    pub fn intersect(&self, other: &Subgroup) -> BTreeSet<Elem> {
        self.elements.intersection(&other.elements).cloned().collect()
    }
}

#[derive(Debug, Clone)]
pub struct Frattini {
    pub sub: AbelianPGroup,
    pub quotient_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCharacter {
    pub owner: AbelianPGroup,
    pub exps: Elem,
}

impl DualCharacter {
    pub fn new(owner: &AbelianPGroup, exps: Elem) -> Self {
        DualCharacter {
            owner: owner.clone(),
            exps,
        }
    }
}

/// lambda(x) as an exact root of unity of conductor exp(P).
pub fn dual_pairing(lambda: &DualCharacter, group: &AbelianPGroup, x: &[u64]) -> WbResult<Cyclotomic> {
    lambda.owner.check_same(group)?;
    let e = group.exponent();
    Ok(Cyclotomic::root_of_unity(e, group.pairing_exponent(&lambda.exps, x) as i64))
}

pub fn is_homocyclic(p: &AbelianPGroup) -> bool {
    p.is_homocyclic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u64, o: &[u32]) -> AbelianPGroup {
        AbelianPGroup::new(p, o.to_vec())
    }

    #[test]
    fn frattini_examples() {
        assert!(g(3, &[1, 1]).frattini().sub.is_trivial());
        assert_eq!(g(2, &[2]).frattini().sub.orders, vec![1]);
        let p = g(3, &[2, 1]);
        let f = p.frattini();
        assert_eq!(f.sub.orders, vec![1, 0]);
        assert_eq!(f.quotient_rank, 2);
        // oracle: enumerate p-th powers
        let cubes: BTreeSet<Elem> = p.elements().map(|x| p.scalar(3, &x)).collect();
        assert_eq!(cubes, p.frattini_subgroup().elements);
        assert_eq!(cubes.len() as u64, f.sub.order());
    }

    #[test]
    fn frattini_is_intersection_of_maximals() {
        for (p, o) in [(2u64, vec![2u32, 1]), (2, vec![1, 1, 1]), (2, vec![4]), (3, vec![1, 1]), (2, vec![2, 2]), (3, vec![2])] {
            let grp = g(p, &o);
            let n = grp.order() as usize;
            let all: Vec<Elem> = grp.elements().collect();
            // maximal subgroups have index p; enumerate them as kernels of nonzero duals of order p
            let mut inter: BTreeSet<Elem> = all.iter().cloned().collect();
            let e = grp.exponent();
            for lam in grp.elements() {
                if grp.is_zero(&lam) || grp.element_order(&lam) != p {
                    continue;
                }
                let ker: BTreeSet<Elem> = all
                    .iter()
                    .filter(|x| grp.pairing_exponent(&lam, x) % e == 0)
                    .cloned()
                    .collect();
                assert_eq!(ker.len() * p as usize, n);
                inter = inter.intersection(&ker).cloned().collect();
            }
            assert_eq!(inter, grp.frattini_subgroup().elements);
        }
    }

    #[test]
    fn dual_pairing_examples() {
        let c3 = g(3, &[1]);
        let triv = DualCharacter::new(&c3, vec![0]);
        assert!(dual_pairing(&triv, &c3, &[2]).unwrap().is_one());
        let l = DualCharacter::new(&c3, vec![1]);
        assert_eq!(dual_pairing(&l, &c3, &[1]).unwrap(), Cyclotomic::root_of_unity(3, 1));
        let c4 = g(2, &[2]);
        let l4 = DualCharacter::new(&c4, vec![2]);
        assert!(dual_pairing(&l4, &c4, &[2]).unwrap().is_one());
        assert!(dual_pairing(&l4, &c3, &[1]).is_err());
    }

    #[test]
    fn homocyclic_examples() {
        assert!(g(2, &[1, 1]).is_homocyclic());
        assert!(!g(2, &[2, 1]).is_homocyclic());
        assert!(g(3, &[2, 2]).is_homocyclic());
    }

    #[test]
    fn pairing_matrix_invertible() {
        // orthogonality: sum_x lambda(x) = |P| if lambda trivial else 0
        for (p, o) in [(3u64, vec![2u32, 1]), (2, vec![2, 2]), (3, vec![1, 1, 1, 1]), (2, vec![3, 1]), (5, vec![1, 1])] {
            let grp = g(p, &o);
            let e = grp.exponent();
            let mut seen = BTreeSet::new();
            for lam in grp.elements() {
                let mut counts = vec![0i64; e as usize];
                for x in grp.elements() {
                    counts[grp.pairing_exponent(&lam, &x) as usize] += 1;
                }
                let s = Cyclotomic::from_counts(e, &counts);
                if grp.is_zero(&lam) {
                    assert_eq!(s.as_int(), Some(grp.order() as i64));
                } else {
                    assert!(s.is_zero());
                }
                // distinct characters give distinct value rows
                let row: Vec<u64> = grp.elements().map(|x| grp.pairing_exponent(&lam, &x)).collect();
                assert!(seen.insert(row));
            }
            assert_eq!(seen.len() as u64, grp.order());
        }
    }

    #[test]
    fn splitting_basis_types() {
        let grp = g(3, &[2, 1]);
        let b = grp.splitting_basis(&grp.whole());
        assert_eq!(b.len(), 2);
        assert_eq!(grp.subgroup_type(&grp.whole()), vec![2, 1]);
        let s = grp.span(&[vec![3, 1]]);
        assert_eq!(grp.subgroup_type(&s), vec![1]);
        let s2 = grp.span(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(grp.subgroup_type(&s2), vec![1, 1]);
        let prod: usize = b.iter().map(|x| grp.element_order(x) as usize).product();
        assert_eq!(prod, 27);
    }
}
