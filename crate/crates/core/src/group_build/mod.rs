//! The groups E (class <= 2 central extension), G = D x| E, and the block spec.

pub mod extension;
pub mod semidirect;
pub mod spec;

pub use extension::{CentralExtensionE, EElem};
pub use semidirect::GroupG;
pub use spec::BlockSpec;

use std::collections::VecDeque;

/// A finite group on element indices 0..order with 0 the identity.
pub trait FinGroup: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;

    fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn conj(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(by, x), self.inv(by))
    }
}

#[derive(Debug, Clone)]
pub struct Classes {
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub inverse_class: Vec<usize>,
    pub rep_orders: Vec<u64>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
    /// Class of the t-th power of the representative of class c.
    pub fn power_class<G: FinGroup + ?Sized>(&self, g: &G, c: usize, t: u64) -> usize {
        self.class_of[g.pow(self.reps[c], t)]
    }
}

/// Conjugacy classes by orbit closure under generator conjugation; classes are
/// ordered by smallest member, so the identity class is 0.
pub fn conjugacy_classes<G: FinGroup + ?Sized>(g: &G) -> Classes {
    let n = g.order();
    let gens = g.generators();
    let gens_inv: Vec<usize> = gens.iter().map(|&s| g.inv(s)).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut cls = vec![start];
        class_of[start] = c;
        let mut q = VecDeque::from([start]);
        while let Some(x) = q.pop_front() {
            for (&s, &si) in gens.iter().zip(&gens_inv) {
                let y = g.mul(g.mul(s, x), si);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    cls.push(y);
                    q.push_back(y);
                }
            }
        }
        cls.sort_unstable();
        members.push(cls);
    }
    let reps: Vec<usize> = members.iter().map(|m| m[0]).collect();
    let sizes = members.iter().map(|m| m.len()).collect();
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    let rep_orders = reps.iter().map(|&r| g.element_order(r)).collect();
    Classes {
        reps,
        class_of,
        sizes,
        members,
        inverse_class,
        rep_orders,
    }
}

/// Exponent of the group (lcm of class representative orders).
pub fn exponent(c: &Classes) -> u64 {
    c.rep_orders.iter().fold(1, |a, &b| crate::arith::lcm(a, b))
}

/// Explicit multiplication table, used for E and its subgroups.
#[derive(Debug, Clone)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
}

impl TableGroup {
    pub fn empty() -> Self {
        TableGroup {
            n: 1,
            table: vec![0],
            inv: vec![0],
            gens: vec![],
        }
    }

    /// From a raw table; None unless 0 is a two-sided identity and every element has an inverse.
    pub fn from_table(n: usize, table: Vec<u32>) -> Option<Self> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return None;
            }
            for b in 0..n {
                if table[a * n + b] == 0 && table[b * n + a] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return None;
            }
        }
        Some(
            TableGroup {
                n,
                table,
                inv,
                gens: (1..n).collect(),
            }
            .with_small_generating_set(),
        )
    }

    /// The subgroup of `g` on the listed elements (must be closed, contain the identity first).
    pub fn from_subset<G: FinGroup + ?Sized>(g: &G, elements: &[usize]) -> Self {
        let n = elements.len();
        let mut pos = std::collections::HashMap::new();
        for (i, &e) in elements.iter().enumerate() {
            pos.insert(e, i);
        }
        assert_eq!(elements[0], 0, "identity must come first");
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = pos[&g.mul(elements[i], elements[j])] as u32;
            }
        }
        let inv = (0..n).map(|i| pos[&g.inv(elements[i])] as u32).collect();
        TableGroup {
            n,
            table,
            inv,
            gens: (1..n).collect(),
        }
        .with_small_generating_set()
    }

    fn with_small_generating_set(mut self) -> Self {
        let mut gens: Vec<usize> = Vec::new();
        let mut have = vec![false; self.n];
        have[0] = true;
        let mut els = vec![0usize];
        for x in 1..self.n {
            if have[x] {
                continue;
            }
            gens.push(x);
            let mut i = 0;
            while i < els.len() {
                for &s in &gens {
                    let y = self.table[els[i] * self.n + s] as usize;
                    if !have[y] {
                        have[y] = true;
                        els.push(y);
                    }
                }
                i += 1;
            }
            if els.len() == self.n {
                break;
            }
        }
        self.gens = gens;
        self
    }
}

impl FinGroup for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}
