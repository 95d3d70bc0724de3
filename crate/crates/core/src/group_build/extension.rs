//! Class <= 2 central extensions E of an abelian group L by a cyclic Z = <z>.

use serde::{Deserialize, Serialize};

use super::{FinGroup, TableGroup};
use crate::error::{WbError, WbResult};

/// Full Cayley consistency check up to this order; above it the presentation is trusted.
pub const CAYLEY_CHECK_LIMIT: usize = 512;
/// Largest E we build a multiplication table for.
pub const TABLE_LIMIT: usize = 4096;

/// Normal form e_1^{a_1} ... e_r^{a_r} z^s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EElem {
    pub a: Vec<u64>,
    pub s: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Presentation {
    /// o_i
    pub orders: Vec<u64>,
    /// d_i with e_i^{o_i} = z^{d_i}
    pub power_z: Vec<u64>,
    /// c_{ij} with [e_i, e_j] = z^{c_{ij}}; full antisymmetric matrix
    pub comm: Vec<Vec<i64>>,
    pub z_ord: u64,
}

#[derive(Debug, Clone)]
pub struct CentralExtensionE {
    pub pres: Presentation,
    /// c_{ij} reduced mod z_ord
    comm: Vec<Vec<u64>>,
    n: usize,
    table: TableGroup,
    /// true when the Cayley consistency check ran
    pub cayley_checked: bool,
}

impl CentralExtensionE {
    pub fn new(pres: Presentation) -> WbResult<Self> {
        let r = pres.orders.len();
        if pres.z_ord == 0 || pres.orders.iter().any(|&o| o == 0) {
            return Err(WbError::spec("generator orders must be positive"));
        }
        if pres.power_z.len() != r {
            return Err(WbError::spec("power-to-z exponents: one per generator required"));
        }
        if pres.comm.len() != r || pres.comm.iter().any(|row| row.len() != r) {
            return Err(WbError::spec("commutator exponents must form an r x r matrix"));
        }
        let zo = pres.z_ord as i64;
        for i in 0..r {
            if pres.comm[i][i].rem_euclid(zo) != 0 {
                return Err(WbError::spec("commutator exponents: c_ii must be 0"));
            }
            for j in 0..r {
                if (pres.comm[i][j] + pres.comm[j][i]).rem_euclid(zo) != 0 {
                    return Err(WbError::spec("commutator exponents: c_ij must equal -c_ji"));
                }
                // [e_i^{o_i}, e_j] = 1 since e_i^{o_i} lies in Z
                if (pres.orders[i] as i64 * pres.comm[i][j]).rem_euclid(zo) != 0 {
                    return Err(WbError::spec(format!(
                        "inconsistent presentation: o_{i} * c_{i}{j} is not divisible by the order of z"
                    )));
                }
            }
        }
        let n = pres.orders.iter().product::<u64>() * pres.z_ord;
        if n as usize > TABLE_LIMIT {
            return Err(WbError::BoundExceeded {
                count: format!("|E| = {n}"),
                bound: TABLE_LIMIT.to_string(),
            });
        }
        let comm = pres
            .comm
            .iter()
            .map(|row| row.iter().map(|&c| c.rem_euclid(zo) as u64).collect())
            .collect();
        let mut e = CentralExtensionE {
            pres,
            comm,
            n: n as usize,
            table: TableGroup::empty(),
            cayley_checked: false,
        };
        let n = e.n;
        let mut table = vec![0u32; n * n];
        let els: Vec<EElem> = (0..n).map(|i| e.element(i)).collect();
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = e.index(&e.collect(&els[i], &els[j])) as u32;
            }
        }
        e.table = TableGroup::from_table(n, table)
            .ok_or_else(|| WbError::spec("inconsistent presentation: collection does not give a group"))?;
        if n <= CAYLEY_CHECK_LIMIT {
            e.check_consistency()?;
            e.cayley_checked = true;
        }
        Ok(e)
    }

    /// Abelian E = C_{o_1} x ... x C_{o_r} x <z> with all c, d zero.
    pub fn abelian(orders: Vec<u64>, z_ord: u64) -> WbResult<Self> {
        let r = orders.len();
        Self::new(Presentation {
            power_z: vec![0; r],
            comm: vec![vec![0; r]; r],
            orders,
            z_ord,
        })
    }

    /// Q_8: e_1^2 = e_2^2 = z, [e_1, e_2] = z, |z| = 2.
    pub fn q8() -> Self {
        Self::new(Presentation {
            orders: vec![2, 2],
            power_z: vec![1, 1],
            comm: vec![vec![0, 1], vec![-1, 0]],
            z_ord: 2,
        })
        .expect("Q8 presentation")
    }

    pub fn rank(&self) -> usize {
        self.pres.orders.len()
    }

    pub fn z_ord(&self) -> u64 {
        self.pres.z_ord
    }

    /// |L| = |E/Z|
    pub fn quotient_order(&self) -> usize {
        self.n / self.pres.z_ord as usize
    }

    pub fn identity_elem(&self) -> EElem {
        EElem {
            a: vec![0; self.rank()],
            s: 0,
        }
    }

    pub fn generator_elem(&self, i: usize) -> EElem {
        let mut x = self.identity_elem();
        x.a[i] = 1 % self.pres.orders[i];
        x
    }

    /// Index of z^k.
    pub fn z_power(&self, k: u64) -> usize {
        self.index(&EElem {
            a: vec![0; self.rank()],
            s: k % self.pres.z_ord,
        })
    }

    /// Mixed radix with e_1 least significant and the z-exponent most significant.
    pub fn index(&self, x: &EElem) -> usize {
        let mut low = 0usize;
        let mut mul = 1usize;
        for (&a, &o) in x.a.iter().zip(&self.pres.orders) {
            low += a as usize * mul;
            mul *= o as usize;
        }
        low + mul * x.s as usize
    }

    pub fn element(&self, mut idx: usize) -> EElem {
        let mut a = Vec::with_capacity(self.rank());
        for &o in &self.pres.orders {
            a.push((idx % o as usize) as u64);
            idx /= o as usize;
        }
        EElem { a, s: idx as u64 }
    }

    /// Index of the image in L = E/Z (the exponent vector part).
    pub fn quotient_index(&self, idx: usize) -> usize {
        idx % self.quotient_order()
    }

    /// Collection: move e^b past e^a using e_j^x e_i^y = e_i^y e_j^x z^{xy c_ji}.
    fn collect(&self, x: &EElem, y: &EElem) -> EElem {
        let zo = self.pres.z_ord;
        let r = self.rank();
        let mut s = (x.s + y.s) % zo;
        for i in 0..r {
            for j in i + 1..r {
                s = (s + (x.a[j] * y.a[i]) % zo * self.comm[j][i]) % zo;
            }
        }
        let mut a = vec![0; r];
        for i in 0..r {
            let mut t = x.a[i] + y.a[i];
            if t >= self.pres.orders[i] {
                t -= self.pres.orders[i];
                s = (s + self.pres.power_z[i]) % zo;
            }
            a[i] = t;
        }
        EElem { a, s }
    }

    /// Normal form of a word; letters are (generator index or r for z, exponent).
    pub fn normal_form(&self, word: &[(usize, i64)]) -> WbResult<EElem> {
        let r = self.rank();
        let mut acc = 0usize;
        for &(g, k) in word {
            let gi = if g == r {
                self.z_power(1)
            } else if g < r {
                self.index(&self.generator_elem(g))
            } else {
                return Err(WbError::spec(format!("no generator {g}")));
            };
            let base = if k < 0 { self.table.inv(gi) } else { gi };
            for _ in 0..k.unsigned_abs() {
                acc = self.table.mul(acc, base);
            }
        }
        Ok(self.element(acc))
    }

    /// Associativity on (x, y, generator) triples, existence of inverses, and
    /// closure of the generators giving all z_ord * prod o_i elements.
    fn check_consistency(&self) -> WbResult<()> {
        let n = self.n;
        let mut gens: Vec<usize> = (0..self.rank()).map(|i| self.index(&self.generator_elem(i))).collect();
        gens.push(self.z_power(1));
        for x in 0..n {
            for y in 0..n {
                let xy = self.table.mul(x, y);
                for &g in &gens {
                    if self.table.mul(xy, g) != self.table.mul(x, self.table.mul(y, g)) {
                        return Err(WbError::spec(format!(
                            "inconsistent presentation: collection is not associative ({:?}, {:?})",
                            self.element(x),
                            self.element(y)
                        )));
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.table.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != n {
            return Err(WbError::spec(format!(
                "inconsistent presentation: Cayley closure has {count} elements, normal forms {n}"
            )));
        }
        Ok(())
    }

    /// Z(E) as sorted element indices.
    pub fn center(&self) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.rank()).map(|i| self.index(&self.generator_elem(i))).collect();
        (0..self.n)
            .filter(|&g| gens.iter().all(|&e| self.table.mul(g, e) == self.table.mul(e, g)))
            .collect()
    }

    /// Z(E) = <z>, i.e. the twisted group algebra has one simple module.
    pub fn one_simple_module(&self) -> bool {
        self.center().len() as u64 == self.pres.z_ord
    }

    pub fn table(&self) -> &TableGroup {
        &self.table
    }
}

impl FinGroup for CentralExtensionE {
    fn order(&self) -> usize {
        self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.table.inv(a)
    }
    fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = (0..self.rank()).map(|i| self.index(&self.generator_elem(i))).collect();
        g.push(self.z_power(1));
        g.retain(|&x| x != 0);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_build::conjugacy_classes;

    /// Q_8 as unit quaternions, i.e. (sign, basis) with basis in {1, i, j, k}.
    fn quat_mul(x: (i8, u8), y: (i8, u8)) -> (i8, u8) {
        // table[a][b] = (sign, index) for basis products
        const T: [[(i8, u8); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let (s, b) = T[x.1 as usize][y.1 as usize];
        (x.0 * y.0 * s, b)
    }

    fn to_quat(e: &EElem) -> (i8, u8) {
        let mut q = (1i8, 0u8);
        if e.a[0] == 1 {
            q = quat_mul(q, (1, 1));
        }
        if e.a[1] == 1 {
            q = quat_mul(q, (1, 2));
        }
        if e.s == 1 {
            q = quat_mul(q, (-1, 0));
        }
        q
    }

    #[test]
    fn empty_word_is_identity() {
        let e = CentralExtensionE::q8();
        assert_eq!(e.normal_form(&[]).unwrap(), e.identity_elem());
    }

    #[test]
    fn q8_collection_matches_quaternions() {
        let e = CentralExtensionE::q8();
        assert_eq!(e.order(), 8);
        let nf = e.normal_form(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(nf, EElem { a: vec![1, 1], s: 1 });
        for x in 0..8 {
            for y in 0..8 {
                let xy = e.mul(x, y);
                assert_eq!(
                    to_quat(&e.element(xy)),
                    quat_mul(to_quat(&e.element(x)), to_quat(&e.element(y)))
                );
            }
        }
        assert!(e.cayley_checked);
    }

    #[test]
    fn commuting_presentation_sorts_exponents() {
        let e = CentralExtensionE::abelian(vec![3, 4], 2).unwrap();
        let nf = e.normal_form(&[(1, 3), (2, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(nf, EElem { a: vec![2, 1], s: 1 });
        assert_eq!(e.center().len(), e.order());
    }

    #[test]
    fn q8_center_and_simple_module() {
        let e = CentralExtensionE::q8();
        assert_eq!(e.center(), vec![0, e.z_power(1)]);
        assert!(e.one_simple_module());
        assert_eq!(conjugacy_classes(&e).len(), 5);
    }

    #[test]
    fn q8_times_c3_has_bigger_center() {
        let e = CentralExtensionE::new(Presentation {
            orders: vec![2, 2, 3],
            power_z: vec![1, 1, 0],
            comm: vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]],
            z_ord: 2,
        })
        .unwrap();
        assert_eq!(e.order(), 24);
        assert_eq!(e.center().len(), 6);
        assert!(!e.one_simple_module());
    }

    #[test]
    fn rejects_bad_commutators() {
        let bad = Presentation {
            orders: vec![3, 3],
            power_z: vec![0, 0],
            comm: vec![vec![0, 1], vec![-1, 0]],
            z_ord: 2,
        };
        assert!(CentralExtensionE::new(bad).is_err());
        let asym = Presentation {
            orders: vec![2, 2],
            power_z: vec![0, 0],
            comm: vec![vec![0, 1], vec![0, 0]],
            z_ord: 2,
        };
        assert!(CentralExtensionE::new(asym).is_err());
    }

    #[test]
    fn extraspecial_27() {
        let e = CentralExtensionE::new(Presentation {
            orders: vec![3, 3],
            power_z: vec![0, 0],
            comm: vec![vec![0, 1], vec![-1, 0]],
            z_ord: 3,
        })
        .unwrap();
        assert_eq!(e.order(), 27);
        assert!(e.one_simple_module());
        assert_eq!(conjugacy_classes(&e).len(), 11);
    }
}
