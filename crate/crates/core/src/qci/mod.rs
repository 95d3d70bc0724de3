//! The duality L ~ Hom(L, O^x), the q-matrix of a block with one simple
//! module, and the q-commuting model of its basic algebra.

pub mod algebra;
pub mod scan;

pub use algebra::{EndoClass, QCIAlgebra, RelationMode};
pub use scan::{t_invariance_scan, ScanConfig, ScanReport};

use serde::Serialize;

use crate::action::decompose::decompose;
use crate::arith::{lcm, mult_order};
use crate::coeff_ring::linalg::{from_ints, nullspace};
use crate::coeff_ring::{GaloisRing, GrElem};
use crate::error::{WbError, WbResult};
use crate::group_build::{BlockSpec, CentralExtensionE, FinGroup};

/// phi([g~, h~]) for g, h in L, as exponents of zeta_{z_ord}.
#[derive(Debug, Clone, Serialize)]
pub struct DualityTable {
    pub l_order: usize,
    pub z_ord: u64,
    pub table: Vec<Vec<u64>>,
}

impl DualityTable {
    pub fn value(&self, g: usize, h: usize) -> u64 {
        self.table[g][h]
    }
}

/// Evaluates g -> (h -> phi([g~, h~])) on all of L x L and checks that it is an
/// injective homomorphism into the character group.
pub fn duality_iso(e: &CentralExtensionE, phi: u64) -> WbResult<DualityTable> {
    if !e.one_simple_module() {
        return Err(WbError::spec("block has more than one simple module"));
    }
    let nl = e.quotient_order();
    let zo = e.z_ord();
    let mut table = vec![vec![0u64; nl]; nl];
    for (g, row) in table.iter_mut().enumerate() {
        for (h, slot) in row.iter_mut().enumerate() {
            let c = e.mul(e.mul(e.inv(g), e.inv(h)), e.mul(g, h));
            if c % nl != 0 {
                return Err(WbError::verification("duality", format!("[{g},{h}] is not central")));
            }
            *slot = (c / nl) as u64 * phi % zo;
        }
    }
    let lmul = |a: usize, b: usize| e.quotient_index(e.mul(a, b));
    for g in 0..nl {
        for h1 in 0..nl {
            for h2 in 0..nl {
                let h = lmul(h1, h2);
                if table[g][h] != (table[g][h1] + table[g][h2]) % zo {
                    return Err(WbError::verification(
                        "duality",
                        format!("phi_{g} is not a character at ({h1},{h2})"),
                    ));
                }
                if table[h][g] != (table[h1][g] + table[h2][g]) % zo {
                    return Err(WbError::verification(
                        "duality",
                        format!("g -> phi_g is not a homomorphism at ({h1},{h2})"),
                    ));
                }
            }
        }
    }
    for g in 1..nl {
        if table[g].iter().all(|&v| v == 0) {
            return Err(WbError::verification(
                "duality",
                format!("nontrivial element {g} of L lies in the kernel"),
            ));
        }
    }
    Ok(DualityTable { l_order: nl, z_ord: zo, table })
}

/// One indecomposable factor P_i = (C_{p^n})^m of D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QBlock {
    pub n: u32,
    pub m: usize,
    pub acted: bool,
}

/// Entries are exponents of a fixed primitive `modulus`-th root of unity.
/// Generators are listed block by block, acted blocks first.
#[derive(Debug, Clone, Serialize)]
pub struct QMatrix {
    pub p: u64,
    pub blocks: Vec<QBlock>,
    pub t: usize,
    pub modulus: u64,
    pub exps: Vec<Vec<u64>>,
}

impl QMatrix {
    pub fn new(p: u64, blocks: Vec<QBlock>, modulus: u64, exps: Vec<Vec<u64>>) -> WbResult<Self> {
        let t = blocks.iter().take_while(|b| b.acted).count();
        if blocks[t..].iter().any(|b| b.acted) {
            return Err(WbError::spec("acted blocks must come first"));
        }
        let n: usize = blocks.iter().map(|b| b.m).sum();
        if exps.len() != n || exps.iter().any(|r| r.len() != n) {
            return Err(WbError::spec(format!("q-matrix must be {n} x {n}")));
        }
        let exps = exps
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % modulus).collect())
            .collect();
        Ok(QMatrix { p, blocks, t, modulus, exps })
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// (block, j) for each generator, both 0-based.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| (0..b.m).map(move |j| (i, j)))
            .collect()
    }

    pub fn position(&self, i: usize, j: usize) -> usize {
        self.blocks[..i].iter().map(|b| b.m).sum::<usize>() + j % self.blocks[i].m
    }

    /// Entry as a display string: 1, -1 or z_R^k.
    pub fn display(&self, a: usize, b: usize) -> String {
        let k = self.exps[a][b];
        if k == 0 {
            "1".into()
        } else if 2 * k == self.modulus {
            "-1".into()
        } else {
            format!("z{}^{}", self.modulus, k)
        }
    }

    /// Entries as +-1 where possible (used for the order-2 examples).
    pub fn signs(&self) -> Option<Vec<Vec<i64>>> {
        self.exps
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&k| match k {
                        0 => Some(1),
                        k if 2 * k == self.modulus => Some(-1),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QReport {
    pub checks: Vec<PropertyCheck>,
}

impl QReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn label(q: &QMatrix, a: usize) -> String {
    let (i, j) = q.labels()[a];
    format!("({},{})", i + 1, j + 1)
}

pub fn verify_q_properties(q: &QMatrix) -> QReport {
    let labels = q.labels();
    let n = q.len();
    let r = q.modulus;
    let p = q.p;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut d = Vec::new();
    let mut e = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if labels[x].0 == labels[y].0 && q.exps[x][y] != 0 {
                a.push(format!("q{}{} != 1", label(q, x), label(q, y)));
            }
            if (q.exps[x][y] + q.exps[y][x]) % r != 0 {
                b.push(format!("q{}{} q{}{} != 1", label(q, x), label(q, y), label(q, y), label(q, x)));
            }
            let (i2, j2) = labels[y];
            let next = q.position(i2, j2 + 1);
            if q.exps[x][next] != q.exps[x][y] * p % r {
                c.push(format!("q{}{} != q{}{}^p", label(q, x), label(q, next), label(q, x), label(q, y)));
            }
        }
        let trivial_row = q.exps[x].iter().all(|&v| v == 0);
        let outside = labels[x].0 >= q.t;
        if trivial_row != outside {
            d.push(format!(
                "row {} is {}trivial but the block is {}",
                label(q, x),
                if trivial_row { "" } else { "non" },
                if outside { "not acted on" } else { "acted on" }
            ));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y || labels[x].0 != labels[y].0 || labels[x].0 >= q.t {
                continue;
            }
            let separated = (0..n).any(|col| labels[col].0 < q.t && q.exps[x][col] != q.exps[y][col]);
            if !separated {
                e.push(format!("no acted column separates {} and {}", label(q, x), label(q, y)));
            }
        }
    }
    let mk = |name: &str, f: Vec<String>| PropertyCheck {
        name: name.into(),
        pass: f.is_empty(),
        failures: f,
    };
    QReport {
        checks: vec![mk("3a", a), mk("3b", b), mk("3c", c), mk("3d", d), mk("3e", e)],
    }
}

/// The q-matrix together with the data used to build it.
#[derive(Debug, Clone, Serialize)]
pub struct QComputation {
    pub q: QMatrix,
    /// rho_i as exponents (mod modulus) on the E-generators, one per block.
    pub rho: Vec<Vec<u64>>,
    /// h_{ij} as indices of E, one per generator X_{ij}.
    pub h: Vec<usize>,
    pub duality: DualityTable,
    /// Entries compared between the commutator and eigencharacter formulas.
    pub cross_checked: usize,
}

/// Joint eigencharacters of the E-generators on the Frattini quotient of one factor,
/// as exponent vectors of eta (a primitive r-th root of unity in F_{p^deg}).
fn joint_eigencharacters(f: &GaloisRing, r: u64, mats: &[Vec<Vec<i64>>]) -> WbResult<Vec<Vec<u64>>> {
    let eta = f.root_of_unity(r, 1)?;
    let powers: Vec<GrElem> = (0..r).map(|k| f.pow(&eta, k)).collect();
    let fm: Vec<_> = mats.iter().map(|m| from_ints(f, m)).collect();
    let dim = mats.first().map_or(0, |m| m.len());
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<u64>, Vec<Vec<GrElem>>)> = vec![(Vec::new(), Vec::new())];
    while let Some((chosen, rows)) = stack.pop() {
        let k = chosen.len();
        if k == mats.len() {
            out.push(chosen);
            continue;
        }
        for (e, mu) in powers.iter().enumerate() {
            let mut rr = rows.clone();
            for (ri, row) in fm[k].iter().enumerate() {
                let mut row = row.clone();
                row[ri] = f.sub(&row[ri], mu);
                rr.push(row);
            }
            if !nullspace(f, &rr).is_empty() {
                let mut c = chosen.clone();
                c.push(e as u64);
                stack.push((c, rr));
            }
        }
    }
    for c in &out {
        let mut rr = Vec::new();
        for (k, m) in fm.iter().enumerate() {
            for (ri, row) in m.iter().enumerate() {
                let mut row = row.clone();
                row[ri] = f.sub(&row[ri], &powers[c[k] as usize]);
                rr.push(row);
            }
        }
        if nullspace(f, &rr).len() != 1 {
            return Err(WbError::verification("jacobi", "joint eigenspace is not a line"));
        }
    }
    if out.len() != dim {
        return Err(WbError::verification(
            "jacobi",
            format!("{} joint eigencharacters on a Frattini quotient of rank {dim}", out.len()),
        ));
    }
    out.sort();
    Ok(out)
}

/// Root-of-unity modulus and the field degree holding it.
fn modulus_for(spec: &BlockSpec) -> (u64, usize) {
    let nl = spec.e.quotient_order() as u64;
    let exp_l = (1..=nl)
        .filter(|k| nl % k == 0)
        .find(|&k| {
            (0..spec.e.quotient_order()).all(|l| {
                let x = spec.e.pow(l, k);
                spec.e.quotient_index(x) == 0
            })
        })
        .unwrap_or(1);
    let r = lcm(exp_l, spec.e.z_ord()).max(1);
    let deg = if r <= 2 { 1 } else { mult_order(spec.p % r, r) as usize };
    (r, deg)
}

pub fn compute_q_matrix(spec: &BlockSpec) -> WbResult<QComputation> {
    if !spec.one_simple_module() {
        return Err(WbError::spec("block has more than one simple module"));
    }
    let e = &spec.e;
    let duality = duality_iso(e, spec.phi)?;
    let act = spec.l_action()?;
    let dec = decompose(&act)?;
    let (r, deg) = modulus_for(spec);
    let field = GaloisRing::new(spec.p, 1, deg);
    let zscale = r / e.z_ord();
    let nl = e.quotient_order();
    let l_exps: Vec<Vec<u64>> = (0..nl).map(|l| e.element(l).a).collect();
    let rho_at = |rho: &[u64], l: usize| -> u64 {
        l_exps[l].iter().zip(rho).map(|(&a, &c)| a * c).sum::<u64>() % r
    };
    let p = spec.p;
    let mut blocks = Vec::new();
    let mut rho = Vec::new();
    let mut h = Vec::new();
    for (i, factor) in dec.factors.iter().enumerate() {
        let n = factor.group.orders[0];
        let m = factor.group.rank();
        blocks.push(QBlock { n, m, acted: i < dec.t });
        if i >= dec.t {
            rho.push(vec![0; e.rank()]);
            h.push(0);
            continue;
        }
        let fa = factor.action();
        let fmats: Vec<Vec<Vec<i64>>> = fa.gens.iter().map(|g| fa.frattini_matrix(g)).collect();
        let chars = joint_eigencharacters(&field, r, &fmats)?;
        let c0 = chars[0].clone();
        let orbit: Vec<Vec<u64>> = (0..m as u32)
            .map(|j| c0.iter().map(|&c| c * p.pow(j) % r).collect())
            .collect();
        let mut sorted = orbit.clone();
        sorted.sort();
        if sorted != chars {
            return Err(WbError::verification(
                "jacobi",
                format!("eigencharacters of factor {} are not one Frobenius orbit", i + 1),
            ));
        }
        let witnesses: Vec<usize> = (0..nl)
            .filter(|&g| (0..nl).all(|l| duality.value(g, l) * zscale % r == rho_at(&c0, l)))
            .collect();
        if witnesses.len() != 1 {
            return Err(WbError::verification(
                "duality",
                format!("{} elements of L realise rho_{}", witnesses.len(), i + 1),
            ));
        }
        let h1 = witnesses[0];
        for j in 0..m as u32 {
            h.push(e.pow(h1, p.pow(j)));
        }
        rho.push(c0);
    }
    let qm = QMatrix::new(
        p,
        blocks,
        r,
        {
            let n = h.len();
            let mut ex = vec![vec![0u64; n]; n];
            for (a, row) in ex.iter_mut().enumerate() {
                for (b, slot) in row.iter_mut().enumerate() {
                    let hb = e.quotient_index(h[b]);
                    let ha = e.quotient_index(h[a]);
                    *slot = duality.value(hb, ha) * zscale % r;
                }
            }
            ex
        },
    )?;
    let labels = qm.labels();
    let mut cross_checked = 0;
    for a in 0..qm.len() {
        for b in 0..qm.len() {
            let (i2, j2) = labels[b];
            let rho_pow: Vec<u64> = rho[i2].iter().map(|&c| c * p.pow(j2 as u32) % r).collect();
            let second = rho_at(&rho_pow, e.quotient_index(h[a]));
            if second != qm.exps[a][b] {
                return Err(WbError::verification(
                    "basic",
                    format!(
                        "q{}{}: commutator gives exponent {}, eigencharacter gives {}",
                        label(&qm, a),
                        label(&qm, b),
                        qm.exps[a][b],
                        second
                    ),
                ));
            }
            cross_checked += 1;
        }
    }
    Ok(QComputation {
        q: qm,
        rho,
        h,
        duality,
        cross_checked,
    })
}

#[cfg(test)]
pub(crate) mod tests_support {
    pub(crate) const Q8_SPEC: &str = r#"{"name":"q8","p":3,"defect":[3,3],
        "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
        "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":1}"#;
}

#[cfg(test)]
mod tests {
    use super::tests_support::Q8_SPEC;
    use super::*;
    use crate::group_build::extension::Presentation;

    fn q8_mixed() -> BlockSpec {
        BlockSpec::from_json(
            r#"{"p":3,"defect":[3,3,3],
            "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
            "action":[[[-1,0,0],[0,1,0],[0,0,1]],[[1,0,0],[0,-1,0],[0,0,1]]],"phi":1}"#,
        )
        .unwrap()
    }

    fn heis_on_c2_4() -> BlockSpec {
        // 3^{1+2} acting on C_2^4 through L = C_3 x C_3, each C_3 on its own C_2^2
        BlockSpec::from_json(
            r#"{"p":2,"defect":[2,2,2,2],
            "inertial":{"orders":[3,3],"power_z":[0,0],"comm":[[0,1],[-1,0]],"z_ord":3},
            "action":[[[0,1,0,0],[1,1,0,0],[0,0,1,0],[0,0,0,1]],
                      [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,1]]],"phi":1}"#,
        )
        .unwrap()
    }

    #[test]
    fn duality_q8_matches_cayley_table() {
        let e = CentralExtensionE::q8();
        let t = duality_iso(&e, 1).unwrap();
        let nl = 4;
        for g in 0..nl {
            for h in 0..nl {
                let c = e.mul(e.mul(e.inv(g), e.inv(h)), e.mul(g, h));
                let expect = if c == 0 { 0 } else { 1 };
                assert_eq!(t.value(g, h), expect);
            }
        }
        assert_eq!(t.value(1, 2), 1);
        assert_eq!(t.value(1, 1), 0);
    }

    #[test]
    fn duality_trivial_and_order_27() {
        let e = CentralExtensionE::abelian(vec![], 1).unwrap();
        let t = duality_iso(&e, 0).unwrap();
        assert_eq!(t.table, vec![vec![0]]);
        let pres = Presentation {
            orders: vec![3, 3],
            power_z: vec![0, 0],
            comm: vec![vec![0, 1], vec![-1, 0]],
            z_ord: 3,
        };
        let e = CentralExtensionE::new(pres).unwrap();
        for phi in [1, 2] {
            let t = duality_iso(&e, phi).unwrap();
            let mut rows: Vec<_> = t.table.clone();
            rows.sort();
            rows.dedup();
            assert_eq!(rows.len(), 9);
        }
    }

    #[test]
    fn duality_rejects_non_one_simple() {
        let e = CentralExtensionE::abelian(vec![2], 2).unwrap();
        assert!(duality_iso(&e, 1).is_err());
    }

    #[test]
    fn q8_q_matrix() {
        let spec = BlockSpec::from_json(Q8_SPEC).unwrap();
        let c = compute_q_matrix(&spec).unwrap();
        assert_eq!(c.q.signs().unwrap(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(c.q.t, 2);
        assert_eq!(c.cross_checked, 4);
        assert!(verify_q_properties(&c.q).all_pass());
    }

    #[test]
    fn mixed_q_matrix_has_trivial_d2_row() {
        let c = compute_q_matrix(&q8_mixed()).unwrap();
        assert_eq!(c.q.t, 2);
        assert_eq!(c.q.signs().unwrap(), vec![vec![1, -1, 1], vec![-1, 1, 1], vec![1, 1, 1]]);
        assert!(verify_q_properties(&c.q).all_pass());
    }

    #[test]
    fn heisenberg_on_c2_4() {
        let c = compute_q_matrix(&heis_on_c2_4()).unwrap();
        assert_eq!(c.q.blocks.len(), 2);
        assert!(c.q.blocks.iter().all(|b| b.m == 2 && b.n == 1));
        let rep = verify_q_properties(&c.q);
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(c.cross_checked, 16);
    }

    #[test]
    fn report_failures() {
        let blocks = vec![QBlock { n: 1, m: 1, acted: true }, QBlock { n: 1, m: 1, acted: true }];
        let ones = QMatrix::new(3, blocks.clone(), 2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let rep = verify_q_properties(&ones);
        assert!(!rep.get("3d").unwrap().pass);
        assert!(rep.get("3a").unwrap().pass);
        let bad = QMatrix::new(7, blocks, 3, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let rep = verify_q_properties(&bad);
        assert!(!rep.get("3b").unwrap().pass);
        let one_block = QMatrix::new(2, vec![QBlock { n: 1, m: 2, acted: false }], 3, vec![vec![0, 0], vec![0, 0]]);
        assert!(one_block.is_ok());
    }
}
