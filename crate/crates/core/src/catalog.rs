//! Built-in actions and block specs used by the verification suite.

use crate::abelian::AbelianPGroup;
use crate::action::{Mat, PAction};
use crate::error::WbResult;
use crate::group_build::spec::SpecFile;
use crate::group_build::BlockSpec;

#[derive(Debug, Clone)]
pub struct CatalogAction {
    pub name: &'static str,
    pub p: u64,
    /// exponents e_i of P = prod C_{p^{e_i}}
    pub orders: Vec<u32>,
    pub gens: Vec<Mat>,
}

impl CatalogAction {
    pub fn build(&self) -> WbResult<PAction> {
        PAction::new(AbelianPGroup::new(self.p, self.orders.clone()), self.gens.clone())
    }
}

fn ca(name: &'static str, p: u64, orders: &[u32], gens: &[&[&[i64]]]) -> CatalogAction {
    CatalogAction {
        name,
        p,
        orders: orders.to_vec(),
        gens: gens.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect(),
    }
}

pub fn action_catalog() -> Vec<CatalogAction> {
    vec![
        ca("C2 on C3", 3, &[1], &[&[&[-1]]]),
        ca("trivial on C3", 3, &[1], &[]),
        ca("C2 on C3^2 scalar", 3, &[1, 1], &[&[&[-1, 0], &[0, -1]]]),
        ca("C2 on C3 x C3 with fixed factor", 3, &[1, 1], &[&[&[-1, 0], &[0, 1]]]),
        ca("C2^2 on C3^2", 3, &[1, 1], &[&[&[-1, 0], &[0, 1]], &[&[1, 0], &[0, -1]]]),
        ca("C4 on C3^2", 3, &[1, 1], &[&[&[0, -1], &[1, 0]]]),
        ca("C8 on C3^2", 3, &[1, 1], &[&[&[0, 1], &[1, 1]]]),
        ca("C2 on C9", 3, &[2], &[&[&[-1]]]),
        ca("C2 on C27", 3, &[3], &[&[&[-1]]]),
        ca("C2 on C9 x C3", 3, &[2, 1], &[&[&[-1, 0], &[0, -1]]]),
        ca("C2 on C9^2", 3, &[2, 2], &[&[&[-1, 0], &[0, -1]]]),
        ca("C4 on C9^2", 3, &[2, 2], &[&[&[0, -1], &[1, 0]]]),
        ca("C2 on C3^4", 3, &[1, 1, 1, 1], &[&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]]),
        ca("C3 on C2^2", 2, &[1, 1], &[&[&[0, 1], &[1, 1]]]),
        ca("C3 on C4^2", 2, &[2, 2], &[&[&[0, -1], &[1, -1]]]),
        ca("C3 on C2^2 x C2", 2, &[1, 1, 1], &[&[&[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]]),
        ca("C3 diagonal on C2^4", 2, &[1, 1, 1, 1], &[&[&[0, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]]]),
        ca(
            "C3^2 on C2^4",
            2,
            &[1, 1, 1, 1],
            &[
                &[&[0, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]],
            ],
        ),
        ca("C7 on C2^3", 2, &[1, 1, 1], &[&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]]]),
        ca("C5 on C2^4", 2, &[1, 1, 1, 1], &[&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]]),
        ca("C15 on C2^4", 2, &[1, 1, 1, 1], &[&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]]),
        ca("C2 on C5", 5, &[1], &[&[&[-1]]]),
        ca("C4 on C5", 5, &[1], &[&[&[2]]]),
        ca("C4 x C2 on C5^2", 5, &[1, 1], &[&[&[2, 0], &[0, 1]], &[&[1, 0], &[0, -1]]]),
        ca("C24 on C5^2", 5, &[1, 1], &[&[&[0, 3], &[1, 4]]]),
        ca("C2 on C25", 5, &[2], &[&[&[-1]]]),
        ca("C3 on C7", 7, &[1], &[&[&[2]]]),
        ca("C6 on C7", 7, &[1], &[&[&[3]]]),
    ]
}

pub const Q8_C3SQ: &str = r#"{"name":"q8_c3sq","p":3,"defect":[3,3],
    "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
    "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":1}"#;

const BLOCKS: &[&str] = &[
    Q8_C3SQ,
    r#"{"name":"q8_c3cube_mixed","p":3,"defect":[3,3,3],
    "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
    "action":[[[-1,0,0],[0,1,0],[0,0,1]],[[1,0,0],[0,-1,0],[0,0,1]]],"phi":1}"#,
    r#"{"name":"q8_c5sq","p":5,"defect":[5,5],
    "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
    "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":1}"#,
    r#"{"name":"heis27_c2_4","p":2,"defect":[2,2,2,2],
    "inertial":{"orders":[3,3],"power_z":[0,0],"comm":[[0,1],[-1,0]],"z_ord":3},
    "action":[[[0,1,0,0],[1,1,0,0],[0,0,1,0],[0,0,0,1]],
              [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,1]]],"phi":1}"#,
    r#"{"name":"trivial_e_c9","p":3,"defect":[9],
    "inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":1},"action":[],"phi":0}"#,
    r#"{"name":"trivial_e_c2","p":2,"defect":[2],
    "inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":1},"action":[],"phi":0}"#,
    r#"{"name":"e_eq_z_c4","p":2,"defect":[4],
    "inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":3},"action":[],"phi":1}"#,
    r#"{"name":"c2_c3sq_d2","p":3,"defect":[3,3],
    "inertial":{"orders":[2],"power_z":[0],"comm":[[0]],"z_ord":1},
    "action":[[[-1,0],[0,1]]],"phi":0}"#,
    r#"{"name":"c2xc2_c3sq","p":3,"defect":[3,3],
    "inertial":{"orders":[2,2],"power_z":[0,0],"comm":[[0,0],[0,0]],"z_ord":1},
    "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":0}"#,
    r#"{"name":"c2_c9xc3","p":3,"defect":[9,3],
    "inertial":{"orders":[2],"power_z":[0],"comm":[[0]],"z_ord":1},
    "action":[[[-1,0],[0,-1]]],"phi":0}"#,
    r#"{"name":"c3_c4sq","p":2,"defect":[4,4],
    "inertial":{"orders":[3],"power_z":[0],"comm":[[0]],"z_ord":1},
    "action":[[[0,-1],[1,-1]]],"phi":0}"#,
    r#"{"name":"c3_c2sq","p":2,"defect":[2,2],
    "inertial":{"orders":[3],"power_z":[0],"comm":[[0]],"z_ord":1},
    "action":[[[0,1],[1,1]]],"phi":0}"#,
    r#"{"name":"c4_c5","p":5,"defect":[5],
    "inertial":{"orders":[4],"power_z":[0],"comm":[[0]],"z_ord":1},
    "action":[[[2]]],"phi":0}"#,
];

pub fn block_catalog() -> Vec<SpecFile> {
    BLOCKS
        .iter()
        .map(|s| serde_json::from_str(s).expect("catalog spec parses"))
        .collect()
}

pub fn catalog_block(name: &str) -> Option<SpecFile> {
    block_catalog().into_iter().find(|s| s.name == name)
}

pub fn build_blocks() -> WbResult<Vec<BlockSpec>> {
    block_catalog().into_iter().map(BlockSpec::from_file).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::decompose::decompose;
    use crate::action::eigen::eigen_orbit;
    use crate::action::fixed_and_commutator;
    use crate::arith::gcd;

    #[test]
    fn actions_are_valid() {
        let cat = action_catalog();
        assert!(cat.len() >= 20);
        for a in &cat {
            let act = a.build().unwrap_or_else(|e| panic!("{}: {e}", a.name));
            assert!(act.group.order() <= 81, "{}", a.name);
            assert_eq!(gcd(act.order() as u64, a.p), 1, "{}", a.name);
            fixed_and_commutator(&act).unwrap();
            let dec = decompose(&act).unwrap();
            for f in dec.factors.iter().filter(|f| f.nontrivial) {
                eigen_orbit(&f.action()).unwrap_or_else(|e| panic!("{}: {e}", a.name));
            }
        }
        let names: Vec<&str> = cat.iter().map(|a| a.name).collect();
        let find = |n: &str| cat.iter().find(|a| a.name == n).unwrap().build().unwrap();
        assert!(names.len() == names.iter().collect::<std::collections::BTreeSet<_>>().len());
        assert_eq!(find("C8 on C3^2").order(), 8);
        assert_eq!(find("C24 on C5^2").order(), 24);
        assert_eq!(find("C15 on C2^4").order(), 15);
        assert_eq!(find("C5 on C2^4").order(), 5);
        assert_eq!(find("C7 on C2^3").order(), 7);
    }

    #[test]
    fn blocks_are_valid() {
        let blocks = build_blocks().unwrap();
        assert!(blocks.len() >= 10);
        let ps: std::collections::BTreeSet<u64> = blocks.iter().map(|b| b.p).collect();
        assert!([2, 3, 5].iter().all(|p| ps.contains(p)));
        assert!(blocks.iter().filter(|b| b.one_simple_module()).count() >= 4);
        for b in &blocks {
            b.build_g().unwrap();
        }
        assert!(catalog_block("q8_c3sq").is_some());
    }
}
