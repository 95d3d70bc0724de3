//! Block specifications: p, D, E, the action of L on D and the central character phi.

use serde::{Deserialize, Serialize};

use super::extension::Presentation;
use super::{CentralExtensionE, FinGroup, GroupG};
use crate::abelian::AbelianPGroup;
use crate::action::{Mat, PAction};
use crate::arith::{gcd, is_prime};
use crate::error::{WbError, WbResult};

/// On-disk form of a block spec.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecFile {
    #[serde(default)]
    pub name: String,
    pub p: u64,
    /// cyclic orders of D, e.g. [9, 3]
    pub defect: Vec<u64>,
    pub inertial: Presentation,
    /// one matrix per E-generator
    pub action: Vec<Mat>,
    pub phi: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<Limits>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Limits {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_irr: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct BlockSpec {
    pub name: String,
    pub p: u64,
    pub d: AbelianPGroup,
    pub e: CentralExtensionE,
    pub mats: Vec<Mat>,
    /// phi(z) = zeta_{z_ord}^phi
    pub phi: u64,
    pub file: SpecFile,
}

impl BlockSpec {
    pub fn from_file(f: SpecFile) -> WbResult<Self> {
        if !is_prime(f.p) {
            return Err(WbError::spec(format!("p = {} is not prime", f.p)));
        }
        let d = AbelianPGroup::from_cyclic_orders(f.p, &f.defect)?;
        let e = CentralExtensionE::new(f.inertial.clone())?;
        let ne = e.order() as u64;
        if gcd(ne, f.p) != 1 {
            return Err(WbError::spec(format!("|E| = {ne} is divisible by p = {}", f.p)));
        }
        if gcd(f.phi, e.z_ord()) != 1 {
            return Err(WbError::spec(format!(
                "phi not faithful: gcd({}, {}) != 1",
                f.phi,
                e.z_ord()
            )));
        }
        let spec = BlockSpec {
            name: f.name.clone(),
            p: f.p,
            d,
            e,
            mats: f.action.clone(),
            phi: f.phi % f.inertial.z_ord,
            file: f,
        };
        let act = spec.l_action()?;
        if act.order() != spec.e.quotient_order() {
            return Err(WbError::spec(format!(
                "action is not faithful on L: image has order {}, |L| = {}",
                act.order(),
                spec.e.quotient_order()
            )));
        }
        Ok(spec)
    }

    pub fn from_json(s: &str) -> WbResult<Self> {
        let f: SpecFile = serde_json::from_str(s).map_err(|e| WbError::spec(format!("malformed spec: {e}")))?;
        Self::from_file(f)
    }

    /// The image of L in Aut(D).
    pub fn l_action(&self) -> WbResult<PAction> {
        if self.mats.len() != self.e.rank() {
            return Err(WbError::spec(format!(
                "action: expected {} matrices (one per E-generator), got {}",
                self.e.rank(),
                self.mats.len()
            )));
        }
        PAction::new(self.d.clone(), self.mats.clone())
    }

    pub fn build_g(&self) -> WbResult<GroupG> {
        GroupG::new(self.d.clone(), self.e.clone(), &self.mats)
    }

    pub fn one_simple_module(&self) -> bool {
        self.e.one_simple_module()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8_c3sq_json(phi: u64) -> String {
        format!(
            r#"{{"name":"q8","p":3,"defect":[3,3],
            "inertial":{{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2}},
            "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":{phi}}}"#
        )
    }

    #[test]
    fn parses_and_builds() {
        let s = BlockSpec::from_json(&q8_c3sq_json(1)).unwrap();
        assert!(s.one_simple_module());
        assert_eq!(s.build_g().unwrap().order(), 72);
    }

    #[test]
    fn unfaithful_phi_rejected() {
        let err = BlockSpec::from_json(&q8_c3sq_json(2)).unwrap_err();
        assert!(err.to_string().contains("phi not faithful"), "{err}");
    }

    #[test]
    fn unfaithful_action_rejected() {
        let j = r#"{"p":3,"defect":[3],"inertial":{"orders":[2,2],"power_z":[0,0],"comm":[[0,0],[0,0]],"z_ord":1},
            "action":[[[-1]],[[-1]]],"phi":0}"#;
        let err = BlockSpec::from_json(j).unwrap_err();
        assert!(err.to_string().contains("not faithful on L"), "{err}");
    }

    #[test]
    fn p_dividing_e_rejected() {
        let j = r#"{"p":2,"defect":[2],"inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":2},
            "action":[],"phi":1}"#;
        assert!(BlockSpec::from_json(j).is_err());
    }
}
