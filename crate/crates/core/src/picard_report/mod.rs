//! Structural summary of the Picard group: the linear-source factor
//! Hom(D_2, O^x) x| Aut(D_2), the symbolic trivial-source factor and the
//! character-level verifications attached to them.

use serde::Serialize;

use crate::abelian::{AbelianPGroup, Elem};
use crate::action::fixed_and_commutator;
use crate::char_theory::BlockCharacters;
use crate::error::WbResult;
use crate::group_build::BlockSpec;
use crate::isometry::{enumerate_self_isometries, morita_checks, MoritaSummary};

/// |Aut(prod C_{p^{e_i}})| by the Hillar-Rhea formula.
pub fn aut_order(g: &AbelianPGroup) -> u128 {
    let p = g.p as u128;
    let mut e: Vec<u32> = g.orders.iter().copied().filter(|&x| x > 0).collect();
    e.sort_unstable();
    let n = e.len();
    let mut out: u128 = 1;
    for k in 0..n {
        // d_k = max{l : e_l = e_k}, c_k = min{l : e_l = e_k}, 1-based
        let d = e.iter().rposition(|&x| x == e[k]).unwrap() + 1;
        let c = e.iter().position(|&x| x == e[k]).unwrap() + 1;
        out *= p.pow(d as u32) - p.pow(k as u32);
        out *= p.pow(e[k]).pow((n - d) as u32);
        out *= p.pow(e[k] - 1).pow((n - c + 1) as u32);
    }
    out
}

/// |Aut(G)| by searching images of the standard generators.
///
/// Partial tuples extendable to an automorphism form one Aut-orbit, so the
/// number of admissible images of the k-th generator, given the standard
/// images of the earlier ones, is the same for every admissible prefix; each
/// count is found by trying every element and searching for a completion.
pub fn aut_order_by_search(g: &AbelianPGroup) -> u128 {
    let gens: Vec<Elem> = (0..g.rank()).filter(|&i| g.orders[i] > 0).map(|i| g.generator(i)).collect();
    let els: Vec<Elem> = g.elements().collect();
    let mut out: u128 = 1;
    for k in 0..gens.len() {
        let prefix = &gens[..k];
        let count = els
            .iter()
            .filter(|x| {
                let mut tuple = prefix.to_vec();
                tuple.push((*x).clone());
                completes(g, &gens, &els, &mut tuple)
            })
            .count();
        out *= count as u128;
    }
    out
}

/// The images so far define an injective homomorphism on the span of the first generators.
fn partial_ok(g: &AbelianPGroup, gens: &[Elem], images: &[Elem]) -> bool {
    let k = images.len();
    for i in 0..k {
        if g.element_order(&images[i]) != g.element_order(&gens[i]) {
            return false;
        }
    }
    let want: u64 = gens[..k].iter().map(|x| g.element_order(x)).product();
    g.span(images).order() as u64 == want
}

fn completes(g: &AbelianPGroup, gens: &[Elem], els: &[Elem], images: &mut Vec<Elem>) -> bool {
    if !partial_ok(g, gens, images) {
        return false;
    }
    if images.len() == gens.len() {
        return true;
    }
    for x in els {
        images.push(x.clone());
        let ok = completes(g, gens, els, images);
        images.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Counts every automorphism by enumerating generator images; only for tiny groups.
pub fn aut_order_enumerated(g: &AbelianPGroup) -> u128 {
    let gens: Vec<Elem> = (0..g.rank()).filter(|&i| g.orders[i] > 0).map(|i| g.generator(i)).collect();
    let els: Vec<Elem> = g.elements().collect();
    fn go(g: &AbelianPGroup, gens: &[Elem], els: &[Elem], images: &mut Vec<Elem>) -> u128 {
        if !partial_ok(g, gens, images) {
            return 0;
        }
        if images.len() == gens.len() {
            return 1;
        }
        let mut total = 0;
        for x in els {
            images.push(x.clone());
            total += go(g, gens, els, images);
            images.pop();
        }
        total
    }
    go(g, &gens, &els, &mut Vec::new())
}

pub const BRUTE_FORCE_LIMIT: u64 = 64;

#[derive(Debug, Clone, Serialize)]
pub struct LinearFactor {
    /// |Hom(D_2, O^x)| = |D_2|
    pub hom_order: u64,
    pub aut_order: u128,
    pub aut_order_search: Option<u128>,
    pub order: u128,
    pub description: String,
}

fn type_string(g: &AbelianPGroup) -> String {
    let parts: Vec<String> = g.moduli().iter().filter(|&&m| m > 1).map(|m| format!("C{m}")).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" x ")
    }
}

pub fn linear_source_factor(d2: &AbelianPGroup) -> LinearFactor {
    let hom_order = d2.order();
    let aut = aut_order(d2);
    let search = (hom_order <= BRUTE_FORCE_LIMIT).then(|| aut_order_by_search(d2));
    let description = if hom_order == 1 {
        "trivial".into()
    } else {
        format!(
            "Hom({t}, O^x) x| Aut({t}): translations by the {hom_order} linear characters of D_2, \
             and the {aut} automorphisms of D_2",
            t = type_string(d2)
        )
    };
    LinearFactor {
        hom_order,
        aut_order: aut,
        aut_order_search: search,
        order: hom_order as u128 * aut,
        description,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PicardStructure {
    pub block: String,
    pub p: u64,
    pub d1_type: Vec<u64>,
    pub d2_type: Vec<u64>,
    pub linear_factor: LinearFactor,
    pub t_factor: String,
    pub claim: String,
    pub annotations: Vec<String>,
    /// Irr(B, 1_{D_1}) as Irr(B) indices.
    pub irr_b_trivial_on_d1: Vec<usize>,
    /// Absent when |Irr(B)| exceeds the enumeration bound.
    pub isometries: Option<MoritaSummary>,
}

impl PicardStructure {
    pub fn consistent(&self) -> bool {
        let lf = &self.linear_factor;
        lf.order == lf.hom_order as u128 * lf.aut_order && lf.aut_order_search.is_none_or(|s| s == lf.aut_order)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("block {}: p = {}\n", self.block, self.p));
        s.push_str(&format!("D_1 = [D,E] of type {:?}, D_2 = C_D(E) of type {:?}\n", self.d1_type, self.d2_type));
        s.push_str(&format!("claim: {}\n", self.claim));
        s.push_str(&format!(
            "linear factor: order {} = {} * {}",
            self.linear_factor.order, self.linear_factor.hom_order, self.linear_factor.aut_order
        ));
        if let Some(b) = self.linear_factor.aut_order_search {
            s.push_str(&format!(" (search: |Aut(D_2)| = {b})"));
        }
        s.push('\n');
        s.push_str(&format!("trivial-source factor: {} (not computed)\n", self.t_factor));
        for a in &self.annotations {
            s.push_str(&format!("note: {a}\n"));
        }
        s.push_str(&format!("Irr(B, 1_D1) = {:?}\n", self.irr_b_trivial_on_d1));
        match &self.isometries {
            Some(m) => s.push_str(&format!(
                "perfect self-isometries: {} ({} all-positive, {} admit sigma_Br, {} pass both kernel checks, {} violations)\n",
                m.group_order,
                m.all_positive,
                m.admitting_sigma_br,
                m.morita_compatible,
                m.violations.len()
            )),
            None => s.push_str("perfect self-isometries: not enumerated (bound exceeded)\n"),
        }
        s
    }
}

pub fn picard_report(spec: &BlockSpec, block: &BlockCharacters, max_irr: usize) -> WbResult<PicardStructure> {
    let act = spec.l_action()?;
    let fc = fixed_and_commutator(&act)?;
    let d = &spec.d;
    let d2 = AbelianPGroup::new(d.p, d.subgroup_type(&fc.fixed));
    let d1 = AbelianPGroup::new(d.p, d.subgroup_type(&fc.commutator));
    let lf = linear_source_factor(&d2);
    let mut annotations = Vec::new();
    if d2.is_trivial() {
        annotations.push("Pic = T-factor: D_2 = 1, so [D,E] = D and every Picard element has trivial source".into());
    }
    if d1.is_trivial() {
        annotations.push("T-factor trivial: D_1 = 1, so Pic = Hom(D,O^x) x| Aut(D)".into());
    }
    let isometries = if block.irr_b.len() <= max_irr {
        let grp = enumerate_self_isometries(block, max_irr)?;
        Some(morita_checks(block, &grp)?)
    } else {
        None
    };
    let irr_b_trivial_on_d1 = (0..block.irr_b.len())
        .filter(|&i| block.op_kernel_predicates(&block.irr_b[i].lambda).0)
        .collect();
    Ok(PicardStructure {
        block: spec.name.clone(),
        p: spec.p,
        d1_type: d1.moduli().into_iter().filter(|&m| m > 1).collect(),
        d2_type: d2.moduli().into_iter().filter(|&m| m > 1).collect(),
        t_factor: "T(O(D_1 x| E) e_phi)".into(),
        claim: format!(
            "Pic(B) = T(O(D_1 x| E) e_phi) x (Hom(D_2, O^x) x| Aut(D_2)), D_2 = {}",
            type_string(&d2)
        ),
        linear_factor: lf,
        annotations,
        irr_b_trivial_on_d1,
        isometries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_orders() {
        let g = |p, o: Vec<u32>| AbelianPGroup::new(p, o);
        assert_eq!(aut_order(&g(3, vec![])), 1);
        assert_eq!(aut_order(&g(3, vec![1])), 2);
        assert_eq!(aut_order(&g(2, vec![1, 1])), 6);
        assert_eq!(aut_order(&g(2, vec![1, 2])), 8);
        assert_eq!(aut_order(&g(2, vec![1, 1, 1])), 168);
        assert_eq!(aut_order(&g(3, vec![2])), 6);
        assert_eq!(linear_source_factor(&g(2, vec![1, 1])).order, 24);
        assert_eq!(linear_source_factor(&g(3, vec![1])).order, 6);
        assert_eq!(linear_source_factor(&g(5, vec![])).order, 1);
    }

    #[test]
    fn search_matches_enumeration() {
        for (p, o) in [(2, vec![1, 1]), (2, vec![1, 2]), (3, vec![1, 1]), (2, vec![2, 2]), (2, vec![1, 1, 1]), (3, vec![2])] {
            let g = AbelianPGroup::new(p, o);
            assert_eq!(aut_order_by_search(&g), aut_order_enumerated(&g));
        }
    }

    #[test]
    fn formula_matches_search_up_to_64() {
        for p in [2u64, 3, 5, 7] {
            for parts in partitions_up_to(p, 64) {
                let g = AbelianPGroup::new(p, parts.clone());
                assert_eq!(aut_order(&g), aut_order_by_search(&g), "p = {p}, type {parts:?}");
            }
        }
    }

    fn partitions_up_to(p: u64, bound: u64) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![(vec![], 1u64, 8u32)];
        while let Some((parts, ord, max)) = frontier.pop() {
            for e in 1..=max {
                let o = ord * p.pow(e);
                if o > bound {
                    break;
                }
                let mut np: Vec<u32> = parts.clone();
                np.push(e);
                out.push(np.clone());
                frontier.push((np, o, e));
            }
        }
        out
    }

    proptest! {
        #[test]
        fn aut_of_cyclic_is_euler_phi(p in prop::sample::select(vec![2u64, 3, 5, 7]), e in 1u32..4) {
            let g = AbelianPGroup::new(p, vec![e]);
            prop_assert_eq!(aut_order(&g), crate::arith::euler_phi(p.pow(e)) as u128);
        }
    }

    #[test]
    fn q8_block_is_pic_equals_t() {
        let spec = BlockSpec::from_json(crate::qci::tests_support::Q8_SPEC).unwrap();
        let b = BlockCharacters::compute(&spec).unwrap();
        let r = picard_report(&spec, &b, 8).unwrap();
        assert_eq!(r.linear_factor.order, 1);
        assert!(r.annotations.iter().any(|a| a.starts_with("Pic = T-factor")));
        assert!(r.consistent());
        let iso = r.isometries.as_ref().unwrap();
        assert!(iso.violations.is_empty());
        assert_eq!(r.irr_b_trivial_on_d1.len(), 1);
    }

    #[test]
    fn abelian_e_and_d2_c3() {
        let spec = BlockSpec::from_json(
            r#"{"p":3,"defect":[3,3],"inertial":{"orders":[2],"power_z":[0],"comm":[[0]],"z_ord":1},
            "action":[[[-1,0],[0,1]]],"phi":0}"#,
        )
        .unwrap();
        let b = BlockCharacters::compute(&spec).unwrap();
        let r = picard_report(&spec, &b, 10).unwrap();
        assert_eq!(r.d2_type, vec![3]);
        assert_eq!(r.linear_factor.order, 6);
        assert!(r.annotations.is_empty());
        let spec = BlockSpec::from_json(
            r#"{"p":2,"defect":[4],"inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":3},
            "action":[],"phi":1}"#,
        )
        .unwrap();
        let b = BlockCharacters::compute(&spec).unwrap();
        let r = picard_report(&spec, &b, 8).unwrap();
        assert_eq!(r.linear_factor.order, 8);
        assert!(r.annotations.iter().any(|a| a.starts_with("T-factor trivial")));
    }
}
