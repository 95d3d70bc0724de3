//! Kernel conclusions for perfect self-isometries, and integrality of induced characters.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::char_theory::BlockCharacters;
use crate::coeff_ring::cyclotomic::tables;
use crate::coeff_ring::PrimeAbove;
use crate::error::{WbError, WbResult};
use crate::group_build::{FinGroup, GroupG};

use super::{IsometryGroup, SignedBijection};

#[derive(Debug, Clone, Serialize)]
pub struct D2KernelReport {
    /// theta on the elements of D_2 (ascending D-index), as exponents of zeta_{exp D}
    pub theta: Vec<u64>,
    pub theta_trivial: bool,
    /// sigma(1_D, chi) for chi in Irr(E, phi), as Irr(B) indices
    pub images: Vec<usize>,
    pub sigma_br: Vec<usize>,
}

/// Indices of the (1_D, chi) characters, ordered by the column of Irr(E, phi) they restrict to.
fn inflated(block: &BlockCharacters) -> Vec<usize> {
    let k = block.irr_e_phi.len();
    let zero = vec![0u64; block.g.d.rank()];
    let mut out = vec![usize::MAX; k];
    for (i, c) in block.irr_b.iter().enumerate() {
        if c.lambda == zero {
            if let Some(j) = (0..k).find(|&j| block.dec[i][j] == 1) {
                out[j] = i;
            }
        }
    }
    out
}

/// sigma(1_D, chi) = psi_chi (x) theta with theta in Irr(D_2) independent of chi and
/// psi_chi in Irr(D_1 x| E, phi).
pub fn check_d2kernel(block: &BlockCharacters, sigma: &[usize]) -> WbResult<D2KernelReport> {
    let sbr = block.sigma_br(sigma)?;
    block.check_factorization()?;
    let g = &block.g;
    let d = &g.d;
    let d1: Vec<usize> = block.d1().into_iter().collect();
    let d2: Vec<usize> = block.d2().into_iter().collect();
    let t = tables(block.conductor);
    let infl = inflated(block);
    let mut theta: Option<Vec<u64>> = None;
    let mut images = Vec::new();
    let z_class_elem = g.e.z_power(1);
    for &i in &infl {
        let j = sigma[i];
        images.push(j);
        let chi = &block.irr_b[j];
        let th: Vec<u64> = d2.iter().map(|&x| d.pairing_exponent(&chi.lambda, &d.element(x))).collect();
        match &theta {
            None => theta = Some(th),
            Some(prev) if *prev != th => {
                return Err(WbError::verification(
                    "D2kernel",
                    format!("D_2-components differ: {prev:?} vs {th:?}"),
                ))
            }
            _ => {}
        }
        // psi(x1, e) = chi(x1, e); check <psi, psi> = 1 over D_1 x| E and psi over phi
        let val = |x1: usize, e: usize| &chi.values.values[g.classes.class_of[g.pair(x1, e)]];
        let mut acc = vec![0i128; t.phi];
        for &x1 in &d1 {
            for e in 0..g.e_order() {
                let h = g.pair(x1, e);
                let hi = g.inv(h);
                let (x1i, ei) = g.split(hi);
                let prod = t.mul_int(val(x1, e), val(x1i, ei));
                for (a, b) in acc.iter_mut().zip(prod) {
                    *a += b as i128;
                }
            }
        }
        let order = (d1.len() * g.e_order()) as i128;
        if acc[0] != order || acc[1..].iter().any(|&x| x != 0) {
            return Err(WbError::verification(
                "D2kernel",
                format!("D_1 x| E component of sigma(1_D, chi) -> chi_{j} is not irreducible"),
            ));
        }
        let want = crate::char_theory::scaled_root(block.conductor, g.e.z_ord(), block.phi, chi.degree);
        if *val(0, z_class_elem) != want {
            return Err(WbError::verification("D2kernel", "D_1 x| E component does not lie over phi"));
        }
    }
    let theta = theta.unwrap_or_default();
    Ok(D2KernelReport {
        theta_trivial: theta.iter().all(|&x| x == 0),
        theta,
        images,
        sigma_br: sbr,
    })
}

/// sigma maps {chi : lambda trivial on D_1} onto itself.
pub fn check_d1kernel(block: &BlockCharacters, sigma: &[usize]) -> bool {
    let s: BTreeSet<usize> = (0..block.irr_b.len())
        .filter(|&i| block.op_kernel_predicates(&block.irr_b[i].lambda).0)
        .collect();
    let img: BTreeSet<usize> = s.iter().map(|&i| sigma[i]).collect();
    img == s
}

/// The permutation chi -> chi * lambda_2 for lambda_2 in Irr(D) trivial on D_1
/// (so it extends to G trivially on E).
pub fn multiply_by_d2_character(block: &BlockCharacters, lambda2: &[u64]) -> WbResult<Vec<usize>> {
    let g = &block.g;
    let d = &g.d;
    if !block.op_kernel_predicates(lambda2).0 {
        return Err(WbError::spec("lambda_2 is not trivial on D_1 = [D, E]"));
    }
    let t = tables(block.conductor);
    let step = block.conductor / d.exponent();
    let mut perm = Vec::with_capacity(block.irr_b.len());
    for chi in &block.irr_b {
        let values: Vec<Vec<i64>> = g
            .classes
            .reps
            .iter()
            .enumerate()
            .map(|(c, &r)| {
                let (x, _) = g.split(r);
                t.rotate(&chi.values.values[c], d.pairing_exponent(lambda2, &d.element(x)) * step)
            })
            .collect();
        let j = block
            .irr_b
            .iter()
            .position(|c| c.values.values == values)
            .ok_or_else(|| WbError::verification("D2kernel", "chi * lambda_2 is not in Irr(B)"))?;
        perm.push(j);
    }
    Ok(perm)
}

#[derive(Debug, Clone, Serialize)]
pub struct InductionReport {
    pub stabilizer_index: u64,
    pub classes_checked: usize,
}

/// For N normal in G and chi in ZIrr(N) (values per element of N, at `conductor`),
/// chi induced to G takes values in [Stab_G(chi) : N] O at every class.
pub fn induction_integrality(
    g: &GroupG,
    n_elems: &[usize],
    chi: &[Vec<i64>],
    conductor: u64,
) -> WbResult<InductionReport> {
    let order = g.order();
    let mut pos = vec![usize::MAX; order];
    for (i, &x) in n_elems.iter().enumerate() {
        pos[x] = i;
    }
    for s in g.generators() {
        for &x in n_elems {
            if pos[g.conj(x, s)] == usize::MAX {
                return Err(WbError::spec("N is not normal in G"));
            }
        }
    }
    let stab = (0..order)
        .filter(|&h| n_elems.iter().all(|&x| chi[pos[g.conj(x, h)]] == chi[pos[x]]))
        .count();
    let index = (stab / n_elems.len()) as u64;
    let prime = PrimeAbove::new(g.d.p, conductor)?;
    let phi = tables(conductor).phi;
    for (c, &rep) in g.classes.reps.iter().enumerate() {
        let mut acc = vec![0i64; phi];
        for x in 0..order {
            let y = g.conj(rep, x);
            if pos[y] != usize::MAX {
                for (a, b) in acc.iter_mut().zip(&chi[pos[y]]) {
                    *a += b;
                }
            }
        }
        let nn = n_elems.len() as i64;
        if acc.iter().any(|a| a % nn != 0) {
            return Err(WbError::verification("NO", format!("induced value at class {c} is not integral")));
        }
        let v: Vec<i64> = acc.iter().map(|a| a / nn).collect();
        if !prime.divisible_by_int(&v, index) {
            let shown = BigRational::from_integer(v[0].into());
            return Err(WbError::verification(
                "NO",
                format!("induced value at class {c} (leading coordinate {shown}) not in {index} O"),
            ));
        }
    }
    Ok(InductionReport {
        stabilizer_index: index,
        classes_checked: g.classes.len(),
    })
}

/// Kernel checks over a whole perfect-self-isometry group.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MoritaSummary {
    pub group_order: usize,
    pub contains_plus_minus_id: bool,
    pub all_positive: usize,
    /// All-positive members whose action on IBr(B) is well defined.
    pub admitting_sigma_br: usize,
    pub d2kernel_pass: usize,
    pub d1kernel_pass: usize,
    /// Members admitting sigma_Br that also pass both kernel checks.
    pub morita_compatible: usize,
    pub violations: Vec<String>,
}

pub fn morita_checks(block: &BlockCharacters, group: &IsometryGroup) -> WbResult<MoritaSummary> {
    let n = block.irr_b.len();
    let mut s = MoritaSummary {
        group_order: group.order(),
        contains_plus_minus_id: group.elements.contains(&SignedBijection::identity(n))
            && group.elements.contains(&SignedBijection::minus_identity(n)),
        ..Default::default()
    };
    for iso in group.elements.iter().filter(|i| i.all_positive()) {
        s.all_positive += 1;
        match block.sigma_br(&iso.perm) {
            Err(WbError::NotBrauerCompatible(_)) => continue,
            Err(e) => return Err(e),
            Ok(_) => s.admitting_sigma_br += 1,
        }
        let d2 = match check_d2kernel(block, &iso.perm) {
            Ok(_) => true,
            Err(WbError::Verification { lemma, detail }) => {
                s.violations.push(format!("{lemma}: {:?}: {detail}", iso.perm));
                false
            }
            Err(e) => return Err(e),
        };
        let d1 = check_d1kernel(block, &iso.perm);
        if !d1 {
            s.violations.push(format!("D1kernel: {:?} does not preserve Irr(B, 1_D1)", iso.perm));
        }
        s.d2kernel_pass += d2 as usize;
        s.d1kernel_pass += d1 as usize;
        s.morita_compatible += (d1 && d2) as usize;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_build::BlockSpec;
    use crate::isometry::{enumerate_self_isometries, MuContext, SignedBijection};

    const D2_SPEC: &str = r#"{"p":3,"defect":[3,3],"inertial":{"orders":[2],"power_z":[0],"comm":[[0]],"z_ord":1},
        "action":[[[-1,0],[0,1]]],"phi":0}"#;
    const Q8_C3SQ: &str = r#"{"p":3,"defect":[3,3],
        "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
        "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":1}"#;

    fn block(j: &str) -> BlockCharacters {
        BlockCharacters::compute(&BlockSpec::from_json(j).unwrap()).unwrap()
    }

    #[test]
    fn identity_passes_both() {
        let b = block(D2_SPEC);
        let id: Vec<usize> = (0..b.irr_b.len()).collect();
        let r = check_d2kernel(&b, &id).unwrap();
        assert!(r.theta_trivial);
        assert!(check_d1kernel(&b, &id));
    }

    #[test]
    fn multiplication_by_lambda2_gives_theta() {
        let b = block(D2_SPEC);
        let sigma = multiply_by_d2_character(&b, &[0, 1]).unwrap();
        let ctx = MuContext::new(&b).unwrap();
        let iso = SignedBijection { perm: sigma.clone(), signs: vec![1; sigma.len()] };
        assert!(ctx.is_perfect(&iso).unwrap());
        let r = check_d2kernel(&b, &sigma).unwrap();
        // theta on D_2 = <(0,1)>: elements (0,0),(0,1),(0,2) in D-index order 0, 3, 6
        assert_eq!(r.theta, vec![0, 1, 2]);
        assert!(check_d1kernel(&b, &sigma));
        assert!(multiply_by_d2_character(&b, &[1, 0]).is_err());
    }

    #[test]
    fn transposition_leaving_d1_kernel_fails_d1_check() {
        let b = block(D2_SPEC);
        let n = b.irr_b.len();
        let inside = (0..n).find(|&i| b.op_kernel_predicates(&b.irr_b[i].lambda).0).unwrap();
        let outside = (0..n).find(|&i| !b.op_kernel_predicates(&b.irr_b[i].lambda).0).unwrap();
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(inside, outside);
        assert!(!check_d1kernel(&b, &sigma));
        // recorded outcome: such a sigma is not a perfect isometry here
        let ctx = MuContext::new(&b).unwrap();
        let iso = SignedBijection { perm: sigma, signs: vec![1; n] };
        assert!(!ctx.is_perfect(&iso).unwrap());
    }

    #[test]
    fn enumerated_positive_isometries_pass_kernel_checks() {
        for spec in [D2_SPEC, Q8_C3SQ] {
            let b = block(spec);
            let grp = enumerate_self_isometries(&b, 10).unwrap();
            assert!(grp.order() >= 2);
            for iso in grp.elements.iter().filter(|i| i.all_positive()) {
                if b.sigma_br(&iso.perm).is_ok() {
                    let r = check_d2kernel(&b, &iso.perm).unwrap();
                    if spec == Q8_C3SQ {
                        assert!(r.theta_trivial);
                    }
                    assert!(check_d1kernel(&b, &iso.perm));
                }
            }
            let sum = morita_checks(&b, &grp).unwrap();
            assert!(sum.contains_plus_minus_id);
            assert!(sum.violations.is_empty());
            assert_eq!(sum.morita_compatible, sum.admitting_sigma_br);
            assert!(sum.admitting_sigma_br >= 1);
        }
    }

    #[test]
    fn induction_from_d_is_integral() {
        let b = block(Q8_C3SQ);
        let g = &b.g;
        let n_elems: Vec<usize> = (0..g.d_order()).map(|x| g.pair(x, 0)).collect();
        let m = b.conductor;
        let step = m / g.d.exponent();
        let t = tables(m);
        for lam in [[0u64, 0], [1, 0], [1, 1]] {
            let chi: Vec<Vec<i64>> = (0..g.d_order())
                .map(|x| t.pow[(g.d.pairing_exponent(&lam, &g.d.element(x)) * step) as usize].clone())
                .collect();
            let r = induction_integrality(g, &n_elems, &chi, m).unwrap();
            let expect = match lam {
                [0, 0] => 8,
                [1, 0] => 4,
                _ => 2,
            };
            assert_eq!(r.stabilizer_index, expect);
        }
        // N = G: index 1
        let all: Vec<usize> = (0..g.order()).collect();
        let triv = vec![t.pow[0].clone(); g.order()];
        assert_eq!(induction_integrality(g, &all, &triv, m).unwrap().stabilizer_index, 1);
    }

    #[test]
    fn non_normal_rejected() {
        let b = block(Q8_C3SQ);
        let g = &b.g;
        // <(e_1 generator)> in E is not normal in G
        let e1 = g.e.index(&g.e.generator_elem(0));
        let sub = vec![0, e1, g.e.mul(e1, e1), g.e.mul(e1, g.e.mul(e1, e1))];
        let mut sub = sub;
        sub.sort();
        sub.dedup();
        let t = tables(b.conductor);
        let chi = vec![t.pow[0].clone(); sub.len()];
        assert!(induction_integrality(g, &sub, &chi, b.conductor).is_err());
    }
}
