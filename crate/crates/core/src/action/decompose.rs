//! Splitting P into indecomposable H-invariant direct factors.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{coordinate_map, Mat, PAction};
use crate::abelian::{AbelianPGroup, Elem, Subgroup};
use crate::arith::{mod_inverse, vp};
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, Serialize)]
pub struct Factor {
    /// Independent generators of the factor, as elements of P.
    pub basis: Vec<Elem>,
    /// Abstract type of the factor on that basis.
    pub group: AbelianPGroup,
    /// Induced matrices, one per generator of H.
    pub matrices: Vec<Mat>,
    pub nontrivial: bool,
}

impl Factor {
    pub fn action(&self) -> PAction {
        PAction::new(self.group.clone(), self.matrices.clone()).expect("factor action is valid")
    }
    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    /// Number of factors with nontrivial action; they come first.
    pub t: usize,
}

pub fn decompose(act: &PAction) -> WbResult<Decomposition> {
    let mut factors = Vec::new();
    let whole = act.group.whole();
    split(act, whole, &mut factors)?;
    factors.sort_by(|a, b| {
        b.nontrivial
            .cmp(&a.nontrivial)
            .then(b.order().cmp(&a.order()))
            .then(a.matrices.cmp(&b.matrices))
            .then(a.basis.cmp(&b.basis))
    });
    let t = factors.iter().filter(|f| f.nontrivial).count();
    let d = Decomposition { factors, t };
    verify_reassembly(act, &d)?;
    Ok(d)
}

fn split(act: &PAction, s: Subgroup, out: &mut Vec<Factor>) -> WbResult<()> {
    let g = &act.group;
    if s.is_trivial() {
        return Ok(());
    }
    let maxo = s.elements.iter().map(|x| g.element_order(x)).max().unwrap();
    let mut best: Option<Subgroup> = None;
    for x in s.elements.iter().filter(|x| g.element_order(x) == maxo) {
        let q = act.invariant_span(x);
        if best.as_ref().map_or(true, |b| q.order() < b.order()) {
            best = Some(q);
        }
    }
    let q = best.unwrap();
    let qbasis = g.splitting_basis(&q);
    let k = complement(act, &s, &qbasis, maxo)?;
    if q.order() * k.order() != s.order() || q.intersect(&k).len() != 1 || !act.is_invariant(&k) {
        return Err(WbError::verification(
            "decompP",
            "averaged projection did not give an invariant complement",
        ));
    }
    let restricted = act.restrict(&qbasis)?;
    let nontrivial = !restricted.is_trivial();
    if nontrivial {
        if !restricted.group.is_homocyclic() {
            return Err(WbError::verification(
                "ind",
                format!("indecomposable factor of type {:?} is not homocyclic", restricted.group.orders),
            ));
        }
        check_irreducible_quotient(&restricted)?;
    } else if qbasis.len() != 1 {
        return Err(WbError::verification("decompose", "trivially acted factor is not cyclic"));
    }
    out.push(Factor {
        basis: qbasis,
        group: restricted.group.clone(),
        matrices: restricted.gens.clone(),
        nontrivial,
    });
    let kbasis = g.splitting_basis(&k);
    split(
        act,
        Subgroup {
            elements: k.elements,
            gens: kbasis,
        },
        out,
    )
}

/// H-invariant complement of the summand with basis qbasis (all of order maxo) inside s.
fn complement(act: &PAction, s: &Subgroup, qbasis: &[Elem], maxo: u64) -> WbResult<Subgroup> {
    let g = &act.group;
    let p = g.p;
    let kk = vp(p, maxo);
    let sbasis = g.splitting_basis(s);
    let sgroup = AbelianPGroup::new(p, sbasis.iter().map(|b| vp(p, g.element_order(b))).collect());
    let coords = coordinate_map(g, &sbasis, &sgroup);
    let full: Vec<usize> = (0..sbasis.len()).filter(|&i| sgroup.orders[i] == kk).collect();
    let f = qbasis.len();
    let pk = maxo as i128;
    // rows: q-basis elements, columns: full-order coordinates of S
    let bq: Vec<Vec<i128>> = qbasis
        .iter()
        .map(|b| {
            let c = &coords[b];
            full.iter().map(|&i| c[i] as i128).collect()
        })
        .collect();
    let chosen = independent_columns_mod_p(&bq, p as i128, f).ok_or_else(|| {
        WbError::verification("decompose", "candidate factor is not a direct summand")
    })?;
    let minor: Vec<Vec<i128>> = bq
        .iter()
        .map(|row| chosen.iter().map(|&c| row[c]).collect())
        .collect();
    let inv = invert_mod(&minor, pk).ok_or_else(|| WbError::verification("decompose", "minor not invertible"))?;
    // lambda_l(y) = sum_t inv[t][l] * y_{full[chosen[t]]}
    let proj = |y: &Elem| -> Elem {
        let c = &coords[y];
        let mut out = g.zero();
        for (l, b) in qbasis.iter().enumerate() {
            let mut v: i128 = 0;
            for (t, &col) in chosen.iter().enumerate() {
                v += inv[t][l] * c[full[col]] as i128;
            }
            out = g.add(&out, &g.scalar((v.rem_euclid(pk)) as i64, b));
        }
        out
    };
    let h = act.order() as u64;
    let hinv = mod_inverse(h % g.exponent().max(2), g.exponent().max(2)).unwrap_or(1) as i64;
    let pairs: Vec<(Mat, Mat)> = act.elements.iter().map(|a| (a.clone(), act.inverse(a))).collect();
    let mut kgens = Vec::new();
    for si in &sbasis {
        let mut acc = g.zero();
        for (a, ainv) in &pairs {
            let y = act.apply(ainv, si);
            acc = g.add(&acc, &act.apply(a, &proj(&y)));
        }
        let avg = g.scalar(hinv, &acc);
        kgens.push(g.sub(si, &avg));
    }
    Ok(g.span(&kgens))
}

/// Pick `need` columns whose submatrix has full rank mod p.
fn independent_columns_mod_p(m: &[Vec<i128>], p: i128, need: usize) -> Option<Vec<usize>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut chosen: Vec<usize> = Vec::new();
    // greedy: keep a column if it raises the rank of the chosen set
    let mut current: Vec<Vec<i128>> = vec![];
    for c in 0..cols {
        let col: Vec<i128> = (0..rows).map(|r| m[r][c].rem_euclid(p)).collect();
        let mut trial = current.clone();
        trial.push(col);
        if rank_mod_p(&trial, p) > current.len() {
            current = trial;
            chosen.push(c);
            if chosen.len() == need {
                return Some(chosen);
            }
        }
    }
    if need == 0 {
        Some(vec![])
    } else {
        None
    }
}

fn rank_mod_p(vecs: &[Vec<i128>], p: i128) -> usize {
    let mut m: Vec<Vec<i128>> = vecs.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c].rem_euclid(p) != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = mod_inverse(m[r][c].rem_euclid(p) as u64, p as u64).unwrap() as i128;
        for i in 0..rows {
            if i != r {
                let f = m[i][c] * inv % p;
                for k in 0..cols {
                    m[i][k] = (m[i][k] - f * m[r][k]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix over Z/M, M a prime power, if it is invertible mod p.
pub fn invert_mod(a: &[Vec<i128>], m: i128) -> Option<Vec<Vec<i128>>> {
    let n = a.len();
    let mut aug: Vec<Vec<i128>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<i128> = row.iter().map(|x| x.rem_euclid(m)).collect();
            r.extend((0..n).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| crate::arith::gcd(aug[r][c] as u64, m as u64) == 1)?;
        aug.swap(c, piv);
        let inv = mod_inverse(aug[c][c] as u64, m as u64)? as i128;
        for x in aug[c].iter_mut() {
            *x = (*x * inv).rem_euclid(m);
        }
        for r in 0..n {
            if r != c && aug[r][c] != 0 {
                let f = aug[r][c];
                for k in 0..2 * n {
                    aug[r][k] = (aug[r][k] - f * aug[c][k]).rem_euclid(m);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Every nonzero vector of Q/Phi(Q) generates the whole quotient under H.
fn check_irreducible_quotient(act: &PAction) -> WbResult<()> {
    let fa = act.frattini_action();
    let total = fa.group.order() as usize;
    for v in fa.group.elements().skip(1) {
        if fa.invariant_span(&v).order() != total {
            return Err(WbError::verification(
                "fratt",
                format!("Frattini quotient of a factor of type {:?} is reducible", act.group.orders),
            ));
        }
    }
    Ok(())
}

fn verify_reassembly(act: &PAction, d: &Decomposition) -> WbResult<()> {
    let g = &act.group;
    let all: Vec<Elem> = d.factors.iter().flat_map(|f| f.basis.clone()).collect();
    let prod: u64 = d.factors.iter().map(|f| f.order()).product();
    if prod != g.order() || g.span(&all).order() as u64 != g.order() {
        return Err(WbError::verification("decompose", "factors do not reassemble P"));
    }
    // the generator action on each basis element matches the block-diagonal matrices
    for f in &d.factors {
        for (k, a) in act.gens.iter().enumerate() {
            for (j, b) in f.basis.iter().enumerate() {
                let mut expect = g.zero();
                for (i, bi) in f.basis.iter().enumerate() {
                    expect = g.add(&expect, &g.scalar(f.matrices[k][i][j], bi));
                }
                if act.apply(a, b) != expect {
                    return Err(WbError::verification("decompose", "change of basis does not conjugate the action"));
                }
            }
        }
    }
    Ok(())
}

/// All subgroups of P (exhaustive; intended for |P| <= 64).
pub fn all_subgroups(g: &AbelianPGroup) -> Vec<Subgroup> {
    let els: Vec<Elem> = g.elements().collect();
    let mut seen: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<Subgroup> = vec![g.span(&[])];
    seen.insert(layer[0].elements.clone());
    out.push(layer[0].clone());
    // grow by one generator at a time
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for x in &els {
                if s.contains(x) {
                    continue;
                }
                let mut gens = s.gens.clone();
                gens.push(x.clone());
                let t = g.span(&gens);
                if seen.insert(t.elements.clone()) {
                    next.push(t.clone());
                    out.push(t);
                }
            }
        }
        layer = next;
    }
    out
}

/// Exhaustive decomposition: repeatedly split off a smallest nontrivial invariant
/// subgroup that has an invariant complement. Returns sorted (type, nontrivial) pairs.
pub fn brute_force_factor_types(act: &PAction) -> Vec<(Vec<u32>, bool)> {
    let g = &act.group;
    let inv: Vec<Subgroup> = all_subgroups(g).into_iter().filter(|s| act.is_invariant(s)).collect();
    let mut cur = g.whole();
    let mut types = Vec::new();
    while !cur.is_trivial() {
        let mut cands: Vec<&Subgroup> = inv
            .iter()
            .filter(|q| !q.is_trivial() && q.elements.is_subset(&cur.elements))
            .collect();
        cands.sort_by_key(|q| (q.order(), q.elements.iter().next_back().cloned()));
        let mut done = false;
        for q in cands {
            let comp = inv.iter().find(|k| {
                k.elements.is_subset(&cur.elements)
                    && k.order() * q.order() == cur.order()
                    && q.intersect(k).len() == 1
            });
            if let Some(k) = comp {
                let basis = g.splitting_basis(q);
                let r = act.restrict(&basis).expect("invariant");
                types.push((g.subgroup_type(q), !r.is_trivial()));
                cur = k.clone();
                done = true;
                break;
            }
        }
        assert!(done, "the whole remaining group is always a candidate");
    }
    types.sort();
    types
}

pub fn factor_types(d: &Decomposition) -> Vec<(Vec<u32>, bool)> {
    let mut t: Vec<(Vec<u32>, bool)> = d
        .factors
        .iter()
        .map(|f| {
            let mut o = f.group.orders.clone();
            o.sort_unstable_by(|a, b| b.cmp(a));
            (o, f.nontrivial)
        })
        .collect();
    t.sort();
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(p: u64, orders: &[u32], gens: Vec<Mat>) -> PAction {
        PAction::new(AbelianPGroup::new(p, orders.to_vec()), gens).unwrap()
    }

    #[test]
    fn trivial_action_cyclic_factors() {
        let a = PAction::trivial(AbelianPGroup::new(3, vec![1, 1]));
        let d = decompose(&a).unwrap();
        assert_eq!(d.t, 0);
        assert_eq!(d.factors.len(), 2);
    }

    #[test]
    fn klein_four_on_c3_squared() {
        let a = act(3, &[1, 1], vec![vec![vec![2, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 2]]]);
        let d = decompose(&a).unwrap();
        assert_eq!(d.t, 2);
        assert!(d.factors.iter().all(|f| f.order() == 3));
        assert_eq!(factor_types(&d), brute_force_factor_types(&a));
        // oracle: the 4 subgroups of order 3 of F_3^2, exactly two invariant
        let inv: Vec<Subgroup> = all_subgroups(&a.group)
            .into_iter()
            .filter(|s| s.order() == 3 && a.is_invariant(s))
            .collect();
        assert_eq!(inv.len(), 2);
    }

    #[test]
    fn c3_on_klein_is_indecomposable() {
        let a = act(2, &[1, 1], vec![vec![vec![0, 1], vec![1, 1]]]);
        let d = decompose(&a).unwrap();
        assert_eq!(d.t, 1);
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].group.orders, vec![1, 1]);
        // oracle: none of the 3 proper nontrivial subgroups is invariant
        let proper: Vec<Subgroup> = all_subgroups(&a.group).into_iter().filter(|s| s.order() == 2).collect();
        assert_eq!(proper.len(), 3);
        assert!(proper.iter().all(|s| !a.is_invariant(s)));
    }

    #[test]
    fn mixed_orders_and_fixed_part() {
        // C_3 on C_4^2 x C_2, trivial on the last factor
        let a = act(2, &[2, 2, 1], vec![vec![vec![0, 3, 0], vec![1, 3, 0], vec![0, 0, 1]]]);
        let d = decompose(&a).unwrap();
        assert_eq!(d.t, 1);
        assert_eq!(d.factors[0].group.orders, vec![2, 2]);
        assert_eq!(d.factors[1].group.orders, vec![1]);
        assert_eq!(factor_types(&d), brute_force_factor_types(&a));
    }

    #[test]
    fn decomposable_c4_on_c5_squared() {
        let a = act(5, &[1, 1], vec![vec![vec![0, 4], vec![1, 0]]]);
        let d = decompose(&a).unwrap();
        assert_eq!(d.t, 2);
        assert_eq!(factor_types(&d), brute_force_factor_types(&a));
    }

    #[test]
    fn modular_inverse_matrix() {
        let a = vec![vec![1, 2], vec![3, 4]];
        let inv = invert_mod(&a, 9).unwrap();
        let prod: Vec<Vec<i128>> = (0..2)
            .map(|i| (0..2).map(|j| (0..2).map(|k| a[i][k] * inv[k][j]).sum::<i128>().rem_euclid(9)).collect())
            .collect();
        assert_eq!(prod, vec![vec![1, 0], vec![0, 1]]);
        assert!(invert_mod(&[vec![3, 0], vec![0, 1]], 9).is_none());
    }
}
