//! Perfect isometries: the bi-character criterion and exhaustive self-isometry search.

pub mod kernels;

pub use kernels::{
    check_d1kernel, check_d2kernel, induction_integrality, morita_checks, multiply_by_d2_character, D2KernelReport,
    MoritaSummary,
};

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::char_theory::BlockCharacters;
use crate::coeff_ring::cyclotomic::tables;
use crate::coeff_ring::PrimeAbove;
use crate::error::{WbError, WbResult};

pub const DEFAULT_MAX_IRR: usize = 8;

/// I(chi_i) = signs[i] * chi_{perm[i]}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedBijection {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedBijection {
    pub fn identity(n: usize) -> Self {
        SignedBijection {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn minus_identity(n: usize) -> Self {
        SignedBijection {
            perm: (0..n).collect(),
            signs: vec![-1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// (self o other)(chi_i) = self(other(chi_i)).
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| s * self.signs[j])
            .collect();
        SignedBijection { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedBijection { perm, signs }
    }

    pub fn all_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub g_class: usize,
    pub h_class: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerfectCertificate {
    pub perfect: bool,
    pub failures: Vec<Failure>,
}

/// Shared data for mu-table evaluation on one block.
pub struct MuContext<'a> {
    pub block: &'a BlockCharacters,
    prime: PrimeAbove,
    centralizer: Vec<u64>,
    p_regular: Vec<bool>,
}

impl<'a> MuContext<'a> {
    pub fn new(block: &'a BlockCharacters) -> WbResult<Self> {
        let g = &block.g;
        let prime = PrimeAbove::new(g.d.p, block.conductor)?;
        let order = (g.d_order() * g.e_order()) as u64;
        let centralizer = g.classes.sizes.iter().map(|&s| order / s as u64).collect();
        let k = g.classes.len();
        let mut p_regular = vec![false; k];
        for &c in &g.p_regular {
            p_regular[c] = true;
        }
        Ok(MuContext {
            block,
            prime,
            centralizer,
            p_regular,
        })
    }

    /// mu(g, h) = sum_i I(chi_i)(g) chi_i(h^{-1}) up to relabelling; here
    /// sum_i signs[i] chi_i(g) chi_{perm[i]}(h^{-1}).
    pub fn mu(&self, iso: &SignedBijection, g: usize, h: usize) -> Vec<i64> {
        let t = tables(self.block.conductor);
        let hi = self.block.g.classes.inverse_class[h];
        let mut acc = vec![0i64; t.phi];
        for (i, chi) in self.block.irr_b.iter().enumerate() {
            let a = &chi.values.values[g];
            let b = &self.block.irr_b[iso.perm[i]].values.values[hi];
            let prod = t.mul_int(a, b);
            let s = iso.signs[i] as i64;
            for (o, x) in acc.iter_mut().zip(prod) {
                *o += s * x;
            }
        }
        acc
    }

    pub fn certificate(&self, iso: &SignedBijection, stop_at_first: bool) -> WbResult<PerfectCertificate> {
        let n = self.block.irr_b.len();
        if iso.len() != n {
            return Err(WbError::NotIsometryCandidate(format!(
                "bijection on {} characters, block has {n}",
                iso.len()
            )));
        }
        let k = self.block.g.classes.len();
        let mut failures = Vec::new();
        'outer: for g in 0..k {
            for h in 0..k {
                let m = self.mu(iso, g, h);
                let zero = m.iter().all(|&x| x == 0);
                let reason = if self.p_regular[g] != self.p_regular[h] && !zero {
                    Some("mu nonzero on a mixed p-regular/p-singular pair".to_string())
                } else if !zero && !self.prime.divisible_by_int(&m, self.centralizer[g]) {
                    Some(format!("mu / |C(g)| = mu / {} not integral", self.centralizer[g]))
                } else if !zero && !self.prime.divisible_by_int(&m, self.centralizer[h]) {
                    Some(format!("mu / |C(h)| = mu / {} not integral", self.centralizer[h]))
                } else {
                    None
                };
                if let Some(reason) = reason {
                    failures.push(Failure {
                        g_class: g,
                        h_class: h,
                        reason,
                    });
                    if stop_at_first {
                        break 'outer;
                    }
                }
            }
        }
        Ok(PerfectCertificate {
            perfect: failures.is_empty(),
            failures,
        })
    }

    pub fn is_perfect(&self, iso: &SignedBijection) -> WbResult<bool> {
        Ok(self.certificate(iso, true)?.perfect)
    }
}

pub fn is_perfect(block: &BlockCharacters, iso: &SignedBijection) -> WbResult<PerfectCertificate> {
    MuContext::new(block)?.certificate(iso, false)
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryGroup {
    pub candidate_space: String,
    pub candidates_checked: u64,
    pub elements: Vec<SignedBijection>,
    pub generators: Vec<SignedBijection>,
    pub closed: bool,
}

impl IsometryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Rows of `dec` that give an invertible k x k minor, and the inverse of that minor.
fn independent_rows(dec: &[Vec<i64>]) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let k = dec.first().map_or(0, |r| r.len());
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..dec.len() {
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|&r| dec[r].clone()).collect();
        rows.push(dec[i].clone());
        if rank_q(&rows) == rows.len() {
            chosen.push(i);
        }
        if chosen.len() == k {
            break;
        }
    }
    let m: Vec<Vec<i64>> = chosen.iter().map(|&r| dec[r].clone()).collect();
    (chosen, invert_q(&m))
}

fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in 0..ncols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn invert_q(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let k = m.len();
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = m[i].iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..k).map(|j| BigRational::from_integer(i64::from(i == j).into())));
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !a[i][c].is_zero()).expect("invertible minor");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..k {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * k {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[k..].to_vec()).collect()
}

/// v in the Z-column span of dec; rows/inv from `independent_rows`.
fn in_column_lattice(dec: &[Vec<i64>], rows: &[usize], inv: &[Vec<BigRational>], v: &[i64]) -> Option<Vec<i64>> {
    let k = rows.len();
    let mut c = Vec::with_capacity(k);
    for row in inv.iter() {
        let mut s = BigRational::zero();
        for (j, &r) in rows.iter().enumerate() {
            s += &row[j] * BigRational::from_integer(v[r].into());
        }
        if !s.is_integer() {
            return None;
        }
        c.push(s.to_integer().to_i64()?);
    }
    let full: Vec<i64> = dec.iter().map(|r| r.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
    (full == v).then_some(full)
}

struct Search<'a> {
    ctx: &'a MuContext<'a>,
    dec: &'a [Vec<i64>],
    degrees: Vec<i64>,
    rows: Vec<usize>,
    inv: Vec<Vec<BigRational>>,
    order: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first over positions in `order`; returns (perfect isometries, leaves checked).
    fn run(&self, perm: &mut Vec<usize>, signs: &mut Vec<i8>, used: &mut Vec<bool>, depth: usize, target: &mut Option<Vec<i64>>) -> (Vec<SignedBijection>, u64) {
        let n = self.degrees.len();
        if depth == n {
            // reverse condition: w_{perm(i)} = signs_i deg_i must also lie in the lattice
            let mut w = vec![0i64; n];
            for i in 0..n {
                w[perm[i]] = signs[i] as i64 * self.degrees[i];
            }
            if in_column_lattice(self.dec, &self.rows, &self.inv, &w).is_none() {
                return (vec![], 1);
            }
            let iso = SignedBijection {
                perm: perm.clone(),
                signs: signs.clone(),
            };
            let ok = self.ctx.is_perfect(&iso).unwrap_or(false);
            return (if ok { vec![iso] } else { vec![] }, 1);
        }
        if depth == self.rows.len() && target.is_none() {
            let mut v = vec![0i64; n];
            for &r in &self.rows {
                v[r] = signs[r] as i64 * self.degrees[perm[r]];
            }
            // solve on the chosen rows only, then extend
            let k = self.rows.len();
            let mut c = Vec::with_capacity(k);
            for row in &self.inv {
                let mut s = BigRational::zero();
                for (j, &r) in self.rows.iter().enumerate() {
                    s += &row[j] * BigRational::from_integer(v[r].into());
                }
                if !s.is_integer() {
                    return (vec![], 0);
                }
                c.push(s.to_integer().to_i64().unwrap_or(i64::MAX));
            }
            let full: Vec<i64> = self.dec.iter().map(|r| r.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
            if full.iter().any(|&x| x == 0) {
                return (vec![], 0);
            }
            *target = Some(full);
            let r = self.run(perm, signs, used, depth, target);
            *target = None;
            return r;
        }
        let i = self.order[depth];
        let mut found = Vec::new();
        let mut checked = 0;
        let want = target.as_ref().map(|t| t[i]);
        for j in 0..n {
            if used[j] {
                continue;
            }
            let sign_choices: &[i8] = match want {
                Some(w) if w.abs() != self.degrees[j] => continue,
                Some(w) if w > 0 => &[1],
                Some(_) => &[-1],
                None => &[1, -1],
            };
            for &s in sign_choices {
                used[j] = true;
                perm[i] = j;
                signs[i] = s;
                let (f, c) = self.run(perm, signs, used, depth + 1, target);
                found.extend(f);
                checked += c;
                used[j] = false;
            }
        }
        (found, checked)
    }
}

/// All perfect self-isometries of the block, by exhaustive search with lattice pruning.
pub fn enumerate_self_isometries(block: &BlockCharacters, max_irr: usize) -> WbResult<IsometryGroup> {
    let n = block.irr_b.len();
    let space = format!("{n}! * 2^{n}");
    if n > max_irr {
        return Err(WbError::BoundExceeded {
            count: format!("|Irr(B)| = {n} (candidate space {space})"),
            bound: format!("--max-irr {max_irr}"),
        });
    }
    let ctx = MuContext::new(block)?;
    let degrees: Vec<i64> = block.irr_b.iter().map(|c| c.degree).collect();
    let (rows, inv) = independent_rows(&block.dec);
    let mut order = rows.clone();
    order.extend((0..n).filter(|i| !rows.contains(i)));
    let search = Search {
        ctx: &ctx,
        dec: &block.dec,
        degrees,
        rows,
        inv,
        order,
    };
    // split the first level across workers
    let first = search.order.first().copied();
    let branches: Vec<(usize, i8)> = match first {
        Some(_) => (0..n).flat_map(|j| [(j, 1i8), (j, -1i8)]).collect(),
        None => vec![],
    };
    let (mut elements, checked) = if let Some(i0) = first {
        let parts: Vec<(Vec<SignedBijection>, u64)> = branches
            .par_iter()
            .map(|&(j, s)| {
                let mut perm = vec![0; n];
                let mut signs = vec![1i8; n];
                let mut used = vec![false; n];
                perm[i0] = j;
                signs[i0] = s;
                used[j] = true;
                let mut target = None;
                search.run(&mut perm, &mut signs, &mut used, 1, &mut target)
            })
            .collect();
        let checked = parts.iter().map(|p| p.1).sum();
        (parts.into_iter().flat_map(|p| p.0).collect::<Vec<_>>(), checked)
    } else {
        (vec![SignedBijection::identity(0)], 1)
    };
    elements.sort();
    elements.dedup();
    let closed = check_closure(&elements);
    if !closed {
        return Err(WbError::verification(
            "perfect-isometry-group",
            "perfect self-isometries are not closed under composition and inverses",
        ));
    }
    let generators = generators_of(&elements);
    Ok(IsometryGroup {
        candidate_space: space,
        candidates_checked: checked,
        elements,
        generators,
        closed,
    })
}

fn check_closure(elements: &[SignedBijection]) -> bool {
    let set: HashSet<&SignedBijection> = elements.iter().collect();
    let n = elements.first().map_or(0, |e| e.len());
    if !set.contains(&SignedBijection::identity(n)) || !set.contains(&SignedBijection::minus_identity(n)) {
        return false;
    }
    elements.iter().all(|a| set.contains(&a.inverse()))
        && elements
            .par_iter()
            .all(|a| elements.iter().all(|b| set.contains(&a.compose(b))))
}

/// Greedy generating set: add the least element outside the current subgroup.
pub fn generators_of(elements: &[SignedBijection]) -> Vec<SignedBijection> {
    let n = elements.first().map_or(0, |e| e.len());
    let mut gens: Vec<SignedBijection> = Vec::new();
    let mut sub: BTreeSet<SignedBijection> = BTreeSet::from([SignedBijection::identity(n)]);
    for x in elements {
        if sub.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<SignedBijection> = sub.iter().cloned().collect();
        while let Some(y) = frontier.pop() {
            for g in &gens {
                let z = y.compose(g);
                if sub.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        if sub.len() == elements.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_build::BlockSpec;

    const Q8_C3SQ: &str = r#"{"p":3,"defect":[3,3],
        "inertial":{"orders":[2,2],"power_z":[1,1],"comm":[[0,1],[-1,0]],"z_ord":2},
        "action":[[[-1,0],[0,1]],[[1,0],[0,-1]]],"phi":1}"#;
    const OC2: &str = r#"{"p":2,"defect":[2],"inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":1},"action":[],"phi":0}"#;

    fn block(j: &str) -> BlockCharacters {
        BlockCharacters::compute(&BlockSpec::from_json(j).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_minus_identity_are_perfect() {
        let b = block(Q8_C3SQ);
        assert!(is_perfect(&b, &SignedBijection::identity(6)).unwrap().perfect);
        assert!(is_perfect(&b, &SignedBijection::minus_identity(6)).unwrap().perfect);
    }

    #[test]
    fn degree_swap_is_not_perfect() {
        let b = block(Q8_C3SQ);
        let mut iso = SignedBijection::identity(6);
        iso.perm.swap(4, 5);
        let cert = is_perfect(&b, &iso).unwrap();
        assert!(!cert.perfect);
        assert!(!cert.failures.is_empty());
    }

    #[test]
    fn mismatched_count_rejected() {
        let b = block(Q8_C3SQ);
        assert!(matches!(
            is_perfect(&b, &SignedBijection::identity(5)),
            Err(WbError::NotIsometryCandidate(_))
        ));
    }

    /// O C_2 directly: I is perfect iff it maps O-valued class functions to O-valued ones
    /// and functions vanishing at the involution to such functions, both ways.
    #[test]
    fn oc2_matches_direct_lattice_check() {
        let b = block(OC2);
        assert_eq!(b.irr_b.len(), 2);
        // characters as (value at 1, value at s)
        let chars: Vec<(i64, i64)> = b
            .irr_b
            .iter()
            .map(|c| (c.values.values[0][0], c.values.values[1][0]))
            .collect();
        let ctx = MuContext::new(&b).unwrap();
        let mut perfect = Vec::new();
        for perm in [[0usize, 1], [1, 0]] {
            for s0 in [1i8, -1] {
                for s1 in [1i8, -1] {
                    let iso = SignedBijection { perm: perm.to_vec(), signs: vec![s0, s1] };
                    // image of delta_1 = (chi_0 + chi_1)/2 and delta_s = (chi_0 - chi_1)/2 (as 2x)
                    let img = |a: i64, bb: i64| -> (i64, i64) {
                        let coeff = [a, bb];
                        let mut v = (0, 0);
                        for i in 0..2 {
                            let c = coeff[i] * iso.signs[i] as i64;
                            let t = chars[iso.perm[i]];
                            v.0 += c * t.0;
                            v.1 += c * t.1;
                        }
                        v
                    };
                    let (s_0, s_1) = (chars[0].1, chars[1].1);
                    // coefficients of delta_1 and delta_s in the character basis, doubled
                    let d1 = img(1, 1);
                    let ds = img(s_0, s_1);
                    let integral = |v: (i64, i64)| v.0 % 2 == 0 && v.1 % 2 == 0;
                    let direct = integral(d1) && integral(ds) && d1.1 == 0;
                    assert_eq!(direct, ctx.is_perfect(&iso).unwrap(), "{iso:?}");
                    if direct {
                        perfect.push(iso);
                    }
                }
            }
        }
        let g = enumerate_self_isometries(&b, 8).unwrap();
        perfect.sort();
        assert_eq!(g.elements, perfect);
        assert!(g.closed);
    }

    #[test]
    fn q8_block_isometry_group() {
        let b = block(Q8_C3SQ);
        let g = enumerate_self_isometries(&b, 8).unwrap();
        assert!(g.closed);
        assert!(g.elements.contains(&SignedBijection::identity(6)));
        // exhaustive oracle over all 6! * 2^6 candidates
        let ctx = MuContext::new(&b).unwrap();
        let mut all = Vec::new();
        let mut perm: Vec<usize> = (0..6).collect();
        permutations(&mut perm, 0, &mut |p| {
            for mask in 0..64u32 {
                let signs = (0..6).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                let iso = SignedBijection { perm: p.to_vec(), signs };
                if ctx.is_perfect(&iso).unwrap() {
                    all.push(iso);
                }
            }
        });
        all.sort();
        assert_eq!(g.elements, all);
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn bound_refused() {
        let b = block(Q8_C3SQ);
        assert!(matches!(enumerate_self_isometries(&b, 5), Err(WbError::BoundExceeded { .. })));
    }

    #[test]
    fn compositions_of_perfect_are_perfect() {
        let b = block(Q8_C3SQ);
        let g = enumerate_self_isometries(&b, 8).unwrap();
        let ctx = MuContext::new(&b).unwrap();
        for a in g.elements.iter().take(12) {
            for c in g.elements.iter().rev().take(12) {
                assert!(ctx.is_perfect(&a.compose(c)).unwrap());
            }
        }
    }

    #[test]
    fn single_character_block() {
        let b = block(r#"{"p":3,"defect":[],"inertial":{"orders":[],"power_z":[],"comm":[],"z_ord":2},"action":[],"phi":1}"#);
        let g = enumerate_self_isometries(&b, 8).unwrap();
        assert_eq!(g.order(), 2);
    }
}
