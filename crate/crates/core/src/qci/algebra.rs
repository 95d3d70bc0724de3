//! The q-commuting algebra on generators X_{ij} with a monomial basis.
//!
//! Elements are dense coefficient vectors over the monomials X^l, l_{ij} < p^{n_i},
//! indexed in mixed radix with the first generator least significant.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{verify_q_properties, QMatrix};
use crate::arith::{gcd, mult_order};
use crate::coeff_ring::{GaloisRing, SmallRing};
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationMode {
    /// X_{ij}^{p^{n_i}} = 0 on acted blocks.
    Strict,
    /// X_{ij}^2 = 2 X_{i,j+1} on acted blocks (p = 2, n_i = 1).
    P2Model,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EndoClass {
    NotAHomomorphism { relation: String },
    NotInvertible,
    Automorphism,
}

#[derive(Debug, Clone)]
struct Gen {
    nil: usize,
    acted: bool,
    next: usize,
}

pub type Elem = Vec<u16>;

pub const DIM_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
pub struct QCIAlgebra {
    pub ring: SmallRing,
    pub field: SmallRing,
    pub q: QMatrix,
    pub mode: RelationMode,
    gens: Vec<Gen>,
    q_el: Vec<Vec<u16>>,
    /// X^{nil} = sum_k rel[k] X^k on unacted blocks.
    power_rel: Vec<Vec<u16>>,
    stride: Vec<usize>,
    dim: usize,
    residue: Vec<u16>,
    table: Vec<Vec<(u32, u16)>>,
}

fn binom_mod(n: u64, k: u64, m: u64) -> u64 {
    let mut row = vec![1u64 % m];
    for _ in 0..n {
        let mut next = vec![1u64 % m; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % m;
        }
        row = next;
    }
    row[k as usize]
}

impl QCIAlgebra {
    /// Coefficients in GR(p^m, deg) with deg the least degree holding the q-entries.
    pub fn new(q: QMatrix, mode: RelationMode, m: u32) -> WbResult<Self> {
        let r = q.modulus;
        if gcd(r, q.p) != 1 {
            return Err(WbError::spec("q-entries must be p'-roots of unity"));
        }
        let deg = if r <= 2 { 1 } else { mult_order(q.p % r, r) as usize };
        Self::with_degree(q, mode, m, deg)
    }

    pub fn strict(q: QMatrix) -> WbResult<Self> {
        Self::new(q, RelationMode::Strict, 1)
    }

    pub fn p2_model(q: QMatrix) -> WbResult<Self> {
        if q.p != 2 {
            return Err(WbError::spec("the p2-model needs p = 2"));
        }
        Self::new(q, RelationMode::P2Model, 2)
    }

    pub fn with_degree(q: QMatrix, mode: RelationMode, m: u32, deg: usize) -> WbResult<Self> {
        let rep = verify_q_properties(&q);
        if !rep.get("3b").is_some_and(|c| c.pass) {
            return Err(WbError::spec("q-matrix is not multiplicatively antisymmetric"));
        }
        if mode == RelationMode::P2Model && q.blocks.iter().any(|b| b.acted && b.n != 1) {
            return Err(WbError::spec("the p2-model needs elementary abelian acted blocks"));
        }
        let gr = GaloisRing::new(q.p, m, deg);
        let ring = SmallRing::new(gr.clone())?;
        let field = SmallRing::new(GaloisRing::new(q.p, 1, deg))?;
        let residue = (0..ring.size as u16)
            .map(|x| field.encode(&gr.reduce_to_field(&ring.decode(x))))
            .collect();
        let mut gens = Vec::new();
        for (i, b) in q.blocks.iter().enumerate() {
            for j in 0..b.m {
                gens.push(Gen {
                    nil: (q.p as usize).pow(b.n),
                    acted: b.acted,
                    next: q.position(i, j + 1),
                });
            }
        }
        let mut dim = 1usize;
        let mut stride = Vec::new();
        for g in &gens {
            stride.push(dim);
            dim = dim
                .checked_mul(g.nil)
                .filter(|&d| d <= DIM_LIMIT)
                .ok_or_else(|| WbError::Unsupported(format!("algebra of dimension > {DIM_LIMIT}")))?;
        }
        let mut q_el = Vec::new();
        for row in &q.exps {
            let mut r = Vec::new();
            for &k in row {
                r.push(ring.encode(&gr.root_of_unity(q.modulus, k as i64)?));
            }
            q_el.push(r);
        }
        let pm = gr.pm;
        let power_rel = gens
            .iter()
            .map(|g| {
                (0..g.nil)
                    .map(|k| {
                        if k == 0 {
                            0
                        } else {
                            let b = binom_mod(g.nil as u64, k as u64, pm) as i64;
                            ring.from_int(-b)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut alg = QCIAlgebra {
            ring,
            field,
            q,
            mode,
            gens,
            q_el,
            power_rel,
            stride,
            dim,
            residue,
            table: Vec::new(),
        };
        alg.build_table();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn index(&self, l: &[usize]) -> usize {
        l.iter().zip(&self.stride).map(|(a, s)| a * s).sum()
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<usize> {
        self.gens
            .iter()
            .map(|g| {
                let a = idx % g.nil;
                idx /= g.nil;
                a
            })
            .collect()
    }

    /// X^{l_1} ... (X_nu at the gap before position pos) ... X^{l_N}, normalised.
    fn insert(&self, mut a: Vec<usize>, mut c: u16, nu: usize, pos: usize, out: &mut BTreeMap<usize, u16>) {
        let r = &self.ring;
        if nu < pos {
            for beta in nu + 1..pos {
                c = r.mul(c, r.pow(self.q_el[beta][nu], a[beta] as u64));
            }
        } else {
            for beta in pos..nu {
                c = r.mul(c, r.pow(self.q_el[nu][beta], a[beta] as u64));
            }
        }
        if c == 0 {
            return;
        }
        a[nu] += 1;
        let g = &self.gens[nu];
        if a[nu] < g.nil {
            let e = out.entry(self.index(&a)).or_insert(0);
            *e = r.add(*e, c);
            return;
        }
        if g.acted {
            if self.mode == RelationMode::P2Model {
                a[nu] = 0;
                let c2 = r.mul(c, r.from_int(2));
                self.insert(a, c2, g.next, nu + 1, out);
            }
            return;
        }
        for k in 1..g.nil {
            let ck = r.mul(c, self.power_rel[nu][k]);
            if ck != 0 {
                a[nu] = k;
                let e = out.entry(self.index(&a)).or_insert(0);
                *e = r.add(*e, ck);
            }
        }
    }

    fn monomial_product(&self, x: usize, y: usize) -> Vec<(u32, u16)> {
        let n = self.gens.len();
        let mut terms = BTreeMap::new();
        terms.insert(x, self.ring.one);
        let b = self.exponents(y);
        for (gamma, &k) in b.iter().enumerate() {
            for _ in 0..k {
                let mut next = BTreeMap::new();
                for (&idx, &c) in &terms {
                    self.insert(self.exponents(idx), c, gamma, n, &mut next);
                }
                terms = next;
            }
        }
        terms.into_iter().filter(|&(_, c)| c != 0).map(|(i, c)| (i as u32, c)).collect()
    }

    fn build_table(&mut self) {
        let d = self.dim;
        let mut table = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                table.push(self.monomial_product(x, y));
            }
        }
        self.table = table;
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim]
    }

    pub fn one(&self) -> Elem {
        let mut v = self.zero();
        v[0] = self.ring.one;
        v
    }

    pub fn generator(&self, alpha: usize) -> Elem {
        let mut v = self.zero();
        v[self.stride[alpha]] = self.ring.one;
        v
    }

    pub fn monomial(&self, l: &[usize]) -> Elem {
        let mut v = self.zero();
        v[self.index(l)] = self.ring.one;
        v
    }

    pub fn add(&self, a: &[u16], b: &[u16]) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u16], b: &[u16]) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u16, a: &[u16]) -> Elem {
        a.iter().map(|&x| self.ring.mul(c, x)).collect()
    }

    pub fn is_zero(a: &[u16]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn multiply(&self, a: &[u16], b: &[u16]) -> Elem {
        let r = &self.ring;
        let d = self.dim;
        let mut out = vec![0u16; d];
        let bnz: Vec<usize> = (0..d).filter(|&j| b[j] != 0).collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.table[i * d..(i + 1) * d];
            for &j in &bnz {
                let c = r.mul(ai, b[j]);
                for &(k, t) in &row[j] {
                    out[k as usize] = r.add(out[k as usize], r.mul(c, t));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u16], k: usize) -> Elem {
        let mut out = self.one();
        for _ in 0..k {
            out = self.multiply(&out, a);
        }
        out
    }

    /// A generator of the i-th block that is acted on, i.e. lies in T.
    pub fn in_t(&self, alpha: usize) -> bool {
        self.gens[alpha].acted
    }

    /// Every monomial in the support has a positive exponent on an acted generator.
    pub fn t_ideal_member(&self, x: &[u16]) -> bool {
        x.iter().enumerate().all(|(idx, &c)| {
            c == 0 || {
                let l = self.exponents(idx);
                l.iter().zip(&self.gens).any(|(&a, g)| a > 0 && g.acted)
            }
        })
    }

    pub fn random_element(&self, rng: &mut impl Rng, augmentation_zero: bool) -> Elem {
        let mut v: Elem = (0..self.dim).map(|_| rng.gen_range(0..self.ring.size) as u16).collect();
        if augmentation_zero {
            v[0] = 0;
        }
        v
    }

    /// (ab)c = a(bc) on seeded random triples; returns the number of failures.
    pub fn associativity_failures(&self, seed: u64, triples: usize) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..triples)
            .filter(|_| {
                let a = self.random_element(&mut rng, false);
                let b = self.random_element(&mut rng, false);
                let c = self.random_element(&mut rng, false);
                self.multiply(&self.multiply(&a, &b), &c) != self.multiply(&a, &self.multiply(&b, &c))
            })
            .count()
    }

    /// X_{ij}^{p^{n_i}} = 0 for every generator.
    pub fn strict_nilpotency_holds(&self) -> bool {
        (0..self.gens.len()).all(|a| Self::is_zero(&self.pow(&self.generator(a), self.gens[a].nil)))
    }

    /// Span of the powers of the generator of an unacted block is closed under products.
    pub fn subalgebra_closed(&self, alpha: usize) -> bool {
        let nil = self.gens[alpha].nil;
        let s = self.stride[alpha];
        let allowed: Vec<usize> = (0..nil).map(|k| k * s).collect();
        (0..nil).all(|x| {
            (0..nil).all(|y| {
                self.table[allowed[x] * self.dim + allowed[y]]
                    .iter()
                    .all(|&(k, _)| allowed.contains(&(k as usize)))
            })
        })
    }

    /// Indices of generators spanning unacted blocks.
    pub fn unacted_generators(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&a| !self.gens[a].acted).collect()
    }

    /// Image of X_alpha^{nil} under the relations, given the images of all generators.
    fn power_relation_rhs(&self, alpha: usize, images: &[Elem]) -> Elem {
        let g = &self.gens[alpha];
        if g.acted {
            return match self.mode {
                RelationMode::Strict => self.zero(),
                RelationMode::P2Model => self.scale(self.ring.from_int(2), &images[g.next]),
            };
        }
        let mut out = self.zero();
        let mut pw = self.one();
        for k in 1..g.nil {
            pw = self.multiply(&pw, &images[alpha]);
            out = self.add(&out, &self.scale(self.power_rel[alpha][k], &pw));
        }
        out
    }

    /// The power relation of X_alpha holds for x alone (not for acted blocks in the p2-model).
    pub(crate) fn single_power_relation_holds(&self, alpha: usize, x: &[u16]) -> bool {
        let g = &self.gens[alpha];
        assert!(!(g.acted && self.mode == RelationMode::P2Model));
        let mut images = vec![self.zero(); self.gens.len()];
        images[alpha] = x.to_vec();
        self.pow(x, g.nil) == self.power_relation_rhs(alpha, &images)
    }

    /// Which defining relation fails on the given images, if any.
    pub fn relation_failure(&self, images: &[Elem]) -> Option<String> {
        let n = self.gens.len();
        for a in 0..n {
            for b in a + 1..n {
                if let Some(f) = self.pair_relation_failure(images, a, b) {
                    return Some(f);
                }
            }
            if let Some(f) = self.power_relation_failure(images, a) {
                return Some(f);
            }
        }
        None
    }

    pub(crate) fn pair_relation_failure(&self, images: &[Elem], a: usize, b: usize) -> Option<String> {
        let lhs = self.multiply(&images[a], &images[b]);
        let rhs = self.scale(self.q_el[a][b], &self.multiply(&images[b], &images[a]));
        (lhs != rhs).then(|| format!("X{a} X{b} = q X{b} X{a}"))
    }

    pub(crate) fn power_relation_failure(&self, images: &[Elem], a: usize) -> Option<String> {
        let lhs = self.pow(&images[a], self.gens[a].nil);
        (lhs != self.power_relation_rhs(a, images)).then(|| format!("power relation of X{a}"))
    }

    /// Coefficients of the X_beta in each image, reduced to the residue field.
    pub(crate) fn linear_rank(&self, images: &[Elem]) -> usize {
        let f = &self.field;
        let mut m: Vec<Vec<u16>> = images
            .iter()
            .map(|im| self.stride.iter().map(|&s| self.residue[im[s] as usize]).collect())
            .collect();
        field_rank(f, &mut m)
    }

    pub fn check_endomorphism(&self, images: &[Elem]) -> WbResult<EndoClass> {
        if images.len() != self.gens.len() {
            return Err(WbError::spec(format!(
                "expected {} images, got {}",
                self.gens.len(),
                images.len()
            )));
        }
        if images.iter().any(|im| im.len() != self.dim || im[0] != 0) {
            return Err(WbError::spec("images must be augmentation-zero elements"));
        }
        if let Some(relation) = self.relation_failure(images) {
            return Ok(EndoClass::NotAHomomorphism { relation });
        }
        Ok(if self.linear_rank(images) == self.gens.len() {
            EndoClass::Automorphism
        } else {
            EndoClass::NotInvertible
        })
    }

    /// Left and right multiplication by a, as matrices acting on coefficient vectors.
    pub(crate) fn mult_matrices(&self, a: &[u16]) -> (Vec<Vec<u16>>, Vec<Vec<u16>>) {
        let d = self.dim;
        let mut left = vec![vec![0u16; d]; d];
        let mut right = vec![vec![0u16; d]; d];
        let r = &self.ring;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for j in 0..d {
                for &(k, t) in &self.table[i * d + j] {
                    let c = r.mul(ai, t);
                    left[k as usize][j] = r.add(left[k as usize][j], c);
                }
                for &(k, t) in &self.table[j * d + i] {
                    let c = r.mul(ai, t);
                    right[k as usize][j] = r.add(right[k as usize][j], c);
                }
            }
        }
        (left, right)
    }

    pub(crate) fn q_entry(&self, a: usize, b: usize) -> u16 {
        self.q_el[a][b]
    }

    pub(crate) fn nil(&self, a: usize) -> usize {
        self.gens[a].nil
    }

    pub(crate) fn stride(&self, a: usize) -> usize {
        self.stride[a]
    }

    /// Inverse of a unit c(1 + y), y in the radical.
    pub fn unit_inverse(&self, u: &[u16]) -> Option<Elem> {
        let c = self.ring.inv(u[0])?;
        let y = {
            let mut y = self.scale(c, u);
            y[0] = self.ring.sub(y[0], self.ring.one);
            y
        };
        let mut inv = self.one();
        let mut term = self.one();
        let neg_y = self.scale(self.ring.neg(self.ring.one), &y);
        loop {
            term = self.multiply(&term, &neg_y);
            if Self::is_zero(&term) {
                break;
            }
            inv = self.add(&inv, &term);
        }
        Some(self.scale(c, &inv))
    }
}

/// Rank over a finite field given by lookup tables; m is overwritten.
pub(crate) fn field_rank(f: &SmallRing, m: &mut [Vec<u16>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][c]).expect("field element");
        let prow: Vec<u16> = m[rank].iter().map(|&x| f.mul(x, inv)).collect();
        m[rank] = prow.clone();
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                for (x, &y) in m[r].iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel of m over a field given by lookup tables.
pub(crate) fn field_nullspace(f: &SmallRing, m: &[Vec<u16>], cols: usize) -> Vec<Vec<u16>> {
    let mut a: Vec<Vec<u16>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = f.inv(a[rank][c]).expect("field element");
        let prow: Vec<u16> = a[rank].iter().map(|&x| f.mul(x, inv)).collect();
        a[rank] = prow.clone();
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let k = a[r][c];
                for (x, &y) in a[r].iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u16; cols];
            v[fc] = f.one;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[r][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::QBlock;
    use super::*;

    pub(crate) fn q8_algebra() -> QCIAlgebra {
        let blocks = vec![QBlock { n: 1, m: 1, acted: true }, QBlock { n: 1, m: 1, acted: true }];
        let q = QMatrix::new(3, blocks, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        QCIAlgebra::strict(q).unwrap()
    }

    #[test]
    fn basis_and_anticommutation() {
        let a = q8_algebra();
        assert_eq!(a.dim(), 9);
        let x1 = a.generator(0);
        let x2 = a.generator(1);
        let one = a.one();
        assert_eq!(a.multiply(&one, &x1), x1);
        let x12 = a.multiply(&x1, &x2);
        let x21 = a.multiply(&x2, &x1);
        assert_eq!(x12, a.scale(a.ring.from_int(-1), &x21));
        assert_eq!(x12, a.monomial(&[1, 1]));
        assert!(QCIAlgebra::is_zero(&a.pow(&x1, 3)));
        assert!(!QCIAlgebra::is_zero(&a.pow(&x1, 2)));
        assert!(a.strict_nilpotency_holds());
        assert_eq!(a.associativity_failures(7, 200), 0);
    }

    #[test]
    fn endomorphism_classification() {
        let a = q8_algebra();
        let x1 = a.generator(0);
        let x2 = a.generator(1);
        assert_eq!(a.check_endomorphism(&[x1.clone(), x2.clone()]).unwrap(), EndoClass::Automorphism);
        assert_eq!(a.check_endomorphism(&[x2.clone(), x1.clone()]).unwrap(), EndoClass::Automorphism);
        let two = a.ring.from_int(2);
        assert_eq!(
            a.check_endomorphism(&[a.scale(two, &x1), a.scale(two, &x2)]).unwrap(),
            EndoClass::Automorphism
        );
        assert!(matches!(
            a.check_endomorphism(&[a.add(&x1, &x2), x2.clone()]).unwrap(),
            EndoClass::NotAHomomorphism { .. }
        ));
        assert_eq!(
            a.check_endomorphism(&[x1.clone(), a.zero()]).unwrap(),
            EndoClass::NotInvertible
        );
        assert!(a.check_endomorphism(&[a.one(), x2]).is_err());
    }

    #[test]
    fn t_membership() {
        let blocks = vec![QBlock { n: 1, m: 1, acted: true }, QBlock { n: 1, m: 1, acted: false }];
        let q = QMatrix::new(3, blocks, 1, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let a = QCIAlgebra::strict(q).unwrap();
        assert!(a.t_ideal_member(&a.generator(0)));
        assert!(!a.t_ideal_member(&a.one()));
        assert!(!a.t_ideal_member(&a.generator(1)));
        assert!(a.t_ideal_member(&a.multiply(&a.generator(1), &a.generator(0))));
        assert!(a.t_ideal_member(&a.zero()));
        assert!(a.subalgebra_closed(1));
    }

    #[test]
    fn unacted_block_uses_group_ring_relation() {
        // C_4 with trivial action over Z/4: X = x - 1 satisfies (1+X)^4 = 1
        let q = QMatrix::new(2, vec![QBlock { n: 2, m: 1, acted: false }], 1, vec![vec![0]]).unwrap();
        let a = QCIAlgebra::new(q, RelationMode::P2Model, 2).unwrap();
        assert_eq!(a.dim(), 4);
        let x = a.generator(0);
        let u = a.add(&a.one(), &x);
        assert_eq!(a.pow(&u, 4), a.one());
        assert_ne!(a.pow(&u, 2), a.one());
        assert!(a.subalgebra_closed(0));
        assert_eq!(a.associativity_failures(3, 200), 0);
    }

    #[test]
    fn p2_model_relation() {
        let blocks = vec![QBlock { n: 1, m: 2, acted: true }, QBlock { n: 1, m: 2, acted: true }];
        let q = QMatrix::new(
            2,
            blocks,
            3,
            vec![vec![0, 0, 1, 2], vec![0, 0, 2, 1], vec![2, 1, 0, 0], vec![1, 2, 0, 0]],
        )
        .unwrap();
        let a = QCIAlgebra::p2_model(q).unwrap();
        assert_eq!(a.dim(), 16);
        assert_eq!(a.ring.size, 16);
        let x11 = a.generator(0);
        let x12 = a.generator(1);
        assert_eq!(a.multiply(&x11, &x11), a.scale(a.ring.from_int(2), &x12));
        assert_eq!(a.multiply(&x12, &x12), a.scale(a.ring.from_int(2), &x11));
        assert_eq!(a.associativity_failures(11, 300), 0);
        let ids: Vec<Elem> = (0..4).map(|i| a.generator(i)).collect();
        assert_eq!(a.check_endomorphism(&ids).unwrap(), EndoClass::Automorphism);
    }

    #[test]
    fn inner_automorphisms() {
        let a = q8_algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut u = a.random_element(&mut rng, false);
            u[0] = a.ring.one;
            let ui = a.unit_inverse(&u).unwrap();
            assert_eq!(a.multiply(&u, &ui), a.one());
            let imgs: Vec<Elem> = (0..2)
                .map(|i| a.multiply(&a.multiply(&u, &a.generator(i)), &ui))
                .collect();
            assert_eq!(a.check_endomorphism(&imgs).unwrap(), EndoClass::Automorphism);
        }
    }

    #[test]
    fn nullspace_small() {
        let f = SmallRing::new(GaloisRing::new(3, 1, 1)).unwrap();
        let m = vec![vec![1, 1, 0], vec![0, 0, 1]];
        let ns = field_nullspace(&f, &m, 3);
        assert_eq!(ns, vec![vec![2, 1, 0]]);
        let mut mm = m.clone();
        assert_eq!(field_rank(&f, &mut mm), 2);
    }
}
