//! Search for automorphisms of a q-commuting algebra that move a generator of T out of T.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{field_nullspace, Elem, EndoClass, QCIAlgebra, RelationMode};
use super::verify_q_properties;
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, Serialize)]
pub struct ScanConfig {
    /// Largest tuple space searched exhaustively.
    pub budget: u64,
    /// Samples drawn when the space is too large.
    pub samples: u64,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            budget: 1 << 26,
            samples: 100_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Sparse images (monomial index, coefficient) of each generator.
    pub images: Vec<Vec<(usize, u16)>>,
    /// A generator of T whose image left T.
    pub moved: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanReport {
    pub ring: String,
    pub generators: usize,
    pub tuple_space_log2: f64,
    pub exhaustive: bool,
    /// Tuples accounted for: the whole space when exhaustive, else the samples drawn.
    pub tuples_examined: u64,
    /// Tuples surviving pruning and classified in full.
    pub leaves_checked: u64,
    pub uniform_samples: u64,
    pub structured_samples: u64,
    pub homomorphisms: u64,
    pub automorphisms: u64,
    pub t_preserving: u64,
    pub coverage: f64,
    pub hypotheses_met: bool,
    pub hypothesis_failures: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    /// A counterexample while the q-matrix satisfies its hypotheses.
    pub fn falsified(&self) -> bool {
        self.hypotheses_met && !self.counterexamples.is_empty()
    }

    fn absorb(&mut self, o: Tally) {
        self.leaves_checked += o.leaves;
        self.homomorphisms += o.homs;
        self.automorphisms += o.autos;
        self.t_preserving += o.t_ok;
        self.counterexamples.extend(o.counter);
    }
}

#[derive(Default)]
struct Tally {
    leaves: u64,
    homs: u64,
    autos: u64,
    t_ok: u64,
    counter: Vec<Counterexample>,
}

const MAX_COUNTEREXAMPLES: usize = 16;

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.leaves += o.leaves;
        self.homs += o.homs;
        self.autos += o.autos;
        self.t_ok += o.t_ok;
        for c in o.counter {
            if self.counter.len() < MAX_COUNTEREXAMPLES {
                self.counter.push(c);
            }
        }
        self
    }

    fn record(&mut self, alg: &QCIAlgebra, images: &[Elem]) -> WbResult<()> {
        self.leaves += 1;
        let class = alg.check_endomorphism(images)?;
        self.classify(alg, images, class);
        Ok(())
    }

    /// A leaf of the exhaustive search: relations hold and the linear part is
    /// invertible by construction. Every SPOT_CHECK-th leaf is re-verified in full.
    fn record_constructed(&mut self, alg: &QCIAlgebra, images: &[Elem]) -> WbResult<()> {
        if self.leaves % SPOT_CHECK == 0 {
            let class = alg.check_endomorphism(images)?;
            if class != EndoClass::Automorphism {
                return Err(WbError::verification(
                    "coeff",
                    format!("pruned search produced a non-automorphism: {class:?}"),
                ));
            }
        }
        self.leaves += 1;
        self.classify(alg, images, EndoClass::Automorphism);
        Ok(())
    }

    fn classify(&mut self, alg: &QCIAlgebra, images: &[Elem], class: EndoClass) {
        match class {
            EndoClass::NotAHomomorphism { .. } => {}
            EndoClass::NotInvertible => self.homs += 1,
            EndoClass::Automorphism => {
                self.homs += 1;
                self.autos += 1;
                let moved = (0..images.len()).find(|&a| alg.in_t(a) && !alg.t_ideal_member(&images[a]));
                match moved {
                    None => self.t_ok += 1,
                    Some(moved) if self.counter.len() < MAX_COUNTEREXAMPLES => {
                        self.counter.push(Counterexample {
                            images: images
                                .iter()
                                .map(|im| im.iter().enumerate().filter(|&(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect())
                                .collect(),
                            moved,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
}

const SPOT_CHECK: u64 = 256;

pub fn t_invariance_scan(alg: &QCIAlgebra, cfg: &ScanConfig) -> WbResult<ScanReport> {
    let q_rep = verify_q_properties(&alg.q);
    let n = alg.generator_count();
    let size = alg.ring.size as f64;
    let per_gen = size.log2() * (alg.dim() - 1) as f64;
    let log2 = per_gen * n as f64;
    let g = &alg.ring.ring;
    let mut rep = ScanReport {
        ring: format!("GR({},{},{})", g.p, g.m, g.d),
        generators: n,
        tuple_space_log2: log2,
        hypotheses_met: q_rep.all_pass(),
        hypothesis_failures: q_rep
            .checks
            .iter()
            .filter(|c| !c.pass)
            .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
            .collect(),
        ..Default::default()
    };
    let fits = log2 <= (cfg.budget.max(1) as f64).log2() + 1e-9;
    if fits && alg.ring.m() == 1 && alg.mode == RelationMode::Strict {
        let t = exhaustive(alg)?;
        rep.exhaustive = true;
        rep.tuples_examined = (2f64.powf(log2)).round() as u64;
        rep.coverage = 1.0;
        rep.absorb(t);
    } else {
        let t = sampled(alg, cfg)?;
        rep.uniform_samples = cfg.samples / 2;
        rep.structured_samples = cfg.samples - cfg.samples / 2;
        rep.tuples_examined = cfg.samples;
        rep.coverage = (cfg.samples as f64).log2() - log2;
        rep.coverage = 2f64.powf(rep.coverage).min(1.0);
        rep.absorb(t);
    }
    Ok(rep)
}

/// All augmentation-zero elements x of a field-coefficient algebra.
fn all_augmentation_zero(alg: &QCIAlgebra) -> Vec<Elem> {
    let q = alg.ring.size;
    let d = alg.dim();
    let total = q.pow((d - 1) as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0u16; d];
            for slot in v.iter_mut().skip(1) {
                *slot = (k % q) as u16;
                k /= q;
            }
            v
        })
        .collect()
}

struct Exhaustive<'a> {
    alg: &'a QCIAlgebra,
    /// Elements satisfying the power relation of each generator on their own.
    cands: Vec<HashSet<Elem>>,
    cand_lists: Vec<Vec<Elem>>,
}

impl Exhaustive<'_> {
    fn linear_independent(&self, images: &[Elem]) -> bool {
        self.alg.linear_rank(images) == images.len()
    }

    /// Candidates for the next image, given the assigned ones, satisfying every
    /// q-commutation relation with them.
    fn next_candidates(&self, assigned: &[Elem]) -> Vec<Elem> {
        let alg = self.alg;
        let k = assigned.len();
        if k == 0 {
            return self.cand_lists[0].clone();
        }
        let d = alg.dim();
        let f = &alg.ring;
        let mut rows: Vec<Vec<u16>> = Vec::new();
        for (j, phi) in assigned.iter().enumerate() {
            let (left, right) = alg.mult_matrices(phi);
            let q = alg.q_entry(j, k);
            for r in 0..d {
                rows.push((1..d).map(|c| f.sub(left[r][c], f.mul(q, right[r][c]))).collect());
            }
        }
        let basis = field_nullspace(f, &rows, d - 1);
        let qsize = f.size;
        let count = qsize.pow(basis.len() as u32);
        let mut out = Vec::new();
        for mut idx in 0..count {
            let mut v = vec![0u16; d];
            for b in &basis {
                let c = (idx % qsize) as u16;
                idx /= qsize;
                if c != 0 {
                    for (slot, &x) in v.iter_mut().skip(1).zip(b) {
                        *slot = f.add(*slot, f.mul(c, x));
                    }
                }
            }
            if self.cands[k].contains(&v) {
                out.push(v);
            }
        }
        out
    }

    fn descend(&self, assigned: &mut Vec<Elem>, tally: &mut Tally) -> WbResult<()> {
        let n = self.alg.generator_count();
        if assigned.len() == n {
            return tally.record_constructed(self.alg, assigned);
        }
        for c in self.next_candidates(assigned) {
            assigned.push(c);
            if self.linear_independent(assigned) {
                self.descend(assigned, tally)?;
            }
            assigned.pop();
        }
        Ok(())
    }
}

fn exhaustive(alg: &QCIAlgebra) -> WbResult<Tally> {
    let all = all_augmentation_zero(alg);
    let n = alg.generator_count();
    let mut cand_lists = Vec::new();
    for a in 0..n {
        let list: Vec<Elem> = all
            .par_iter()
            .filter(|x| alg.single_power_relation_holds(a, x))
            .cloned()
            .collect();
        cand_lists.push(list);
    }
    let cands = cand_lists.iter().map(|l| l.iter().cloned().collect()).collect();
    let ex = Exhaustive { alg, cands, cand_lists };
    let first = ex.next_candidates(&[]);
    let parts: Vec<WbResult<Tally>> = first
        .par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            let mut assigned = vec![c.clone()];
            if ex.linear_independent(&assigned) {
                ex.descend(&mut assigned, &mut tally)?;
            }
            Ok(tally)
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

const CHUNK: u64 = 1000;

fn random_unit(alg: &QCIAlgebra, rng: &mut ChaCha8Rng) -> u16 {
    loop {
        let c = rng.gen_range(0..alg.ring.size) as u16;
        if alg.ring.inv(c).is_some() {
            return c;
        }
    }
}

/// X_a -> c_a X_{pi(a)} with pi preserving the nilpotency index.
fn permute_scale(alg: &QCIAlgebra, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let n = alg.generator_count();
    let mut pi: Vec<usize> = (0..n).collect();
    let mut nils: Vec<usize> = (0..n).map(|a| alg.nil(a)).collect();
    nils.sort_unstable();
    nils.dedup();
    for nil in nils {
        let pos: Vec<usize> = (0..n).filter(|&a| alg.nil(a) == nil).collect();
        let mut shuffled = pos.clone();
        shuffled.shuffle(rng);
        for (&a, &b) in pos.iter().zip(&shuffled) {
            pi[a] = b;
        }
    }
    (0..n)
        .map(|a| {
            let u = random_unit(alg, rng);
            alg.scale(u, &alg.generator(pi[a]))
        })
        .collect()
}

fn random_in_square(alg: &QCIAlgebra, rng: &mut ChaCha8Rng) -> Elem {
    let mut v = alg.zero();
    for (idx, slot) in v.iter_mut().enumerate() {
        if alg.exponents(idx).iter().sum::<usize>() >= 2 && rng.gen_bool(0.3) {
            *slot = rng.gen_range(0..alg.ring.size) as u16;
        }
    }
    v
}

fn conjugate(alg: &QCIAlgebra, images: &[Elem], rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let mut u = alg.random_element(rng, false);
    u[0] = random_unit(alg, rng);
    let ui = alg.unit_inverse(&u).expect("unit");
    images.iter().map(|x| alg.multiply(&alg.multiply(&u, x), &ui)).collect()
}

fn structured_sample(alg: &QCIAlgebra, rng: &mut ChaCha8Rng, family: u64) -> Vec<Elem> {
    let n = alg.generator_count();
    match family {
        0 => permute_scale(alg, rng),
        1 => {
            let mut im = permute_scale(alg, rng);
            let a = rng.gen_range(0..n);
            im[a] = alg.add(&im[a], &random_in_square(alg, rng));
            im
        }
        2 => {
            let im = permute_scale(alg, rng);
            conjugate(alg, &im, rng)
        }
        3 => {
            let mut im: Vec<Elem> = (0..n).map(|a| alg.generator(a)).collect();
            if n > 1 {
                let t_gens: Vec<usize> = (0..n).filter(|&a| alg.in_t(a)).collect();
                let a = if t_gens.is_empty() { rng.gen_range(0..n) } else { *t_gens.choose(rng).unwrap() };
                let mut b = rng.gen_range(0..n);
                while b == a {
                    b = rng.gen_range(0..n);
                }
                let c = random_unit(alg, rng);
                im[a] = alg.add(&im[a], &alg.scale(c, &alg.generator(b)));
            }
            if rng.gen_bool(0.5) {
                im = conjugate(alg, &im, rng);
            }
            im
        }
        _ => (0..n)
            .map(|_| {
                let mut v = alg.zero();
                for b in 0..n {
                    v[alg.stride(b)] = rng.gen_range(0..alg.ring.size) as u16;
                }
                v
            })
            .collect(),
    }
}

fn sampled(alg: &QCIAlgebra, cfg: &ScanConfig) -> WbResult<Tally> {
    let half = cfg.samples / 2;
    let chunks = cfg.samples.div_ceil(CHUNK);
    let n = alg.generator_count();
    let parts: Vec<WbResult<Tally>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(c));
            let mut tally = Tally::default();
            for s in c * CHUNK..((c + 1) * CHUNK).min(cfg.samples) {
                let images: Vec<Elem> = if s < half {
                    (0..n).map(|_| alg.random_element(&mut rng, true)).collect()
                } else {
                    let mut im = structured_sample(alg, &mut rng, s % 5);
                    for x in im.iter_mut() {
                        x[0] = 0;
                    }
                    im
                };
                tally.record(alg, &images)?;
            }
            Ok(tally)
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::{QBlock, QMatrix};
    use super::*;

    fn two_gen(t: usize, exps: Vec<Vec<u64>>) -> QCIAlgebra {
        let blocks = (0..2).map(|i| QBlock { n: 1, m: 1, acted: i < t }).collect();
        QCIAlgebra::strict(QMatrix::new(3, blocks, 2, exps).unwrap()).unwrap()
    }

    #[test]
    fn exhaustive_q8_instance() {
        let alg = two_gen(2, vec![vec![0, 1], vec![1, 0]]);
        let rep = t_invariance_scan(&alg, &ScanConfig::default()).unwrap();
        assert!(rep.exhaustive);
        assert_eq!(rep.tuples_examined, 3u64.pow(16));
        assert!(rep.automorphisms > 0);
        assert_eq!(rep.automorphisms, rep.t_preserving);
        assert!(rep.counterexamples.is_empty());
        assert!(rep.hypotheses_met);
    }

    #[test]
    fn exhaustive_count_matches_brute_force_on_small_instance() {
        // one generator, X^3 = 0 over F_3: automorphisms are X -> aX + bX^2, a != 0
        let q = QMatrix::new(3, vec![QBlock { n: 1, m: 1, acted: true }], 2, vec![vec![0]]).unwrap();
        let alg = QCIAlgebra::strict(q).unwrap();
        let rep = t_invariance_scan(&alg, &ScanConfig::default()).unwrap();
        assert_eq!(rep.automorphisms, 6);
        let mut brute = 0;
        for a in 0..3u16 {
            for b in 0..3u16 {
                let im = vec![0, a, b];
                if alg.check_endomorphism(&[im]).unwrap() == EndoClass::Automorphism {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 6);
    }

    #[test]
    fn mixed_instance_without_hypotheses() {
        // one acted and one unacted generator with q = -1 between them: 3d fails,
        // and the swap moves X_1 out of T
        let alg = two_gen(1, vec![vec![0, 1], vec![1, 0]]);
        let rep = t_invariance_scan(&alg, &ScanConfig::default()).unwrap();
        assert!(rep.exhaustive);
        assert!(!rep.hypotheses_met);
        assert!(!rep.counterexamples.is_empty());
        assert!(!rep.falsified());
        let commutative = two_gen(1, vec![vec![0, 0], vec![0, 0]]);
        let rep = t_invariance_scan(&commutative, &ScanConfig::default()).unwrap();
        assert!(!rep.hypotheses_met);
        assert!(!rep.falsified());
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let alg = two_gen(2, vec![vec![0, 1], vec![1, 0]]);
        let cfg = ScanConfig {
            budget: 1000,
            samples: 3000,
            seed: 9,
        };
        let a = t_invariance_scan(&alg, &cfg).unwrap();
        let b = t_invariance_scan(&alg, &cfg).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a.automorphisms, b.automorphisms);
        assert!(a.automorphisms > 0);
        assert!(a.counterexamples.is_empty());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
