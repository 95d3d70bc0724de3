//! Report records for each analysis and the catalog-wide verification run.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::group_algebra::{verify_tech, TechSummary};
use crate::abelian::AbelianPGroup;
use crate::action::decompose::{brute_force_factor_types, decompose, factor_types};
use crate::action::eigen::{check_free_on_quotient, check_jj2_intertwining, eigen_orbit, EigenOrbit};
use crate::action::{fixed_and_commutator, fixed_char_exists, Mat, PAction};
use crate::catalog::{action_catalog, block_catalog};
use crate::char_theory::block::{det, is_p_power};
use crate::char_theory::{BlockCharacters, BrauerCharacter};
use crate::coeff_ring::product_identity;
use crate::error::{WbError, WbResult};
use crate::group_build::BlockSpec;
use crate::isometry::{check_d1kernel, check_d2kernel, enumerate_self_isometries, morita_checks, MoritaSummary, SignedBijection};
use crate::picard_report::{picard_report, PicardStructure};
use crate::qci::{compute_q_matrix, t_invariance_scan, verify_q_properties, QCIAlgebra, QComputation, QReport, ScanConfig, ScanReport};

/// Factor decompositions are cross-checked by exhaustive search up to this order.
pub const BRUTE_FORCE_ORDER: u64 = 16;
/// The J/J^2 intertwining check builds a |P|-dimensional basis.
const JJ2_ORDER: u64 = 256;
pub const ASSOCIATIVITY_TRIPLES: usize = 1000;

#[derive(Debug, Clone, Serialize)]
pub struct Options {
    pub seed: u64,
    pub max_irr: usize,
    pub samples: u64,
    pub budget: u64,
    pub tech_samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        let scan = ScanConfig::default();
        Options {
            seed: 0,
            max_irr: crate::isometry::DEFAULT_MAX_IRR,
            samples: scan.samples,
            budget: scan.budget,
            tech_samples: 500,
        }
    }
}

fn cyclic_type(g: &AbelianPGroup) -> Vec<u64> {
    let mut m: Vec<u64> = g.moduli().into_iter().filter(|&x| x > 1).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

fn subgroup_type(g: &AbelianPGroup, s: &crate::abelian::Subgroup) -> Vec<u64> {
    cyclic_type(&AbelianPGroup::new(g.p, g.subgroup_type(s)))
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub group_type: Vec<u64>,
    pub nontrivial: bool,
    pub homocyclic: bool,
    pub matrices: Vec<Mat>,
    pub eigen: Option<EigenOrbit>,
    pub free_on_frattini_quotient: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub p: u64,
    pub group_type: Vec<u64>,
    pub h_order: usize,
    pub fixed_type: Vec<u64>,
    pub commutator_type: Vec<u64>,
    pub t: usize,
    pub factors: Vec<FactorReport>,
    pub fixed_char_exists: bool,
    pub brute_force_agrees: Option<bool>,
    pub jj2_intertwining: Option<bool>,
}

/// Runs every action check; falsified statements come back as errors.
pub fn action_report(act: &PAction) -> WbResult<ActionReport> {
    let g = &act.group;
    let fc = fixed_and_commutator(act)?;
    let dec = decompose(act)?;
    let mut factors = Vec::new();
    for f in &dec.factors {
        let fa = f.action();
        let homocyclic = f.group.is_homocyclic();
        if f.nontrivial && !homocyclic {
            return Err(WbError::verification("ind", format!("factor of type {:?} is not homocyclic", f.group.moduli())));
        }
        if !f.nontrivial && f.group.rank() != 1 {
            return Err(WbError::verification("ind", "trivially acted factor is not cyclic"));
        }
        let (eigen, free) = if f.nontrivial {
            let e = eigen_orbit(&fa)?;
            check_free_on_quotient(&fa)?;
            (Some(e), true)
        } else {
            (None, false)
        };
        factors.push(FactorReport {
            group_type: cyclic_type(&f.group),
            nontrivial: f.nontrivial,
            homocyclic,
            matrices: f.matrices.clone(),
            eigen,
            free_on_frattini_quotient: free,
        });
    }
    let fixed = fixed_char_exists(act)?;
    if fixed == fc.fixed.is_trivial() {
        return Err(WbError::verification(
            "actirr",
            format!("fixed nontrivial character exists = {fixed}, |C_P(H)| = {}", fc.fixed.order()),
        ));
    }
    let brute_force_agrees = (g.order() <= BRUTE_FORCE_ORDER).then(|| brute_force_factor_types(act) == factor_types(&dec));
    if brute_force_agrees == Some(false) {
        return Err(WbError::verification("ind", "decomposition disagrees with exhaustive search"));
    }
    let jj2_intertwining = if g.order() <= JJ2_ORDER {
        check_jj2_intertwining(act)?;
        Some(true)
    } else {
        None
    };
    Ok(ActionReport {
        p: g.p,
        group_type: cyclic_type(g),
        h_order: act.order(),
        fixed_type: subgroup_type(g, &fc.fixed),
        commutator_type: subgroup_type(g, &fc.commutator),
        t: dec.t,
        factors,
        fixed_char_exists: fixed,
        brute_force_agrees,
        jj2_intertwining,
    })
}

impl ActionReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "P of type {:?} (p = {}), |H| = {}", self.group_type, self.p, self.h_order);
        let _ = writeln!(s, "[P,H] of type {:?}, C_P(H) of type {:?}", self.commutator_type, self.fixed_type);
        let _ = writeln!(s, "{} indecomposable factors, {} with nontrivial action", self.factors.len(), self.t);
        for (i, f) in self.factors.iter().enumerate() {
            let _ = write!(s, "  P_{}: {:?}", i + 1, f.group_type);
            if let Some(e) = &f.eigen {
                let _ = write!(s, ", |H| = {}, m = {}, eigenvalue exponents {:?} in F_{}^{}", e.h_order, e.m, e.orbit_exps, self.p, e.field_degree);
            } else {
                s.push_str(", trivial action");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "H fixes a nontrivial character of P: {}", self.fixed_char_exists);
        if let Some(b) = self.brute_force_agrees {
            let _ = writeln!(s, "exhaustive factor search agrees: {b}");
        }
        s
    }
}

/// A class-function value: conductor and exact coordinates in the power basis.
#[derive(Debug, Clone, Serialize)]
pub struct SerialValue {
    pub conductor: u64,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRecord {
    pub degree: i64,
    pub lambda: Vec<u64>,
    pub orbit_size: usize,
    pub chi_index: usize,
    pub values: Vec<SerialValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharactersReport {
    pub block: String,
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<i64>,
    pub sum_of_squares: i64,
    pub irr_b: Vec<CharacterRecord>,
    pub ibr: Vec<BrauerCharacter>,
    pub decomposition: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_det: String,
}

/// Structural checks on Irr(B); falsified statements come back as errors.
pub fn check_block(spec: &BlockSpec, block: &BlockCharacters) -> WbResult<()> {
    block.check_orthonormal()?;
    let sq: i64 = block.irr_b.iter().map(|c| c.degree * c.degree).sum();
    let want = spec.d.order() as i64 * spec.e.quotient_order() as i64;
    if sq != want {
        return Err(WbError::verification("charG", format!("sum of squared degrees {sq} != |D||L| = {want}")));
    }
    if block.dec.iter().flatten().any(|&x| x < 0) {
        return Err(WbError::verification("charG", "negative decomposition number"));
    }
    let dt = det(&block.cartan());
    if !is_p_power(&dt, spec.p) {
        return Err(WbError::verification("charG", format!("det(Cartan) = {dt} is not a power of p")));
    }
    block.check_factorization()?;
    block.weiss_subset()?;
    Ok(())
}

pub fn characters_report(spec: &BlockSpec, block: &BlockCharacters) -> CharactersReport {
    let classes = &block.g.classes;
    let irr_b = block
        .irr_b
        .iter()
        .map(|c| CharacterRecord {
            degree: c.degree,
            lambda: c.lambda.clone(),
            orbit_size: c.orbit_size,
            chi_index: c.chi_index,
            values: (0..classes.len())
                .map(|k| {
                    let v = c.values.value(k);
                    SerialValue {
                        conductor: v.conductor(),
                        coords: v.to_strings(),
                    }
                })
                .collect(),
        })
        .collect();
    CharactersReport {
        block: spec.name.clone(),
        group_order: classes.class_of.len(),
        class_sizes: classes.sizes.clone(),
        degrees: block.irr_b.iter().map(|c| c.degree).collect(),
        sum_of_squares: block.irr_b.iter().map(|c| c.degree * c.degree).sum(),
        irr_b,
        ibr: block.ibr(),
        decomposition: block.dec.clone(),
        cartan: block.cartan(),
        cartan_det: det(&block.cartan()).to_string(),
    }
}

impl CharactersReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "block {}: |G| = {}, {} classes", self.block, self.group_order, self.class_sizes.len());
        let _ = writeln!(s, "|Irr(B)| = {}, degrees {:?}, sum of squares {}", self.degrees.len(), self.degrees, self.sum_of_squares);
        let _ = writeln!(s, "|IBr(B)| = {}", self.ibr.len());
        s.push_str(&decomposition_text(&self.decomposition, &self.cartan, &self.cartan_det));
        s
    }
}

fn decomposition_text(dec: &[Vec<i64>], cartan: &[Vec<i64>], cdet: &str) -> String {
    let mut s = String::from("decomposition matrix:\n");
    for r in dec {
        let _ = writeln!(s, "  {r:?}");
    }
    s.push_str("Cartan matrix:\n");
    for r in cartan {
        let _ = writeln!(s, "  {r:?}");
    }
    let _ = writeln!(s, "det = {cdet}");
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub block: String,
    pub d1_type: Vec<u64>,
    pub d2_type: Vec<u64>,
    pub degrees: Vec<i64>,
    pub ibr_degrees: Vec<i64>,
    pub decomposition: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_det: String,
}

pub fn decomposition_report(spec: &BlockSpec, block: &BlockCharacters) -> WbResult<DecompositionReport> {
    let fc = fixed_and_commutator(&spec.l_action()?)?;
    Ok(DecompositionReport {
        block: spec.name.clone(),
        d1_type: subgroup_type(&spec.d, &fc.commutator),
        d2_type: subgroup_type(&spec.d, &fc.fixed),
        degrees: block.irr_b.iter().map(|c| c.degree).collect(),
        ibr_degrees: block.irr_e_phi.iter().map(|c| c.degree()).collect(),
        decomposition: block.dec.clone(),
        cartan: block.cartan(),
        cartan_det: det(&block.cartan()).to_string(),
    })
}

impl DecompositionReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "block {}: D_1 of type {:?}, D_2 of type {:?}", self.block, self.d1_type, self.d2_type);
        let _ = writeln!(s, "Irr(B) degrees {:?}, IBr(B) degrees {:?}", self.degrees, self.ibr_degrees);
        s.push_str(&decomposition_text(&self.decomposition, &self.cartan, &self.cartan_det));
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub model: String,
    pub ring: String,
    pub dim: usize,
    pub basis_matches_defect: bool,
    pub associativity_failures: usize,
    pub strict_nilpotency: Option<bool>,
    pub unacted_closed: Vec<bool>,
    pub scan: ScanReport,
}

impl AlgebraReport {
    fn pass(&self) -> bool {
        self.basis_matches_defect
            && self.associativity_failures == 0
            && self.strict_nilpotency != Some(false)
            && self.unacted_closed.iter().all(|&b| b)
            && !self.scan.falsified()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QciReport {
    pub block: String,
    pub labels: Vec<String>,
    /// q-entries as exponents of a primitive `modulus`-th root of unity.
    pub exponents: Vec<Vec<u64>>,
    pub modulus: u64,
    pub signs: Option<Vec<Vec<i64>>>,
    pub properties: QReport,
    pub computation: QComputation,
    pub algebras: Vec<AlgebraReport>,
}

fn algebra_report(model: &str, alg: &QCIAlgebra, d_order: u64, opts: &Options) -> WbResult<AlgebraReport> {
    let cfg = ScanConfig {
        budget: opts.budget,
        samples: opts.samples,
        seed: opts.seed,
    };
    let scan = t_invariance_scan(alg, &cfg)?;
    Ok(AlgebraReport {
        model: model.into(),
        ring: scan.ring.clone(),
        dim: alg.dim(),
        basis_matches_defect: alg.dim() as u64 == d_order,
        associativity_failures: alg.associativity_failures(opts.seed, ASSOCIATIVITY_TRIPLES),
        strict_nilpotency: (alg.mode == crate::qci::RelationMode::Strict).then(|| alg.strict_nilpotency_holds()),
        unacted_closed: alg.unacted_generators().into_iter().map(|a| alg.subalgebra_closed(a)).collect(),
        scan,
    })
}

/// q-matrix, its properties and the model algebras with their T-invariance scans.
pub fn qci_report(spec: &BlockSpec, opts: &Options) -> WbResult<QciReport> {
    let comp = compute_q_matrix(spec)?;
    let q = &comp.q;
    let properties = verify_q_properties(q);
    let d_order = spec.d.order();
    let mut algebras = Vec::new();
    if properties.get("3b").is_some_and(|c| c.pass) {
        algebras.push(algebra_report("strict", &QCIAlgebra::strict(q.clone())?, d_order, opts)?);
        if spec.p == 2 && q.blocks.iter().any(|b| b.acted) && q.blocks.iter().all(|b| !b.acted || b.n == 1) {
            algebras.push(algebra_report("p2", &QCIAlgebra::p2_model(q.clone())?, d_order, opts)?);
        }
    }
    let labels = q.labels().into_iter().map(|(i, j)| format!("X{}{}", i + 1, j + 1)).collect();
    Ok(QciReport {
        block: spec.name.clone(),
        labels,
        exponents: q.exps.clone(),
        modulus: q.modulus,
        signs: q.signs(),
        properties,
        algebras,
        computation: comp,
    })
}

impl QciReport {
    pub fn pass(&self) -> bool {
        self.algebras.iter().all(AlgebraReport::pass)
    }

    pub fn text(&self) -> String {
        let q = &self.computation.q;
        let mut s = String::new();
        let _ = writeln!(s, "block {}: generators {:?}", self.block, self.labels);
        s.push_str("q-matrix:\n");
        for a in 0..q.len() {
            let row: Vec<String> = (0..q.len()).map(|b| q.display(a, b)).collect();
            let _ = writeln!(s, "  [{}]", row.join(", "));
        }
        let _ = writeln!(s, "commutator and eigencharacter formulas agree on {} entries", self.computation.cross_checked);
        for c in &self.properties.checks {
            let _ = writeln!(s, "property {}: {}", c.name, if c.pass { "pass" } else { "fail" });
        }
        for a in &self.algebras {
            let sc = &a.scan;
            let _ = writeln!(
                s,
                "{} model over {}: dim {}, associativity failures {}, {} scan of {} tuples: {} automorphisms, {} preserve T, {} counterexamples",
                a.model,
                a.ring,
                a.dim,
                a.associativity_failures,
                if sc.exhaustive { "exhaustive" } else { "sampled" },
                sc.tuples_examined,
                sc.automorphisms,
                sc.t_preserving,
                sc.counterexamples.len()
            );
            if !sc.hypotheses_met {
                let _ = writeln!(s, "  q-matrix hypotheses not met: {:?}", sc.hypothesis_failures);
            }
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryVerdict {
    pub isometry: SignedBijection,
    pub sigma_br: Option<Vec<usize>>,
    pub d2kernel: Option<bool>,
    pub theta_trivial: Option<bool>,
    pub d1kernel: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometriesReport {
    pub block: String,
    pub irr_count: usize,
    pub candidate_space: String,
    pub candidates_checked: u64,
    pub group_order: usize,
    pub generators: Vec<SignedBijection>,
    pub summary: MoritaSummary,
    /// Kernel verdicts for the all-positive members.
    pub members: Vec<IsometryVerdict>,
}

pub fn isometries_report(spec: &BlockSpec, block: &BlockCharacters, max_irr: usize) -> WbResult<IsometriesReport> {
    let grp = enumerate_self_isometries(block, max_irr)?;
    let summary = morita_checks(block, &grp)?;
    let mut members = Vec::new();
    for iso in grp.elements.iter().filter(|i| i.all_positive()) {
        let sigma_br = match block.sigma_br(&iso.perm) {
            Ok(s) => Some(s),
            Err(WbError::NotBrauerCompatible(_)) => None,
            Err(e) => return Err(e),
        };
        let (d2kernel, theta_trivial, d1kernel) = if sigma_br.is_some() {
            match check_d2kernel(block, &iso.perm) {
                Ok(r) => (Some(true), Some(r.theta_trivial), Some(check_d1kernel(block, &iso.perm))),
                Err(WbError::Verification { .. }) => (Some(false), None, Some(check_d1kernel(block, &iso.perm))),
                Err(e) => return Err(e),
            }
        } else {
            (None, None, None)
        };
        members.push(IsometryVerdict {
            isometry: iso.clone(),
            sigma_br,
            d2kernel,
            theta_trivial,
            d1kernel,
        });
    }
    Ok(IsometriesReport {
        block: spec.name.clone(),
        irr_count: block.irr_b.len(),
        candidate_space: grp.candidate_space.clone(),
        candidates_checked: grp.candidates_checked,
        group_order: grp.order(),
        generators: grp.generators.clone(),
        summary,
        members,
    })
}

impl IsometriesReport {
    pub fn text(&self) -> String {
        let m = &self.summary;
        let mut s = String::new();
        let _ = writeln!(s, "block {}: |Irr(B)| = {}", self.block, self.irr_count);
        let _ = writeln!(s, "perfect self-isometries: {} ({} candidates checked, space {})", self.group_order, self.candidates_checked, self.candidate_space);
        let _ = writeln!(s, "contains +-Id: {}", m.contains_plus_minus_id);
        let _ = writeln!(
            s,
            "all-positive {}, admitting sigma_Br {}, D2kernel pass {}, D1kernel pass {}, violations {}",
            m.all_positive,
            m.admitting_sigma_br,
            m.d2kernel_pass,
            m.d1kernel_pass,
            m.violations.len()
        );
        for g in &self.generators {
            let _ = writeln!(s, "  generator perm {:?} signs {:?}", g.perm, g.signs);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub scope: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyReport {
    pub outcomes: Vec<Outcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.status == Status::Fail).count()
    }

    fn push(&mut self, scope: &str, check: &str, status: Status, detail: impl Into<String>) {
        self.outcomes.push(Outcome {
            scope: scope.into(),
            check: check.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Record a check result. Bound errors mean the check was skipped; any other
    /// error, or a false verdict, is a failure.
    fn record(&mut self, scope: &str, check: &str, r: WbResult<(bool, String)>) {
        match r {
            Ok((true, d)) => self.push(scope, check, Status::Pass, d),
            Ok((false, d)) => self.push(scope, check, Status::Fail, d),
            Err(e @ WbError::BoundExceeded { .. }) => self.push(scope, check, Status::Skipped, e.to_string()),
            Err(e) => self.push(scope, check, Status::Fail, e.to_string()),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let st = match o.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let _ = writeln!(s, "{st} {} / {}: {}", o.scope, o.check, o.detail);
        }
        let _ = writeln!(s, "{} checks, {} failures", self.outcomes.len(), self.failures());
        s
    }
}

pub fn tech_check(g: &AbelianPGroup, opts: &Options) -> WbResult<TechSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ g.order());
    verify_tech(g, opts.tech_samples, &mut rng)
}

/// Checks on one block spec: characters, action, q-matrix and scans, isometries, Picard record.
pub fn verify_block(rep: &mut VerifyReport, spec: &BlockSpec, opts: &Options) {
    let scope = spec.name.as_str();
    rep.record(scope, "action", spec.l_action().and_then(|a| action_report(&a)).map(|a| (true, format!("t = {}", a.t))));
    let block = match BlockCharacters::compute(spec) {
        Ok(b) => b,
        Err(e) => {
            rep.record(scope, "characters", Err(e));
            return;
        }
    };
    rep.record(
        scope,
        "characters",
        check_block(spec, &block).map(|_| (true, format!("|Irr(B)| = {}, |IBr(B)| = {}", block.irr_b.len(), block.irr_e_phi.len()))),
    );
    rep.record(scope, "tech", tech_check(&spec.d, opts).map(|t| (true, format!("{} samples, n = {}", t.samples, t.n))));
    if spec.one_simple_module() {
        rep.record(
            scope,
            "qci",
            qci_report(spec, opts).map(|q| {
                let d = q
                    .algebras
                    .iter()
                    .map(|a| format!("{}: {} tuples, {} automorphisms", a.model, a.scan.tuples_examined, a.scan.automorphisms))
                    .collect::<Vec<_>>()
                    .join("; ");
                (q.pass(), d)
            }),
        );
    } else {
        rep.push(scope, "qci", Status::Skipped, "block has more than one simple module");
    }
    if block.irr_b.len() <= opts.max_irr {
        rep.record(
            scope,
            "isometries",
            enumerate_self_isometries(&block, opts.max_irr)
                .and_then(|g| morita_checks(&block, &g))
                .map(|m| {
                    let ok = m.contains_plus_minus_id && m.violations.is_empty();
                    (ok, format!("order {}, {} Morita-compatible, violations {:?}", m.group_order, m.morita_compatible, m.violations))
                }),
        );
    } else {
        rep.push(scope, "isometries", Status::Skipped, format!("|Irr(B)| = {} above bound {}", block.irr_b.len(), opts.max_irr));
    }
    rep.record(
        scope,
        "picard",
        picard_report(spec, &block, opts.max_irr).map(|p: PicardStructure| {
            let ok = p.consistent() && (!p.d2_type.is_empty() || p.annotations.iter().any(|a| a.starts_with("Pic = T-factor")));
            (ok, format!("linear factor order {}", p.linear_factor.order))
        }),
    );
}

/// Every check across the built-in catalog, plus an optional extra spec.
pub fn verify_all(extra: Option<&BlockSpec>, opts: &Options) -> VerifyReport {
    let mut rep = VerifyReport::default();
    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let v = product_identity(p, n);
        rep.record("cyclotomic", &format!("product identity p = {p}, n = {n}"), Ok((v.as_int() == Some(p as i64), String::new())));
    }
    for a in action_catalog() {
        rep.record(a.name, "action", a.build().and_then(|act| action_report(&act)).map(|r| (true, format!("t = {}", r.t))));
        let g = AbelianPGroup::new(a.p, a.orders.clone());
        rep.record(a.name, "tech", tech_check(&g, opts).map(|t| (true, format!("{} samples, n = {}", t.samples, t.n))));
    }
    let mut specs: Vec<WbResult<BlockSpec>> = block_catalog().into_iter().map(BlockSpec::from_file).collect();
    if let Some(s) = extra {
        specs.push(Ok(s.clone()));
    }
    for s in specs {
        match s {
            Ok(spec) => verify_block(&mut rep, &spec, opts),
            Err(e) => rep.record("catalog", "spec", Err(e)),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Q8_C3SQ;

    #[test]
    fn q8_reports() {
        let spec = BlockSpec::from_json(Q8_C3SQ).unwrap();
        let block = BlockCharacters::compute(&spec).unwrap();
        check_block(&spec, &block).unwrap();
        let c = characters_report(&spec, &block);
        let mut d = c.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![2, 2, 2, 2, 2, 4]);
        assert_eq!(c.cartan, vec![vec![9]]);
        let a = action_report(&spec.l_action().unwrap()).unwrap();
        assert_eq!(a.fixed_type, Vec::<u64>::new());
        assert_eq!(a.t, 2);
        let iso = isometries_report(&spec, &block, 8).unwrap();
        assert!(iso.summary.contains_plus_minus_id);
        assert!(iso.summary.violations.is_empty());
        let j1 = serde_json::to_string(&iso).unwrap();
        let j2 = serde_json::to_string(&isometries_report(&spec, &block, 8).unwrap()).unwrap();
        assert_eq!(j1, j2);
    }

    #[test]
    fn qci_report_sampled_small() {
        let spec = BlockSpec::from_json(crate::qci::tests_support::Q8_SPEC).unwrap();
        let opts = Options {
            budget: 1,
            samples: 500,
            ..Default::default()
        };
        let r = qci_report(&spec, &opts).unwrap();
        assert!(r.pass());
        assert_eq!(r.signs, Some(vec![vec![1, -1], vec![-1, 1]]));
        assert!(!r.algebras[0].scan.exhaustive);
    }

    #[test]
    fn action_report_rejects_nothing_in_catalog() {
        for a in action_catalog() {
            action_report(&a.build().unwrap()).unwrap_or_else(|e| panic!("{}: {e}", a.name));
        }
    }
}
