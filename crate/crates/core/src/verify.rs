//! The verification checks behind `twisted-geom verify`, returning
//! machine-readable reports.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::autgroup::{self, Lifter, LiftRelation, VertexIndex};
use crate::design::{popcount_and, BlockIndex};
use crate::drg::{self, DesignOutcome, DrgOutcome};
use crate::error::{Error, Result};
use crate::geometry::{self, points_in_dim, Instance, PairCase};
use crate::gf::Field;
use crate::graph::{Family, VertexLabel};
use crate::linalg::Matrix;
use crate::subspace::Subspace;

pub const SCHEMA: u32 = 1;

/// Pair counts up to this size are checked exhaustively; above it a seeded sample is drawn.
pub const EXHAUSTIVE_PAIR_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Thm1,
    Drg,
    Design,
    Spectrum,
    AutSample,
    AutExhaustive,
    Prank,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Thm1, Check::Drg, Check::Design, Check::Spectrum, Check::AutSample, Check::AutExhaustive, Check::Prank];

    pub fn name(self) -> &'static str {
        match self {
            Check::Thm1 => "thm1",
            Check::Drg => "drg",
            Check::Design => "design",
            Check::Spectrum => "spectrum",
            Check::AutSample => "aut-sample",
            Check::AutExhaustive => "aut-exhaustive",
            Check::Prank => "prank",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub q: u32,
    pub e: usize,
    pub gram: Option<Matrix>,
    pub seed: u64,
    /// Random stabilizer elements for `aut-sample`; defaults to 1000 for q = 2, else 100.
    pub samples: Option<usize>,
    /// Sample size for `thm1` when the pair count exceeds [`EXHAUSTIVE_PAIR_LIMIT`].
    pub pairs: usize,
}

impl VerifyConfig {
    pub fn new(q: u32, e: usize) -> VerifyConfig {
        VerifyConfig { q, e, gram: None, seed: 0, samples: None, pairs: 100_000 }
    }

    /// Builds the instance, rejecting configurations no check can run on.
    pub fn instance(&self) -> Result<Instance> {
        if self.e < 2 {
            return Err(Error::InvalidArgument("e must be ≥ 2".into()));
        }
        Instance::new(&Field::with_order(self.q)?, self.e, self.gram.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub check: String,
    pub instance: Value,
    pub pass: bool,
    pub details: Value,
    pub elapsed_seconds: f64,
}

impl CheckReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

fn instance_json(cfg: &VerifyConfig) -> Value {
    json!({
        "q": cfg.q,
        "e": cfg.e,
        "seed": cfg.seed,
        "gram": cfg.gram.as_ref().map(Matrix::to_rows),
    })
}

pub type Progress<'a> = &'a (dyn Fn(&str) + Sync);

pub fn run_check(check: Check, cfg: &VerifyConfig, progress: Progress<'_>) -> Result<CheckReport> {
    let inst = cfg.instance()?;
    let start = Instant::now();
    let (pass, details) = match check {
        Check::Thm1 => thm1(&inst, cfg)?,
        Check::Drg => drg_check(&inst)?,
        Check::Design => design_check(&inst)?,
        Check::Spectrum => spectrum_check(&inst)?,
        Check::AutSample => aut_sample(&inst, cfg)?,
        Check::AutExhaustive => aut_exhaustive(&inst, progress)?,
        Check::Prank => prank(&inst)?,
    };
    Ok(CheckReport {
        schema: SCHEMA,
        check: check.name().into(),
        instance: instance_json(cfg),
        pass,
        details,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Every check; `aut-exhaustive` only runs at `q = 2, e = 2`.
pub fn run_all(cfg: &VerifyConfig, progress: Progress<'_>) -> Result<CheckReport> {
    let start = Instant::now();
    let exhaustive_ok = cfg.q == 2 && cfg.e == 2;
    let mut reports = Vec::new();
    for check in Check::ALL {
        if check == Check::AutExhaustive && !exhaustive_ok {
            continue;
        }
        progress(&format!("running {}", check.name()));
        reports.push(run_check(check, cfg, progress)?);
    }
    Ok(CheckReport {
        schema: SCHEMA,
        check: "all".into(),
        instance: instance_json(cfg),
        pass: reports.iter().all(|r| r.pass),
        details: json!({ "checks": reports }),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Counters for the per-pair statements behind the block-graph isomorphism.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PairReport {
    pub pairs_checked: u64,
    pub exhaustive: bool,
    /// `W1 ~ W2` disagrees with `|f(W1) ∩ f(W2)| = (q^e - 1)/(q - 1)`.
    pub adjacency_violations: u64,
    /// `|f(W1) ∩ f(W2)|` disagrees with its per-case closed form.
    pub size_formula_violations: u64,
    /// `dim sigma(W1∩H) ∩ sigma(W2∩H)` disagrees with the case offset.
    pub dimension_chain_violations: u64,
    pub first_violation: Option<(usize, usize)>,
}

impl PairReport {
    pub fn clean(&self) -> bool {
        self.adjacency_violations == 0 && self.size_formula_violations == 0 && self.dimension_chain_violations == 0
    }
}

/// Checks the pair statements over all pairs (small graphs) or `sample`
/// seeded random pairs.
pub fn check_pairs(inst: &Instance, sample: usize, seed: u64) -> Result<PairReport> {
    let g = inst.twisted_graph()?;
    let d = inst.jt_design()?;
    let cert = inst.f_certificate(&g, &d)?;
    let bits = d.block_bits();
    let n = g.vertex_count();
    let total = (n * (n - 1) / 2) as u64;
    let labels: Vec<(Family, &Subspace)> = g
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::Subspace { family, space } => Ok((*family, space)),
            _ => Err(Error::InvalidArgument("twisted graph vertex without subspace".into())),
        })
        .collect::<Result<_>>()?;
    let sigma_parts: Vec<Subspace> = labels
        .iter()
        .map(|(_, w)| inst.polarity.apply(&w.intersect(&inst.h)?))
        .collect::<Result<_>>()?;
    let q = inst.q();
    let threshold = inst.threshold();

    let mut report = PairReport { exhaustive: total <= EXHAUSTIVE_PAIR_LIMIT, ..Default::default() };
    let mut check = |u: usize, v: usize| -> Result<()> {
        let (f1, w1) = labels[u];
        let (f2, w2) = labels[v];
        let size = popcount_and(&bits[cert.mapping[u] as usize], &bits[cert.mapping[v] as usize]);
        let meet = w1.intersect(w2)?.dim();
        let case = PairCase::classify(f1, f2, w1, w2, &inst.h)?;
        let size_offset = match case {
            PairCase::AAInside | PairCase::AAOutside => 0,
            PairCase::AB => 1,
            PairCase::BB => 2,
        };
        let chain = sigma_parts[u].intersect(&sigma_parts[v])?.dim() as i64;
        let mut bad = false;
        if g.is_adjacent(u, v) != (size == threshold) {
            report.adjacency_violations += 1;
            bad = true;
        }
        if size != points_in_dim(meet + size_offset, q) {
            report.size_formula_violations += 1;
            bad = true;
        }
        if chain != meet as i64 + case.offset() {
            report.dimension_chain_violations += 1;
            bad = true;
        }
        if bad && report.first_violation.is_none() {
            report.first_violation = Some((u, v));
        }
        report.pairs_checked += 1;
        Ok(())
    };
    if total <= EXHAUSTIVE_PAIR_LIMIT {
        for u in 0..n {
            for v in u + 1..n {
                check(u, v)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            check(u.min(v), u.max(v))?;
        }
    }
    Ok(report)
}

fn thm1(inst: &Instance, cfg: &VerifyConfig) -> Result<(bool, Value)> {
    let g = inst.twisted_graph()?;
    let d = inst.jt_design()?;
    let bg = geometry::block_graph(&d, inst.threshold());
    let cert = inst.f_certificate(&g, &d)?;
    let mismatch = drg::isomorphism_mismatch(&g, &bg, &cert)?;
    let pairs = check_pairs(inst, cfg.pairs, cfg.seed)?;
    let pass = mismatch.is_none() && pairs.clean();
    Ok((
        pass,
        json!({
            "vertices": g.vertex_count(),
            "threshold": inst.threshold(),
            "isomorphic_under_f": mismatch.is_none(),
            "first_mismatch": mismatch,
            "pairs": pairs,
        }),
    ))
}

fn drg_check(inst: &Instance) -> Result<(bool, Value)> {
    let twisted = inst.twisted_graph()?;
    let grassmann = inst.grassmann_graph()?;
    let a = drg::intersection_array(&twisted)?;
    let b = drg::intersection_array(&grassmann)?;
    let pass = matches!((&a, &b), (DrgOutcome::DistanceRegular(x), DrgOutcome::DistanceRegular(y)) if x == y);
    let distinct = |counts: Vec<usize>| counts.into_iter().collect::<BTreeSet<_>>();
    let array = |o: &DrgOutcome| match o {
        DrgOutcome::DistanceRegular(x) => json!(x.flat()),
        DrgOutcome::NotDrg(w) => json!(w),
    };
    Ok((
        pass,
        json!({
            "base_vertices": twisted.vertex_count(),
            "twisted": a,
            "grassmann": b,
            "array": array(&a),
            "triangle_counts": {
                "twisted": distinct(twisted.triangle_counts()),
                "grassmann": distinct(grassmann.triangle_counts()),
            },
        }),
    ))
}

fn design_check(inst: &Instance) -> Result<(bool, Value)> {
    let expected = geometry::design_parameter_formulas(inst.q() as u64, inst.e as u32)?;
    let jt = drg::check_2design(&inst.jt_design()?)?;
    let pg = drg::check_2design(&inst.pg_design()?)?;
    let pass = jt == DesignOutcome::Design(expected) && pg == DesignOutcome::Design(expected);
    Ok((pass, json!({ "expected": expected, "jt": jt, "pg": pg })))
}

fn spectrum_check(inst: &Instance) -> Result<(bool, Value)> {
    let jt = geometry::intersection_spectrum(&inst.jt_design()?);
    let pg = geometry::intersection_spectrum(&inst.pg_design()?);
    let expected: Vec<usize> = (1..=inst.e).map(|i| points_in_dim(i, inst.q())).collect();
    let support = |m: &std::collections::BTreeMap<usize, u64>| m.keys().copied().collect::<Vec<_>>();
    let pass = support(&jt) == expected && support(&pg) == expected;
    Ok((
        pass,
        json!({
            "expected_support": expected,
            "support": support(&jt),
            "jt": jt,
            "pg": pg,
        }),
    ))
}

fn aut_sample(inst: &Instance, cfg: &VerifyConfig) -> Result<(bool, Value)> {
    let samples = cfg.samples.unwrap_or(if inst.q() == 2 { 1000 } else { 100 });
    let g = inst.twisted_graph()?;
    let d = inst.jt_design()?;
    let cert = inst.f_certificate(&g, &d)?;
    let lifter = Lifter::new(&inst.polarity, &inst.table)?;
    let blocks = BlockIndex::new(&d);
    let vertices = VertexIndex::new(&g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut aut_failures = 0u64;
    let mut relation_failures = 0u64;
    let mut first = None;
    let mut frob_powers = BTreeSet::new();
    for i in 0..samples {
        let phi = autgroup::random_stabilizer_element_with(&inst.field, inst.e, &mut rng);
        frob_powers.insert(phi.frob());
        let perm = lifter.lift(&phi)?;
        let aut = autgroup::block_permutation(&blocks, &d, &perm)?.is_ok();
        let rel = autgroup::lift_relation_with(&lifter, &blocks, &vertices, &d, &cert, &phi)?;
        if !aut {
            aut_failures += 1;
        }
        if rel != LiftRelation::Holds {
            relation_failures += 1;
        }
        if (!aut || rel != LiftRelation::Holds) && first.is_none() {
            first = Some(json!({ "sample": i, "map": phi, "relation": rel }));
        }
    }
    Ok((
        aut_failures == 0 && relation_failures == 0,
        json!({
            "samples": samples,
            "automorphism_failures": aut_failures,
            "relation_failures": relation_failures,
            "frobenius_powers_seen": frob_powers,
            "first_failure": first,
        }),
    ))
}

fn aut_exhaustive(inst: &Instance, progress: Progress<'_>) -> Result<(bool, Value)> {
    if inst.q() != 2 || inst.e != 2 {
        return Err(Error::Unsupported("aut-exhaustive is limited to q = 2, e = 2".into()));
    }
    let d = inst.jt_design()?;
    let report = autgroup::exhaustive_lift_check(&d, &inst.polarity, &inst.table, &|done, total| {
        progress(&format!("aut-exhaustive: {done}/{total} GL(4,2) blocks"))
    })?;
    Ok((report.passed(), serde_json::to_value(&report)?))
}

fn prank(inst: &Instance) -> Result<(bool, Value)> {
    let p = inst.field.p();
    let jt = drg::p_rank(&inst.jt_design()?, p)?;
    let pg = drg::p_rank(&inst.pg_design()?, p)?;
    Ok((jt == pg, json!({ "p": p, "jt": jt, "pg": pg })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(_: &str) {}

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()), Some(c));
        }
        assert_eq!(Check::parse("all"), None);
    }

    #[test]
    fn rejects_small_e() {
        let cfg = VerifyConfig::new(2, 1);
        assert!(run_check(Check::Drg, &cfg, &quiet).is_err());
        let cfg = VerifyConfig::new(6, 2);
        assert!(run_check(Check::Drg, &cfg, &quiet).is_err());
    }

    #[test]
    fn exhaustive_is_gated() {
        let cfg = VerifyConfig::new(3, 2);
        assert!(matches!(run_check(Check::AutExhaustive, &cfg, &quiet), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reports_at_2_2() {
        let cfg = VerifyConfig::new(2, 2);
        for c in [Check::Thm1, Check::Drg, Check::Design, Check::Spectrum, Check::Prank] {
            let r = run_check(c, &cfg, &quiet).unwrap();
            assert!(r.pass, "{}: {}", c.name(), r.details);
            assert_eq!(r.schema, SCHEMA);
            assert_eq!(r.instance["seed"], 0);
        }
        let r = run_check(Check::Spectrum, &cfg, &quiet).unwrap();
        assert_eq!(r.details["support"], json!([1, 3]));
    }

    #[test]
    fn sampled_lifts_with_symplectic_form() {
        let field = Field::with_order(2).unwrap();
        let gram = Matrix::from_rows(&field, 4, &[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).unwrap();
        let mut cfg = VerifyConfig::new(2, 2);
        cfg.gram = Some(gram);
        cfg.samples = Some(50);
        cfg.seed = 11;
        for c in [Check::AutSample, Check::Thm1] {
            let r = run_check(c, &cfg, &quiet).unwrap();
            assert!(r.pass, "{}: {}", c.name(), r.details);
        }
    }

    #[test]
    fn pair_sampling_is_seeded() {
        let inst = VerifyConfig::new(3, 2).instance().unwrap();
        let a = check_pairs(&inst, 500, 4).unwrap();
        assert!(!a.exhaustive && a.clean());
        assert_eq!(a.pairs_checked, 500);
    }
}
