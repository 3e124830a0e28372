//! The verification suites, run in a fixed order with per-suite seeds.

use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::algebra::{left_mult_ring_span, Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::groups::relations::{verify_a2_relations, verify_c3_commutators, C3Relation, CommutatorRecord, CONVENTION};
use crate::groups::strong::{a2_simple_systems, c3_standard_system, form_ring_generation_check, strongness_check, FormRingMode};
use crate::groups::{additivity_check, automorphism_check, grading_check_group, no_collapsing_check, A2Group, C3Group, RootGroup};
use crate::jordan::{checks, Herm, HermElement, HermSpace, Sign};
use crate::pe3::Pe3;
use crate::random::TrialRng;
use crate::report::{CheckRecord, Status, SuiteReport};
use crate::spectral::{family_generators, probe, GeneratorSet, GroupFamily};
use crate::tkk::Tkk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Jordan,
    Table,
    Bergmann,
    Tkk,
    A2,
    C3,
    R1,
    Spectral,
}

impl Suite {
    pub const ALL: [Suite; 9] =
        [Suite::Algebra, Suite::Jordan, Suite::Table, Suite::Bergmann, Suite::Tkk, Suite::A2, Suite::C3, Suite::R1, Suite::Spectral];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Jordan => "jordan",
            Suite::Table => "table",
            Suite::Bergmann => "bergmann",
            Suite::Tkk => "tkk",
            Suite::A2 => "a2",
            Suite::C3 => "c3",
            Suite::R1 => "r1",
            Suite::Spectral => "spectral",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Unknown { kind: "suite", name: s.into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random draws for every sampled check.
    pub trials: usize,
    /// Draws per root pair in the group grading sweep.
    pub grading_trials: usize,
    /// Suites to run, in any order; empty means all.
    pub suites: Vec<Suite>,
    /// Bound on the word search behind the strongness checks.
    pub strong_cap: usize,
    /// Bound on the group enumeration of the spectral suite.
    pub spectral_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, trials: 20, grading_trials: 1, suites: Vec::new(), strong_cap: 20_000, spectral_cap: 20_000 }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.grading_trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }

    fn selected(&self) -> Vec<Suite> {
        let mut s = if self.suites.is_empty() { Suite::ALL.to_vec() } else { self.suites.clone() };
        s.sort();
        s.dedup();
        s
    }
}

/// Machine report of a verify run. Timings are kept apart so that the report
/// is a function of the algebra, the configuration and the seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub scalars: String,
    pub seed: u64,
    pub trials: usize,
    pub convention: &'static str,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn failed(&self) -> bool {
        self.suites.iter().any(SuiteReport::failed)
    }

    /// Some check stopped at a resource cap.
    pub fn capped(&self) -> bool {
        self.checks().any(|c| c.status == Status::Inconclusive && c.witness.as_ref().is_some_and(|w| w.get("cap").is_some()))
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks().find(|c| c.id == id)
    }
}

/// Independent stream for each suite, so that selecting suites does not
/// change the draws of the others.
pub fn suite_seed(seed: u64, suite: &str) -> u64 {
    let d = Sha256::digest(format!("{seed}/{suite}").as_bytes());
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

/// The structures shared between suites, built on first use.
struct Context {
    algebra: Algebra,
    herm: Option<std::result::Result<Herm, String>>,
    tkk: Option<std::result::Result<std::sync::Arc<Tkk>, String>>,
    pe3: Option<std::result::Result<std::sync::Arc<Pe3>, String>>,
}

impl Context {
    fn herm(&mut self) -> std::result::Result<Herm, String> {
        let a = &self.algebra;
        self.herm.get_or_insert_with(|| HermSpace::new(a).map_err(|e| e.to_string())).clone()
    }

    fn tkk(&mut self) -> std::result::Result<std::sync::Arc<Tkk>, String> {
        if self.tkk.is_none() {
            let t = self.herm().and_then(|h| Tkk::new(&h).map_err(|e| e.to_string()));
            self.tkk = Some(t);
        }
        self.tkk.clone().expect("set above")
    }

    fn pe3(&mut self) -> std::result::Result<std::sync::Arc<Pe3>, String> {
        let a = &self.algebra;
        self.pe3.get_or_insert_with(|| Pe3::new(a).map_err(|e| e.to_string())).clone()
    }
}

fn skip(report: &mut SuiteReport, why: impl Into<String>) {
    let why = why.into();
    report.push(CheckRecord::new(format!("{}-suite", report.suite), "plumbing", Status::Skipped, 0).with_note(why));
}

/// Run the selected suites. Returns the report and the wall-clock time of
/// each suite.
pub fn run_verify(algebra: &Algebra, cfg: &VerifyConfig) -> Result<(VerifyReport, Vec<(String, Duration)>)> {
    cfg.validate()?;
    let mut ctx = Context { algebra: algebra.clone(), herm: None, tkk: None, pe3: None };
    let mut suites = Vec::new();
    let mut timings = Vec::new();
    for suite in cfg.selected() {
        let start = Instant::now();
        let mut rng = TrialRng::new(suite_seed(cfg.seed, suite.name()));
        let mut report = SuiteReport::new(suite.name());
        run_suite(suite, &mut ctx, cfg, &mut rng, &mut report)?;
        timings.push((suite.name().to_string(), start.elapsed()));
        suites.push(report);
    }
    let report = VerifyReport {
        algebra: algebra.name().to_string(),
        scalars: algebra.mode().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        convention: CONVENTION,
        suites,
    };
    Ok((report, timings))
}

fn run_suite(suite: Suite, ctx: &mut Context, cfg: &VerifyConfig, rng: &mut TrialRng, out: &mut SuiteReport) -> Result<()> {
    let alg = ctx.algebra.clone();
    let modular = alg.mode().characteristic() != 0;
    let trials = cfg.trials;
    match suite {
        Suite::Algebra => {
            let anchor = "(x,x,y) = (y,x,x) = 0";
            out.push(match alg.alternativity_witness() {
                None => CheckRecord::new("algebra-alternative", anchor, Status::Pass, 1),
                Some(w) => CheckRecord::new("algebra-alternative", anchor, Status::Fail, 1).with_witness(json!(w)),
            });
            let anchor = "symmetric elements lie in the nucleus";
            out.push(match alg.nuclear_involution_witness() {
                Ok(None) => CheckRecord::new("algebra-nuclear-involution", anchor, Status::Pass, 1)
                    .with_note(format!("dim Sym = {}", alg.symmetric_basis()?.len())),
                Ok(Some(w)) => CheckRecord::new("algebra-nuclear-involution", anchor, Status::Fail, 1).with_witness(json!(w)),
                Err(e) => CheckRecord::new("algebra-nuclear-involution", anchor, Status::Skipped, 0).with_note(e.to_string()),
            });
        }
        Suite::Jordan => match ctx.herm() {
            Err(e) => skip(out, e),
            Ok(h) => {
                out.extend(checks::check_jp_axioms(&h, trials, rng, modular)?);
                out.push(checks::identity_10_check(&h, trials, rng)?);
                out.push(checks::support_check(&h));
            }
        },
        Suite::Table => match ctx.herm() {
            Err(e) => skip(out, e),
            Ok(h) => out.extend(checks::check_multiplication_table(&h, trials, rng)?),
        },
        Suite::Bergmann => match ctx.herm() {
            Err(e) => skip(out, e),
            Ok(h) => {
                out.extend(checks::bergmann_inverse_claim_check(&h)?);
                out.extend(checks::bergmann_lemma_checks(&h, trials, rng)?);
            }
        },
        Suite::Tkk => match ctx.tkk() {
            Err(e) => skip(out, e),
            Ok(k) => {
                let lie = k.lie();
                out.push(lie.alternating_check());
                out.push(lie.jacobi_check(trials, rng)?);
                out.push(k.check_double_bracket(trials, rng)?);
                out.push(k.check_ad_cubed()?);
                out.push(k.check_ad_ad(&checks::admissible_basis_pairs(k.herm()))?);
                out.push(k.check_root_dimensions());
                out.push(k.check_grading());
                let h = k.herm();
                let x = HermElement::from_coords(h, Sign::Plus, rng.vector(alg.mode(), h.dim()))?;
                let y = HermElement::from_coords(h, Sign::Minus, rng.vector(alg.mode(), h.dim()))?;
                let d = k.inner_derivation(&x, &y)?;
                out.push(k.check_derivation(&k.l0_part(&d), trials, rng)?);
            }
        },
        Suite::A2 => match ctx.pe3() {
            Err(e) => skip(out, e),
            Ok(p) => {
                let g = A2Group::new(&p);
                out.push(p.lie().alternating_check());
                out.push(p.lie().jacobi_check(trials, rng)?);
                out.push(p.check_grading());
                group_basics(&g, trials, rng, out)?;
                out.extend(verify_a2_relations(&g, trials, rng)?.checks);
                out.push(grading_check_group(&g, cfg.grading_trials, rng)?);
                if modular {
                    for s in a2_simple_systems() {
                        out.push(strongness_check(&g, &s, cfg.strong_cap)?);
                    }
                }
            }
        },
        Suite::C3 => match ctx.tkk() {
            Err(e) => skip(out, e),
            Ok(k) => {
                let g = C3Group::new(&k);
                group_basics(&g, trials, rng, out)?;
                out.extend(verify_c3_commutators(&g, &C3Relation::ALL, trials, rng)?.checks);
                out.push(grading_check_group(&g, cfg.grading_trials, rng)?);
                if modular {
                    out.push(strongness_check(&g, &c3_standard_system(), cfg.strong_cap)?);
                }
                let one = vec![alg.unit_coords()];
                let mode = if modular { FormRingMode::Exhaustive { max_elements: 100_000 } } else { FormRingMode::Sampling { trials } };
                out.push(match form_ring_generation_check(k.herm(), &one, mode, rng) {
                    Err(Error::CapExceeded { cap }) => {
                        CheckRecord::new("form-ring-generation", "Sym(A) = { sum s_i a_i s_i* + (r + r*) }", Status::Inconclusive, 0)
                            .with_witness(json!({ "cap": cap }))
                    }
                    other => other?,
                });
            }
        },
        Suite::R1 => {
            let gens: Vec<AlgebraElement> = [1, 2, 4].into_iter().filter(|&i| i < alg.dim()).map(|i| AlgebraElement::basis(&alg, i)).collect();
            if gens.is_empty() {
                skip(out, "the algebra has no basis element besides the unit");
            } else {
                let r = left_mult_ring_span(&gens)?;
                let status = if r.equal { Status::Pass } else { Status::Fail };
                let labels: Vec<&str> = [1, 2, 4].into_iter().filter(|&i| i < alg.dim()).map(|i| alg.labels()[i].as_str()).collect();
                let mut rec = CheckRecord::new("r1-left-mult-span", "span{L_u : u r1-word} generates the left multiplication ring", status, 1)
                    .with_note(format!("generators {}; dim {}, oracle {}", labels.join(" "), r.dim, r.oracle_dim));
                if !r.equal {
                    rec = rec.with_witness(json!(r));
                }
                out.push(rec);
            }
        }
        Suite::Spectral => {
            if !modular {
                skip(out, "needs integers mod m");
            } else {
                let anchor = "1 - second largest eigenvalue modulus of the Cayley graph";
                let id = "spectral-gap[a2]";
                let result = family_generators(&alg, GroupFamily::A2, GeneratorSet::Unit)
                    .and_then(|gens| probe(&alg, GroupFamily::A2, &gens, GeneratorSet::Unit.name(), cfg.spectral_cap, suite_seed(cfg.seed, "spectral-start")));
                out.push(match result {
                    Ok(r) => {
                        let ok = r.gap.is_some_and(|g| g > 0.0) && r.flag.is_none() && r.oracle.as_ref().is_none_or(|o| o.agrees);
                        let rec = CheckRecord::new(id, anchor, if ok { Status::Pass } else { Status::Fail }, 1)
                            .with_note(format!("order {}, gap {}", r.order, r.gap.map_or("none".into(), |g| format!("{g:.12}"))));
                        if ok { rec } else { rec.with_witness(json!(r)) }
                    }
                    Err(Error::CapExceeded { cap }) => CheckRecord::new(id, anchor, Status::Inconclusive, 0).with_witness(json!({ "cap": cap })),
                    Err(e) => CheckRecord::new(id, anchor, Status::Skipped, 0).with_note(e.to_string()),
                });
            }
        }
    }
    Ok(())
}

fn group_basics<G: RootGroup + ?Sized>(g: &G, trials: usize, rng: &mut TrialRng, out: &mut SuiteReport) -> Result<()> {
    out.push(no_collapsing_check(g)?);
    out.push(additivity_check(g, trials, rng)?);
    out.push(automorphism_check(g, &g.roots())?);
    Ok(())
}

/// Every commutator evaluated by the relation suites of both families.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorDump {
    pub algebra: String,
    pub scalars: String,
    pub seed: u64,
    pub trials: usize,
    pub convention: &'static str,
    pub records: Vec<CommutatorRecord>,
}

pub fn run_commutators(algebra: &Algebra, seed: u64, trials: usize) -> Result<CommutatorDump> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let h = HermSpace::new(algebra)?;
    let c3 = C3Group::new(&Tkk::new(&h)?);
    let mut records = verify_c3_commutators(&c3, &C3Relation::ALL, trials, &mut TrialRng::new(suite_seed(seed, "c3")))?.commutators;
    let a2 = A2Group::new(&Pe3::new(algebra)?);
    records.extend(verify_a2_relations(&a2, trials, &mut TrialRng::new(suite_seed(seed, "a2")))?.commutators);
    Ok(CommutatorDump {
        algebra: algebra.name().to_string(),
        scalars: algebra.mode().to_string(),
        seed,
        trials,
        convention: CONVENTION,
        records,
    })
}
