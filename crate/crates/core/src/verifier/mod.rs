//! Executable identity suites with structured reports.
//!
//! Every operator identity is checked as an exact matrix equality over all
//! basis paths in scope, through two independent evaluation routes. Only
//! weightings are sampled, from a seeded generator, alongside a fixed set
//! of edge weightings.

mod compare;
mod counterexample;
mod report;
mod suites;
mod weightings;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

pub use counterexample::{find_counterexample, IdentityId, SearchOutcome, Witness};
pub use report::{CheckResult, IdentityCheck, Summary, VerificationReport};

use crate::error::{Error, Result};
use crate::pathspace::VertexSet;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub basis_cap: usize,
    pub max_degree: usize,
    pub full_sizes: Vec<usize>,
    pub regular_sizes: Vec<usize>,
    pub anticomm_sizes: Vec<usize>,
    pub anticomm_max_degree: usize,
    pub newton_leibniz_pairs: usize,
    /// Overrides the size lists with a single explicit vertex set.
    pub vertices: Option<Arc<VertexSet>>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: 20,
            basis_cap: crate::DEFAULT_BASIS_CAP,
            max_degree: 4,
            full_sizes: vec![1, 2, 3],
            regular_sizes: vec![2, 3, 4],
            anticomm_sizes: vec![1, 2, 3],
            anticomm_max_degree: 3,
            newton_leibniz_pairs: 50,
            vertices: None,
        }
    }
}

impl VerifyConfig {
    fn sets(&self, sizes: &[usize]) -> Result<Vec<Arc<VertexSet>>> {
        match &self.vertices {
            Some(vs) => Ok(vec![vs.clone()]),
            None => sizes.iter().map(|&k| VertexSet::alphabet(k).map(Arc::new)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "basis_cap": self.basis_cap,
            "max_degree": self.max_degree,
            "full_sizes": self.full_sizes,
            "regular_sizes": self.regular_sizes,
            "anticomm_sizes": self.anticomm_sizes,
            "anticomm_max_degree": self.anticomm_max_degree,
            "newton_leibniz_pairs": self.newton_leibniz_pairs,
            "vertices": self.vertices.as_ref().map(|v| v.labels().to_vec()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Main1,
    Main2,
    Lemmas21,
    Structural,
    Usual,
    Anticomm,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Main1,
        Suite::Main2,
        Suite::Lemmas21,
        Suite::Structural,
        Suite::Usual,
        Suite::Anticomm,
        Suite::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Main1 => "main1",
            Suite::Main2 => "main2",
            Suite::Lemmas21 => "lemmas21",
            Suite::Structural => "structural",
            Suite::Usual => "usual",
            Suite::Anticomm => "anticomm",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

fn report(cfg: &VerifyConfig, suite: Suite, checks: Vec<IdentityCheck>) -> VerificationReport {
    let mut config = cfg.to_json();
    config["suite"] = json!(suite.as_str());
    VerificationReport { config, checks }
}

fn collect(sets: &[Arc<VertexSet>], f: impl Fn(&Arc<VertexSet>) -> Vec<IdentityCheck>) -> Vec<IdentityCheck> {
    sets.iter().flat_map(f).collect()
}

fn checks(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<IdentityCheck>> {
    Ok(match suite {
        Suite::Main1 => collect(&cfg.sets(&cfg.full_sizes)?, |vs| suites::main1(cfg, vs)),
        Suite::Main2 => collect(&cfg.sets(&cfg.regular_sizes)?, |vs| suites::main2(cfg, vs)),
        Suite::Lemmas21 => collect(&cfg.sets(&cfg.full_sizes)?, |vs| suites::lemmas21(cfg, vs)),
        Suite::Structural => {
            let sets = cfg.sets(&cfg.full_sizes)?;
            let mut out = collect(&sets, |vs| suites::structural(cfg, vs));
            // Newton–Leibniz runs once, on the largest vertex set in scope
            if let Some(vs) = sets.iter().max_by_key(|v| v.len()) {
                out.extend(suites::structural_newton_leibniz(cfg, vs));
            }
            out
        }
        Suite::Usual => collect(&cfg.sets(&cfg.full_sizes)?, |vs| suites::usual(cfg, vs)),
        Suite::Anticomm => collect(&cfg.sets(&cfg.anticomm_sizes)?, |vs| suites::anticomm(cfg, vs)),
        Suite::All => {
            let mut out = Vec::new();
            for s in &Suite::ALL[..6] {
                out.extend(checks(*s, cfg)?);
            }
            out
        }
    })
}

/// Runs a suite and returns its report.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerificationReport> {
    Ok(report(cfg, suite, checks(suite, cfg)?))
}

pub fn verify_main1(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Main1, cfg)
}

pub fn verify_main2(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Main2, cfg)
}

pub fn verify_lemmas_s21(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Lemmas21, cfg)
}

pub fn verify_structural(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Structural, cfg)
}

pub fn verify_usual_simplicial(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Usual, cfg)
}

pub fn verify_anticommutators(cfg: &VerifyConfig) -> Result<VerificationReport> {
    run(Suite::Anticomm, cfg)
}

/// Regular factorization checks alone, over vertex sets of the given sizes.
pub fn verify_factorization(cfg: &VerifyConfig, sizes: &[usize]) -> Result<VerificationReport> {
    let checks = collect(&cfg.sets(sizes)?, |vs| suites::factorization(cfg, vs));
    Ok(report(cfg, Suite::Main2, checks))
}
