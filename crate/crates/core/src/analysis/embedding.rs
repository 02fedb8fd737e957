//! Desk-scale check that the product of `G = {r, 1}` sits inside the product
//! of `F = {r, 1, rho}` and that the latter has dense end-points.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::mahavier::{
    enumerate_legs, sample_legs, sample_points, word_count, Leg, RelationKind, RelationSpec,
    DEFAULT_ENUMERATION_BUDGET,
};
use crate::nc::NcPair;
use crate::scalars::Scalar;

use super::density::{density_witness, DensityConfig};

#[derive(Clone, Debug)]
pub struct EmbeddingConfig {
    pub depth: usize,
    /// Sampled F-legs for injectivity and F-points for density.
    pub samples: usize,
    /// Sampled G-points checked for membership in the F product.
    pub membership_samples: usize,
    pub seed: u64,
    pub enumeration_budget: u64,
    pub epsilons: Vec<Scalar>,
    pub density: DensityConfig,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        EmbeddingConfig {
            depth: 6,
            samples: 200,
            membership_samples: 500,
            seed: 0,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            epsilons: vec![Scalar::new(1, 16), Scalar::new(1, 64), Scalar::new(1, 256)],
            density: DensityConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Number of cases examined.
    pub checked: usize,
    pub counterexample: Option<Value>,
}

impl CheckResult {
    fn new(name: &str, checked: usize, counterexample: Option<Value>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: counterexample.is_none(),
            checked,
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub r: Scalar,
    pub rho: Scalar,
    pub depth: usize,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl EmbeddingReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Legs of every word when affordable, otherwise a sample.
fn legs_for(relation: &RelationSpec, config: &EmbeddingConfig, seed: u64) -> Result<Vec<Leg>> {
    match word_count(relation, config.depth) {
        Some(n) if n <= config.enumeration_budget => {
            Ok(enumerate_legs(relation, config.depth, config.enumeration_budget)?
                .legs()
                .to_vec())
        }
        _ => Ok(sample_legs(relation, config.depth, config.samples, seed)),
    }
}

pub fn verify_embedding(pair: &NcPair, config: &EmbeddingConfig) -> Result<EmbeddingReport> {
    let f = RelationSpec::from_kind(RelationKind::F, pair.r(), pair.rho())?;
    let g = RelationSpec::from_kind(RelationKind::G, pair.r(), pair.rho())?;

    let g_legs = legs_for(&g, config, config.seed)?;
    let f_legs = legs_for(&f, config, config.seed.wrapping_add(1))?;
    let f_index: HashMap<_, _> = f_legs.iter().map(|l| (l.word(), l)).collect();

    let mut checks = Vec::new();

    let bad = g_legs.iter().find(|gl| {
        if !f.contains_word(gl.word()) {
            return true;
        }
        match f_index.get(gl.word()) {
            Some(fl) => fl != gl,
            // F was sampled: rebuild the leg under F's alphabet.
            None => &Leg::new(gl.word().clone()) != *gl,
        }
    });
    checks.push(CheckResult::new(
        "g_legs_are_f_legs",
        g_legs.len(),
        bad.map(|l| json!({ "word": l.word(), "t_max": l.t_max() })),
    ));

    let bad = g_legs.iter().find(|l| !l.t_max().is_one());
    checks.push(CheckResult::new(
        "g_legs_full_caps",
        g_legs.len(),
        bad.map(|l| json!({ "word": l.word(), "t_max": l.t_max() })),
    ));

    let g_points = sample_points(&g, config.depth, config.membership_samples, config.seed.wrapping_add(2));
    let bad = g_points.iter().find(|p| !f.admits(p));
    checks.push(CheckResult::new(
        "g_points_in_f",
        g_points.len(),
        bad.map(|p| json!({ "point": p.coords() })),
    ));

    let mut by_products: HashMap<&[Scalar], &Leg> = HashMap::with_capacity(f_legs.len());
    let mut clash = None;
    for leg in &f_legs {
        if let Some(prev) = by_products.insert(leg.prefix_products(), leg) {
            if prev.word() != leg.word() {
                clash = Some(json!({ "words": [prev.word(), leg.word()] }));
                break;
            }
        }
    }
    checks.push(CheckResult::new("leg_injectivity", f_legs.len(), clash));

    let f_points = sample_points(&f, config.depth, config.samples, config.seed.wrapping_add(3));
    let cases: Vec<_> = f_points
        .iter()
        .flat_map(|p| config.epsilons.iter().map(move |e| (p, e)))
        .collect();
    let failures: Vec<Option<Value>> = cases
        .par_iter()
        .map(|(x, eps)| match density_witness(x, eps, pair, &config.density) {
            Ok(w) if &w.bound <= *eps && w.reached && f.admits(&w.point) => None,
            Ok(w) => Some(json!({
                "point": x.coords(),
                "epsilon": eps,
                "bound": w.bound,
                "delta": w.certificate.delta,
            })),
            Err(e) => Some(json!({ "point": x.coords(), "epsilon": eps, "error": e.to_string() })),
        })
        .collect();
    checks.push(CheckResult::new(
        "density",
        cases.len(),
        failures.into_iter().flatten().next(),
    ));

    Ok(EmbeddingReport {
        r: pair.r().clone(),
        rho: pair.rho().clone(),
        depth: config.depth,
        seed: config.seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_pair_passes() {
        let cfg = EmbeddingConfig {
            depth: 4,
            samples: 30,
            membership_samples: 50,
            ..EmbeddingConfig::default()
        };
        let report = verify_embedding(&NcPair::default(), &cfg).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.check("g_legs_are_f_legs").unwrap().checked, 16);
        assert_eq!(report.check("leg_injectivity").unwrap().checked, 81);
        assert_eq!(report.check("density").unwrap().checked, 90);
    }

    #[test]
    fn depth_zero_is_vacuous() {
        let cfg = EmbeddingConfig {
            depth: 0,
            samples: 5,
            membership_samples: 5,
            ..EmbeddingConfig::default()
        };
        let report = verify_embedding(&NcPair::default(), &cfg).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn sampled_mode_above_budget() {
        let cfg = EmbeddingConfig {
            depth: 12,
            samples: 20,
            membership_samples: 20,
            enumeration_budget: 100,
            ..EmbeddingConfig::default()
        };
        let report = verify_embedding(&NcPair::default(), &cfg).unwrap();
        assert!(report.pass);
        assert_eq!(report.check("g_legs_are_f_legs").unwrap().checked, 20);
    }

    #[test]
    fn report_json_shape() {
        let cfg = EmbeddingConfig {
            depth: 1,
            samples: 2,
            membership_samples: 2,
            ..EmbeddingConfig::default()
        };
        let report = verify_embedding(&NcPair::default(), &cfg).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        let first = &v["checks"][0];
        assert_eq!(first["name"], "g_legs_are_f_legs");
        assert_eq!(first["pass"], true);
        assert!(first["counterexample"].is_null());
        assert_eq!(v["r"], "1/2");
    }
}
