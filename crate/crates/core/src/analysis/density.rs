//! ε-density witnesses: an end-point of the product within distance ε of a
//! given point.
//!
//! The witness keeps the first `k0` coordinates of `x`, where `2^-k0 <= ε`,
//! and continues from `x_{k0-1}` along the greedy orbit. Both continuation
//! steps `r` and `rho` lie in the relation `{r, 1, rho}`, so this works
//! whatever `x` does after `k0`. The top has no nonzero coordinate to
//! continue from; it is approached by a greedy leg started at a small seed.
//!
//! A prefix `x` is read as the point that continues it by diagonal steps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mahavier::{truncated_metric, PointPrefix, RelationKind, RelationSpec};
use crate::nc::NcPair;
use crate::scalars::Scalar;

use super::endpoints::{CertificateKind, EndpointCertificate};
use super::greedy::greedy_until;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityConfig {
    /// Target gap `1 - max` for the witness's certificate.
    pub delta: Scalar,
    /// Greedy steps allowed past the kept prefix.
    pub extension_budget: usize,
}

impl Default for DensityConfig {
    fn default() -> Self {
        DensityConfig {
            delta: Scalar::new(1, 100),
            extension_budget: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    pub point: PointPrefix,
    /// Number of coordinates copied from `x`.
    pub k0: usize,
    /// Certified upper bound on the distance from `x`.
    pub bound: Scalar,
    pub certificate: EndpointCertificate,
    /// Whether the certificate reached the configured `delta`.
    pub reached: bool,
}

/// Smallest `k >= 1` with `2^-k <= epsilon`.
pub fn cutoff_index(epsilon: &Scalar) -> usize {
    let mut k = 1usize;
    while Scalar::dyadic(k as u32) > *epsilon {
        k += 1;
    }
    k
}

const MAX_SEED_HALVINGS: u32 = 256;

pub fn density_witness(
    x: &PointPrefix,
    epsilon: &Scalar,
    pair: &NcPair,
    config: &DensityConfig,
) -> Result<DensityWitness> {
    if !epsilon.is_positive() {
        return Err(Error::Domain(format!("epsilon {epsilon} must be positive")));
    }
    let f = RelationSpec::from_kind(RelationKind::F, pair.r(), pair.rho())?;
    if !f.admits(x) {
        return Err(Error::Precondition(format!("{x} is not a prefix of a point of X_F")));
    }
    let target = Scalar::one() - &config.delta;

    if let Some(cert) = EndpointCertificate::for_point(x) {
        if cert.kind == CertificateKind::Exact {
            return Ok(DensityWitness {
                point: x.clone(),
                k0: x.len(),
                bound: Scalar::zero(),
                certificate: cert,
                reached: true,
            });
        }
    }

    let k0 = cutoff_index(epsilon);
    if x.is_top() {
        return top_witness(x, epsilon, k0, pair, config, &target);
    }

    let kept = x.padded(k0).truncated(k0);
    let start = kept.last().clone();
    let min_steps = x.len().saturating_sub(k0);
    let trace = greedy_until(&start, pair, &target, min_steps, config.extension_budget)?;
    let mut coords = kept.coords().to_vec();
    coords.extend(trace.partials);
    Ok(finish(x, coords, k0, config))
}

fn top_witness(
    x: &PointPrefix,
    epsilon: &Scalar,
    k0: usize,
    pair: &NcPair,
    config: &DensityConfig,
    target: &Scalar,
) -> Result<DensityWitness> {
    // Seed 2^-(k0+4), halved until the certified bound fits under epsilon.
    for extra in 4..4 + MAX_SEED_HALVINGS {
        let seed = Scalar::dyadic(k0 as u32 + extra);
        let min_steps = x.len().saturating_sub(1);
        let trace = greedy_until(&seed, pair, target, min_steps, config.extension_budget)?;
        let mut coords = vec![seed];
        coords.extend(trace.partials);
        let witness = finish(x, coords, 0, config);
        if &witness.bound <= epsilon {
            return Ok(witness);
        }
    }
    Err(Error::Resource(format!(
        "no seed found approaching the top within {epsilon}"
    )))
}

fn finish(x: &PointPrefix, coords: Vec<Scalar>, k0: usize, config: &DensityConfig) -> DensityWitness {
    let e = PointPrefix::from_coords_unchecked(coords);
    let bound = truncated_metric(&e, &x.padded(e.len()))
        .expect("equal lengths")
        .upper();
    let certificate = EndpointCertificate::for_point(&e).expect("witness is not the top");
    let reached = certificate.delta <= config.delta;
    DensityWitness {
        point: e,
        k0,
        bound,
        certificate,
        reached,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahavier::{membership, sample_points};

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn point(xs: &[&str]) -> PointPrefix {
        PointPrefix::new(xs.iter().map(|x| s(x)).collect()).unwrap()
    }

    fn f() -> RelationSpec {
        RelationSpec::new([s("1/2"), s("1"), s("3")]).unwrap()
    }

    #[test]
    fn cutoffs() {
        assert_eq!(cutoff_index(&s("1/16")), 4);
        assert_eq!(cutoff_index(&s("1/15")), 4);
        assert_eq!(cutoff_index(&s("1/17")), 5);
        assert_eq!(cutoff_index(&s("5")), 1);
    }

    #[test]
    fn constant_prefix_case() {
        let x = point(&["2/5"; 4]);
        let w = density_witness(&x, &s("1/16"), &NcPair::default(), &DensityConfig::default()).unwrap();
        assert_eq!(w.k0, 4);
        let head: Vec<String> = w.point.coords()[..8].iter().map(|c| c.to_string()).collect();
        assert_eq!(head, ["2/5", "2/5", "2/5", "2/5", "1/5", "3/5", "3/10", "9/10"]);
        assert!(w.bound < s("1/16"));
        assert!(membership(&w.point, &f()));
        assert!(w.reached);
        // soundness: bound equals the exact metric against the diagonal continuation plus tail
        let m = truncated_metric(&w.point, &x.padded(w.point.len())).unwrap();
        assert_eq!(w.bound, m.upper());
    }

    #[test]
    fn top_case() {
        let x = PointPrefix::top(4);
        let w = density_witness(&x, &s("1/4"), &NcPair::default(), &DensityConfig::default()).unwrap();
        assert_eq!(w.point.coords()[0], s("1/64"));
        assert!(w.bound < s("1/4"));
        assert!(membership(&w.point, &f()));
        assert!(w.certificate.peak_value >= s("99/100"));
        // later coordinates climb towards 1
        assert!(w.point.coords()[1..4].windows(2).all(|p| p[0] < p[1]));

        let tight = density_witness(&x, &s("1/1024"), &NcPair::default(), &DensityConfig::default()).unwrap();
        assert!(tight.bound <= s("1/1024"));
        assert!(tight.reached);
    }

    #[test]
    fn exact_endpoint_is_its_own_witness() {
        let x = point(&["2/9", "2/3", "1/3", "1"]);
        let w = density_witness(&x, &s("1/1000"), &NcPair::default(), &DensityConfig::default()).unwrap();
        assert_eq!(w.point, x);
        assert!(w.bound.is_zero());
        assert_eq!(w.certificate.kind, CertificateKind::Exact);
    }

    #[test]
    fn errors() {
        let x = point(&["1/2", "3/4"]);
        assert!(matches!(
            density_witness(&x, &s("1/4"), &NcPair::default(), &DensityConfig::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            density_witness(&point(&["1/2"]), &s("0"), &NcPair::default(), &DensityConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let cfg = DensityConfig {
            delta: s("1/100"),
            extension_budget: 2,
        };
        let w = density_witness(&point(&["1/1000"]), &s("1/2"), &NcPair::default(), &cfg).unwrap();
        assert!(!w.reached);
        assert_eq!(w.certificate.kind, CertificateKind::Approximate);
        assert!(w.certificate.delta > s("1/100"));
    }

    #[test]
    fn sampled_points_get_sound_witnesses() {
        let pair = NcPair::default();
        for x in sample_points(&f(), 10, 40, 5) {
            for eps in ["1/2", "1/16", "1/256"] {
                let w = density_witness(&x, &s(eps), &pair, &DensityConfig::default()).unwrap();
                assert!(w.bound <= s(eps), "{x} {eps}");
                assert!(membership(&w.point, &f()));
                assert!(w.reached);
                assert_eq!(w.point.coords()[..w.k0.min(x.len())], x.coords()[..w.k0.min(x.len())]);
                if !w.bound.is_zero() {
                    let m = truncated_metric(&w.point, &x.padded(w.point.len())).unwrap();
                    assert!(w.bound >= m.upper());
                }
            }
        }
    }
}
