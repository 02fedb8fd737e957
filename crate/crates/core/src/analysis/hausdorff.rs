//! Hausdorff distance between two fan approximations, enclosed from both
//! sides.
//!
//! Distances use the weighted metric `sum_k 2^-(k+1) |x_k - y_k|` on the
//! common prefix length. Each leg is a segment through the origin, so the
//! distance from a point to a whole leg is a one-dimensional convex
//! minimisation, solved exactly (up to float rounding) by a weighted median.
//! Only the source side is discretised: sampling every source leg on a
//! parameter grid gives a lower bound, and the 1-Lipschitz property of the
//! distance function over each grid piece gives the matching upper bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mahavier::{FanApprox, Leg};

/// Absolute slack absorbing float rounding in the enclosure.
const ROUNDING_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HausdorffBounds {
    pub lower: f64,
    pub upper: f64,
    /// Largest metric length of one grid piece on any source leg.
    pub resolution: f64,
}

struct Segment {
    /// `(1, P_1, ..., P_n)`
    direction: Vec<f64>,
    t_max: f64,
}

impl Segment {
    fn from_leg(leg: &Leg) -> Self {
        let mut direction = Vec::with_capacity(leg.depth() + 1);
        direction.push(1.0);
        direction.extend(leg.prefix_products().iter().map(|p| p.to_f64()));
        Segment {
            direction,
            t_max: leg.t_max().to_f64(),
        }
    }

    fn at(&self, t: f64) -> Vec<f64> {
        self.direction.iter().map(|v| v * t).collect()
    }

    /// Metric length of the whole segment.
    fn length(&self, weights: &[f64]) -> f64 {
        self.t_max * self.direction.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>()
    }

    /// `min_{0 <= t <= t_max} sum_k w_k |a_k - t v_k|`.
    fn distance_from(&self, a: &[f64], weights: &[f64], scratch: &mut Vec<(f64, f64)>) -> f64 {
        // Each term is w_k v_k |a_k / v_k - t|: a weighted median problem.
        scratch.clear();
        scratch.extend(
            a.iter()
                .zip(&self.direction)
                .zip(weights)
                .map(|((ak, vk), wk)| (ak / vk, wk * vk)),
        );
        scratch.sort_by(|x, y| x.0.total_cmp(&y.0));
        let total: f64 = scratch.iter().map(|(_, w)| w).sum();
        let mut acc = 0.0;
        let mut median = scratch.last().map_or(0.0, |b| b.0);
        for &(c, w) in scratch.iter() {
            acc += w;
            if acc >= total / 2.0 {
                median = c;
                break;
            }
        }
        let t = median.clamp(0.0, self.t_max);
        a.iter()
            .zip(&self.direction)
            .zip(weights)
            .map(|((ak, vk), wk)| wk * (ak - t * vk).abs())
            .sum()
    }
}

fn weights(len: usize) -> Vec<f64> {
    (0..len).map(|k| 0.5f64.powi(k as i32 + 1)).collect()
}

/// Enclosure of the directed distance `sup_{a in A} inf_{b in B} d(a, b)`.
pub fn directed_hausdorff(a: &FanApprox, b: &FanApprox, grid: usize) -> Result<HausdorffBounds> {
    check_inputs(a, b, grid)?;
    let w = weights(a.depth() + 1);
    let targets: Vec<Segment> = b.legs().iter().map(Segment::from_leg).collect();
    let per_leg: Vec<(f64, f64, f64)> = a
        .legs()
        .par_iter()
        .map(|leg| {
            let seg = Segment::from_leg(leg);
            let mut scratch = Vec::with_capacity(w.len());
            let dists: Vec<f64> = (0..=grid)
                .map(|i| {
                    let p = seg.at(seg.t_max * i as f64 / grid as f64);
                    targets
                        .iter()
                        .map(|t| t.distance_from(&p, &w, &mut scratch))
                        .fold(f64::INFINITY, f64::min)
                })
                .collect();
            let piece = seg.length(&w) / grid as f64;
            let lower = dists.iter().copied().fold(0.0, f64::max);
            let upper = dists
                .windows(2)
                .map(|d| (d[0] + d[1] + piece) / 2.0)
                .fold(lower, f64::max);
            (lower, upper, piece)
        })
        .collect();
    let (lower, upper, resolution) = per_leg
        .into_iter()
        .fold((0.0f64, 0.0f64, 0.0f64), |acc, x| (acc.0.max(x.0), acc.1.max(x.1), acc.2.max(x.2)));
    Ok(HausdorffBounds {
        lower: (lower - ROUNDING_SLACK).max(0.0),
        upper: upper + ROUNDING_SLACK,
        resolution,
    })
}

/// Enclosure of the symmetric Hausdorff distance.
pub fn hausdorff(a: &FanApprox, b: &FanApprox, grid: usize) -> Result<HausdorffBounds> {
    let ab = directed_hausdorff(a, b, grid)?;
    let ba = directed_hausdorff(b, a, grid)?;
    Ok(HausdorffBounds {
        lower: ab.lower.max(ba.lower),
        upper: ab.upper.max(ba.upper),
        resolution: ab.resolution.max(ba.resolution),
    })
}

fn check_inputs(a: &FanApprox, b: &FanApprox, grid: usize) -> Result<()> {
    if a.depth() != b.depth() {
        return Err(Error::Shape(format!(
            "fan depths differ: {} vs {}",
            a.depth(),
            b.depth()
        )));
    }
    if grid == 0 {
        return Err(Error::Domain("grid must be positive".into()));
    }
    if a.legs().is_empty() || b.legs().is_empty() {
        return Err(Error::Domain("fans must have at least one leg".into()));
    }
    Ok(())
}
