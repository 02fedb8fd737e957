//! Planar SVG pictures of fan approximations.
//!
//! Every leg becomes one straight stroke from the apex. Its direction comes
//! from its word, its length is proportional to `t_max`. Directions are
//! computed as exact rationals and converted to floats only when the
//! coordinates are written out.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mahavier::{FanApprox, Leg};
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AngleMap {
    /// Word symbols read as ternary digits of a middle-thirds coordinate
    /// (two-slope alphabets use digits 0 and 2).
    CantorTernary,
    /// Legs spread evenly in word order.
    Uniform,
}

impl std::str::FromStr for AngleMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cantor" | "ternary" => Ok(AngleMap::CantorTernary),
            "uniform" => Ok(AngleMap::Uniform),
            _ => Err(Error::Parse(format!("unknown angle map {s:?} (expected cantor or uniform)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderConfig {
    pub width: u32,
    pub height: u32,
    pub angle_map: AngleMap,
    pub apex: (f64, f64),
    /// Total opening of the fan in degrees, in `(0, 180)`.
    pub sweep: f64,
    pub stroke_width: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            width: 800,
            height: 600,
            angle_map: AngleMap::CantorTernary,
            apex: (400.0, 40.0),
            sweep: 60.0,
            stroke_width: 1.0,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Domain("image dimensions must be positive".into()));
        }
        if !(self.sweep > 0.0 && self.sweep < 180.0) {
            return Err(Error::Domain(format!("sweep {} not in (0, 180)", self.sweep)));
        }
        if self.stroke_width.is_nan() || self.stroke_width <= 0.0 || !self.apex.0.is_finite() || !self.apex.1.is_finite() {
            return Err(Error::Domain("stroke width and apex must be finite and positive".into()));
        }
        Ok(())
    }
}

fn slope_indices(fan: &FanApprox, leg: &Leg) -> Vec<usize> {
    leg.word()
        .symbols()
        .iter()
        .map(|s| fan.relation().index_of(s).expect("fan legs use the fan's slopes"))
        .collect()
}

/// Position of every leg across the sweep, as exact fractions in `[0, 1]`,
/// in the fan's leg order.
pub fn angle_fractions(fan: &FanApprox, map: AngleMap) -> Vec<Scalar> {
    let indices: Vec<Vec<usize>> = fan.legs().iter().map(|l| slope_indices(fan, l)).collect();
    match map {
        AngleMap::CantorTernary => {
            let k = fan.relation().len();
            let base = k.max(3) as i64;
            let digit = |i: usize| if k == 2 { 2 * i as i64 } else { i as i64 };
            let max_digit = digit(k - 1);
            let mut span = Scalar::zero();
            let mut place = Scalar::one();
            let step = Scalar::new(1, base);
            for _ in 0..fan.depth() {
                place = &place * &step;
                span = span + &place * Scalar::integer(max_digit);
            }
            indices
                .iter()
                .map(|word| {
                    if span.is_zero() {
                        return Scalar::new(1, 2);
                    }
                    let mut c = Scalar::zero();
                    let mut place = Scalar::one();
                    for &i in word {
                        place = &place * &step;
                        c = c + &place * Scalar::integer(digit(i));
                    }
                    c / &span
                })
                .collect()
        }
        AngleMap::Uniform => {
            let mut order: Vec<usize> = (0..indices.len()).collect();
            order.sort_by(|&a, &b| indices[a].cmp(&indices[b]));
            let count = indices.len() as i64;
            let mut out = vec![Scalar::zero(); indices.len()];
            for (rank, &leg) in order.iter().enumerate() {
                out[leg] = Scalar::new(2 * rank as i64 + 1, 2 * count);
            }
            out
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Render `fan` as an SVG 1.1 document. Output depends only on the inputs.
pub fn render_fan(fan: &FanApprox, config: &RenderConfig) -> Result<String> {
    config.validate()?;
    if fan.legs().is_empty() {
        return Err(Error::Domain("cannot render a fan without legs".into()));
    }
    let fractions = angle_fractions(fan, config.angle_map);
    let mut order: Vec<usize> = (0..fan.legs().len()).collect();
    order.sort_by_cached_key(|&i| slope_indices(fan, &fan.legs()[i]));

    let (ax, ay) = config.apex;
    let radius = 0.9 * (config.height as f64 - ay).max(1.0);
    let lines: Vec<String> = order
        .par_iter()
        .map(|&i| {
            let leg = &fan.legs()[i];
            let fraction = fractions[i].to_f64();
            // 90 degrees points straight down in SVG coordinates.
            let theta = (90.0 + (0.5 - fraction) * config.sweep).to_radians();
            let len = radius * leg.t_max().to_f64();
            format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                num(ax),
                num(ay),
                num(ax + len * theta.cos()),
                num(ay + len * theta.sin())
            )
        })
        .collect();

    let mut svg = String::new();
    let (w, h) = (config.width, config.height);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let slopes: Vec<String> = fan.relation().slopes().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(
        svg,
        "<title>fan over slopes {{{}}}, depth {}, {} legs</title>",
        slopes.join(", "),
        fan.depth(),
        fan.legs().len()
    );
    let _ = writeln!(svg, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<g stroke=\"black\" stroke-width=\"{}\" stroke-linecap=\"round\" fill=\"none\">",
        num(config.stroke_width)
    );
    for line in lines {
        svg.push_str(&line);
    }
    svg.push_str("</g>\n");
    let _ = writeln!(
        svg,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
        num(ax),
        num(ay),
        num(2.0 * config.stroke_width)
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
