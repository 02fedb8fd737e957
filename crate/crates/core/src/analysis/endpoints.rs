//! End-point certificates.
//!
//! A point of the product is an end-point exactly when the supremum of its
//! coordinates is 1. From a finite prefix that can be certified exactly (a
//! coordinate equals 1) or approximately (the maximum is within `delta` of
//! 1, and the greedy orbit continues it towards 1). Anything else is only
//! "not certified": a longer prefix might still reach 1.

use serde::Serialize;

use crate::mahavier::PointPrefix;
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// Some coordinate is exactly 1.
    Exact,
    /// The maximum coordinate is below 1; `delta` records the gap.
    Approximate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointCertificate {
    pub kind: CertificateKind,
    pub point: PointPrefix,
    /// First index attaining the maximum.
    pub peak_index: usize,
    pub peak_value: Scalar,
    /// `1 - peak_value`.
    pub delta: Scalar,
}

impl EndpointCertificate {
    /// Certificate for `p` regardless of tolerance; `None` for the top,
    /// which is never an end-point.
    pub fn for_point(p: &PointPrefix) -> Option<Self> {
        let (peak_index, peak_value) = peak(p);
        if peak_value.is_zero() {
            return None;
        }
        let kind = if peak_value.is_one() {
            CertificateKind::Exact
        } else {
            CertificateKind::Approximate
        };
        Some(EndpointCertificate {
            kind,
            point: p.clone(),
            peak_index,
            delta: Scalar::one() - &peak_value,
            peak_value,
        })
    }

    /// For an exact certificate: the point cut at the peak and continued by
    /// diagonal steps at value 1, to `len` coordinates.
    pub fn diagonal_completion(&self, len: usize) -> Option<PointPrefix> {
        if self.kind != CertificateKind::Exact {
            return None;
        }
        let mut coords = self.point.coords()[..=self.peak_index].to_vec();
        while coords.len() < len {
            coords.push(Scalar::one());
        }
        Some(PointPrefix::from_coords_unchecked(coords))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EndpointVerdict {
    Certified(EndpointCertificate),
    /// Not certified within this prefix and tolerance. This is not a proof
    /// that the point is not an end-point.
    NotEndpoint { max: Scalar, peak_index: usize },
}

impl EndpointVerdict {
    pub fn certificate(&self) -> Option<&EndpointCertificate> {
        match self {
            EndpointVerdict::Certified(c) => Some(c),
            EndpointVerdict::NotEndpoint { .. } => None,
        }
    }
}

fn peak(p: &PointPrefix) -> (usize, Scalar) {
    let mut best = 0;
    for (i, c) in p.coords().iter().enumerate() {
        if c > &p.coords()[best] {
            best = i;
        }
    }
    (best, p.coords()[best].clone())
}

/// Classify `p`: exact if a coordinate is 1, approximate if the maximum is
/// at least `1 - delta`, otherwise not certified. The top is never certified.
pub fn classify_endpoint(p: &PointPrefix, delta: &Scalar) -> EndpointVerdict {
    match EndpointCertificate::for_point(p) {
        Some(c) if c.kind == CertificateKind::Exact || &c.delta <= delta => {
            EndpointVerdict::Certified(c)
        }
        _ => {
            let (peak_index, max) = peak(p);
            EndpointVerdict::NotEndpoint { max, peak_index }
        }
    }
}
