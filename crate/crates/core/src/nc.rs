//! Exact decision of the never-connect condition for a pair of rationals.
//!
//! `r` and `rho` never connect when `0 < r < 1 < rho` and `r^k = rho^l` has
//! only the trivial integer solution. For rationals this is a statement about
//! prime exponent vectors: a nontrivial solution exists exactly when the two
//! vectors are parallel.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{factor, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcVerdict {
    pub is_nc: bool,
    /// Minimal `(k, l)` with `k > 0` and `r^k = rho^l`, present iff `!is_nc`.
    pub witness: Option<(i64, i64)>,
}

/// Decide whether `r` and `rho` never connect.
///
/// Range violations (`r` not in `(0, 1)`, `rho <= 1`) are errors, not a
/// negative verdict.
pub fn check_nc(r: &Scalar, rho: &Scalar) -> Result<NcVerdict> {
    check_range(r, rho)?;
    let fr = factor(r)?;
    let frho = factor(rho)?;

    // Both vectors are nonempty because r != 1 and rho != 1.
    let (p, a) = fr.iter().next().expect("r != 1");
    let b = frho.get(p);
    let independent = NcVerdict {
        is_nc: true,
        witness: None,
    };
    if b == 0 || fr.len() != frho.len() {
        return Ok(independent);
    }
    let parallel = frho.iter().all(|(q, eq)| {
        let er = fr.get(q) as i128;
        er != 0 && er * b as i128 == eq as i128 * a as i128
    });
    if !parallel {
        return Ok(independent);
    }
    // k * a = l * b with (k, l) coprime.
    let g = a.gcd(&b);
    let (mut k, mut l) = (b / g, a / g);
    if k < 0 {
        k = -k;
        l = -l;
    }
    Ok(NcVerdict {
        is_nc: false,
        witness: Some((k, l)),
    })
}

fn check_range(r: &Scalar, rho: &Scalar) -> Result<()> {
    if !r.is_positive() || r >= &Scalar::one() {
        return Err(Error::Precondition(format!(
            "never-connect requires 0 < r < 1, got r = {r}"
        )));
    }
    if rho <= &Scalar::one() {
        return Err(Error::Precondition(format!(
            "never-connect requires rho > 1, got rho = {rho}"
        )));
    }
    Ok(())
}

/// A slope pair that has passed [`check_nc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPair {
    r: Scalar,
    rho: Scalar,
}

impl NcPair {
    /// Validate the pair; a dependent pair yields [`Error::Connects`].
    pub fn new(r: Scalar, rho: Scalar) -> Result<Self> {
        match check_nc(&r, &rho)? {
            NcVerdict {
                witness: Some((k, l)),
                ..
            } => Err(Error::Connects { k, l }),
            _ => Ok(NcPair { r, rho }),
        }
    }

    pub fn r(&self) -> &Scalar {
        &self.r
    }

    pub fn rho(&self) -> &Scalar {
        &self.rho
    }
}

impl Default for NcPair {
    /// `r = 1/2`, `rho = 3`.
    fn default() -> Self {
        NcPair {
            r: Scalar::new(1, 2),
            rho: Scalar::integer(3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    /// Exhaustive search for r^k = rho^l over |k|, |l| <= bound.
    fn brute_force(r: &Scalar, rho: &Scalar, bound: i64) -> Option<(i64, i64)> {
        for k in -bound..=bound {
            let rk = r.pow(k).unwrap();
            for l in -bound..=bound {
                if (k, l) != (0, 0) && rk == rho.pow(l).unwrap() {
                    return Some((k, l));
                }
            }
        }
        None
    }

    #[test]
    fn half_and_two_connect() {
        let v = check_nc(&s("1/2"), &s("2")).unwrap();
        assert_eq!(v, NcVerdict { is_nc: false, witness: Some((1, -1)) });
    }

    #[test]
    fn half_and_three_never_connect() {
        let v = check_nc(&s("1/2"), &s("3")).unwrap();
        assert!(v.is_nc && v.witness.is_none());
        assert_eq!(brute_force(&s("1/2"), &s("3"), 64), None);
    }

    #[test]
    fn composite_dependent_pair() {
        let (r, rho) = (s("4/9"), s("27/8"));
        let v = check_nc(&r, &rho).unwrap();
        assert_eq!(v.witness, Some((3, -2)));
        assert_eq!(r.pow(3).unwrap(), rho.pow(-2).unwrap());
        assert_eq!(r.pow(3).unwrap(), s("64/729"));
        assert!(brute_force(&r, &rho, 4).is_some());
    }

    #[test]
    fn same_primes_different_ratios() {
        // {2:1,3:-2} vs {2:1,3:1}: same support, not parallel.
        assert!(check_nc(&s("2/9"), &s("6")).unwrap().is_nc);
        // Different supports.
        assert!(check_nc(&s("2/3"), &s("5")).unwrap().is_nc);
        assert!(check_nc(&s("1/6"), &s("2")).unwrap().is_nc);
    }

    #[test]
    fn range_violations_are_errors() {
        assert!(matches!(check_nc(&s("1"), &s("3")), Err(Error::Precondition(m)) if m.contains("r = 1")));
        assert!(matches!(check_nc(&s("0"), &s("3")), Err(Error::Precondition(_))));
        assert!(matches!(check_nc(&s("1/2"), &s("1")), Err(Error::Precondition(m)) if m.contains("rho")));
        assert!(matches!(check_nc(&s("3"), &s("1/2")), Err(Error::Precondition(_))));
    }

    #[test]
    fn pair_constructor() {
        assert!(NcPair::new(s("1/2"), s("3")).is_ok());
        assert_eq!(
            NcPair::new(s("1/4"), s("8")),
            Err(Error::Connects { k: 3, l: -2 })
        );
        assert_eq!(NcPair::default(), NcPair::new(s("1/2"), s("3")).unwrap());
    }

    #[test]
    fn verdict_json_shape() {
        let v = check_nc(&s("1/2"), &s("2")).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"is_nc":false,"witness":[1,-1]}"#);
        let v = check_nc(&s("1/2"), &s("3")).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"is_nc":true,"witness":null}"#);
    }

    #[test]
    fn witness_is_minimal() {
        // 2^-3 and 2^2: (1/8)^2 = 4^-3
        let v = check_nc(&s("1/8"), &s("4")).unwrap();
        assert_eq!(v.witness, Some((2, -3)));
        assert_eq!(s("1/8").pow(2).unwrap(), s("4").pow(-3).unwrap());
    }
}
