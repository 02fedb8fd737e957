//! JSON leg files.
//!
//! ```json
//! {"relation": {"slopes": ["1/2","1","3"]}, "depth": 3,
//!  "legs": [{"word": ["3","1/2","3"], "t_max": "2/9"}]}
//! ```
//!
//! Prefix products are not stored; loading rebuilds every leg from its word
//! and rejects the file if a stored `t_max` disagrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mahavier::{FanApprox, Leg, RelationSpec, Word};
use crate::scalars::Scalar;

#[derive(Debug, Serialize, Deserialize)]
struct RelationRecord {
    slopes: Vec<Scalar>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LegRecord {
    word: Vec<Scalar>,
    t_max: Scalar,
}

#[derive(Debug, Serialize, Deserialize)]
struct LegFile {
    relation: RelationRecord,
    depth: usize,
    legs: Vec<LegRecord>,
}

pub fn to_json(fan: &FanApprox) -> String {
    let file = LegFile {
        relation: RelationRecord {
            slopes: fan.relation().slopes().to_vec(),
        },
        depth: fan.depth(),
        legs: fan
            .legs()
            .iter()
            .map(|l| LegRecord {
                word: l.word().symbols().to_vec(),
                t_max: l.t_max().clone(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("leg file serializes")
}

pub fn from_json(text: &str) -> Result<FanApprox> {
    let file: LegFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("leg file: {e}")))?;
    let relation = RelationSpec::new(file.relation.slopes)?;
    let mut legs = Vec::with_capacity(file.legs.len());
    for rec in file.legs {
        let leg = Leg::new(Word::new(rec.word)?);
        if leg.t_max() != &rec.t_max {
            return Err(Error::Parse(format!(
                "leg {} records t_max {} but its products give {}",
                leg.word(),
                rec.t_max,
                leg.t_max()
            )));
        }
        legs.push(leg);
    }
    FanApprox::from_legs(relation, file.depth, legs)
}
