//! Orbits under the two slopes that stay in `[0, 1]` and push their running
//! maximum towards 1.
//!
//! [`greedy_sequence`] applies the expanding slope whenever the result stays
//! in the unit interval and the contracting slope otherwise.
//! [`oracle_best_sequence`] searches every admissible word exhaustively and
//! exists to check the greedy rule, never to replace it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nc::NcPair;
use crate::scalars::Scalar;

/// Default longest word [`oracle_best_sequence`] will search.
pub const DEFAULT_ORACLE_MAX_LEN: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub start: Scalar,
    /// Each entry is `r` or `rho`.
    pub symbols: Vec<Scalar>,
    /// `partials[i] = symbols[0] * ... * symbols[i] * start`.
    pub partials: Vec<Scalar>,
    /// Maximum of `start` and all partials.
    pub running_max: Scalar,
}

impl GreedyTrace {
    fn new(start: Scalar) -> Self {
        GreedyTrace {
            running_max: start.clone(),
            start,
            symbols: Vec::new(),
            partials: Vec::new(),
        }
    }

    fn push(&mut self, symbol: Scalar, partial: Scalar) {
        if partial > self.running_max {
            self.running_max = partial.clone();
        }
        self.symbols.push(symbol);
        self.partials.push(partial);
    }

    pub fn len(&self) -> usize {
        self.partials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partials.is_empty()
    }

    /// The current value: the last partial, or `start` for an empty trace.
    pub fn current(&self) -> &Scalar {
        self.partials.last().unwrap_or(&self.start)
    }
}

/// Infinite greedy orbit, yielding `(symbol, partial)` pairs.
#[derive(Clone, Debug)]
pub struct Greedy<'a> {
    pair: &'a NcPair,
    current: Scalar,
}

impl<'a> Greedy<'a> {
    pub fn new(start: Scalar, pair: &'a NcPair) -> Self {
        Greedy {
            pair,
            current: start,
        }
    }
}

impl Iterator for Greedy<'_> {
    type Item = (Scalar, Scalar);

    fn next(&mut self) -> Option<Self::Item> {
        // rho * x == 1 counts as admissible: it reaches 1 exactly.
        let up = self.pair.rho() * &self.current;
        let (symbol, next) = if up.in_unit_interval() {
            (self.pair.rho().clone(), up)
        } else {
            (self.pair.r().clone(), self.pair.r() * &self.current)
        };
        self.current = next.clone();
        Some((symbol, next))
    }
}

fn check_start(x: &Scalar) -> Result<()> {
    if !x.is_positive() || x >= &Scalar::one() {
        return Err(Error::Domain(format!("start {x} is not in (0, 1)")));
    }
    Ok(())
}

/// Run the greedy rule for exactly `steps` steps.
pub fn greedy_sequence(x: &Scalar, pair: &NcPair, steps: usize) -> Result<GreedyTrace> {
    check_start(x)?;
    let mut trace = GreedyTrace::new(x.clone());
    for (symbol, partial) in Greedy::new(x.clone(), pair).take(steps) {
        trace.push(symbol, partial);
    }
    Ok(trace)
}

/// Run the greedy rule until at least `min_steps` steps are taken and the
/// running maximum reaches `target`, or `max_steps` is hit.
pub fn greedy_until(
    x: &Scalar,
    pair: &NcPair,
    target: &Scalar,
    min_steps: usize,
    max_steps: usize,
) -> Result<GreedyTrace> {
    check_start(x)?;
    let mut trace = GreedyTrace::new(x.clone());
    for (symbol, partial) in Greedy::new(x.clone(), pair).take(max_steps.max(min_steps)) {
        if trace.len() >= min_steps && &trace.running_max >= target {
            break;
        }
        trace.push(symbol, partial);
    }
    Ok(trace)
}

/// Exhaustive search over all `{r, rho}` words of length at most `steps`
/// whose partials stay in `[0, 1]`, returning one with the largest running
/// maximum. Ties go to the first word found, trying `r` before `rho`.
pub fn oracle_best_sequence(
    x: &Scalar,
    r: &Scalar,
    rho: &Scalar,
    steps: usize,
    max_len: usize,
) -> Result<GreedyTrace> {
    check_start(x)?;
    if !r.is_positive() || !rho.is_positive() {
        return Err(Error::Domain("slopes must be positive".into()));
    }
    if steps > max_len {
        return Err(Error::Resource(format!(
            "exhaustive search over words of length {steps} exceeds the limit {max_len}"
        )));
    }
    let mut search = Search {
        slopes: [r, rho],
        best: GreedyTrace::new(x.clone()),
        path: GreedyTrace::new(x.clone()),
        steps,
    };
    search.descend();
    Ok(search.best)
}

struct Search<'a> {
    slopes: [&'a Scalar; 2],
    best: GreedyTrace,
    path: GreedyTrace,
    steps: usize,
}

impl Search<'_> {
    fn descend(&mut self) {
        if self.path.running_max > self.best.running_max {
            self.best = self.path.clone();
        }
        if self.path.len() == self.steps || self.best.running_max.is_one() {
            return;
        }
        for slope in self.slopes {
            let next = slope * self.path.current();
            if !next.in_unit_interval() {
                continue;
            }
            let saved_max = self.path.running_max.clone();
            self.path.push(slope.clone(), next);
            self.descend();
            self.path.symbols.pop();
            self.path.partials.pop();
            self.path.running_max = saved_max;
        }
    }
}
