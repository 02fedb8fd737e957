//! Finite-depth Mahavier products of slope-union relations on `[0, 1]`.
//!
//! A relation is a finite union of lines through the origin clipped to the
//! unit square. Its Mahavier product is the set of sequences whose
//! consecutive pairs lie in the relation. Every such sequence sits on a
//! straight leg `t -> (t, P_1 t, P_2 t, ...)` indexed by a word of slopes,
//! where `P_k` is the product of the first `k` symbols. At depth `n` a leg is
//! an exact segment in `[0,1]^(n+1)`; clipping to the cube is the parameter
//! cap `t_max`.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// `3^12`: default cap on the number of words enumerated at once.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 531_441;

/// Legs whose cap falls below `2^-20` are reported as degenerating.
pub const DEFAULT_DEGENERACY_EXPONENT: u32 = 20;

/// Which of the standard relations to build from a slope pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `{r, 1, rho}`: both lines plus the diagonal.
    F,
    /// `{r, 1}`: the contracting line plus the diagonal.
    G,
    /// `{r, rho}`: no diagonal.
    Lrr,
}

impl std::str::FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(RelationKind::F),
            "G" | "g" => Ok(RelationKind::G),
            "Lrr" | "lrr" | "L" => Ok(RelationKind::Lrr),
            _ => Err(Error::Parse(format!("unknown relation {s:?} (expected F, G or Lrr)"))),
        }
    }
}

/// A finite set of positive slopes, kept sorted ascending.
///
/// Denotes the union over `s` of `{(x, s x) : x in [0,1], s x in [0,1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationSpec {
    slopes: Vec<Scalar>,
}

impl RelationSpec {
    pub fn new(slopes: impl IntoIterator<Item = Scalar>) -> Result<Self> {
        let mut slopes: Vec<Scalar> = slopes.into_iter().collect();
        if slopes.is_empty() {
            return Err(Error::Domain("relation needs at least one slope".into()));
        }
        if let Some(bad) = slopes.iter().find(|s| !s.is_positive()) {
            return Err(Error::Domain(format!("slope {bad} is not positive")));
        }
        slopes.sort();
        if let Some(w) = slopes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("slope {} repeated", w[0])));
        }
        Ok(RelationSpec { slopes })
    }

    pub fn from_kind(kind: RelationKind, r: &Scalar, rho: &Scalar) -> Result<Self> {
        match kind {
            RelationKind::F => Self::new([r.clone(), Scalar::one(), rho.clone()]),
            RelationKind::G => Self::new([r.clone(), Scalar::one()]),
            RelationKind::Lrr => Self::new([r.clone(), rho.clone()]),
        }
    }

    pub fn slopes(&self) -> &[Scalar] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn index_of(&self, slope: &Scalar) -> Option<usize> {
        self.slopes.binary_search(slope).ok()
    }

    pub fn contains(&self, slope: &Scalar) -> bool {
        self.index_of(slope).is_some()
    }

    pub fn is_subset_of(&self, other: &RelationSpec) -> bool {
        self.slopes.iter().all(|s| other.contains(s))
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        word.symbols().iter().all(|s| self.contains(s))
    }

    /// Whether `(x, y)` lies in the relation.
    pub fn contains_pair(&self, x: &Scalar, y: &Scalar) -> bool {
        if !x.in_unit_interval() || !y.in_unit_interval() {
            return false;
        }
        if x.is_zero() {
            // The origin lies on every line; nothing else on the line x = 0 does.
            return y.is_zero();
        }
        self.contains(&(y / x))
    }

    /// Mahavier-product membership of a finite prefix.
    pub fn admits(&self, p: &PointPrefix) -> bool {
        p.coords.iter().all(Scalar::in_unit_interval)
            && p.coords.windows(2).all(|w| self.contains_pair(&w[0], &w[1]))
    }

    /// The word whose symbols are the slopes at the given indices.
    pub fn word_from_indices(&self, indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| self.slopes[i].clone()).collect())
    }
}

/// See [`RelationSpec::admits`].
pub fn membership(p: &PointPrefix, relation: &RelationSpec) -> bool {
    relation.admits(p)
}

/// A finite sequence of positive slope symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(Vec<Scalar>);

impl Word {
    pub fn new(symbols: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = symbols.iter().find(|s| !s.is_positive()) {
            return Err(Error::Domain(format!("word symbol {bad} is not positive")));
        }
        Ok(Word(symbols))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extended(&self, symbol: Scalar) -> Result<Word> {
        let mut symbols = self.0.clone();
        symbols.push(symbol);
        Word::new(symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// A leg of the fan: the segment `t -> (t, P_1 t, ..., P_n t)` for
/// `0 <= t <= t_max`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leg {
    word: Word,
    /// `P_1..=P_n`; the empty product `P_0 = 1` is implicit.
    prefix_products: Vec<Scalar>,
    t_max: Scalar,
}

impl Leg {
    pub fn new(word: Word) -> Leg {
        let mut prefix_products = Vec::with_capacity(word.len());
        let mut acc = Scalar::one();
        let mut peak = Scalar::one();
        for s in word.symbols() {
            acc = &acc * s;
            if acc > peak {
                peak = acc.clone();
            }
            prefix_products.push(acc.clone());
        }
        let t_max = peak.recip().expect("products of positive symbols are positive");
        Leg {
            word,
            prefix_products,
            t_max,
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn prefix_products(&self) -> &[Scalar] {
        &self.prefix_products
    }

    pub fn t_max(&self) -> &Scalar {
        &self.t_max
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    /// The leg point at parameter `t`.
    pub fn point(&self, t: &Scalar) -> Result<PointPrefix> {
        if t.is_negative() || t > &self.t_max {
            return Err(Error::Range {
                t: t.to_string(),
                t_max: self.t_max.to_string(),
            });
        }
        let mut coords = Vec::with_capacity(self.prefix_products.len() + 1);
        coords.push(t.clone());
        coords.extend(self.prefix_products.iter().map(|p| p * t));
        Ok(PointPrefix { coords })
    }

    /// The far end of the leg, at `t = t_max`; some coordinate equals 1.
    pub fn far_end(&self) -> PointPrefix {
        self.point(&self.t_max.clone()).expect("t_max is in range")
    }
}

/// See [`Leg::new`].
pub fn build_leg(word: Word) -> Leg {
    Leg::new(word)
}

/// See [`Leg::point`].
pub fn leg_point(leg: &Leg, t: &Scalar) -> Result<PointPrefix> {
    leg.point(t)
}

/// A finite prefix `(x_0, ..., x_n)` of a point of `[0,1]^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointPrefix {
    coords: Vec<Scalar>,
}

impl PointPrefix {
    /// Rejects empty prefixes and coordinates outside `[0, 1]`.
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Shape("a point prefix needs at least x_0".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.in_unit_interval()) {
            return Err(Error::Domain(format!("coordinate {bad} outside [0, 1]")));
        }
        Ok(PointPrefix { coords })
    }

    /// The apex `(0, ..., 0)` with `len` coordinates.
    pub fn top(len: usize) -> Self {
        PointPrefix {
            coords: vec![Scalar::zero(); len.max(1)],
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> Option<&Scalar> {
        self.coords.get(k)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn last(&self) -> &Scalar {
        self.coords.last().expect("nonempty")
    }

    /// Extend with constant (diagonal) steps up to `len` coordinates.
    pub fn padded(&self, len: usize) -> PointPrefix {
        let mut coords = self.coords.clone();
        while coords.len() < len {
            coords.push(self.last().clone());
        }
        PointPrefix { coords }
    }

    pub fn truncated(&self, len: usize) -> PointPrefix {
        PointPrefix {
            coords: self.coords[..len.clamp(1, self.coords.len())].to_vec(),
        }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Scalar>) -> Self {
        debug_assert!(!coords.is_empty());
        PointPrefix { coords }
    }
}

impl fmt::Display for PointPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Exact weighted distance between two prefixes of equal length, with the
/// largest amount any continuations could add.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricBound {
    /// `sum_k 2^-(k+1) |p_k - q_k|` over the prefix.
    pub value: Scalar,
    /// `2^-(n+1)` for prefixes of `n+1` coordinates.
    pub tail_bound: Scalar,
}

impl MetricBound {
    /// `value + tail_bound`, an upper bound on the distance of any
    /// continuations.
    pub fn upper(&self) -> Scalar {
        &self.value + &self.tail_bound
    }
}

pub fn truncated_metric(p: &PointPrefix, q: &PointPrefix) -> Result<MetricBound> {
    if p.len() != q.len() {
        return Err(Error::Shape(format!(
            "prefix lengths differ: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    let mut value = Scalar::zero();
    for (k, (a, b)) in p.coords.iter().zip(&q.coords).enumerate() {
        if a != b {
            value = value + (a - b).abs() * Scalar::dyadic(k as u32 + 1);
        }
    }
    Ok(MetricBound {
        value,
        tail_bound: Scalar::dyadic(p.len() as u32),
    })
}

/// A depth-`n` approximation: the legs of all words of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanApprox {
    relation: RelationSpec,
    depth: usize,
    legs: Vec<Leg>,
}

impl FanApprox {
    /// Assemble from legs, checking depth and alphabet.
    pub fn from_legs(relation: RelationSpec, depth: usize, legs: Vec<Leg>) -> Result<Self> {
        for leg in &legs {
            if leg.depth() != depth {
                return Err(Error::Shape(format!(
                    "leg {} has depth {}, expected {depth}",
                    leg.word(),
                    leg.depth()
                )));
            }
            if !relation.contains_word(leg.word()) {
                return Err(Error::Domain(format!(
                    "leg {} uses a slope outside the relation",
                    leg.word()
                )));
            }
        }
        Ok(FanApprox {
            relation,
            depth,
            legs: dedup_by_products(legs),
        })
    }

    pub fn relation(&self) -> &RelationSpec {
        &self.relation
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn find(&self, word: &Word) -> Option<&Leg> {
        self.legs.iter().find(|l| l.word() == word)
    }

    /// Legs with `t_max < threshold`, in leg order.
    pub fn degenerating(&self, threshold: &Scalar) -> Vec<&Leg> {
        self.legs.iter().filter(|l| l.t_max() < threshold).collect()
    }
}

fn dedup_by_products(legs: Vec<Leg>) -> Vec<Leg> {
    let mut seen: HashSet<&[Scalar]> = HashSet::with_capacity(legs.len());
    let keep: Vec<bool> = legs
        .iter()
        .map(|l| seen.insert(l.prefix_products()))
        .collect();
    if keep.iter().all(|&k| k) {
        return legs;
    }
    legs.into_iter()
        .zip(keep)
        .filter_map(|(l, k)| k.then_some(l))
        .collect()
}

/// Number of words of length `depth`, or `None` on overflow.
pub fn word_count(relation: &RelationSpec, depth: usize) -> Option<u64> {
    let depth: u32 = depth.try_into().ok()?;
    (relation.len() as u64).checked_pow(depth)
}

/// All legs of the given depth, in lexicographic word order (by slope
/// index).
pub fn enumerate_legs(relation: &RelationSpec, depth: usize, budget: u64) -> Result<FanApprox> {
    let total = word_count(relation, depth)
        .filter(|&n| n <= budget)
        .ok_or_else(|| {
            Error::Resource(format!(
                "{}^{depth} words exceed the enumeration budget of {budget}; use sampling instead",
                relation.len()
            ))
        })?;
    let k = relation.len() as u64;
    let legs: Vec<Leg> = (0..total)
        .into_par_iter()
        .map(|mut index| {
            let mut digits = vec![0usize; depth];
            for slot in digits.iter_mut().rev() {
                *slot = (index % k) as usize;
                index /= k;
            }
            Leg::new(relation.word_from_indices(&digits))
        })
        .collect();
    Ok(FanApprox {
        relation: relation.clone(),
        depth,
        legs: dedup_by_products(legs),
    })
}

/// `count` words drawn uniformly and independently, reproducible from
/// `seed`. Duplicates are kept.
pub fn sample_legs(relation: &RelationSpec, depth: usize, count: usize, seed: u64) -> Vec<Leg> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let digits: Vec<usize> = (0..depth).map(|_| rng.random_range(0..relation.len())).collect();
            Leg::new(relation.word_from_indices(&digits))
        })
        .collect()
}

/// Resolution of the parameter grid used by [`sample_points`].
pub const POINT_GRID: i64 = 1024;

/// `count` points of the product: a uniformly drawn leg evaluated at
/// `t = t_max * j / 1024`, `j` uniform in `1..=1024`.
pub fn sample_points(relation: &RelationSpec, depth: usize, count: usize, seed: u64) -> Vec<PointPrefix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let digits: Vec<usize> = (0..depth).map(|_| rng.random_range(0..relation.len())).collect();
            let leg = Leg::new(relation.word_from_indices(&digits));
            let j = rng.random_range(1..=POINT_GRID);
            let t = leg.t_max() * Scalar::new(j, POINT_GRID);
            leg.point(&t).expect("t within cap")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn word(xs: &[&str]) -> Word {
        Word::new(xs.iter().map(|x| s(x)).collect()).unwrap()
    }

    fn point(xs: &[&str]) -> PointPrefix {
        PointPrefix::new(xs.iter().map(|x| s(x)).collect()).unwrap()
    }

    fn f_rel() -> RelationSpec {
        RelationSpec::new([s("1/2"), s("1"), s("3")]).unwrap()
    }

    fn g_rel() -> RelationSpec {
        RelationSpec::new([s("1/2"), s("1")]).unwrap()
    }

    #[test]
    fn relation_validation() {
        assert!(RelationSpec::new([]).is_err());
        assert!(RelationSpec::new([s("0")]).is_err());
        assert!(RelationSpec::new([s("1"), s("2/2")]).is_err());
        let r = RelationSpec::new([s("3"), s("1/2"), s("1")]).unwrap();
        assert_eq!(r.slopes(), &[s("1/2"), s("1"), s("3")]);
        assert_eq!(r, RelationSpec::from_kind(RelationKind::F, &s("1/2"), &s("3")).unwrap());
        // r = 1 collides with the diagonal.
        assert!(RelationSpec::from_kind(RelationKind::G, &s("1"), &s("3")).is_err());
        assert!(g_rel().is_subset_of(&f_rel()));
        assert!(!f_rel().is_subset_of(&g_rel()));
    }

    #[test]
    fn membership_examples() {
        let f = f_rel();
        assert!(membership(&point(&["0", "0", "0"]), &f));
        // ratios 3, 1/2, 3
        assert!(membership(&point(&["2/9", "2/3", "1/3", "1"]), &f));
        // 3/4 / 1/2 = 3/2
        assert!(!membership(&point(&["1/2", "1/2", "3/4"]), &f));
        // leaving the origin is impossible
        assert!(!membership(&point(&["0", "1/2"]), &f));
        assert!(!membership(&point(&["1/2", "0"]), &f));
        assert!(membership(&point(&["1/2"]), &f));
    }

    #[test]
    fn point_prefix_validation() {
        assert!(PointPrefix::new(vec![]).is_err());
        assert!(PointPrefix::new(vec![s("3/2")]).is_err());
        assert!(PointPrefix::new(vec![s("-1/2")]).is_err());
        assert_eq!(point(&["1/2", "1/4"]).padded(4), point(&["1/2", "1/4", "1/4", "1/4"]));
        assert_eq!(point(&["1/2", "1/4", "1/8"]).truncated(2), point(&["1/2", "1/4"]));
    }

    #[test]
    fn build_leg_examples() {
        let leg = build_leg(word(&["1", "1", "1"]));
        assert_eq!(leg.t_max(), &s("1"));
        assert_eq!(leg.prefix_products(), &[s("1"), s("1"), s("1")]);

        let leg = build_leg(word(&["3", "1/2", "3"]));
        assert_eq!(leg.prefix_products(), &[s("3"), s("3/2"), s("9/2")]);
        assert_eq!(leg.t_max(), &s("2/9"));

        let leg = build_leg(word(&["1/2", "1/2"]));
        assert_eq!(leg.prefix_products(), &[s("1/2"), s("1/4")]);
        assert_eq!(leg.t_max(), &s("1"));
    }

    #[test]
    fn leg_point_examples() {
        let leg = build_leg(word(&["3", "1/2", "3"]));
        assert!(leg.point(&Scalar::zero()).unwrap().is_top());
        let p = leg.point(&s("2/9")).unwrap();
        assert_eq!(p, point(&["2/9", "2/3", "1/3", "1"]));
        assert!(membership(&p, &f_rel()));
        assert_eq!(leg.far_end(), p);

        let diag = build_leg(word(&["1", "1", "1"]));
        assert_eq!(diag.point(&s("1")).unwrap(), point(&["1", "1", "1", "1"]));

        assert!(matches!(leg.point(&s("1/4")), Err(Error::Range { .. })));
        assert!(matches!(leg.point(&s("-1/4")), Err(Error::Range { .. })));
    }

    #[test]
    fn enumerate_examples() {
        let fan = enumerate_legs(&f_rel(), 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let caps: Vec<_> = fan.legs().iter().map(|l| l.t_max().clone()).collect();
        assert_eq!(caps, vec![s("1"), s("1"), s("1/3")]);

        let fan = enumerate_legs(&g_rel(), 4, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(fan.legs().len(), 16);
        assert!(fan.legs().iter().all(|l| l.t_max().is_one()));

        let fan = enumerate_legs(&f_rel(), 0, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(fan.legs().len(), 1);
        assert!(fan.legs()[0].word().is_empty());
        assert!(fan.legs()[0].t_max().is_one());
        assert_eq!(fan.legs()[0].far_end(), point(&["1"]));
    }

    #[test]
    fn enumerate_respects_budget() {
        let err = enumerate_legs(&f_rel(), 5, 100).unwrap_err();
        assert!(matches!(err, Error::Resource(m) if m.contains("sampling")));
        assert!(enumerate_legs(&f_rel(), 200, u64::MAX).is_err());
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let fan = enumerate_legs(&f_rel(), 2, 100).unwrap();
        let words: Vec<String> = fan.legs().iter().map(|l| l.word().to_string()).collect();
        assert_eq!(words[0], "(1/2, 1/2)");
        assert_eq!(words[1], "(1/2, 1)");
        assert_eq!(words[3], "(1, 1/2)");
        assert_eq!(words[8], "(3, 3)");
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_legs(&f_rel(), 40, 100, 7);
        let b = sample_legs(&f_rel(), 40, 100, 7);
        assert_eq!(a.len(), 100);
        assert_eq!(a, b);
        assert_ne!(a, sample_legs(&f_rel(), 40, 100, 8));

        let small = sample_legs(&f_rel(), 1, 10, 1);
        assert_eq!(small.len(), 10);
        assert!(small.iter().all(|l| f_rel().contains_word(l.word())));

        let all = enumerate_legs(&g_rel(), 5, 100).unwrap();
        for leg in sample_legs(&g_rel(), 5, 32, 3) {
            assert!(all.find(leg.word()).is_some());
        }

        let pts = sample_points(&f_rel(), 12, 50, 9);
        assert_eq!(pts, sample_points(&f_rel(), 12, 50, 9));
        assert!(pts.iter().all(|p| p.len() == 13 && membership(p, &f_rel())));
    }

    #[test]
    fn metric_examples() {
        let p = point(&["2/9", "2/3", "1/3", "1"]);
        let m = truncated_metric(&p, &p).unwrap();
        assert!(m.value.is_zero());

        let m = truncated_metric(&PointPrefix::top(4), &p).unwrap();
        // 2/9 * 1/2 + 2/3 * 1/4 + 1/3 * 1/8 + 1 * 1/16
        assert_eq!(m.value, s("55/144"));
        assert_eq!(m.tail_bound, s("1/16"));

        let m = truncated_metric(&point(&["1", "1"]), &point(&["0", "0"])).unwrap();
        assert_eq!(m.value, s("3/4"));
        assert_eq!(m.tail_bound, s("1/4"));
        assert_eq!(m.upper(), s("1"));

        assert!(matches!(
            truncated_metric(&point(&["1"]), &point(&["1", "1"])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn degenerating_legs_are_flagged() {
        let fan = enumerate_legs(&f_rel(), 3, 100).unwrap();
        // The only product above 20 is 3^3.
        let flagged = fan.degenerating(&s("1/20"));
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].word(), &word(&["3", "3", "3"]));
        assert_eq!(flagged[0].t_max(), &s("1/27"));
    }

    #[test]
    fn from_legs_checks_alphabet_and_depth() {
        let legs = vec![build_leg(word(&["1/2", "3"]))];
        assert!(FanApprox::from_legs(f_rel(), 2, legs.clone()).is_ok());
        assert!(matches!(FanApprox::from_legs(f_rel(), 3, legs.clone()), Err(Error::Shape(_))));
        assert!(matches!(FanApprox::from_legs(g_rel(), 2, legs), Err(Error::Domain(_))));
        let dup = vec![build_leg(word(&["1/2"])), build_leg(word(&["1/2"]))];
        assert_eq!(FanApprox::from_legs(f_rel(), 1, dup).unwrap().legs().len(), 1);
    }

    fn word_strategy(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..3, len)
    }

    proptest! {
        #[test]
        fn caps_shrink_under_extension(w in word_strategy(0..20), next in 0usize..3) {
            let f = f_rel();
            let leg = Leg::new(f.word_from_indices(&w));
            let mut ext = w.clone();
            ext.push(next);
            let longer = Leg::new(f.word_from_indices(&ext));
            prop_assert!(longer.t_max() <= leg.t_max());
            prop_assert!(leg.t_max().is_positive() && leg.t_max() <= &Scalar::one());
        }

        #[test]
        fn leg_points_are_members(w in word_strategy(0..16), j in 0i64..=64) {
            let f = f_rel();
            let leg = Leg::new(f.word_from_indices(&w));
            let t = leg.t_max() * Scalar::new(j, 64);
            let p = leg.point(&t).unwrap();
            prop_assert!(membership(&p, &f));
            prop_assert_eq!(p.len(), w.len() + 1);
        }

        #[test]
        fn g_legs_have_full_caps(w in proptest::collection::vec(0usize..2, 0..30)) {
            let leg = Leg::new(g_rel().word_from_indices(&w));
            prop_assert!(leg.t_max().is_one());
        }

        #[test]
        fn g_legs_are_f_legs(w in proptest::collection::vec(0usize..2, 0..12), j in 0i64..=32) {
            let g_leg = Leg::new(g_rel().word_from_indices(&w));
            let f_leg = Leg::new(g_leg.word().clone());
            prop_assert!(f_rel().contains_word(g_leg.word()));
            prop_assert_eq!(&g_leg, &f_leg);
            let p = g_leg.point(&Scalar::new(j, 32)).unwrap();
            prop_assert!(membership(&p, &f_rel()));
        }

        #[test]
        fn metric_sandwich_under_extension(
            a in proptest::collection::vec(0i64..=16, 2..12),
            b in proptest::collection::vec(0i64..=16, 2..12),
        ) {
            let n = a.len().min(b.len());
            let full_p: Vec<Scalar> = a[..n].iter().map(|&x| Scalar::new(x, 16)).collect();
            let full_q: Vec<Scalar> = b[..n].iter().map(|&x| Scalar::new(x, 16)).collect();
            let mut prev: Option<MetricBound> = None;
            for len in 1..=n {
                let p = PointPrefix::new(full_p[..len].to_vec()).unwrap();
                let q = PointPrefix::new(full_q[..len].to_vec()).unwrap();
                let m = truncated_metric(&p, &q).unwrap();
                if let Some(prev) = &prev {
                    prop_assert!(m.value >= prev.value);
                    prop_assert!(m.upper() <= prev.upper());
                }
                prev = Some(m);
            }
        }
    }
}
