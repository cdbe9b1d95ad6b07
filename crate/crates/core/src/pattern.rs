//! Lift-intersection patterns in the infinite cyclic cover.
//!
//! Fix a lift `S_0` of a Seifert surface `S` and write `S_n` for its
//! translate under the `n`-th power of the deck generator. The lift `S*_0`
//! of a second surface `S*` is the one whose boundary sits between `S_0` and
//! `S_1`. An [`OffsetPattern`] records which translates `S_n` meet `S*_0`
//! and how many curves each intersection has. Since a connected lift that
//! crosses linearly stacked translates meets a contiguous run of them, the
//! support is stored as an interval `[start, start + len - 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A named violation of the [`OffsetPattern`] invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// Some entry of `counts` is zero, so the support has a hole.
    ZeroCount,
    /// Nonempty support that meets neither `0` nor `1`.
    SupportMissesOrigin,
}

impl Violation {
    pub fn name(self) -> &'static str {
        match self {
            Violation::ZeroCount => "zero count breaks contiguity",
            Violation::SupportMissesOrigin => "support misses {0,1}",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern is not normalized: {0}")]
    Normalization(Violation),
    #[error("invalid pattern: {}", .0.iter().map(|v| v.name()).collect::<Vec<_>>().join(", "))]
    Invalid(Vec<Violation>),
}

/// Which translates of one lift meet a fixed lift of the other surface.
///
/// An empty `counts` sequence means the two surfaces are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct OffsetPattern {
    support_start: i64,
    counts: Vec<u32>,
}

impl OffsetPattern {
    /// The pattern of a disjoint pair.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a pattern and checks every invariant.
    pub fn new(support_start: i64, counts: Vec<u32>) -> Result<Self, PatternError> {
        let p = Self::from_parts(support_start, counts);
        let violations = validate_pattern(&p);
        if violations.is_empty() {
            Ok(p)
        } else {
            Err(PatternError::Invalid(violations))
        }
    }

    /// Builds a pattern without validation. Use [`validate_pattern`] to
    /// inspect the result.
    pub fn from_parts(support_start: i64, counts: Vec<u32>) -> Self {
        if counts.is_empty() {
            return Self::empty();
        }
        Self { support_start, counts }
    }

    /// Support `{1, ..., k}` with every count equal to one.
    pub fn unit_run(k: usize) -> Self {
        Self::from_parts(1, vec![1; k])
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn support_start(&self) -> i64 {
        self.support_start
    }

    /// Last offset of the support, `None` for the empty pattern.
    pub fn support_end(&self) -> Option<i64> {
        if self.counts.is_empty() {
            None
        } else {
            Some(self.support_start + self.counts.len() as i64 - 1)
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Offsets `n` with `S_n` meeting `S*_0`.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(move |(i, _)| self.support_start + i as i64)
    }

    /// Whether `S_n` meets `S*_0`.
    pub fn meets(&self, n: i64) -> bool {
        self.count_at(n) > 0
    }

    /// Number of intersection curves between `S_n` and `S*_0`.
    pub fn count_at(&self, n: i64) -> u32 {
        if n < self.support_start {
            return 0;
        }
        self.counts.get((n - self.support_start) as usize).copied().unwrap_or(0)
    }
}

impl fmt::Display for OffsetPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.support_end() {
            None => f.write_str("empty"),
            Some(end) => {
                let counts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
                write!(f, "[{}..{}] ({})", self.support_start, end, counts.join(","))
            }
        }
    }
}

/// Reports every violated invariant. An empty list means the pattern is valid.
pub fn validate_pattern(p: &OffsetPattern) -> Vec<Violation> {
    let mut out = Vec::new();
    if p.counts.contains(&0) {
        out.push(Violation::ZeroCount);
    }
    if let Some(end) = p.support_end() {
        if p.support_start > 1 || end < 0 {
            out.push(Violation::SupportMissesOrigin);
        }
    }
    out
}

/// Whether the set of naturals used in the extremal clauses contains zero.
/// Both conventions give the same `(l_t, l_b)` on valid patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Naturals {
    WithZero,
    #[cfg_attr(not(test), allow(dead_code))]
    Positive,
}

/// The top and bottom levels `(l_t, l_b)`.
///
/// `l_t` is the largest natural `n` with `S_n` meeting `S*_0` when `S_1`
/// meets it, else `0`. `l_b` is the largest non-positive `n` with `S_n`
/// *missing* `S*_0` when `S_0` meets it, else `0`.
pub fn lt_lb(p: &OffsetPattern) -> Result<(i64, i64), PatternError> {
    lt_lb_with(p, Naturals::WithZero)
}

pub(crate) fn lt_lb_with(p: &OffsetPattern, naturals: Naturals) -> Result<(i64, i64), PatternError> {
    if let Some(v) = validate_pattern(p).into_iter().next() {
        return Err(PatternError::Normalization(v));
    }
    let first_natural = match naturals {
        Naturals::WithZero => 0,
        Naturals::Positive => 1,
    };

    let top = if p.meets(1) {
        // the support is finite, so the maximum exists
        p.support().filter(|&n| n >= first_natural).max().unwrap_or(0)
    } else {
        0
    };

    let bottom = if p.meets(0) {
        let mut n = -first_natural;
        while p.meets(n) {
            n -= 1;
        }
        n
    } else {
        0
    };

    Ok((top, bottom))
}

/// `l_t - l_b`. On valid patterns this is the length of the support.
pub fn covering_spread(p: &OffsetPattern) -> Result<u64, PatternError> {
    let (top, bottom) = lt_lb(p)?;
    Ok((top - bottom) as u64)
}

/// Total number of intersection curves downstairs.
pub fn intersection_number(p: &OffsetPattern) -> u64 {
    p.counts.iter().map(|&c| u64::from(c)).sum()
}

/// The pattern of the reversed pair.
///
/// With `S*` held fixed, the lift of `S` whose boundary lies between `S*_0`
/// and `S*_1` is `S_1`, and `S*_m` meets `S_1` exactly when `S_{1-m}` meets
/// `S*_0`. Offsets therefore map by `n -> 1 - n`.
pub fn dualize(p: &OffsetPattern) -> OffsetPattern {
    match p.support_end() {
        None => OffsetPattern::empty(),
        Some(end) => {
            let counts = p.counts.iter().rev().copied().collect();
            OffsetPattern::from_parts(1 - end, counts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pat(start: i64, counts: &[u32]) -> OffsetPattern {
        OffsetPattern::new(start, counts.to_vec()).unwrap()
    }

    #[test]
    fn empty_pattern_levels() {
        let p = OffsetPattern::empty();
        assert_eq!(lt_lb(&p).unwrap(), (0, 0));
        assert_eq!(covering_spread(&p).unwrap(), 0);
        assert_eq!(intersection_number(&p), 0);
        assert_eq!(dualize(&p), p);
        assert!(validate_pattern(&p).is_empty());
    }

    #[test]
    fn single_crossing_above() {
        let p = pat(1, &[1]);
        assert_eq!(lt_lb(&p).unwrap(), (1, 0));
        assert_eq!(covering_spread(&p).unwrap(), 1);
    }

    #[test]
    fn single_crossing_below() {
        // the other branch of the cs = 1 case: l_t = 0, l_b = -1
        let p = pat(0, &[1]);
        assert_eq!(lt_lb(&p).unwrap(), (0, -1));
        assert_eq!(covering_spread(&p).unwrap(), 1);
    }

    #[test]
    fn symmetric_run() {
        let p = pat(-1, &[1, 1, 1, 1]);
        assert_eq!(lt_lb(&p).unwrap(), (2, -2));
        assert_eq!(covering_spread(&p).unwrap(), 4);
        let q = pat(0, &[1, 1]);
        assert_eq!(lt_lb(&q).unwrap(), (1, -1));
        assert_eq!(covering_spread(&q).unwrap(), 2);
    }

    #[test]
    fn intersection_sums_counts() {
        assert_eq!(intersection_number(&pat(0, &[2, 3])), 5);
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(dualize(&pat(1, &[1])), pat(0, &[1]));
        assert_eq!(dualize(&pat(0, &[1, 2, 1])), pat(-1, &[1, 2, 1]));
        assert_eq!(dualize(&pat(-2, &[1, 2, 3, 4])), pat(0, &[4, 3, 2, 1]));
    }

    /// Positions along the boundary torus: `S_n` at `2n`, `S*_m` at `2m + 1`.
    /// Incidences are translation invariant, so `S_n` meets `S*_m` iff
    /// `S_{n-m}` meets `S*_0`. The reversed pattern is read off from the lift
    /// of `S` whose boundary falls between `S*_0` and `S*_1`.
    fn dual_by_schematic(p: &OffsetPattern) -> OffsetPattern {
        let incident = |n: i64, m: i64| p.count_at(n - m);
        let (lo, hi) = (1, 3);
        let s_lift = (-20i64..=20).find(|n| 2 * n > lo && 2 * n < hi).unwrap();
        let hits: Vec<(i64, u32)> = (-20i64..=20).map(|m| (m, incident(s_lift, m))).filter(|&(_, c)| c > 0).collect();
        match (hits.first(), hits.last()) {
            (Some(&(a, _)), Some(_)) => OffsetPattern::from_parts(a, hits.iter().map(|&(_, c)| c).collect()),
            _ => OffsetPattern::empty(),
        }
    }

    #[test]
    fn dualize_matches_schematic_oracle() {
        for a in -6i64..=1 {
            for b in a.max(0)..=6 {
                let len = (b - a + 1) as usize;
                let counts: Vec<u32> = (0..len).map(|i| 1 + (i as u32 * 7 + a.unsigned_abs() as u32) % 3).collect();
                let p = pat(a, &counts);
                assert_eq!(dualize(&p), dual_by_schematic(&p), "pattern {p}");
            }
        }
        assert_eq!(dual_by_schematic(&pat(1, &[1])), pat(0, &[1]));
        assert_eq!(dual_by_schematic(&pat(0, &[1, 2, 1])), pat(-1, &[1, 2, 1]));
    }

    #[test]
    fn violations_are_named() {
        let far = OffsetPattern::from_parts(3, vec![1, 1]);
        assert_eq!(validate_pattern(&far), vec![Violation::SupportMissesOrigin]);
        assert_eq!(far.to_string(), "[3..4] (1,1)");
        assert_eq!(Violation::SupportMissesOrigin.name(), "support misses {0,1}");
        let holey = OffsetPattern::from_parts(0, vec![1, 0, 1]);
        assert_eq!(validate_pattern(&holey), vec![Violation::ZeroCount]);
        assert_eq!(Violation::ZeroCount.name(), "zero count breaks contiguity");
        let below = OffsetPattern::from_parts(-4, vec![1, 1]);
        assert_eq!(validate_pattern(&below), vec![Violation::SupportMissesOrigin]);
        assert!(matches!(lt_lb(&far), Err(PatternError::Normalization(Violation::SupportMissesOrigin))));
        assert!(OffsetPattern::new(3, vec![1]).is_err());
    }

    #[test]
    fn naturals_convention_is_immaterial() {
        for a in -6i64..=1 {
            for b in a.max(0)..=6 {
                let p = pat(a, &vec![1; (b - a + 1) as usize]);
                assert_eq!(lt_lb_with(&p, Naturals::WithZero).unwrap(), lt_lb_with(&p, Naturals::Positive).unwrap());
            }
        }
    }

    #[test]
    fn spread_is_support_length_on_every_small_interval() {
        for a in -6i64..=1 {
            for b in a.max(0)..=6 {
                let len = (b - a + 1) as usize;
                let p = pat(a, &vec![2; len]);
                let (t, bot) = lt_lb(&p).unwrap();
                assert_eq!(covering_spread(&p).unwrap(), (t - bot) as u64);
                assert_eq!(covering_spread(&p).unwrap(), len as u64);
            }
        }
    }

    fn valid_pattern() -> impl Strategy<Value = OffsetPattern> {
        prop_oneof![
            1 => Just(OffsetPattern::empty()),
            9 => (-8i64..=1, 1usize..10)
                .prop_filter("support meets {0,1}", |(a, len)| a + *len as i64 - 1 >= 0)
                .prop_flat_map(|(a, len)| {
                    proptest::collection::vec(1u32..5, len)
                        .prop_map(move |counts| OffsetPattern::new(a, counts).unwrap())
                }),
        ]
    }

    proptest! {
        #[test]
        fn dualize_preserves_measures(p in valid_pattern()) {
            let d = dualize(&p);
            prop_assert!(validate_pattern(&d).is_empty());
            prop_assert_eq!(covering_spread(&d).unwrap(), covering_spread(&p).unwrap());
            prop_assert_eq!(intersection_number(&d), intersection_number(&p));
            prop_assert_eq!(dualize(&d), p);
        }

        #[test]
        fn spread_bounded_by_intersection(p in valid_pattern()) {
            let cs = covering_spread(&p).unwrap();
            let i = intersection_number(&p);
            prop_assert!(cs <= i);
            prop_assert_eq!(cs == i, p.counts().iter().all(|&c| c == 1));
            prop_assert_eq!(cs == 0, p.is_empty());
        }
    }
}
