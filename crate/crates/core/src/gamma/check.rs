use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{GGammaSet, GammaSet, Restricted, TupleCodec};
use crate::diagram::{bousfield_family, segal_family, GammaOpMap};
use crate::error::{Error, Result};
use crate::ggamma::GGammaMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Segal,
    Bousfield,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Segal => "segal",
            Condition::Bousfield => "bousfield",
        }
    }

    /// The family of maps `n -> 1` assembled into `X(n) -> X(1)ⁿ`.
    pub fn family(self, n: usize) -> Vec<GammaOpMap> {
        match self {
            Condition::Segal => segal_family(n),
            Condition::Bousfield => bousfield_family(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionFailure {
    /// `X(0)` is not a single point.
    BasepointLevel { cardinality: usize },
    /// Two elements of `X(level)` have the same image tuple.
    NotInjective {
        level: usize,
        first: usize,
        second: usize,
        image: Vec<usize>,
    },
    /// A tuple in `X(1)^level` is not hit.
    NotSurjective { level: usize, missing: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub upto: usize,
    pub failure: Option<ConditionFailure>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failing_level(&self) -> Option<usize> {
        match self.failure.as_ref()? {
            ConditionFailure::BasepointLevel { .. } => Some(0),
            ConditionFailure::NotInjective { level, .. }
            | ConditionFailure::NotSurjective { level, .. } => Some(*level),
        }
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "strict {} condition up to {}: ",
            self.condition.name(),
            self.upto
        )?;
        match &self.failure {
            None => f.write_str("holds"),
            Some(ConditionFailure::BasepointLevel { cardinality }) => {
                write!(f, "X(0) has {cardinality} elements")
            }
            Some(ConditionFailure::NotInjective {
                level,
                first,
                second,
                image,
            }) => write!(
                f,
                "level {level}: elements {first} and {second} both map to {image:?}"
            ),
            Some(ConditionFailure::NotSurjective { level, missing }) => {
                write!(f, "level {level}: tuple {missing:?} is not hit")
            }
        }
    }
}

/// Checks that `X(0)` is a point and that the assembled map
/// `X(n) -> X(1)ⁿ` is a bijection for `2 <= n <= upto`.
pub fn check_condition<X: GammaSet + ?Sized>(
    x: &X,
    condition: Condition,
    upto: usize,
) -> Result<ConditionReport> {
    if upto > x.truncation() {
        return Err(Error::InsufficientTruncation {
            required: upto,
            available: x.truncation(),
        });
    }
    let report = |failure| ConditionReport {
        condition,
        upto,
        failure,
    };
    let base = x.cardinality(0);
    if base != 1 {
        return Ok(report(Some(ConditionFailure::BasepointLevel {
            cardinality: base,
        })));
    }
    let ones = x.cardinality(1);
    for n in 2..=upto {
        if let Some(failure) = check_level(x, condition, n, ones) {
            return Ok(report(Some(failure)));
        }
    }
    Ok(report(None))
}

fn check_level<X: GammaSet + ?Sized>(
    x: &X,
    condition: Condition,
    n: usize,
    ones: usize,
) -> Option<ConditionFailure> {
    let family = condition.family(n);
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for e in 0..x.cardinality(n) {
        let image: Vec<usize> = family.iter().map(|f| x.act(f, e)).collect();
        if let Some(&first) = seen.get(&image) {
            return Some(ConditionFailure::NotInjective {
                level: n,
                first,
                second: e,
                image,
            });
        }
        seen.insert(image, e);
    }
    // Injective; the first tuple in lexicographic order that is not hit.
    let codec = TupleCodec::new(ones.max(1));
    let total = codec.count(n).unwrap_or(usize::MAX);
    if ones == 0 {
        return None;
    }
    let mut candidate = 0usize;
    for image in seen.keys() {
        let code = codec.encode(image);
        if code != candidate {
            break;
        }
        candidate += 1;
    }
    (candidate < total).then(|| ConditionFailure::NotSurjective {
        level: n,
        missing: codec.decode(candidate, n),
    })
}

pub fn check_strict_segal<X: GammaSet + ?Sized>(x: &X, upto: usize) -> Result<ConditionReport> {
    check_condition(x, Condition::Segal, upto)
}

pub fn check_strict_bousfield<X: GammaSet + ?Sized>(x: &X, upto: usize) -> Result<ConditionReport> {
    check_condition(x, Condition::Bousfield, upto)
}

/// The GΓ conditions use the projections `p_{n,i,G}`, which are the images
/// of the Γ maps under the diagonal inclusion.
pub fn check_strict_segal_g<X: GGammaSet + ?Sized>(x: &X, upto: usize) -> Result<ConditionReport> {
    check_condition(&Restricted(x), Condition::Segal, upto)
}

pub fn check_strict_bousfield_g<X: GGammaSet + ?Sized>(
    x: &X,
    upto: usize,
) -> Result<ConditionReport> {
    check_condition(&Restricted(x), Condition::Bousfield, upto)
}

/// Checks `X(g ∘ f) = X(g) ∘ X(f)` and `X(id) = id` on every listed pair
/// `(g, f)`. Returns the number of pairs checked.
pub fn check_functoriality<X, I>(x: &X, pairs: I) -> Result<usize>
where
    X: GammaSet + ?Sized,
    I: IntoIterator<Item = (GammaOpMap, GammaOpMap)>,
{
    let mut count = 0;
    for (g, f) in pairs {
        let gf = g.compose(&f)?;
        let src = f.source();
        for e in 0..x.cardinality(src) {
            if x.act(&gf, e) != x.act(&g, x.act(&f, e)) {
                return Err(Error::NotFunctorial {
                    level: src,
                    element: e,
                });
            }
        }
        let id = GammaOpMap::identity(src);
        for e in 0..x.cardinality(src) {
            if x.act(&id, e) != e {
                return Err(Error::NotFunctorial {
                    level: src,
                    element: e,
                });
            }
        }
        count += 1;
    }
    Ok(count)
}

pub fn check_functoriality_g<X, I>(x: &X, pairs: I) -> Result<usize>
where
    X: GGammaSet + ?Sized,
    I: IntoIterator<Item = (GGammaMap, GGammaMap)>,
{
    let group = x.group();
    let mut count = 0;
    for (g, f) in pairs {
        let gf = g.compose(&f, group)?;
        let src = f.source();
        for e in 0..x.cardinality(src) {
            if x.act(&gf, e) != x.act(&g, x.act(&f, e)) {
                return Err(Error::NotFunctorial {
                    level: src,
                    element: e,
                });
            }
        }
        let id = GGammaMap::identity(src);
        for e in 0..x.cardinality(src) {
            if x.act(&id, e) != e {
                return Err(Error::NotFunctorial {
                    level: src,
                    element: e,
                });
            }
        }
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAbMonoid;
    use crate::gamma::{build_gamma_set, tabulate, TabulatedGammaSet};
    use alloc::vec;

    #[test]
    fn monoid_built_is_segal() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(2), 4).unwrap();
        assert!(check_strict_segal(&x, 4).unwrap().passed());
        assert!(check_strict_segal(&x, 1).unwrap().passed());
        assert!(check_strict_segal(&x, 5).is_err());
    }

    #[test]
    fn bousfield_examples() {
        let z3 = build_gamma_set(&FinAbMonoid::cyclic(3), 3).unwrap();
        assert!(check_strict_bousfield(&z3, 3).unwrap().passed());

        let max = build_gamma_set(&FinAbMonoid::max_chain(2), 3).unwrap();
        let report = check_strict_bousfield(&max, 3).unwrap();
        let codec = TupleCodec::new(2);
        assert_eq!(
            report.failure,
            Some(ConditionFailure::NotInjective {
                level: 2,
                first: codec.encode(&[1, 0]),
                second: codec.encode(&[1, 1]),
                image: vec![1, 1],
            })
        );
        assert!(check_strict_bousfield(&max, 1).unwrap().passed());
    }

    /// Replace `X(2)` by a 3-element set: project everything through the
    /// first three elements.
    fn shrink_level_two(x: &TabulatedGammaSet) -> TabulatedGammaSet {
        let mut sizes = x.sizes().to_vec();
        sizes[2] = 3;
        let tables = x
            .tables()
            .iter()
            .filter(|(f, _)| f.source() <= 2 && f.target() <= 2)
            .map(|(f, t)| {
                let t: Vec<usize> = t
                    .iter()
                    .take(sizes[f.source()])
                    .map(|&v| if f.target() == 2 { v % 3 } else { v })
                    .collect();
                (f.clone(), t)
            })
            .collect();
        sizes.truncate(3);
        TabulatedGammaSet::new(sizes, tables).unwrap()
    }

    #[test]
    fn small_level_two_fails() {
        let x = tabulate(
            &build_gamma_set(&FinAbMonoid::cyclic(2), 2).unwrap(),
            1 << 20,
        )
        .unwrap();
        let broken = shrink_level_two(&x);
        let report = check_strict_segal(&broken, 2).unwrap();
        assert_eq!(report.failing_level(), Some(2));
        assert!(matches!(
            report.failure,
            Some(ConditionFailure::NotSurjective { .. })
        ));
    }

    #[test]
    fn fat_basepoint_fails() {
        let mut sizes = vec![2, 1];
        let mut tables = BTreeMap::new();
        for m in 0..=1 {
            for n in 0..=1 {
                for f in GammaOpMap::hom_set(m, n) {
                    let t = (0..sizes[m])
                        .map(|e| if n == 0 { e.min(sizes[0] - 1) } else { 0 })
                        .collect();
                    tables.insert(f, t);
                }
            }
        }
        sizes.truncate(2);
        let x = TabulatedGammaSet::new(sizes, tables).unwrap();
        let report = check_strict_segal(&x, 1).unwrap();
        assert_eq!(
            report.failure,
            Some(ConditionFailure::BasepointLevel { cardinality: 2 })
        );
    }
}
