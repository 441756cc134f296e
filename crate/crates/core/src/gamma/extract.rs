//! Recovering the algebra carried by a strict presheaf.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::check::{check_condition, Condition};
use super::{unit_of, GGammaSet, GammaSet, Restricted};
use crate::algebra::{FinAbGroup, FinAbMonoid, GMonoid};
use crate::diagram::{fold_map, segal_projection, GammaOpMap};
use crate::error::{Axiom, Error, Result};
use crate::ggamma::GGammaMap;

fn require_level_two<X: GammaSet + ?Sized>(x: &X) -> Result<()> {
    if x.truncation() < 2 {
        return Err(Error::InsufficientTruncation {
            required: 2,
            available: x.truncation(),
        });
    }
    Ok(())
}

/// The inverse of the (already verified bijective) map `X(2) -> X(1)²`,
/// as a table indexed by `a·|X(1)| + b`.
fn invert_at_two<X: GammaSet + ?Sized>(x: &X, condition: Condition) -> Result<Vec<usize>> {
    let report = check_condition(x, condition, 2)?;
    if !report.passed() {
        return Err(Error::NotStrict(Box::new(report)));
    }
    let ones = x.cardinality(1);
    let family = condition.family(2);
    let mut inverse = vec![usize::MAX; ones * ones];
    for e in 0..x.cardinality(2) {
        let (a, b) = (x.act(&family[0], e), x.act(&family[1], e));
        inverse[a * ones + b] = e;
    }
    debug_assert!(inverse.iter().all(|&e| e != usize::MAX));
    Ok(inverse)
}

/// The abelian monoid on `X(1)`: multiplication is `X(fold) ∘ φ₂⁻¹`, and
/// the unit is the image of the point of `X(0)`.
pub fn extract_monoid<X: GammaSet + ?Sized>(x: &X) -> Result<FinAbMonoid> {
    require_level_two(x)?;
    let inverse = invert_at_two(x, Condition::Segal)?;
    let ones = x.cardinality(1);
    let fold = fold_map(2);
    let rows = (0..ones)
        .map(|a| {
            (0..ones)
                .map(|b| x.act(&fold, inverse[a * ones + b]))
                .collect()
        })
        .collect();
    FinAbMonoid::new(rows, unit_of(x))
}

/// The monoid of [`extract_monoid`] on `X(1_G)` with `g` acting through the
/// automorphism `(id, g)`.
pub fn extract_g_monoid<X: GGammaSet + ?Sized>(x: &X) -> Result<GMonoid> {
    let monoid = extract_monoid(&Restricted(x))?;
    let group = x.group().clone();
    let rows = group
        .elements()
        .map(|g| {
            let t = GGammaMap::translation(1, g, &group).expect("element in range");
            (0..monoid.order()).map(|a| x.act(&t, a)).collect()
        })
        .collect();
    GMonoid::new(monoid, group, rows)
}

/// The abelian group on `X(1)` of a strict Bousfield presheaf.
///
/// With `d = X(φ_{2,2}) ∘ β₂⁻¹` (`β₂` the Bousfield map), the unit is
/// `u = d(a, a)`, inverses are `b⁻¹ = d(b, u)` and `a·b = d(a⁻¹, b)`. Each
/// group law is then checked on the full table rather than assumed.
pub fn extract_group_bousfield<X: GammaSet + ?Sized>(x: &X) -> Result<FinAbGroup> {
    require_level_two(x)?;
    let inverse = invert_at_two(x, Condition::Bousfield)?;
    let ones = x.cardinality(1);
    let second = segal_projection(2, 2).expect("2 <= 2");
    let d = |a: usize, b: usize| x.act(&second, inverse[a * ones + b]);

    let unit = d(0, 0);
    if let Some(a) = (1..ones).find(|&a| d(a, a) != unit) {
        return Err(Error::axiom(Axiom::UnitIndependence, vec![0, a]));
    }
    let inv: Vec<usize> = (0..ones).map(|b| d(b, unit)).collect();
    let rows = (0..ones)
        .map(|a| (0..ones).map(|b| d(inv[a], b)).collect())
        .collect();
    let monoid = FinAbMonoid::new(rows, unit)?;
    let group = FinAbGroup::with_inverse(monoid, inv)?;
    let unit_from_zero = x.act(&GammaOpMap::zero(0, 1), 0);
    if unit_from_zero != unit {
        return Err(Error::axiom(Axiom::Identity, vec![unit_from_zero, unit]));
    }
    Ok(group)
}

/// The G-equivariant version: the group of [`extract_group_bousfield`] on
/// `X(1_G)`, with its action by the automorphisms `(id, g)`.
pub fn extract_g_group_bousfield<X: GGammaSet + ?Sized>(x: &X) -> Result<(FinAbGroup, GMonoid)> {
    let group = extract_group_bousfield(&Restricted(x))?;
    let acting = x.group().clone();
    let rows = acting
        .elements()
        .map(|g| {
            let t = GGammaMap::translation(1, g, &acting).expect("element in range");
            (0..group.order()).map(|a| x.act(&t, a)).collect()
        })
        .collect();
    let gmonoid = GMonoid::new(group.monoid().clone(), acting, rows)?;
    Ok((group, gmonoid))
}

/// Whether the monoid on `X(1)` has two-sided inverses; for discrete levels
/// `π₀(X(1)) = X(1)`.
pub fn pi0_group_like<X: GammaSet + ?Sized>(x: &X) -> Result<bool> {
    Ok(extract_monoid(x)?.is_group())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_abelian_monoids;
    use crate::gamma::{build_gamma_set, build_ggamma_set, tabulate, TupleCodec};
    use crate::group::FiniteGroup;

    fn fixtures() -> Vec<FinAbMonoid> {
        vec![
            FinAbMonoid::cyclic(2),
            FinAbMonoid::cyclic(4),
            FinAbMonoid::cyclic(2).product(&FinAbMonoid::cyclic(2)),
            FinAbMonoid::max_chain(2),
            FinAbMonoid::trivial(),
        ]
    }

    #[test]
    fn monoid_roundtrip() {
        for m in fixtures() {
            let x = build_gamma_set(&m, 3).unwrap();
            assert_eq!(extract_monoid(&x).unwrap(), m);
        }
    }

    #[test]
    fn refuses_short_truncation() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(2), 1).unwrap();
        assert!(matches!(
            extract_monoid(&x),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn g_monoid_roundtrip() {
        let z3 = FinAbGroup::cyclic(3);
        for gm in [
            GMonoid::inversion(&z3),
            GMonoid::trivial_action(FinAbMonoid::cyclic(3), FiniteGroup::cyclic(2)),
        ] {
            let x = build_ggamma_set(&gm, 3).unwrap();
            let back = extract_g_monoid(&x).unwrap();
            assert_eq!(back, gm);
        }
    }

    #[test]
    fn bousfield_operation_is_difference() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(3), 3).unwrap();
        let inverse = invert_at_two(&x, Condition::Bousfield).unwrap();
        let second = segal_projection(2, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(x.act(&second, inverse[a * 3 + b]), (b + 3 - a) % 3);
            }
        }
        let g = extract_group_bousfield(&x).unwrap();
        assert_eq!(g, FinAbGroup::cyclic(3));
        assert_eq!(
            extract_group_bousfield(&build_gamma_set(&FinAbMonoid::trivial(), 2).unwrap()).unwrap(),
            FinAbGroup::cyclic(1)
        );
    }

    #[test]
    fn bousfield_refuses_non_groups() {
        let x = build_gamma_set(&FinAbMonoid::max_chain(2), 2).unwrap();
        assert!(matches!(
            extract_group_bousfield(&x),
            Err(Error::NotStrict(_))
        ));
    }

    #[test]
    fn group_like() {
        let yes = build_gamma_set(&FinAbMonoid::cyclic(3), 2).unwrap();
        let no = build_gamma_set(&FinAbMonoid::max_chain(2), 2).unwrap();
        let triv = build_gamma_set(&FinAbMonoid::trivial(), 2).unwrap();
        assert!(pi0_group_like(&yes).unwrap());
        assert!(!pi0_group_like(&no).unwrap());
        assert!(pi0_group_like(&triv).unwrap());
    }

    #[test]
    fn unit_from_diagonal_is_constant_on_every_group() {
        for order in 1..=4 {
            for m in enumerate_abelian_monoids(order)
                .into_iter()
                .filter(FinAbMonoid::is_group)
            {
                let x = build_gamma_set(&m, 2).unwrap();
                let inverse = invert_at_two(&x, Condition::Bousfield).unwrap();
                let second = segal_projection(2, 2).unwrap();
                let units: alloc::collections::BTreeSet<usize> = (0..order)
                    .map(|a| x.act(&second, inverse[a * order + a]))
                    .collect();
                assert_eq!(units.len(), 1);
            }
        }
    }

    #[test]
    fn corrupted_fold_is_refused() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(3), 2).unwrap();
        let mut t = tabulate(&x, 1 << 20).unwrap();
        // make 1 + 1 = 0 while keeping the Segal maps intact
        let pos = TupleCodec::new(3).encode(&[1, 1]);
        t.tables_mut().get_mut(&fold_map(2)).unwrap()[pos] = 0;
        let err = extract_monoid(&t).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
    }
}
