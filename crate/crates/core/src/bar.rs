//! Classifying spaces of GΓ-sets and the structure map `ΣX(1) -> BX(1)`.
//!
//! For a GΓ-set `X` and an object `n`, `BX(n)` is the simplicial set
//! `p ↦ X(p ∧ n)` whose structure maps are the images of the Δ cofaces and
//! codegeneracies under Δ→Γ, smashed with the identity of `n`. The `k`-fold
//! iterate is the diagonal of `(p, q) ↦ X(p ∧ q^{∧(k-1)} ∧ n)`, so level `p`
//! is `X(p^k · n)`. Each `g ∈ G` acts levelwise through `(id, g)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FinAbGroup;
use crate::diagram::{delta_to_gamma_op, smash_morphisms, DeltaMap, GammaOpMap};
use crate::error::{Error, Result};
use crate::gamma::{extract_monoid, unit_of, GGammaSet, Restricted};
use crate::ggamma::{diag_inclusion, GGammaMap};
use crate::group::FiniteGroup;
use crate::homology::{
    chain_map, induced_map, normalized_chain_complex, HomologyGroup, HomologyPresentation,
    InducedMap,
};
use crate::simplicial::{
    skeleton, suspension, suspension_index, suspension_map, Direction, SimplicialMap,
    TruncatedBisimplicialSet, TruncatedSimplicialSet,
};

pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A bar construction together with where it came from and its G-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarSpace {
    space: TruncatedSimplicialSet,
    iterations: usize,
    object: usize,
    group: FiniteGroup,
    actions: Vec<SimplicialMap>,
}

impl BarSpace {
    pub fn space(&self) -> &TruncatedSimplicialSet {
        &self.space
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// The evaluation object `n` of `BᵏX(n)`.
    pub fn object(&self) -> usize {
        self.object
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Checks that every action is simplicial, that the identity acts
    /// trivially and that `g ↦ action(g)` respects the group table.
    pub fn check_action(&self) -> Result<()> {
        for map in &self.actions {
            map.validate(&self.space, &self.space)?;
        }
        let e = self.group.identity();
        if !self.actions[e].is_identity() {
            return Err(Error::NotEquivariant {
                element: e,
                level: 0,
                simplex: 0,
            });
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let composite = self.actions[g].compose(&self.actions[h]);
                let gh = &self.actions[self.group.mul(g, h)];
                if &composite != gh {
                    return Err(Error::NotEquivariant {
                        element: self.group.mul(g, h),
                        level: first_difference(&composite, gh).0,
                        simplex: first_difference(&composite, gh).1,
                    });
                }
            }
        }
        Ok(())
    }
}

fn first_difference(a: &SimplicialMap, b: &SimplicialMap) -> (usize, usize) {
    for p in 0..=a.dim() {
        if let Some(x) = a.level(p).iter().zip(b.level(p)).position(|(u, v)| u != v) {
            return (p, x);
        }
    }
    (0, 0)
}

/// The levelwise map `(id, g)` on a bar space.
pub fn g_action_on_bar(bar: &BarSpace, g: usize) -> &SimplicialMap {
    &bar.actions[g]
}

/// `δ^{∧k} ∧ id_n` for a Δ map `δ`.
fn smash_power(f: &GammaOpMap, k: usize, n: usize) -> GammaOpMap {
    let mut out = GammaOpMap::identity(n);
    for _ in 0..k {
        out = smash_morphisms(f, &out);
    }
    out
}

fn face_op(p: usize, i: usize) -> GammaOpMap {
    delta_to_gamma_op(&DeltaMap::coface(p, i))
}

fn degeneracy_op(p: usize, i: usize) -> GammaOpMap {
    delta_to_gamma_op(&DeltaMap::codegeneracy(p, i))
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(u32::try_from(exp).map_err(|_| Error::Overflow)?)
        .ok_or(Error::Overflow)
}

fn require_truncation<X: GGammaSet + ?Sized>(x: &X, required: usize) -> Result<()> {
    if required > x.truncation() {
        return Err(Error::InsufficientTruncation {
            required,
            available: x.truncation(),
        });
    }
    Ok(())
}

fn checked_sum(values: impl IntoIterator<Item = usize>) -> Option<usize> {
    values
        .into_iter()
        .try_fold(0usize, |acc, v| acc.checked_add(v))
}

fn require_budget(required: Option<usize>, budget: usize) -> Result<()> {
    let required = required.unwrap_or(usize::MAX);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(())
}

fn levelwise_actions<X: GGammaSet + ?Sized>(
    x: &X,
    space: &TruncatedSimplicialSet,
    object_size: impl Fn(usize) -> usize,
) -> Vec<SimplicialMap> {
    let group = x.group();
    group
        .elements()
        .map(|g| {
            let levels = (0..=space.dim())
                .map(|p| {
                    let t =
                        GGammaMap::translation(object_size(p), g, group).expect("element in range");
                    (0..space.size(p)).map(|s| x.act(&t, s)).collect()
                })
                .collect();
            SimplicialMap::new(levels)
        })
        .collect()
}

/// `BX(n)` truncated at `d`: level `p` is `X(p ∧ n)`.
pub fn bar<X: GGammaSet + ?Sized>(x: &X, n: usize, d: usize, budget: usize) -> Result<BarSpace> {
    let required = d.checked_mul(n).ok_or(Error::Overflow)?;
    require_truncation(x, required)?;
    let sizes: Vec<usize> = (0..=d).map(|p| x.cardinality(p * n)).collect();
    require_budget(checked_sum(sizes.iter().copied()), budget)?;
    let space = TruncatedSimplicialSet::from_fn(
        sizes,
        |p, i, s| x.act(&diag_inclusion(&smash_power(&face_op(p, i), 1, n)), s),
        |p, i, s| x.act(&diag_inclusion(&smash_power(&degeneracy_op(p, i), 1, n)), s),
    )?;
    let actions = levelwise_actions(x, &space, |p| p * n);
    Ok(BarSpace {
        space,
        iterations: 1,
        object: n,
        group: x.group().clone(),
        actions,
    })
}

/// `BᵏX(1)` truncated at `d`. `k = 0` gives the discrete simplicial set on
/// `X(1)`; `k = 1` is [`bar`]; larger `k` go through the bisimplicial set
/// `(p, q) ↦ X(p ∧ q^{∧(k-1)} ∧ 1)` and its diagonal.
pub fn iterate_bar<X: GGammaSet + ?Sized>(
    x: &X,
    k: usize,
    d: usize,
    budget: usize,
) -> Result<BarSpace> {
    iterate_bar_at(x, k, 1, d, budget)
}

/// [`iterate_bar`] evaluated at an arbitrary object `n`.
pub fn iterate_bar_at<X: GGammaSet + ?Sized>(
    x: &X,
    k: usize,
    n: usize,
    d: usize,
    budget: usize,
) -> Result<BarSpace> {
    match k {
        0 => {
            require_truncation(x, n)?;
            let size = x.cardinality(n);
            require_budget(size.checked_mul(d + 1), budget)?;
            let space =
                TruncatedSimplicialSet::from_fn(vec![size; d + 1], |_, _, s| s, |_, _, s| s)?;
            let actions = levelwise_actions(x, &space, |_| n);
            Ok(BarSpace {
                space,
                iterations: 0,
                object: n,
                group: x.group().clone(),
                actions,
            })
        }
        1 => bar(x, n, d, budget),
        k => {
            let required = checked_pow(d, k)?.checked_mul(n).ok_or(Error::Overflow)?;
            require_truncation(x, required)?;
            let inner = |q: usize| checked_pow(q, k - 1).map(|v| v * n);
            let mut sizes = vec![vec![0; d + 1]; d + 1];
            for (p, row) in sizes.iter_mut().enumerate() {
                for (q, slot) in row.iter_mut().enumerate() {
                    *slot = x.cardinality(p * inner(q)?);
                }
            }
            require_budget(checked_sum(sizes.iter().flatten().copied()), budget)?;
            let op = |dir: Direction, p: usize, q: usize, g: GammaOpMap| -> GGammaMap {
                let map = match dir {
                    Direction::Horizontal => {
                        smash_morphisms(&g, &GammaOpMap::identity(inner(q).expect("checked")))
                    }
                    Direction::Vertical => {
                        smash_morphisms(&GammaOpMap::identity(p), &smash_power(&g, k - 1, n))
                    }
                };
                diag_inclusion(&map)
            };
            let level = |dir: Direction, p: usize, q: usize| match dir {
                Direction::Horizontal => p,
                Direction::Vertical => q,
            };
            let bisimplicial = TruncatedBisimplicialSet::from_fn(
                d,
                sizes,
                |dir, p, q, i, s| x.act(&op(dir, p, q, face_op(level(dir, p, q), i)), s),
                |dir, p, q, i, s| x.act(&op(dir, p, q, degeneracy_op(level(dir, p, q), i)), s),
            );
            let space = bisimplicial.diagonal();
            let actions = levelwise_actions(x, &space, |p| p * inner(p).expect("checked"));
            Ok(BarSpace {
                space,
                iterations: k,
                object: n,
                group: x.group().clone(),
                actions,
            })
        }
    }
}

/// The isomorphism `ΣX(1) ≅ sk₁ BX(1)` and the skeleton inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub bar: BarSpace,
    pub suspension: TruncatedSimplicialSet,
    pub skeleton: TruncatedSimplicialSet,
    /// `ΣX(1) -> sk₁ BX(1)`.
    pub iso: SimplicialMap,
    /// `sk₁ BX(1) -> BX(1)`.
    pub inclusion: SimplicialMap,
    /// The unit of `X(1)`, used as the suspension basepoint.
    pub basepoint: usize,
}

/// Builds `ΣX(1) -> BX(1)`: the simplex `(j, x)` of level `p` goes to
/// `X(θ)(x)` where `θ: 1 -> p` is the image of the step map `[p] -> [1]`
/// with `j` zeros. Verifies that this is simplicial, an isomorphism onto the
/// 1-skeleton, and commutes with every `g ∈ G`.
pub fn structure_map<X: GGammaSet + ?Sized>(
    x: &X,
    d: usize,
    budget: usize,
) -> Result<StructureMap> {
    if d < 2 {
        return Err(Error::InsufficientTruncation {
            required: 2,
            available: d,
        });
    }
    let b = bar(x, 1, d, budget)?;
    let ones = x.cardinality(1);
    let base = unit_of(&Restricted(x));
    let sigma = suspension(ones, base, d);

    let levels: Vec<Vec<usize>> = (0..=d)
        .map(|p| {
            let mut level = vec![0; sigma.size(p)];
            level[0] = x.act(&diag_inclusion(&GammaOpMap::zero(0, p)), 0);
            for j in 1..=p {
                let theta = diag_inclusion(&delta_to_gamma_op(&DeltaMap::step(p, j)));
                for e in (0..ones).filter(|&e| e != base) {
                    level[suspension_index(ones, base, j, e)] = x.act(&theta, e);
                }
            }
            level
        })
        .collect();
    let candidate = SimplicialMap::new(levels);
    candidate.validate(&sigma, b.space())?;

    let (sk, inclusion) = skeleton(b.space(), 1);
    let mut iso_levels = Vec::with_capacity(d + 1);
    for p in 0..=d {
        let mut position = vec![usize::MAX; b.space().size(p)];
        for (k, &s) in inclusion.level(p).iter().enumerate() {
            position[s] = k;
        }
        let mut hit = vec![false; sk.size(p)];
        let mut level = Vec::with_capacity(sigma.size(p));
        for s in 0..sigma.size(p) {
            let k = position[candidate.apply(p, s)];
            if k == usize::MAX || hit[k] {
                return Err(Error::NotIsomorphism {
                    level: p,
                    simplex: s,
                });
            }
            hit[k] = true;
            level.push(k);
        }
        if let Some(k) = hit.iter().position(|h| !h) {
            return Err(Error::NotIsomorphism {
                level: p,
                simplex: inclusion.apply(p, k),
            });
        }
        iso_levels.push(level);
    }
    let iso = SimplicialMap::new(iso_levels);

    let group = x.group();
    for g in group.elements() {
        let t = GGammaMap::translation(1, g, group).expect("element in range");
        let on_ones: Vec<usize> = (0..ones).map(|e| x.act(&t, e)).collect();
        if on_ones[base] != base {
            return Err(Error::NotEquivariant {
                element: g,
                level: 0,
                simplex: 0,
            });
        }
        let sigma_g = suspension_map(ones, base, d, &on_ones);
        let left = candidate.compose(&sigma_g);
        let right = b.actions[g].compose(&candidate);
        if left != right {
            let (level, simplex) = first_difference(&left, &right);
            return Err(Error::NotEquivariant {
                element: g,
                level,
                simplex,
            });
        }
    }
    Ok(StructureMap {
        bar: b,
        suspension: sigma,
        skeleton: sk,
        iso,
        inclusion,
        basepoint: base,
    })
}

/// Homology of one degree of a delooping, with the induced action of each
/// group element and the expected value when `X(1)` is a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub group: HomologyGroup,
    pub actions: Vec<InducedMap>,
    pub expected: Option<HomologyGroup>,
}

impl DegreeReport {
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected.as_ref().map(|e| e == &self.group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeloopingReport {
    pub iterations: usize,
    pub dim: usize,
    pub levels: Vec<usize>,
    /// Invariant factors of `X(1)` when its monoid is a group.
    pub coefficients: Option<Vec<u64>>,
    pub degrees: Vec<DegreeReport>,
}

/// Low-degree homology of `K(A, k)` for `A` with invariant factors
/// `factors` (and of the discrete set `A` for `k = 0`); `None` beyond the
/// range this crate knows in closed form.
pub fn eilenberg_maclane_expected(
    factors: &[u64],
    k: usize,
    q: usize,
) -> Result<Option<HomologyGroup>> {
    let group_of = |orders: &[u64]| HomologyGroup::from_cyclic(0, orders);
    let z = HomologyGroup::free(1);
    Ok(match (k, q) {
        (0, 0) => {
            let order = factors
                .iter()
                .try_fold(1usize, |acc, &f| acc.checked_mul(f as usize));
            Some(HomologyGroup::free(order.ok_or(Error::Overflow)?))
        }
        (0, _) => Some(HomologyGroup::zero()),
        (_, 0) => Some(z),
        (1, 1) => Some(group_of(factors)?),
        (1, 2) => {
            let mut orders = Vec::new();
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    orders.push(gcd(factors[i], factors[j]));
                }
            }
            Some(group_of(&orders)?)
        }
        (k, q) if k >= 2 && q < k => Some(HomologyGroup::zero()),
        (k, q) if k >= 2 && q == k => Some(group_of(factors)?),
        (k, q) if k >= 2 && q == k + 1 => Some(HomologyGroup::zero()),
        _ => None,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Computes `H_q(BᵏX(1))` for `q <= maxdeg` with the induced G-action.
/// Only the chains up to degree `maxdeg + 1` are formed.
pub fn delooping_report<X: GGammaSet + ?Sized>(
    x: &X,
    k: usize,
    d: usize,
    maxdeg: usize,
    budget: usize,
) -> Result<DeloopingReport> {
    if maxdeg + 1 > d {
        return Err(Error::InsufficientTruncation {
            required: maxdeg + 1,
            available: d,
        });
    }
    let b = iterate_bar(x, k, d, budget)?;
    let coefficients = match extract_monoid(&Restricted(x)) {
        Ok(m) if m.is_group() => Some(FinAbGroup::new(m)?.invariant_factors()?),
        _ => None,
    };
    degree_reports(&b, maxdeg, coefficients)
}

/// [`delooping_report`] on an already built bar space.
pub fn degree_reports(
    b: &BarSpace,
    maxdeg: usize,
    coefficients: Option<Vec<u64>>,
) -> Result<DeloopingReport> {
    let complex = normalized_chain_complex(b.space(), maxdeg + 1)?;
    let mut degrees = Vec::with_capacity(maxdeg + 1);
    for q in 0..=maxdeg {
        let pres = HomologyPresentation::new(&complex.complex, q)?;
        let actions = b
            .actions
            .iter()
            .map(|g| induced_map(&chain_map(g, &complex, &complex, q), &pres, &pres))
            .collect::<Result<Vec<_>>>()?;
        let expected = match &coefficients {
            Some(f) => eilenberg_maclane_expected(f, b.iterations(), q)?,
            None => None,
        };
        degrees.push(DegreeReport {
            degree: q,
            group: pres.group().clone(),
            actions,
            expected,
        });
    }
    Ok(DeloopingReport {
        iterations: b.iterations(),
        dim: b.dim(),
        levels: b.space().sizes().to_vec(),
        coefficients,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FinAbMonoid, GMonoid};
    use crate::gamma::{build_gamma_set, build_ggamma_set, TrivialAction};

    fn plain(m: &FinAbMonoid, n: usize) -> TrivialAction<crate::gamma::MonoidGammaSet> {
        TrivialAction::new(build_gamma_set(m, n).unwrap())
    }

    #[test]
    fn bar_at_zero_is_point() {
        let x = plain(&FinAbMonoid::cyclic(3), 3);
        let b = bar(&x, 0, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.space(), &TruncatedSimplicialSet::point(3));
        let b2 = iterate_bar_at(&x, 2, 0, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(b2.space(), &TruncatedSimplicialSet::point(3));
    }

    #[test]
    fn bar_faces_are_nerve_faces() {
        let m = FinAbMonoid::cyclic(3);
        let x = plain(&m, 3);
        let b = bar(&x, 1, 3, DEFAULT_BUDGET).unwrap();
        b.space().validate().unwrap();
        assert_eq!(b.space().sizes(), &[1, 3, 9, 27]);
        let code = |a: usize, c: usize| a * 3 + c;
        for a in 0..3 {
            for c in 0..3 {
                let s = code(a, c);
                assert_eq!(b.space().face(2, 0, s), c);
                assert_eq!(b.space().face(2, 1, s), (a + c) % 3);
                assert_eq!(b.space().face(2, 2, s), a);
            }
            assert_eq!(b.space().degeneracy(1, 0, a), code(0, a));
            assert_eq!(b.space().degeneracy(1, 1, a), code(a, 0));
        }
    }

    #[test]
    fn refuses_short_truncation_and_budget() {
        let x = plain(&FinAbMonoid::cyclic(2), 3);
        assert_eq!(
            bar(&x, 1, 4, DEFAULT_BUDGET).unwrap_err(),
            Error::InsufficientTruncation {
                required: 4,
                available: 3
            }
        );
        assert!(matches!(bar(&x, 1, 3, 5), Err(Error::Budget { .. })));
        assert!(matches!(
            iterate_bar(&x, 2, 2, DEFAULT_BUDGET),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn inversion_acts_on_levels() {
        let gm = GMonoid::inversion(&FinAbGroup::cyclic(3));
        let x = build_ggamma_set(&gm, 3).unwrap();
        let b = bar(&x, 1, 3, DEFAULT_BUDGET).unwrap();
        b.check_action().unwrap();
        let inv = g_action_on_bar(&b, 1);
        assert_eq!(inv.level(1), &[0, 2, 1]);
        assert!(inv.compose(inv).is_identity());
    }

    #[test]
    fn second_delooping_sizes() {
        let x = plain(&FinAbMonoid::cyclic(2), 9);
        let b = iterate_bar(&x, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.space().sizes(), &[1, 2, 16, 512]);
        b.space().validate().unwrap();
    }

    #[test]
    fn structure_map_for_inversion() {
        let gm = GMonoid::inversion(&FinAbGroup::cyclic(3));
        let x = build_ggamma_set(&gm, 3).unwrap();
        let s = structure_map(&x, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.skeleton.size(0), 1);
        assert_eq!(s.skeleton.nondegenerate(1).len(), 2);
        s.iso.validate(&s.suspension, &s.skeleton).unwrap();
        s.inclusion.validate(&s.skeleton, s.bar.space()).unwrap();
    }

    #[test]
    fn report_for_z3() {
        let gm = GMonoid::inversion(&FinAbGroup::cyclic(3));
        let x = build_ggamma_set(&gm, 4).unwrap();
        let r = delooping_report(&x, 1, 4, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.degrees[0].group, HomologyGroup::free(1));
        assert_eq!(r.degrees[1].group.torsion, vec![3]);
        assert!(r.degrees[2].group.is_zero());
        assert!(r.degrees[1].actions[1].is_scalar(-1));
        assert!(r.degrees.iter().all(|d| d.matches_expected() == Some(true)));
        assert!(matches!(
            delooping_report(&x, 1, 4, 4, DEFAULT_BUDGET),
            Err(Error::InsufficientTruncation { .. })
        ));
    }
}
