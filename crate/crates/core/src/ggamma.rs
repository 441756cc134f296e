//! The category GΓ^op for a fixed finite group G.
//!
//! Objects are wedges `n_G = ∨_{g∈G} n_g`. Every composite of the generators
//! `∨f` and `g·` reduces to a pair `(f, g)` acting by `k_h ↦ f(k)_{gh}`, so
//! morphisms are stored as such pairs. When `f` is the zero map the group
//! element is irrelevant and is normalized to the identity.

use alloc::vec::Vec;

use crate::diagram::{segal_projection, smash_morphisms, GammaOpMap};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A point of a wedge object: the basepoint or `k_g` with `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WedgeElement {
    Basepoint,
    Point { k: usize, g: usize },
}

/// `n_G`, with `n·|G| + 1` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WedgeObject {
    n: usize,
    group_order: usize,
}

impl WedgeObject {
    pub fn new(n: usize, group: &FiniteGroup) -> Self {
        WedgeObject {
            n,
            group_order: group.order(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        self.n * self.group_order + 1
    }

    /// Basepoint first, then `1_g, …, n_g` for each `g` in order.
    pub fn elements(&self) -> Vec<WedgeElement> {
        core::iter::once(WedgeElement::Basepoint)
            .chain(
                (0..self.group_order)
                    .flat_map(|g| (1..=self.n).map(move |k| WedgeElement::Point { k, g })),
            )
            .collect()
    }

    pub fn index_of(&self, e: WedgeElement) -> usize {
        match e {
            WedgeElement::Basepoint => 0,
            WedgeElement::Point { k, g } => 1 + g * self.n + (k - 1),
        }
    }
}

pub fn wedge_object(n: usize, group: &FiniteGroup) -> WedgeObject {
    WedgeObject::new(n, group)
}

/// A morphism `(f, g): n_G -> m_G` of GΓ^op.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GGammaMap {
    map: GammaOpMap,
    element: usize,
}

impl GGammaMap {
    pub fn new(map: GammaOpMap, element: usize, group: &FiniteGroup) -> Result<Self> {
        if element >= group.order() {
            return Err(Error::OutOfRange {
                index: element,
                bound: group.order(),
            });
        }
        Ok(Self::normalized(map, element))
    }

    fn normalized(map: GammaOpMap, element: usize) -> Self {
        let element = if map.is_zero() { 0 } else { element };
        GGammaMap { map, element }
    }

    pub fn identity(n: usize) -> Self {
        GGammaMap {
            map: GammaOpMap::identity(n),
            element: 0,
        }
    }

    /// The automorphism `g·` of `n_G`.
    pub fn translation(n: usize, element: usize, group: &FiniteGroup) -> Result<Self> {
        Self::new(GammaOpMap::identity(n), element, group)
    }

    pub fn map(&self) -> &GammaOpMap {
        &self.map
    }

    pub fn element(&self) -> usize {
        self.element
    }

    pub fn source(&self) -> usize {
        self.map.source()
    }

    pub fn target(&self) -> usize {
        self.map.target()
    }

    pub fn apply(&self, x: WedgeElement, group: &FiniteGroup) -> WedgeElement {
        match x {
            WedgeElement::Basepoint => WedgeElement::Basepoint,
            WedgeElement::Point { k, g } => match self.map.apply(k) {
                0 => WedgeElement::Basepoint,
                j => WedgeElement::Point {
                    k: j,
                    g: group.mul(self.element, g),
                },
            },
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GGammaMap, group: &FiniteGroup) -> Result<GGammaMap> {
        let map = self.map.compose(&first.map)?;
        Ok(Self::normalized(
            map,
            group.mul(self.element, first.element),
        ))
    }

    /// The concrete function on wedge indices.
    pub fn to_function(&self, group: &FiniteGroup) -> Vec<usize> {
        let src = WedgeObject::new(self.source(), group);
        let dst = WedgeObject::new(self.target(), group);
        src.elements()
            .into_iter()
            .map(|e| dst.index_of(self.apply(e, group)))
            .collect()
    }

    /// Every normalized morphism `m_G -> n_G`.
    pub fn hom_set(m: usize, n: usize, group: &FiniteGroup) -> Vec<GGammaMap> {
        let mut out = Vec::new();
        for f in GammaOpMap::hom_set(m, n) {
            if f.is_zero() {
                out.push(GGammaMap { map: f, element: 0 });
            } else {
                for g in group.elements() {
                    out.push(GGammaMap {
                        map: f.clone(),
                        element: g,
                    });
                }
            }
        }
        out
    }
}

/// The functor `e: Γ^op -> GΓ^op`, `f ↦ (f, 1)`.
pub fn diag_inclusion(f: &GammaOpMap) -> GGammaMap {
    GGammaMap {
        map: f.clone(),
        element: 0,
    }
}

/// `p_{n,i,G}: n_G -> 1_G`.
pub fn projection(n: usize, i: usize, _group: &FiniteGroup) -> Result<GGammaMap> {
    Ok(diag_inclusion(&segal_projection(n, i)?))
}

/// `p ∧ n_G := ∨_g (p ∧ n)_g`.
pub fn ordinal_smash(p: usize, n: usize, group: &FiniteGroup) -> WedgeObject {
    WedgeObject::new(p * n, group)
}

/// The morphism of `p ∧ n_G` induced by a Γ^op map on the ordinal factor
/// and a GΓ^op map on the wedge factor.
pub fn smash_with_ordinal(a: &GammaOpMap, b: &GGammaMap) -> GGammaMap {
    GGammaMap::normalized(smash_morphisms(a, &b.map), b.element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fold_map;

    #[test]
    fn wedge_elements() {
        let z2 = FiniteGroup::cyclic(2);
        let w = wedge_object(2, &z2);
        let mut got = w.elements();
        got.sort();
        let mut want = alloc::vec![
            WedgeElement::Point { k: 2, g: 0 },
            WedgeElement::Point { k: 1, g: 0 },
            WedgeElement::Basepoint,
            WedgeElement::Point { k: 1, g: 1 },
            WedgeElement::Point { k: 2, g: 1 },
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(wedge_object(3, &FiniteGroup::trivial()).cardinality(), 4);
        for n in 0..=4 {
            for order in 1..=6 {
                let g = FiniteGroup::cyclic(order);
                let w = wedge_object(n, &g);
                assert_eq!(w.elements().len(), n * order + 1);
                for (idx, e) in w.elements().into_iter().enumerate() {
                    assert_eq!(w.index_of(e), idx);
                }
            }
        }
    }

    #[test]
    fn translation_acts_on_labels() {
        let z3 = FiniteGroup::cyclic(3);
        let t = GGammaMap::translation(2, 1, &z3).unwrap();
        assert_eq!(
            t.apply(WedgeElement::Point { k: 2, g: 2 }, &z3),
            WedgeElement::Point { k: 2, g: 0 }
        );
    }

    #[test]
    fn zero_map_forgets_group_element() {
        let z2 = FiniteGroup::cyclic(2);
        let zero = GammaOpMap::zero(2, 1);
        let a = GGammaMap::new(zero.clone(), 1, &z2).unwrap();
        let b = GGammaMap::new(zero, 0, &z2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_function(&z2), b.to_function(&z2));
    }

    #[test]
    fn generators_commute() {
        for order in [2, 3] {
            let g = FiniteGroup::cyclic(order);
            for n in 0..=3 {
                for m in 0..=3 {
                    for f in GammaOpMap::hom_set(n, m) {
                        for h in g.elements() {
                            let vf = diag_inclusion(&f);
                            let left = vf
                                .compose(&GGammaMap::translation(n, h, &g).unwrap(), &g)
                                .unwrap();
                            let right = GGammaMap::translation(m, h, &g)
                                .unwrap()
                                .compose(&vf, &g)
                                .unwrap();
                            assert_eq!(left.to_function(&g), right.to_function(&g));
                            assert_eq!(left, right);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let p = projection(2, 1, &z2).unwrap();
        let pt = |k, g| WedgeElement::Point { k, g };
        assert_eq!(p.apply(pt(1, 0), &z2), pt(1, 0));
        assert_eq!(p.apply(pt(1, 1), &z2), pt(1, 1));
        assert_eq!(p.apply(pt(2, 0), &z2), WedgeElement::Basepoint);
        assert_eq!(p.apply(pt(2, 1), &z2), WedgeElement::Basepoint);
        assert_eq!(projection(1, 1, &z2).unwrap(), GGammaMap::identity(1));
        assert!(projection(2, 3, &z2).is_err());
        for n in 1..=4 {
            for i in 1..=n {
                assert_eq!(
                    projection(n, i, &z2).unwrap().map(),
                    &segal_projection(n, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn diagonal_fold() {
        let z3 = FiniteGroup::cyclic(3);
        let e = diag_inclusion(&fold_map(2));
        for g in z3.elements() {
            for k in 1..=2 {
                assert_eq!(
                    e.apply(WedgeElement::Point { k, g }, &z3),
                    WedgeElement::Point { k: 1, g }
                );
            }
        }
        assert_eq!(
            diag_inclusion(&GammaOpMap::identity(2)),
            GGammaMap::identity(2)
        );
    }

    #[test]
    fn ordinal_smash_edges() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(ordinal_smash(3, 1, &z2), wedge_object(3, &z2));
        assert_eq!(ordinal_smash(0, 2, &z2).cardinality(), 1);
    }

    #[test]
    fn pair_presentation_is_faithful() {
        let z2 = FiniteGroup::cyclic(2);
        for n in 0..=2 {
            for m in 0..=2 {
                let maps = GGammaMap::hom_set(n, m, &z2);
                for a in &maps {
                    for b in &maps {
                        assert_eq!(a == b, a.to_function(&z2) == b.to_function(&z2));
                    }
                }
            }
        }
    }
}
