//! Finite Γ-sets and GΓ-sets truncated at a level bound `N`.
//!
//! Elements of a level are indices `0..cardinality(n)`. Presheaves built from
//! an algebra compute their action from a formula; hand-entered presheaves
//! carry complete tables (see [`tabulated`]). Values are discrete sets, so a
//! presheaf here is the levelwise-constant case of a simplicial presheaf.

mod check;
mod extract;
pub mod tabulated;

pub use check::{
    check_condition, check_functoriality, check_functoriality_g, check_strict_bousfield,
    check_strict_bousfield_g, check_strict_segal, check_strict_segal_g, Condition,
    ConditionFailure, ConditionReport,
};
pub use extract::{
    extract_g_group_bousfield, extract_g_monoid, extract_group_bousfield, extract_monoid,
    pi0_group_like,
};
pub use tabulated::{tabulate, tabulate_g, TabulatedGGammaSet, TabulatedGammaSet};

use alloc::vec::Vec;

use crate::algebra::{FinAbMonoid, GMonoid};
use crate::diagram::GammaOpMap;
use crate::error::{Error, Result};
use crate::ggamma::{diag_inclusion, GGammaMap};
use crate::group::FiniteGroup;

/// A functor `Γ^op -> Sets` restricted to the objects `0..=N`.
pub trait GammaSet {
    fn truncation(&self) -> usize;

    /// `|X(n)|` for `n <= truncation()`.
    fn cardinality(&self, n: usize) -> usize;

    /// `X(f)(x)`. Requires both ends of `f` within the truncation and
    /// `x < cardinality(f.source())`.
    fn act(&self, f: &GammaOpMap, x: usize) -> usize;
}

/// A functor `GΓ^op -> Sets` restricted to the objects `0_G..=N_G`.
pub trait GGammaSet {
    fn group(&self) -> &FiniteGroup;

    fn truncation(&self) -> usize;

    fn cardinality(&self, n: usize) -> usize;

    fn act(&self, f: &GGammaMap, x: usize) -> usize;
}

impl<T: GammaSet + ?Sized> GammaSet for &T {
    fn truncation(&self) -> usize {
        (**self).truncation()
    }
    fn cardinality(&self, n: usize) -> usize {
        (**self).cardinality(n)
    }
    fn act(&self, f: &GammaOpMap, x: usize) -> usize {
        (**self).act(f, x)
    }
}

impl<T: GGammaSet + ?Sized> GGammaSet for &T {
    fn group(&self) -> &FiniteGroup {
        (**self).group()
    }
    fn truncation(&self) -> usize {
        (**self).truncation()
    }
    fn cardinality(&self, n: usize) -> usize {
        (**self).cardinality(n)
    }
    fn act(&self, f: &GGammaMap, x: usize) -> usize {
        (**self).act(f, x)
    }
}

/// Mixed-radix coding of tuples in `Mⁿ`; the first coordinate is the most
/// significant digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleCodec {
    base: usize,
}

impl TupleCodec {
    pub fn new(base: usize) -> Self {
        assert!(base >= 1);
        TupleCodec { base }
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.base + c)
    }

    pub fn decode_into(&self, mut x: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = x % self.base;
            x /= self.base;
        }
    }

    pub fn decode(&self, x: usize, len: usize) -> Vec<usize> {
        let mut out = alloc::vec![0; len];
        self.decode_into(x, &mut out);
        out
    }

    pub fn count(&self, len: usize) -> Option<usize> {
        self.base.checked_pow(u32::try_from(len).ok()?)
    }
}

/// Pushes a tuple forward along `f`: coordinate `j` of the result is the sum
/// of the input coordinates `i >= 1` with `f(i) = j`.
fn push_forward(monoid: &FinAbMonoid, f: &GammaOpMap, input: &[usize], out: &mut [usize]) {
    out.fill(monoid.unit());
    for (i, &a) in input.iter().enumerate() {
        let j = f.apply(i + 1);
        if j != 0 {
            out[j - 1] = monoid.op(out[j - 1], a);
        }
    }
}

/// The Γ-set `n ↦ Mⁿ` of an abelian monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidGammaSet {
    monoid: FinAbMonoid,
    truncation: usize,
    codec: TupleCodec,
}

pub fn build_gamma_set(monoid: &FinAbMonoid, truncation: usize) -> Result<MonoidGammaSet> {
    if truncation == 0 {
        return Err(Error::InsufficientTruncation {
            required: 1,
            available: 0,
        });
    }
    let codec = TupleCodec::new(monoid.order());
    codec.count(truncation).ok_or(Error::Overflow)?;
    Ok(MonoidGammaSet {
        monoid: monoid.clone(),
        truncation,
        codec,
    })
}

impl MonoidGammaSet {
    pub fn monoid(&self) -> &FinAbMonoid {
        &self.monoid
    }

    pub fn codec(&self) -> TupleCodec {
        self.codec
    }
}

impl GammaSet for MonoidGammaSet {
    fn truncation(&self) -> usize {
        self.truncation
    }

    fn cardinality(&self, n: usize) -> usize {
        self.codec.count(n).expect("level within truncation")
    }

    fn act(&self, f: &GammaOpMap, x: usize) -> usize {
        let input = self.codec.decode(x, f.source());
        let mut out = alloc::vec![0; f.target()];
        push_forward(&self.monoid, f, &input, &mut out);
        self.codec.encode(&out)
    }
}

/// The GΓ-set `n_G ↦ Mⁿ` of a G-monoid: `(f, g)` acts by `g` entrywise and
/// then by the push-forward along `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMonoidGammaSet {
    gmonoid: GMonoid,
    truncation: usize,
    codec: TupleCodec,
}

pub fn build_ggamma_set(gmonoid: &GMonoid, truncation: usize) -> Result<GMonoidGammaSet> {
    let plain = build_gamma_set(gmonoid.monoid(), truncation)?;
    Ok(GMonoidGammaSet {
        gmonoid: gmonoid.clone(),
        truncation,
        codec: plain.codec,
    })
}

impl GMonoidGammaSet {
    pub fn gmonoid(&self) -> &GMonoid {
        &self.gmonoid
    }

    pub fn codec(&self) -> TupleCodec {
        self.codec
    }
}

impl GGammaSet for GMonoidGammaSet {
    fn group(&self) -> &FiniteGroup {
        self.gmonoid.group()
    }

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn cardinality(&self, n: usize) -> usize {
        self.codec.count(n).expect("level within truncation")
    }

    fn act(&self, f: &GGammaMap, x: usize) -> usize {
        let g = f.element();
        let input: Vec<usize> = self
            .codec
            .decode(x, f.source())
            .into_iter()
            .map(|a| self.gmonoid.act(g, a))
            .collect();
        let mut out = alloc::vec![0; f.target()];
        push_forward(self.gmonoid.monoid(), f.map(), &input, &mut out);
        self.codec.encode(&out)
    }
}

/// `e*X`: a GΓ-set seen as a Γ-set along the diagonal inclusion.
#[derive(Clone, Copy, Debug)]
pub struct Restricted<'a, X: ?Sized>(pub &'a X);

impl<X: GGammaSet + ?Sized> GammaSet for Restricted<'_, X> {
    fn truncation(&self) -> usize {
        self.0.truncation()
    }
    fn cardinality(&self, n: usize) -> usize {
        self.0.cardinality(n)
    }
    fn act(&self, f: &GammaOpMap, x: usize) -> usize {
        self.0.act(&diag_inclusion(f), x)
    }
}

/// A Γ-set seen as a GΓ-set over the trivial group.
#[derive(Clone, Debug)]
pub struct TrivialAction<X> {
    inner: X,
    group: FiniteGroup,
}

impl<X: GammaSet> TrivialAction<X> {
    pub fn new(inner: X) -> Self {
        TrivialAction {
            inner,
            group: FiniteGroup::trivial(),
        }
    }

    pub fn inner(&self) -> &X {
        &self.inner
    }
}

impl<X: GammaSet> GGammaSet for TrivialAction<X> {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }
    fn cardinality(&self, n: usize) -> usize {
        self.inner.cardinality(n)
    }
    fn act(&self, f: &GGammaMap, x: usize) -> usize {
        self.inner.act(f.map(), x)
    }
}

/// The unique element of `X(0)` pushed to `X(1)`: the unit of the monoid
/// structure on `X(1)`.
pub fn unit_of<X: GammaSet + ?Sized>(x: &X) -> usize {
    x.act(&GammaOpMap::zero(0, 1), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAbGroup;
    use crate::diagram::{fold_map, segal_projection};

    #[test]
    fn monoid_levels() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(2), 3).unwrap();
        assert_eq!(x.cardinality(2), 4);
        assert_eq!(x.cardinality(0), 1);
        assert!(build_gamma_set(&FinAbMonoid::cyclic(2), 0).is_err());
    }

    #[test]
    fn fold_and_projection_act() {
        let m = FinAbMonoid::cyclic(3);
        let x = build_gamma_set(&m, 3).unwrap();
        let c = x.codec();
        for a in 0..3 {
            for b in 0..3 {
                let t = c.encode(&[a, b]);
                assert_eq!(x.act(&fold_map(2), t), (a + b) % 3);
                assert_eq!(x.act(&segal_projection(2, 1).unwrap(), t), a);
            }
        }
    }

    #[test]
    fn translation_acts_by_table() {
        let gm = GMonoid::inversion(&FinAbGroup::cyclic(3));
        let x = build_ggamma_set(&gm, 2).unwrap();
        for g in 0..2 {
            let t = GGammaMap::translation(1, g, gm.group()).unwrap();
            for a in 0..3 {
                assert_eq!(x.act(&t, a), gm.act(g, a));
            }
        }
    }

    #[test]
    fn trivial_group_recovers_plain_build() {
        let m = FinAbMonoid::max_chain(3);
        let plain = build_gamma_set(&m, 3).unwrap();
        let lifted =
            build_ggamma_set(&GMonoid::trivial_action(m, FiniteGroup::trivial()), 3).unwrap();
        for s in 0..=3 {
            for t in 0..=3 {
                for f in GammaOpMap::hom_set(s, t) {
                    for x in 0..plain.cardinality(s) {
                        assert_eq!(plain.act(&f, x), lifted.act(&diag_inclusion(&f), x));
                    }
                }
            }
        }
    }

    #[test]
    fn codec_roundtrip() {
        let c = TupleCodec::new(3);
        for x in 0..27 {
            assert_eq!(c.encode(&c.decode(x, 3)), x);
        }
        assert_eq!(c.count(0), Some(1));
        assert_eq!(TupleCodec::new(4).count(40), None);
    }
}
