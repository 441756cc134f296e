//! Presheaves given by explicit tables for every morphism in the truncation.
//!
//! Construction checks completeness and ranges only. The pointed-`X(0)`
//! condition and functoriality are left to the checkers, so malformed
//! presheaves can be loaded and diagnosed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{GGammaSet, GammaSet};
use crate::diagram::GammaOpMap;
use crate::error::{Error, Result};
use crate::ggamma::GGammaMap;
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedGammaSet {
    sizes: Vec<usize>,
    tables: BTreeMap<GammaOpMap, Vec<usize>>,
}

impl TabulatedGammaSet {
    pub fn new(sizes: Vec<usize>, tables: BTreeMap<GammaOpMap, Vec<usize>>) -> Result<Self> {
        validate(
            &sizes,
            tables.iter().map(|(f, t)| (f.source(), f.target(), t)),
            |m, n| {
                GammaOpMap::hom_set(m, n)
                    .filter(|f| !tables.contains_key(f))
                    .count()
            },
        )?;
        Ok(TabulatedGammaSet { sizes, tables })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn tables(&self) -> &BTreeMap<GammaOpMap, Vec<usize>> {
        &self.tables
    }

    pub fn table(&self, f: &GammaOpMap) -> Option<&[usize]> {
        self.tables.get(f).map(Vec::as_slice)
    }

    /// Mutable access for building deliberately broken fixtures.
    pub fn tables_mut(&mut self) -> &mut BTreeMap<GammaOpMap, Vec<usize>> {
        &mut self.tables
    }
}

impl GammaSet for TabulatedGammaSet {
    fn truncation(&self) -> usize {
        self.sizes.len() - 1
    }
    fn cardinality(&self, n: usize) -> usize {
        self.sizes[n]
    }
    fn act(&self, f: &GammaOpMap, x: usize) -> usize {
        self.tables[f][x]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedGGammaSet {
    group: FiniteGroup,
    sizes: Vec<usize>,
    tables: BTreeMap<GGammaMap, Vec<usize>>,
}

impl TabulatedGGammaSet {
    /// Keys must be normalized morphisms (see [`GGammaMap::new`]).
    pub fn new(
        group: FiniteGroup,
        sizes: Vec<usize>,
        tables: BTreeMap<GGammaMap, Vec<usize>>,
    ) -> Result<Self> {
        validate(
            &sizes,
            tables.iter().map(|(f, t)| (f.source(), f.target(), t)),
            |m, n| {
                GGammaMap::hom_set(m, n, &group)
                    .iter()
                    .filter(|f| !tables.contains_key(f))
                    .count()
            },
        )?;
        Ok(TabulatedGGammaSet {
            group,
            sizes,
            tables,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn tables(&self) -> &BTreeMap<GGammaMap, Vec<usize>> {
        &self.tables
    }

    pub fn tables_mut(&mut self) -> &mut BTreeMap<GGammaMap, Vec<usize>> {
        &mut self.tables
    }
}

impl GGammaSet for TabulatedGGammaSet {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }
    fn truncation(&self) -> usize {
        self.sizes.len() - 1
    }
    fn cardinality(&self, n: usize) -> usize {
        self.sizes[n]
    }
    fn act(&self, f: &GGammaMap, x: usize) -> usize {
        self.tables[f][x]
    }
}

fn validate<'a>(
    sizes: &[usize],
    tables: impl Iterator<Item = (usize, usize, &'a Vec<usize>)>,
    missing: impl Fn(usize, usize) -> usize,
) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidMap("presheaf has no levels"));
    }
    let top = sizes.len() - 1;
    for (m, n, table) in tables {
        if m > top || n > top {
            return Err(Error::OutOfRange {
                index: m.max(n),
                bound: top,
            });
        }
        if table.len() != sizes[m] {
            return Err(Error::OutOfRange {
                index: table.len(),
                bound: sizes[m],
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= sizes[n]) {
            return Err(Error::OutOfRange {
                index: v,
                bound: sizes[n],
            });
        }
    }
    for m in 0..=top {
        for n in 0..=top {
            if missing(m, n) > 0 {
                return Err(Error::MissingTable {
                    source_level: m,
                    target_level: n,
                });
            }
        }
    }
    Ok(())
}

fn table_entries(
    sizes: &[usize],
    morphisms_per_pair: impl Fn(usize, usize) -> usize,
) -> Option<usize> {
    let top = sizes.len() - 1;
    let mut total: usize = 0;
    for m in 0..=top {
        for n in 0..=top {
            let cell = morphisms_per_pair(m, n).checked_mul(sizes[m])?;
            total = total.checked_add(cell)?;
        }
    }
    Some(total)
}

fn hom_count(m: usize, n: usize) -> usize {
    (n + 1).checked_pow(m as u32).unwrap_or(usize::MAX)
}

/// Tabulates every morphism action of `x`, refusing when the total number of
/// table entries exceeds `budget`.
pub fn tabulate<X: GammaSet + ?Sized>(x: &X, budget: usize) -> Result<TabulatedGammaSet> {
    let sizes: Vec<usize> = (0..=x.truncation()).map(|n| x.cardinality(n)).collect();
    let required = table_entries(&sizes, hom_count).unwrap_or(usize::MAX);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    let mut tables = BTreeMap::new();
    for m in 0..sizes.len() {
        for n in 0..sizes.len() {
            for f in GammaOpMap::hom_set(m, n) {
                let table = (0..sizes[m]).map(|e| x.act(&f, e)).collect();
                tables.insert(f, table);
            }
        }
    }
    Ok(TabulatedGammaSet { sizes, tables })
}

pub fn tabulate_g<X: GGammaSet + ?Sized>(x: &X, budget: usize) -> Result<TabulatedGGammaSet> {
    let group = x.group().clone();
    let sizes: Vec<usize> = (0..=x.truncation()).map(|n| x.cardinality(n)).collect();
    let per_pair = |m: usize, n: usize| {
        let all = hom_count(m, n);
        // zero map counted once, everything else once per group element
        (all - 1).saturating_mul(group.order()).saturating_add(1)
    };
    let required = table_entries(&sizes, per_pair).unwrap_or(usize::MAX);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    let mut tables = BTreeMap::new();
    for m in 0..sizes.len() {
        for n in 0..sizes.len() {
            for f in GGammaMap::hom_set(m, n, &group) {
                let table = (0..sizes[m]).map(|e| x.act(&f, e)).collect();
                tables.insert(f, table);
            }
        }
    }
    Ok(TabulatedGGammaSet {
        group,
        sizes,
        tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FinAbGroup, FinAbMonoid, GMonoid};
    use crate::gamma::{build_gamma_set, build_ggamma_set};

    #[test]
    fn tabulation_agrees_with_formula() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(3), 3).unwrap();
        let t = tabulate(&x, 1_000_000).unwrap();
        for m in 0..=3 {
            for n in 0..=3 {
                for f in GammaOpMap::hom_set(m, n) {
                    for e in 0..x.cardinality(m) {
                        assert_eq!(t.act(&f, e), x.act(&f, e));
                    }
                }
            }
        }
        assert_eq!(
            TabulatedGammaSet::new(t.sizes().to_vec(), t.tables().clone()).unwrap(),
            t
        );
    }

    #[test]
    fn g_tabulation_roundtrips_through_validation() {
        let gm = GMonoid::inversion(&FinAbGroup::cyclic(3));
        let x = build_ggamma_set(&gm, 2).unwrap();
        let t = tabulate_g(&x, 1_000_000).unwrap();
        let again =
            TabulatedGGammaSet::new(gm.group().clone(), t.sizes().to_vec(), t.tables().clone());
        assert_eq!(again.unwrap(), t);
    }

    #[test]
    fn budget_and_completeness() {
        let x = build_gamma_set(&FinAbMonoid::cyclic(2), 3).unwrap();
        assert!(matches!(tabulate(&x, 10), Err(Error::Budget { .. })));
        let mut t = tabulate(&x, 1_000_000).unwrap();
        t.tables_mut().remove(&GammaOpMap::identity(2));
        let err = TabulatedGammaSet::new(t.sizes().to_vec(), t.tables().clone()).unwrap_err();
        assert_eq!(
            err,
            Error::MissingTable {
                source_level: 2,
                target_level: 2
            }
        );
    }
}
