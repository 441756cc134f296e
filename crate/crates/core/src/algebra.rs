//! Finite abelian monoids, abelian groups and monoids with a group action,
//! stored as Cayley tables on `{0, …, order - 1}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Axiom, Error, Result};
use crate::group::FiniteGroup;
use crate::snf::{elementary_divisors, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbMonoid {
    order: usize,
    unit: usize,
    table: Vec<usize>,
}

impl FinAbMonoid {
    /// Checks closure, the unit law, commutativity and associativity.
    pub fn new(rows: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::axiom(Axiom::Shape, vec![]));
        }
        if let Some(r) = rows.iter().position(|row| row.len() != order) {
            return Err(Error::axiom(Axiom::Shape, vec![r]));
        }
        if unit >= order {
            return Err(Error::axiom(Axiom::Identity, vec![unit]));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::axiom(Axiom::Closure, vec![pos / order, pos % order]));
        }
        let op = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if op(unit, a) != a || op(a, unit) != a {
                return Err(Error::axiom(Axiom::Identity, vec![a]));
            }
        }
        for a in 0..order {
            for b in a + 1..order {
                if op(a, b) != op(b, a) {
                    return Err(Error::axiom(Axiom::Commutativity, vec![a, b]));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = op(a, b);
                for c in 0..order {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(Error::axiom(Axiom::Associativity, vec![a, b, c]));
                    }
                }
            }
        }
        Ok(FinAbMonoid { order, unit, table })
    }

    pub fn trivial() -> Self {
        FinAbMonoid {
            order: 1,
            unit: 0,
            table: vec![0],
        }
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FinAbMonoid {
            order: n,
            unit: 0,
            table: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
        }
    }

    /// `({0, …, n - 1}, max)`: a monoid in which only the unit is invertible.
    pub fn max_chain(n: usize) -> Self {
        assert!(n >= 1);
        FinAbMonoid {
            order: n,
            unit: 0,
            table: (0..n * n).map(|k| (k / n).max(k % n)).collect(),
        }
    }

    pub fn product(&self, other: &FinAbMonoid) -> Self {
        let m = other.order;
        let order = self.order * m;
        FinAbMonoid {
            order,
            unit: self.unit * m + other.unit,
            table: (0..order * order)
                .map(|k| {
                    let (x, y) = (k / order, k % order);
                    self.op(x / m, y / m) * m + other.op(x % m, y % m)
                })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// Folds `op` over `items`, the empty sum being the unit.
    pub fn sum<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.unit, |acc, x| self.op(acc, x))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.op(a, b) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.order).all(|a| self.inverse_of(a).is_some())
    }

    /// Relabels elements so that element `old` becomes `perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> FinAbMonoid {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        FinAbMonoid {
            order: n,
            unit: perm[self.unit],
            table,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    monoid: FinAbMonoid,
    inverse: Vec<usize>,
}

impl FinAbGroup {
    pub fn new(monoid: FinAbMonoid) -> Result<Self> {
        let inverse = (0..monoid.order())
            .map(|a| {
                monoid
                    .inverse_of(a)
                    .ok_or_else(|| Error::axiom(Axiom::Inverse, vec![a]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinAbGroup { monoid, inverse })
    }

    /// Like [`FinAbGroup::new`] but also checks a supplied inverse table.
    pub fn with_inverse(monoid: FinAbMonoid, inverse: Vec<usize>) -> Result<Self> {
        if inverse.len() != monoid.order() {
            return Err(Error::axiom(Axiom::Shape, vec![inverse.len()]));
        }
        for (a, &b) in inverse.iter().enumerate() {
            if b >= monoid.order() || monoid.op(a, b) != monoid.unit() {
                return Err(Error::axiom(Axiom::Inverse, vec![a]));
            }
        }
        Ok(FinAbGroup { monoid, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        FinAbGroup::new(FinAbMonoid::cyclic(n)).expect("cyclic group")
    }

    pub fn monoid(&self) -> &FinAbMonoid {
        &self.monoid
    }

    pub fn into_monoid(self) -> FinAbMonoid {
        self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// Invariant factors `t₁ | t₂ | …` (each > 1) of the isomorphism type,
    /// read off from the presentation with one generator per element and one
    /// relation `e_a + e_b - e_{a+b}` per pair.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let n = self.order();
        let mut rows = Vec::with_capacity(n * n + 1);
        for a in 0..n {
            for b in 0..n {
                let mut r = vec![0i64; n];
                r[a] += 1;
                r[b] += 1;
                r[self.monoid.op(a, b)] -= 1;
                rows.push(r);
            }
        }
        let (rank, divs) = elementary_divisors(&Matrix::from_rows(&rows))?;
        debug_assert_eq!(rank, n, "a finite group has no free part");
        Ok(divs
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| d as u64)
            .collect())
    }
}

/// An abelian monoid with `G` acting by monoid automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMonoid {
    monoid: FinAbMonoid,
    group: FiniteGroup,
    /// `action[g * order + a] = g·a`.
    action: Vec<usize>,
}

impl GMonoid {
    pub fn new(monoid: FinAbMonoid, group: FiniteGroup, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = monoid.order();
        if rows.len() != group.order() {
            return Err(Error::axiom(Axiom::Shape, vec![rows.len()]));
        }
        if let Some(g) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::axiom(Axiom::Shape, vec![g]));
        }
        let action: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(pos) = action.iter().position(|&v| v >= n) {
            return Err(Error::axiom(Axiom::Closure, vec![pos / n, pos % n]));
        }
        let act = |g: usize, a: usize| action[g * n + a];
        for a in 0..n {
            if act(0, a) != a {
                return Err(Error::axiom(Axiom::ActionIdentity, vec![a]));
            }
        }
        for g in group.elements() {
            if act(g, monoid.unit()) != monoid.unit() {
                return Err(Error::axiom(Axiom::ActionUnit, vec![g]));
            }
            for a in 0..n {
                for b in 0..n {
                    if act(g, monoid.op(a, b)) != monoid.op(act(g, a), act(g, b)) {
                        return Err(Error::axiom(Axiom::ActionAdditive, vec![g, a, b]));
                    }
                }
            }
            for h in group.elements() {
                let gh = group.mul(g, h);
                for a in 0..n {
                    if act(gh, a) != act(g, act(h, a)) {
                        return Err(Error::axiom(Axiom::ActionComposition, vec![g, h, a]));
                    }
                }
            }
        }
        Ok(GMonoid {
            monoid,
            group,
            action,
        })
    }

    pub fn trivial_action(monoid: FinAbMonoid, group: FiniteGroup) -> Self {
        let n = monoid.order();
        let action = (0..group.order() * n).map(|k| k % n).collect();
        GMonoid {
            monoid,
            group,
            action,
        }
    }

    /// `ℤ/2` acting on an abelian group by `a ↦ -a`.
    pub fn inversion(group: &FinAbGroup) -> Self {
        let rows = vec![(0..group.order()).collect(), group.inverse_table().to_vec()];
        GMonoid::new(group.monoid().clone(), FiniteGroup::cyclic(2), rows)
            .expect("inversion is an automorphism of an abelian group")
    }

    pub fn monoid(&self) -> &FinAbMonoid {
        &self.monoid
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.action[g * self.monoid.order() + a]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.action
            .chunks(self.monoid.order())
            .map(|r| r.to_vec())
            .collect()
    }
}

/// Every abelian monoid of the given order up to isomorphism, each with unit
/// `0` and in canonical (lexicographically least) labelling.
pub fn enumerate_abelian_monoids(order: usize) -> Vec<FinAbMonoid> {
    assert!(order >= 1);
    if order == 1 {
        return vec![FinAbMonoid::trivial()];
    }
    let n = order;
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let perms = permutations_fixing_zero(n);
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        table[a] = a;
        table[a * n] = a;
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (&(a, b), &v) in free.iter().zip(&digits) {
            table[a * n + b] = v;
            table[b * n + a] = v;
        }
        if is_associative(&table, n) {
            let canon = perms
                .iter()
                .map(|p| relabelled(&table, n, p))
                .min()
                .expect("identity permutation present");
            if let Err(pos) = found.binary_search(&canon) {
                found.insert(pos, canon);
            }
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == digits.len() {
                return found
                    .into_iter()
                    .map(|table| FinAbMonoid {
                        order: n,
                        unit: 0,
                        table,
                    })
                    .collect();
            }
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn is_associative(table: &[usize], n: usize) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = table[a * n + b];
            (0..n).all(|c| table[ab * n + c] == table[a * n + table[b * n + c]])
        })
    })
}

fn relabelled(table: &[usize], n: usize, perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[table[a * n + b]];
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, n, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    used[0] = true;
    go(&mut vec![0], &mut used, n, &mut out);
    out
}
