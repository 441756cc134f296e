use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Axiom, Error, Result};

/// A finite group on `{0, …, order - 1}` given by its Cayley table.
/// Element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates every group law on the full table.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::axiom(Axiom::Shape, vec![]));
        }
        if let Some(r) = rows.iter().position(|row| row.len() != order) {
            return Err(Error::axiom(Axiom::Shape, vec![r]));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::axiom(Axiom::Closure, vec![pos / order, pos % order]));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::axiom(Axiom::Identity, vec![a]));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::axiom(Axiom::Associativity, vec![a, b, c]));
                    }
                }
            }
        }
        let mut inverse = vec![0; order];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&b| mul(a, b) == 0 && mul(b, a) == 0)
                .ok_or_else(|| Error::axiom(Axiom::Inverse, vec![a]))?;
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    /// `ℤ/n` with element `k` standing for the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup {
            order: n,
            table: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
            inverse: (0..n).map(|k| (n - k) % n).collect(),
        }
    }

    /// `self × other`, with `(a, b)` stored at `a·|other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let rows = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(rows).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}
