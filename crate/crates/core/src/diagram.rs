//! Combinatorial models of Γ, Γ^op and Δ.
//!
//! The canonical form of a Γ-morphism is its opposite: a basepoint-preserving
//! function `{0..m} -> {0..n}`. The power-set form `θ: S -> P(T)` is a
//! validated view over it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A morphism `m -> n` of Γ^op: a table of length `m + 1` with `values[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaOpMap {
    target: usize,
    values: Vec<usize>,
}

impl GammaOpMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        match values.first() {
            None => return Err(Error::InvalidMap("empty value table")),
            Some(&v) if v != 0 => return Err(Error::InvalidMap("basepoint is not preserved")),
            _ => {}
        }
        if let Some(&v) = values.iter().find(|&&v| v > target) {
            return Err(Error::OutOfRange {
                index: v,
                bound: target,
            });
        }
        Ok(GammaOpMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        GammaOpMap {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The map sending everything to the basepoint.
    pub fn zero(m: usize, n: usize) -> Self {
        GammaOpMap {
            target: n,
            values: vec![0; m + 1],
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &GammaOpMap) -> Result<GammaOpMap> {
        if first.target != self.source() {
            return Err(Error::Mismatch {
                source_len: self.source(),
                target_len: first.target,
            });
        }
        Ok(GammaOpMap {
            target: self.target,
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    /// Every morphism `m -> n`, in lexicographic order of value tables.
    pub fn hom_set(m: usize, n: usize) -> HomSet {
        HomSet {
            target: n,
            next: Some(vec![0; m + 1]),
        }
    }

    /// Preimage form: the Γ-morphism `n -> m` with `θ(i) = { j : f(j) = i }`.
    pub fn to_power_set_form(&self) -> GammaMap {
        let mut images = vec![Vec::new(); self.target];
        for (j, &i) in self.values.iter().enumerate().skip(1) {
            if i != 0 {
                images[i - 1].push(j);
            }
        }
        GammaMap {
            target: self.source(),
            images,
        }
    }
}

/// Iterator over a Γ^op hom-set.
#[derive(Clone, Debug)]
pub struct HomSet {
    target: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for HomSet {
    type Item = GammaOpMap;

    fn next(&mut self) -> Option<GammaOpMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        loop {
            pos -= 1;
            if pos == 0 {
                break;
            }
            if succ[pos] < self.target {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(GammaOpMap {
            target: self.target,
            values: current,
        })
    }
}

/// A morphism `S -> T` of Γ in Segal's original form: each `i ∈ {1..|S|}` is
/// sent to a subset of `{1..|T|}`, and distinct elements get disjoint subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaMap {
    target: usize,
    /// `images[i - 1] = θ(i)`, sorted.
    images: Vec<Vec<usize>>,
}

impl GammaMap {
    pub fn new(target: usize, mut images: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![0usize; target + 1];
        for (idx, image) in images.iter_mut().enumerate() {
            image.sort_unstable();
            image.dedup();
            for &j in image.iter() {
                if j == 0 || j > target {
                    return Err(Error::OutOfRange {
                        index: j,
                        bound: target,
                    });
                }
                if owner[j] != 0 {
                    return Err(Error::OverlappingImages {
                        first: owner[j],
                        second: idx + 1,
                        shared: j,
                    });
                }
                owner[j] = idx + 1;
            }
        }
        Ok(GammaMap { target, images })
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `θ(i)` for `1 <= i <= source`.
    pub fn image(&self, i: usize) -> &[usize] {
        &self.images[i - 1]
    }

    /// The Γ^op morphism `T -> S` sending `j` to the unique `i` with `j ∈ θ(i)`.
    pub fn from_power_set_form(&self) -> GammaOpMap {
        let mut values = vec![0; self.target + 1];
        for (idx, image) in self.images.iter().enumerate() {
            for &j in image {
                values[j] = idx + 1;
            }
        }
        GammaOpMap {
            target: self.source(),
            values,
        }
    }
}

/// A weakly order-preserving map `[m] -> [n]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaMap {
    target: usize,
    values: Vec<usize>,
}

impl DeltaMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap("empty value table"));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap("not order-preserving"));
        }
        if let Some(&v) = values.iter().find(|&&v| v > target) {
            return Err(Error::OutOfRange {
                index: v,
                bound: target,
            });
        }
        Ok(DeltaMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMap {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `[p - 1] -> [p]` that skips `i`.
    pub fn coface(p: usize, i: usize) -> Self {
        assert!(p >= 1 && i <= p);
        DeltaMap {
            target: p,
            values: (0..p).map(|t| if t < i { t } else { t + 1 }).collect(),
        }
    }

    /// The codegeneracy `[p + 1] -> [p]` that repeats `i`.
    pub fn codegeneracy(p: usize, i: usize) -> Self {
        assert!(i <= p);
        DeltaMap {
            target: p,
            values: (0..=p + 1)
                .map(|t| if t <= i { t } else { t - 1 })
                .collect(),
        }
    }

    /// `α^{n,k}: [1] -> [n]`, `0 ↦ k`, `1 ↦ k + 1`, for `0 <= k < n`.
    pub fn alpha(n: usize, k: usize) -> Self {
        assert!(k < n);
        DeltaMap {
            target: n,
            values: vec![k, k + 1],
        }
    }

    /// `γ^{n,k}: [1] -> [n]`, `0 ↦ 0`, `1 ↦ k + 1`, for `0 <= k < n`.
    pub fn gamma(n: usize, k: usize) -> Self {
        assert!(k < n);
        DeltaMap {
            target: n,
            values: vec![0, k + 1],
        }
    }

    /// The map `[p] -> [1]` taking the first `j` vertices to 0 and the rest to 1.
    pub fn step(p: usize, j: usize) -> Self {
        assert!(j <= p + 1);
        DeltaMap {
            target: 1,
            values: (0..=p).map(|t| usize::from(t >= j)).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &DeltaMap) -> Result<DeltaMap> {
        if first.target != self.source() {
            return Err(Error::Mismatch {
                source_len: self.source(),
                target_len: first.target,
            });
        }
        Ok(DeltaMap {
            target: self.target,
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    /// Every order-preserving map `[m] -> [n]`.
    pub fn hom_set(m: usize, n: usize) -> Vec<DeltaMap> {
        fn extend(prefix: &mut Vec<usize>, len: usize, n: usize, out: &mut Vec<DeltaMap>) {
            if prefix.len() == len {
                out.push(DeltaMap {
                    target: n,
                    values: prefix.clone(),
                });
                return;
            }
            let lo = prefix.last().copied().unwrap_or(0);
            for v in lo..=n {
                prefix.push(v);
                extend(prefix, len, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), m + 1, n, &mut out);
        out
    }
}

/// Segal's functor Δ → Γ: `θ(i) = { j ∈ n | f(i-1) < j <= f(i) }`.
pub fn delta_to_gamma(f: &DeltaMap) -> GammaMap {
    let images = (1..=f.source())
        .map(|i| (f.values[i - 1] + 1..=f.values[i]).collect())
        .collect();
    GammaMap {
        target: f.target,
        images,
    }
}

/// [`delta_to_gamma`] followed by the passage to Γ^op: a map `[m] -> [n]`
/// becomes a basepoint-preserving map `n -> m`.
pub fn delta_to_gamma_op(f: &DeltaMap) -> GammaOpMap {
    let mut values = vec![0; f.target + 1];
    for i in 1..=f.source() {
        for v in &mut values[f.values[i - 1] + 1..=f.values[i]] {
            *v = i;
        }
    }
    GammaOpMap {
        target: f.source(),
        values,
    }
}

/// The Segal projection `φ_{n,k}: n -> 1`.
pub fn segal_projection(n: usize, k: usize) -> Result<GammaOpMap> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange { index: k, bound: n });
    }
    let mut values = vec![0; n + 1];
    values[k] = 1;
    Ok(GammaOpMap { target: 1, values })
}

/// `φ_{n,1}, …, φ_{n,n}`; empty for `n = 0`.
pub fn segal_family(n: usize) -> Vec<GammaOpMap> {
    (1..=n)
        .map(|k| segal_projection(n, k).expect("k in range"))
        .collect()
}

/// `δ^{n,1}, …, δ^{n,n}` in Γ^op form, where `δ^{n,k}` is the image of
/// `γ^{n,k-1}`. The `k`-th member folds `{1..k}` onto `1`.
pub fn bousfield_family(n: usize) -> Vec<GammaOpMap> {
    (1..=n)
        .map(|k| {
            let mut values = vec![0; n + 1];
            values[1..=k].fill(1);
            GammaOpMap { target: 1, values }
        })
        .collect()
}

/// `n -> 1` sending every non-basepoint element to 1.
pub fn fold_map(n: usize) -> GammaOpMap {
    let mut values = vec![1; n + 1];
    values[0] = 0;
    GammaOpMap { target: 1, values }
}

/// The smash product `m ∧ n` of two finite pointed sets, with the row-major
/// pairing `(i, j) ↦ (i - 1)·n + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SmashObject {
    left: usize,
    right: usize,
}

impl SmashObject {
    pub fn new(left: usize, right: usize) -> Self {
        SmashObject { left, right }
    }

    pub fn factors(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    /// Number of non-basepoint elements.
    pub fn size(&self) -> usize {
        self.left * self.right
    }

    /// Pairs a point of each factor; anything touching a basepoint collapses.
    #[inline]
    pub fn pair(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            0
        } else {
            (i - 1) * self.right + j
        }
    }

    pub fn unpair(&self, k: usize) -> (usize, usize) {
        if k == 0 {
            (0, 0)
        } else {
            ((k - 1) / self.right + 1, (k - 1) % self.right + 1)
        }
    }
}

pub fn smash(m: usize, n: usize) -> SmashObject {
    SmashObject::new(m, n)
}

/// `f ∧ g: (m ∧ n) -> (m' ∧ n')`.
pub fn smash_morphisms(f: &GammaOpMap, g: &GammaOpMap) -> GammaOpMap {
    let src = SmashObject::new(f.source(), g.source());
    let dst = SmashObject::new(f.target, g.target);
    let mut values = vec![0; src.size() + 1];
    for (k, v) in values.iter_mut().enumerate().skip(1) {
        let (i, j) = src.unpair(k);
        *v = dst.pair(f.values[i], g.values[j]);
    }
    GammaOpMap {
        target: dst.size(),
        values,
    }
}
