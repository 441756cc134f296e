//! Integral chain complexes of truncated simplicial sets and their homology.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, TruncatedSimplicialSet};
use crate::snf::{smith_normal_form, Matrix, SmithForm};

/// `C_0 <- C_1 <- … <- C_top`. `boundary(p)` is a `rank(p-1) × rank(p)`
/// matrix; `boundary(0)` has no rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() || ranks.len() != boundaries.len() {
            return Err(Error::InvalidMap("chain complex shape"));
        }
        for (p, b) in boundaries.iter().enumerate() {
            let rows = if p == 0 { 0 } else { ranks[p - 1] };
            if b.rows() != rows || b.cols() != ranks[p] {
                return Err(Error::InvalidMap("boundary matrix shape"));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, p: usize) -> &Matrix {
        &self.boundaries[p]
    }

    /// Checks `∂_{p-1} ∂_p = 0` for every `p`, returning the first failing `p`.
    pub fn check_square_zero(&self) -> Result<core::result::Result<(), usize>> {
        for p in 2..=self.top() {
            if !self.boundaries[p - 1].mul(&self.boundaries[p])?.is_zero() {
                return Ok(Err(p));
            }
        }
        Ok(Ok(()))
    }
}

/// The normalized complex together with its basis of nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedComplex {
    pub complex: ChainComplex,
    basis: Vec<Vec<usize>>,
    position: Vec<Vec<Option<usize>>>,
}

impl NormalizedComplex {
    /// The nondegenerate simplices of level `p`, in increasing order.
    pub fn basis(&self, p: usize) -> &[usize] {
        &self.basis[p]
    }

    /// The basis position of simplex `x` at level `p`, or `None` if `x` is
    /// degenerate.
    pub fn position(&self, p: usize, x: usize) -> Option<usize> {
        self.position[p][x]
    }
}

fn check_top(x: &TruncatedSimplicialSet, top: usize) -> Result<()> {
    if top > x.dim() {
        return Err(Error::InsufficientTruncation {
            required: top,
            available: x.dim(),
        });
    }
    Ok(())
}

fn add_signed(m: &mut Matrix, i: usize, j: usize, face: usize) -> Result<()> {
    let sign = if face.is_multiple_of(2) { 1 } else { -1 };
    let v = m.get(i, j).checked_add(sign).ok_or(Error::Overflow)?;
    m.set(i, j, v);
    Ok(())
}

/// `N_p X = Z[X_p] / degenerate`, with `∂ = Σ (-1)^i d_i` and degenerate
/// faces dropped.
pub fn normalized_chain_complex(
    x: &TruncatedSimplicialSet,
    top: usize,
) -> Result<NormalizedComplex> {
    check_top(x, top)?;
    let mut basis = Vec::with_capacity(top + 1);
    let mut position = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let b = x.nondegenerate(p);
        let mut pos = vec![None; x.size(p)];
        for (k, &s) in b.iter().enumerate() {
            pos[s] = Some(k);
        }
        basis.push(b);
        position.push(pos);
    }
    let ranks: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mut boundaries = vec![Matrix::zeros(0, ranks[0])];
    for p in 1..=top {
        let mut m = Matrix::zeros(ranks[p - 1], ranks[p]);
        for (j, &s) in basis[p].iter().enumerate() {
            for i in 0..=p {
                if let Some(row) = position[p - 1][x.face(p, i, s)] {
                    add_signed(&mut m, row, j, i)?;
                }
            }
        }
        boundaries.push(m);
    }
    Ok(NormalizedComplex {
        complex: ChainComplex::new(ranks, boundaries)?,
        basis,
        position,
    })
}

/// `C_p X = Z[X_p]` with `∂ = Σ (-1)^i d_i`.
pub fn unnormalized_chain_complex(x: &TruncatedSimplicialSet, top: usize) -> Result<ChainComplex> {
    check_top(x, top)?;
    let ranks: Vec<usize> = (0..=top).map(|p| x.size(p)).collect();
    let mut boundaries = vec![Matrix::zeros(0, ranks[0])];
    for p in 1..=top {
        let mut m = Matrix::zeros(ranks[p - 1], ranks[p]);
        for s in 0..ranks[p] {
            for i in 0..=p {
                add_signed(&mut m, x.face(p, i, s), s, i)?;
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ranks, boundaries)
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with
/// `1 < t₁ | t₂ | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^rank ⊕ ⨁ Z/c` for arbitrary cyclic orders `c`, brought to
    /// invariant-factor form. Orders `0` count as free summands.
    pub fn from_cyclic(rank: usize, orders: &[u64]) -> Result<Self> {
        let mut free = rank;
        let finite: Vec<i64> = orders
            .iter()
            .filter(|&&c| {
                if c == 0 {
                    free += 1;
                }
                c > 1
            })
            .map(|&c| i64::try_from(c).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        let mut diag = Matrix::zeros(finite.len(), finite.len());
        for (i, &c) in finite.iter().enumerate() {
            diag.set(i, i, c);
        }
        let snf = smith_normal_form(&diag)?;
        Ok(HomologyGroup {
            rank: free,
            torsion: nonunit(&snf.divisors()),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// The modulus of each component in the order torsion (ascending) then
    /// free; `None` marks a free component.
    pub fn moduli(&self) -> Vec<Option<u64>> {
        self.torsion
            .iter()
            .map(|&t| Some(t))
            .chain(core::iter::repeat_n(None, self.rank))
            .collect()
    }

    pub fn components(&self) -> usize {
        self.torsion.len() + self.rank
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let s = if first { "" } else { " + " };
            first = false;
            f.write_str(s)
        };
        match self.rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for t in &self.torsion {
            sep(f)?;
            write!(f, "Z/{t}")?;
        }
        Ok(())
    }
}

fn nonunit(divisors: &[i64]) -> Vec<u64> {
    divisors
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect()
}

/// `H_p` of a complex with explicit generators and a coordinate map on cycles.
///
/// With `U·∂_p·V = D` of rank `r`, the cycles are the span of the last
/// columns `V[:, r..]`, and `(V⁻¹ z)[r..]` are the coordinates of a cycle `z`
/// in that basis. The boundaries have coordinates `Y = (V⁻¹ ∂_{p+1})[r.., :]`,
/// and a second normal form `U'·Y·V' = D'` splits `H_p` into cyclic pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPresentation {
    degree: usize,
    boundary_p: Matrix,
    kernel_rank_offset: usize,
    v: Matrix,
    v_inv: Matrix,
    inner: SmithForm,
    group: HomologyGroup,
    /// Positions in `0..kernel dimension` of the surviving components.
    slots: Vec<usize>,
}

impl HomologyPresentation {
    pub fn new(complex: &ChainComplex, p: usize) -> Result<Self> {
        if p + 1 > complex.top() {
            return Err(Error::InsufficientTruncation {
                required: p + 1,
                available: complex.top(),
            });
        }
        let outer = smith_normal_form(complex.boundary(p))?;
        let r = outer.rank();
        let y = outer.v_inv.mul(complex.boundary(p + 1))?.rows_from(r);
        let inner = smith_normal_form(&y)?;
        let divisors = inner.divisors();
        let kernel_dim = complex.rank(p) - r;
        let mut slots: Vec<usize> = (0..divisors.len()).filter(|&i| divisors[i] > 1).collect();
        slots.extend(divisors.len()..kernel_dim);
        let group = HomologyGroup {
            rank: kernel_dim - divisors.len(),
            torsion: nonunit(&divisors),
        };
        Ok(HomologyPresentation {
            degree: p,
            boundary_p: complex.boundary(p).clone(),
            kernel_rank_offset: r,
            v: outer.v,
            v_inv: outer.v_inv,
            inner,
            group,
            slots,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &HomologyGroup {
        &self.group
    }

    /// The class of the cycle `z` as component values (torsion reduced into
    /// `0..t`).
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        if !self.boundary_p.mul_vec(z)?.iter().all(|&v| v == 0) {
            return Err(Error::NotACycle);
        }
        let c = &self.v_inv.mul_vec(z)?[self.kernel_rank_offset..];
        let y = self.inner.u.mul_vec(c)?;
        Ok(self
            .slots
            .iter()
            .zip(self.group.moduli())
            .map(|(&s, m)| match m {
                Some(t) => y[s].rem_euclid(t as i64),
                None => y[s],
            })
            .collect())
    }

    /// A cycle representing the `k`-th component generator.
    pub fn generator(&self, k: usize) -> Result<Vec<i64>> {
        let slot = self.slots[k];
        let mut w = vec![0; self.v.cols()];
        for (i, entry) in self.inner.u_inv.column(slot).into_iter().enumerate() {
            w[self.kernel_rank_offset + i] = entry;
        }
        self.v.mul_vec(&w)
    }
}

pub fn homology(complex: &ChainComplex, p: usize) -> Result<HomologyGroup> {
    Ok(HomologyPresentation::new(complex, p)?.group)
}

/// The matrix of `f_*: H_p(X) -> H_p(Y)` on the component generators;
/// entries in torsion rows are reduced modulo that row's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub matrix: Vec<Vec<i64>>,
}

impl InducedMap {
    fn reduce(target: &HomologyGroup, mut matrix: Vec<Vec<i64>>) -> Self {
        for (row, m) in matrix.iter_mut().zip(target.moduli()) {
            if let Some(t) = m {
                for v in row.iter_mut() {
                    *v = v.rem_euclid(t as i64);
                }
            }
        }
        InducedMap {
            source: HomologyGroup::zero(),
            target: target.clone(),
            matrix,
        }
    }

    /// Whether the map is multiplication by `k` on a group mapped to itself.
    pub fn is_scalar(&self, k: i64) -> bool {
        if self.source != self.target {
            return false;
        }
        let moduli = self.target.moduli();
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &v)| {
                let want = if i == j { k } else { 0 };
                match moduli[i] {
                    Some(t) => (v - want).rem_euclid(t as i64) == 0,
                    None => v == want,
                }
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar(1)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 0)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &InducedMap) -> Result<InducedMap> {
        if first.target != self.source {
            return Err(Error::Mismatch {
                source_len: self.source.components(),
                target_len: first.target.components(),
            });
        }
        let rows = self.target.components();
        let cols = first.source.components();
        let mut out = vec![vec![0i64; cols]; rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc: i64 = 0;
                for k in 0..self.source.components() {
                    let term = self.matrix[i][k]
                        .checked_mul(first.matrix[k][j])
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                *slot = acc;
            }
        }
        let mut map = Self::reduce(&self.target, out);
        map.source = first.source.clone();
        Ok(map)
    }
}

/// The matrix of the chain map `N_p X -> N_p Y` induced by `f`.
pub fn chain_map(
    f: &SimplicialMap,
    source: &NormalizedComplex,
    target: &NormalizedComplex,
    p: usize,
) -> Matrix {
    let mut m = Matrix::zeros(target.complex.rank(p), source.complex.rank(p));
    for (j, &s) in source.basis(p).iter().enumerate() {
        if let Some(i) = target.position(p, f.apply(p, s)) {
            m.set(i, j, 1);
        }
    }
    m
}

/// Pushes each source generator through a chain map and reads off its class.
pub fn induced_map(
    chain: &Matrix,
    source: &HomologyPresentation,
    target: &HomologyPresentation,
) -> Result<InducedMap> {
    let cols = source.group().components();
    let mut matrix = vec![vec![0i64; cols]; target.group().components()];
    for j in 0..cols {
        let image = chain.mul_vec(&source.generator(j)?)?;
        for (i, v) in target.coordinates(&image)?.into_iter().enumerate() {
            matrix[i][j] = v;
        }
    }
    let mut map = InducedMap::reduce(target.group(), matrix);
    map.source = source.group().clone();
    Ok(map)
}

/// `f_*: H_p(X) -> H_p(Y)` for a simplicial map `f: X -> Y`.
pub fn induced_map_on_homology(
    f: &SimplicialMap,
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
    p: usize,
) -> Result<InducedMap> {
    let src = normalized_chain_complex(source, p + 1)?;
    let tgt = normalized_chain_complex(target, p + 1)?;
    let ps = HomologyPresentation::new(&src.complex, p)?;
    let pt = HomologyPresentation::new(&tgt.complex, p)?;
    induced_map(&chain_map(f, &src, &tgt, p), &ps, &pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{suspension, suspension_map};
    use alloc::string::ToString;

    #[test]
    fn display() {
        assert_eq!(HomologyGroup::zero().to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        let g = HomologyGroup {
            rank: 2,
            torsion: vec![2, 4],
        };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
    }

    #[test]
    fn cyclic_normalization() {
        let g = HomologyGroup::from_cyclic(0, &[2, 3, 1]).unwrap();
        assert_eq!(g.torsion, vec![6]);
        let h = HomologyGroup::from_cyclic(1, &[4, 2, 0]).unwrap();
        assert_eq!((h.rank, h.torsion), (2, vec![2, 4]));
    }

    #[test]
    fn point_and_circles() {
        let pt = TruncatedSimplicialSet::point(3);
        let c = normalized_chain_complex(&pt, 3).unwrap();
        assert_eq!(homology(&c.complex, 0).unwrap(), HomologyGroup::free(1));
        assert!(homology(&c.complex, 1).unwrap().is_zero());
        assert!(homology(&c.complex, 3).is_err());

        let wedge = suspension(4, 0, 3);
        let c = normalized_chain_complex(&wedge, 3).unwrap();
        assert_eq!(homology(&c.complex, 1).unwrap(), HomologyGroup::free(3));
        assert!(homology(&c.complex, 2).unwrap().is_zero());
        let u = unnormalized_chain_complex(&wedge, 3).unwrap();
        assert_eq!(u.check_square_zero().unwrap(), Ok(()));
        for p in 0..3 {
            assert_eq!(homology(&u, p).unwrap(), homology(&c.complex, p).unwrap());
        }
    }

    #[test]
    fn swapping_circles_permutes_h1() {
        let s = suspension(3, 0, 2);
        let swap = suspension_map(3, 0, 2, &[0, 2, 1]);
        let m = induced_map_on_homology(&swap, &s, &s, 1).unwrap();
        assert!(!m.is_identity());
        assert!(m.compose(&m).unwrap().is_identity());
        let id = SimplicialMap::identity(&s);
        assert!(induced_map_on_homology(&id, &s, &s, 1)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn coordinates_and_generators() {
        let s = suspension(2, 0, 2);
        let c = normalized_chain_complex(&s, 2).unwrap();
        let pres = HomologyPresentation::new(&c.complex, 1).unwrap();
        assert_eq!(pres.coordinates(&[1]).unwrap(), vec![1]);
        let pt = normalized_chain_complex(&TruncatedSimplicialSet::point(2), 2).unwrap();
        let pres0 = HomologyPresentation::new(&pt.complex, 0).unwrap();
        assert_eq!(pres0.coordinates(&[3]).unwrap(), vec![3]);
        assert_eq!(pres0.generator(0).unwrap(), vec![1]);
    }
}
