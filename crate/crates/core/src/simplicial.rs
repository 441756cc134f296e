//! Truncated simplicial sets with tabulated faces and degeneracies.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Simplicial sets with levels `0..=dim`. Faces `d_i: S_p -> S_{p-1}` exist
/// for `1 <= p <= dim`; degeneracies `s_i: S_p -> S_{p+1}` for `p < dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    sizes: Vec<usize>,
    /// `faces[p][i]` is `d_i` on `S_p`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[p][i]` is `s_i` on `S_p`; `degeneracies[dim]` is empty.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimplicialIdentity {
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    FaceFace { i: usize, j: usize },
    /// `d_i s_j = s_{j-1} d_i` for `i < j`.
    FaceBelowDegeneracy { i: usize, j: usize },
    /// `d_j s_j = id = d_{j+1} s_j`.
    FaceOfDegeneracy { i: usize, j: usize },
    /// `d_i s_j = s_j d_{i-1}` for `i > j + 1`.
    FaceAboveDegeneracy { i: usize, j: usize },
    /// `s_i s_j = s_{j+1} s_i` for `i <= j`.
    DegeneracyDegeneracy { i: usize, j: usize },
}

impl fmt::Display for SimplicialIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SimplicialIdentity::FaceFace { i, j } => write!(f, "d{i} d{j} = d{} d{i}", j - 1),
            SimplicialIdentity::FaceBelowDegeneracy { i, j } => {
                write!(f, "d{i} s{j} = s{} d{i}", j - 1)
            }
            SimplicialIdentity::FaceOfDegeneracy { i, j } => write!(f, "d{i} s{j} = id"),
            SimplicialIdentity::FaceAboveDegeneracy { i, j } => {
                write!(f, "d{i} s{j} = s{j} d{}", i - 1)
            }
            SimplicialIdentity::DegeneracyDegeneracy { i, j } => {
                write!(f, "s{i} s{j} = s{} s{i}", j + 1)
            }
        }
    }
}

/// The first identity that fails, at which level and on which simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IdentityViolation {
    pub identity: SimplicialIdentity,
    pub level: usize,
    pub simplex: usize,
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on simplex {} of level {} ({} vs {})",
            self.identity, self.simplex, self.level, self.left, self.right
        )
    }
}

impl TruncatedSimplicialSet {
    /// Checks the shapes and ranges of all tables; identities are checked by
    /// [`TruncatedSimplicialSet::validate`].
    pub fn new(
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let levels = sizes.len();
        if levels == 0 || faces.len() != levels || degeneracies.len() != levels {
            return Err(Error::InvalidMap("level count mismatch"));
        }
        let dim = levels - 1;
        for p in 0..levels {
            let nf = if p == 0 { 0 } else { p + 1 };
            let nd = if p == dim { 0 } else { p + 1 };
            if faces[p].len() != nf || degeneracies[p].len() != nd {
                return Err(Error::InvalidMap("wrong number of face or degeneracy maps"));
            }
            for t in &faces[p] {
                check_table(t, sizes[p], sizes[p.saturating_sub(1)])?;
            }
            for t in &degeneracies[p] {
                check_table(t, sizes[p], sizes[p + 1])?;
            }
        }
        Ok(TruncatedSimplicialSet {
            sizes,
            faces,
            degeneracies,
        })
    }

    /// Builds all tables from closures `face(p, i, x)` and `degeneracy(p, i, x)`.
    pub fn from_fn(
        sizes: Vec<usize>,
        face: impl Fn(usize, usize, usize) -> usize,
        degeneracy: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let dim = sizes
            .len()
            .checked_sub(1)
            .ok_or(Error::InvalidMap("no levels"))?;
        let faces = (0..=dim)
            .map(|p| {
                if p == 0 {
                    return Vec::new();
                }
                (0..=p)
                    .map(|i| (0..sizes[p]).map(|x| face(p, i, x)).collect())
                    .collect()
            })
            .collect();
        let degeneracies = (0..=dim)
            .map(|p| {
                if p == dim {
                    return Vec::new();
                }
                (0..=p)
                    .map(|i| (0..sizes[p]).map(|x| degeneracy(p, i, x)).collect())
                    .collect()
            })
            .collect();
        Self::new(sizes, faces, degeneracies)
    }

    /// `Δ[0]` truncated at `dim`.
    pub fn point(dim: usize) -> Self {
        Self::from_fn(vec![1; dim + 1], |_, _, _| 0, |_, _, _| 0).expect("point")
    }

    pub fn dim(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, p: usize) -> usize {
        self.sizes[p]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    #[inline]
    pub fn face(&self, p: usize, i: usize, x: usize) -> usize {
        self.faces[p][i][x]
    }

    #[inline]
    pub fn degeneracy(&self, p: usize, i: usize, x: usize) -> usize {
        self.degeneracies[p][i][x]
    }

    pub fn face_table(&self, p: usize, i: usize) -> &[usize] {
        &self.faces[p][i]
    }

    pub fn degeneracy_table(&self, p: usize, i: usize) -> &[usize] {
        &self.degeneracies[p][i]
    }

    /// Flags for the simplices of level `p` that lie in the image of some
    /// degeneracy.
    pub fn degenerate_flags(&self, p: usize) -> Vec<bool> {
        let mut flags = vec![false; self.sizes[p]];
        if p > 0 {
            for table in &self.degeneracies[p - 1] {
                for &y in table {
                    flags[y] = true;
                }
            }
        }
        flags
    }

    pub fn nondegenerate(&self, p: usize) -> Vec<usize> {
        self.degenerate_flags(p)
            .into_iter()
            .enumerate()
            .filter_map(|(x, deg)| (!deg).then_some(x))
            .collect()
    }

    /// Checks every simplicial identity whose maps exist within the truncation.
    pub fn validate(&self) -> core::result::Result<(), IdentityViolation> {
        let dim = self.dim();
        let fail = |identity, level, simplex, left, right| IdentityViolation {
            identity,
            level,
            simplex,
            left,
            right,
        };
        for p in 0..=dim {
            for x in 0..self.sizes[p] {
                if p >= 2 {
                    for j in 1..=p {
                        for i in 0..j {
                            let l = self.face(p - 1, i, self.face(p, j, x));
                            let r = self.face(p - 1, j - 1, self.face(p, i, x));
                            if l != r {
                                return Err(fail(
                                    SimplicialIdentity::FaceFace { i, j },
                                    p,
                                    x,
                                    l,
                                    r,
                                ));
                            }
                        }
                    }
                }
                if p < dim {
                    for j in 0..=p {
                        let s = self.degeneracy(p, j, x);
                        for i in 0..=p + 1 {
                            let l = self.face(p + 1, i, s);
                            let (identity, r) = if i < j {
                                (
                                    SimplicialIdentity::FaceBelowDegeneracy { i, j },
                                    self.degeneracy(p - 1, j - 1, self.face(p, i, x)),
                                )
                            } else if i == j || i == j + 1 {
                                (SimplicialIdentity::FaceOfDegeneracy { i, j }, x)
                            } else {
                                (
                                    SimplicialIdentity::FaceAboveDegeneracy { i, j },
                                    self.degeneracy(p - 1, j, self.face(p, i - 1, x)),
                                )
                            };
                            if l != r {
                                return Err(fail(identity, p, x, l, r));
                            }
                        }
                    }
                }
                if p + 2 <= dim {
                    for j in 0..=p {
                        for i in 0..=j {
                            let l = self.degeneracy(p + 1, i, self.degeneracy(p, j, x));
                            let r = self.degeneracy(p + 1, j + 1, self.degeneracy(p, i, x));
                            if l != r {
                                return Err(fail(
                                    SimplicialIdentity::DegeneracyDegeneracy { i, j },
                                    p,
                                    x,
                                    l,
                                    r,
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Mutable access to one face table, for building deliberately broken
    /// fixtures.
    pub fn face_table_mut(&mut self, p: usize, i: usize) -> &mut [usize] {
        &mut self.faces[p][i]
    }
}

fn check_table(t: &[usize], len: usize, bound: usize) -> Result<()> {
    if t.len() != len {
        return Err(Error::OutOfRange {
            index: t.len(),
            bound: len,
        });
    }
    if let Some(&v) = t.iter().find(|&&v| v >= bound) {
        return Err(Error::OutOfRange { index: v, bound });
    }
    Ok(())
}

/// A levelwise map between truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(levels: Vec<Vec<usize>>) -> Self {
        SimplicialMap { levels }
    }

    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        SimplicialMap {
            levels: x.sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    #[inline]
    pub fn apply(&self, p: usize, x: usize) -> usize {
        self.levels[p][x]
    }

    pub fn level(&self, p: usize) -> &[usize] {
        &self.levels[p]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            levels: first
                .levels
                .iter()
                .zip(&self.levels)
                .map(|(f, g)| f.iter().map(|&y| g[y]).collect())
                .collect(),
        }
    }

    /// Checks ranges and commutation with every face and degeneracy.
    pub fn validate(
        &self,
        source: &TruncatedSimplicialSet,
        target: &TruncatedSimplicialSet,
    ) -> Result<()> {
        let dim = source.dim();
        if self.levels.len() != dim + 1 || target.dim() != dim {
            return Err(Error::InvalidMap("dimension mismatch"));
        }
        for p in 0..=dim {
            check_table(&self.levels[p], source.size(p), target.size(p))?;
        }
        for p in 0..=dim {
            for x in 0..source.size(p) {
                let fx = self.apply(p, x);
                if p > 0 {
                    for i in 0..=p {
                        if self.apply(p - 1, source.face(p, i, x)) != target.face(p, i, fx) {
                            return Err(Error::NotFunctorial {
                                level: p,
                                element: x,
                            });
                        }
                    }
                }
                if p < dim {
                    for i in 0..=p {
                        if self.apply(p + 1, source.degeneracy(p, i, x))
                            != target.degeneracy(p, i, fx)
                        {
                            return Err(Error::NotFunctorial {
                                level: p,
                                element: x,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.iter().enumerate().all(|(x, &y)| x == y))
    }
}

/// Index of the simplex `(j, x)` at level `p` of the reduced suspension of a
/// pointed set of size `size` with basepoint `basepoint`; `j ∈ 1..=p` and
/// `x != basepoint`. Index 0 is the collapsed basepoint.
pub fn suspension_index(size: usize, basepoint: usize, j: usize, x: usize) -> usize {
    let rank = if x < basepoint { x } else { x - 1 };
    1 + (j - 1) * (size - 1) + rank
}

/// The reduced suspension of a discrete pointed set: `(Δ¹ × P) / (∂Δ¹ × P ∪ Δ¹ × *)`.
///
/// A `p`-simplex of `Δ¹` is the step map `[p] -> [1]` with `j` zeros; the
/// simplex `(j, x)` survives the collapse iff `1 <= j <= p` and `x` is not the
/// basepoint. The result is a wedge of `|P| - 1` circles.
pub fn suspension(size: usize, basepoint: usize, dim: usize) -> TruncatedSimplicialSet {
    assert!(basepoint < size);
    let sizes = (0..=dim).map(|p| 1 + p * (size - 1)).collect();
    let decode = move |x: usize| -> Option<(usize, usize)> {
        if x == 0 {
            return None;
        }
        let k = x - 1;
        let rank = k % (size - 1);
        let elem = if rank < basepoint { rank } else { rank + 1 };
        Some((k / (size - 1) + 1, elem))
    };
    let face = move |p: usize, i: usize, x: usize| match decode(x) {
        None => 0,
        Some((j, e)) => {
            let j2 = if i < j { j - 1 } else { j };
            if j2 == 0 || j2 == p {
                0
            } else {
                suspension_index(size, basepoint, j2, e)
            }
        }
    };
    let degeneracy = move |_p: usize, i: usize, x: usize| match decode(x) {
        None => 0,
        Some((j, e)) => suspension_index(size, basepoint, if i < j { j + 1 } else { j }, e),
    };
    TruncatedSimplicialSet::from_fn(sizes, face, degeneracy).expect("suspension tables")
}

/// The suspension of a pointed map `f` of `P` (with `f(basepoint) = basepoint`).
pub fn suspension_map(size: usize, basepoint: usize, dim: usize, f: &[usize]) -> SimplicialMap {
    let levels = (0..=dim)
        .map(|p| {
            let mut level = vec![0; 1 + p * (size - 1)];
            for j in 1..=p {
                for e in (0..size).filter(|&e| e != basepoint) {
                    let y = f[e];
                    level[suspension_index(size, basepoint, j, e)] = if y == basepoint {
                        0
                    } else {
                        suspension_index(size, basepoint, j, y)
                    };
                }
            }
            level
        })
        .collect();
    SimplicialMap::new(levels)
}

/// The subobject generated by the simplices of dimension `<= k`, together
/// with its inclusion.
pub fn skeleton(x: &TruncatedSimplicialSet, k: usize) -> (TruncatedSimplicialSet, SimplicialMap) {
    let dim = x.dim();
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    for p in 0..=dim {
        if p <= k {
            members.push((0..x.size(p)).collect());
        } else {
            let mut flags = vec![false; x.size(p)];
            for i in 0..p {
                for &y in &members[p - 1] {
                    flags[x.degeneracy(p - 1, i, y)] = true;
                }
            }
            members.push(
                flags
                    .into_iter()
                    .enumerate()
                    .filter_map(|(s, f)| f.then_some(s))
                    .collect(),
            );
        }
    }
    let position: Vec<Vec<usize>> = members
        .iter()
        .zip(x.sizes())
        .map(|(m, &n)| {
            let mut pos = vec![usize::MAX; n];
            for (idx, &s) in m.iter().enumerate() {
                pos[s] = idx;
            }
            pos
        })
        .collect();
    let sizes = members.iter().map(Vec::len).collect();
    let sub = TruncatedSimplicialSet::from_fn(
        sizes,
        |p, i, s| position[p - 1][x.face(p, i, members[p][s])],
        |p, i, s| position[p + 1][x.degeneracy(p, i, members[p][s])],
    )
    .expect("skeleton is closed under faces and degeneracies");
    (sub, SimplicialMap::new(members))
}

/// A bisimplicial set truncated at `dim` in both directions. Horizontal maps
/// change the first index, vertical maps the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBisimplicialSet {
    dim: usize,
    sizes: Vec<Vec<usize>>,
    hface: Vec<Vec<Vec<Vec<usize>>>>,
    vface: Vec<Vec<Vec<Vec<usize>>>>,
    hdeg: Vec<Vec<Vec<Vec<usize>>>>,
    vdeg: Vec<Vec<Vec<Vec<usize>>>>,
}

/// Which of the two directions a structure map acts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl TruncatedBisimplicialSet {
    /// `face(dir, p, q, i, x)` and `degeneracy(dir, p, q, i, x)` give the
    /// structure maps out of level `(p, q)`.
    pub fn from_fn(
        dim: usize,
        sizes: Vec<Vec<usize>>,
        face: impl Fn(Direction, usize, usize, usize, usize) -> usize,
        degeneracy: impl Fn(Direction, usize, usize, usize, usize) -> usize,
    ) -> Self {
        let build = |dir: Direction, is_face: bool| -> Vec<Vec<Vec<Vec<usize>>>> {
            (0..=dim)
                .map(|p| {
                    (0..=dim)
                        .map(|q| {
                            let r = if dir == Direction::Horizontal { p } else { q };
                            let count = match (is_face, r) {
                                (true, 0) => 0,
                                (true, r) => r + 1,
                                (false, r) if r == dim => 0,
                                (false, r) => r + 1,
                            };
                            (0..count)
                                .map(|i| {
                                    (0..sizes[p][q])
                                        .map(|x| {
                                            if is_face {
                                                face(dir, p, q, i, x)
                                            } else {
                                                degeneracy(dir, p, q, i, x)
                                            }
                                        })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        TruncatedBisimplicialSet {
            dim,
            hface: build(Direction::Horizontal, true),
            vface: build(Direction::Vertical, true),
            hdeg: build(Direction::Horizontal, false),
            vdeg: build(Direction::Vertical, false),
            sizes,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self, p: usize, q: usize) -> usize {
        self.sizes[p][q]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().flatten().sum()
    }

    pub fn face(&self, dir: Direction, p: usize, q: usize, i: usize, x: usize) -> usize {
        match dir {
            Direction::Horizontal => self.hface[p][q][i][x],
            Direction::Vertical => self.vface[p][q][i][x],
        }
    }

    pub fn degeneracy(&self, dir: Direction, p: usize, q: usize, i: usize, x: usize) -> usize {
        match dir {
            Direction::Horizontal => self.hdeg[p][q][i][x],
            Direction::Vertical => self.vdeg[p][q][i][x],
        }
    }

    /// Checks that every horizontal map commutes with every vertical map.
    pub fn check_commuting(&self) -> Result<()> {
        let d = self.dim;
        for p in 0..=d {
            for q in 0..=d {
                for x in 0..self.sizes[p][q] {
                    let bad = || Error::NotFunctorial {
                        level: p * (d + 1) + q,
                        element: x,
                    };
                    if p > 0 && q > 0 {
                        for i in 0..=p {
                            for j in 0..=q {
                                let hv = self.hface[p][q - 1][i][self.vface[p][q][j][x]];
                                let vh = self.vface[p - 1][q][j][self.hface[p][q][i][x]];
                                if hv != vh {
                                    return Err(bad());
                                }
                            }
                        }
                    }
                    if p < d && q < d {
                        for i in 0..=p {
                            for j in 0..=q {
                                let hv = self.hdeg[p][q + 1][i][self.vdeg[p][q][j][x]];
                                let vh = self.vdeg[p + 1][q][j][self.hdeg[p][q][i][x]];
                                if hv != vh {
                                    return Err(bad());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Level `p` is `B(p, p)`; `d_i = d_i^h d_i^v` and `s_i = s_i^h s_i^v`.
    pub fn diagonal(&self) -> TruncatedSimplicialSet {
        let sizes = (0..=self.dim).map(|p| self.sizes[p][p]).collect();
        TruncatedSimplicialSet::from_fn(
            sizes,
            |p, i, x| self.hface[p][p - 1][i][self.vface[p][p][i][x]],
            |p, i, x| self.hdeg[p][p + 1][i][self.vdeg[p][p][i][x]],
        )
        .expect("diagonal tables")
    }

    /// The map induced on diagonals by a levelwise map `f[p][q]`.
    pub fn diagonal_map(levels: &[Vec<Vec<usize>>]) -> SimplicialMap {
        SimplicialMap::new(
            levels
                .iter()
                .enumerate()
                .map(|(p, row)| row[p].clone())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One vertex and one nondegenerate edge.
    pub(crate) fn circle(dim: usize) -> TruncatedSimplicialSet {
        suspension(2, 0, dim)
    }

    #[test]
    fn point_validates() {
        assert!(TruncatedSimplicialSet::point(4).validate().is_ok());
    }

    #[test]
    fn suspensions_validate_and_count() {
        for size in 1..=4 {
            for base in 0..size {
                let s = suspension(size, base, 4);
                s.validate().unwrap();
                assert_eq!(s.size(0), 1);
                assert_eq!(s.nondegenerate(1).len(), size - 1);
                for p in 2..=4 {
                    assert!(s.nondegenerate(p).is_empty());
                }
            }
        }
        assert_eq!(suspension(1, 0, 3), TruncatedSimplicialSet::point(3));
    }

    #[test]
    fn corrupted_face_is_named() {
        let mut c = circle(3);
        // send the nondegenerate 1-simplex's image under s0 to the wrong face
        let s0 = c.degeneracy(1, 0, 1);
        let wrong = c.face(2, 0, s0);
        c.face_table_mut(2, 0)[s0] = if wrong == 0 { 1 } else { 0 };
        let v = c.validate().unwrap_err();
        assert_eq!(v.level, 1);
        assert!(matches!(
            v.identity,
            SimplicialIdentity::FaceOfDegeneracy { .. } | SimplicialIdentity::FaceFace { .. }
        ));
    }

    #[test]
    fn skeleton_of_point_is_point() {
        let (sk, inc) = skeleton(&TruncatedSimplicialSet::point(3), 1);
        assert_eq!(sk, TruncatedSimplicialSet::point(3));
        assert!(inc.is_identity());
    }

    #[test]
    fn suspension_maps_commute() {
        let swap = [0, 2, 1];
        let m = suspension_map(3, 0, 3, &swap);
        let s = suspension(3, 0, 3);
        m.validate(&s, &s).unwrap();
        assert!(m.compose(&m).is_identity());
    }

    #[test]
    fn constant_bisimplicial_point() {
        let b = TruncatedBisimplicialSet::from_fn(
            3,
            vec![vec![1; 4]; 4],
            |_, _, _, _, _| 0,
            |_, _, _, _, _| 0,
        );
        b.check_commuting().unwrap();
        assert_eq!(b.diagonal(), TruncatedSimplicialSet::point(3));
    }
}
