//! Dense integer matrices and Smith normal form with unimodular certificates.
//!
//! All arithmetic is overflow-checked. The pivot is always the nonzero entry
//! of least absolute value in the active block, ties broken by lowest row and
//! then lowest column, so the output is a deterministic function of the input.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)).take(self.rows))
            .finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Mismatch {
                source_len: self.cols,
                target_len: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = checked_fma(out.data[idx], a, b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Mismatch {
                source_len: self.cols,
                target_len: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(0i64, |acc, (&a, &b)| checked_fma(acc, a, b))
            })
            .collect()
    }

    /// Rows `from..` of `self`.
    pub fn rows_from(&self, from: usize) -> Matrix {
        Matrix {
            rows: self.rows - from,
            cols: self.cols,
            data: self.data[from * self.cols..].to_vec(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }
}

/// Working copy with 128-bit entries, so that intermediate growth during
/// elimination does not overflow before the final results are narrowed.
#[derive(Clone)]
struct Wide {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl Wide {
    fn from(m: &Matrix) -> Self {
        Wide {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&v| i128::from(v)).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        Wide::from(&Matrix::identity(n))
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn narrow(&self) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|&v| i64::try_from(v).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn mul(&self, other: &Wide) -> Result<Wide> {
        let mut out = Wide {
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = wide_fma(out.data[idx], a, b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s != 0 {
                let d = &mut self.data[dst * self.cols + j];
                *d = wide_fma(*d, c, s)?;
            }
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            if s != 0 {
                let d = &mut self.data[i * self.cols + dst];
                *d = wide_fma(*d, c, s)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = -*v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -*v;
        }
    }
}

#[inline]
fn wide_fma(acc: i128, a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or(Error::Overflow)
}

#[inline]
fn checked_fma(acc: i64, a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .ok_or(Error::Overflow)
}

/// `U·A·V = D`, together with `U⁻¹` and `V⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    rank: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn divisors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }

    /// Re-derives every claimed property of the factorization of `a`.
    pub fn verify(&self, a: &Matrix) -> core::result::Result<(), &'static str> {
        let wa = Wide::from(a);
        let (u, v) = (Wide::from(&self.u), Wide::from(&self.v));
        let uav = u
            .mul(&wa)
            .and_then(|ua| ua.mul(&v))
            .map_err(|_| "overflow while checking U·A·V")?;
        if uav.data != Wide::from(&self.d).data {
            return Err("U·A·V differs from D");
        }
        let eye_u = u.mul(&Wide::from(&self.u_inv)).map_err(|_| "overflow")?;
        let eye_v = v.mul(&Wide::from(&self.v_inv)).map_err(|_| "overflow")?;
        if eye_u.data != Wide::identity(a.rows()).data
            || eye_v.data != Wide::identity(a.cols()).data
        {
            return Err("transform is not unimodular");
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                let v = self.d.get(i, j);
                if i != j && v != 0 {
                    return Err("D is not diagonal");
                }
                if i == j && ((i < self.rank) != (v > 0)) {
                    return Err("diagonal is not a positive prefix");
                }
            }
        }
        let divs = self.divisors();
        if divs.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err("diagonal is not a divisibility chain");
        }
        Ok(())
    }
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithForm> {
    let (m, n) = (a.rows(), a.cols());
    let mut d = Wide::from(a);
    let mut u = Wide::identity(m);
    let mut u_inv = Wide::identity(m);
    let mut v = Wide::identity(n);
    let mut v_inv = Wide::identity(n);

    // Row op E applied as A <- E·A, U <- E·U, U⁻¹ <- U⁻¹·E⁻¹; columns dually.
    let mut rank = 0;
    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let p = d.get(t, t);
            let mut clean = true;
            for i in t + 1..m {
                let q = nearest_quotient(d.get(i, t), p);
                if q != 0 {
                    d.add_row(i, t, -q)?;
                    u.add_row(i, t, -q)?;
                    u_inv.add_col(t, i, q)?;
                }
                clean &= d.get(i, t) == 0;
            }
            for j in t + 1..n {
                let q = nearest_quotient(d.get(t, j), p);
                if q != 0 {
                    d.add_col(j, t, -q)?;
                    v.add_col(j, t, -q)?;
                    v_inv.add_row(t, j, q)?;
                }
                clean &= d.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| d.get(i, j) % p != 0));
            match offender {
                Some(i) => {
                    d.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                    u_inv.add_col(i, t, -1)?;
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank = t + 1;
    }
    Ok(SmithForm {
        d: d.narrow()?,
        u: u.narrow()?,
        u_inv: u_inv.narrow()?,
        v: v.narrow()?,
        v_inv: v_inv.narrow()?,
        rank,
    })
}

/// `a / p` rounded to the nearest integer, so the remainder is at most `|p| / 2`.
fn nearest_quotient(a: i128, p: i128) -> i128 {
    let q = a.div_euclid(p);
    let r = a.rem_euclid(p);
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

fn min_pivot(d: &Wide, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = d.get(i, j).unsigned_abs();
            if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Rank and nonunit elementary divisors without keeping the transforms.
pub fn elementary_divisors(a: &Matrix) -> Result<(usize, Vec<i64>)> {
    let snf = smith_normal_form(a)?;
    Ok((snf.rank(), snf.divisors()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let a = Matrix::zeros(2, 3);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.d, a);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn small_example() {
        let a = Matrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.divisors(), vec![2, 4]);
        s.verify(&a).unwrap();
    }

    #[test]
    fn identity_is_fixed() {
        let a = Matrix::identity(4);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.d, a);
        s.verify(&a).unwrap();
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) has Smith form diag(1, 6).
        let a = Matrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.divisors(), vec![1, 6]);
        s.verify(&a).unwrap();
    }

    #[test]
    fn deterministic() {
        let a = Matrix::from_rows(&[vec![3, -1, 4], vec![1, 5, -9], vec![2, 6, 5]]);
        assert_eq!(
            smith_normal_form(&a).unwrap(),
            smith_normal_form(&a).unwrap()
        );
    }

    #[test]
    fn overflow_is_reported() {
        let a = Matrix::from_rows(&[vec![i64::MAX, 1], vec![i64::MAX, 2]]);
        match smith_normal_form(&a) {
            Ok(s) => s.verify(&a).unwrap(),
            Err(e) => assert_eq!(e, Error::Overflow),
        }
    }
}
