//! Matrices over `Z/m` and canonical (Howell) forms of their row spans.
//!
//! Howell form is canonical for submodules of `(Z/m)^n` even when `m` is
//! composite: two generating sets span the same submodule iff their Howell
//! forms coincide. For prime `m` it is the reduced row echelon form.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::symops::Perm;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZmodMatrix {
    m: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl ZmodMatrix {
    pub fn zeros(m: u32, rows: usize, cols: usize) -> ZmodMatrix {
        assert!(m >= 2, "modulus must be at least 2");
        ZmodMatrix {
            m,
            rows,
            cols,
            entries: alloc::vec![0; rows * cols],
        }
    }

    pub fn identity(m: u32, n: usize) -> ZmodMatrix {
        let mut id = ZmodMatrix::zeros(m, n, n);
        for i in 0..n {
            id.set(i, i, 1);
        }
        id
    }

    /// Builds a matrix from integer rows, reducing every entry mod `m`.
    pub fn from_rows<R: AsRef<[i64]>>(m: u32, rows: &[R]) -> Result<ZmodMatrix> {
        if m < 2 {
            return Err(Error::Dimension("modulus must be at least 2".into()));
        }
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = ZmodMatrix::zeros(m, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(alloc::format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, v.rem_euclid(m as i64) as u32);
            }
        }
        Ok(out)
    }

    pub fn from_columns<C: AsRef<[i64]>>(m: u32, rows: usize, columns: &[C]) -> Result<ZmodMatrix> {
        let mut out = ZmodMatrix::zeros(m, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::Dimension(alloc::format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                out.set(i, j, v.rem_euclid(m as i64) as u32);
            }
        }
        Ok(out)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.m;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&v| v as i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> ZmodMatrix {
        let mut t = ZmodMatrix::zeros(self.m, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &ZmodMatrix) -> Result<ZmodMatrix> {
        if self.m != other.m || self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} (mod {}) by {}x{} (mod {})",
                self.rows,
                self.cols,
                self.m,
                other.rows,
                other.cols,
                other.m
            )));
        }
        let m = self.m as u64;
        let mut out = ZmodMatrix::zeros(self.m, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).fold(0u64, |acc, k| {
                    (acc + self.get(i, k) as u64 * other.get(k, j) as u64) % m
                });
                out.set(i, j, s as u32);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: u32) -> ZmodMatrix {
        let m = self.m as u64;
        ZmodMatrix {
            entries: self
                .entries
                .iter()
                .map(|&v| ((v as u64 * k as u64) % m) as u32)
                .collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Square and invertible over `Z/m`, i.e. its rows span the whole space.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && howell(self).basis == ZmodMatrix::identity(self.m, self.rows).row_vecs()
    }
}

impl fmt::Debug for ZmodMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.row_vecs(), self.m)
    }
}

/// A submodule of `(Z/m)^dim` stored as its Howell basis, rows ordered by
/// pivot column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalSubmodule {
    pub m: u32,
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl CanonicalSubmodule {
    /// Number of elements of the submodule.
    pub fn size(&self) -> BigUint {
        self.basis.iter().fold(BigUint::from(1u32), |acc, row| {
            let pivot = row.iter().copied().find(|&v| v != 0).unwrap_or(self.m);
            acc * BigUint::from(self.m / pivot)
        })
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let m = self.m as u64;
        let mut t: Vec<u32> = v.iter().map(|&x| x % self.m).collect();
        for row in &self.basis {
            let (p, g) = pivot(row).expect("basis rows are nonzero");
            if t[..p].iter().any(|&x| x != 0) {
                return false;
            }
            if !t[p].is_multiple_of(g) {
                return false;
            }
            let q = (t[p] / g) as u64;
            for (tj, &rj) in t.iter_mut().zip(row) {
                *tj = ((*tj as u64 + m - (q * rj as u64) % m) % m) as u32;
            }
        }
        t.iter().all(|&x| x == 0)
    }
}

fn pivot(row: &[u32]) -> Option<(usize, u32)> {
    row.iter().position(|&v| v != 0).map(|p| (p, row[p]))
}

fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

// row <- (a·x + b·y) mod m, elementwise
fn lincomb(m: u32, a: i64, x: &[u32], b: i64, y: &[u32]) -> Vec<u32> {
    let m = m as i64;
    x.iter()
        .zip(y)
        .map(|(&u, &v)| (a * u as i64 + b * v as i64).rem_euclid(m) as u32)
        .collect()
}

/// Echelon form with annihilator rows, pivoting only on the first
/// `pivot_cols` columns. Trailing columns are carried along (used to track
/// row operations). Returns `(pivot column, row)` pairs.
fn echelon(m: u32, rows: Vec<Vec<u32>>, pivot_cols: usize) -> Vec<(usize, Vec<u32>)> {
    let mut pool: Vec<Vec<u32>> = rows.into_iter().filter(|r| r.iter().any(|&v| v != 0)).collect();
    let mut basis = Vec::new();
    for col in 0..pivot_cols {
        let (with, mut without): (Vec<_>, Vec<_>) = pool.into_iter().partition(|r| r[col] != 0);
        let mut iter = with.into_iter();
        let Some(mut piv) = iter.next() else {
            pool = without;
            continue;
        };
        for r in iter {
            let (a, b) = (piv[col] as i64, r[col] as i64);
            let (g, s, t) = xgcd(a, b);
            let (u, v) = (a / g, b / g);
            let new_piv = lincomb(m, s, &piv, t, &r);
            let zeroed = lincomb(m, -v, &piv, u, &r);
            piv = new_piv;
            if zeroed.iter().any(|&x| x != 0) {
                without.push(zeroed);
            }
        }
        // gcd of two residues in [1, m) is itself in [1, m)
        let a = piv[col];
        let g = a.gcd(&m);
        let w = (1..m)
            .find(|&w| w.gcd(&m) == 1 && (w as u64 * a as u64) % m as u64 == g as u64)
            .expect("a unit scaling the pivot to its gcd exists");
        piv = lincomb(m, w as i64, &piv, 0, &piv);
        let ann = lincomb(m, (m / g) as i64, &piv, 0, &piv);
        if ann.iter().any(|&x| x != 0) {
            without.push(ann);
        }
        basis.push((col, piv));
        pool = without;
    }
    basis
}

/// Howell form of the row span of `matrix`.
pub fn howell(matrix: &ZmodMatrix) -> CanonicalSubmodule {
    howell_of_rows(matrix.m, matrix.cols, matrix.row_vecs())
}

pub fn howell_of_rows(m: u32, dim: usize, rows: Vec<Vec<u32>>) -> CanonicalSubmodule {
    let mut basis = echelon(m, rows, dim);
    for i in 0..basis.len() {
        let (c, g) = (basis[i].0, basis[i].1[basis[i].0]);
        let row_i = basis[i].1.clone();
        for (_, above) in basis.iter_mut().take(i) {
            let q = above[c] / g;
            if q != 0 {
                *above = lincomb(m, 1, above, -(q as i64), &row_i);
            }
        }
    }
    CanonicalSubmodule {
        m,
        dim,
        basis: basis.into_iter().map(|(_, r)| r).collect(),
    }
}

/// Row spans of `a` and `b` coincide.
pub fn span_equal(a: &ZmodMatrix, b: &ZmodMatrix) -> Result<bool> {
    if a.m != b.m || a.cols != b.cols {
        return Err(Error::Dimension(alloc::format!(
            "ambient spaces differ: (Z/{})^{} vs (Z/{})^{}",
            a.m,
            a.cols,
            b.m,
            b.cols
        )));
    }
    Ok(howell(a) == howell(b))
}

/// Coefficients `c` with `c · rows = target`, if any.
pub fn express_in_row_span(m: u32, rows: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let n = target.len();
    let k = rows.len();
    let augmented: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| u32::from(i == j)));
            v
        })
        .collect();
    let basis = echelon(m, augmented, n);
    let mut t: Vec<u32> = target.iter().map(|&x| x % m).collect();
    t.extend(core::iter::repeat_n(0, k));
    for (p, row) in &basis {
        if t[..*p].iter().any(|&x| x != 0) {
            return None;
        }
        let g = row[*p];
        if !t[*p].is_multiple_of(g) {
            return None;
        }
        let q = (t[*p] / g) as i64;
        t = lincomb(m, 1, &t, -q, row);
    }
    if t[..n].iter().any(|&x| x != 0) {
        return None;
    }
    // t = target - c·rows on the first n columns, and -c on the tracked ones
    Some(t[n..].iter().map(|&x| (m - x) % m).collect())
}

/// Solves `b · M = a` for `M`.
pub fn solve_right(a: &ZmodMatrix, b: &ZmodMatrix) -> Result<Option<ZmodMatrix>> {
    if a.m != b.m || a.rows != b.rows {
        return Err(Error::Dimension(alloc::format!(
            "solve_right needs equal row counts: {} vs {}",
            a.rows,
            b.rows
        )));
    }
    let bt = b.transpose().row_vecs();
    let mut out = ZmodMatrix::zeros(a.m, b.cols, a.cols);
    for j in 0..a.cols {
        let Some(coeffs) = express_in_row_span(a.m, &bt, &a.column(j)) else {
            return Ok(None);
        };
        for (i, c) in coeffs.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(Some(out))
}

/// Relabels rows indexed by `X∖{0}`: row `x` of the result is row `p(x)` of
/// `matrix`.
pub fn permute_coords(matrix: &ZmodMatrix, p: &Perm) -> Result<ZmodMatrix> {
    if p.degree() != matrix.rows + 1 {
        return Err(Error::Dimension(alloc::format!(
            "permutation of degree {} cannot relabel {} rows",
            p.degree(),
            matrix.rows
        )));
    }
    if p.apply(0) != 0 {
        return Err(Error::Unsupported(alloc::format!("coordinate relabelling {p} moves 0")));
    }
    let mut out = ZmodMatrix::zeros(matrix.m, matrix.rows, matrix.cols);
    for x in 1..=matrix.rows {
        let src = p.apply(x) - 1;
        for j in 0..matrix.cols {
            out.set(x - 1, j, matrix.get(src, j));
        }
    }
    Ok(out)
}
