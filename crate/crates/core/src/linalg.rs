//! Dense linear algebra over F_q: matrices, canonical subspaces, the
//! subspace lattice, and exhaustive enumeration of subspaces and GL_r(F_q).

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FqField};

/// Refuse to enumerate GL_r(F_q) beyond this many elements.
pub const GL_BUDGET: u128 = 10_000_000;

/// Refuse to enumerate more subspaces than this in one call.
pub const SUBSPACE_BUDGET: u128 = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(MatrixFq { rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length. `cols` is only consulted
    /// when `rows` is empty.
    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(MatrixFq {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq, field: &FqField) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Elem], field: &FqField) -> Vec<Elem> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn rank(&self, field: &FqField) -> usize {
        rref(self, field).1
    }

    pub fn is_invertible(&self, field: &FqField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }
}

/// Reduced row echelon form with zero rows removed, and the rank.
pub fn rref(m: &MatrixFq, field: &FqField) -> (MatrixFq, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.entries.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(a.get(rank, c)).unwrap();
        for j in c..cols {
            let v = field.mul(a.get(rank, j), inv);
            a.set(rank, j, v);
        }
        for i in 0..rows {
            if i == rank {
                continue;
            }
            let f = a.get(i, c);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = field.sub(a.get(i, j), field.mul(f, a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    a.entries.truncate(rank * cols);
    a.rows = rank;
    (a, rank)
}

/// Basis (as rows) of the right null space `{x : m x = 0}`.
pub fn null_space(m: &MatrixFq, field: &FqField) -> Vec<Vec<Elem>> {
    let (r, rank) = rref(m, field);
    let cols = m.cols;
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        pivots.push((0..cols).find(|&j| r.get(i, j) != 0).unwrap());
    }
    (0..cols)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = field.neg(r.get(i, free));
            }
            x
        })
        .collect()
}

/// A linear subspace of F_q^r, stored by its RREF basis. Equality of values
/// is equality of subspaces. The derived order compares dimension first,
/// then the RREF entries lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubspaceFq {
    dim: usize,
    ambient: usize,
    basis: Vec<Elem>,
}

impl fmt::Debug for SubspaceFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis_rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for &e in row {
                write!(f, "{e:x}")?;
            }
        }
        write!(f, ">")
    }
}

impl SubspaceFq {
    pub fn zero(ambient: usize) -> Self {
        SubspaceFq {
            dim: 0,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceFq {
            dim: ambient,
            ambient,
            basis: MatrixFq::identity(ambient).entries,
        }
    }

    fn from_rref(m: MatrixFq) -> Self {
        SubspaceFq {
            dim: m.rows,
            ambient: m.cols,
            basis: m.entries,
        }
    }

    /// The row space of `m`.
    pub fn row_space(m: &MatrixFq, field: &FqField) -> Self {
        Self::from_rref(rref(m, field).0)
    }

    /// Parses rows of digit strings such as `["101", "011"]`, one hex digit
    /// per coordinate.
    pub fn from_digit_rows<S: AsRef<str>>(rows: &[S], ambient: usize, field: &FqField) -> Result<Self> {
        let mut vectors = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_ref();
            let v: Vec<Elem> = row
                .chars()
                .map(|c| {
                    c.to_digit(16)
                        .filter(|&d| (d as usize) < field.q())
                        .map(|d| d as Elem)
                        .ok_or_else(|| Error::Parse(format!("bad field digit {c:?} in {row:?}")))
                })
                .collect::<Result<_>>()?;
            vectors.push(v);
        }
        span(&vectors, field, ambient)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> MatrixFq {
        MatrixFq {
            rows: self.dim,
            cols: self.ambient,
            entries: self.basis.clone(),
        }
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.basis.chunks(self.ambient.max(1)).take(self.dim)
    }

    /// Basis rows rendered as hex digit strings.
    pub fn digit_rows(&self) -> Vec<String> {
        self.basis_rows()
            .map(|row| row.iter().map(|&e| char::from_digit(e as u32, 16).unwrap()).collect())
            .collect()
    }

    pub fn is_proper_nontrivial(&self) -> bool {
        self.dim > 0 && self.dim < self.ambient
    }

    pub fn contains_vector(&self, v: &[Elem], field: &FqField) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for row in self.basis_rows() {
            let pivot = row.iter().position(|&e| e != 0).unwrap();
            let c = w[pivot];
            if c == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, b));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &SubspaceFq, field: &FqField) -> bool {
        self.ambient == other.ambient
            && other.dim <= self.dim
            && other.basis_rows().all(|row| self.contains_vector(row, field))
    }

    fn check_ambient(&self, other: &SubspaceFq) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceFq, field: &FqField) -> Result<SubspaceFq> {
        self.check_ambient(other)?;
        let mut entries = self.basis.clone();
        entries.extend_from_slice(&other.basis);
        let m = MatrixFq {
            rows: self.dim + other.dim,
            cols: self.ambient,
            entries,
        };
        Ok(Self::row_space(&m, field))
    }

    /// Computed from the kernel of the stacked bases: `x A = y B` gives
    /// the common vectors `x A`.
    pub fn intersect(&self, other: &SubspaceFq, field: &FqField) -> Result<SubspaceFq> {
        self.check_ambient(other)?;
        let r = self.ambient;
        let (a, b) = (self.dim, other.dim);
        // columns: coefficients (x, y); rows: coordinates of x A - y B
        let mut stacked = MatrixFq::zeros(r, a + b);
        for (i, row) in self.basis_rows().enumerate() {
            for j in 0..r {
                stacked.set(j, i, row[j]);
            }
        }
        for (i, row) in other.basis_rows().enumerate() {
            for j in 0..r {
                stacked.set(j, a + i, field.neg(row[j]));
            }
        }
        let vectors: Vec<Vec<Elem>> = null_space(&stacked, field)
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![0; r];
                for (i, row) in self.basis_rows().enumerate() {
                    let c = coeffs[i];
                    if c == 0 {
                        continue;
                    }
                    for (x, &e) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(c, e));
                    }
                }
                v
            })
            .collect();
        span(&vectors, field, r)
    }
}

/// Canonical subspace spanned by `vectors`, each of length `ambient`.
pub fn span(vectors: &[Vec<Elem>], field: &FqField, ambient: usize) -> Result<SubspaceFq> {
    if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
        return Err(Error::AmbientMismatch(format!(
            "vector of length {} in F^{ambient}",
            v.len()
        )));
    }
    Ok(SubspaceFq::row_space(&MatrixFq::from_rows(vectors, ambient)?, field))
}

/// The Gaussian binomial coefficient `[r choose d]_q`.
pub fn gaussian_binomial(r: usize, d: usize, q: u128) -> u128 {
    if d > r {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..d {
        let num = q.pow((r - i) as u32) - 1;
        let den = q.pow((i + 1) as u32) - 1;
        acc = acc.checked_mul(num).expect("gaussian binomial overflows u128") / den;
    }
    acc
}

/// `|GL_r(F_q)| = prod_{i<r} (q^r - q^i)`.
pub fn gl_order(q: u128, r: usize) -> u128 {
    let qr = q.pow(r as u32);
    (0..r).fold(1u128, |acc, i| acc * (qr - q.pow(i as u32)))
}

/// All vectors of F_q^r, in lexicographic order (first coordinate most
/// significant).
pub fn all_vectors(q: usize, r: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..q.pow(r as u32)).map(move |mut n| {
        let mut v = vec![0; r];
        for x in v.iter_mut().rev() {
            *x = (n % q) as Elem;
            n /= q;
        }
        v
    })
}

/// Representatives of the lines of F_q^r: nonzero vectors whose first
/// nonzero coordinate is 1, in lexicographic order.
pub fn projective_points(q: usize, r: usize) -> Vec<Vec<Elem>> {
    all_vectors(q, r)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every `d`-dimensional subspace of F_q^r exactly once, sorted
/// lexicographically by RREF basis. Generated directly from pivot patterns.
pub fn enumerate_subspaces(field: &FqField, r: usize, d: usize) -> Result<Vec<SubspaceFq>> {
    if d > r {
        return Err(Error::InvalidParameter(format!("dimension {d} exceeds ambient {r}")));
    }
    let q = field.q();
    let count = gaussian_binomial(r, d, q as u128);
    if count > SUBSPACE_BUDGET {
        return Err(Error::budget(format!("subspaces of dimension {d} in F_{q}^{r}"), count, SUBSPACE_BUDGET));
    }
    let patterns = combinations(r, d);
    let mut out: Vec<SubspaceFq> = patterns
        .par_iter()
        .flat_map_iter(|pivots| {
            // free slots: (row, col) with col > pivot of row and col not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| ((pc + 1)..r).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let total = q.pow(free.len() as u32);
            (0..total).map(move |mut n| {
                let mut basis = vec![0; d * r];
                for (i, &pc) in pivots.iter().enumerate() {
                    basis[i * r + pc] = 1;
                }
                for &(i, c) in free.iter().rev() {
                    basis[i * r + c] = (n % q) as Elem;
                    n /= q;
                }
                SubspaceFq { dim: d, ambient: r, basis }
            })
        })
        .collect();
    out.sort_unstable();
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// All proper nontrivial subspaces of F_q^r, by dimension then RREF.
pub fn proper_subspaces(field: &FqField, r: usize) -> Result<Vec<SubspaceFq>> {
    let mut out = Vec::new();
    for d in 1..r {
        out.extend(enumerate_subspaces(field, r, d)?);
    }
    Ok(out)
}

/// Iterator over GL_r(F_q) in lexicographic row-major order. Rows are
/// chosen one at a time among vectors outside the span of earlier rows.
pub struct GlIter<'f> {
    field: &'f FqField,
    r: usize,
    vectors: Vec<Vec<Elem>>,
    /// `cursor[i]` is the index of the vector currently in row `i`.
    cursor: Vec<usize>,
    /// `spans[i]` spans rows `0..i`.
    spans: Vec<SubspaceFq>,
    started: bool,
    done: bool,
}

impl<'f> GlIter<'f> {
    fn advance_from(&mut self, level: usize, start: usize) -> bool {
        // fills rows level.. with the first admissible choices, backtracking
        let mut level = level;
        let mut start = start;
        loop {
            let found = (start..self.vectors.len()).find(|&i| !self.spans[level].contains_vector(&self.vectors[i], self.field));
            match found {
                Some(i) => {
                    self.cursor[level] = i;
                    let next = self.spans[level]
                        .sum(&span(&[self.vectors[i].clone()], self.field, self.r).unwrap(), self.field)
                        .unwrap();
                    self.spans[level + 1] = next;
                    if level + 1 == self.r {
                        return true;
                    }
                    level += 1;
                    start = 0;
                }
                None => {
                    if level == 0 {
                        return false;
                    }
                    level -= 1;
                    start = self.cursor[level] + 1;
                }
            }
        }
    }
}

impl Iterator for GlIter<'_> {
    type Item = MatrixFq;

    fn next(&mut self) -> Option<MatrixFq> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.r == 0 || self.advance_from(0, 0)
        } else if self.r == 0 {
            false
        } else {
            let last = self.r - 1;
            let start = self.cursor[last] + 1;
            self.advance_from(last, start)
        };
        if !ok {
            self.done = true;
            return None;
        }
        let rows: Vec<Vec<Elem>> = self.cursor.iter().map(|&i| self.vectors[i].clone()).collect();
        Some(MatrixFq::from_rows(&rows, self.r).unwrap())
    }
}

/// Enumerates GL_r(F_q), refusing when its order exceeds [`GL_BUDGET`].
pub fn enumerate_gl(field: &FqField, r: usize) -> Result<GlIter<'_>> {
    let order = gl_order(field.q() as u128, r);
    if order > GL_BUDGET {
        return Err(Error::budget(format!("|GL_{r}(F_{})|", field.q()), order, GL_BUDGET));
    }
    Ok(GlIter {
        field,
        r,
        vectors: all_vectors(field.q(), r).collect(),
        cursor: vec![0; r],
        spans: vec![SubspaceFq::zero(r); r + 1],
        started: false,
        done: false,
    })
}

/// The image `g(V)`, with vectors acted on as columns.
pub fn act(g: &MatrixFq, v: &SubspaceFq, field: &FqField) -> Result<SubspaceFq> {
    if g.rows() != v.ambient() || g.cols() != v.ambient() {
        return Err(Error::AmbientMismatch(format!(
            "{}x{} matrix acting on F^{}",
            g.rows(),
            g.cols(),
            v.ambient()
        )));
    }
    if !g.is_invertible(field) {
        return Err(Error::InvalidParameter("acting matrix is not invertible".into()));
    }
    Ok(act_unchecked(g, v, field))
}

/// [`act`] without the invertibility check, for hot loops over known
/// group elements.
pub fn act_unchecked(g: &MatrixFq, v: &SubspaceFq, field: &FqField) -> SubspaceFq {
    let images: Vec<Vec<Elem>> = v.basis_rows().map(|row| g.apply(row, field)).collect();
    span(&images, field, v.ambient()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn f(q: usize) -> FqField {
        FqField::of_order(q).unwrap()
    }

    fn sp(rows: &[&[Elem]], field: &FqField, r: usize) -> SubspaceFq {
        let v: Vec<Vec<Elem>> = rows.iter().map(|x| x.to_vec()).collect();
        span(&v, field, r).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = f(2);
        let id = MatrixFq::identity(2);
        assert_eq!(rref(&id, &f2), (id.clone(), 2));
        let ones = MatrixFq::from_rows(&[vec![1, 1], vec![1, 1]], 2).unwrap();
        assert_eq!(rref(&ones, &f2), (MatrixFq::from_rows(&[vec![1, 1]], 2).unwrap(), 1));
        let f5 = f(5);
        let m = MatrixFq::from_rows(&[vec![1, 2], vec![2, 4]], 2).unwrap();
        assert_eq!(rref(&m, &f5), (MatrixFq::from_rows(&[vec![1, 2]], 2).unwrap(), 1));
    }

    #[test]
    fn span_examples() {
        let f2 = f(2);
        assert_eq!(span(&[], &f2, 2).unwrap().dim(), 0);
        let line = sp(&[&[1, 1]], &f2, 2);
        assert_eq!(line.dim(), 1);
        assert_eq!(line.digit_rows(), vec!["11"]);
        assert_eq!(sp(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]], &f2, 3).dim(), 2);
        assert!(span(&[vec![1, 0]], &f2, 3).is_err());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f2 = f(2);
        let a = sp(&[&[1, 0]], &f2, 2);
        let b = sp(&[&[0, 1]], &f2, 2);
        assert_eq!(a.sum(&b, &f2).unwrap(), SubspaceFq::full(2));
        assert_eq!(a.intersect(&b, &f2).unwrap(), SubspaceFq::zero(2));
        let full = SubspaceFq::full(2);
        assert_eq!(a.sum(&full, &f2).unwrap(), full);
        assert_eq!(a.intersect(&full, &f2).unwrap(), a);

        let e12 = sp(&[&[1, 0, 0], &[0, 1, 0]], &f2, 3);
        let e23 = sp(&[&[0, 1, 0], &[0, 0, 1]], &f2, 3);
        assert_eq!(e12.intersect(&e23, &f2).unwrap(), sp(&[&[0, 1, 0]], &f2, 3));
        assert!(e12.sum(&a, &f2).is_err());
    }

    #[test]
    fn intersection_matches_membership() {
        for (q, r) in [(2, 3), (3, 2), (2, 4)] {
            let field = f(q);
            let subs: Vec<SubspaceFq> = (0..=r).flat_map(|d| enumerate_subspaces(&field, r, d).unwrap()).collect();
            let vectors: Vec<Vec<Elem>> = all_vectors(q, r).collect();
            for a in subs.iter().step_by(3) {
                for b in subs.iter().step_by(2) {
                    let common: Vec<Vec<Elem>> = vectors
                        .iter()
                        .filter(|v| a.contains_vector(v, &field) && b.contains_vector(v, &field))
                        .cloned()
                        .collect();
                    assert_eq!(a.intersect(b, &field).unwrap(), span(&common, &field, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn dimension_formula_on_all_pairs() {
        for (q, r) in [(2, 3), (3, 2)] {
            let field = f(q);
            let subs: Vec<SubspaceFq> = (0..=r).flat_map(|d| enumerate_subspaces(&field, r, d).unwrap()).collect();
            for a in &subs {
                for b in &subs {
                    let s = a.sum(b, &field).unwrap();
                    let i = a.intersect(b, &field).unwrap();
                    assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                    assert!(s.contains(a, &field) && s.contains(b, &field));
                    assert!(a.contains(&i, &field) && b.contains(&i, &field));
                }
            }
        }
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(&f(2), 3, 1).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(&f(2), 4, 2).unwrap().len(), 35);
        assert_eq!(enumerate_subspaces(&f(7), 3, 0).unwrap().len(), 1);
        assert!(enumerate_subspaces(&f(2), 2, 3).is_err());
        for q in [2usize, 3, 4, 5] {
            let field = f(q);
            for r in 0..=4 {
                for d in 0..=r {
                    let subs = enumerate_subspaces(&field, r, d).unwrap();
                    assert_eq!(subs.len() as u128, gaussian_binomial(r, d, q as u128));
                    assert!(subs.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
    }

    #[test]
    fn gl_counts() {
        for q in [2usize, 3, 4, 5] {
            assert_eq!(enumerate_gl(&f(q), 1).unwrap().count(), q - 1);
        }
        assert_eq!(enumerate_gl(&f(2), 2).unwrap().count(), 6);
        assert_eq!(enumerate_gl(&f(2), 3).unwrap().count(), 168);
        assert_eq!(gl_order(2, 3), 168);
        assert!(enumerate_gl(&f(16), 4).is_err());
    }

    #[test]
    fn gl_enumeration_is_distinct_sorted_and_invertible() {
        let field = f(3);
        let all: Vec<MatrixFq> = enumerate_gl(&field, 2).unwrap().collect();
        assert_eq!(all.len() as u128, gl_order(3, 2));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|g| g.is_invertible(&field)));
    }

    #[test]
    fn action_examples() {
        let f2 = f(2);
        let e1 = sp(&[&[1, 0]], &f2, 2);
        let e2 = sp(&[&[0, 1]], &f2, 2);
        assert_eq!(act(&MatrixFq::identity(2), &e1, &f2).unwrap(), e1);
        let swap = MatrixFq::from_rows(&[vec![0, 1], vec![1, 0]], 2).unwrap();
        assert_eq!(act(&swap, &e1, &f2).unwrap(), e2);
        let singular = MatrixFq::from_rows(&[vec![1, 1], vec![1, 1]], 2).unwrap();
        assert!(act(&singular, &e1, &f2).is_err());

        let line = sp(&[&[0, 0, 1]], &f2, 3);
        let orbit: BTreeSet<SubspaceFq> = enumerate_gl(&f2, 3).unwrap().map(|g| act(&g, &line, &f2).unwrap()).collect();
        assert_eq!(orbit.len(), 7);
    }

    #[test]
    fn action_is_a_group_action() {
        let field = f(3);
        let group: Vec<MatrixFq> = enumerate_gl(&field, 2).unwrap().collect();
        let subs = proper_subspaces(&field, 2).unwrap();
        for g in group.iter().step_by(5) {
            for h in group.iter().step_by(7) {
                let gh = g.mul(h, &field).unwrap();
                for v in &subs {
                    let lhs = act(&gh, v, &field).unwrap();
                    let rhs = act(g, &act(h, v, &field).unwrap(), &field).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn digit_rows_round_trip() {
        let field = f(16);
        let v = SubspaceFq::from_digit_rows(&["10c", "01a"], 3, &field).unwrap();
        assert_eq!(v.digit_rows(), vec!["10c", "01a"]);
        assert!(SubspaceFq::from_digit_rows(&["12"], 2, &f(2)).is_err());
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(2, 3).len(), 7);
        assert_eq!(projective_points(3, 2).len(), 4);
    }
}
