//! Smith normal form over the integers.
//!
//! Two engines share the [`ExactInt`] abstraction:
//!
//! * [`smith_dense`] works on a dense matrix and can record unimodular
//!   transforms `U`, `V` (and their inverses) with `U * M * V = D`.
//! * [`smith_invariants`] works on a [`SparseMatrix`]. It eliminates unit
//!   pivots first, picking the column with the fewest entries and, inside
//!   it, the shortest row (a Markowitz-style fill-in estimate). Whatever
//!   is left once no unit entry survives is handed to the dense engine.
//!
//! Both run at `i64` first and rerun at `BigInt` if any step overflows.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_traits::One;

use crate::scalar::{ExactInt, Overflow};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<S: ExactInt>(&self, f: impl Fn(&T) -> S) -> IntMatrix<S> {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_bigint(&self) -> IntMatrix<BigInt> {
        self.map(|x| x.to_bigint())
    }

    pub fn mul(&self, other: &IntMatrix<T>) -> Result<IntMatrix<T>, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).add_checked(&a.mul_checked(other.get(l, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * x` for a column vector.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .try_fold(T::zero(), |acc, (a, b)| acc.add_checked(&a.mul_checked(b)?))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[i] -= f * row[t]`, touching columns `from..`.
    fn row_axpy(&mut self, i: usize, t: usize, f: &T, from: usize) -> Result<(), Overflow> {
        for j in from..self.cols {
            let src = self.get(t, j);
            if src.is_zero() {
                continue;
            }
            let v = self.get(i, j).sub_mul(f, src)?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// `col[j] -= f * col[t]`, touching rows `from..`.
    fn col_axpy(&mut self, j: usize, t: usize, f: &T, from: usize) -> Result<(), Overflow> {
        for i in from..self.rows {
            let src = self.get(i, t);
            if src.is_zero() {
                continue;
            }
            let v = self.get(i, j).sub_mul(f, src)?;
            self.set(i, j, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self.get(i, j).neg_checked()?;
            self.set(i, j, v);
        }
        Ok(())
    }

    fn negate_col(&mut self, j: usize) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let v = self.get(i, j).neg_checked()?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

/// Unimodular transforms with `u * m * v = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transforms<T> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
}

/// Result of a dense Smith normal form computation. `diagonal` holds the
/// nonzero invariant factors `d_1 | d_2 | ...`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<T>,
    pub transforms: Option<Transforms<T>>,
}

impl<T: ExactInt> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full `rows x cols` diagonal matrix `D`.
    pub fn d_matrix(&self) -> IntMatrix<T> {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    fn to_bigint(&self) -> SmithForm<BigInt> {
        SmithForm {
            rows: self.rows,
            cols: self.cols,
            diagonal: self.diagonal.iter().map(ExactInt::to_bigint).collect(),
            transforms: self.transforms.as_ref().map(|t| Transforms {
                u: t.u.to_bigint(),
                u_inv: t.u_inv.to_bigint(),
                v: t.v.to_bigint(),
                v_inv: t.v_inv.to_bigint(),
            }),
        }
    }
}

struct Reducer<T> {
    a: IntMatrix<T>,
    t: Option<Transforms<T>>,
}

impl<T: ExactInt> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// `row[i] -= f * row[k]`
    fn row_op(&mut self, i: usize, k: usize, f: &T, from: usize) -> Result<(), Overflow> {
        self.a.row_axpy(i, k, f, from)?;
        if let Some(t) = &mut self.t {
            t.u.row_axpy(i, k, f, 0)?;
            // inverse: col[k] += f * col[i]
            t.u_inv.col_axpy(k, i, &f.neg_checked()?, 0)?;
        }
        Ok(())
    }

    /// `col[j] -= f * col[k]`
    fn col_op(&mut self, j: usize, k: usize, f: &T, from: usize) -> Result<(), Overflow> {
        self.a.col_axpy(j, k, f, from)?;
        if let Some(t) = &mut self.t {
            t.v.col_axpy(j, k, f, 0)?;
            // inverse: row[k] += f * row[j]
            t.v_inv.row_axpy(k, j, &f.neg_checked()?, 0)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        self.a.negate_row(i)?;
        if let Some(t) = &mut self.t {
            t.u.negate_row(i)?;
            t.u_inv.negate_col(i)?;
        }
        Ok(())
    }

    /// Smallest nonzero entry (by absolute value) of the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                if best.as_ref().is_none_or(|b| av < b.2) {
                    let unit = av.is_one();
                    best = Some((i, j, av));
                    if unit {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(mut self) -> Result<SmithForm<T>, Overflow> {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut diagonal = Vec::new();
        'outer: for t in 0..rows.min(cols) {
            // each unclean round leaves a remainder smaller than the pivot,
            // so the least entry of the block strictly decreases
            loop {
                let Some((pi, pj)) = self.min_entry(t) else {
                    break 'outer;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.a.get(i, t).is_zero() {
                        let f = nearest_quotient(self.a.get(i, t), &pivot)?;
                        self.row_op(i, t, &f, t)?;
                        clean &= self.a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a.get(t, j).is_zero() {
                        let f = nearest_quotient(self.a.get(t, j), &pivot)?;
                        self.col_op(j, t, &f, t)?;
                        clean &= self.a.get(t, j).is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    // row[t] += row[i] brings a non-multiple into row t
                    Some(i) => self.row_op(t, i, &T::one().neg_checked()?, t)?,
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t)?;
            }
            diagonal.push(self.a.get(t, t).clone());
        }
        Ok(SmithForm {
            rows,
            cols,
            diagonal,
            transforms: self.t,
        })
    }
}

/// `x / p` rounded to a nearest integer, leaving a remainder of at most
/// `|p| / 2` in absolute value.
fn nearest_quotient<T: ExactInt>(x: &T, p: &T) -> Result<T, Overflow> {
    let (q, r) = x.div_mod_floor(p);
    // r has the sign of p, so p - r cannot overflow
    let rest = p.sub_checked(&r)?;
    let round_up = if p.is_positive() { r > rest } else { r < rest };
    if round_up {
        q.add_checked(&T::one())
    } else {
        Ok(q)
    }
}

/// Dense Smith normal form at a fixed scalar type.
pub fn smith_dense_in<T: ExactInt>(m: &IntMatrix<T>, with_transforms: bool) -> Result<SmithForm<T>, Overflow> {
    let t = with_transforms.then(|| Transforms {
        u: IntMatrix::identity(m.rows),
        u_inv: IntMatrix::identity(m.rows),
        v: IntMatrix::identity(m.cols),
        v_inv: IntMatrix::identity(m.cols),
    });
    Reducer { a: m.clone(), t }.run()
}

/// Dense Smith normal form, exact: `i64` first, `BigInt` on overflow.
pub fn smith_dense(m: &IntMatrix<i64>, with_transforms: bool) -> SmithForm<BigInt> {
    match smith_dense_in(m, with_transforms) {
        Ok(s) => s.to_bigint(),
        Err(Overflow) => smith_dense_in(&m.to_bigint(), with_transforms).expect("BigInt arithmetic cannot overflow"),
    }
}

/// Sparse integer matrix stored by columns; entries within a column are
/// sorted by row and nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from explicit columns; entries are sorted, merged, and zeros
    /// dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < rows, "row index {r} out of range");
                    match merged.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|e| e.1 != 0);
                merged
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(m: &IntMatrix<i64>) -> Self {
        let columns = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| *m.get(i, j) != 0).map(|i| (i, *m.get(i, j))).collect())
            .collect();
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> IntMatrix<i64> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Stacks the columns of `other` to the right of `self`.
    pub fn hstack(&mut self, other: &SparseMatrix) {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        self.columns.extend(other.columns.iter().cloned());
        self.cols += other.cols;
    }

    /// `self * other`, or `None` if an entry overflows `i64`.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &i in &touched {
                if acc[i] != 0 {
                    out.push((i, acc[i]));
                }
                acc[i] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        Some(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Invariant factors of a matrix: `units` factors equal to 1 followed by
/// `nontrivial` factors `> 1` in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithInvariants {
    pub units: usize,
    pub nontrivial: Vec<BigInt>,
}

impl SmithInvariants {
    pub fn rank(&self) -> usize {
        self.units + self.nontrivial.len()
    }

    /// All nonzero invariant factors, in order.
    pub fn factors(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::one(), self.units)
            .chain(self.nontrivial.iter().cloned())
            .collect()
    }
}

struct SparseEliminator<T> {
    /// rows[i]: sorted (col, value)
    rows: Vec<Vec<(usize, T)>>,
    /// col_rows[j]: live rows with a nonzero in column j
    col_rows: Vec<BTreeSet<usize>>,
    col_alive: Vec<bool>,
}

impl<T: ExactInt> SparseEliminator<T> {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); m.rows];
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (j, col) in m.columns.iter().enumerate() {
            for &(i, v) in col {
                rows[i].push((j, T::from_i64(v)));
                col_rows[j].insert(i);
            }
        }
        SparseEliminator {
            rows,
            col_rows,
            col_alive: vec![true; m.cols],
        }
    }

    /// Unit entry of column `j` in the shortest row.
    fn unit_pivot(&self, j: usize) -> Option<(usize, T)> {
        self.col_rows[j]
            .iter()
            .filter_map(|&i| {
                let v = &self.rows[i][self.rows[i].binary_search_by_key(&j, |e| e.0).ok()?].1;
                v.abs().is_one().then(|| (self.rows[i].len(), i, v.clone()))
            })
            .min_by_key(|(len, i, _)| (*len, *i))
            .map(|(_, i, v)| (i, v))
    }

    /// `row[i] -= f * row[p]`; returns the columns whose support changed.
    fn eliminate_row(&mut self, i: usize, p: usize, f: &T, changed: &mut Vec<usize>) -> Result<(), Overflow> {
        let target = std::mem::take(&mut self.rows[i]);
        let pivot_row = &self.rows[p];
        let mut out = Vec::with_capacity(target.len() + pivot_row.len());
        let (mut a, mut b) = (0, 0);
        while a < target.len() || b < pivot_row.len() {
            let ca = target.get(a).map_or(usize::MAX, |e| e.0);
            let cb = pivot_row.get(b).map_or(usize::MAX, |e| e.0);
            if ca < cb {
                out.push(target[a].clone());
                a += 1;
            } else if cb < ca {
                let v = T::zero().sub_mul(f, &pivot_row[b].1)?;
                out.push((cb, v));
                self.col_rows[cb].insert(i);
                changed.push(cb);
                b += 1;
            } else {
                let v = target[a].1.sub_mul(f, &pivot_row[b].1)?;
                if v.is_zero() {
                    self.col_rows[ca].remove(&i);
                    changed.push(ca);
                } else {
                    out.push((ca, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.rows[i] = out;
        Ok(())
    }

    fn run(mut self) -> Result<(usize, Vec<T>), Overflow> {
        let ncols = self.col_rows.len();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..ncols).filter(|&j| !self.col_rows[j].is_empty()).map(|j| Reverse((self.col_rows[j].len(), j))).collect();
        let mut units = 0;
        let mut changed = Vec::new();
        while let Some(Reverse((len, j))) = heap.pop() {
            if !self.col_alive[j] || self.col_rows[j].len() != len || len == 0 {
                continue;
            }
            let Some((p, pv)) = self.unit_pivot(j) else {
                // revisited only if a later elimination changes this column
                continue;
            };
            let others: Vec<usize> = self.col_rows[j].iter().copied().filter(|&i| i != p).collect();
            changed.clear();
            for i in others {
                let idx = self.rows[i].binary_search_by_key(&j, |e| e.0).unwrap();
                // pv is a unit, so pv^-1 = pv
                let f = self.rows[i][idx].1.mul_checked(&pv)?;
                self.eliminate_row(i, p, &f, &mut changed)?;
            }
            for &(c, _) in &self.rows[p] {
                self.col_rows[c].remove(&p);
                changed.push(c);
            }
            self.rows[p].clear();
            self.col_alive[j] = false;
            self.col_rows[j].clear();
            units += 1;
            changed.sort_unstable();
            changed.dedup();
            for &c in &changed {
                if self.col_alive[c] && !self.col_rows[c].is_empty() {
                    heap.push(Reverse((self.col_rows[c].len(), c)));
                }
            }
        }

        let live_cols: Vec<usize> = (0..ncols).filter(|&j| self.col_alive[j] && !self.col_rows[j].is_empty()).collect();
        let live_rows: Vec<usize> = (0..self.rows.len()).filter(|&i| !self.rows[i].is_empty()).collect();
        if live_cols.is_empty() {
            return Ok((units, Vec::new()));
        }
        let col_pos: std::collections::HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (k, &i) in live_rows.iter().enumerate() {
            for (c, v) in &self.rows[i] {
                dense.set(k, col_pos[c], v.clone());
            }
        }
        let rest = smith_dense_in(&dense, false)?;
        let mut nontrivial = Vec::new();
        for d in rest.diagonal {
            if d.is_one() {
                units += 1;
            } else {
                nontrivial.push(d);
            }
        }
        Ok((units, nontrivial))
    }
}

/// Invariant factors of a sparse integer matrix.
pub fn smith_invariants(m: &SparseMatrix) -> SmithInvariants {
    let (units, nontrivial) = match SparseEliminator::<i64>::new(m).run() {
        Ok((u, n)) => (u, n.into_iter().map(BigInt::from).collect()),
        Err(Overflow) => SparseEliminator::<BigInt>::new(m).run().expect("BigInt arithmetic cannot overflow"),
    };
    SmithInvariants { units, nontrivial }
}

/// Exact rank of a sparse integer matrix.
pub fn rank(m: &SparseMatrix) -> usize {
    smith_invariants(m).rank()
}

/// `d_i | d_{i+1}` and `d_i > 0`.
pub fn is_divisibility_chain<T: ExactInt>(d: &[T]) -> bool {
    d.iter().all(|x| x.is_positive()) && d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}
