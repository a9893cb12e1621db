//! Cubical diagrams `[q]^n -> Sub(F^r)`: lattice conditions, rank jumps,
//! distinguished points and the path component count.
//!
//! Here `[q] = {0, 1, .., q}` and the cube degree `q` is called `deg` to
//! keep it apart from the field order.
//!
//! The lattice conditions are checked as: zero on the coordinate
//! hyperplanes and `F^r` at the top corner, monotone along every axis,
//! exact 2-cubes (`V_{p-e_s} ∩ V_{p-e_t} = V_{p-e_s-e_t}`), and a
//! nonnegative alternating dimension sum on every subcube. For cubes of
//! dimension 3 and up the last test stands in for injectivity of the
//! higher pushout maps and may be weaker than it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::linalg::{enumerate_subspaces, SubspaceFq};

/// Refuse enumerations with more candidate assignments than this.
pub const DIAGRAM_BUDGET: u128 = 10_000_000;

pub type Point = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalDiagram {
    n: usize,
    deg: usize,
    r: usize,
    /// indexed by the mixed-radix position of the point
    values: Vec<SubspaceFq>,
}

fn point_count(n: usize, deg: usize) -> usize {
    (deg + 1).pow(n as u32)
}

fn point_at(mut idx: usize, n: usize, deg: usize) -> Point {
    let mut p = vec![0; n];
    for x in p.iter_mut().rev() {
        *x = idx % (deg + 1);
        idx /= deg + 1;
    }
    p
}

fn index_of(p: &[usize], deg: usize) -> usize {
    p.iter().fold(0, |acc, &x| acc * (deg + 1) + x)
}

/// Points of `[deg]^n` in lexicographic order.
pub fn grid_points(n: usize, deg: usize) -> impl Iterator<Item = Point> {
    (0..point_count(n, deg)).map(move |i| point_at(i, n, deg))
}

/// Components of the comparability graph of `points` under the product
/// order. Multiplicities never split a component.
pub fn component_count_of(points: &[Point]) -> usize {
    let k = points.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let leq = |a: &Point, b: &Point| a.iter().zip(b).all(|(x, y)| x <= y);
    for i in 0..k {
        for j in i + 1..k {
            if leq(&points[i], &points[j]) || leq(&points[j], &points[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..k).filter(|&i| find(&mut parent, i) == i).count()
}

/// The first lattice-condition failure found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `V_p != 0` although some coordinate of `p` is 0.
    ZeroBoundary { point: Point },
    /// `V_{deg,..,deg} != F^r`.
    Terminal,
    /// `V_{p - e_axis}` is not contained in `V_p`.
    NotMonotone { point: Point, axis: usize },
    /// `V_{p-e_s} ∩ V_{p-e_t} != V_{p-e_s-e_t}`.
    PushoutNotInjective { point: Point, axes: (usize, usize) },
    /// Alternating dimension sum over the subcube spanned by `axes` at `p`
    /// is negative.
    NegativeJump { point: Point, axes: Vec<usize>, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub ok: bool,
    pub violation: Option<Violation>,
    /// Set when cubes of dimension >= 3 were checked only through the
    /// nonnegativity surrogate.
    pub higher_cubes_approximated: bool,
}

impl CubicalDiagram {
    /// Values listed for every point of `[deg]^n` in lexicographic order.
    pub fn new(n: usize, deg: usize, r: usize, values: Vec<SubspaceFq>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cube dimension must be at least 1".into()));
        }
        if values.len() != point_count(n, deg) {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} points",
                values.len(),
                point_count(n, deg)
            )));
        }
        if let Some(v) = values.iter().find(|v| v.ambient() != r) {
            return Err(Error::AmbientMismatch(format!("value in F^{} for a diagram in F^{r}", v.ambient())));
        }
        Ok(CubicalDiagram { n, deg, r, values })
    }

    /// Builds from explicitly given points; points with a zero coordinate
    /// default to the zero subspace, every other point must be given.
    pub fn from_points(n: usize, deg: usize, r: usize, given: &BTreeMap<Point, SubspaceFq>) -> Result<Self> {
        if let Some(p) = given.keys().find(|p| p.len() != n || p.iter().any(|&x| x > deg)) {
            return Err(Error::InvalidParameter(format!("point {p:?} outside [{deg}]^{n}")));
        }
        let values = grid_points(n, deg)
            .map(|p| match given.get(&p) {
                Some(v) => Ok(v.clone()),
                None if p.contains(&0) => Ok(SubspaceFq::zero(r)),
                None => Err(Error::InvalidParameter(format!("no value given at {p:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::new(n, deg, r, values)
    }

    /// Parses `{"i1,..,in": ["<row>", ..], ..}` with rows as digit strings.
    pub fn from_json(field: &FqField, r: usize, n: usize, deg: usize, json: &serde_json::Value) -> Result<Self> {
        let obj = json
            .as_object()
            .ok_or_else(|| Error::Parse("diagram must be a JSON object".into()))?;
        let mut given = BTreeMap::new();
        for (key, rows) in obj {
            let point: Point = key
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad point {key:?}: {e}"))))
                .collect::<Result<_>>()?;
            let rows: Vec<String> = rows
                .as_array()
                .ok_or_else(|| Error::Parse(format!("value at {key:?} must be a list of rows")))?
                .iter()
                .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| Error::Parse(format!("row at {key:?} must be a string"))))
                .collect::<Result<_>>()?;
            given.insert(point, SubspaceFq::from_digit_rows(&rows, r, field)?);
        }
        Self::from_points(n, deg, r, &given)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn value(&self, p: &[usize]) -> &SubspaceFq {
        &self.values[index_of(p, self.deg)]
    }

    fn dim_at(&self, p: &[usize], eps: usize) -> i64 {
        // eps is a bitmask of axes to step back along
        let mut q = p.to_vec();
        for (axis, x) in q.iter_mut().enumerate() {
            if eps >> axis & 1 == 1 {
                if *x == 0 {
                    return 0;
                }
                *x -= 1;
            }
        }
        self.value(&q).dim() as i64
    }

    /// Alternating sum of dimensions over the subcube below `p` spanned by
    /// the axes in `mask`.
    fn partial_jump(&self, p: &[usize], mask: usize) -> i64 {
        let mut sum = 0;
        let mut sub = mask;
        loop {
            let sign = if sub.count_ones() % 2 == 0 { 1 } else { -1 };
            sum += sign * self.dim_at(p, sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        sum
    }

    pub fn rank_jump(&self, p: &[usize]) -> Result<i64> {
        if p.len() != self.n || p.iter().any(|&x| x > self.deg) {
            return Err(Error::InvalidParameter(format!("point {p:?} outside [{}]^{}", self.deg, self.n)));
        }
        Ok(self.partial_jump(p, (1 << self.n) - 1))
    }

    /// Local conditions at `p` involving only `p` and points below it.
    fn local_violation(&self, p: &[usize], field: &FqField) -> Option<Violation> {
        let v = self.value(p);
        let step = |axes: &[usize]| -> Option<Point> {
            let mut q = p.to_vec();
            for &a in axes {
                q[a] = q[a].checked_sub(1)?;
            }
            Some(q)
        };
        for axis in 0..self.n {
            if let Some(below) = step(&[axis]) {
                if !v.contains(self.value(&below), field) {
                    return Some(Violation::NotMonotone { point: p.to_vec(), axis });
                }
            }
        }
        for s in 0..self.n {
            for t in s + 1..self.n {
                if let (Some(a), Some(b), Some(c)) = (step(&[s]), step(&[t]), step(&[s, t])) {
                    let meet = self.value(&a).intersect(self.value(&b), field).expect("same ambient");
                    if &meet != self.value(&c) {
                        return Some(Violation::PushoutNotInjective {
                            point: p.to_vec(),
                            axes: (s, t),
                        });
                    }
                }
            }
        }
        for mask in 1usize..(1 << self.n) {
            let value = self.partial_jump(p, mask);
            if value < 0 {
                return Some(Violation::NegativeJump {
                    point: p.to_vec(),
                    axes: (0..self.n).filter(|&a| mask >> a & 1 == 1).collect(),
                    value,
                });
            }
        }
        None
    }

    pub fn check_lattice_conditions(&self, field: &FqField) -> LatticeCheck {
        let violation = self.find_violation(field);
        LatticeCheck {
            ok: violation.is_none(),
            violation,
            higher_cubes_approximated: self.n >= 3,
        }
    }

    fn find_violation(&self, field: &FqField) -> Option<Violation> {
        for p in grid_points(self.n, self.deg) {
            if p.contains(&0) && self.value(&p).dim() != 0 {
                return Some(Violation::ZeroBoundary { point: p });
            }
        }
        let top = vec![self.deg; self.n];
        if self.value(&top) != &SubspaceFq::full(self.r) {
            return Some(Violation::Terminal);
        }
        grid_points(self.n, self.deg).find_map(|p| self.local_violation(&p, field))
    }

    fn require_lattice(&self, field: &FqField) -> Result<()> {
        match self.find_violation(field) {
            None => Ok(()),
            Some(v) => Err(Error::LatticeViolation(format!("{v:?}"))),
        }
    }

    /// Points with positive rank jump and their multiplicities, in
    /// lexicographic order. Multiplicities add up to `r`.
    pub fn distinguished_points(&self, field: &FqField) -> Result<DistinguishedPoints> {
        self.require_lattice(field)?;
        let points: Vec<(Point, usize)> = grid_points(self.n, self.deg)
            .filter_map(|p| {
                let j = self.partial_jump(&p, (1 << self.n) - 1);
                (j > 0).then_some((p, j as usize))
            })
            .collect();
        let total: usize = points.iter().map(|e| e.1).sum();
        assert_eq!(total, self.r, "rank jumps of a lattice diagram add up to r");
        Ok(DistinguishedPoints { points })
    }

    pub fn component_count(&self, field: &FqField) -> Result<usize> {
        Ok(self.distinguished_points(field)?.component_count())
    }

    /// Inner face map `d_i` (`1 <= i < deg`): the new diagram reads the old
    /// one at `j` for `j < i` and at `j + 1` otherwise on every axis, so
    /// levels `i` and `i + 1` are merged.
    pub fn face(&self, i: usize) -> Result<CubicalDiagram> {
        if i == 0 || i >= self.deg {
            return Err(Error::InvalidParameter(format!("no inner face {i} in degree {}", self.deg)));
        }
        let values = grid_points(self.n, self.deg - 1)
            .map(|mut p| {
                for x in p.iter_mut().filter(|x| **x >= i) {
                    *x += 1;
                }
                self.value(&p).clone()
            })
            .collect();
        CubicalDiagram::new(self.n, self.deg - 1, self.r, values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishedPoints {
    /// `(point, multiplicity)` pairs.
    pub points: Vec<(Point, usize)>,
}

impl DistinguishedPoints {
    pub fn total(&self) -> usize {
        self.points.iter().map(|e| e.1).sum()
    }

    pub fn component_count(&self) -> usize {
        let pts: Vec<Point> = self.points.iter().map(|e| e.0.clone()).collect();
        component_count_of(&pts)
    }
}

/// Every diagram `[deg]^n -> Sub(F_q^r)` satisfying the lattice
/// conditions, in lexicographic order of the values at interior points.
pub fn enumerate_diagrams(field: &FqField, r: usize, n: usize, deg: usize) -> Result<Vec<CubicalDiagram>> {
    if n == 0 {
        return Err(Error::InvalidParameter("cube dimension must be at least 1".into()));
    }
    if deg == 0 {
        // the single point must be both 0 and F^r
        let zero = CubicalDiagram { n, deg, r: 0, values: vec![SubspaceFq::zero(0)] };
        return Ok(if r == 0 { vec![zero] } else { Vec::new() });
    }
    let subspaces: Vec<SubspaceFq> = (0..=r)
        .map(|d| enumerate_subspaces(field, r, d))
        .collect::<Result<Vec<_>>>()?
        .concat();
    let free: Vec<usize> = (0..point_count(n, deg))
        .filter(|&i| {
            let p = point_at(i, n, deg);
            !p.contains(&0) && p.iter().any(|&x| x != deg)
        })
        .collect();
    let candidates = (subspaces.len() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if candidates > DIAGRAM_BUDGET {
        return Err(Error::budget(
            format!("candidate diagrams [{deg}]^{n} -> Sub(F_{}^{r})", field.q()),
            candidates,
            DIAGRAM_BUDGET,
        ));
    }
    let mut values = vec![SubspaceFq::zero(r); point_count(n, deg)];
    let top = point_count(n, deg) - 1;
    values[top] = SubspaceFq::full(r);
    let mut diagram = CubicalDiagram { n, deg, r, values };
    let mut out = Vec::new();
    fill(&mut diagram, field, &free, 0, &subspaces, &mut out);
    Ok(out)
}

fn fill(
    d: &mut CubicalDiagram,
    field: &FqField,
    free: &[usize],
    level: usize,
    subspaces: &[SubspaceFq],
    out: &mut Vec<CubicalDiagram>,
) {
    if level == free.len() {
        let top = vec![d.deg; d.n];
        if d.local_violation(&top, field).is_none() {
            debug_assert!(d.check_lattice_conditions(field).ok);
            out.push(d.clone());
        }
        return;
    }
    let idx = free[level];
    let p = point_at(idx, d.n, d.deg);
    for v in subspaces {
        d.values[idx] = v.clone();
        if d.local_violation(&p, field).is_none() {
            fill(d, field, free, level + 1, subspaces, out);
        }
    }
    d.values[idx] = SubspaceFq::zero(d.r);
}

/// Histogram of the component count over all lattice diagrams.
pub fn census(field: &FqField, r: usize, n: usize, deg: usize) -> Result<BTreeMap<usize, usize>> {
    let mut hist = BTreeMap::new();
    for d in enumerate_diagrams(field, r, n, deg)? {
        *hist.entry(d.component_count(field)?).or_insert(0) += 1;
    }
    Ok(hist)
}
