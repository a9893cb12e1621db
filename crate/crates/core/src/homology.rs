//! Integral chain complexes and exact (reduced) homology with torsion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::snf::{smith_dense, smith_dense_in, smith_invariants, IntMatrix, SmithForm, SmithInvariants, SparseMatrix};

/// A finitely generated abelian group `Z^betti + Z/t_1 + ... + Z/t_m` with
/// `1 < t_1 | t_2 | ... | t_m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            betti: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/m`; `m = 0` gives `Z` and `m = 1` the trivial group.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Self::free(1),
            1 => Self::zero(),
            _ => AbelianGroup {
                betti: 0,
                torsion: vec![BigInt::from(m)],
            },
        }
    }

    /// Cokernel of a relation matrix on `generators` generators, given the
    /// relation matrix's invariant factors.
    pub fn cokernel(generators: usize, invariants: &SmithInvariants) -> Self {
        AbelianGroup {
            betti: generators - invariants.rank(),
            torsion: invariants.nontrivial.clone(),
        }
    }

    /// Cokernel of the sparse relation matrix whose columns are relations.
    pub fn presented(relations: &SparseMatrix) -> Self {
        Self::cokernel(relations.rows(), &smith_invariants(relations))
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.betti == 0
    }

    /// Order of a finite group; `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// `Z^2 + Z/2`, `0`, and so on.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// JSON-safe integer: a number when it fits in 53 bits, else a decimal
/// string.
pub fn json_int(v: &BigInt) -> serde_json::Value {
    const LIMIT: i64 = 1 << 53;
    match v.to_i64() {
        Some(x) if (-LIMIT..=LIMIT).contains(&x) => serde_json::Value::from(x),
        _ => serde_json::Value::String(v.to_string()),
    }
}

pub fn json_ints(v: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(json_int).collect())
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &json_ints(&self.torsion))?;
        st.end()
    }
}

/// Homology groups indexed by degree. Reduced results start at degree -1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyResult {
    pub reduced: bool,
    pub degrees: BTreeMap<i64, AbelianGroup>,
}

impl HomologyResult {
    pub fn group(&self, k: i64) -> AbelianGroup {
        self.degrees.get(&k).cloned().unwrap_or_default()
    }

    pub fn betti(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, k: i64) -> &[BigInt] {
        self.degrees.get(&k).map_or(&[], |g| &g.torsion)
    }

    /// Degrees carrying a nonzero group.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees.iter().filter(|(_, g)| !g.is_zero()).map(|(&k, _)| k).collect()
    }

    /// True iff every degree other than `k` is zero (torsion included).
    pub fn is_concentrated_in(&self, k: i64) -> bool {
        self.degrees.iter().all(|(&d, g)| d == k || g.is_zero())
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.values().any(|g| !g.torsion.is_empty())
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(&k, g)| if k.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .degrees
            .iter()
            .map(|(k, g)| (k.to_string(), serde_json::to_value(g).unwrap()))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// A bounded chain complex of free abelian groups. Degree `min_degree + i`
/// has rank `ranks[i]` and outgoing boundary `boundaries[i]`, a
/// `ranks[i-1] x ranks[i]` matrix (the lowest boundary has zero rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerChainComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl IntegerChainComplex {
    /// `boundaries[i]` maps degree `min_degree + i` to the degree below;
    /// shapes must chain up.
    pub fn new(min_degree: i64, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        let ranks: Vec<usize> = boundaries.iter().map(SparseMatrix::cols).collect();
        if let Some(first) = boundaries.first() {
            if first.rows() != 0 {
                return Err(Error::InvalidParameter("lowest boundary must have zero rows".into()));
            }
        }
        for i in 1..boundaries.len() {
            if boundaries[i].rows() != ranks[i - 1] {
                return Err(Error::InvalidParameter(format!(
                    "boundary in degree {} has {} rows, expected {}",
                    min_degree + i as i64,
                    boundaries[i].rows(),
                    ranks[i - 1]
                )));
            }
        }
        Ok(IntegerChainComplex {
            min_degree,
            ranks,
            boundaries,
        })
    }

    /// Simplicial chains of `c`; when `reduced`, degree -1 is `Z` with the
    /// augmentation as boundary of degree 0.
    pub fn from_complex(c: &SimplicialComplex, reduced: bool) -> Self {
        let dim = c.dimension();
        let mut boundaries = Vec::new();
        let mut prev: Option<Vec<Simplex>> = None;
        if reduced {
            boundaries.push(SparseMatrix::new(0, 1));
        }
        for k in 0..=dim {
            let simplices = c.simplices(k as usize);
            let b = match &prev {
                None if reduced => augmentation(simplices.len()),
                None => SparseMatrix::new(0, simplices.len()),
                Some(lower) => boundary_matrix(lower, &simplices),
            };
            boundaries.push(b);
            prev = Some(simplices);
        }
        let min_degree = if reduced { -1 } else { 0 };
        Self::new(min_degree, boundaries).expect("simplicial boundaries chain up")
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.ranks[i])
    }

    fn index(&self, k: i64) -> Option<usize> {
        let i = k - self.min_degree;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// The boundary out of degree `k` (a zero map outside the range).
    pub fn boundary(&self, k: i64) -> SparseMatrix {
        match self.index(k) {
            Some(i) => self.boundaries[i].clone(),
            None => SparseMatrix::new(self.rank(k - 1), self.rank(k)),
        }
    }

    /// Checks `d_{k} d_{k+1} = 0` for all `k`.
    pub fn boundary_squared_is_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_some_and(|p| p.is_zero()))
    }

    pub fn homology(&self) -> HomologyResult {
        let invariants: Vec<SmithInvariants> = self.boundaries.iter().map(smith_invariants).collect();
        let mut degrees = BTreeMap::new();
        for (i, &n) in self.ranks.iter().enumerate() {
            let out_rank = invariants[i].rank();
            let (in_rank, torsion) = match invariants.get(i + 1) {
                Some(inv) => (inv.rank(), inv.nontrivial.clone()),
                None => (0, Vec::new()),
            };
            degrees.insert(
                self.min_degree + i as i64,
                AbelianGroup {
                    betti: n - out_rank - in_rank,
                    torsion,
                },
            );
        }
        HomologyResult {
            reduced: self.min_degree < 0,
            degrees,
        }
    }
}

fn augmentation(n: usize) -> SparseMatrix {
    SparseMatrix::from_columns(1, (0..n).map(|_| vec![(0, 1)]).collect())
}

/// Boundary of oriented simplices: `d[v_0..v_k] = sum (-1)^i [.. v_i omitted ..]`.
/// `lower` must be sorted.
pub fn boundary_matrix(lower: &[Simplex], upper: &[Simplex]) -> SparseMatrix {
    let mut face = Vec::new();
    let columns = upper
        .iter()
        .map(|s| {
            (0..s.len())
                .map(|i| {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    let row = lower.binary_search(&face).expect("face missing from the lower degree");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    SparseMatrix::from_columns(lower.len(), columns)
}

/// Homology of a simplicial complex, computed degree by degree from its
/// facets so only two consecutive chain groups are held at once.
///
/// Panics if a boundary composite fails to vanish or the Euler
/// characteristic disagrees with the Betti numbers; both indicate a bug.
pub fn homology(c: &SimplicialComplex, reduced: bool) -> HomologyResult {
    let dim = c.dimension();
    let mut degrees = BTreeMap::new();
    // state for degree k - 1
    let mut lower: Option<Vec<Simplex>> = None;
    let mut lower_boundary: Option<SparseMatrix> = None;
    let mut lower_rank = 0usize;
    let mut lower_count = if reduced { 1 } else { 0 };
    let mut chi: i64 = if reduced { -1 } else { 0 };

    for k in 0..=dim + 1 {
        let (boundary, count, simplices) = if k <= dim {
            let simplices = c.simplices(k as usize);
            let b = match &lower {
                None if reduced => augmentation(simplices.len()),
                None => SparseMatrix::new(0, simplices.len()),
                Some(l) => boundary_matrix(l, &simplices),
            };
            (b, simplices.len(), Some(simplices))
        } else {
            (SparseMatrix::new(lower_count, 0), 0, None)
        };
        if let Some(prev) = &lower_boundary {
            let composite = prev.mul(&boundary).expect("boundary entries are tiny");
            assert!(composite.is_zero(), "boundary of boundary is nonzero in degree {k}");
        }
        let inv = smith_invariants(&boundary);
        let rank = inv.rank();
        if k > 0 || reduced {
            degrees.insert(
                k - 1,
                AbelianGroup {
                    betti: lower_count - lower_rank - rank,
                    torsion: inv.nontrivial.clone(),
                },
            );
        }
        if k <= dim {
            chi += if k % 2 == 0 { count as i64 } else { -(count as i64) };
        }
        lower = simplices;
        lower_boundary = Some(boundary);
        lower_rank = rank;
        lower_count = count;
    }
    let result = HomologyResult { reduced, degrees };
    assert_eq!(result.euler_characteristic(), chi, "Euler characteristic mismatch");
    result
}

/// Alternating count of simplices (unreduced).
pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.simplex_counts()
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

fn smith_exact(m: &IntMatrix<BigInt>) -> SmithForm<BigInt> {
    let small = (0..m.rows()).all(|i| m.row(i).iter().all(|x| x.to_i64().is_some()));
    if small {
        smith_dense(&m.map(|x| x.to_i64().unwrap()), true)
    } else {
        smith_dense_in(m, true).expect("BigInt arithmetic cannot overflow")
    }
}

/// A Z-basis of a free homology group `H_k = Z_k / B_k`, with a
/// coordinate map from cycles to that basis.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub degree: i64,
    /// Representative cycles, one per basis element, as chains in `C_k`.
    pub representatives: Vec<Vec<BigInt>>,
    chain_rank: usize,
    outgoing: SparseMatrix,
    /// inverse of the column transform diagonalising the outgoing boundary
    kernel_inv: IntMatrix<BigInt>,
    kernel_offset: usize,
    /// kernel basis: the trailing columns of the column transform
    kernel: IntMatrix<BigInt>,
    quotient: IntMatrix<BigInt>,
    quotient_offset: usize,
}

impl CycleBasis {
    /// Fails with [`Error::Torsion`] if `H_k` is not free.
    pub fn new(complex: &IntegerChainComplex, k: i64) -> Result<Self> {
        let n = complex.rank(k);
        let outgoing = complex.boundary(k);
        let incoming = complex.boundary(k + 1);

        let s1 = smith_dense(&outgoing.to_dense(), true);
        let t1 = s1.transforms.expect("requested transforms");
        let rho1 = s1.diagonal.len();
        let m = n - rho1;
        let mut kernel = IntMatrix::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                kernel.set(i, j, t1.v.get(i, rho1 + j).clone());
            }
        }
        // kernel coordinates of the incoming boundaries
        let v_inv_b = t1.v_inv.mul(&incoming.to_dense().to_bigint()).expect("BigInt");
        let mut x = IntMatrix::zeros(m, incoming.cols());
        for i in 0..m {
            for j in 0..incoming.cols() {
                x.set(i, j, v_inv_b.get(rho1 + i, j).clone());
            }
        }
        let s2 = smith_exact(&x);
        let torsion: Vec<&BigInt> = s2.diagonal.iter().filter(|d| !d.is_one()).collect();
        if !torsion.is_empty() {
            return Err(Error::Torsion {
                degree: k,
                factors: torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","),
            });
        }
        let t2 = s2.transforms.expect("requested transforms");
        let rho2 = s2.diagonal.len();
        let mut representatives = Vec::new();
        for j in rho2..m {
            let coeffs = t2.u_inv.column(j);
            let cycle = kernel.apply(&coeffs).expect("BigInt");
            representatives.push(cycle);
        }
        Ok(CycleBasis {
            degree: k,
            representatives,
            chain_rank: n,
            outgoing,
            kernel_inv: t1.v_inv,
            kernel_offset: rho1,
            kernel,
            quotient: t2.u,
            quotient_offset: rho2,
        })
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the homology class of `cycle`.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        if cycle.len() != self.chain_rank {
            return Err(Error::InvalidParameter("chain has the wrong length".into()));
        }
        let all = self.kernel_inv.apply(cycle).expect("BigInt");
        if all[..self.kernel_offset].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidParameter("chain is not a cycle".into()));
        }
        let z: Vec<BigInt> = all[self.kernel_offset..].to_vec();
        debug_assert_eq!(self.kernel.apply(&z).unwrap(), cycle);
        let y = self.quotient.apply(&z).expect("BigInt");
        Ok(y[self.quotient_offset..].to_vec())
    }

    /// Boundary check used by callers that build chains by hand.
    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        (0..self.outgoing.cols()).fold(vec![BigInt::zero(); self.outgoing.rows()], |mut acc, j| {
            for &(i, v) in self.outgoing.column(j) {
                acc[i] += BigInt::from(v) * &chain[j];
            }
            acc
        })
        .iter()
        .all(Zero::is_zero)
    }
}
