//! The computable corner of the rank spectral sequence: the cyclic group
//! homology column, the GL_r(F_q) action on Δ_r and its coinvariants, and
//! the rank complex table with explicit unknown entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cbc::{common_basis_complex, verify_connectivity, CbcOptions, CommonBasisComplex};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::homology::{AbelianGroup, CycleBasis, IntegerChainComplex};
use crate::linalg::{act_unchecked, MatrixFq};
use crate::snf::{IntMatrix, SparseMatrix};

/// Refuse the GL action when a chain group next to Δ_r is larger than
/// this; the cycle basis is computed with dense transforms.
pub const ACTION_BUDGET: usize = 1500;

/// Largest `w` accepted by [`rank_complex_table`].
pub const MAX_WEIGHT: usize = 4;

/// `H_t(Z/m; Z)` from the periodic resolution, whose coinvariants are
/// `Z <-0- Z <-m- Z <-0- Z <-m- ...`.
pub fn cyclic_group_homology(m: u64, t: usize) -> Result<AbelianGroup> {
    if m == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be at least 1".into()));
    }
    let m = i64::try_from(m).map_err(|_| Error::InvalidParameter("cyclic group order too large".into()))?;
    let boundaries = (0..=t + 1)
        .map(|k| match k {
            0 => SparseMatrix::new(0, 1),
            k if k % 2 == 0 => SparseMatrix::from_columns(1, vec![vec![(0, m)]]),
            _ => SparseMatrix::new(1, 1),
        })
        .collect();
    let complex = IntegerChainComplex::new(0, boundaries)?;
    Ok(complex.homology().group(t as i64))
}

/// Generating set of GL_r(F_q): the transvections `E_ij(1)` for `i != j`
/// in lexicographic order, then `diag(g, 1, .., 1)` for the fixed unit
/// generator `g`.
pub fn gl_generators(field: &FqField, r: usize) -> Vec<(String, MatrixFq)> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let mut e = MatrixFq::identity(r);
                e.set(i, j, 1);
                out.push((format!("E_{},{}(1)", i + 1, j + 1), e));
            }
        }
    }
    let mut d = MatrixFq::identity(r);
    if r > 0 {
        d.set(0, 0, field.generator());
    }
    out.push(("diag(g)".to_string(), d));
    out
}

/// GL_r(F_q) acting on Δ_r through the simplicial action on D'(F_q^r).
#[derive(Debug, Clone)]
pub struct DeltaAction {
    field: FqField,
    pub r: usize,
    pub cbc: CommonBasisComplex,
    pub basis: CycleBasis,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

pub fn gl_action_on_delta(field: &FqField, r: usize) -> Result<DeltaAction> {
    let cbc = common_basis_complex(field, r, CbcOptions::default())?;
    let k = 2 * r as i64 - 3;
    let counts = cbc.complex.simplex_counts();
    let size = |d: i64| if d < 0 { 1 } else { counts.get(d as usize).copied().unwrap_or(0) };
    let largest = (k - 1..=k + 1).map(size).max().unwrap_or(0);
    if largest > ACTION_BUDGET {
        return Err(Error::budget(
            format!("chain rank near Δ_{r}(F_{}) for the GL action", field.q()),
            largest,
            ACTION_BUDGET,
        ));
    }
    let chains = IntegerChainComplex::from_complex(&cbc.complex, true);
    let basis = CycleBasis::new(&chains, k)?;
    // degree -1 holds the empty simplex alone
    let simplices = if k < 0 { vec![Vec::new()] } else { cbc.complex.simplices(k as usize) };
    let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(DeltaAction {
        field: field.clone(),
        r,
        cbc,
        basis,
        simplices,
        index,
    })
}

impl DeltaAction {
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Matrix of `g` on the cycle basis: column `j` holds the coordinates
    /// of `g` applied to basis cycle `j`.
    pub fn action_matrix(&self, g: &MatrixFq) -> Result<IntMatrix<BigInt>> {
        if g.rows() != self.r || g.cols() != self.r {
            return Err(Error::AmbientMismatch(format!("{}x{} matrix on F^{}", g.rows(), g.cols(), self.r)));
        }
        if !g.is_invertible(&self.field) {
            return Err(Error::InvalidParameter("acting matrix is not invertible".into()));
        }
        let vertex_index = self.cbc.vertex_index();
        let perm: Vec<u32> = self
            .cbc
            .vertices
            .iter()
            .map(|v| vertex_index[&act_unchecked(g, v, &self.field)])
            .collect();
        // image of each oriented simplex: target index and orientation sign
        let image: Vec<(usize, bool)> = self
            .simplices
            .iter()
            .map(|s| {
                let mapped: Vec<u32> = s.iter().map(|&v| perm[v as usize]).collect();
                let inversions = (0..mapped.len())
                    .flat_map(|a| (a + 1..mapped.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| mapped[a] > mapped[b])
                    .count();
                let mut sorted = mapped;
                sorted.sort_unstable();
                (self.index[&sorted], inversions % 2 == 1)
            })
            .collect();
        let n = self.rank();
        let mut m = IntMatrix::zeros(n, n);
        for (j, z) in self.basis.representatives.iter().enumerate() {
            let mut gz = vec![BigInt::zero(); z.len()];
            for (i, c) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (target, negate) = image[i];
                if negate {
                    gz[target] -= c;
                } else {
                    gz[target] += c;
                }
            }
            for (i, x) in self.basis.coordinates(&gz)?.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Action matrices of [`gl_generators`], in the same order.
    pub fn generator_matrices(&self) -> Result<Vec<(String, IntMatrix<BigInt>)>> {
        gl_generators(&self.field, self.r)
            .into_iter()
            .map(|(name, g)| Ok((name, self.action_matrix(&g)?)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoinvariantsResult {
    pub q: usize,
    pub r: usize,
    pub delta_rank: usize,
    pub coinvariants: AbelianGroup,
    /// The coinvariants are a torsion group.
    pub torsion_flag: bool,
}

/// `(Δ_r)_{GL_r}`: the cokernel of the stacked `g - 1` over the generators.
pub fn coinvariants_delta(field: &FqField, r: usize) -> Result<CoinvariantsResult> {
    let action = gl_action_on_delta(field, r)?;
    let n = action.rank();
    let mut columns = Vec::new();
    for (_, m) in action.generator_matrices()? {
        for j in 0..n {
            let col: Vec<(usize, i64)> = (0..n)
                .filter_map(|i| {
                    let mut x = m.get(i, j).clone();
                    if i == j {
                        x -= BigInt::one();
                    }
                    (!x.is_zero()).then(|| (i, x.to_i64().expect("action entries fit in i64")))
                })
                .collect();
            columns.push(col);
        }
    }
    let coinvariants = AbelianGroup::presented(&SparseMatrix::from_columns(n, columns));
    Ok(CoinvariantsResult {
        q: field.q(),
        r,
        delta_rank: n,
        torsion_flag: coinvariants.betti == 0,
        coinvariants,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChartValue {
    Known { group: AbelianGroup },
    ZeroByConnectivity,
    NotComputed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankChartEntry {
    pub s: i64,
    pub t: i64,
    #[serde(flatten)]
    pub value: ChartValue,
    pub provenance: String,
}

fn entry(s: i64, t: i64, value: ChartValue, provenance: impl Into<String>) -> RankChartEntry {
    RankChartEntry {
        s,
        t,
        value,
        provenance: provenance.into(),
    }
}

fn unit_column(field: &FqField, s: usize, t: usize) -> Result<RankChartEntry> {
    let group = cyclic_group_homology(field.q() as u64 - 1, t)?;
    Ok(entry(
        s as i64,
        t as i64,
        ChartValue::Known { group },
        format!("H_{t} of the cyclic group F_{}^x", field.q()),
    ))
}

fn coinvariant_cell(field: &FqField, s: usize, t: usize) -> Result<RankChartEntry> {
    let r = s + 1;
    let (s, t) = (s as i64, t as i64);
    Ok(match coinvariants_delta(field, r) {
        Ok(c) => entry(
            s,
            t,
            ChartValue::Known { group: c.coinvariants },
            format!("coinvariants of Δ_{r}(F_{}) under GL_{r}", field.q()),
        ),
        Err(e) if e.is_budget() || matches!(e, Error::Torsion { .. }) => entry(
            s,
            t,
            ChartValue::NotComputed { reason: e.to_string() },
            format!("coinvariants of Δ_{r}(F_{}) under GL_{r}", field.q()),
        ),
        Err(e) => return Err(e),
    })
}

/// `E^1_{s,t}` for `s <= s_max`, `t <= t_max`, row-major in `s`.
pub fn rank_chart(field: &FqField, s_max: usize, t_max: usize) -> Result<Vec<RankChartEntry>> {
    let cells: Vec<(usize, usize)> = (0..=s_max).flat_map(|s| (0..=t_max).map(move |t| (s, t))).collect();
    // connectivity per rank, computed once
    let connected: Vec<Option<bool>> = (0..=s_max)
        .into_par_iter()
        .map(|s| match verify_connectivity(field, s + 1, CbcOptions::default()) {
            Ok(rep) => Ok(Some(rep.concentrated)),
            Err(e) if e.is_budget() => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    cells
        .into_par_iter()
        .map(|(s, t)| {
            if s == 0 {
                unit_column(field, s, t)
            } else if t < s {
                let provenance = format!("D'(F_{}^{}) concentrated in degree {}", field.q(), s + 1, 2 * s - 1);
                let (si, ti) = (s as i64, t as i64);
                Ok(match connected[s] {
                    Some(true) => entry(si, ti, ChartValue::ZeroByConnectivity, provenance),
                    _ => entry(
                        si,
                        ti,
                        ChartValue::NotComputed {
                            reason: "connectivity not verified at this rank".into(),
                        },
                        provenance,
                    ),
                })
            } else if t == s {
                coinvariant_cell(field, s, t)
            } else {
                Ok(entry(
                    s as i64,
                    t as i64,
                    ChartValue::NotComputed {
                        reason: format!("higher group homology H_{} of GL_{} with coefficients in Δ", t - s, s + 1),
                    },
                    "out of scope",
                ))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankComplexCell {
    pub w: usize,
    pub i: usize,
    #[serde(flatten)]
    pub entry: RankChartEntry,
}

/// `Γ_rk(w, F)^i = E^1_{w-i, w}` for `0 <= w <= w_max` and
/// `0 <= i <= w_max`.
pub fn rank_complex_table(field: &FqField, w_max: usize) -> Result<Vec<RankComplexCell>> {
    if w_max > MAX_WEIGHT {
        return Err(Error::InvalidParameter(format!("weight {w_max} above {MAX_WEIGHT}")));
    }
    let cells: Vec<(usize, usize)> = (0..=w_max).flat_map(|w| (0..=w_max).map(move |i| (w, i))).collect();
    cells
        .into_par_iter()
        .map(|(w, i)| {
            let entry = if i > w {
                entry(
                    w as i64 - i as i64,
                    w as i64,
                    ChartValue::Known { group: AbelianGroup::zero() },
                    "vanishes for i > w",
                )
            } else if i == w {
                unit_column(field, 0, w)?
            } else if i == 0 {
                coinvariant_cell(field, w, w)?
            } else {
                entry(
                    (w - i) as i64,
                    w as i64,
                    ChartValue::NotComputed {
                        reason: format!("higher group homology H_{i} of GL_{} with coefficients in Δ", w - i + 1),
                    },
                    "out of scope",
                )
            };
            Ok(RankComplexCell { w, i, entry })
        })
        .collect()
}
