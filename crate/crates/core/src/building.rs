//! The Tits building of F_q^r and its top homology, the Steinberg module.

use crate::complex::{order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::homology::{homology, HomologyResult};
use crate::linalg::{gaussian_binomial, proper_subspaces, SubspaceFq};

/// Refuse buildings with more simplices than this in any one degree.
pub const SIMPLEX_BUDGET: u128 = 200_000;

#[derive(Debug, Clone)]
pub struct TitsBuilding {
    pub q: usize,
    pub r: usize,
    /// Vertex `i` is `vertices[i]`: proper nontrivial subspaces ordered by
    /// dimension, then RREF.
    pub vertices: Vec<SubspaceFq>,
    pub complex: SimplicialComplex,
}

/// Number of `k`-simplices of the building for each `k`: chains of `k + 1`
/// proper nontrivial subspaces, counted by q-multinomial coefficients.
pub fn flag_simplex_counts(q: usize, r: usize) -> Vec<u128> {
    let q = q as u128;
    let inner = r.saturating_sub(1);
    let mut counts = vec![0u128; inner];
    // subsets of {1, .., r-1} as dimension sequences
    for mask in 1u64..(1u64 << inner) {
        let dims: Vec<usize> = (0..inner).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let mut prev = r;
        let mut n = 1u128;
        for &d in dims.iter().rev() {
            n *= gaussian_binomial(prev, d, q);
            prev = d;
        }
        counts[dims.len() - 1] += n;
    }
    counts
}

/// The order complex of proper nontrivial subspaces of F_q^r under
/// inclusion. `r = 1` gives the empty complex.
pub fn tits_building(field: &FqField, r: usize) -> Result<TitsBuilding> {
    if r == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    let counts = flag_simplex_counts(field.q(), r);
    if let Some((k, &n)) = counts.iter().enumerate().find(|(_, &n)| n > SIMPLEX_BUDGET) {
        return Err(Error::budget(format!("{k}-simplices of B(F_{}^{r})", field.q()), n, SIMPLEX_BUDGET));
    }
    let vertices = proper_subspaces(field, r)?;
    let complex = order_complex(vertices.len(), |i, j| {
        vertices[i].dim() < vertices[j].dim() && vertices[j].contains(&vertices[i], field)
    })?;
    Ok(TitsBuilding {
        q: field.q(),
        r,
        vertices,
        complex,
    })
}

#[derive(Debug, Clone)]
pub struct BuildingReport {
    pub q: usize,
    pub r: usize,
    pub building: TitsBuilding,
    pub homology: HomologyResult,
    /// Rank of reduced homology in degree `r - 2`.
    pub steinberg_rank: usize,
    /// Reduced homology vanishes outside degree `r - 2`.
    pub concentrated: bool,
    /// No torsion in degree `r - 2`.
    pub free: bool,
}

pub fn solomon_tits_report(field: &FqField, r: usize) -> Result<BuildingReport> {
    let building = tits_building(field, r)?;
    let h = homology(&building.complex, true);
    let top = r as i64 - 2;
    Ok(BuildingReport {
        q: field.q(),
        r,
        steinberg_rank: h.betti(top),
        concentrated: h.is_concentrated_in(top),
        free: h.torsion(top).is_empty(),
        homology: h,
        building,
    })
}
