//! The common basis complex D'(F^r): proper nontrivial subspaces of F_q^r,
//! with a family spanning a simplex iff one basis of F_q^r contains bases
//! of every member. Its reduced homology in degree `2r - 3` is the stable
//! Steinberg module Δ_r.
//!
//! Facets come from frames (bases up to reordering and rescaling): a frame
//! `B` contributes the `2^r - 2` subspaces spanned by its nonempty proper
//! subsets. Simplex membership is cross-checked against an independent
//! sweep over GL_r(F_q).

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::field::{Elem, FqField};
use crate::homology::{homology, HomologyResult};
use crate::linalg::{enumerate_gl, gl_order, projective_points, proper_subspaces, span, SubspaceFq};

/// Refuse above this many generated facets.
pub const FACET_BUDGET: u128 = 5_000_000;

/// Largest rank built without the stretch flag.
pub const STANDARD_MAX_RANK: usize = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CbcOptions {
    /// Allow stretch targets beyond [`STANDARD_MAX_RANK`], such as (2, 4).
    pub big: bool,
}

/// `|GL_r(F_q)| / ((q - 1)^r r!)`: bases up to order and scaling.
pub fn frame_count(q: usize, r: usize) -> u128 {
    let symmetries = (q as u128 - 1).pow(r as u32) * (1..=r as u128).product::<u128>();
    gl_order(q as u128, r) / symmetries
}

fn check_budget(field: &FqField, r: usize, opts: CbcOptions) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    if r > STANDARD_MAX_RANK && !opts.big {
        return Err(Error::budget(
            format!("rank of D'(F_{}^{r}) without the stretch flag", field.q()),
            r,
            STANDARD_MAX_RANK,
        ));
    }
    let frames = frame_count(field.q(), r);
    if frames > FACET_BUDGET {
        return Err(Error::budget(format!("facets of D'(F_{}^{r})", field.q()), frames, FACET_BUDGET));
    }
    Ok(())
}

/// All frames of F_q^r as sorted lists of normalized vectors (first
/// nonzero coordinate 1), in lexicographic order.
pub fn frames(field: &FqField, r: usize) -> Vec<Vec<Vec<Elem>>> {
    let points = projective_points(field.q(), r);
    let per_first: Vec<Vec<Vec<usize>>> = (0..points.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut chosen = vec![first];
            let start = span(&[points[first].clone()], field, r).unwrap();
            extend_frames(field, r, &points, &mut chosen, &start, &mut out);
            out
        })
        .collect();
    per_first
        .into_iter()
        .flatten()
        .map(|idx| idx.into_iter().map(|i| points[i].clone()).collect())
        .collect()
}

fn extend_frames(
    field: &FqField,
    r: usize,
    points: &[Vec<Elem>],
    chosen: &mut Vec<usize>,
    current: &SubspaceFq,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == r {
        out.push(chosen.clone());
        return;
    }
    let last = *chosen.last().unwrap();
    for next in last + 1..points.len() {
        if current.contains_vector(&points[next], field) {
            continue;
        }
        let grown = current
            .sum(&span(&[points[next].clone()], field, r).unwrap(), field)
            .unwrap();
        chosen.push(next);
        extend_frames(field, r, points, chosen, &grown, out);
        chosen.pop();
    }
}

/// Frames obtained by sweeping GL_r(F_q): the columns of each matrix,
/// rescaled to lead with 1 and sorted, deduplicated.
pub fn frames_from_gl(field: &FqField, r: usize) -> Result<Vec<Vec<Vec<Elem>>>> {
    let mut seen = BTreeSet::new();
    for g in enumerate_gl(field, r)? {
        let mut cols: Vec<Vec<Elem>> = (0..r)
            .map(|j| {
                let c = g.column(j);
                let lead = *c.iter().find(|&&x| x != 0).expect("invertible matrices have no zero column");
                let inv = field.inv(lead).unwrap();
                c.iter().map(|&x| field.mul(x, inv)).collect()
            })
            .collect();
        cols.sort_unstable();
        seen.insert(cols);
    }
    Ok(seen.into_iter().collect())
}

/// Reference decision procedure for common bases, built on a full
/// GL_r(F_q) sweep.
pub struct CommonBasisOracle<'f> {
    field: &'f FqField,
    r: usize,
    frames: Vec<Vec<Vec<Elem>>>,
}

impl<'f> CommonBasisOracle<'f> {
    pub fn new(field: &'f FqField, r: usize) -> Result<Self> {
        Ok(CommonBasisOracle {
            field,
            r,
            frames: frames_from_gl(field, r)?,
        })
    }

    pub fn frames(&self) -> &[Vec<Vec<Elem>>] {
        &self.frames
    }

    /// True iff some frame contains a basis of every member. For a frame
    /// the candidate basis of `V` is all frame vectors lying in `V`; it
    /// spans `V` exactly when there are `dim V` of them.
    pub fn has_common_basis(&self, vs: &[SubspaceFq]) -> Result<bool> {
        for v in vs {
            if v.ambient() != self.r {
                return Err(Error::AmbientMismatch(format!("subspace of F^{} in F^{}", v.ambient(), self.r)));
            }
            if !v.is_proper_nontrivial() {
                return Err(Error::InvalidParameter(format!("{v:?} is zero or the whole space")));
            }
        }
        Ok(self.frames.iter().any(|frame| {
            vs.iter()
                .all(|v| frame.iter().filter(|b| v.contains_vector(b, self.field)).count() == v.dim())
        }))
    }
}

pub fn has_common_basis(vs: &[SubspaceFq], field: &FqField, r: usize) -> Result<bool> {
    CommonBasisOracle::new(field, r)?.has_common_basis(vs)
}

#[derive(Debug, Clone)]
pub struct CommonBasisComplex {
    pub q: usize,
    pub r: usize,
    /// Proper nontrivial subspaces by dimension, then RREF.
    pub vertices: Vec<SubspaceFq>,
    pub complex: SimplicialComplex,
}

impl CommonBasisComplex {
    pub fn vertex_index(&self) -> HashMap<&SubspaceFq, Vertex> {
        self.vertices.iter().enumerate().map(|(i, v)| (v, i as Vertex)).collect()
    }
}

/// Builds D'(F_q^r) from the frames of F_q^r.
pub fn common_basis_complex(field: &FqField, r: usize, opts: CbcOptions) -> Result<CommonBasisComplex> {
    check_budget(field, r, opts)?;
    let vertices = proper_subspaces(field, r)?;
    let index: HashMap<&SubspaceFq, Vertex> = vertices.iter().enumerate().map(|(i, v)| (v, i as Vertex)).collect();
    let facets: Vec<Simplex> = if r == 1 {
        Vec::new()
    } else {
        frames(field, r)
            .par_iter()
            .map(|frame| {
                (1u32..(1 << r) - 1)
                    .map(|mask| {
                        let members: Vec<Vec<Elem>> =
                            (0..r).filter(|&i| mask >> i & 1 == 1).map(|i| frame[i].clone()).collect();
                        index[&span(&members, field, r).unwrap()]
                    })
                    .collect()
            })
            .collect()
    };
    let complex = SimplicialComplex::from_facets(vertices.len(), facets)?;
    Ok(CommonBasisComplex {
        q: field.q(),
        r,
        vertices,
        complex,
    })
}

#[derive(Debug, Clone)]
pub struct CommonBasisComplexReport {
    pub q: usize,
    pub r: usize,
    pub cbc: CommonBasisComplex,
    pub homology: HomologyResult,
    /// Rank of reduced homology in degree `2r - 3`.
    pub delta_rank: usize,
    pub delta_torsion: Vec<BigInt>,
    /// Reduced homology vanishes outside degree `2r - 3`.
    pub concentrated: bool,
}

impl CommonBasisComplexReport {
    pub fn delta_degree(&self) -> i64 {
        2 * self.r as i64 - 3
    }
}

/// Δ_r(F_q) as reduced homology of D'(F_q^r) in degree `2r - 3`.
pub fn delta(field: &FqField, r: usize, opts: CbcOptions) -> Result<CommonBasisComplexReport> {
    let cbc = common_basis_complex(field, r, opts)?;
    let h = homology(&cbc.complex, true);
    let top = 2 * r as i64 - 3;
    Ok(CommonBasisComplexReport {
        q: field.q(),
        r,
        delta_rank: h.betti(top),
        delta_torsion: h.torsion(top).to_vec(),
        concentrated: h.is_concentrated_in(top),
        homology: h,
        cbc,
    })
}

#[derive(Debug, Clone)]
pub struct ConnectivityReport {
    pub q: usize,
    pub r: usize,
    pub concentrated: bool,
    pub degrees_with_homology: Vec<i64>,
    pub homology: HomologyResult,
}

pub fn verify_connectivity(field: &FqField, r: usize, opts: CbcOptions) -> Result<ConnectivityReport> {
    let report = delta(field, r, opts)?;
    Ok(ConnectivityReport {
        q: report.q,
        r,
        concentrated: report.concentrated,
        degrees_with_homology: report.homology.nonzero_degrees(),
        homology: report.homology,
    })
}
