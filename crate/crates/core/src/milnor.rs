//! Milnor K-groups of finite fields from an explicit presentation.
//!
//! A unit `u = g^a` is stored as its exponent `a` modulo `q - 1`, so a
//! generator of `(F^×)^{⊗j}` is a `j`-tuple of exponents and every relation
//! is an integer vector over those tuples.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::homology::AbelianGroup;
use crate::snf::SparseMatrix;

/// Refuse presentations with more generators than this.
pub const GENERATOR_BUDGET: u128 = 4096;

/// Which quotient of the tensor power to present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quotient {
    Tensor,
    Exterior,
    Milnor,
}

#[derive(Debug, Clone)]
pub struct MilnorPresentation {
    pub q: usize,
    pub j: usize,
    /// Generator `i` is the exponent tuple `generator_tuple(i)`.
    pub generators: usize,
    /// Columns are relations.
    pub relations: SparseMatrix,
}

impl MilnorPresentation {
    /// Exponent tuple of generator `i`, most significant slot first.
    pub fn generator_tuple(&self, i: usize) -> Vec<usize> {
        decode(i, self.q - 1, self.j)
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::presented(&self.relations)
    }
}

fn decode(mut i: usize, m: usize, j: usize) -> Vec<usize> {
    let mut t = vec![0; j];
    for x in t.iter_mut().rev() {
        *x = i % m;
        i /= m;
    }
    t
}

fn encode(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

/// Presentation of the degree `j` part of the chosen quotient of the tensor
/// algebra on `F_q^×`.
pub fn presentation(field: &FqField, j: usize, kind: Quotient) -> Result<MilnorPresentation> {
    let m = field.q() - 1;
    let generators = (m as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
    if generators > GENERATOR_BUDGET {
        return Err(Error::budget(
            format!("generators of degree {j} tensors over F_{}^×", field.q()),
            generators,
            GENERATOR_BUDGET,
        ));
    }
    let generators = generators as usize;
    let units = field.units();
    // exponent pairs (log u, log(1 - u)) for u outside {0, 1}
    let steinberg: Vec<(usize, usize)> = units
        .elements
        .iter()
        .filter(|&&u| u != 1)
        .map(|&u| {
            let v = field.sub(1, u);
            (units.log(u).expect("unit"), units.log(v).expect("1 - u is a unit"))
        })
        .collect();

    // every relation is attached to the generator it is built around, so
    // the column order does not depend on scheduling
    let columns: Vec<Vec<(usize, i64)>> = (0..generators)
        .into_par_iter()
        .flat_map_iter(|i| {
            let t = decode(i, m, j);
            let mut rels = Vec::new();
            for s in 0..j {
                // slot s is additive in the exponent: [a + b] - [a] - [b]
                for b in 0..m {
                    let mut sum = t.clone();
                    sum[s] = (t[s] + b) % m;
                    let mut other = t.clone();
                    other[s] = b;
                    rels.push(vec![(encode(&sum, m), 1), (i, -1), (encode(&other, m), -1)]);
                }
            }
            for s in 0..j.saturating_sub(1) {
                let adjacent = (t[s], t[s + 1]);
                let relation = match kind {
                    Quotient::Tensor => false,
                    Quotient::Exterior => adjacent.0 == adjacent.1,
                    Quotient::Milnor => steinberg.contains(&adjacent),
                };
                if relation {
                    rels.push(vec![(i, 1)]);
                }
            }
            rels
        })
        .collect();
    Ok(MilnorPresentation {
        q: field.q(),
        j,
        generators,
        relations: SparseMatrix::from_columns(generators, columns),
    })
}

/// `K^M_j(F_q)`.
pub fn milnor_k(field: &FqField, j: usize) -> Result<AbelianGroup> {
    Ok(presentation(field, j, Quotient::Milnor)?.group())
}

/// `Λ^j(F_q^×)`.
pub fn exterior_power(field: &FqField, j: usize) -> Result<AbelianGroup> {
    Ok(presentation(field, j, Quotient::Exterior)?.group())
}

#[derive(Debug, Clone, Serialize)]
pub struct MilnorReport {
    pub q: usize,
    pub j: usize,
    pub tensor: AbelianGroup,
    pub exterior: AbelianGroup,
    pub milnor: AbelianGroup,
    /// The identity on generators induces surjections
    /// `(F^×)^{⊗j} -> Λ^j -> K^M_j`.
    pub surjections: bool,
}

/// Computes all three quotients and checks that the exterior relations
/// already hold in `K^M_j`: adding them to the Milnor presentation must
/// leave the group unchanged. The quotient maps are then well defined, and
/// they are onto because they fix the generators.
pub fn milnor_report(field: &FqField, j: usize) -> Result<MilnorReport> {
    let tensor = presentation(field, j, Quotient::Tensor)?;
    let exterior = presentation(field, j, Quotient::Exterior)?;
    let milnor = presentation(field, j, Quotient::Milnor)?;
    let k = milnor.group();
    let mut both = milnor.relations.clone();
    both.hstack(&exterior.relations);
    let surjections = AbelianGroup::presented(&both) == k;
    Ok(MilnorReport {
        q: field.q(),
        j,
        tensor: tensor.group(),
        exterior: exterior.group(),
        milnor: k,
        surjections,
    })
}
