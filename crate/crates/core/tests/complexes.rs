//! Tits buildings and common basis complexes: ranks against closed forms,
//! GL-invariance, and facet membership against the GL sweep.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablerank::building::{solomon_tits_report, tits_building};
use stablerank::cbc::{common_basis_complex, delta, frames, frames_from_gl, CbcOptions, CommonBasisOracle};
use stablerank::homology::{euler_characteristic, IntegerChainComplex};
use stablerank::linalg::{act, MatrixFq, SubspaceFq};
use stablerank::{FqField, SimplicialComplex};
use stablerank_oracles::steinberg_rank;

fn f(q: usize) -> FqField {
    FqField::of_order(q).unwrap()
}

fn random_gl(field: &FqField, r: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    loop {
        let entries = (0..r * r).map(|_| rng.gen_range(0..field.q()) as u8).collect();
        let g = MatrixFq::from_entries(r, r, entries).unwrap();
        if g.is_invertible(field) {
            return g;
        }
    }
}

fn relabel_by(g: &MatrixFq, field: &FqField, vertices: &[SubspaceFq], c: &SimplicialComplex) -> SimplicialComplex {
    let index: HashMap<&SubspaceFq, u32> = vertices.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let perm: Vec<u32> = vertices.iter().map(|v| index[&act(g, v, field).unwrap()]).collect();
    c.relabel(&perm).unwrap()
}

fn assert_consistent(c: &SimplicialComplex) {
    let chains = IntegerChainComplex::from_complex(c, true);
    assert!(chains.boundary_squared_is_zero());
    let h = chains.homology();
    assert_eq!(h.euler_characteristic(), euler_characteristic(c) - 1, "reduced χ");
}

#[test]
fn solomon_tits() {
    for (q, r) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4)] {
        let rep = solomon_tits_report(&f(q), r).unwrap();
        assert!(rep.concentrated && rep.free, "B(F_{q}^{r})");
        assert_eq!(rep.steinberg_rank as u128, steinberg_rank(q as u128, r as u32), "St_{r}(F_{q})");
        assert_consistent(&rep.building.complex);
    }
}

#[test]
fn buildings_are_gl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (q, r) in [(2, 3), (3, 3), (2, 4)] {
        let field = f(q);
        let b = tits_building(&field, r).unwrap();
        for _ in 0..5 {
            let g = random_gl(&field, r, &mut rng);
            assert_eq!(relabel_by(&g, &field, &b.vertices, &b.complex), b.complex);
        }
    }
}

#[test]
fn common_basis_complexes_are_gl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (q, r) in [(3, 2), (4, 2), (2, 3), (3, 3)] {
        let field = f(q);
        let c = common_basis_complex(&field, r, CbcOptions::default()).unwrap();
        for _ in 0..5 {
            let g = random_gl(&field, r, &mut rng);
            assert_eq!(relabel_by(&g, &field, &c.vertices, &c.complex), c.complex);
        }
    }
}

#[test]
fn frames_agree_with_gl_sweep() {
    for (q, r) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)] {
        let field = f(q);
        let direct: BTreeSet<_> = frames(&field, r).into_iter().collect();
        let swept: BTreeSet<_> = frames_from_gl(&field, r).unwrap().into_iter().collect();
        assert_eq!(direct, swept, "frames of F_{q}^{r}");
    }
}

fn subsets_agree(q: usize, r: usize, masks: impl Iterator<Item = u64>) -> usize {
    let field = f(q);
    let c = common_basis_complex(&field, r, CbcOptions::default()).unwrap();
    let oracle = CommonBasisOracle::new(&field, r).unwrap();
    let mut checked = 0;
    for mask in masks {
        let ids: Vec<u32> = (0..c.vertices.len() as u32).filter(|&i| mask >> i & 1 == 1).collect();
        let family: Vec<SubspaceFq> = ids.iter().map(|&i| c.vertices[i as usize].clone()).collect();
        assert_eq!(
            c.complex.contains_simplex(&ids),
            oracle.has_common_basis(&family).unwrap(),
            "family {ids:?} in D'(F_{q}^{r})"
        );
        checked += 1;
    }
    checked
}

#[test]
fn membership_matches_sweep_exhaustively() {
    for (q, r) in [(2, 2), (3, 2)] {
        let n = (q + 1) as u32;
        subsets_agree(q, r, 1..1u64 << n);
    }
    // all 2^14 - 1 nonempty families of proper subspaces of F_2^3
    assert_eq!(subsets_agree(2, 3, 1..1u64 << 14), 16383);
}

#[test]
fn membership_matches_sweep_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // 26 vertices; bias towards small families, which are the interesting ones
    let masks: Vec<u64> = (0..10_000)
        .map(|_| {
            let size = rng.gen_range(1..=6);
            (0..size).fold(0u64, |m, _| m | 1 << rng.gen_range(0..26))
        })
        .collect();
    assert_eq!(subsets_agree(3, 3, masks.into_iter()), 10_000);
}

#[test]
fn one_skeleton_is_complete() {
    for (q, r) in [(2, 2), (3, 2), (4, 2), (5, 2), (7, 2), (2, 3), (3, 3)] {
        let c = common_basis_complex(&f(q), r, CbcOptions::default()).unwrap();
        let n = c.vertices.len();
        let counts = c.complex.simplex_counts();
        assert_eq!(counts[1], n * (n - 1) / 2, "edges of D'(F_{q}^{r})");
    }
}

#[test]
fn delta_two_is_complete_graph_homology() {
    for q in [2, 3, 4, 5, 7] {
        let rep = delta(&f(q), 2, CbcOptions::default()).unwrap();
        // χ of the complete graph on q + 1 lines, read off as H_1 rank
        let euler_oracle = (q + 1) * q / 2 - (q + 1) + 1;
        assert_eq!(rep.delta_rank, euler_oracle);
        assert_eq!(rep.delta_rank, q * (q - 1) / 2);
        assert!(rep.delta_torsion.is_empty() && rep.concentrated);
        assert_consistent(&rep.cbc.complex);
    }
}

#[test]
fn connectivity_in_rank_three() {
    for q in [2, 3] {
        let rep = delta(&f(q), 3, CbcOptions::default()).unwrap();
        assert!(rep.concentrated, "D'(F_{q}^3)");
        assert!(rep.homology.nonzero_degrees().iter().all(|&k| k >= 3 - 2));
        assert_consistent(&rep.cbc.complex);
    }
}

#[test]
fn rank_four_needs_the_stretch_flag() {
    let err = common_basis_complex(&f(2), 4, CbcOptions::default()).unwrap_err();
    assert!(err.is_budget());
}
