//! Cyclic group homology, the GL action on Δ_r, coinvariants and Milnor K
//! against independently built chain complexes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use stablerank::field::FqField;
use stablerank::homology::{AbelianGroup, IntegerChainComplex};
use stablerank::linalg::MatrixFq;
use stablerank::milnor::{exterior_power, milnor_k, milnor_report};
use stablerank::rankss::{coinvariants_delta, cyclic_group_homology, gl_action_on_delta, gl_generators};
use stablerank::snf::{IntMatrix, SparseMatrix};
use stablerank_oracles::{complete_graph_h1_coinvariants, cyclic_bar_complex, cyclic_group_homology_bar, gl2_line_permutations};

fn f(q: usize) -> FqField {
    FqField::of_order(q).unwrap()
}

fn group(betti: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup {
        betti,
        torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
    }
}

#[test]
fn cyclic_homology_matches_bar_resolution() {
    for m in 1..=6u64 {
        // the oracle's bar complex, reduced by the library's sparse engine
        let bar = cyclic_bar_complex(m, 5);
        let boundaries = bar.into_iter().map(|(rows, cols)| SparseMatrix::from_columns(rows, cols)).collect();
        let chains = IntegerChainComplex::new(0, boundaries).unwrap();
        assert!(chains.boundary_squared_is_zero());
        let h = chains.homology();
        for t in 0..=4 {
            let periodic = cyclic_group_homology(m, t).unwrap();
            assert_eq!(h.group(t as i64), periodic, "H_{t}(Z/{m})");
            // fully dense oracle where it is cheap
            if m.pow(t as u32 + 1) <= 300 {
                let (betti, torsion) = cyclic_group_homology_bar(m, t as u32);
                assert_eq!(periodic, group(betti, &torsion), "dense H_{t}(Z/{m})");
            }
        }
    }
}

#[test]
fn coinvariants_match_complete_graph_oracle() {
    for p in [2usize, 3, 5] {
        let c = coinvariants_delta(&f(p), 2).unwrap();
        let (betti, torsion) = complete_graph_h1_coinvariants(p + 1, &gl2_line_permutations(p as u64));
        assert_eq!(c.coinvariants, group(betti, &torsion), "coinvariants of Δ_2(F_{p})");
    }
    assert_eq!(coinvariants_delta(&f(2), 2).unwrap().coinvariants, group(0, &[2]));
}

#[test]
fn coinvariants_are_torsion() {
    for (q, r) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3)] {
        let c = coinvariants_delta(&f(q), r).unwrap();
        assert!(c.torsion_flag && c.coinvariants.is_finite(), "Δ_{r}(F_{q}) coinvariants");
    }
    let trivial = coinvariants_delta(&f(4), 1).unwrap();
    assert_eq!(trivial.coinvariants, AbelianGroup::free(1));
}

fn to_i64(m: &IntMatrix<BigInt>) -> IntMatrix<i64> {
    m.map(|x| x.to_i64().unwrap())
}

fn inverse(g: &MatrixFq, field: &FqField) -> MatrixFq {
    let mut power = g.clone();
    loop {
        let next = power.mul(g, field).unwrap();
        if next == MatrixFq::identity(g.rows()) {
            return power;
        }
        power = next;
    }
}

#[test]
fn action_matrices_form_a_representation() {
    for (q, r) in [(3, 2), (4, 2), (2, 3)] {
        let field = f(q);
        let action = gl_action_on_delta(&field, r).unwrap();
        let n = action.rank();
        let gens = gl_generators(&field, r);
        let mats: Vec<IntMatrix<i64>> = gens.iter().map(|(_, g)| to_i64(&action.action_matrix(g).unwrap())).collect();
        for ((_, g), m) in gens.iter().zip(&mats) {
            // invertible over Z: the matrix of g^-1 is a two-sided inverse
            let inv = to_i64(&action.action_matrix(&inverse(g, &field)).unwrap());
            assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(n));
            assert_eq!(inv.mul(m).unwrap(), IntMatrix::identity(n));
        }
        for (a, (_, g)) in gens.iter().enumerate() {
            for (b, (_, h)) in gens.iter().enumerate() {
                let gh = g.mul(h, &field).unwrap();
                let lhs = to_i64(&action.action_matrix(&gh).unwrap());
                assert_eq!(lhs, mats[a].mul(&mats[b]).unwrap(), "M(gh) = M(g) M(h)");
            }
        }
        let id = to_i64(&action.action_matrix(&MatrixFq::identity(r)).unwrap());
        assert_eq!(id, IntMatrix::identity(n));
    }
}

#[test]
fn milnor_k_of_finite_fields() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let field = f(q);
        assert_eq!(milnor_k(&field, 1).unwrap(), AbelianGroup::cyclic(q as u64 - 1));
        assert!(milnor_k(&field, 2).unwrap().is_zero(), "K_2(F_{q})");
        assert!(exterior_power(&field, 2).unwrap().is_zero(), "Λ^2 F_{q}^x");
        for j in 1..=3 {
            if (q - 1).pow(j as u32) <= 512 {
                let rep = milnor_report(&field, j).unwrap();
                assert!(rep.surjections, "tensor -> Λ -> K in degree {j} over F_{q}");
                assert_eq!(rep.milnor.betti, 0);
            }
        }
    }
}
