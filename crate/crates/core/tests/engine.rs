//! Smith normal form and homology against independent dense oracles.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stablerank::homology::IntegerChainComplex;
use stablerank::snf::{is_divisibility_chain, smith_dense, smith_invariants, IntMatrix, SparseMatrix};
use stablerank::{homology, SimplicialComplex};
use stablerank_oracles::{dense_invariant_factors, simplicial_homology};

fn random_sparse(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 })
                .collect()
        })
        .collect()
}

fn check_smith(rows: &[Vec<i64>]) {
    let (n, m) = (rows.len(), rows[0].len());
    let a = IntMatrix::from_rows(rows.to_vec(), m);
    let s = smith_dense(&a, true);
    let t = s.transforms.as_ref().unwrap();
    let big = a.to_bigint();
    assert_eq!(t.u.mul(&big).unwrap().mul(&t.v).unwrap(), s.d_matrix(), "U A V = D");
    assert_eq!(t.u.mul(&t.u_inv).unwrap(), IntMatrix::<BigInt>::identity(n));
    assert_eq!(t.v.mul(&t.v_inv).unwrap(), IntMatrix::<BigInt>::identity(m));
    assert!(is_divisibility_chain(&s.diagonal));
    assert!(s.diagonal.iter().all(|d| d > &BigInt::zero()));

    let oracle = dense_invariant_factors(rows);
    assert_eq!(s.diagonal, oracle);
    let sparse = smith_invariants(&SparseMatrix::from_dense(&a));
    assert_eq!(sparse.factors(), oracle, "sparse elimination agrees");
}

#[test]
fn smith_on_thousand_random_sparse_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let density = [0.05, 0.1, 0.2, 0.4][i % 4];
        check_smith(&random_sparse(&mut rng, 30, 30, density));
    }
}

#[test]
fn smith_on_rectangular_and_degenerate_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (r, c) in [(1, 1), (1, 12), (12, 1), (5, 17), (17, 5)] {
        for _ in 0..20 {
            check_smith(&random_sparse(&mut rng, r, c, 0.5));
        }
    }
    check_smith(&[vec![0, 0], vec![0, 0]]);
    check_smith(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
}

#[test]
fn sparse_smith_survives_i64_overflow() {
    // powers of a large number along a bidiagonal force growth past i64
    let n = 6;
    let big = 1_000_000_007i64;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[i][i] = big;
        if i + 1 < n {
            rows[i][i + 1] = big - 1;
        }
    }
    let sparse = smith_invariants(&SparseMatrix::from_dense(&IntMatrix::from_rows(rows.clone(), n)));
    assert_eq!(sparse.factors(), dense_invariant_factors(&rows));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_matches_oracle(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 8), 1..9)) {
        check_smith(&rows);
    }
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<u32>> {
    let facets = rng.gen_range(1..=8);
    (0..facets)
        .map(|_| {
            let size = rng.gen_range(1..=5.min(n));
            let mut f: Vec<u32> = Vec::new();
            while f.len() < size {
                let v = rng.gen_range(0..n as u32);
                if !f.contains(&v) {
                    f.push(v);
                }
            }
            f
        })
        .collect()
}

fn compare_with_oracle(n: usize, facets: &[Vec<u32>]) {
    let c = SimplicialComplex::from_facets(n, facets.iter().cloned()).unwrap();
    for reduced in [false, true] {
        let h = homology(&c, reduced);
        let oracle = simplicial_homology(facets, reduced);
        for (&k, (betti, torsion)) in &oracle {
            assert_eq!(h.betti(k), *betti, "betti {k} of {facets:?}");
            let t: Vec<BigInt> = torsion.iter().map(|&x| BigInt::from(x)).collect();
            assert_eq!(h.torsion(k), t.as_slice(), "torsion {k} of {facets:?}");
        }
        for k in h.nonzero_degrees() {
            assert!(oracle.contains_key(&k), "extra degree {k} for {facets:?}");
        }
        assert!(IntegerChainComplex::from_complex(&c, reduced).boundary_squared_is_zero());
    }
}

#[test]
fn homology_matches_dense_oracle_on_small_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..300 {
        let n = 1 + trial % 12;
        let facets = random_complex(&mut rng, n);
        compare_with_oracle(n, &facets);
    }
}

#[test]
fn homology_of_classic_spaces() {
    // six-vertex real projective plane
    let rp2: Vec<Vec<u32>> = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ]
    .iter()
    .map(|f| f.to_vec())
    .collect();
    compare_with_oracle(6, &rp2);
    let c = SimplicialComplex::from_facets(6, rp2).unwrap();
    assert_eq!(homology(&c, false).torsion(1), &[BigInt::from(2)]);

    // seven-vertex torus
    let torus: Vec<Vec<u32>> = (0..7u32)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    compare_with_oracle(7, &torus);
    let t = homology(&SimplicialComplex::from_facets(7, torus).unwrap(), false);
    assert_eq!((t.betti(0), t.betti(1), t.betti(2)), (1, 2, 1));
}

#[test]
fn detects_nonzero_square() {
    let d0 = SparseMatrix::new(0, 1);
    let d1 = SparseMatrix::from_columns(1, vec![vec![(0, 1)]]);
    let d2 = SparseMatrix::from_columns(1, vec![vec![(0, 1)]]);
    let c = IntegerChainComplex::new(0, vec![d0, d1, d2]).unwrap();
    assert!(!c.boundary_squared_is_zero());
    let shape = IntegerChainComplex::new(0, vec![SparseMatrix::new(0, 2), SparseMatrix::new(3, 1)]);
    assert!(shape.is_err());
}
