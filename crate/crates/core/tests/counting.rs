//! Field arithmetic, subspace and GL counts against brute-force oracles.

use proptest::prelude::*;
use stablerank::field::FqField;
use stablerank::linalg::{enumerate_gl, enumerate_subspaces, gaussian_binomial, gl_order, SubspaceFq};
use stablerank_oracles::{gl_order_brute, least_primitive_root, poly_mul_mod, subspace_count};

const ORDERS: [usize; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn digits(x: usize, p: usize, k: usize) -> Vec<u64> {
    (0..k).map(|i| (x / p.pow(i as u32) % p) as u64).collect()
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for q in ORDERS {
        let f = FqField::of_order(q).unwrap();
        let (p, k) = (f.p(), f.k());
        let modulus: Vec<u64> = f.reduction_poly().iter().map(|&c| c as u64).collect();
        for a in 0..q {
            for b in 0..q {
                let want = poly_mul_mod(&digits(a, p, k), &digits(b, p, k), &modulus, p as u64);
                let got = f.mul(a as u8, b as u8) as usize;
                let want: usize = want.iter().enumerate().map(|(i, &c)| c as usize * p.pow(i as u32)).sum();
                assert_eq!(got, want, "F_{q}: {a} * {b}");
                let sum: usize = digits(a, p, k)
                    .iter()
                    .zip(digits(b, p, k))
                    .enumerate()
                    .map(|(i, (&x, y))| ((x + y) % p as u64) as usize * p.pow(i as u32))
                    .sum();
                assert_eq!(f.add(a as u8, b as u8) as usize, sum, "F_{q}: {a} + {b}");
            }
        }
    }
}

#[test]
fn prime_field_generators_are_least_primitive_roots() {
    for p in [2, 3, 5, 7, 11, 13] {
        let f = FqField::new(p, 1).unwrap();
        assert_eq!(f.generator() as u64, least_primitive_root(p as u64));
    }
}

#[test]
fn subspace_counts_match_oracle() {
    for q in [2, 3, 4, 5] {
        let f = FqField::of_order(q).unwrap();
        for r in 0..=4 {
            for d in 0..=r {
                let n = enumerate_subspaces(&f, r, d).unwrap().len() as u128;
                assert_eq!(n, gaussian_binomial(r, d, q as u128), "[{r} {d}]_{q}");
                assert_eq!(n, subspace_count(q as u128, r as u32, d as u32), "oracle [{r} {d}]_{q}");
            }
        }
    }
}

#[test]
fn gl_counts_match_product_formula_and_brute_force() {
    for (q, r) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let f = FqField::of_order(q).unwrap();
        let n = enumerate_gl(&f, r).unwrap().count() as u128;
        assert_eq!(n, gl_order(q as u128, r), "|GL_{r}(F_{q})|");
        if q.pow((r * r) as u32) <= 1 << 16 {
            assert_eq!(n as u64, gl_order_brute(q as u64, r));
        }
    }
}

fn subspaces(q: usize, r: usize) -> Vec<SubspaceFq> {
    let f = FqField::of_order(q).unwrap();
    (0..=r).flat_map(|d| enumerate_subspaces(&f, r, d).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn modular_law(q in prop::sample::select(vec![2usize, 3]), ia in 0usize..1000, ib in 0usize..1000, ic in 0usize..1000) {
        let r = if q == 2 { 4 } else { 3 };
        let f = FqField::of_order(q).unwrap();
        let all = subspaces(q, r);
        let (a0, b, c0) = (&all[ia % all.len()], &all[ib % all.len()], &all[ic % all.len()]);
        // force a ⊆ c by taking a ∩ c
        let a = a0.intersect(c0, &f).unwrap();
        let c = c0;
        let lhs = a.sum(&b.intersect(c, &f).unwrap(), &f).unwrap();
        let rhs = a.sum(b, &f).unwrap().intersect(c, &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_formula(q in prop::sample::select(vec![2usize, 3, 4]), ia in 0usize..1000, ib in 0usize..1000) {
        let f = FqField::of_order(q).unwrap();
        let all = subspaces(q, 3);
        let (a, b) = (&all[ia % all.len()], &all[ib % all.len()]);
        let s = a.sum(b, &f).unwrap();
        let i = a.intersect(b, &f).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        prop_assert!(s.contains(a, &f) && s.contains(b, &f));
        prop_assert!(a.contains(&i, &f) && b.contains(&i, &f));
    }
}
