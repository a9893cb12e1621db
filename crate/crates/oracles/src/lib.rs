//! Brute-force oracles for the stablerank test suites.
//!
//! Nothing here depends on the library under test: every routine works
//! from plain data (vertex lists, primes, small integers) with its own
//! arithmetic, so agreement with the library is a genuine cross-check.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors (nonzero diagonal, including ones) of a dense integer
/// matrix, by textbook elimination at arbitrary precision: move an entry
/// of least absolute value to the corner, clear its row and column by
/// division with remainder, and repeat until the corner divides the rest.
pub fn dense_invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let f = nearest_quotient(&a[i][t], &p);
                if !f.is_zero() {
                    for j in t..cols {
                        let v = &a[t][j] * &f;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = nearest_quotient(&a[t][j], &p);
                if !f.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &f;
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// `x / p` rounded to the nearest integer, so the remainder is at most
/// `|p| / 2` in absolute value.
fn nearest_quotient(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(p);
    // r carries the sign of p, so stepping q up moves r towards zero
    if (r * BigInt::from(2)).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

/// Degree -> (betti, torsion) for a complex given by facets.
pub type OracleHomology = BTreeMap<i64, (usize, Vec<u64>)>;

/// All nonempty faces of the given facets, grouped by dimension.
pub fn all_faces(facets: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut by_dim: BTreeMap<usize, BTreeSet<Vec<u32>>> = BTreeMap::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        let n = f.len();
        for mask in 1u64..(1u64 << n) {
            let s: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            by_dim.entry(s.len() - 1).or_default().insert(s);
        }
    }
    let top = by_dim.keys().next_back().map_or(0, |&d| d + 1);
    (0..top).map(|d| by_dim.remove(&d).unwrap_or_default().into_iter().collect()).collect()
}

fn dense_boundary(lower: &[Vec<u32>], upper: &[Vec<u32>]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let face: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            let row = lower.iter().position(|x| *x == face).expect("face present");
            m[row][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Homology of a facet-presented complex via dense boundary matrices.
pub fn simplicial_homology(facets: &[Vec<u32>], reduced: bool) -> OracleHomology {
    let faces = all_faces(facets);
    let mut counts: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut mats: Vec<Vec<Vec<i64>>> = Vec::new();
    let offset: i64 = if reduced { -1 } else { 0 };
    if reduced {
        counts.insert(0, 1);
        mats.push(vec![]); // out of degree -1
        mats.push(vec![vec![1i64; faces.first().map_or(0, Vec::len)]]);
    } else {
        mats.push(vec![]);
    }
    for d in 1..faces.len() {
        mats.push(dense_boundary(&faces[d - 1], &faces[d]));
    }
    let factors: Vec<Vec<BigInt>> = mats.iter().map(|m| dense_invariant_factors(m)).collect();
    let mut out = BTreeMap::new();
    for (i, &n) in counts.iter().enumerate() {
        let out_rank = factors[i].len();
        let (in_rank, torsion) = match factors.get(i + 1) {
            Some(f) => (
                f.len(),
                f.iter()
                    .filter(|x| !x.is_one())
                    .map(|x| x.to_string().parse::<u64>().unwrap())
                    .collect(),
            ),
            None => (0, Vec::new()),
        };
        out.insert(i as i64 + offset, (n - out_rank - in_rank, torsion));
    }
    out
}

/// `q^{r(r-1)/2}`, the rank of the Steinberg module of GL_r(F_q).
pub fn steinberg_rank(q: u128, r: u32) -> u128 {
    q.pow(r * (r.saturating_sub(1)) / 2)
}

/// Number of `d`-dimensional subspaces of F_q^r, counted as ordered bases
/// of F_q^r-subspaces divided by ordered bases of F_q^d.
pub fn subspace_count(q: u128, r: u32, d: u32) -> u128 {
    let ordered = |n: u32, k: u32| (0..k).map(|i| q.pow(n) - q.pow(i)).product::<u128>();
    ordered(r, d) / ordered(d, d)
}

fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] % p != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = (1..p).find(|&x| x * a[c][c] % p == 1).unwrap();
        for i in c + 1..n {
            let f = a[i][c] * inv % p;
            for j in c..n {
                a[i][j] = (a[i][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    det
}

/// |GL_r(F_p)| by testing every matrix's determinant mod a prime `p`.
pub fn gl_order_brute(p: u64, r: usize) -> u64 {
    let cells = r * r;
    let total = p.pow(cells as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let m: Vec<Vec<u64>> = (0..r)
                .map(|_| {
                    (0..r)
                        .map(|_| {
                            let v = c % p;
                            c /= p;
                            v
                        })
                        .collect()
                })
                .collect();
            det_mod(&m, p) != 0
        })
        .count() as u64
}

/// Product of two elements of F_{p^k} given as little-endian coefficient
/// vectors, reduced modulo the monic polynomial `modulus`.
pub fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    while prod.len() > k {
        let c = prod.pop().unwrap();
        let shift = prod.len() - k;
        for i in 0..k {
            prod[shift + i] = (prod[shift + i] + (p - c) * modulus[i]) % p;
        }
    }
    prod
}

/// Least primitive root modulo a prime.
pub fn least_primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&g| {
            let mut x = 1;
            let mut seen = BTreeSet::new();
            for _ in 0..p - 1 {
                x = x * g % p;
                seen.insert(x);
            }
            seen.len() as u64 == p - 1
        })
        .unwrap()
}

/// Boundary matrices (as columns of `(row, coeff)`) of the normalized bar
/// complex computing H_*(Z/m; Z), degrees `0..=top`. Chains in degree `n`
/// are tuples of nonidentity elements of Z/m, indexed in base `m - 1`.
pub fn cyclic_bar_complex(m: u64, top: u32) -> Vec<(usize, Vec<Vec<(usize, i64)>>)> {
    let nonid = m - 1;
    let index = |t: &[u64]| t.iter().fold(0usize, |acc, &g| acc * nonid as usize + (g - 1) as usize);
    let mut out = Vec::new();
    for n in 0..=top {
        let count = nonid.pow(n) as usize;
        let lower = if n == 0 { 0 } else { nonid.pow(n - 1) as usize };
        let mut cols = Vec::with_capacity(count);
        for code in 0..count {
            let mut c = code;
            let mut tuple = vec![0u64; n as usize];
            for slot in tuple.iter_mut().rev() {
                *slot = (c % nonid as usize) as u64 + 1;
                c /= nonid as usize;
            }
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            if n > 0 {
                let n = n as usize;
                // d[g1|...|gn] = [g2|...|gn] + sum (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|...|g_{n-1}]
                *col.entry(index(&tuple[1..])).or_default() += 1;
                for i in 0..n - 1 {
                    let prod = (tuple[i] + tuple[i + 1]) % m;
                    if prod != 0 {
                        let mut t = tuple[..i].to_vec();
                        t.push(prod);
                        t.extend_from_slice(&tuple[i + 2..]);
                        *col.entry(index(&t)).or_default() += if (i + 1) % 2 == 0 { 1 } else { -1 };
                    }
                }
                *col.entry(index(&tuple[..n - 1])).or_default() += if n % 2 == 0 { 1 } else { -1 };
            }
            cols.push(col.into_iter().filter(|e| e.1 != 0).collect());
        }
        out.push((lower, cols));
    }
    out
}

fn as_dense(rows: usize, cols: &[Vec<(usize, i64)>]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; cols.len()]; rows];
    for (j, c) in cols.iter().enumerate() {
        for &(i, v) in c {
            m[i][j] += v;
        }
    }
    m
}

/// H_t(Z/m; Z) as (betti, torsion) from the bar complex, densely. Only
/// practical for tiny `m` and `t`.
pub fn cyclic_group_homology_bar(m: u64, t: u32) -> (usize, Vec<u64>) {
    let bar = cyclic_bar_complex(m, t + 1);
    let rank_of = |n: usize| {
        let (rows, cols) = &bar[n];
        if *rows == 0 || cols.is_empty() {
            Vec::new()
        } else {
            dense_invariant_factors(&as_dense(*rows, cols))
        }
    };
    let out = rank_of(t as usize);
    let inc = rank_of(t as usize + 1);
    let n = bar[t as usize].1.len();
    let torsion = inc.iter().filter(|x| !x.is_one()).map(|x| x.to_string().parse().unwrap()).collect();
    (n - out.len() - inc.len(), torsion)
}

/// Lines of F_p^2 (p prime) as normalized representatives.
fn lines_mod_p(p: u64) -> Vec<(u64, u64)> {
    let mut out = vec![(0, 1)];
    out.extend((0..p).map(|b| (1, b)));
    out
}

fn normalize(v: (u64, u64), p: u64) -> (u64, u64) {
    let lead = if v.0 != 0 { v.0 } else { v.1 };
    let inv = (1..p).find(|&x| x * lead % p == 1).unwrap();
    (v.0 * inv % p, v.1 * inv % p)
}

/// Permutations of the lines of F_p^2 induced by every element of
/// GL_2(F_p), p prime.
pub fn gl2_line_permutations(p: u64) -> Vec<Vec<usize>> {
    let lines = lines_mod_p(p);
    let mut perms = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 0 {
                        continue;
                    }
                    let perm: Vec<usize> = lines
                        .iter()
                        .map(|&(x, y)| {
                            let img = normalize(((a * x + b * y) % p, (c * x + d * y) % p), p);
                            lines.iter().position(|&l| l == img).unwrap()
                        })
                        .collect();
                    perms.insert(perm);
                }
            }
        }
    }
    perms.into_iter().collect()
}

/// Coinvariants of H_1 of the complete graph K_n under vertex
/// permutations, as (betti, torsion). H_1 is given the basis of
/// fundamental cycles of the star at vertex 0, whose coordinates are read
/// off the non-tree edges.
pub fn complete_graph_h1_coinvariants(n: usize, perms: &[Vec<usize>]) -> (usize, Vec<u64>) {
    let non_tree: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let b = non_tree.len();
    let mut relations: Vec<Vec<i64>> = Vec::new(); // columns of (g - 1)
    for perm in perms {
        for (col, &(i, j)) in non_tree.iter().enumerate() {
            // fundamental cycle: [0,i] + [i,j] - [0,j]
            let chain = [((0, i), 1i64), ((i, j), 1), ((0, j), -1)];
            let mut image = vec![0i64; b];
            for ((u, v), c) in chain {
                let (pu, pv) = (perm[u], perm[v]);
                let (lo, hi, sign) = if pu < pv { (pu, pv, c) } else { (pv, pu, -c) };
                if lo != 0 {
                    let k = non_tree.iter().position(|&e| e == (lo, hi)).unwrap();
                    image[k] += sign;
                }
            }
            image[col] -= 1;
            relations.push(image);
        }
    }
    // rows = basis elements, columns = relations
    let m: Vec<Vec<i64>> = (0..b).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
    let f = if b == 0 { Vec::new() } else { dense_invariant_factors(&m) };
    let torsion = f.iter().filter(|x| !x.is_one()).map(|x| x.to_string().parse().unwrap()).collect();
    (b - f.len(), torsion)
}
