//! Table-driven arithmetic for the finite fields F_q, q = p^k <= 16.
//!
//! Elements are encoded as integers `0..q`: the polynomial
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` over F_p is stored as
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. In particular `x` is encoded as `p`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 16;

/// A field element. Always `< q` for the field it belongs to.
pub type Elem = u8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FqField {
    p: usize,
    k: usize,
    q: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    /// `inv[0]` is the sentinel `0`.
    inv: Vec<Elem>,
    /// Coefficients `c_0..c_k` (monic, so `c_k = 1`) of the reduction
    /// polynomial; `[0, 1]` (that is, `x`) for prime fields.
    reduction_poly: Vec<usize>,
    generator: Elem,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Polynomials over F_p as little-endian coefficient vectors.
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn decode(v: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut v = v;
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo monic `m` over F_p; true if zero.
fn divides(m: &[usize], a: &[usize], p: usize) -> bool {
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    while rem.len() > dm {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dm;
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - c) * mc % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let k = poly.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = decode(low, p, d);
            f.push(1);
            if divides(&f, poly, p) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `k` over F_p, ordered by
/// the integer encoding of its lower coefficients.
fn least_irreducible(p: usize, k: usize) -> Vec<usize> {
    for low in 0..p.pow(k as u32) {
        let mut poly = decode(low, p, k);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqField {
    pub fn new(p: usize, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(k as u32)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidParameter(format!("field order {p}^{k} exceeds {MAX_ORDER}")))?;

        let reduction_poly = if k == 1 { vec![0, 1] } else { least_irreducible(p, k) };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let pa = decode(a, p, k);
            for b in 0..q {
                let pb = decode(b, p, k);
                let sum: Vec<usize> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p) as Elem;
                let prod = if k == 1 {
                    vec![(a * b) % p]
                } else {
                    poly_mul_mod(&pa, &pb, &reduction_poly, p)
                };
                mul[a * q + b] = encode(&prod, p) as Elem;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as Elem;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as Elem;
                }
            }
        }

        let mut field = FqField {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
            reduction_poly,
            generator: 1,
        };
        field.generator = (1..q as Elem)
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .expect("the multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    /// Builds F_q from its order.
    pub fn of_order(q: usize) -> Result<Self> {
        for p in 2..=q {
            if is_prime(p) && q % p == 0 {
                let mut k = 0;
                let mut rest = q;
                while rest % p == 0 {
                    rest /= p;
                    k += 1;
                }
                if rest != 1 {
                    break;
                }
                return Self::new(p, k);
            }
        }
        Err(Error::InvalidParameter(format!("{q} is not a prime power")))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn reduction_poly(&self) -> &[usize] {
        &self.reduction_poly
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, e: usize) -> Elem {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    fn multiplicative_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }

    /// The fixed generator of the cyclic group F_q^x: the least encoded
    /// element of order q - 1.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Nonzero elements in encoding order, with the fixed generator.
    pub fn units(&self) -> Units {
        let elements: Vec<Elem> = (1..self.q as Elem).collect();
        let m = self.q - 1;
        let mut log = vec![usize::MAX; self.q];
        let mut x: Elem = 1;
        for e in 0..m {
            log[x as usize] = e;
            x = self.mul(x, self.generator);
        }
        Units {
            elements,
            generator: self.generator,
            log,
        }
    }
}

/// The unit group F_q^x together with discrete logarithms to the fixed
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Units {
    pub elements: Vec<Elem>,
    pub generator: Elem,
    #[serde(skip)]
    log: Vec<usize>,
}

impl Units {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Exponent `e` with `generator^e = u`; `None` for zero.
    pub fn log(&self, u: Elem) -> Option<usize> {
        self.log.get(u as usize).copied().filter(|&e| e != usize::MAX)
    }
}
