//! Abstract simplicial complexes stored by facets, order complexes of
//! finite posets, and the `.scx` text format.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Simplex = Vec<Vertex>;

/// A simplicial complex given by its facets. Facets are strictly sorted
/// vertex lists, form an antichain, and are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    num_vertices: usize,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// The complex with no simplices at all (not even the empty simplex
    /// counts as a chain generator outside reduced homology).
    pub fn empty(num_vertices: usize) -> Self {
        SimplicialComplex {
            num_vertices,
            facets: Vec::new(),
        }
    }

    /// Builds from a family of simplices. Vertex lists are sorted and
    /// deduplicated; simplices contained in others are dropped.
    pub fn from_facets<I>(num_vertices: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all: Vec<Simplex> = Vec::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.iter().find(|&&v| v as usize >= num_vertices) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} out of range for {num_vertices} vertices"
                )));
            }
            all.push(f);
        }
        all.sort_unstable();
        all.dedup();
        Ok(SimplicialComplex {
            num_vertices,
            facets: antichain(all),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet size minus one; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// All `k`-simplices in lexicographic order.
    pub fn simplices(&self, k: usize) -> Vec<Simplex> {
        let size = k + 1;
        let mut out: Vec<Simplex> = Vec::new();
        let mut buf = Vec::with_capacity(size);
        for f in self.facets.iter().filter(|f| f.len() >= size) {
            for_each_subset(f, size, &mut buf, &mut |s| out.push(s.to_vec()));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn simplex_counts(&self) -> Vec<usize> {
        (0..=self.dimension().max(-1))
            .map(|k| self.simplices(k as usize).len())
            .collect()
    }

    pub fn contains_simplex(&self, s: &[Vertex]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        s.is_empty() || self.facets.iter().any(|f| is_sorted_subset(&s, f))
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.num_vertices {
            return Err(Error::InvalidParameter("relabeling has the wrong length".into()));
        }
        Self::from_facets(
            self.num_vertices,
            self.facets.iter().map(|f| f.iter().map(|&v| perm[v as usize]).collect()),
        )
    }

    /// `.scx` text: a header `scx 1 <num_vertices>` followed by one facet
    /// per line, ascending ids separated by single spaces, LF endings.
    pub fn to_scx(&self) -> String {
        let mut out = format!("scx 1 {}\n", self.num_vertices);
        for f in &self.facets {
            for (i, v) in f.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_scx(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty .scx input".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let num_vertices = match parts.as_slice() {
            ["scx", "1", n] => n
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad vertex count {n:?}: {e}")))?,
            _ => return Err(Error::Parse(format!("bad .scx header {header:?}"))),
        };
        let mut facets = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let facet: Simplex = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<Vertex>()
                        .map_err(|e| Error::Parse(format!("line {}: bad vertex {t:?}: {e}", lineno + 2)))
                })
                .collect::<Result<_>>()?;
            if facet.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("line {}: facet not strictly ascending", lineno + 2)));
            }
            facets.push(facet);
        }
        Self::from_facets(num_vertices, facets)
    }
}

pub(crate) fn for_each_subset(set: &[Vertex], size: usize, buf: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
    fn rec(set: &[Vertex], start: usize, size: usize, buf: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
        if buf.len() == size {
            f(buf);
            return;
        }
        let need = size - buf.len();
        for i in start..=set.len().saturating_sub(need) {
            if set.len() - i < need {
                break;
            }
            buf.push(set[i]);
            rec(set, i + 1, size, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if size <= set.len() {
        rec(set, 0, size, buf, f);
    }
}

fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Drops every simplex strictly contained in another. Input is sorted and
/// deduplicated; output keeps that order.
fn antichain(facets: Vec<Simplex>) -> Vec<Simplex> {
    let sizes: BTreeSet<usize> = facets.iter().map(Vec::len).collect();
    if sizes.len() <= 1 {
        return facets;
    }
    let mut by_vertex: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (idx, f) in facets.iter().enumerate() {
        for &v in f {
            by_vertex.entry(v).or_default().push(idx);
        }
    }
    facets
        .iter()
        .filter(|f| {
            let candidates = &by_vertex[&f[0]];
            !candidates
                .iter()
                .any(|&g| facets[g].len() > f.len() && is_sorted_subset(f, &facets[g]))
        })
        .cloned()
        .collect()
}

/// The order complex (nerve) of a finite poset on `0..n` with strict order
/// `less`: simplices are chains, facets are the maximal chains.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<SimplicialComplex> {
    let rel: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| less(i, j)).collect()).collect();
    for i in 0..n {
        if rel[i][i] {
            return Err(Error::InvalidParameter(format!("order relation is not irreflexive at {i}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] && !rel[i][k] {
                    return Err(Error::InvalidParameter(format!(
                        "order relation is not transitive: {i} < {j} < {k}"
                    )));
                }
            }
        }
    }
    // covers[i]: elements j with i < j and nothing strictly between
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| rel[i][j] && !(0..n).any(|k| rel[i][k] && rel[k][j]))
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..n).filter(|&j| !(0..n).any(|i| rel[i][j])).collect();
    let mut facets = Vec::new();
    let mut chain = Vec::new();
    fn walk(i: usize, covers: &[Vec<usize>], chain: &mut Vec<Vertex>, facets: &mut Vec<Simplex>) {
        chain.push(i as Vertex);
        if covers[i].is_empty() {
            facets.push(chain.clone());
        }
        for &j in &covers[i] {
            walk(j, covers, chain, facets);
        }
        chain.pop();
    }
    for m in minimal {
        walk(m, &covers, &mut chain, &mut facets);
    }
    SimplicialComplex::from_facets(n, facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_and_dimension() {
        let c = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![1, 0, 2], vec![3], vec![2, 1]]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.simplex_counts(), vec![4, 3, 1]);
        assert!(c.contains_simplex(&[2, 0]));
        assert!(!c.contains_simplex(&[0, 3]));
        assert_eq!(SimplicialComplex::empty(5).dimension(), -1);
        assert!(SimplicialComplex::from_facets(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn order_complex_examples() {
        let anti = order_complex(3, |_, _| false).unwrap();
        assert_eq!(anti.facets(), &[vec![0], vec![1], vec![2]]);
        let chain = order_complex(3, |i, j| i < j).unwrap();
        assert_eq!(chain.facets(), &[vec![0, 1, 2]]);
        assert!(order_complex(2, |_, _| true).is_err());
        // 0 < 1 < 2 but not 0 < 2
        assert!(order_complex(3, |i, j| j == i + 1).is_err());
    }

    #[test]
    fn scx_round_trip_and_errors() {
        let c = SimplicialComplex::from_facets(5, vec![vec![0, 1, 2], vec![2, 3], vec![4]]).unwrap();
        let text = c.to_scx();
        assert_eq!(text, "scx 1 5\n0 1 2\n2 3\n4\n");
        assert_eq!(SimplicialComplex::from_scx(&text).unwrap(), c);
        assert!(SimplicialComplex::from_scx("scx 2 3\n").is_err());
        assert!(SimplicialComplex::from_scx("scx 1 3\n2 1\n").is_err());
        assert!(SimplicialComplex::from_scx("scx 1 3\n0 x\n").is_err());
        assert_eq!(SimplicialComplex::from_scx("scx 1 0\n").unwrap(), SimplicialComplex::empty(0));
    }

    #[test]
    fn relabel_permutes_vertices() {
        let c = SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![2]]).unwrap();
        let r = c.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(r.facets(), &[vec![0, 2], vec![1]]);
    }
}
