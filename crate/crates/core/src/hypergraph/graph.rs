use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::form::MultilinearForm;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A `t`-uniform hypergraph whose edges are multisets of vertices.
///
/// Edges are stored as sorted tuples with the number of parallel copies.
/// The ordered count used by the adjacency form follows the permutation
/// count: an edge `M` with multiplicity `μ` contributes `μ · Π_c m_c!` to every
/// ordering of `M`, where `m_c` is how often vertex `c` occurs in `M`. Each
/// permutation-generated edge therefore carries total ordered weight `t!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    t: usize,
    vertex_count: usize,
    edges: BTreeMap<Vec<u32>, u64>,
    degree: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    t: usize,
    vertex_count: usize,
    edges: Vec<(Vec<u32>, u64)>,
    degree: Option<u64>,
}

pub(crate) fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// `Π_c m_c!` over the multiplicities of a sorted tuple.
fn repeat_weight(sorted: &[u32]) -> u64 {
    let mut w = 1;
    let mut run = 1;
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            run += 1;
            w *= run;
        } else {
            run = 1;
        }
    }
    w
}

/// Distinct orderings of a sorted multiset, in lexicographic order.
fn distinct_orderings(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = sorted.to_vec();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

impl Hypergraph {
    pub fn new(t: usize, vertex_count: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::domain(format!("uniformity must be at least 2, got {t}")));
        }
        Ok(Hypergraph {
            t,
            vertex_count,
            edges: BTreeMap::new(),
            degree: None,
        })
    }

    pub(crate) fn add_edge_unchecked(&mut self, mut tuple: Vec<u32>, multiplicity: u64) {
        tuple.sort_unstable();
        *self.edges.entry(tuple).or_insert(0) += multiplicity;
    }

    /// Adds `multiplicity` parallel copies of the edge with vertices `tuple`.
    pub fn add_edge(&mut self, tuple: Vec<u32>, multiplicity: u64) -> Result<()> {
        if tuple.len() != self.t {
            return Err(Error::domain(format!("edge {tuple:?} does not have {} vertices", self.t)));
        }
        if tuple.iter().any(|&v| v as usize >= self.vertex_count) {
            return Err(Error::domain(format!("edge {tuple:?} has a vertex out of range")));
        }
        if multiplicity > 0 {
            self.add_edge_unchecked(tuple, multiplicity);
        }
        self.refresh_degree();
        Ok(())
    }

    /// Vertex degrees `Ā_H(1_{v}, 1_V, …, 1_V)`.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.vertex_count];
        let tail = factorial(self.t - 1);
        for (tuple, &mult) in &self.edges {
            // Vertex v with m_v occurrences leads m_v · (t−1)! · μ ordered tuples' weight.
            let mut i = 0;
            while i < tuple.len() {
                let v = tuple[i];
                let run = tuple[i..].iter().take_while(|&&x| x == v).count();
                deg[v as usize] += mult * run as u64 * tail;
                i += run;
            }
        }
        deg
    }

    pub(crate) fn refresh_degree(&mut self) {
        let deg = self.degrees();
        self.degree = match deg.first() {
            Some(&k) if deg.iter().all(|&d| d == k) => Some(k),
            _ => None,
        };
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Regularity degree `k`, present iff every vertex has the same degree.
    pub fn degree(&self) -> Option<u64> {
        self.degree
    }

    pub fn edges(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.edges.iter().map(|(k, &m)| (k.as_slice(), m))
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    /// The ordered count `e_H(u_1,…,u_t)`.
    pub fn ordered_count(&self, tuple: &[u32]) -> u64 {
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        self.edges
            .get(&sorted)
            .map_or(0, |&m| m * repeat_weight(&sorted))
    }

    /// Union with another hypergraph on the same vertex set.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.t != other.t || self.vertex_count != other.vertex_count {
            return Err(Error::domain("union of hypergraphs with different shapes"));
        }
        let mut out = self.clone();
        for (tuple, &m) in &other.edges {
            *out.edges.entry(tuple.clone()).or_insert(0) += m;
        }
        out.refresh_degree();
        Ok(out)
    }

    /// `Ā_H`, or `A_H = Ā_H / k` when `normalized`.
    pub fn adjacency_form(&self, normalized: bool) -> Result<MultilinearForm> {
        let scale = if normalized {
            let k = self.degree.ok_or_else(|| {
                Error::domain("normalized adjacency form requested for an irregular hypergraph")
            })?;
            if k == 0 {
                return Err(Error::domain("normalized adjacency form of an empty hypergraph"));
            }
            Rational::new(1, k as i128)
        } else {
            Rational::from_integer(1)
        };
        let mut entries = Vec::new();
        for (tuple, &mult) in &self.edges {
            let w = Rational::from_integer((mult * repeat_weight(tuple)) as i128) * scale;
            for ordering in distinct_orderings(tuple) {
                entries.push((ordering, w));
            }
        }
        MultilinearForm::from_entries(self.t, self.vertex_count, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphFile {
            t: self.t,
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|(k, &m)| (k.clone(), m)).collect(),
            degree: self.degree,
        })
        .expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: HypergraphFile = serde_json::from_str(text)?;
        let mut h = Hypergraph::new(file.t, file.vertex_count)?;
        for (tuple, m) in file.edges {
            if tuple.len() != h.t || tuple.iter().any(|&v| v as usize >= h.vertex_count) {
                return Err(Error::domain(format!("bad edge {tuple:?}")));
            }
            h.add_edge_unchecked(tuple, m);
        }
        h.refresh_degree();
        if file.degree.is_some() && file.degree != h.degree {
            return Err(Error::domain(format!(
                "stated degree {:?} disagrees with computed {:?}",
                file.degree, h.degree
            )));
        }
        Ok(h)
    }
}
