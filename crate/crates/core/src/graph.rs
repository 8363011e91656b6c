//! Undirected weighted graphs for Max-Cut instances.
//!
//! Vertices are `0..n`. Edges are stored normalized as `(u, v, w)` with
//! `u < v`, in insertion order. That order is load-bearing: the coloring pass,
//! the DFS planner and the ansatz builders all iterate edges in input order,
//! and the golden values in the test suite assume it.

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    /// `degree_histogram[d]` = number of vertices with degree `d`.
    pub degree_histogram: Vec<usize>,
}

pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<(usize, usize, f64)> =
            edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::weighted(n, &weighted)
    }

    pub fn weighted(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidVertexCount(n));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for &(a, b, w) in edges {
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge { u, v });
            }
            normalized.push((u, v, w));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, _) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, edges: normalized, adj })
    }

    /// Complete graph K_n, edges in lexicographic pair order.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::with_capacity(n.saturating_mul(n.saturating_sub(1)) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    /// Cycle graph C_n: edges (0,1), (1,2), ..., (n-1,0).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidVertexCount(n));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    /// Erdos-Renyi G(n, p) conditioned on connectivity.
    ///
    /// Pairs (u, v), u < v, are visited in lexicographic order and included
    /// independently with probability `p_edge`. A disconnected draw is thrown
    /// away and the whole graph is resampled from where the generator stream
    /// left off, which preserves the conditioned distribution and keeps the
    /// result a pure function of (n, p_edge, seed).
    pub fn erdos_renyi(n: usize, p_edge: f64, seed: u64) -> Result<Self> {
        Self::erdos_renyi_with_attempts(n, p_edge, seed, DEFAULT_MAX_ATTEMPTS)
    }

    pub fn erdos_renyi_with_attempts(
        n: usize,
        p_edge: f64,
        seed: u64,
        max_attempts: usize,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidVertexCount(n));
        }
        if !(0.0..=1.0).contains(&p_edge) {
            return Err(Error::InvalidProbability(p_edge));
        }
        let mut rng = SplitMix64::new(seed);
        for _ in 0..max_attempts {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_f64() < p_edge {
                        edges.push((u, v));
                    }
                }
            }
            let g = Self::new(n, &edges)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
        Err(Error::AttemptsExhausted { attempts: max_attempts })
    }

    /// Parses the edge-list text format: first line is the vertex count, each
    /// following line is `u v` or `u v w`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if n.is_none() {
                if fields.len() != 1 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected a vertex count, got {:?}", content),
                    });
                }
                let parsed = fields[0].parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid vertex count {:?}", fields[0]),
                })?;
                n = Some(parsed);
                continue;
            }
            if fields.len() != 2 && fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `u v` or `u v w`, got {:?}", content),
                });
            }
            let u = fields[0].parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid vertex {:?}", fields[0]),
            })?;
            let v = fields[1].parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid vertex {:?}", fields[1]),
            })?;
            let w = if fields.len() == 3 {
                let w = fields[2].parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid weight {:?}", fields[2]),
                })?;
                if !w.is_finite() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("weight must be finite, got {}", w),
                    });
                }
                w
            } else {
                1.0
            };
            edges.push((u, v, w));
        }
        let n = n.ok_or(Error::Parse { line: 1, msg: "missing vertex count".into() })?;
        Self::weighted(n, &edges)
    }

    /// Inverse of [`Graph::parse`]; unit weights are omitted.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v, w) in &self.edges {
            if w == 1.0 {
                out.push_str(&format!("{} {}\n", u, v));
            } else {
                out.push_str(&format!("{} {} {}\n", u, v, w));
            }
        }
        out
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = self.max_degree();
        let mut degree_histogram = vec![0; max_degree + 1];
        for v in 0..self.n {
            degree_histogram[self.degree(v)] += 1;
        }
        GraphStats { n: self.n, m: self.edges.len(), max_degree, degree_histogram }
    }
}
