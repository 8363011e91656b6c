//! Proper edge coloring by constructive fan rotation.
//!
//! The pass guarantees a proper coloring with at most `max_degree + 1` colors
//! in O(n*m) time. Every choice point is pinned so a given graph always colors
//! identically:
//!
//! * uncolored edges are processed in input order;
//! * for an edge `(u, v)` with `u < v` the fan is built at the higher
//!   endpoint `v` and starts at `u`;
//! * fan extension takes the lowest-index eligible neighbor;
//! * free colors are always the lowest-index color not present at a vertex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    num_colors: usize,
}

/// One color's edges, identified by edge index in graph input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClass {
    pub color: usize,
    pub edges: Vec<usize>,
}

/// Classes ordered by descending size, ties broken by lowest color index.
/// The first class is the largest matching the ansatz builder optimizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClasses {
    pub classes: Vec<ColorClass>,
}

impl EdgeColoring {
    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of distinct colors in use.
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// `{"colors": {"u-v": c, ...}, "num_colors": k}`, keys sorted.
    pub fn to_json(&self, g: &Graph) -> String {
        let mut map = BTreeMap::new();
        for (i, &(u, v, _)) in g.edges().iter().enumerate() {
            map.insert(format!("{}-{}", u, v), self.colors[i]);
        }
        serde_json::json!({ "colors": map, "num_colors": self.num_colors }).to_string()
    }
}

impl ColorClasses {
    pub fn largest(&self) -> Option<&ColorClass> {
        self.classes.first()
    }
}

struct FanColorer<'a> {
    g: &'a Graph,
    /// Edge index for each (vertex, neighbor) pair.
    edge_of: Vec<BTreeMap<usize, usize>>,
    /// Per vertex: color -> neighbor across the edge with that color.
    incident: Vec<BTreeMap<usize, usize>>,
    colors: Vec<Option<usize>>,
}

impl<'a> FanColorer<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n_vertices();
        let mut edge_of = vec![BTreeMap::new(); n];
        for (i, &(u, v, _)) in g.edges().iter().enumerate() {
            edge_of[u].insert(v, i);
            edge_of[v].insert(u, i);
        }
        Self {
            g,
            edge_of,
            incident: vec![BTreeMap::new(); n],
            colors: vec![None; g.n_edges()],
        }
    }

    fn is_free(&self, vertex: usize, color: usize) -> bool {
        !self.incident[vertex].contains_key(&color)
    }

    fn free_color(&self, vertex: usize) -> usize {
        let mut c = 0;
        while self.incident[vertex].contains_key(&c) {
            c += 1;
        }
        c
    }

    fn color_between(&self, x: usize, y: usize) -> Option<usize> {
        self.colors[self.edge_of[x][&y]]
    }

    fn set_color(&mut self, x: usize, y: usize, color: usize) {
        let e = self.edge_of[x][&y];
        if let Some(old) = self.colors[e] {
            self.incident[x].remove(&old);
            self.incident[y].remove(&old);
        }
        self.colors[e] = Some(color);
        self.incident[x].insert(color, y);
        self.incident[y].insert(color, x);
    }

    fn uncolor(&mut self, x: usize, y: usize) {
        let e = self.edge_of[x][&y];
        if let Some(old) = self.colors[e].take() {
            self.incident[x].remove(&old);
            self.incident[y].remove(&old);
        }
    }

    /// Maximal fan of `pivot` starting at `first`: each next vertex is the
    /// lowest-index neighbor whose (colored) edge to the pivot has a color
    /// free at the current fan end.
    fn maximal_fan(&self, pivot: usize, first: usize) -> Vec<usize> {
        let mut fan = vec![first];
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(pivot).iter().copied().find(|&y| {
                !fan.contains(&y)
                    && match self.color_between(pivot, y) {
                        Some(c) => self.is_free(last, c),
                        None => false,
                    }
            });
            match next {
                Some(y) => fan.push(y),
                None => break,
            }
        }
        fan
    }

    /// Path from `start` along edges alternately colored `d, c, d, ...`.
    /// `c` is free at `start`, so `start` is an endpoint and the walk is a
    /// simple path; a proper coloring makes each step unique.
    fn alternating_path(&self, start: usize, d: usize, c: usize) -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        let mut cur = start;
        let mut want = d;
        while let Some(&nbr) = self.incident[cur].get(&want) {
            path.push((cur, nbr));
            cur = nbr;
            want = if want == d { c } else { d };
        }
        path
    }

    fn invert_path(&mut self, path: &[(usize, usize)], d: usize, c: usize) {
        // Same two-phase shape as the fan rotation: swapping edge by edge
        // would transiently alias colors at interior path vertices.
        let swapped: Vec<usize> = path
            .iter()
            .map(|&(a, b)| {
                let old = self.color_between(a, b).expect("path edges are colored");
                if old == d {
                    c
                } else {
                    d
                }
            })
            .collect();
        for &(a, b) in path {
            self.uncolor(a, b);
        }
        for (&(a, b), &color) in path.iter().zip(&swapped) {
            self.set_color(a, b, color);
        }
    }

    fn color_edge(&mut self, u: usize, v: usize) {
        let (pivot, first) = (v, u);
        let fan = self.maximal_fan(pivot, first);
        let c = self.free_color(pivot);
        let d = self.free_color(*fan.last().unwrap());
        if c != d {
            let path = self.alternating_path(pivot, d, c);
            self.invert_path(&path, d, c);
        }
        // After inversion d is free at the pivot. Pick the smallest w where d
        // is free at fan[w] while the prefix up to w is still a valid fan
        // (the inversion may have recolored a fan edge).
        let mut w = None;
        for j in 0..fan.len() {
            if j > 0 {
                let col = self
                    .color_between(pivot, fan[j])
                    .expect("fan edges beyond the first are colored");
                if !self.is_free(fan[j - 1], col) {
                    break;
                }
            }
            if self.is_free(fan[j], d) {
                w = Some(j);
                break;
            }
        }
        let w = w.expect("some fan vertex has d free");
        // Two phases: rotating in place would transiently give two pivot
        // edges the same color and corrupt the incidence maps.
        let shifted: Vec<usize> = (0..w)
            .map(|i| self.color_between(pivot, fan[i + 1]).expect("interior fan edge is colored"))
            .collect();
        for &f in &fan[..=w] {
            self.uncolor(pivot, f);
        }
        for (i, &color) in shifted.iter().enumerate() {
            self.set_color(pivot, fan[i], color);
        }
        self.set_color(pivot, fan[w], d);
    }

    fn run(mut self) -> EdgeColoring {
        let pairs: Vec<(usize, usize)> =
            self.g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        for (u, v) in pairs {
            self.color_edge(u, v);
        }
        let colors: Vec<usize> = self.colors.into_iter().map(Option::unwrap).collect();
        let distinct: std::collections::BTreeSet<usize> = colors.iter().copied().collect();
        EdgeColoring { colors, num_colors: distinct.len() }
    }
}

/// Colors every edge; proper, at most `max_degree + 1` colors, deterministic.
pub fn misra_gries_color(g: &Graph) -> EdgeColoring {
    FanColorer::new(g).run()
}

pub fn color_classes(g: &Graph, coloring: &EdgeColoring) -> ColorClasses {
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..g.n_edges() {
        by_color.entry(coloring.color(i)).or_default().push(i);
    }
    let mut classes: Vec<ColorClass> = by_color
        .into_iter()
        .map(|(color, edges)| ColorClass { color, edges })
        .collect();
    classes.sort_by(|a, b| b.edges.len().cmp(&a.edges.len()).then(a.color.cmp(&b.color)));
    ColorClasses { classes }
}

/// Smallest k admitting a proper edge coloring, by backtracking over edges.
/// Exponential; intended as an oracle for small graphs only.
pub fn chromatic_index_bruteforce(g: &Graph) -> Result<usize> {
    if g.n_edges() > 10 {
        return Err(Error::TooLarge { what: "edge count for exhaustive coloring", limit: 10 });
    }
    fn feasible(g: &Graph, k: usize, edge: usize, assigned: &mut Vec<usize>) -> bool {
        if edge == g.n_edges() {
            return true;
        }
        let (u, v, _) = g.edges()[edge];
        'colors: for c in 0..k {
            for prev in 0..edge {
                let (a, b, _) = g.edges()[prev];
                if assigned[prev] == c && (a == u || a == v || b == u || b == v) {
                    continue 'colors;
                }
            }
            assigned[edge] = c;
            if feasible(g, k, edge + 1, assigned) {
                return true;
            }
        }
        false
    }
    let mut k = g.max_degree().max(1);
    loop {
        let mut assigned = vec![0; g.n_edges()];
        if feasible(g, k, 0, &mut assigned) {
            return Ok(k);
        }
        k += 1;
    }
}
