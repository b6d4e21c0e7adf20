//! Finite simple graphs and automorphism groups.
//!
//! The automorphism search is a plain backtracking search over image
//! assignments, pruned by an iterated neighborhood-color refinement (vertices
//! can only map to vertices with the same refined color). No canonical-form
//! machinery is involved; for small graphs the search is verified against
//! brute force over all permutations.

use crate::error::{Error, Result};
use crate::perm::{FiniteAction, Permutation};

/// Vertices `0..n-1` with adjacency bitmasks, so `n` is capped at 64.
pub const MAX_VERTICES: usize = 64;

/// Search-tree node allowance for [`automorphism_group`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::MalformedGraph("vertex count must be positive".into()));
        }
        if vertex_count > MAX_VERTICES {
            return Err(Error::UnsupportedDegree {
                got: vertex_count,
                max: MAX_VERTICES,
            });
        }
        let mut g = Graph {
            vertex_count,
            adjacency: vec![0; vertex_count],
            edge_count: 0,
        };
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::MalformedGraph(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::MalformedGraph(format!("loop at vertex {u}")));
        }
        if self.adjacency[u] >> v & 1 == 1 {
            return Err(Error::MalformedGraph(format!("duplicate edge ({u},{v})")));
        }
        self.adjacency[u] |= 1 << v;
        self.adjacency[v] |= 1 << u;
        self.edge_count += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    /// Sorted edge list.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff `p` maps the edge set onto itself.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.degree() != self.vertex_count {
            return false;
        }
        self.edges()
            .iter()
            .all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }
}

/// Reads the `graph` file format: `graph <n>` then `e <u> <v>` lines,
/// `#` comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let bad = |msg: String| Error::MalformedGraph(msg);
    let mut graph: Option<Graph> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &mut graph {
            None => {
                let rest = line
                    .strip_prefix("graph")
                    .ok_or_else(|| bad(format!("line {}: expected `graph <n>`", lineno + 1)))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("line {}: bad vertex count", lineno + 1)))?;
                graph = Some(Graph::new(n, &[])?);
            }
            Some(g) => {
                let rest = line
                    .strip_prefix('e')
                    .ok_or_else(|| bad(format!("line {}: expected `e <u> <v>`", lineno + 1)))?;
                let mut it = rest.split_whitespace();
                let parse_vertex = |tok: Option<&str>| -> Result<usize> {
                    tok.ok_or_else(|| bad(format!("line {}: missing vertex", lineno + 1)))?
                        .parse()
                        .map_err(|_| bad(format!("line {}: bad vertex", lineno + 1)))
                };
                let u = parse_vertex(it.next())?;
                let v = parse_vertex(it.next())?;
                if it.next().is_some() {
                    return Err(bad(format!("line {}: trailing tokens", lineno + 1)));
                }
                g.add_edge(u, v)?;
            }
        }
    }
    graph.ok_or_else(|| bad("missing `graph <n>` header".into()))
}

/// Iterated neighborhood refinement: start from degrees, repeatedly split
/// color classes by the multiset of neighbor colors until stable. Returns a
/// color per vertex; automorphisms preserve these colors.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count;
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree_of(v)).collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut neigh: Vec<usize> = (0..n)
                    .filter(|&u| g.has_edge(v, u))
                    .map(|u| colors[u])
                    .collect();
                neigh.sort_unstable();
                (colors[v], neigh)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let relabel: Vec<(usize, Vec<usize>)> = sorted.into_iter().cloned().collect();
        let next: Vec<usize> = signatures
            .drain(..)
            .map(|sig| relabel.binary_search(&sig).unwrap())
            .collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

struct AutSearch<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    image: Vec<usize>,
    used: u64,
    found: Vec<Permutation>,
    nodes: u64,
    node_budget: u64,
    cap: u64,
    failure: Option<Error>,
}

impl AutSearch<'_> {
    fn run(&mut self, v: usize) -> bool {
        let n = self.g.vertex_count;
        if v == n {
            self.found.push(Permutation::from_images(self.image.clone()));
            if self.found.len() as u64 > self.cap {
                self.failure = Some(Error::OrderExceedsCap {
                    order_at_least: self.found.len() as u64,
                    cap: self.cap,
                });
                return false;
            }
            return true;
        }
        for w in 0..n {
            if self.used >> w & 1 == 1 || self.colors[w] != self.colors[v] {
                continue;
            }
            // adjacency with all previously assigned vertices must be preserved
            if (0..v).any(|u| self.g.has_edge(u, v) != self.g.has_edge(self.image[u], w)) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_budget {
                self.failure = Some(Error::SearchBudgetExceeded {
                    budget: self.node_budget,
                });
                return false;
            }
            self.image[v] = w;
            self.used |= 1 << w;
            if !self.run(v + 1) {
                return false;
            }
            self.used &= !(1 << w);
        }
        true
    }
}

/// Full automorphism group, as a small generating set. `cap` bounds the
/// group order.
pub fn automorphism_group(g: &Graph, cap: u64) -> Result<FiniteAction> {
    automorphism_group_with_budget(g, cap, DEFAULT_NODE_BUDGET)
}

pub fn automorphism_group_with_budget(g: &Graph, cap: u64, node_budget: u64) -> Result<FiniteAction> {
    let colors = refine_colors(g);
    let mut search = AutSearch {
        g,
        colors,
        image: vec![0; g.vertex_count],
        used: 0,
        found: Vec::new(),
        nodes: 0,
        node_budget,
        cap,
        failure: None,
    };
    search.run(0);
    if let Some(err) = search.failure {
        return Err(err);
    }
    // candidate images are tried in increasing order, so `found` is already
    // sorted by image sequence; the identity comes first
    let gens = reduce(&search.found, g.vertex_count);
    if gens.is_empty() {
        Ok(FiniteAction::trivial(g.vertex_count))
    } else {
        FiniteAction::new(g.vertex_count, gens)
    }
}

fn reduce(elements: &[Permutation], degree: usize) -> Vec<Permutation> {
    let target = elements.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    closure.insert(Permutation::identity(degree));
    for e in elements {
        if closure.len() == target {
            break;
        }
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        closure.clear();
        let id = Permutation::identity(degree);
        closure.insert(id.clone());
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in &gens {
                let q = p.compose(g);
                if closure.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cycle_graph as cycle, path_graph as path, petersen, star_graph as star};
    use crate::perm::enumerate_elements;
    use rand::{Rng, SeedableRng};

    fn aut_order(g: &Graph) -> u64 {
        let a = automorphism_group(g, 1_000_000).unwrap();
        enumerate_elements(&a, 1_000_000).unwrap().len() as u64
    }

    #[test]
    fn parses_graph_format() {
        let g = parse_graph("graph 3\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);

        let g = parse_graph("graph 4\n# a square\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(parse_graph("graph 2\ne 0 0\n"), Err(Error::MalformedGraph(_))));
        assert!(matches!(parse_graph("graph 2\ne 0 5\n"), Err(Error::MalformedGraph(_))));
        assert!(matches!(
            parse_graph("graph 3\ne 0 1\ne 1 0\n"),
            Err(Error::MalformedGraph(_))
        ));
        assert!(matches!(parse_graph("graph 0\n"), Err(Error::MalformedGraph(_))));
        assert!(matches!(parse_graph(""), Err(Error::MalformedGraph(_))));
    }

    #[test]
    fn automorphism_counts_for_named_graphs() {
        assert_eq!(aut_order(&cycle(4)), 8);
        assert_eq!(aut_order(&path(3)), 2);
        assert_eq!(aut_order(&star(3)), 6);
        assert_eq!(aut_order(&cycle(6)), 12);
        assert_eq!(aut_order(&Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()), 24);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // every labeled graph on up to 5 vertices, order vs. permutation scan
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0..1u32 << pairs.len() {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges).unwrap();
                let brute = brute_force_count(&g);
                assert_eq!(aut_order(&g), brute, "graph n={n} mask={mask}");
            }
        }
    }

    fn brute_force_count(g: &Graph) -> u64 {
        let n = g.vertex_count();
        let mut count = 0;
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            let p = Permutation::from_images(images.clone());
            if g.is_automorphism(&p) {
                count += 1;
            }
            if !next_permutation(&mut images) {
                return count;
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn petersen_graph_has_order_120() {
        assert_eq!(aut_order(&petersen()), 120);
    }

    #[test]
    fn generators_and_random_products_preserve_edges() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [cycle(6), star(4), petersen(), path(5)] {
            let a = automorphism_group(&g, 10_000).unwrap();
            for gen in a.generators() {
                assert!(g.is_automorphism(gen));
            }
            let elements = enumerate_elements(&a, 10_000).unwrap();
            for _ in 0..100 {
                let x = &elements[rng.gen_range(0..elements.len())];
                let y = &elements[rng.gen_range(0..elements.len())];
                assert!(g.is_automorphism(&x.compose(y)));
            }
        }
    }

    #[test]
    fn cap_and_budget_are_enforced() {
        // edgeless graph on 8 vertices: 8! = 40320 automorphisms
        let g = Graph::new(8, &[]).unwrap();
        assert!(matches!(
            automorphism_group(&g, 100),
            Err(Error::OrderExceedsCap { cap: 100, .. })
        ));
        assert!(matches!(
            automorphism_group_with_budget(&g, 1_000_000, 50),
            Err(Error::SearchBudgetExceeded { budget: 50 })
        ));
    }
}
