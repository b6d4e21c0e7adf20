//! Named finite actions and graph families shared by tests, benches, and the
//! acceptance suite: small transitive permutation groups up to degree 7 and
//! standard graph constructions, plus an exhaustive inventory of the
//! isomorphism classes of graphs on at most 6 vertices.

use crate::graph::Graph;
use crate::perm::{enumerate_elements, parse_permutation, FiniteAction, Permutation};

fn action(degree: usize, cycles: &[&str]) -> FiniteAction {
    let generators = cycles
        .iter()
        .map(|c| parse_permutation(c, degree).unwrap())
        .collect();
    FiniteAction::new(degree, generators).unwrap()
}

/// Regular cyclic group on n points.
pub fn cyclic(n: usize) -> FiniteAction {
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    FiniteAction::new(n, vec![Permutation::from_images(images)]).unwrap()
}

/// Dihedral group acting on the vertices of the regular n-gon.
pub fn dihedral(n: usize) -> FiniteAction {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteAction::new(
        n,
        vec![
            Permutation::from_images(rotation),
            Permutation::from_images(reflection),
        ],
    )
    .unwrap()
}

/// Symmetric group in its natural action.
pub fn symmetric(n: usize) -> FiniteAction {
    assert!(n >= 2);
    let full: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    FiniteAction::new(
        n,
        vec![Permutation::from_images(full), Permutation::from_images(swap)],
    )
    .unwrap()
}

/// Alternating group in its natural action (n ≥ 3).
pub fn alternating(n: usize) -> FiniteAction {
    assert!(n >= 3);
    let three: Vec<usize> = (0..n).map(|i| if i < 3 { (i + 1) % 3 } else { i }).collect();
    // the long cycle must be even: use all n points when n is odd, n−1 when even
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).map(|i| (i + 1) % n).collect()
    } else {
        (0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect()
    };
    FiniteAction::new(
        n,
        vec![Permutation::from_images(three), Permutation::from_images(long)],
    )
    .unwrap()
}

/// Klein four-group acting regularly on 4 points.
pub fn klein_four() -> FiniteAction {
    action(4, &["(0 1)(2 3)", "(0 2)(1 3)"])
}

/// Frobenius group of order 20 = AGL(1,5) on 5 points.
pub fn frobenius20() -> FiniteAction {
    action(5, &["(0 1 2 3 4)", "(1 2 4 3)"])
}

/// Frobenius group of order 21 on 7 points (x ↦ x+1, x ↦ 2x mod 7).
pub fn frobenius21() -> FiniteAction {
    action(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"])
}

/// Frobenius group of order 42 = AGL(1,7) on 7 points (x ↦ 3x mod 7).
pub fn frobenius42() -> FiniteAction {
    action(7, &["(0 1 2 3 4 5 6)", "(1 3 2 6 4 5)"])
}

/// Collineation group of the Fano plane, order 168, on 7 points.
pub fn psl_3_2() -> FiniteAction {
    action(7, &["(0 1 2 3 4 5 6)", "(1 2)(3 6)"])
}

/// A₅ acting on the projective line over GF(5): points 0..4 and ∞ = 5,
/// generated by x ↦ x+1 and x ↦ −1/x.
pub fn psl_2_5() -> FiniteAction {
    action(6, &["(0 1 2 3 4)", "(0 5)(1 4)"])
}

/// S₅ on the projective line over GF(5): adds x ↦ 2x.
pub fn pgl_2_5() -> FiniteAction {
    action(6, &["(0 1 2 3 4)", "(0 5)(1 4)", "(1 2 4 3)"])
}

/// Left-regular representation of an action's group: the group acting on its
/// own elements (in canonical enumeration order) by left multiplication.
pub fn regular_representation(a: &FiniteAction, cap: u64) -> FiniteAction {
    let elements = enumerate_elements(a, cap).unwrap();
    let generators = a
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = elements
                .iter()
                .map(|e| {
                    let product = g.compose(e);
                    elements.iter().position(|x| *x == product).unwrap()
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect();
    FiniteAction::new(elements.len(), generators).unwrap()
}

/// The induced action on unordered pairs of points, pairs listed in
/// lexicographic order.
pub fn pair_action(a: &FiniteAction) -> FiniteAction {
    let n = a.degree();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let pair_index = |u: usize, v: usize| {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (u, v)).unwrap()
    };
    let generators = a
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = pairs
                .iter()
                .map(|&(u, v)| pair_index(g.apply(u), g.apply(v)))
                .collect();
            Permutation::from_images(images)
        })
        .collect();
    FiniteAction::new(pairs.len(), generators).unwrap()
}

/// The transitive actions of degree ≤ 7 used as the finite test corpus,
/// with stable names.
pub fn transitive_corpus() -> Vec<(&'static str, FiniteAction)> {
    vec![
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("C7", cyclic(7)),
        ("V4", klein_four()),
        ("S3", symmetric(3)),
        ("S4", symmetric(4)),
        ("S5", symmetric(5)),
        ("S6", symmetric(6)),
        ("S7", symmetric(7)),
        ("A4", alternating(4)),
        ("A5", alternating(5)),
        ("A6", alternating(6)),
        ("A7", alternating(7)),
        ("D4", dihedral(4)),
        ("D5", dihedral(5)),
        ("D6", dihedral(6)),
        ("D7", dihedral(7)),
        ("F20", frobenius20()),
        ("F21", frobenius21()),
        ("F42", frobenius42()),
        ("PSL(3,2)", psl_3_2()),
        ("PSL(2,5)", psl_2_5()),
        ("PGL(2,5)", pgl_2_5()),
        ("S3-regular", regular_representation(&symmetric(3), 100)),
        ("S4-pairs", pair_action(&symmetric(4))),
        ("A4-pairs", pair_action(&alternating(4))),
    ]
}

pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// Star with the given number of leaves; vertex 0 is the center.
pub fn star_graph(leaves: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::new(leaves + 1, &edges).unwrap()
}

/// Kneser graph K(5,2): vertices are the 2-subsets of {0..4}, adjacent iff
/// disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
        .collect();
    let mut edges = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(10, &edges).unwrap()
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, v: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, v, out);
            if k % 2 == 0 {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }
    let mut v: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut v, &mut out);
    out
}

/// One representative per isomorphism class of graphs on exactly n vertices
/// (1 ≤ n ≤ 6), chosen as the least adjacency bitmask over all relabelings.
pub fn graph_classes(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n));
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let pair_bit = |u: usize, v: usize| {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (u, v)).unwrap()
    };
    let perms = permutations_of(n);
    let relabelings: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(u, v)| pair_bit(p[u], p[v]))
                .collect()
        })
        .collect();
    let mut canonical = std::collections::BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let least = relabelings
            .iter()
            .map(|bits| {
                let mut m = 0u32;
                for (from, &to) in bits.iter().enumerate() {
                    if mask >> from & 1 == 1 {
                        m |= 1 << to;
                    }
                }
                m
            })
            .min()
            .unwrap();
        canonical.insert(least);
    }
    canonical
        .into_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

/// All isomorphism classes of graphs on 1 to 6 vertices (208 graphs).
pub fn graphs_up_to_6_vertices() -> Vec<Graph> {
    (1..=6).flat_map(graph_classes).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::StabilizerChain;
    use crate::perm::orbit;

    #[test]
    fn corpus_orders_match_on_two_independent_routes() {
        let expected: &[(&str, u64)] = &[
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C5", 5),
            ("C6", 6),
            ("C7", 7),
            ("V4", 4),
            ("S3", 6),
            ("S4", 24),
            ("S5", 120),
            ("S6", 720),
            ("S7", 5040),
            ("A4", 12),
            ("A5", 60),
            ("A6", 360),
            ("A7", 2520),
            ("D4", 8),
            ("D5", 10),
            ("D6", 12),
            ("D7", 14),
            ("F20", 20),
            ("F21", 21),
            ("F42", 42),
            ("PSL(3,2)", 168),
            ("PSL(2,5)", 60),
            ("PGL(2,5)", 120),
            ("S3-regular", 6),
            ("S4-pairs", 24),
            ("A4-pairs", 12),
        ];
        let corpus = transitive_corpus();
        assert_eq!(corpus.len(), expected.len());
        for ((name, a), &(ename, order)) in corpus.iter().zip(expected) {
            assert_eq!(*name, ename);
            let by_enumeration = enumerate_elements(a, 10_000).unwrap().len() as u64;
            let by_chain = StabilizerChain::build(a).order() as u64;
            assert_eq!(by_enumeration, order, "{name} enumeration");
            assert_eq!(by_chain, order, "{name} chain");
        }
    }

    #[test]
    fn corpus_actions_are_transitive() {
        for (name, a) in transitive_corpus() {
            assert_eq!(orbit(&a, 0).len(), a.degree(), "{name}");
        }
    }

    #[test]
    fn graph_class_counts_match_the_census() {
        let per_size: Vec<usize> = (1..=6).map(|n| graph_classes(n).len()).collect();
        assert_eq!(per_size, vec![1, 2, 4, 11, 34, 156]);
        assert_eq!(graphs_up_to_6_vertices().len(), 208);
    }

    #[test]
    fn graph_classes_include_extremes() {
        for n in 1..=6 {
            let classes = graph_classes(n);
            assert!(classes.iter().any(|g| g.edge_count() == 0));
            assert!(classes.iter().any(|g| g.edge_count() == n * (n - 1) / 2));
        }
    }

    #[test]
    fn pair_action_of_s5_is_the_petersen_symmetry() {
        // S5 on 2-subsets of {0..4} is exactly the automorphism action of the
        // Kneser graph K(5,2)
        let induced = pair_action(&symmetric(5));
        assert_eq!(induced.degree(), 10);
        let g = petersen();
        for gen in induced.generators() {
            assert!(g.is_automorphism(gen));
        }
        assert_eq!(StabilizerChain::build(&induced).order(), 120);
    }
}
