//! Permutations of finite ground sets and finitely generated permutation groups.
//!
//! Points are always `0..n-1`. Element enumeration is breadth-first by word
//! length over the generators with lexicographic (image-sequence) tie-break
//! inside each length class, so every downstream search is reproducible.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashSet};
use std::fmt;

/// Default cap for element enumeration and search loops.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// A bijection of `{0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `n` points.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "degree must be positive");
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image sequence.
    ///
    /// Panics if the sequence is not a bijection of `{0..len-1}`; validated
    /// construction from text goes through [`parse_permutation`].
    pub fn from_images(images: Vec<usize>) -> Self {
        assert!(!images.is_empty(), "degree must be positive");
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "image sequence is not a bijection");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Composition applying `other` first: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i != im)
            .map(|(i, _)| i)
            .collect()
    }

    /// `m(a) = |supp(a)|`.
    pub fn motion(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i != im)
            .count()
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut count = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
            }
        }
        count
    }

    /// Nontrivial cycles in canonical form: each cycle starts at its least
    /// point, cycles ordered by starting point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses disjoint cycle notation over `0..degree-1`; `()` is the identity.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 {
        return Err(Error::MalformedCycles("degree must be positive".into()));
    }
    let bad = |msg: &str| Error::MalformedCycles(msg.to_string());
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty input"));
    }
    let mut any_cycle = false;
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(bad("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &rest[1..close];
        if body.contains('(') {
            return Err(bad("nested '('"));
        }
        let mut cycle = Vec::new();
        for token in body.split_whitespace() {
            let point: usize = token
                .parse()
                .map_err(|_| bad(&format!("bad point token {token:?}")))?;
            if point >= degree {
                return Err(bad(&format!("point {point} out of range for degree {degree}")));
            }
            if used[point] {
                return Err(bad(&format!("point {point} repeated")));
            }
            used[point] = true;
            cycle.push(point);
        }
        for (i, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(i + 1) % cycle.len()];
        }
        any_cycle = true;
        rest = rest[close + 1..].trim_start();
    }
    if !any_cycle {
        return Err(bad("no cycles found"));
    }
    Ok(Permutation { images })
}

/// A group given by generators acting on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    degree: usize,
    generators: Vec<Permutation>,
}

impl FiniteAction {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(FiniteAction { degree, generators })
    }

    /// The trivial group on `n` points.
    pub fn trivial(degree: usize) -> Self {
        FiniteAction {
            degree,
            generators: vec![Permutation::identity(degree)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }
}

/// Reads the `permgroup` file format:
/// `permgroup <n>` on the first line, then `gen <cycles>` lines;
/// `#` starts a comment. Files with no `gen` lines are rejected.
pub fn parse_group_file(text: &str) -> Result<FiniteAction> {
    let bad = |msg: String| Error::MalformedGroupFile(msg);
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if degree.is_none() {
            let rest = line
                .strip_prefix("permgroup")
                .ok_or_else(|| bad(format!("line {}: expected `permgroup <n>`", lineno + 1)))?;
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| bad(format!("line {}: bad degree", lineno + 1)))?;
            if n == 0 {
                return Err(bad(format!("line {}: degree must be positive", lineno + 1)));
            }
            degree = Some(n);
        } else if let Some(rest) = line.strip_prefix("gen") {
            let n = degree.unwrap();
            generators.push(parse_permutation(rest.trim(), n).map_err(|e| match e {
                Error::MalformedCycles(msg) => bad(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?);
        } else {
            return Err(bad(format!("line {}: unrecognized line", lineno + 1)));
        }
    }
    let degree = degree.ok_or_else(|| bad("missing `permgroup <n>` header".into()))?;
    if generators.is_empty() {
        return Err(bad("no `gen` lines".into()));
    }
    FiniteAction::new(degree, generators)
}

/// All elements of the generated group in canonical order: breadth-first by
/// word length over the generators, lexicographic image-sequence tie-break
/// within each length class. Errors once more than `cap` elements exist.
pub fn enumerate_elements(action: &FiniteAction, cap: u64) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(action.degree());
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in action.generators() {
                let p = e.compose(g);
                if seen.insert(p.clone()) {
                    if seen.len() as u64 > cap {
                        return Err(Error::OrderExceedsCap {
                            order_at_least: seen.len() as u64,
                            cap,
                        });
                    }
                    next.push(p);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// The orbit of `point` under the generated group.
pub fn orbit(action: &FiniteAction, point: usize) -> BTreeSet<usize> {
    assert!(point < action.degree());
    let mut out = BTreeSet::new();
    let mut stack = vec![point];
    out.insert(point);
    while let Some(p) = stack.pop() {
        for g in action.generators() {
            let q = g.apply(p);
            if out.insert(q) {
                stack.push(q);
            }
        }
    }
    out
}

/// Greedily extracts a small generating sequence from a subgroup given as its
/// full (deduplicated) element list. Deterministic: candidates are taken in
/// the order supplied.
fn reduce_generators(elements: &[Permutation], degree: usize) -> Vec<Permutation> {
    let target = elements.len();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure: HashSet<Permutation> = HashSet::new();
    closure.insert(Permutation::identity(degree));
    for e in elements {
        if closure.len() == target {
            break;
        }
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // rebuild the closure under the enlarged generating set
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

/// Generators of the stabilizer `{a : a(point) = point}`.
pub fn point_stabilizer(action: &FiniteAction, point: usize, cap: u64) -> Result<FiniteAction> {
    assert!(point < action.degree());
    let elements = enumerate_elements(action, cap)?;
    let stab: Vec<Permutation> = elements
        .into_iter()
        .filter(|p| p.apply(point) == point)
        .collect();
    let gens = reduce_generators(&stab, action.degree());
    if gens.is_empty() {
        Ok(FiniteAction::trivial(action.degree()))
    } else {
        FiniteAction::new(action.degree(), gens)
    }
}

/// Order of `{a : a(subset) = subset}` (setwise).
pub fn setwise_stabilizer_order(action: &FiniteAction, subset: &BTreeSet<usize>, cap: u64) -> Result<u64> {
    debug_assert!(subset.iter().all(|&p| p < action.degree()));
    let elements = enumerate_elements(action, cap)?;
    let mut count = 0;
    for a in &elements {
        let image: BTreeSet<usize> = subset.iter().map(|&p| a.apply(p)).collect();
        if image == *subset {
            count += 1;
        }
    }
    Ok(count)
}
