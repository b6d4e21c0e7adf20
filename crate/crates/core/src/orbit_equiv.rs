//! Orbits on k-subsets and on the whole power set, strong orbit-equivalence
//! of two actions, minimality witnesses for subgroups, and the windowed
//! dense-subgroup sampler for countable streams.

use crate::error::{Error, Result};
use crate::perm::{enumerate_elements, FiniteAction, Permutation};
use crate::stream::{EnumeratedElement, GroupStream, StreamPoint};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Power-set orbit computations index all 2^n masks; beyond this degree the
/// tables no longer fit comfortably.
pub const MAX_POWER_SET_DEGREE: usize = 20;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<u64>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

fn image_mask(p: &Permutation, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << p.apply(i);
    }
    out
}

fn mask_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn format_subset(mask: u64) -> String {
    let parts: Vec<String> = mask_points(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Orbit partition of the k-subsets of the domain (k = `None` means the
/// whole power set), classes as bitmask-encoded subsets.
#[derive(Clone, Debug)]
pub struct SubsetOrbitPartition {
    pub degree: usize,
    pub subset_size: Option<usize>,
    /// Classes ordered by least mask; masks ascending within a class.
    pub classes: Vec<Vec<u64>>,
}

impl fmt::Display for SubsetOrbitPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, class) in self.classes.iter().enumerate() {
            let subsets: Vec<String> = class.iter().map(|&m| format_subset(m)).collect();
            writeln!(f, "class {id}: {}", subsets.join(" "))?;
        }
        Ok(())
    }
}

fn classes_from_components(masks: &[u64], uf: &mut UnionFind) -> Vec<Vec<u64>> {
    let mut by_root: HashMap<usize, Vec<u64>> = HashMap::new();
    for (i, &m) in masks.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(m);
    }
    let mut classes: Vec<Vec<u64>> = by_root.into_values().collect();
    for class in &mut classes {
        class.sort_unstable();
    }
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut out: u128 = 1;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Orbits of the action on k-element subsets, merged by generator closure.
pub fn subset_orbits(action: &FiniteAction, k: usize, cap: u64) -> Result<SubsetOrbitPartition> {
    let n = action.degree();
    if n > 63 {
        return Err(Error::UnsupportedDegree { got: n, max: 63 });
    }
    if k > n {
        return Ok(SubsetOrbitPartition { degree: n, subset_size: Some(k), classes: Vec::new() });
    }
    let count = binomial(n, k);
    if count > cap as u128 {
        return Err(Error::TooManySubsets { count, cap });
    }
    let mut masks: Vec<u64> = Vec::with_capacity(count as usize);
    if k == 0 {
        masks.push(0);
    } else {
        let mut mask: u64 = (1 << k) - 1;
        while mask < 1 << n {
            masks.push(mask);
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut uf = UnionFind::new(masks.len());
    for g in action.generators() {
        for (i, &m) in masks.iter().enumerate() {
            uf.union(i, index[&image_mask(g, m)]);
        }
    }
    Ok(SubsetOrbitPartition {
        degree: n,
        subset_size: Some(k),
        classes: classes_from_components(&masks, &mut uf),
    })
}

fn power_set_guard(n: usize, cap: u64) -> Result<()> {
    if n > MAX_POWER_SET_DEGREE || 1u128 << n > cap as u128 {
        return Err(Error::TooManySubsets { count: 1u128 << n, cap });
    }
    Ok(())
}

fn power_set_union_find(action: &FiniteAction) -> UnionFind {
    let n = action.degree();
    let mut uf = UnionFind::new(1 << n);
    for g in action.generators() {
        for mask in 0..1u64 << n {
            uf.union(mask as usize, image_mask(g, mask) as usize);
        }
    }
    uf
}

/// Orbits of the action on the entire power set.
pub fn power_set_orbits(action: &FiniteAction, cap: u64) -> Result<SubsetOrbitPartition> {
    let n = action.degree();
    power_set_guard(n, cap)?;
    let masks: Vec<u64> = (0..1u64 << n).collect();
    let mut uf = power_set_union_find(action);
    Ok(SubsetOrbitPartition {
        degree: n,
        subset_size: None,
        classes: classes_from_components(&masks, &mut uf),
    })
}

/// Least mask of each power-set component, indexed by mask.
fn canonical_reps(action: &FiniteAction) -> Vec<u64> {
    let n = action.degree();
    let mut uf = power_set_union_find(action);
    let mut least: Vec<u64> = vec![u64::MAX; 1 << n];
    for mask in 0..1u64 << n {
        let root = uf.find(mask as usize);
        least[root] = least[root].min(mask);
    }
    (0..1u64 << n).map(|mask| least[uf.find(mask as usize)]).collect()
}

/// Whether two same-degree actions have identical orbits on every subset of
/// the domain.
pub fn strongly_orbit_equivalent(a: &FiniteAction, b: &FiniteAction, cap: u64) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    power_set_guard(a.degree(), cap)?;
    Ok(canonical_reps(a) == canonical_reps(b))
}

/// A subset whose orbits under the two groups differ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OeWitness {
    pub subset: Vec<usize>,
    pub a_orbit_size: u64,
    pub b_orbit_size: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OeOutcome {
    Witness(OeWitness),
    NoWitness,
}

/// For a subgroup `b` of `a` (given by generators, each validated against
/// the enumerated parent), find a subset with different orbits under the two
/// groups. A subset with trivial setwise stabilizer in `a` is tried first:
/// its a-orbit has full group size, so it is a witness exactly when the
/// orders differ. `NoWitness` means the two actions are strongly
/// orbit-equivalent.
pub fn strong_oe_witness(a: &FiniteAction, b: &FiniteAction, cap: u64) -> Result<OeOutcome> {
    let n = a.degree();
    if n != b.degree() {
        return Err(Error::DegreeMismatch { left: n, right: b.degree() });
    }
    power_set_guard(n, cap)?;
    let elements = enumerate_elements(a, cap)?;
    let parent: HashSet<&Permutation> = elements.iter().collect();
    for (index, g) in b.generators().iter().enumerate() {
        if !parent.contains(g) {
            return Err(Error::NotASubgroup { index });
        }
    }
    let mut uf_a = power_set_union_find(a);
    let mut uf_b = power_set_union_find(b);
    fn orbit_sizes(mask: u64, uf_a: &mut UnionFind, uf_b: &mut UnionFind) -> (u64, u64) {
        let ra = uf_a.find(mask as usize);
        let rb = uf_b.find(mask as usize);
        (uf_a.size[ra], uf_b.size[rb])
    }
    let witness = |mask: u64, a_orbit_size: u64, b_orbit_size: u64| {
        OeOutcome::Witness(OeWitness { subset: mask_points(mask), a_orbit_size, b_orbit_size })
    };
    if let Some(points) = find_2_distinguishing_subset_quiet(a, cap)? {
        let mask = points.iter().fold(0u64, |m, &i| m | 1 << i);
        let (sa, sb) = orbit_sizes(mask, &mut uf_a, &mut uf_b);
        if sa != sb {
            return Ok(witness(mask, sa, sb));
        }
    }
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    for mask in masks {
        let (sa, sb) = orbit_sizes(mask, &mut uf_a, &mut uf_b);
        if sa != sb {
            return Ok(witness(mask, sa, sb));
        }
    }
    Ok(OeOutcome::NoWitness)
}

fn find_2_distinguishing_subset_quiet(
    action: &FiniteAction,
    cap: u64,
) -> Result<Option<Vec<usize>>> {
    // the power-set guard has already bounded the subset count, so no
    // separate search budget applies here
    crate::distinguish::find_2_distinguishing_subset(action, cap, u64::MAX)
}

/// One window-level partial map realized by a scanned element.
#[derive(Clone, Debug)]
pub struct RealizedPair {
    /// Points of the subset, in window enumeration order.
    pub points: Vec<StreamPoint>,
    /// Their images under the representative, aligned with `points`.
    pub images: Vec<StreamPoint>,
    pub witness: EnumeratedElement,
}

/// Windowed sample of a dense set of generators: representatives realizing
/// every in-window subset-to-image pair seen among the scanned elements.
#[derive(Clone, Debug)]
pub struct DenseSample {
    pub radius: i64,
    pub max_subset_size: usize,
    /// Elements scanned (exactly the budget).
    pub scanned: usize,
    /// Distinct pairs whose image left the window; resolving them needs a
    /// larger radius.
    pub deferred: usize,
    pub pairs: Vec<RealizedPair>,
    /// Deduplicated representatives in order of first use.
    pub generators: Vec<EnumeratedElement>,
}

fn size_then_position_subsets(window_len: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=max_size.min(window_len) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            out.push(combo.clone());
            let mut pos = k;
            loop {
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
                pos -= 1;
                if combo[pos] < window_len - (k - pos) {
                    combo[pos] += 1;
                    for later in pos + 1..k {
                        combo[later] = combo[later - 1] + 1;
                    }
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Scan the first `budget` enumerated elements; for every subset Y of the
/// radius-`radius` window with |Y| ≤ `max_subset_size` and every scanned
/// element whose image of Y stays inside the window, record the first
/// element realizing that (Y, image) pair. Pairs whose image exits the
/// window are counted as deferred.
pub fn sample_dense_generators(
    stream: &GroupStream,
    radius: i64,
    max_subset_size: usize,
    budget: usize,
) -> Result<DenseSample> {
    let window = stream.window(radius);
    let inside: HashSet<StreamPoint> = window.iter().copied().collect();
    let subsets = size_then_position_subsets(window.len(), max_subset_size);
    let mut seen: HashSet<(Vec<StreamPoint>, Vec<StreamPoint>)> = HashSet::new();
    let mut exited: HashSet<(Vec<StreamPoint>, Vec<StreamPoint>)> = HashSet::new();
    let mut pairs: Vec<RealizedPair> = Vec::new();
    let mut generators: Vec<EnumeratedElement> = Vec::new();
    for element in stream.elements_with_identity(budget) {
        let mut used = false;
        for subset in &subsets {
            let points: Vec<StreamPoint> = subset.iter().map(|&i| window[i]).collect();
            let images: Vec<StreamPoint> =
                points.iter().map(|&p| element.element.apply(p)).collect();
            if images.iter().any(|q| !inside.contains(q)) {
                exited.insert((points, images));
                continue;
            }
            if seen.insert((points.clone(), images.clone())) {
                pairs.push(RealizedPair { points, images, witness: element.clone() });
                used = true;
            }
        }
        if used {
            generators.push(element);
        }
    }
    Ok(DenseSample {
        radius,
        max_subset_size,
        scanned: budget,
        deferred: exited.len(),
        pairs,
        generators,
    })
}
