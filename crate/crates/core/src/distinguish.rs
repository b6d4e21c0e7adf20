//! Motion, the Motion Lemma certificate, exact distinguishing numbers,
//! 2-distinguishing subsets and minimal bases for finite actions, and the
//! greedy disjoint-pair coloring for countable streams.

use crate::error::{Error, Result};
use crate::perm::{enumerate_elements, FiniteAction, Permutation};
use crate::stream::{EnumeratedElement, GroupStream, StreamPoint};
use num::BigUint;
use std::collections::HashSet;
use std::fmt;

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;
pub const DEFAULT_POINT_SCAN_BOUND: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// 2^m ≥ |A|², hence the distinguishing number is exactly 2
    /// (for |A| ≥ 2).
    Certified2,
    /// The bound does not apply; nothing is claimed about D.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct MotionReport {
    pub group_order: u64,
    /// Minimal motion m(A) over nonidentity elements.
    pub motion: usize,
    /// First enumerated element attaining it.
    pub witness: Permutation,
    /// Present only when produced by the certifier.
    pub verdict: Option<Verdict>,
}

impl MotionReport {
    /// The Motion Lemma threshold 2·log₂|A|, for display; the certification
    /// decision itself is made in exact integer arithmetic.
    pub fn log_bound(&self) -> f64 {
        2.0 * (self.group_order as f64).log2()
    }
}

fn motion_fields(action: &FiniteAction, cap: u64) -> Result<(u64, usize, Permutation)> {
    let elements = enumerate_elements(action, cap)?;
    if elements.len() < 2 {
        return Err(Error::TrivialGroup);
    }
    let witness = elements
        .iter()
        .filter(|p| !p.is_identity())
        .min_by_key(|p| p.motion())
        .cloned()
        .unwrap();
    Ok((elements.len() as u64, witness.motion(), witness))
}

/// Exact minimal motion of a nontrivial finite action.
pub fn motion(action: &FiniteAction, cap: u64) -> Result<MotionReport> {
    let (group_order, motion, witness) = motion_fields(action, cap)?;
    Ok(MotionReport { group_order, motion, witness, verdict: None })
}

fn bound_holds(motion: usize, order: u64) -> bool {
    // 2^m ≥ |A|², exactly
    motion >= 128 || (1u128 << motion) >= (order as u128).pow(2)
}

/// Motion Lemma certificate: verdict `Certified2` iff 2^{m(A)} ≥ |A|². The
/// lemma is one-directional; `Inconclusive` never claims D > 2.
pub fn motion_lemma_certify(action: &FiniteAction, cap: u64) -> Result<MotionReport> {
    let (group_order, motion, witness) = motion_fields(action, cap)?;
    let verdict = if bound_holds(motion, group_order) {
        Verdict::Certified2
    } else {
        Verdict::Inconclusive
    };
    Ok(MotionReport { group_order, motion, witness, verdict: Some(verdict) })
}

/// Number of 2-colorings preserved by a permutation: 2^c where c counts
/// cycles including fixed points.
pub fn count_preserved_colorings(p: &Permutation) -> BigUint {
    BigUint::from(1u32) << p.cycle_count()
}

/// A d-coloring of the points 0..n−1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    digits: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    pub fn new(digits: Vec<usize>, num_colors: usize) -> Result<Coloring> {
        if num_colors == 0 {
            return Err(Error::MalformedColoring("zero colors".into()));
        }
        if let Some(&bad) = digits.iter().find(|&&c| c >= num_colors) {
            return Err(Error::MalformedColoring(format!(
                "color {bad} out of range for {num_colors} colors"
            )));
        }
        Ok(Coloring { digits, num_colors })
    }

    /// Parse `010010` (single digits) or `0,1,11,2` (comma-separated); the
    /// palette size is taken as one more than the largest color used.
    pub fn parse(text: &str) -> Result<Coloring> {
        let text = text.trim();
        let malformed = || Error::MalformedColoring(text.to_string());
        let digits: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse().map_err(|_| malformed()))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(malformed))
                .collect::<Result<_>>()?
        };
        if digits.is_empty() {
            return Err(malformed());
        }
        let num_colors = digits.iter().max().unwrap() + 1;
        Coloring::new(digits, num_colors)
    }

    pub fn degree(&self) -> usize {
        self.digits.len()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// For a 2-coloring, the set of points colored 1.
    pub fn black_set(&self) -> Vec<usize> {
        (0..self.digits.len()).filter(|&i| self.digits[i] == 1).collect()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num_colors <= 10 {
            for &d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Order of the subgroup preserving the coloring; 1 means distinguishing.
pub fn verify_coloring(action: &FiniteAction, coloring: &Coloring, cap: u64) -> Result<u64> {
    if coloring.degree() != action.degree() {
        return Err(Error::DegreeMismatch {
            left: action.degree(),
            right: coloring.degree(),
        });
    }
    let elements = enumerate_elements(action, cap)?;
    let c = coloring.digits();
    Ok(elements
        .iter()
        .filter(|p| (0..c.len()).all(|i| c[p.apply(i)] == c[i]))
        .count() as u64)
}

struct ColoringSearch {
    n: usize,
    d: usize,
    images: Vec<Vec<usize>>,
    preimages: Vec<Vec<usize>>,
    /// Per point, the nonidentity elements whose support contains it.
    touching: Vec<Vec<usize>>,
    support_left: Vec<usize>,
    alive: Vec<bool>,
    alive_count: usize,
    colors: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl ColoringSearch {
    /// Lexicographically least distinguishing d-coloring, if any.
    fn run(&mut self, v: usize) -> Result<Option<Vec<usize>>> {
        if v == self.n {
            return Ok(if self.alive_count == 0 { Some(self.colors.clone()) } else { None });
        }
        for color in 0..self.d {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded { budget: self.budget });
            }
            self.colors[v] = color;
            // kill elements newly in conflict: a pair (i, a(i)) with both
            // endpoints colored differently rules a out
            let mut killed = Vec::new();
            for e in 0..self.images.len() {
                if !self.alive[e] {
                    continue;
                }
                let image = self.images[e][v];
                let preimage = self.preimages[e][v];
                let conflict = (self.colors[image] != UNSET && self.colors[image] != color)
                    || (self.colors[preimage] != UNSET && self.colors[preimage] != color);
                if conflict {
                    self.alive[e] = false;
                    self.alive_count -= 1;
                    killed.push(e);
                }
            }
            for &e in &self.touching[v] {
                self.support_left[e] -= 1;
            }
            // an alive element whose whole support is now colored preserves
            // every completion of this branch
            let doomed = self.touching[v]
                .iter()
                .any(|&e| self.alive[e] && self.support_left[e] == 0);
            if !doomed {
                if let Some(witness) = self.run(v + 1)? {
                    return Ok(Some(witness));
                }
            }
            for &e in &self.touching[v] {
                self.support_left[e] += 1;
            }
            for &e in &killed {
                self.alive[e] = true;
                self.alive_count += 1;
            }
            self.colors[v] = UNSET;
        }
        Ok(None)
    }
}

/// Least d admitting a distinguishing d-coloring, with the
/// lexicographically least witness. Exhaustive backtracking over colorings;
/// `budget` bounds color assignments examined across the whole call.
pub fn distinguishing_number(
    action: &FiniteAction,
    cap: u64,
    budget: u64,
) -> Result<(usize, Coloring)> {
    let n = action.degree();
    let elements = enumerate_elements(action, cap)?;
    let nonidentity: Vec<&Permutation> = elements.iter().filter(|p| !p.is_identity()).collect();
    let images: Vec<Vec<usize>> = nonidentity.iter().map(|p| p.images().to_vec()).collect();
    let preimages: Vec<Vec<usize>> = nonidentity
        .iter()
        .map(|p| {
            let mut pre = vec![0; n];
            for i in 0..n {
                pre[p.apply(i)] = i;
            }
            pre
        })
        .collect();
    let mut touching = vec![Vec::new(); n];
    for (e, p) in nonidentity.iter().enumerate() {
        for v in p.support() {
            touching[v].push(e);
        }
    }
    let mut nodes = 0;
    for d in 1..=n.max(1) {
        let mut search = ColoringSearch {
            n,
            d,
            images: images.clone(),
            preimages: preimages.clone(),
            touching: touching.clone(),
            support_left: nonidentity.iter().map(|p| p.motion()).collect(),
            alive: vec![true; nonidentity.len()],
            alive_count: nonidentity.len(),
            colors: vec![UNSET; n],
            nodes,
            budget,
        };
        let outcome = search.run(0);
        nodes = search.nodes;
        if let Some(digits) = outcome? {
            return Ok((d, Coloring::new(digits, d).unwrap()));
        }
    }
    unreachable!("the all-distinct coloring is always distinguishing")
}

/// Reference implementation: for each d, scan all dⁿ colorings in
/// lexicographic order and test every group element. Exponential; meant for
/// cross-checking the backtracking solver at small degree.
pub fn exhaustive_distinguishing_number(
    action: &FiniteAction,
    cap: u64,
) -> Result<(usize, Coloring)> {
    let n = action.degree();
    let elements = enumerate_elements(action, cap)?;
    let mut nonidentity: Vec<&Permutation> = elements.iter().filter(|p| !p.is_identity()).collect();
    // low-motion elements kill colorings fastest
    nonidentity.sort_by_key(|p| p.motion());
    for d in 1..=n.max(1) {
        let mut digits = vec![0usize; n];
        loop {
            let preserved = nonidentity
                .iter()
                .any(|p| (0..n).all(|i| digits[p.apply(i)] == digits[i]));
            if !preserved {
                return Ok((d, Coloring::new(digits, d).unwrap()));
            }
            // odometer step in lexicographic order
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < d {
                    break;
                }
                digits[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    unreachable!("the all-distinct coloring is always distinguishing")
}

/// Subset with trivial setwise stabilizer, least in (size, bitmask) order;
/// `None` when every subset has a nontrivial stabilizer. `budget` bounds
/// subsets examined. Degree is limited to 63 by the bitmask encoding.
pub fn find_2_distinguishing_subset(
    action: &FiniteAction,
    cap: u64,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = action.degree();
    if n > 63 {
        return Err(Error::UnsupportedDegree { got: n, max: 63 });
    }
    let elements = enumerate_elements(action, cap)?;
    let nonidentity: Vec<&Permutation> = elements.iter().filter(|p| !p.is_identity()).collect();
    let image_mask = |p: &Permutation, mask: u64| -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << p.apply(i);
        }
        out
    };
    let mut examined = 0u64;
    for k in 0..=n {
        let mut mask: u64 = if k == 0 { 0 } else { (1 << k) - 1 };
        loop {
            examined += 1;
            if examined > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            if !nonidentity.iter().any(|p| image_mask(p, mask) == mask) {
                let points = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                return Ok(Some(points));
            }
            if k == 0 {
                break;
            }
            // Gosper's hack: next mask with k bits
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
            if mask >= 1 << n {
                break;
            }
        }
    }
    Ok(None)
}

/// Minimum-size base (subset with trivial pointwise stabilizer), first in
/// (size, lexicographic) order. The trivial group has the empty base.
pub fn minimal_base(action: &FiniteAction, cap: u64) -> Result<Vec<usize>> {
    let n = action.degree();
    let elements = enumerate_elements(action, cap)?;
    let nonidentity: Vec<&Permutation> = elements.iter().filter(|p| !p.is_identity()).collect();
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if !nonidentity
                .iter()
                .any(|p| combo.iter().all(|&i| p.apply(i) == i))
            {
                return Ok(combo);
            }
            // next k-combination of 0..n in lexicographic order
            let mut pos = k;
            loop {
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
                pos -= 1;
                if combo[pos] < n - (k - pos) {
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
    unreachable!("fixing every point leaves only the identity")
}

/// One step of the greedy construction.
#[derive(Clone, Debug)]
pub struct GreedyStep {
    pub k: usize,
    pub element: EnumeratedElement,
    pub y: StreamPoint,
    pub image: StreamPoint,
}

/// The chosen points Y and their images Y′ = {a_k y_k}; the construction
/// guarantees Y ∩ Y′ = ∅, so coloring Y black and everything else white
/// breaks every enumerated element.
#[derive(Clone, Debug)]
pub struct GreedyTranscript {
    pub steps: Vec<GreedyStep>,
}

impl GreedyTranscript {
    pub fn black(&self) -> Vec<StreamPoint> {
        self.steps.iter().map(|s| s.y).collect()
    }

    pub fn images(&self) -> Vec<StreamPoint> {
        self.steps.iter().map(|s| s.image).collect()
    }
}

/// For k = 1..n, pick y_k as the first enumerated point that the k-th
/// enumerated element moves, subject to: y_k is none of the earlier chosen
/// points or their images, and its own image avoids the earlier chosen
/// points. Each step scans at most `point_scan_bound` points of the
/// enumeration.
pub fn greedy_infinite_coloring(
    stream: &GroupStream,
    n: usize,
    point_scan_bound: usize,
) -> Result<GreedyTranscript> {
    if !stream.infinite_motion_asserted() {
        return Err(Error::InfiniteMotionNotAsserted(stream.family().name()));
    }
    let elements = stream.elements(n);
    let mut steps: Vec<GreedyStep> = Vec::with_capacity(n);
    let mut used: HashSet<StreamPoint> = HashSet::new();
    let mut chosen: HashSet<StreamPoint> = HashSet::new();
    for (k, element) in (1..=n).zip(elements) {
        let mut found = None;
        for i in 0..point_scan_bound {
            let x = stream.point(i);
            if used.contains(&x) {
                continue;
            }
            let image = element.element.apply(x);
            if image == x || chosen.contains(&image) {
                continue;
            }
            found = Some((x, image));
            break;
        }
        let (y, image) = found.ok_or(Error::MotionEvidenceExhausted {
            step: k,
            bound: point_scan_bound,
        })?;
        used.insert(y);
        used.insert(image);
        chosen.insert(y);
        steps.push(GreedyStep { k, element, y, image });
    }
    Ok(GreedyTranscript { steps })
}
