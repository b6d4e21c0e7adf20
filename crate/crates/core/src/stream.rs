//! Lazily enumerated countable group actions queried through finite windows.
//!
//! A stream names one of a fixed registry of families. Each family supplies a
//! deterministic enumeration of its countable ground set, a deterministic
//! enumeration `a_1, a_2, …` of its distinct nonidentity elements (word-length
//! BFS over the generator alphabet with normal-form deduplication; within a
//! length, words in lexicographic letter order, the first word reaching a
//! normal form claiming it), and exact pointwise evaluation. All queries about
//! the action go through finite windows: the points at distance at most R from
//! the enumeration origin.

use crate::error::{Error, Result};
use crate::ex41::{signed_spiral, Ex41Element, PairVertex};
use std::collections::{HashMap, HashSet};
use std::fmt;

pub const FAMILY_NAMES: [&str; 4] = ["z-translate", "inf-dihedral", "ex41-B", "ex41-A"];

/// Registry of built-in countable actions.
///
/// * `z-translate`: ℤ acting on ℤ by translations, generated by `t: x↦x+1`.
/// * `inf-dihedral`: the infinite dihedral group on ℤ, generators `t` and the
///   reflection `r: x↦−x`.
/// * `ex41-B`: the group generated by `b` (shift), `c` (reflection), `d`
///   (swap x/y at square indices) on the vertices `x_i, y_i`.
/// * `ex41-A`: `ex41-B` together with the single swap `s0`; its motion is 2,
///   so infinite motion is not asserted for it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    ZTranslate,
    InfDihedral,
    Ex41B,
    Ex41A,
}

impl Family {
    pub fn by_name(name: &str) -> Result<Family> {
        match name {
            "z-translate" => Ok(Family::ZTranslate),
            "inf-dihedral" => Ok(Family::InfDihedral),
            "ex41-B" => Ok(Family::Ex41B),
            "ex41-A" => Ok(Family::Ex41A),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::ZTranslate => "z-translate",
            Family::InfDihedral => "inf-dihedral",
            Family::Ex41B => "ex41-B",
            Family::Ex41A => "ex41-A",
        }
    }

    fn on_line(self) -> bool {
        matches!(self, Family::ZTranslate | Family::InfDihedral)
    }
}

/// A point of a stream's ground set: an integer for the ℤ-families, an
/// `x_i`/`y_i` vertex for the ex41 families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum StreamPoint {
    Line(i64),
    Pair(PairVertex),
}

impl fmt::Display for StreamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamPoint::Line(i) => write!(f, "{i}"),
            StreamPoint::Pair(v) => write!(f, "{v}"),
        }
    }
}

/// An affine map `x ↦ εx + k` of the line (ε = −1 when `negate`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LineMap {
    pub negate: bool,
    pub shift: i64,
}

impl LineMap {
    pub fn identity() -> Self {
        LineMap { negate: false, shift: 0 }
    }

    pub fn is_identity(&self) -> bool {
        !self.negate && self.shift == 0
    }

    pub fn apply(&self, x: i64) -> i64 {
        (if self.negate { -x } else { x }) + self.shift
    }

    /// `self ∘ other` (apply `other` first).
    pub fn multiply(&self, other: &LineMap) -> LineMap {
        LineMap {
            negate: self.negate ^ other.negate,
            shift: self.shift + if self.negate { -other.shift } else { other.shift },
        }
    }

    pub fn inverse(&self) -> LineMap {
        LineMap {
            negate: self.negate,
            shift: if self.negate { self.shift } else { -self.shift },
        }
    }
}

impl fmt::Display for LineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut parts = Vec::new();
        if self.shift == 1 {
            parts.push("t".to_string());
        } else if self.shift != 0 {
            parts.push(format!("t^{}", self.shift));
        }
        if self.negate {
            parts.push("r".to_string());
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A group element of a stream, in family normal form. Applying or composing
/// elements of different kinds is a caller bug and panics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum StreamElement {
    Line(LineMap),
    Pair(Ex41Element),
}

impl StreamElement {
    pub fn is_identity(&self) -> bool {
        match self {
            StreamElement::Line(m) => m.is_identity(),
            StreamElement::Pair(e) => e.is_identity(),
        }
    }

    pub fn apply(&self, p: StreamPoint) -> StreamPoint {
        match (self, p) {
            (StreamElement::Line(m), StreamPoint::Line(x)) => StreamPoint::Line(m.apply(x)),
            (StreamElement::Pair(e), StreamPoint::Pair(v)) => StreamPoint::Pair(e.apply(v)),
            _ => panic!("stream element applied to a point of another family"),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn multiply(&self, other: &StreamElement) -> StreamElement {
        match (self, other) {
            (StreamElement::Line(p), StreamElement::Line(q)) => {
                StreamElement::Line(p.multiply(q))
            }
            (StreamElement::Pair(p), StreamElement::Pair(q)) => {
                StreamElement::Pair(p.multiply(q))
            }
            _ => panic!("stream elements of different families composed"),
        }
    }

    pub fn inverse(&self) -> StreamElement {
        match self {
            StreamElement::Line(m) => StreamElement::Line(m.inverse()),
            StreamElement::Pair(e) => StreamElement::Pair(e.inverse()),
        }
    }
}

impl fmt::Display for StreamElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamElement::Line(m) => write!(f, "{m}"),
            StreamElement::Pair(e) => write!(f, "{e}"),
        }
    }
}

/// An element together with its position in the enumeration (1-based; the
/// identity is not enumerated) and a shortest generator word producing it,
/// rightmost letter applied first.
#[derive(Clone, Debug)]
pub struct EnumeratedElement {
    pub index: usize,
    pub element: StreamElement,
    pub word: String,
}

struct Letter {
    base: &'static str,
    exp: i64,
    element: StreamElement,
}

struct Entry {
    element: StreamElement,
    prev: usize,
    letter: usize,
}

struct Enumeration {
    entries: Vec<Entry>,
    letters: Vec<Letter>,
}

impl Enumeration {
    /// Entries `1..` are the nonidentity elements `a_1, a_2, …`.
    fn build(letters: Vec<Letter>, identity: StreamElement, count: usize) -> Enumeration {
        let mut entries = vec![Entry { element: identity.clone(), prev: 0, letter: usize::MAX }];
        let mut seen: HashSet<StreamElement> = HashSet::from([identity]);
        let mut level = vec![0usize];
        'grow: while entries.len() <= count && !level.is_empty() {
            let mut next = Vec::new();
            for &ei in &level {
                for (li, letter) in letters.iter().enumerate() {
                    let product = entries[ei].element.multiply(&letter.element);
                    if seen.insert(product.clone()) {
                        next.push(entries.len());
                        entries.push(Entry { element: product, prev: ei, letter: li });
                        if entries.len() > count {
                            break 'grow;
                        }
                    }
                }
            }
            level = next;
        }
        Enumeration { entries, letters }
    }

    fn len(&self) -> usize {
        self.entries.len() - 1
    }

    fn element(&self, index: usize) -> &StreamElement {
        &self.entries[index].element
    }

    fn word(&self, index: usize) -> String {
        let mut letters = Vec::new();
        let mut at = index;
        while at != 0 {
            letters.push(self.entries[at].letter);
            at = self.entries[at].prev;
        }
        letters.reverse();
        // run-compress repeated bases: t*t*t → t^3
        let mut runs: Vec<(&'static str, i64)> = Vec::new();
        for li in letters {
            let l = &self.letters[li];
            match runs.last_mut() {
                Some((base, exp)) if *base == l.base => *exp += l.exp,
                _ => runs.push((l.base, l.exp)),
            }
        }
        let parts: Vec<String> = runs
            .iter()
            .filter(|&&(_, exp)| exp != 0)
            .map(|&(base, exp)| if exp == 1 { base.to_string() } else { format!("{base}^{exp}") })
            .collect();
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.join("*")
        }
    }

    fn enumerated(&self, index: usize) -> EnumeratedElement {
        EnumeratedElement {
            index,
            element: self.element(index).clone(),
            word: self.word(index),
        }
    }
}

/// Result of comparing two elements on a window.
pub struct Agreement {
    pub radius: i64,
    /// First window point (in enumeration order) where the images differ.
    pub first_difference: Option<AgreementDifference>,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub struct AgreementDifference {
    pub point: StreamPoint,
    pub left: StreamPoint,
    pub right: StreamPoint,
}

/// A witness for `Y ∩ aZ = ∅`.
pub struct Displacement {
    pub witness: EnumeratedElement,
    /// The image `aZ`, in Z's order.
    pub image: Vec<StreamPoint>,
}

/// Per-radius outcomes of a closure membership probe.
pub struct ClosureProbe {
    pub budget: usize,
    pub rounds: Vec<ProbeRound>,
}

pub struct ProbeRound {
    pub radius: i64,
    /// First enumerated element agreeing with the target on this radius, or
    /// `None` when none of the first `budget` elements does.
    pub witness: Option<EnumeratedElement>,
}

impl ClosureProbe {
    pub fn all_found(&self) -> bool {
        self.rounds.iter().all(|r| r.witness.is_some())
    }
}

pub struct GroupStream {
    family: Family,
}

impl GroupStream {
    pub fn new(family: Family) -> GroupStream {
        GroupStream { family }
    }

    pub fn by_name(name: &str) -> Result<GroupStream> {
        Ok(GroupStream::new(Family::by_name(name)?))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Whether every nonidentity element of the family moves infinitely many
    /// points. For the ℤ-families every nonidentity affine map has at most
    /// one fixed point; for ex41-B every nonidentity element has nontrivial
    /// affine part or an infinite flip set. ex41-A contains the single swap
    /// `s0` of motion 2, so the flag is off.
    pub fn infinite_motion_asserted(&self) -> bool {
        !matches!(self.family, Family::Ex41A)
    }

    /// Whether every orbit of every point stabilizer is finite (true for all
    /// registered families; for the ex41 families the stabilizer orbits are
    /// singletons and quadruples).
    pub fn subdegree_finite_asserted(&self) -> bool {
        true
    }

    /// The i-th point of the ground-set enumeration: `0, 1, −1, 2, −2, …`
    /// for the ℤ-families, `x_0, y_0, x_1, y_1, x_{−1}, y_{−1}, …` for the
    /// ex41 families.
    pub fn point(&self, i: usize) -> StreamPoint {
        fn spiral(m: usize) -> i64 {
            if m == 0 {
                0
            } else if m % 2 == 1 {
                ((m + 1) / 2) as i64
            } else {
                -((m / 2) as i64)
            }
        }
        if self.family.on_line() {
            StreamPoint::Line(spiral(i))
        } else {
            let index = spiral(i / 2);
            StreamPoint::Pair(if i % 2 == 0 {
                PairVertex::x(index)
            } else {
                PairVertex::y(index)
            })
        }
    }

    /// Window of radius R: all points with |index| ≤ R, in enumeration order
    /// (a prefix of the point enumeration).
    pub fn window(&self, radius: i64) -> Vec<StreamPoint> {
        if self.family.on_line() {
            signed_spiral(radius).map(StreamPoint::Line).collect()
        } else {
            Ex41Element::window_points(radius)
                .into_iter()
                .map(StreamPoint::Pair)
                .collect()
        }
    }

    pub fn identity(&self) -> StreamElement {
        if self.family.on_line() {
            StreamElement::Line(LineMap::identity())
        } else {
            StreamElement::Pair(Ex41Element::identity())
        }
    }

    fn letters(&self) -> Vec<Letter> {
        let t = |shift| StreamElement::Line(LineMap { negate: false, shift });
        let r = StreamElement::Line(LineMap { negate: true, shift: 0 });
        match self.family {
            Family::ZTranslate => vec![
                Letter { base: "t", exp: 1, element: t(1) },
                Letter { base: "t", exp: -1, element: t(-1) },
            ],
            Family::InfDihedral => vec![
                Letter { base: "t", exp: 1, element: t(1) },
                Letter { base: "t", exp: -1, element: t(-1) },
                Letter { base: "r", exp: 1, element: r },
            ],
            Family::Ex41B => vec![
                Letter { base: "b", exp: 1, element: StreamElement::Pair(Ex41Element::b()) },
                Letter { base: "b", exp: -1, element: StreamElement::Pair(Ex41Element::b().inverse()) },
                Letter { base: "c", exp: 1, element: StreamElement::Pair(Ex41Element::c()) },
                Letter { base: "d", exp: 1, element: StreamElement::Pair(Ex41Element::d()) },
            ],
            Family::Ex41A => vec![
                Letter { base: "b", exp: 1, element: StreamElement::Pair(Ex41Element::b()) },
                Letter { base: "b", exp: -1, element: StreamElement::Pair(Ex41Element::b().inverse()) },
                Letter { base: "c", exp: 1, element: StreamElement::Pair(Ex41Element::c()) },
                Letter { base: "d", exp: 1, element: StreamElement::Pair(Ex41Element::d()) },
                Letter { base: "s0", exp: 1, element: StreamElement::Pair(Ex41Element::s(0)) },
            ],
        }
    }

    fn enumerate(&self, count: usize) -> Enumeration {
        Enumeration::build(self.letters(), self.identity(), count)
    }

    /// The elements `a_1 … a_count` with their words.
    pub fn elements(&self, count: usize) -> Vec<EnumeratedElement> {
        let en = self.enumerate(count);
        (1..=en.len()).map(|i| en.enumerated(i)).collect()
    }

    /// The first `count` elements of the enumeration, identity included:
    /// `a_0 = id, a_1, …, a_{count-1}`.
    pub fn elements_with_identity(&self, count: usize) -> Vec<EnumeratedElement> {
        if count == 0 {
            return Vec::new();
        }
        let en = self.enumerate(count - 1);
        (0..=en.len()).map(|i| en.enumerated(i)).collect()
    }

    /// Parse a point of this family's ground set: an integer for ℤ-families,
    /// `x<i>` or `y<i>` for the ex41 families.
    pub fn parse_point(&self, text: &str) -> Result<StreamPoint> {
        let text = text.trim();
        if self.family.on_line() {
            text.parse::<i64>()
                .map(StreamPoint::Line)
                .map_err(|_| Error::MalformedPoint(text.to_string()))
        } else {
            let (kind, rest) = text.split_at(text.len().min(1));
            let index: i64 = rest
                .parse()
                .map_err(|_| Error::MalformedPoint(text.to_string()))?;
            match kind {
                "x" => Ok(StreamPoint::Pair(PairVertex::x(index))),
                "y" => Ok(StreamPoint::Pair(PairVertex::y(index))),
                _ => Err(Error::MalformedPoint(text.to_string())),
            }
        }
    }

    /// Parse a word in the family's ambient alphabet into an element:
    /// `t`, `r` for the ℤ-families (the reflection is ambient for
    /// z-translate); `b`, `c`, `d`, `s<j>` for the ex41 families. Factors are
    /// separated by `*`, each optionally powered (`b^-9`), rightmost applied
    /// first. `id` denotes the identity.
    pub fn parse_element(&self, text: &str) -> Result<StreamElement> {
        let malformed = || Error::MalformedWord(text.to_string());
        let mut acc = self.identity();
        for token in text.split('*') {
            let token = token.trim();
            if token.is_empty() {
                return Err(malformed());
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| malformed())?),
                None => (token, 1),
            };
            let factor = if self.family.on_line() {
                match base {
                    "id" => self.identity(),
                    "t" => StreamElement::Line(LineMap { negate: false, shift: exp }),
                    "r" => StreamElement::Line(if exp.rem_euclid(2) == 1 {
                        LineMap { negate: true, shift: 0 }
                    } else {
                        LineMap::identity()
                    }),
                    _ => return Err(malformed()),
                }
            } else {
                let odd = exp.rem_euclid(2) == 1;
                match base {
                    "id" => self.identity(),
                    "b" => StreamElement::Pair(Ex41Element::b_pow(exp)),
                    "c" if odd => StreamElement::Pair(Ex41Element::c()),
                    "d" if odd => StreamElement::Pair(Ex41Element::d()),
                    "c" | "d" => self.identity(),
                    _ => match base.strip_prefix('s') {
                        Some(j) => {
                            let j: i64 = j.parse().map_err(|_| malformed())?;
                            if odd {
                                StreamElement::Pair(Ex41Element::s(j))
                            } else {
                                self.identity()
                            }
                        }
                        None => return Err(malformed()),
                    },
                }
            };
            acc = acc.multiply(&factor);
        }
        Ok(acc)
    }

    /// Compare two elements pointwise on the window.
    pub fn window_agreement(
        &self,
        left: &StreamElement,
        right: &StreamElement,
        radius: i64,
    ) -> Agreement {
        for point in self.window(radius) {
            let a = left.apply(point);
            let b = right.apply(point);
            if a != b {
                return Agreement {
                    radius,
                    first_difference: Some(AgreementDifference { point, left: a, right: b }),
                };
            }
        }
        Agreement { radius, first_difference: None }
    }

    /// First enumerated element `a` with `Y ∩ aZ = ∅`, scanning at most
    /// `budget` elements.
    pub fn find_displacing_element(
        &self,
        y: &[StreamPoint],
        z: &[StreamPoint],
        budget: usize,
    ) -> Result<Displacement> {
        let avoid: HashSet<StreamPoint> = y.iter().copied().collect();
        let en = self.enumerate(budget);
        for i in 1..=en.len() {
            let a = en.element(i);
            let image: Vec<StreamPoint> = z.iter().map(|&p| a.apply(p)).collect();
            if image.iter().all(|p| !avoid.contains(p)) {
                return Ok(Displacement { witness: en.enumerated(i), image });
            }
        }
        Err(Error::BudgetExceeded { budget: budget as u64 })
    }

    /// Orbit partition of the window under the enumerated elements fixing
    /// `point` (a lower approximation of the point-stabilizer orbits: only
    /// the first `budget` elements are consulted, and only image pairs lying
    /// inside the window are merged, so growing the budget can only merge
    /// classes). Classes are ordered by their least member in window order,
    /// members likewise.
    pub fn window_point_stabilizer_orbits(
        &self,
        point: StreamPoint,
        radius: i64,
        budget: usize,
    ) -> Vec<Vec<StreamPoint>> {
        let window = self.window(radius);
        let position: HashMap<StreamPoint, usize> =
            window.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut parent: Vec<usize> = (0..window.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        let en = self.enumerate(budget);
        for i in 1..=en.len() {
            let a = en.element(i);
            if a.apply(point) != point {
                continue;
            }
            for (vi, &v) in window.iter().enumerate() {
                if let Some(&wi) = position.get(&a.apply(v)) {
                    let (r1, r2) = (find(&mut parent, vi), find(&mut parent, wi));
                    if r1 != r2 {
                        parent[r1.max(r2)] = r1.min(r2);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<StreamPoint>> = vec![Vec::new(); window.len()];
        for (vi, &v) in window.iter().enumerate() {
            let root = find(&mut parent, vi);
            classes[root].push(v);
        }
        classes.retain(|c| !c.is_empty());
        classes
    }

    /// For each radius, the first enumerated element agreeing with `target`
    /// on that radius, among the first `budget` elements. A fully successful
    /// report is finite evidence that `target` lies in the closure of this
    /// stream's group.
    pub fn closure_membership_probe(
        &self,
        target: &StreamElement,
        radii: &[i64],
        budget: usize,
    ) -> ClosureProbe {
        let en = self.enumerate(budget);
        let rounds = radii
            .iter()
            .map(|&radius| {
                let witness = (1..=en.len())
                    .find(|&i| {
                        self.window_agreement(en.element(i), target, radius).agrees()
                    })
                    .map(|i| en.enumerated(i));
                ProbeRound { radius, witness }
            })
            .collect();
        ClosureProbe { budget, rounds }
    }
}
