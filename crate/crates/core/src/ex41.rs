//! Exact elements of the double-ray-times-edge product family.
//!
//! The ground set is the vertex set of the strong product of a double ray
//! with a single edge: vertices `x_i`, `y_i` for `i ∈ ℤ`, with two vertices
//! adjacent when their indices differ by at most one. Generators:
//!
//! * `b`: adds 1 to every index,
//! * `c`: negates every index,
//! * `d`: swaps `x_i ↔ y_i` exactly at the square indices `S = {i² : i ≥ 0}`
//!   (with `0 ∈ S`),
//! * `s_j`: swaps `x_j ↔ y_j` at one index only (not a word in `b,c,d`).
//!
//! An element is stored in normal form: an affine index map `i ↦ εi + k`
//! together with a flip-set expression, a mod-2 set of `(sign, offset)`
//! pairs, each denoting the infinite set `sign·S + offset`, xor-ed with a
//! finite explicit set. Distinct affine images of `S` intersect finitely
//! (j² − k² = t and j² + k² = t have finitely many solutions), so a reduced
//! expression with any pair denotes an infinite set; consequently two
//! elements act identically iff their normal forms are equal, and equality
//! is exactly decidable.

use std::collections::BTreeSet;
use std::fmt;

/// A vertex `x_i` (`y = false`) or `y_i` (`y = true`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairVertex {
    pub y: bool,
    pub index: i64,
}

impl PairVertex {
    pub fn x(index: i64) -> Self {
        PairVertex { y: false, index }
    }

    pub fn y(index: i64) -> Self {
        PairVertex { y: true, index }
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.y { "y" } else { "x" }, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ex41Element {
    /// ε = −1 when set.
    reflect: bool,
    /// k in `i ↦ εi + k`.
    shift: i64,
    /// Reduced mod-2 set of (sign, offset) pairs denoting `sign·S + offset`.
    flips: BTreeSet<(i8, i64)>,
    /// Finite explicit flip set, xor-ed on top of `flips`.
    explicit: BTreeSet<i64>,
}

impl Ex41Element {
    pub fn identity() -> Self {
        Ex41Element {
            reflect: false,
            shift: 0,
            flips: BTreeSet::new(),
            explicit: BTreeSet::new(),
        }
    }

    /// Translation by one.
    pub fn b() -> Self {
        Ex41Element {
            shift: 1,
            ..Self::identity()
        }
    }

    /// Reflection through index 0.
    pub fn c() -> Self {
        Ex41Element {
            reflect: true,
            ..Self::identity()
        }
    }

    /// Swap at every square index.
    pub fn d() -> Self {
        Ex41Element {
            flips: BTreeSet::from([(1, 0)]),
            ..Self::identity()
        }
    }

    /// Single swap `x_j ↔ y_j`; these lie outside the group generated by
    /// `b`, `c`, `d`.
    pub fn s(j: i64) -> Self {
        Ex41Element {
            explicit: BTreeSet::from([j]),
            ..Self::identity()
        }
    }

    /// `b^k` for any integer `k`.
    pub fn b_pow(k: i64) -> Self {
        Ex41Element {
            shift: k,
            ..Self::identity()
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.shift == 0 && self.flips.is_empty() && self.explicit.is_empty()
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn flip_pairs(&self) -> &BTreeSet<(i8, i64)> {
        &self.flips
    }

    pub fn explicit_flips(&self) -> &BTreeSet<i64> {
        &self.explicit
    }

    /// True iff the element lies in the subgroup generated by `b`, `c`, `d`
    /// (no explicit finite flips).
    pub fn has_no_explicit_flips(&self) -> bool {
        self.explicit.is_empty()
    }

    fn eps(&self) -> i64 {
        if self.reflect {
            -1
        } else {
            1
        }
    }

    pub fn index_image(&self, i: i64) -> i64 {
        self.eps() * i + self.shift
    }

    /// Whether the x/y coordinates are swapped at target index `j`.
    pub fn flips_at(&self, j: i64) -> bool {
        let mut parity = self.explicit.contains(&j);
        for &(s, t) in &self.flips {
            // j ∈ s·S + t  ⟺  s·(j − t) is a perfect square
            let v = s as i64 * (j - t);
            if v >= 0 && is_square(v) {
                parity = !parity;
            }
        }
        parity
    }

    pub fn apply(&self, v: PairVertex) -> PairVertex {
        let j = self.index_image(v.index);
        PairVertex {
            y: v.y ^ self.flips_at(j),
            index: j,
        }
    }

    /// Normal form of `self ∘ other` (apply `other` first).
    pub fn multiply(&self, other: &Ex41Element) -> Ex41Element {
        let eps = self.eps();
        let reflect = self.reflect ^ other.reflect;
        let shift = eps * other.shift + self.shift;
        // other's flip sets, transported through self's affine map, xor self's
        let mut flips = self.flips.clone();
        for &(s, t) in &other.flips {
            toggle(&mut flips, (s * self.eps() as i8, eps * t + self.shift));
        }
        let mut explicit = self.explicit.clone();
        for &j in &other.explicit {
            toggle_explicit(&mut explicit, eps * j + self.shift);
        }
        Ex41Element {
            reflect,
            shift,
            flips,
            explicit,
        }
    }

    pub fn inverse(&self) -> Ex41Element {
        let eps = self.eps();
        let mut flips = BTreeSet::new();
        for &(s, t) in &self.flips {
            flips.insert((s * eps as i8, eps * t - eps * self.shift));
        }
        let explicit = self.explicit.iter().map(|&j| eps * j - eps * self.shift).collect();
        Ex41Element {
            reflect: self.reflect,
            shift: -eps * self.shift,
            flips,
            explicit,
        }
    }

    /// Window points `x_i, y_i` for `|i| ≤ radius`, in the enumeration order
    /// `x_0, y_0, x_1, y_1, x_{−1}, y_{−1}, x_2, …`.
    pub fn window_points(radius: i64) -> Vec<PairVertex> {
        let mut out = Vec::with_capacity(2 * (2 * radius as usize + 1));
        for i in signed_spiral(radius) {
            out.push(PairVertex::x(i));
            out.push(PairVertex::y(i));
        }
        out
    }

    /// Exact images of every window point; images landing outside the window
    /// are reported separately rather than dropped.
    pub fn window_action(&self, radius: i64) -> WindowAction {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for v in Self::window_points(radius) {
            let image = self.apply(v);
            if image.index.abs() <= radius {
                inside.push((v, image));
            } else {
                outside.push((v, image));
            }
        }
        WindowAction {
            radius,
            inside,
            outside,
        }
    }

    /// Number of window points moved.
    pub fn window_motion(&self, radius: i64) -> usize {
        Self::window_points(radius)
            .into_iter()
            .filter(|&v| self.apply(v) != v)
            .count()
    }

    /// True iff both elements send every window point to the same vertex.
    pub fn agrees_on_window(&self, other: &Ex41Element, radius: i64) -> bool {
        Self::window_points(radius)
            .into_iter()
            .all(|v| self.apply(v) == other.apply(v))
    }
}

/// Index order 0, 1, −1, 2, −2, …, up to `radius`.
pub fn signed_spiral(radius: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=radius).flat_map(|i| [i, -i]))
}

pub struct WindowAction {
    pub radius: i64,
    pub inside: Vec<(PairVertex, PairVertex)>,
    pub outside: Vec<(PairVertex, PairVertex)>,
}

fn toggle(set: &mut BTreeSet<(i8, i64)>, item: (i8, i64)) {
    if !set.insert(item) {
        set.remove(&item);
    }
}

fn toggle_explicit(set: &mut BTreeSet<i64>, item: i64) {
    if !set.insert(item) {
        set.remove(&item);
    }
}

fn is_square(v: i64) -> bool {
    debug_assert!(v >= 0);
    let r = (v as u64).isqrt();
    r * r == v as u64
}

impl fmt::Display for Ex41Element {
    /// Product form, rightmost factor applied first: flip factors, then the
    /// affine factor `b^k*c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut parts: Vec<String> = Vec::new();
        for &(s, t) in &self.flips {
            let base = if s > 0 { "S" } else { "-S" };
            if t == 0 {
                parts.push(format!("d({base})"));
            } else {
                parts.push(format!("d({base}{t:+})"));
            }
        }
        for &j in &self.explicit {
            parts.push(format!("s{j}"));
        }
        if self.shift != 0 {
            if self.shift == 1 {
                parts.push("b".into());
            } else {
                parts.push(format!("b^{}", self.shift));
            }
        }
        if self.reflect {
            parts.push("c".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}
