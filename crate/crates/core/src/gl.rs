//! Distinguishing sets for the general linear group over the rationals:
//! construct the scalar-tower set {cⁱ·u_j : 0 ≤ i < j ≤ n} and decide, in
//! exact arithmetic, whether a finite set of vectors has trivial setwise
//! stabilizer in GL(n, ℚ).

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::fmt;

pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let malformed = || Error::BadDimension(format!("not a rational: {text}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| malformed())?;
            let q: BigInt = q.trim().parse().map_err(|_| malformed())?;
            if q.is_zero() {
                return Err(malformed());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| malformed())?;
            Ok(Rational::from(p))
        }
    }
}

/// Multiplicative order of a rational, with 0 for "not a unit of finite or
/// infinite order" and `None` for infinite order.
fn multiplicative_order(c: &Rational) -> Option<u32> {
    if c.is_zero() {
        Some(0)
    } else if c.is_one() {
        Some(1)
    } else if (c + rat(1)).is_zero() {
        Some(2)
    } else {
        None
    }
}

/// The vectors cⁱ·u_j for 1 ≤ j ≤ n, 0 ≤ i < j, ordered by (j, i). Their
/// setwise stabilizer in GL(n, ℚ) is trivial when the order of c exceeds n²;
/// over ℚ that means any c outside {0, 1, −1} works for every n.
pub fn construct_distinguishing_set(n: usize, c: &Rational) -> Result<Vec<RationalVector>> {
    if n == 0 {
        return Err(Error::BadDimension("dimension must be at least 1".into()));
    }
    let needed = (n as u64).pow(2);
    if let Some(order) = multiplicative_order(c) {
        if u64::from(order) <= needed {
            return Err(Error::OrderTooSmall { order, dim: n, needed });
        }
    }
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for j in 1..=n {
        let mut scalar = rat(1);
        for _ in 0..j {
            let mut v = vec![rat(0); n];
            v[j - 1] = scalar.clone();
            out.push(v);
            scalar *= c;
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    pub n: usize,
    /// Row-major entries.
    pub rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> RationalMatrix {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        RationalMatrix { n, rows }
    }

    pub fn is_identity(&self) -> bool {
        *self == RationalMatrix::identity(self.n)
    }

    pub fn apply(&self, v: &[Rational]) -> RationalVector {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Columns of the matrix, read back as vectors.
    fn from_columns(n: usize, cols: &[RationalVector]) -> RationalMatrix {
        let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        RationalMatrix { n, rows }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Solve M·X = B for X, where M is given by columns. Returns `None` when M
/// is singular.
fn solve_columns(n: usize, m_cols: &[RationalVector], b_cols: &[RationalVector]) -> Option<RationalMatrix> {
    // augmented Gauss-Jordan on [M | B]
    let width = n + b_cols.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = m_cols.iter().map(|c| c[i].clone()).collect();
            row.extend(b_cols.iter().map(|c| c[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].clone();
        for x in &mut a[col] {
            *x /= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for x in col..width {
                    let delta = &factor * &a[col][x];
                    a[r][x] -= delta;
                }
            }
        }
    }
    let cols: Vec<RationalVector> = (0..b_cols.len())
        .map(|j| (0..n).map(|i| a[i][n + j].clone()).collect())
        .collect();
    Some(RationalMatrix::from_columns(n, &cols))
}

/// Greedy maximal independent subset of the given vectors, by index order.
fn independent_subset(n: usize, vectors: &[RationalVector]) -> Vec<usize> {
    let mut rows: Vec<RationalVector> = Vec::new();
    let mut picked = Vec::new();
    'outer: for (index, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for row in &rows {
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let factor = &v[lead] / &row[lead];
                for i in 0..n {
                    let delta = &factor * &row[i];
                    v[i] -= delta;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue 'outer;
        }
        rows.push(v);
        picked.push(index);
        if picked.len() == n {
            break;
        }
    }
    picked
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GlVerdict {
    Trivial,
    /// A nonidentity matrix mapping the input set onto itself.
    Nontrivial(RationalMatrix),
}

#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub verdict: GlVerdict,
    /// Line-respecting candidate bijections examined.
    pub candidates: u64,
}

/// Canonical direction of the line a vector spans: scale so the first
/// nonzero coordinate is 1. The remaining scalar is returned alongside.
fn line_direction(v: &[Rational]) -> (RationalVector, Rational) {
    let lead = v.iter().find(|x| !x.is_zero()).unwrap().clone();
    (v.iter().map(|x| x / &lead).collect(), lead)
}

struct Line {
    direction: RationalVector,
    /// (index into Y, scalar against the direction), sorted by scalar.
    members: Vec<(usize, Rational)>,
}

struct CandidateScan<'a> {
    y: &'a [RationalVector],
    lines: Vec<Line>,
    /// lines[i] may map onto lines[j] only when both carry the same number
    /// of vectors.
    targets: Vec<Vec<usize>>,
    basis: Vec<usize>,
    basis_cols: Vec<RationalVector>,
    candidates: u64,
}

impl CandidateScan<'_> {
    /// Depth-first over line assignments and per-line vector bijections;
    /// `pi` maps Y-indices to Y-indices. Returns the first nonidentity
    /// consistent linear map.
    fn run(
        &mut self,
        line: usize,
        used: &mut Vec<bool>,
        pi: &mut Vec<usize>,
    ) -> Option<RationalMatrix> {
        if line == self.lines.len() {
            self.candidates += 1;
            return self.solve(pi);
        }
        for t in 0..self.targets[line].len() {
            let target = self.targets[line][t];
            if used[target] {
                continue;
            }
            used[target] = true;
            let m = self.lines[line].members.len();
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                for s in 0..m {
                    pi[self.lines[line].members[s].0] = self.lines[target].members[perm[s]].0;
                }
                if let Some(found) = self.run(line + 1, used, pi) {
                    return Some(found);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            used[target] = false;
        }
        None
    }

    fn solve(&self, pi: &[usize]) -> Option<RationalMatrix> {
        let n = self.y[0].len();
        let image_cols: Vec<RationalVector> =
            self.basis.iter().map(|&b| self.y[pi[b]].clone()).collect();
        let m = solve_columns(n, &self.basis_cols, &image_cols)?;
        if m.is_identity() {
            return None;
        }
        for (i, v) in self.y.iter().enumerate() {
            if m.apply(v) != self.y[pi[i]] {
                return None;
            }
        }
        Some(m)
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Decide whether the setwise stabilizer of Y in GL(n, ℚ) is trivial. Any
/// stabilizing map permutes the lines spanned by Y's vectors and preserves
/// each line's vector count, so candidates are the line-respecting
/// bijections of Y; each is checked by solving for the linear map it forces.
/// A set failing to span ℚⁿ is never trivial: any map fixing the span and
/// scaling a complement stabilizes Y.
pub fn verify_trivial_setwise_stabilizer(y: &[RationalVector]) -> Result<StabilizerReport> {
    let n = match y.first() {
        Some(v) => v.len(),
        None => {
            return Err(Error::BadDimension("empty vector set".into()));
        }
    };
    if n == 0 {
        return Err(Error::BadDimension("zero-length vectors".into()));
    }
    for (index, v) in y.iter().enumerate() {
        if v.len() != n {
            return Err(Error::BadDimension(format!(
                "vector {index} has {} entries, expected {n}",
                v.len()
            )));
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector { index });
        }
    }

    let basis = independent_subset(n, y);
    if basis.len() < n {
        // identity on the span, doubling on a complement of it
        let mut cols: Vec<RationalVector> = basis.iter().map(|&b| y[b].clone()).collect();
        let mut images: Vec<RationalVector> = cols.clone();
        for j in 0..n {
            let mut unit = vec![rat(0); n];
            unit[j] = rat(1);
            let mut extended = cols.clone();
            extended.push(unit.clone());
            if independent_subset(n, &extended).len() > cols.len() {
                cols.push(unit.clone());
                images.push(unit.iter().map(|x| x * rat(2)).collect());
            }
        }
        let m = solve_columns(n, &cols, &images).expect("extended to a basis");
        debug_assert!(y.iter().all(|v| m.apply(v) == *v));
        return Ok(StabilizerReport { verdict: GlVerdict::Nontrivial(m), candidates: 0 });
    }

    let mut by_direction: HashMap<Vec<String>, usize> = HashMap::new();
    let mut lines: Vec<Line> = Vec::new();
    for (index, v) in y.iter().enumerate() {
        let (direction, scalar) = line_direction(v);
        let key: Vec<String> = direction.iter().map(format_rational).collect();
        let line = *by_direction.entry(key).or_insert_with(|| {
            lines.push(Line { direction: direction.clone(), members: Vec::new() });
            lines.len() - 1
        });
        lines[line].members.push((index, scalar));
    }
    for line in &mut lines {
        line.members.sort_by(|a, b| a.1.cmp(&b.1));
    }
    lines.sort_by(|a, b| (a.members.len(), &a.direction).cmp(&(b.members.len(), &b.direction)));
    let targets: Vec<Vec<usize>> = (0..lines.len())
        .map(|i| {
            (0..lines.len())
                .filter(|&j| lines[j].members.len() == lines[i].members.len())
                .collect()
        })
        .collect();

    let basis_cols: Vec<RationalVector> = basis.iter().map(|&b| y[b].clone()).collect();
    let mut scan = CandidateScan { y, lines, targets, basis, basis_cols, candidates: 0 };
    let mut used = vec![false; scan.lines.len()];
    let mut pi: Vec<usize> = (0..y.len()).collect();
    let verdict = match scan.run(0, &mut used, &mut pi) {
        Some(m) => GlVerdict::Nontrivial(m),
        None => GlVerdict::Trivial,
    };
    Ok(StabilizerReport { verdict, candidates: scan.candidates })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<RationalVector> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn construction_lists_scalar_towers() {
        let y = construct_distinguishing_set(2, &rat(2)).unwrap();
        assert_eq!(y, vecs(&[&[1, 0], &[0, 1], &[0, 2]]));

        let y = construct_distinguishing_set(1, &rat(2)).unwrap();
        assert_eq!(y, vecs(&[&[1]]));

        let y = construct_distinguishing_set(3, &rat(2)).unwrap();
        assert_eq!(y.len(), 6);
        assert_eq!(y[5], vecs(&[&[0, 0, 4]])[0]);
    }

    #[test]
    fn construction_rejects_low_order_scalars() {
        assert!(matches!(
            construct_distinguishing_set(2, &rat(-1)),
            Err(Error::OrderTooSmall { order: 2, dim: 2, needed: 4 })
        ));
        assert!(matches!(
            construct_distinguishing_set(3, &rat(1)),
            Err(Error::OrderTooSmall { order: 1, .. })
        ));
        assert!(matches!(
            construct_distinguishing_set(2, &rat(0)),
            Err(Error::OrderTooSmall { order: 0, .. })
        ));
        // -1 has order 2 > 1², so the one-dimensional case goes through
        assert_eq!(
            construct_distinguishing_set(1, &rat(-1)).unwrap(),
            vecs(&[&[1]])
        );
        assert!(matches!(
            construct_distinguishing_set(0, &rat(2)),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn constructed_sets_have_trivial_stabilizer() {
        for n in 1..=4 {
            let y = construct_distinguishing_set(n, &rat(2)).unwrap();
            let report = verify_trivial_setwise_stabilizer(&y).unwrap();
            assert_eq!(report.verdict, GlVerdict::Trivial, "n={n}");
            let expected: u64 = (1..=n as u64).map(|j| (1..=j).product::<u64>()).product();
            assert_eq!(report.candidates, expected, "n={n}");
        }
    }

    #[test]
    fn fractional_scalars_work_too() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let y = construct_distinguishing_set(3, &half).unwrap();
        let report = verify_trivial_setwise_stabilizer(&y).unwrap();
        assert_eq!(report.verdict, GlVerdict::Trivial);
    }

    #[test]
    fn plain_basis_has_the_swap_as_stabilizer() {
        let y = vecs(&[&[1, 0], &[0, 1]]);
        let report = verify_trivial_setwise_stabilizer(&y).unwrap();
        match report.verdict {
            GlVerdict::Nontrivial(m) => {
                assert!(!m.is_identity());
                assert_eq!(m.rows, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
                // the certificate really permutes Y
                let images: Vec<RationalVector> = y.iter().map(|v| m.apply(v)).collect();
                for image in &images {
                    assert!(y.contains(image));
                }
            }
            GlVerdict::Trivial => panic!("swap should stabilize a bare basis"),
        }
    }

    #[test]
    fn non_spanning_sets_are_never_trivial() {
        let y = vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 2, 0]]);
        let report = verify_trivial_setwise_stabilizer(&y).unwrap();
        match report.verdict {
            GlVerdict::Nontrivial(m) => {
                assert!(!m.is_identity());
                for v in &y {
                    assert_eq!(m.apply(v), *v);
                }
            }
            GlVerdict::Trivial => panic!("a non-spanning set cannot be rigid"),
        }
        assert_eq!(report.candidates, 0);
    }

    #[test]
    fn rejects_zero_vectors() {
        let y = vecs(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            verify_trivial_setwise_stabilizer(&y),
            Err(Error::ZeroVector { index: 1 })
        ));
    }

    #[test]
    fn rational_round_trip() {
        for text in ["3", "-7", "1/2", "-9/4"] {
            assert_eq!(format_rational(&parse_rational(text).unwrap()), text);
        }
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_vector(&vecs(&[&[1, 0]])[0]), "(1, 0)");
    }
}
