//! Coxeter matrices, their graphs, and finite-type classification.
//!
//! A Coxeter matrix of rank `l` is a symmetric `l x l` integer matrix with
//! `m(a, a) = 1` and `m(a, b) >= 2` off the diagonal. Vertices are indexed
//! `1..=l`; subsets of the vertex set are bitmasks where bit `i - 1` encodes
//! vertex `i`. Two vertices are joined by an edge of the Coxeter graph iff
//! `m(a, b) >= 3`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest representable rank (bitmask width).
pub const MAX_RANK: usize = 64;

/// Named families of finite-type Coxeter matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
            Family::F => write!(f, "F"),
            Family::H => write!(f, "H"),
            Family::I2 => write!(f, "I2"),
        }
    }
}

/// Classification tag of a connected finite-type component.
///
/// A 2-vertex component with edge label 4 canonicalizes to `B(2)`; labels
/// `p >= 5` canonicalize to `I2(p)` (so the icosahedral rank-2 group is
/// `I2(5)`, never "H2").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl IrreducibleType {
    /// Number of vertices carried by the tag.
    pub fn rank(&self) -> usize {
        match self {
            IrreducibleType::A(n) | IrreducibleType::B(n) | IrreducibleType::D(n) => *n,
            IrreducibleType::E6 => 6,
            IrreducibleType::E7 => 7,
            IrreducibleType::E8 => 8,
            IrreducibleType::F4 => 4,
            IrreducibleType::H3 => 3,
            IrreducibleType::H4 => 4,
            IrreducibleType::I2(_) => 2,
        }
    }

    /// The named Coxeter matrix carrying this tag.
    pub fn matrix(&self) -> CoxeterMatrix {
        let (family, n) = match self {
            IrreducibleType::A(n) => (Family::A, *n),
            IrreducibleType::B(n) => (Family::B, *n),
            IrreducibleType::D(n) => (Family::D, *n),
            IrreducibleType::E6 => (Family::E, 6),
            IrreducibleType::E7 => (Family::E, 7),
            IrreducibleType::E8 => (Family::E, 8),
            IrreducibleType::F4 => (Family::F, 4),
            IrreducibleType::H3 => (Family::H, 3),
            IrreducibleType::H4 => (Family::H, 4),
            IrreducibleType::I2(p) => (Family::I2, *p as usize),
        };
        CoxeterMatrix::named(family, n).expect("catalogue tags are valid by construction")
    }

    /// Every catalogue tag with rank at most `max_rank`, plus `I2(p)` for
    /// `p` in `5..=max_p`.
    pub fn catalogue(max_rank: usize, max_p: u32) -> Vec<IrreducibleType> {
        let mut tags = Vec::new();
        for n in 1..=max_rank {
            tags.push(IrreducibleType::A(n));
        }
        for n in 2..=max_rank {
            tags.push(IrreducibleType::B(n));
        }
        for n in 4..=max_rank {
            tags.push(IrreducibleType::D(n));
        }
        for tag in [
            IrreducibleType::E6,
            IrreducibleType::E7,
            IrreducibleType::E8,
            IrreducibleType::F4,
            IrreducibleType::H3,
            IrreducibleType::H4,
        ] {
            if tag.rank() <= max_rank {
                tags.push(tag);
            }
        }
        for p in 5..=max_p {
            tags.push(IrreducibleType::I2(p));
        }
        tags
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::D(n) => write!(f, "D{n}"),
            IrreducibleType::E6 => write!(f, "E6"),
            IrreducibleType::E7 => write!(f, "E7"),
            IrreducibleType::E8 => write!(f, "E8"),
            IrreducibleType::F4 => write!(f, "F4"),
            IrreducibleType::H3 => write!(f, "H3"),
            IrreducibleType::H4 => write!(f, "H4"),
            IrreducibleType::I2(p) => write!(f, "I2({p})"),
        }
    }
}

/// Symmetric matrix `m(a, b)` presenting an Artin monoid.
///
/// Off-diagonal entries are finite integers `>= 2`; infinite entries (free
/// products) are rejected at construction. Construction checks only the
/// symmetry and diagonal invariants; finite-type membership is checked by
/// [`CoxeterMatrix::validate_finite_type`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from row-major entries, validating the Coxeter axioms.
    pub fn from_entries(rank: usize, entries: Vec<u32>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        if entries.len() != rank * rank {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for rank {rank}, got {}",
                rank * rank,
                entries.len()
            )));
        }
        for a in 0..rank {
            if entries[a * rank + a] != 1 {
                return Err(Error::InvalidMatrix(format!(
                    "m({v}, {v}) must be 1",
                    v = a + 1
                )));
            }
            for b in 0..a {
                let m = entries[a * rank + b];
                if m != entries[b * rank + a] {
                    return Err(Error::InvalidMatrix(format!(
                        "m({}, {}) != m({}, {})",
                        a + 1,
                        b + 1,
                        b + 1,
                        a + 1
                    )));
                }
                if m < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "m({}, {}) must be a finite integer >= 2, got {m}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// The named matrix of a family at the given rank (or label `p` for `I2`).
    ///
    /// The A/B/D families use the conventions: `A_l` is the path `1 - 2 - ... - l`;
    /// `B_l` is the same path with the edge `{1, 2}` labeled 4; `D_l` branches at
    /// vertex `l - 2`, with leaves `l - 1` and `l`.
    pub fn named(family: Family, n: usize) -> Result<Self> {
        let valid = match family {
            Family::A => n >= 1,
            Family::B => n >= 2,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::H => (3..=4).contains(&n),
            Family::I2 => n >= 5 && n <= u32::MAX as usize,
        };
        if !valid || (family != Family::I2 && n > MAX_RANK) {
            return Err(Error::InvalidRank { family, rank: n });
        }
        let rank = if family == Family::I2 { 2 } else { n };
        let mut entries = vec![2u32; rank * rank];
        for v in 0..rank {
            entries[v * rank + v] = 1;
        }
        let mut set = |a: usize, b: usize, m: u32| {
            entries[(a - 1) * rank + (b - 1)] = m;
            entries[(b - 1) * rank + (a - 1)] = m;
        };
        match family {
            Family::A => {
                for a in 1..rank {
                    set(a, a + 1, 3);
                }
            }
            Family::B => {
                set(1, 2, 4);
                for a in 2..rank {
                    set(a, a + 1, 3);
                }
            }
            Family::D => {
                // path on 1..=l-1, plus the edge {l-2, l}
                for a in 1..rank - 1 {
                    set(a, a + 1, 3);
                }
                set(rank - 2, rank, 3);
            }
            Family::E => {
                // path on 1..=n-1, with vertex n attached to vertex 3
                for a in 1..rank - 1 {
                    set(a, a + 1, 3);
                }
                set(3, rank, 3);
            }
            Family::F => {
                set(1, 2, 3);
                set(2, 3, 4);
                set(3, 4, 3);
            }
            Family::H => {
                set(1, 2, 5);
                for a in 2..rank {
                    set(a, a + 1, 3);
                }
            }
            Family::I2 => {
                set(1, 2, n as u32);
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entry `m(a, b)` with 1-based vertex indices.
    pub fn entry(&self, a: usize, b: usize) -> u32 {
        assert!(a >= 1 && a <= self.rank && b >= 1 && b <= self.rank);
        self.entries[(a - 1) * self.rank + (b - 1)]
    }

    /// Whether vertices `a` and `b` are joined by a graph edge (`m >= 3`).
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.entry(a, b) >= 3
    }

    /// Bitmask of the full vertex set `I`.
    pub fn full_mask(&self) -> u64 {
        if self.rank == MAX_RANK {
            u64::MAX
        } else {
            (1u64 << self.rank) - 1
        }
    }

    /// Block-diagonal sum; the right summand's vertices are shifted up.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> Result<Self> {
        let rank = self.rank + other.rank;
        if rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "direct sum of ranks {} and {} exceeds {MAX_RANK}",
                self.rank, other.rank
            )));
        }
        let mut entries = vec![2u32; rank * rank];
        for a in 0..self.rank {
            for b in 0..self.rank {
                entries[a * rank + b] = self.entries[a * self.rank + b];
            }
        }
        for a in 0..other.rank {
            for b in 0..other.rank {
                entries[(self.rank + a) * rank + (self.rank + b)] =
                    other.entries[a * other.rank + b];
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Whether the matrix is exactly the `A_l` path (`m = 3` iff `|a - b| = 1`).
    pub fn is_a_path(&self) -> bool {
        for a in 1..=self.rank {
            for b in 1..a {
                let expected = if a - b == 1 { 3 } else { 2 };
                if self.entry(a, b) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Splits `mask` into the connected components of the induced subgraph.
    ///
    /// Components come out ordered by their minimum vertex. The empty mask
    /// decomposes into zero components.
    pub fn decompose(&self, mask: u64) -> SubsetSelection<'_> {
        let mask = mask & self.full_mask();
        let mut components = Vec::new();
        let mut unvisited = mask;
        while unvisited != 0 {
            let seed = unvisited & unvisited.wrapping_neg();
            let mut component = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut grown = component;
                for a in vertices(frontier) {
                    for b in vertices(mask & !grown) {
                        if self.adjacent(a, b) {
                            grown |= 1u64 << (b - 1);
                        }
                    }
                }
                frontier = grown & !component;
                component = grown;
            }
            components.push(component);
            unvisited &= !component;
        }
        SubsetSelection {
            matrix: self,
            mask,
            components,
        }
    }

    /// Classifies one connected component against the finite-type catalogue.
    ///
    /// `component` must be a nonempty vertex set that is connected in the
    /// induced graph; anything that matches no catalogue entry (cycles,
    /// disconnected input, oversized labels, bad branch shapes) reports
    /// [`Error::NotFiniteType`] naming the vertices.
    pub fn classify(&self, component: u64) -> Result<IrreducibleType> {
        let verts: Vec<usize> = vertices(component & self.full_mask()).collect();
        let n = verts.len();
        let fail = || Error::NotFiniteType {
            vertices: verts.clone(),
        };
        match n {
            0 => return Err(Error::InvalidMatrix("cannot classify an empty set".into())),
            1 => return Ok(IrreducibleType::A(1)),
            2 => {
                return match self.entry(verts[0], verts[1]) {
                    2 => Err(fail()),
                    3 => Ok(IrreducibleType::A(2)),
                    4 => Ok(IrreducibleType::B(2)),
                    p => Ok(IrreducibleType::I2(p)),
                };
            }
            _ => {}
        }

        // adjacency restricted to the component, indexed by position in `verts`
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edge_count = 0usize;
        let mut high_edges: Vec<(usize, usize, u32)> = Vec::new();
        for i in 0..n {
            for j in 0..i {
                let m = self.entry(verts[i], verts[j]);
                if m >= 3 {
                    adj[i].push(j);
                    adj[j].push(i);
                    edge_count += 1;
                    if m >= 4 {
                        high_edges.push((j, i, m));
                    }
                }
            }
        }
        if edge_count != n - 1 {
            return Err(fail()); // a cycle, or not connected
        }
        if adj.iter().any(|nb| nb.len() >= 4) {
            return Err(fail());
        }
        let branches: Vec<usize> = (0..n).filter(|&i| adj[i].len() == 3).collect();

        if !high_edges.is_empty() {
            if high_edges.len() >= 2 || !branches.is_empty() {
                return Err(fail());
            }
            let (_, _, m) = high_edges[0];
            if m >= 6 {
                return Err(fail()); // rank >= 3 with a label >= 6 is never finite
            }
            let path = walk_path(&adj, n).ok_or_else(fail)?;
            let pos = (0..n - 1)
                .find(|&i| {
                    let (a, b) = (path[i], path[i + 1]);
                    self.entry(verts[a], verts[b]) >= 4
                })
                .expect("high edge lies on the path");
            let terminal = pos == 0 || pos == n - 2;
            return match m {
                4 if terminal => Ok(IrreducibleType::B(n)),
                4 if n == 4 => Ok(IrreducibleType::F4),
                5 if terminal && n == 3 => Ok(IrreducibleType::H3),
                5 if terminal && n == 4 => Ok(IrreducibleType::H4),
                _ => Err(fail()),
            };
        }

        // simply laced: a path is A_n, one degree-3 vertex gives D/E
        match branches.len() {
            0 => {
                walk_path(&adj, n).ok_or_else(fail)?;
                Ok(IrreducibleType::A(n))
            }
            1 => {
                let center = branches[0];
                let mut legs: Vec<usize> = adj[center]
                    .iter()
                    .map(|&start| arm_length(&adj, center, start))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(fail)?;
                legs.sort_unstable();
                if 1 + legs.iter().sum::<usize>() != n {
                    return Err(fail()); // unreachable for a connected tree
                }
                match (legs[0], legs[1], legs[2]) {
                    (1, 1, _) => Ok(IrreducibleType::D(n)),
                    (1, 2, 2) => Ok(IrreducibleType::E6),
                    (1, 2, 3) => Ok(IrreducibleType::E7),
                    (1, 2, 4) => Ok(IrreducibleType::E8),
                    _ => Err(fail()),
                }
            }
            _ => Err(fail()),
        }
    }

    /// Classifies every connected component of the full graph.
    pub fn validate_finite_type(&self) -> Result<Vec<IrreducibleType>> {
        self.decompose(self.full_mask())
            .components()
            .iter()
            .map(|&c| self.classify(c))
            .collect()
    }

    /// Parses the plain-text matrix format.
    ///
    /// First line `rank l`, then one line `a b m` per off-diagonal entry with
    /// `m >= 3`; unlisted pairs default to 2. Blank lines and `#` comments are
    /// skipped.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, line)| !line.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix description".into()))?;
        let rank: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["rank", r] => r
                .parse()
                .map_err(|_| Error::Parse(format!("bad rank value {r:?}")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "expected first line `rank l`, got {header:?}"
                )))
            }
        };
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Parse(format!("rank must be in 1..={MAX_RANK}")));
        }
        let mut entries = vec![2u32; rank * rank];
        for v in 0..rank {
            entries[v * rank + v] = 1;
        }
        for (idx, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, b, m] = fields[..] else {
                return Err(Error::Parse(format!(
                    "line {}: expected `a b m`, got {line:?}",
                    idx + 1
                )));
            };
            let parse = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {s:?}", idx + 1)))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            let m: u32 = m
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad label {m:?}", idx + 1)))?;
            if a == b || a < 1 || b < 1 || a > rank || b > rank {
                return Err(Error::Parse(format!(
                    "line {}: vertices must be distinct and in 1..={rank}",
                    idx + 1
                )));
            }
            if m < 3 {
                return Err(Error::Parse(format!(
                    "line {}: listed entries must be >= 3 (2 is the default)",
                    idx + 1
                )));
            }
            if entries[(a - 1) * rank + (b - 1)] != 2 {
                return Err(Error::Parse(format!(
                    "line {}: duplicate entry for pair ({a}, {b})",
                    idx + 1
                )));
            }
            entries[(a - 1) * rank + (b - 1)] = m;
            entries[(b - 1) * rank + (a - 1)] = m;
        }
        CoxeterMatrix::from_entries(rank, entries)
    }
}

/// Walks a degree-<=2 tree from an endpoint; `None` if it is not one path
/// covering all `n` vertices.
fn walk_path(adj: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    let start = (0..n).find(|&i| adj[i].len() <= 1)?;
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        let next = adj[cur].iter().copied().find(|&v| v != prev);
        match next {
            Some(v) => {
                prev = cur;
                cur = v;
            }
            None => break,
        }
    }
    (order.len() == n).then_some(order)
}

/// Length of the arm leaving `center` through `start`; `None` if the arm
/// branches again or loops back.
fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> Option<usize> {
    let mut len = 1;
    let mut prev = center;
    let mut cur = start;
    loop {
        let onward: Vec<usize> = adj[cur].iter().copied().filter(|&v| v != prev).collect();
        match onward[..] {
            [] => return Some(len),
            [next] => {
                if next == center {
                    return None;
                }
                prev = cur;
                cur = next;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Iterates the 1-based vertices encoded in a bitmask, ascending.
pub fn vertices(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(v)
        }
    })
}

/// A vertex subset of a Coxeter matrix together with its decomposition into
/// connected components, ordered by minimum vertex.
#[derive(Debug, Clone)]
pub struct SubsetSelection<'a> {
    matrix: &'a CoxeterMatrix,
    mask: u64,
    components: Vec<u64>,
}

impl<'a> SubsetSelection<'a> {
    pub fn matrix(&self) -> &'a CoxeterMatrix {
        self.matrix
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    /// Number of connected components `k`.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Parses a named product such as `A5`, `I2(7)`, or `A2xB3`.
///
/// The result lists `(family, rank)` pairs in input order; for `I2` the
/// second member is the edge label `p`. `I2` always requires parentheses.
pub fn parse_type_spec(spec: &str) -> Result<Vec<(Family, usize)>> {
    if spec.is_empty() {
        return Err(Error::Parse("empty type spec".into()));
    }
    spec.split('x').map(parse_one_name).collect()
}

fn parse_one_name(name: &str) -> Result<(Family, usize)> {
    let bad = || Error::Parse(format!("cannot parse type name {name:?}"));
    if let Some(inner) = name.strip_prefix("I2(") {
        let p = inner.strip_suffix(')').ok_or_else(bad)?;
        let p: usize = p.parse().map_err(|_| bad())?;
        return if p >= 5 {
            Ok((Family::I2, p))
        } else {
            Err(Error::InvalidRank {
                family: Family::I2,
                rank: p,
            })
        };
    }
    let mut chars = name.chars();
    let family = match chars.next().ok_or_else(bad)? {
        'A' => Family::A,
        'B' => Family::B,
        'D' => Family::D,
        'E' => Family::E,
        'F' => Family::F,
        'H' => Family::H,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let rank: usize = digits.parse().map_err(|_| bad())?;
    // surface invalid ranks eagerly so the offending token is named
    CoxeterMatrix::named(family, rank)?;
    Ok((family, rank))
}

/// Renders a parsed spec back to its canonical string form.
pub fn format_type_spec(parts: &[(Family, usize)]) -> String {
    parts
        .iter()
        .map(|&(family, n)| match family {
            Family::I2 => format!("I2({n})"),
            _ => format!("{family}{n}"),
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// Builds the block-diagonal matrix of a parsed named product.
pub fn build_product(parts: &[(Family, usize)]) -> Result<CoxeterMatrix> {
    let mut iter = parts.iter();
    let &(family, n) = iter
        .next()
        .ok_or_else(|| Error::Parse("empty type spec".into()))?;
    let mut matrix = CoxeterMatrix::named(family, n)?;
    for &(family, n) in iter {
        matrix = matrix.direct_sum(&CoxeterMatrix::named(family, n)?)?;
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(family: Family, n: usize) -> CoxeterMatrix {
        CoxeterMatrix::named(family, n).unwrap()
    }

    fn mask_of(verts: &[usize]) -> u64 {
        verts.iter().map(|v| 1u64 << (v - 1)).sum()
    }

    #[test]
    fn named_a2_b2_entries() {
        assert_eq!(named(Family::A, 2).entry(1, 2), 3);
        assert_eq!(named(Family::B, 2).entry(1, 2), 4);
    }

    #[test]
    fn named_d4_is_star_at_2() {
        let d4 = named(Family::D, 4);
        let edges: Vec<(usize, usize)> = (1..=4)
            .flat_map(|a| (1..a).map(move |b| (b, a)))
            .filter(|&(a, b)| d4.adjacent(a, b))
            .collect();
        assert_eq!(edges, vec![(1, 2), (2, 3), (2, 4)]);
    }

    #[test]
    fn named_b_convention_edge_at_one_two() {
        let b5 = named(Family::B, 5);
        assert_eq!(b5.entry(1, 2), 4);
        for a in 2..5 {
            assert_eq!(b5.entry(a, a + 1), 3);
        }
        assert_eq!(b5.entry(1, 3), 2);
    }

    #[test]
    fn named_rejects_invalid_ranks() {
        for (family, n) in [
            (Family::A, 0),
            (Family::B, 1),
            (Family::D, 3),
            (Family::E, 9),
            (Family::E, 5),
            (Family::F, 5),
            (Family::H, 2),
            (Family::H, 5),
            (Family::I2, 4),
        ] {
            assert!(matches!(
                CoxeterMatrix::named(family, n),
                Err(Error::InvalidRank { .. })
            ));
        }
    }

    #[test]
    fn from_entries_rejects_bad_matrices() {
        assert!(CoxeterMatrix::from_entries(2, vec![1, 3, 4, 1]).is_err()); // asymmetric
        assert!(CoxeterMatrix::from_entries(2, vec![2, 3, 3, 1]).is_err()); // bad diagonal
        assert!(CoxeterMatrix::from_entries(2, vec![1, 1, 1, 1]).is_err()); // off-diag < 2
        assert!(CoxeterMatrix::from_entries(2, vec![1, 3, 3]).is_err()); // wrong size
    }

    #[test]
    fn decompose_a5_subset() {
        let a5 = named(Family::A, 5);
        let sel = a5.decompose(mask_of(&[1, 2, 4]));
        assert_eq!(sel.components(), &[mask_of(&[1, 2]), mask_of(&[4])]);
        assert_eq!(sel.component_count(), 2);
    }

    #[test]
    fn decompose_empty_mask() {
        let a3 = named(Family::A, 3);
        assert_eq!(a3.decompose(0).component_count(), 0);
    }

    #[test]
    fn decompose_d4_leaves() {
        let d4 = named(Family::D, 4);
        let sel = d4.decompose(mask_of(&[1, 3, 4]));
        assert_eq!(
            sel.components(),
            &[mask_of(&[1]), mask_of(&[3]), mask_of(&[4])]
        );
    }

    #[test]
    fn classify_paths_and_stars() {
        let a4 = named(Family::A, 4);
        assert_eq!(a4.classify(a4.full_mask()).unwrap(), IrreducibleType::A(4));

        // D6 restricted to {4, 5, 6} is the path 5 - 4 - 6
        let d6 = named(Family::D, 6);
        assert_eq!(
            d6.classify(mask_of(&[4, 5, 6])).unwrap(),
            IrreducibleType::A(3)
        );
    }

    #[test]
    fn classify_rejects_triangle() {
        let tri = CoxeterMatrix::from_entries(3, vec![1, 3, 3, 3, 1, 3, 3, 3, 1]).unwrap();
        assert_eq!(
            tri.classify(tri.full_mask()),
            Err(Error::NotFiniteType {
                vertices: vec![1, 2, 3]
            })
        );
    }

    #[test]
    fn classify_rejects_degree_four_star() {
        // the rank-5 star (four leaves on one center) is affine D4
        let mut entries = vec![2u32; 25];
        for v in 0..5 {
            entries[v * 5 + v] = 1;
        }
        for leaf in [1usize, 2, 3, 4] {
            entries[leaf * 5] = 3;
            entries[leaf] = 3;
        }
        let star = CoxeterMatrix::from_entries(5, entries).unwrap();
        assert!(matches!(
            star.classify(star.full_mask()),
            Err(Error::NotFiniteType { .. })
        ));
    }

    #[test]
    fn classify_rejects_bad_high_edges() {
        // interior 4-edge on a path of 5 (affine-like)
        let mut p5 = vec![2u32; 25];
        for v in 0..5 {
            p5[v * 5 + v] = 1;
        }
        for a in 0..4 {
            p5[a * 5 + a + 1] = 3;
            p5[(a + 1) * 5 + a] = 3;
        }
        p5[2 * 5 + 3] = 4;
        p5[3 * 5 + 2] = 4;
        let m = CoxeterMatrix::from_entries(5, p5).unwrap();
        assert!(m.classify(m.full_mask()).is_err());

        // two 4-edges
        let c3 = CoxeterMatrix::from_entries(3, vec![1, 4, 2, 4, 1, 4, 2, 4, 1]).unwrap();
        assert!(c3.classify(c3.full_mask()).is_err());

        // label 6 on a 3-chain
        let g = CoxeterMatrix::from_entries(3, vec![1, 6, 2, 6, 1, 3, 2, 3, 1]).unwrap();
        assert!(g.classify(g.full_mask()).is_err());
    }

    #[test]
    fn classify_two_vertex_labels() {
        for (label, expected) in [
            (3, IrreducibleType::A(2)),
            (4, IrreducibleType::B(2)),
            (5, IrreducibleType::I2(5)),
            (7, IrreducibleType::I2(7)),
        ] {
            let m = CoxeterMatrix::from_entries(2, vec![1, label, label, 1]).unwrap();
            assert_eq!(m.classify(m.full_mask()).unwrap(), expected);
        }
    }

    #[test]
    fn classify_recovers_every_named_type() {
        for tag in IrreducibleType::catalogue(10, 12) {
            let m = tag.matrix();
            assert_eq!(m.classify(m.full_mask()).unwrap(), tag, "tag {tag}");
        }
    }

    #[test]
    fn validate_finite_type_collects_tags() {
        let b3 = named(Family::B, 3);
        assert_eq!(
            b3.validate_finite_type().unwrap(),
            vec![IrreducibleType::B(3)]
        );

        let sum = named(Family::A, 2).direct_sum(&named(Family::A, 1)).unwrap();
        assert_eq!(
            sum.validate_finite_type().unwrap(),
            vec![IrreducibleType::A(2), IrreducibleType::A(1)]
        );

        let tri = CoxeterMatrix::from_entries(3, vec![1, 3, 3, 3, 1, 3, 3, 3, 1]).unwrap();
        assert_eq!(
            tri.validate_finite_type(),
            Err(Error::NotFiniteType {
                vertices: vec![1, 2, 3]
            })
        );
    }

    #[test]
    fn component_count_range_matches_min_bound() {
        // over all size-j subsets of the A_l path, k takes exactly 1..=min(j, l-j+1)
        for l in 1usize..=14 {
            let a = named(Family::A, l);
            let mut seen = vec![std::collections::BTreeSet::new(); l + 1];
            for mask in 0u64..(1 << l) {
                let j = mask.count_ones() as usize;
                if j > 0 {
                    seen[j].insert(a.decompose(mask).component_count());
                }
            }
            for (j, got) in seen.iter().enumerate().skip(1) {
                let beta = j.min(l - j + 1);
                let expected: std::collections::BTreeSet<usize> = (1..=beta).collect();
                assert_eq!(got, &expected, "l={l} j={j}");
            }
        }
    }

    #[test]
    fn parse_text_round_trip() {
        let text = "rank 3\n1 2 3\n2 3 4 # B3-like\n";
        let m = CoxeterMatrix::parse_text(text).unwrap();
        assert_eq!(m.entry(1, 2), 3);
        assert_eq!(m.entry(2, 3), 4);
        assert_eq!(m.entry(1, 3), 2);
    }

    #[test]
    fn parse_text_rejects_malformed_input() {
        assert!(CoxeterMatrix::parse_text("").is_err());
        assert!(CoxeterMatrix::parse_text("rank x").is_err());
        assert!(CoxeterMatrix::parse_text("rank 2\n1 1 3").is_err());
        assert!(CoxeterMatrix::parse_text("rank 2\n1 2 2").is_err());
        assert!(CoxeterMatrix::parse_text("rank 2\n1 2 3\n2 1 4").is_err());
        assert!(CoxeterMatrix::parse_text("rank 2\n1 3 3").is_err());
    }

    #[test]
    fn parse_type_spec_products() {
        let parts = parse_type_spec("A2xB3").unwrap();
        assert_eq!(parts, vec![(Family::A, 2), (Family::B, 3)]);
        assert_eq!(format_type_spec(&parts), "A2xB3");

        let parts = parse_type_spec("I2(7)").unwrap();
        assert_eq!(format_type_spec(&parts), "I2(7)");

        assert!(parse_type_spec("I23").is_err());
        assert!(parse_type_spec("I2(4)").is_err());
        assert!(parse_type_spec("Z4").is_err());
        assert!(parse_type_spec("A").is_err());
        assert!(parse_type_spec("").is_err());
        assert!(parse_type_spec("H2").is_err());
    }

    #[test]
    fn build_product_is_block_diagonal() {
        let m = build_product(&parse_type_spec("A2xB3").unwrap()).unwrap();
        assert_eq!(m.rank(), 5);
        assert_eq!(m.entry(1, 2), 3);
        assert_eq!(m.entry(3, 4), 4);
        assert_eq!(m.entry(2, 3), 2);
    }

    fn named_part() -> impl Strategy<Value = (Family, usize)> {
        prop_oneof![
            (1usize..=8).prop_map(|n| (Family::A, n)),
            (2usize..=8).prop_map(|n| (Family::B, n)),
            (4usize..=8).prop_map(|n| (Family::D, n)),
            (6usize..=8).prop_map(|n| (Family::E, n)),
            Just((Family::F, 4)),
            (3usize..=4).prop_map(|n| (Family::H, n)),
            (5usize..=12).prop_map(|p| (Family::I2, p)),
        ]
    }

    proptest! {
        #[test]
        fn components_partition_and_do_not_touch(part in named_part(), raw_mask in any::<u64>()) {
            let m = build_product(&[part]).unwrap();
            let mask = raw_mask & m.full_mask();
            let sel = m.decompose(mask);

            let mut union = 0u64;
            for &c in sel.components() {
                prop_assert_eq!(c & union, 0, "components overlap");
                union |= c;
            }
            prop_assert_eq!(union, mask);

            for (i, &ci) in sel.components().iter().enumerate() {
                for &cj in &sel.components()[i + 1..] {
                    for a in vertices(ci) {
                        for b in vertices(cj) {
                            prop_assert!(!m.adjacent(a, b));
                        }
                    }
                }
            }
        }

        #[test]
        fn decompose_is_idempotent_on_components(part in named_part(), raw_mask in any::<u64>()) {
            let m = build_product(&[part]).unwrap();
            let sel = m.decompose(raw_mask & m.full_mask());
            for &c in sel.components() {
                prop_assert_eq!(m.decompose(c).component_count(), 1);
            }
        }
    }
}
