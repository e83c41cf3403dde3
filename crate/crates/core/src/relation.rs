//! Directed relations on `{1..n}` and bipartitional structure.
//!
//! A relation `U ⊆ X × X` is *bipartitional* when some ordered bipartition
//! `((B_1..B_k), (β_1..β_k))` gives `(x, y) ∈ U` exactly when the block of `x`
//! precedes the block of `y`, or both lie in the same underlined block.
//! Equivalently, both `U` and its complement are transitive; the two tests
//! are independent and are cross-checked in the test suite.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::MultiplicityVector;

/// Cap on the number of multiplicity-1 letters whose loops are toggled.
pub const DEFAULT_TOGGLE_CAP: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    // row-major: adj[(x-1)*n + (y-1)]
    adj: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            adj: vec![true; n * n],
        }
    }

    /// The strict integer order `{(x, y) : x > y}`.
    pub fn natural_order(n: usize) -> Self {
        let mut u = Self::empty(n);
        for x in 1..=n as u32 {
            for y in 1..x {
                u.insert(x, y);
            }
        }
        u
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut u = Self::empty(n);
        for (x, y) in edges {
            for z in [x, y] {
                if z == 0 || z as usize > n {
                    return Err(Error::LetterOutOfRange { letter: z, n });
                }
            }
            u.insert(x, y);
        }
        Ok(u)
    }

    /// The relation whose pair `(x, y)` is present iff bit `(x-1)*n + (y-1)`
    /// of `mask` is set (row-major pair order).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "mask encoding supports n <= 8");
        Self {
            n,
            adj: (0..n * n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.n * self.n <= 64, "mask encoding supports n <= 8");
        self.adj
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | (u64::from(b) << i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, x: u32, y: u32) -> usize {
        (x as usize - 1) * self.n + (y as usize - 1)
    }

    /// `x >_U y`. Letters outside `1..=n` are never related.
    #[inline]
    pub fn contains(&self, x: u32, y: u32) -> bool {
        x >= 1 && y >= 1 && x as usize <= self.n && y as usize <= self.n && self.adj[self.idx(x, y)]
    }

    pub fn insert(&mut self, x: u32, y: u32) {
        let i = self.idx(x, y);
        self.adj[i] = true;
    }

    pub fn remove(&mut self, x: u32, y: u32) {
        let i = self.idx(x, y);
        self.adj[i] = false;
    }

    pub fn set(&mut self, x: u32, y: u32, present: bool) {
        let i = self.idx(x, y);
        self.adj[i] = present;
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.n;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| ((i / n) as u32 + 1, (i % n) as u32 + 1))
    }

    pub fn len(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.adj.iter().any(|&b| b)
    }

    pub fn complement(&self) -> Relation {
        complement(self)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, ", self.n)?;
        f.debug_set().entries(self.edges()).finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationJson {
            n: self.n,
            edges: self.edges().map(|(x, y)| [x, y]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RelationJson::deserialize(d)?;
        Relation::from_edges(raw.n, raw.edges.into_iter().map(|[x, y]| (x, y)))
            .map_err(serde::de::Error::custom)
    }
}

/// Parses edge lists: one `x y` pair per line, or pairs separated by `;`.
/// With `n = None` the alphabet size is the largest letter mentioned.
pub fn parse_edge_list(text: &str, n: Option<usize>) -> Result<Relation> {
    let mut edges = Vec::new();
    for chunk in text.split([';', '\n']) {
        let chunk = chunk.trim();
        if chunk.is_empty() || chunk.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = chunk
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad edge {chunk:?}"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [x, y] => edges.push((x, y)),
            _ => return Err(Error::Parse(format!("edge {chunk:?} must be two letters"))),
        }
    }
    let inferred = edges.iter().map(|&(x, y)| x.max(y) as usize).max().unwrap_or(0);
    let n = match n {
        Some(n) => n,
        None if inferred > 0 => inferred,
        None => {
            return Err(Error::InvalidArguments(
                "cannot infer the alphabet size of an empty edge list".into(),
            ))
        }
    };
    Relation::from_edges(n, edges)
}

/// `X × X ∖ U`, loops included in the universe.
pub fn complement(u: &Relation) -> Relation {
    Relation {
        n: u.n,
        adj: u.adj.iter().map(|b| !b).collect(),
    }
}

pub fn is_transitive(u: &Relation) -> bool {
    let n = u.n as u32;
    for x in 1..=n {
        for y in 1..=n {
            if !u.contains(x, y) {
                continue;
            }
            for z in 1..=n {
                if u.contains(y, z) && !u.contains(x, z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Han's characterization: `U` and its complement are both transitive.
pub fn is_bipartitional(u: &Relation) -> bool {
    is_transitive(u) && is_transitive(&complement(u))
}

/// Blocks `(B_1..B_k)` with underline flags `(β_1..β_k)`.
///
/// Letters inside a block are kept in decreasing order, so equal bipartitions
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedBipartition {
    blocks: Vec<Vec<u32>>,
    flags: Vec<bool>,
}

impl OrderedBipartition {
    pub fn new(blocks: Vec<Vec<u32>>, flags: Vec<bool>) -> Result<Self> {
        if blocks.len() != flags.len() {
            return Err(Error::InvalidBipartition(format!(
                "{} blocks but {} flags",
                blocks.len(),
                flags.len()
            )));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidBipartition("empty block".into()));
            }
            for &x in b {
                if x == 0 || x as usize > n {
                    return Err(Error::InvalidBipartition(format!(
                        "letter {x} outside 1..={n} (blocks must partition the alphabet)"
                    )));
                }
                if std::mem::replace(&mut seen[x as usize - 1], true) {
                    return Err(Error::InvalidBipartition(format!("letter {x} appears twice")));
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable_by(|a, b| b.cmp(a));
                b
            })
            .collect();
        Ok(Self { blocks, flags })
    }

    /// All blocks non-underlined.
    pub fn plain(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let k = blocks.len();
        Self::new(blocks, vec![false; k])
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Alphabet size covered by the blocks.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index (0-based) of every letter, indexed by `letter - 1`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                of[x as usize - 1] = i;
            }
        }
        of
    }

    /// Block masses `m_i = Σ_{x ∈ B_i} α_x`.
    pub fn masses(&self, alpha: &MultiplicityVector) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&x| u64::from(alpha.count(x))).sum())
            .collect()
    }

    /// Whether the blocks are integer intervals listed from the top, so
    /// `n ∈ B_1` and `1 ∈ B_k`.
    pub fn is_descending_intervals(&self) -> bool {
        let mut expected = self.n() as u32;
        for b in &self.blocks {
            for &x in b {
                if x != expected {
                    return false;
                }
                expected -= 1;
            }
        }
        true
    }
}

impl fmt::Display for OrderedBipartition {
    /// `{5,4} > {3} > _{2,1}_`, underscores marking underlined blocks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, &under)) in self.blocks.iter().zip(&self.flags).enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            let inner = b.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            if under {
                write!(f, "_{{{inner}}}_")?;
            } else {
                write!(f, "{{{inner}}}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for OrderedBipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut flags = Vec::new();
        for part in s.split('>') {
            let part = part.trim();
            let (under, body) = match part.strip_prefix('_').and_then(|p| p.strip_suffix('_')) {
                Some(body) => (true, body.trim()),
                None => (false, part),
            };
            let body = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("block {part:?} must look like {{a,b}}")))?;
            let letters = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad letter in {part:?}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(letters);
            flags.push(under);
        }
        Self::new(blocks, flags)
    }
}

#[derive(Serialize, Deserialize)]
struct BipartitionJson {
    blocks: Vec<Vec<u32>>,
    flags: Vec<u8>,
}

impl Serialize for OrderedBipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BipartitionJson {
            blocks: self.blocks.clone(),
            flags: self.flags.iter().map(|&b| u8::from(b)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedBipartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BipartitionJson::deserialize(d)?;
        let flags = raw
            .flags
            .iter()
            .map(|&f| match f {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(serde::de::Error::custom(format!("flag {other} is not 0 or 1"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        OrderedBipartition::new(raw.blocks, flags).map_err(serde::de::Error::custom)
    }
}

pub fn from_ordered_bipartition(bp: &OrderedBipartition) -> Relation {
    let n = bp.n();
    let of = bp.block_of();
    let mut u = Relation::empty(n);
    for x in 1..=n as u32 {
        for y in 1..=n as u32 {
            let (bx, by) = (of[x as usize - 1], of[y as usize - 1]);
            if bx < by || (bx == by && bp.flags[bx]) {
                u.insert(x, y);
            }
        }
    }
    u
}

/// Recovers the ordered bipartition of a bipartitional relation.
///
/// Letters `x ≠ y` share a block when `U` relates them in both directions or
/// in neither. Blocks are ordered by how many other blocks they point to, a
/// block is underlined iff its first letter carries a loop, and the candidate
/// is accepted only if it rebuilds `U` exactly.
pub fn to_ordered_bipartition(u: &Relation) -> Option<OrderedBipartition> {
    let n = u.n as u32;
    if n == 0 {
        return None;
    }
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for x in 1..=n {
        let home = blocks.iter_mut().find(|b| {
            let y = b[0];
            u.contains(x, y) == u.contains(y, x)
        });
        match home {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    let mut ranked: Vec<(usize, Vec<u32>)> = blocks
        .iter()
        .map(|b| {
            let out = blocks
                .iter()
                .filter(|c| c[0] != b[0] && u.contains(b[0], c[0]))
                .count();
            (out, b.clone())
        })
        .collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1[0].cmp(&a.1[0])));
    let blocks: Vec<Vec<u32>> = ranked.into_iter().map(|(_, b)| b).collect();
    let flags = blocks.iter().map(|b| u.contains(b[0], b[0])).collect();
    let bp = OrderedBipartition::new(blocks, flags).ok()?;
    (from_ordered_bipartition(&bp) == *u).then_some(bp)
}

/// Symmetric part, asymmetric part, and the support `X_U` of the symmetric part.
pub fn decompose(u: &Relation) -> (Relation, Relation, BTreeSet<u32>) {
    let mut sym = Relation::empty(u.n);
    let mut asym = Relation::empty(u.n);
    let mut support = BTreeSet::new();
    for (x, y) in u.edges() {
        if u.contains(y, x) {
            sym.insert(x, y);
            support.insert(x);
        } else {
            asym.insert(x, y);
        }
    }
    (sym, asym, support)
}

/// Loop toggles that make `U` bipartitional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialWitness {
    pub removed_loops: BTreeSet<u32>,
    pub added_loops: BTreeSet<u32>,
    pub bipartition: OrderedBipartition,
}

impl EssentialWitness {
    /// `(U ∖ {(x,x) : x ∈ I}) ∪ {(x,x) : x ∈ J}`.
    pub fn apply(&self, u: &Relation) -> Relation {
        let mut v = u.clone();
        for &x in &self.removed_loops {
            v.remove(x, x);
        }
        for &x in &self.added_loops {
            v.insert(x, x);
        }
        v
    }
}

pub fn is_essentially_bipartitional(
    u: &Relation,
    alpha: &MultiplicityVector,
) -> Result<Option<EssentialWitness>> {
    is_essentially_bipartitional_with_cap(u, alpha, DEFAULT_TOGGLE_CAP)
}

/// Searches every loop assignment on the letters of multiplicity one.
///
/// Assignments are visited in binary-counter order over those letters sorted
/// ascending, bit `i` set meaning "loop present on the i-th free letter"; the
/// first bipartitional result is returned.
pub fn is_essentially_bipartitional_with_cap(
    u: &Relation,
    alpha: &MultiplicityVector,
    cap: usize,
) -> Result<Option<EssentialWitness>> {
    if alpha.n() != u.n() {
        return Err(Error::InvalidArguments(format!(
            "relation is on 1..={} but alpha has {} letters",
            u.n(),
            alpha.n()
        )));
    }
    let free: Vec<u32> = (1..=u.n() as u32).filter(|&x| alpha.count(x) == 1).collect();
    if free.len() > cap {
        return Err(Error::SearchSpaceTooLarge {
            free: free.len(),
            cap,
        });
    }
    let mut v = u.clone();
    for mask in 0u64..1 << free.len() {
        for (i, &x) in free.iter().enumerate() {
            v.set(x, x, mask >> i & 1 == 1);
        }
        if let Some(bipartition) = to_ordered_bipartition(&v) {
            let removed_loops = free
                .iter()
                .copied()
                .filter(|&x| u.contains(x, x) && !v.contains(x, x))
                .collect();
            let added_loops = free
                .iter()
                .copied()
                .filter(|&x| !u.contains(x, x) && v.contains(x, x))
                .collect();
            return Ok(Some(EssentialWitness {
                removed_loops,
                added_loops,
                bipartition,
            }));
        }
    }
    Ok(None)
}

/// Outcome of checking the four conditions under which the graphical sorting
/// index joins `inv'` and `maj'` in equidistribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SorConditions {
    pub holds: bool,
    /// One entry per failed condition.
    pub failures: Vec<String>,
    /// Blocks of `U` (loops on multiplicity-1 letters dropped), when bipartitional.
    pub bipartition: Option<OrderedBipartition>,
}

/// Checks, on `U` with loops on multiplicity-1 letters removed:
///
/// 1. bipartitional with no underlined blocks;
/// 2. every edge `(x, y)` has `x > y`;
/// 3. all blocks but the last have at most two letters;
/// 4. a two-letter block `B_i` with `i < k` has `α_{max B_i} = 1`.
///
/// Loops on multiplicity-1 letters cannot change `inv'`, `maj'` or `sor'`
/// on `R(α)`, so they are ignored.
pub fn satisfies_sor_conditions(u: &Relation, alpha: &MultiplicityVector) -> SorConditions {
    let mut failures = Vec::new();
    if alpha.n() != u.n() {
        failures.push(format!(
            "alphabet mismatch: relation on 1..={} but alpha has {} letters",
            u.n(),
            alpha.n()
        ));
        return SorConditions {
            holds: false,
            failures,
            bipartition: None,
        };
    }
    let mut v = u.clone();
    for x in 1..=u.n() as u32 {
        if alpha.count(x) == 1 {
            v.remove(x, x);
        }
    }
    let bipartition = to_ordered_bipartition(&v);
    match &bipartition {
        None => failures.push("condition 1: U is not bipartitional".into()),
        Some(bp) => {
            let under: Vec<String> = bp
                .blocks()
                .iter()
                .zip(bp.flags())
                .filter(|(_, &f)| f)
                .map(|(b, _)| format!("{b:?}"))
                .collect();
            if !under.is_empty() {
                failures.push(format!("condition 1: underlined blocks {}", under.join(", ")));
            }
        }
    }
    let upward: Vec<(u32, u32)> = v.edges().filter(|&(x, y)| x <= y).collect();
    if !upward.is_empty() {
        failures.push(format!(
            "condition 2: edges not in the strict integer order: {upward:?}"
        ));
    }
    if let Some(bp) = &bipartition {
        let k = bp.k();
        for (i, b) in bp.blocks().iter().enumerate().take(k.saturating_sub(1)) {
            if b.len() > 2 {
                failures.push(format!("condition 3: block {} = {b:?} has {} letters", i + 1, b.len()));
            } else if b.len() == 2 {
                let top = b[0];
                if alpha.count(top) != 1 {
                    failures.push(format!(
                        "condition 4: block {} = {b:?} has alpha_{top} = {}",
                        i + 1,
                        alpha.count(top)
                    ));
                }
            }
        }
    }
    SorConditions {
        holds: failures.is_empty(),
        failures,
        bipartition,
    }
}
