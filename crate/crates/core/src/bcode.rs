//! The b-code: a bijection between `R(α)` and sequences of box-bounded
//! partitions with block markers, whose part sum is `sor'_U`.
//!
//! Defined for relations meeting the sorting conditions (see
//! [`satisfies_sor_conditions`]), whose blocks are integer intervals
//! `B_1 > B_2 > .. > B_k` listed from the top. Block `j` contributes one
//! partition with `m_j` parts (its mass), each at most `m_{j+1} + .. + m_k`,
//! and one marker:
//!
//! * a single-letter block has marker 0;
//! * a block `{y_1 < y_2}` with one copy of `y_2` records the position of
//!   `y_2` among the block's letters when the block is reached;
//! * the last block may be any size; when neither case above applies its
//!   marker is `1 +` the lexicographic rank of its letters' arrangement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{from_ordered_bipartition, satisfies_sor_conditions, OrderedBipartition, Relation};
use crate::stats::{SelectionSort, TieRule};
use crate::word::{binomial, make_word, multinomial, rank, unrank, MultiplicityVector, Word};

/// The selection-sort tie rule under which encode and decode are inverse.
pub const BCODE_TIE_RULE: TieRule = TieRule::Rightmost;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BCode {
    pub partitions: Vec<Vec<u64>>,
    pub markers: Vec<u64>,
}

impl BCode {
    /// Sum of all parts; equals `sor'_U` of the encoded word.
    pub fn total(&self) -> u64 {
        self.partitions.iter().flatten().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Marker {
    Single,
    /// Position of the unique top letter among the block's letters.
    TopPosition { top: u32 },
    /// Rank among `count` arrangements of the block's multiset.
    Arrangement { count: u64 },
}

impl Marker {
    fn range(self, mass: u64) -> (u64, u64) {
        match self {
            Marker::Single => (0, 0),
            Marker::TopPosition { .. } => (1, mass),
            Marker::Arrangement { count } => (1, count),
        }
    }
}

/// Per-block data shared by encode, decode and code enumeration.
#[derive(Debug, Clone)]
pub struct Layout {
    bp: OrderedBipartition,
    alpha: MultiplicityVector,
    relation: Relation,
    masses: Vec<u64>,
    // largest admissible part per block
    caps: Vec<u64>,
    markers: Vec<Marker>,
}

impl Layout {
    pub fn new(bp: &OrderedBipartition, alpha: &MultiplicityVector) -> Result<Self> {
        if bp.n() != alpha.n() {
            return Err(Error::InvalidBipartition(format!(
                "blocks cover 1..={} but alpha has {} letters",
                bp.n(),
                alpha.n()
            )));
        }
        let relation = from_ordered_bipartition(bp);
        let cond = satisfies_sor_conditions(&relation, alpha);
        if !cond.holds {
            return Err(Error::ConditionsNotSatisfied(cond.failures));
        }
        let masses = bp.masses(alpha);
        let k = bp.k();
        let caps = (0..k).map(|j| masses[j + 1..].iter().sum()).collect();
        let markers = bp
            .blocks()
            .iter()
            .zip(&masses)
            .map(|(b, &m)| match b[..] {
                [_] => Ok(Marker::Single),
                [top, _] if alpha.count(top) == 1 => Ok(Marker::TopPosition { top }),
                _ => {
                    let within: Vec<u64> = b.iter().map(|&x| u64::from(alpha.count(x))).collect();
                    let count = multinomial(&within).ok_or(Error::Overflow("marker range"))?;
                    debug_assert!(m == within.iter().sum::<u64>());
                    Ok(Marker::Arrangement { count })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            bp: bp.clone(),
            alpha: alpha.clone(),
            relation,
            masses,
            caps,
            markers,
        })
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// Number of valid codes, `∏_j C(m_j + cap_j, m_j) · #markers_j`.
    pub fn code_count(&self) -> Result<u64> {
        let mut total = 1u64;
        for j in 0..self.bp.k() {
            let parts = binomial(self.masses[j] + self.caps[j], self.masses[j])
                .ok_or(Error::Overflow("code count"))?;
            let (lo, hi) = self.markers[j].range(self.masses[j]);
            let choices = parts
                .checked_mul(hi - lo + 1)
                .ok_or(Error::Overflow("code count"))?;
            total = total.checked_mul(choices).ok_or(Error::Overflow("code count"))?;
        }
        Ok(total)
    }

    /// `α` restricted to block `j` (zero elsewhere).
    fn block_class(&self, j: usize) -> MultiplicityVector {
        let mut counts = vec![0u32; self.alpha.n()];
        for &x in &self.bp.blocks()[j] {
            counts[x as usize - 1] = self.alpha.count(x);
        }
        MultiplicityVector::new(counts).expect("alphabet is nonempty")
    }

    fn validate(&self, code: &BCode) -> Result<()> {
        let k = self.bp.k();
        if code.partitions.len() != k || code.markers.len() != k {
            return Err(Error::InvalidCode(format!(
                "expected {k} partitions and {k} markers, got {} and {}",
                code.partitions.len(),
                code.markers.len()
            )));
        }
        for j in 0..k {
            let parts = &code.partitions[j];
            if parts.len() as u64 != self.masses[j] {
                return Err(Error::InvalidCode(format!(
                    "partition {} has {} parts, block mass is {}",
                    j + 1,
                    parts.len(),
                    self.masses[j]
                )));
            }
            if parts.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::InvalidCode(format!("partition {} is not nonincreasing", j + 1)));
            }
            if let Some(&big) = parts.iter().find(|&&b| b > self.caps[j]) {
                return Err(Error::InvalidCode(format!(
                    "partition {} has part {big} > {}",
                    j + 1,
                    self.caps[j]
                )));
            }
            let (lo, hi) = self.markers[j].range(self.masses[j]);
            let p = code.markers[j];
            if p < lo || p > hi {
                return Err(Error::InvalidCode(format!(
                    "marker {} = {p} outside {lo}..={hi}",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

pub fn bcode_encode(w: &Word, bp: &OrderedBipartition, alpha: &MultiplicityVector) -> Result<BCode> {
    let layout = Layout::new(bp, alpha)?;
    encode_with(&layout, w)
}

pub fn encode_with(layout: &Layout, w: &Word) -> Result<BCode> {
    if w.class() != &layout.alpha {
        make_word(w.letters().to_vec(), &layout.alpha)?;
    }
    let mut sort = SelectionSort::new(&layout.relation, w.letters(), BCODE_TIE_RULE);
    let mut partitions = Vec::with_capacity(layout.bp.k());
    let mut markers = Vec::with_capacity(layout.bp.k());
    for (j, block) in layout.bp.blocks().iter().enumerate() {
        let unsorted = &sort.word()[..sort.unsorted()];
        let sub: Vec<u32> = unsorted.iter().copied().filter(|x| block.contains(x)).collect();
        let marker = match layout.markers[j] {
            Marker::Single => 0,
            Marker::TopPosition { top } => sub.iter().position(|&x| x == top).map_or(0, |p| p as u64 + 1),
            Marker::Arrangement { .. } => 1 + rank(&sub, &layout.block_class(j))?,
        };
        let mut parts = Vec::with_capacity(layout.masses[j] as usize);
        for _ in 0..layout.masses[j] {
            let step = sort.step().expect("block masses sum to the word length");
            debug_assert!(block.contains(&step.letter));
            parts.push(step.contribution);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        partitions.push(parts);
        markers.push(marker);
    }
    Ok(BCode { partitions, markers })
}

pub fn bcode_decode(code: &BCode, bp: &OrderedBipartition, alpha: &MultiplicityVector) -> Result<Word> {
    let layout = Layout::new(bp, alpha)?;
    decode_with(&layout, code)
}

/// Rebuilds the word back to front: block `B_k` first, each block appended in
/// nondecreasing order and then swapped leftward by its parts.
pub fn decode_with(layout: &Layout, code: &BCode) -> Result<Word> {
    layout.validate(code)?;
    let mut w: Vec<u32> = Vec::with_capacity(layout.alpha.total());
    let swap_left = |w: &mut Vec<u32>, pos: usize, by: u64| -> Result<()> {
        let target = (pos as u64)
            .checked_sub(by)
            .ok_or_else(|| Error::InvalidCode(format!("swap by {by} runs past position 1")))?;
        w.swap(pos, target as usize);
        Ok(())
    };
    for j in (0..layout.bp.k()).rev() {
        let start = w.len();
        let parts = &code.partitions[j];
        match layout.markers[j] {
            Marker::Single => {
                w.extend(layout.block_class(j).ascending_letters());
                for (i, &b) in parts.iter().enumerate() {
                    swap_left(&mut w, start + i, b)?;
                }
            }
            Marker::TopPosition { .. } => {
                w.extend(layout.block_class(j).ascending_letters());
                let m = parts.len();
                let p = code.markers[j] as usize;
                let top_part = parts[p - 1];
                let rest = parts.iter().enumerate().filter(|&(i, _)| i != p - 1).map(|(_, &b)| b);
                for (i, b) in rest.enumerate() {
                    swap_left(&mut w, start + i, b)?;
                }
                swap_left(&mut w, start + m - 1, top_part + (m - p) as u64)?;
            }
            Marker::Arrangement { .. } => {
                let arrangement = unrank(&layout.block_class(j), code.markers[j] - 1)?;
                w.extend(arrangement);
                for (i, &b) in parts.iter().enumerate() {
                    swap_left(&mut w, start + i, b)?;
                }
            }
        }
    }
    make_word(w, &layout.alpha)
}

/// Every code satisfying the part and marker constraints for `(bp, α)`.
pub fn all_codes(bp: &OrderedBipartition, alpha: &MultiplicityVector) -> Result<Vec<BCode>> {
    let layout = Layout::new(bp, alpha)?;
    let per_block: Vec<Vec<(Vec<u64>, u64)>> = (0..bp.k())
        .map(|j| {
            let mut parts = Vec::new();
            box_partitions(layout.masses[j] as usize, layout.caps[j], &mut Vec::new(), &mut parts);
            let (lo, hi) = layout.markers[j].range(layout.masses[j]);
            parts
                .into_iter()
                .flat_map(|p| (lo..=hi).map(move |m| (p.clone(), m)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = BCode {
        partitions: Vec::new(),
        markers: Vec::new(),
    };
    product(&per_block, &mut current, &mut out);
    Ok(out)
}

fn product(per_block: &[Vec<(Vec<u64>, u64)>], current: &mut BCode, out: &mut Vec<BCode>) {
    let Some((first, rest)) = per_block.split_first() else {
        out.push(current.clone());
        return;
    };
    for (parts, marker) in first {
        current.partitions.push(parts.clone());
        current.markers.push(*marker);
        product(rest, current, out);
        current.partitions.pop();
        current.markers.pop();
    }
}

/// Nonincreasing sequences of exactly `len` parts in `0..=cap`.
fn box_partitions(len: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap);
    for part in (0..=top).rev() {
        prefix.push(part);
        box_partitions(len, cap, prefix, out);
        prefix.pop();
    }
}
