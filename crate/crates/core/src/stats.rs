//! Graphical statistics `inv'_U`, `Des'_U`, `maj'_U` and `sor'_U`.
//!
//! With `U` the strict integer order every statistic reduces to its classical
//! counterpart (`inv`, `Des`, `maj`, `sor`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::word::{MultiplicityVector, Word};

/// Default cap on `|α|` for [`maximal_chain_word`].
pub const DEFAULT_CHAIN_CAP: u64 = 12;

/// Which copy of the largest letter the selection sort moves when several
/// copies are still unsorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// The copy that sat furthest right in the original input word.
    CopyLabelMax,
    /// The copy at the smallest current position.
    Leftmost,
    /// The copy at the largest current position. Copies of a letter keep
    /// their relative order, and this is the rule under which `sor'_U` is
    /// Mahonian and the b-code is a bijection.
    #[default]
    Rightmost,
}

impl TieRule {
    pub const ALL: [TieRule; 3] = [TieRule::CopyLabelMax, TieRule::Leftmost, TieRule::Rightmost];

    pub fn name(self) -> &'static str {
        match self {
            TieRule::CopyLabelMax => "copy-label-max",
            TieRule::Leftmost => "leftmost",
            TieRule::Rightmost => "rightmost",
        }
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TieRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "copy-label" | "copy-label-max" => Ok(TieRule::CopyLabelMax),
            "leftmost" => Ok(TieRule::Leftmost),
            "rightmost" => Ok(TieRule::Rightmost),
            other => Err(Error::Parse(format!(
                "unknown tie rule {other:?} (expected copy-label, leftmost or rightmost)"
            ))),
        }
    }
}

/// One selection-sort step: the letter at `mover` is swapped into `target`
/// (both 1-based), jumping over `contribution` letters it is related to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortStep {
    pub mover: usize,
    pub target: usize,
    pub letter: u32,
    pub contribution: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortTrace {
    /// Targets run `m, m-1, .., 1`.
    pub steps: Vec<SortStep>,
    pub final_word: Word,
}

impl SortTrace {
    pub fn total(&self) -> u64 {
        self.steps.iter().map(|s| s.contribution).sum()
    }
}

fn check_alphabet(u: &Relation, letters: &[u32]) -> Result<()> {
    match letters.iter().find(|&&x| x == 0 || x as usize > u.n()) {
        Some(&letter) => Err(Error::AlphabetMismatch { letter, n: u.n() }),
        None => Ok(()),
    }
}

pub(crate) fn inversions_of(u: &Relation, w: &[u32]) -> u64 {
    let mut total = 0;
    for (i, &x) in w.iter().enumerate() {
        total += w[i + 1..].iter().filter(|&&y| u.contains(x, y)).count() as u64;
    }
    total
}

pub(crate) fn major_index_of(u: &Relation, w: &[u32]) -> u64 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| u.contains(p[0], p[1]))
        .map(|(i, _)| i as u64 + 1)
        .sum()
}

pub fn graphical_inversions(u: &Relation, w: &Word) -> Result<u64> {
    check_alphabet(u, w.letters())?;
    Ok(inversions_of(u, w.letters()))
}

/// Positions `i` (1-based) with `(x_i, x_{i+1}) ∈ U`.
pub fn graphical_descent_set(u: &Relation, w: &Word) -> Result<Vec<usize>> {
    check_alphabet(u, w.letters())?;
    Ok(w.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| u.contains(p[0], p[1]))
        .map(|(i, _)| i + 1)
        .collect())
}

pub fn graphical_descents(u: &Relation, w: &Word) -> Result<usize> {
    graphical_descent_set(u, w).map(|d| d.len())
}

pub fn graphical_major_index(u: &Relation, w: &Word) -> Result<u64> {
    check_alphabet(u, w.letters())?;
    Ok(major_index_of(u, w.letters()))
}

/// Straight selection sort generalized to words, one step at a time.
///
/// Each step places the largest letter among positions `1..=i` at position
/// `i` by a transposition and counts the positions `h ∈ (j, i]` of the
/// pre-swap word with `(x_j, x_h) ∈ U`.
pub(crate) struct SelectionSort<'a> {
    u: &'a Relation,
    rule: TieRule,
    word: Vec<u32>,
    // original index of the copy now at each position
    labels: Vec<usize>,
    unsorted: usize,
}

impl<'a> SelectionSort<'a> {
    pub(crate) fn new(u: &'a Relation, letters: &[u32], rule: TieRule) -> Self {
        Self {
            u,
            rule,
            word: letters.to_vec(),
            labels: (0..letters.len()).collect(),
            unsorted: letters.len(),
        }
    }

    pub(crate) fn word(&self) -> &[u32] {
        &self.word
    }

    /// Length of the still-unsorted prefix.
    pub(crate) fn unsorted(&self) -> usize {
        self.unsorted
    }

    pub(crate) fn step(&mut self) -> Option<SortStep> {
        if self.unsorted == 0 {
            return None;
        }
        let i = self.unsorted - 1;
        let prefix = &self.word[..=i];
        let top = *prefix.iter().max()?;
        let j = match self.rule {
            TieRule::Leftmost => prefix.iter().position(|&x| x == top)?,
            TieRule::Rightmost => prefix.iter().rposition(|&x| x == top)?,
            TieRule::CopyLabelMax => (0..=i)
                .filter(|&p| prefix[p] == top)
                .max_by_key(|&p| self.labels[p])?,
        };
        let contribution = self.word[j + 1..=i]
            .iter()
            .filter(|&&y| self.u.contains(top, y))
            .count() as u64;
        self.word.swap(j, i);
        self.labels.swap(j, i);
        self.unsorted -= 1;
        Some(SortStep {
            mover: j + 1,
            target: i + 1,
            letter: top,
            contribution,
        })
    }
}

pub(crate) fn sorting_index_of(u: &Relation, w: &[u32], rule: TieRule) -> u64 {
    let mut sort = SelectionSort::new(u, w, rule);
    std::iter::from_fn(|| sort.step()).map(|s| s.contribution).sum()
}

pub fn graphical_sorting_index(u: &Relation, w: &Word, rule: TieRule) -> Result<u64> {
    check_alphabet(u, w.letters())?;
    Ok(sorting_index_of(u, w.letters(), rule))
}

pub fn sort_trace(u: &Relation, w: &Word, rule: TieRule) -> Result<SortTrace> {
    check_alphabet(u, w.letters())?;
    let mut sort = SelectionSort::new(u, w.letters(), rule);
    let steps: Vec<SortStep> = std::iter::from_fn(|| sort.step()).collect();
    let final_word = Word::from_parts_unchecked(sort.word, w.class().clone());
    Ok(SortTrace { steps, final_word })
}

/// Classical inversion number (graphical with the strict integer order).
pub fn inversions(w: &Word) -> u64 {
    inversions_of(&Relation::natural_order(w.class().n()), w.letters())
}

pub fn major_index(w: &Word) -> u64 {
    major_index_of(&Relation::natural_order(w.class().n()), w.letters())
}

pub fn sorting_index(w: &Word, rule: TieRule) -> u64 {
    sorting_index_of(&Relation::natural_order(w.class().n()), w.letters(), rule)
}

/// Longest `U`-descending chains peeled from the multigraph `(α, U)`, in peel
/// order. Among equally long chains the lexicographically smallest is taken.
pub fn maximal_chains(u: &Relation, alpha: &MultiplicityVector) -> Result<Vec<Vec<u32>>> {
    maximal_chains_with_cap(u, alpha, DEFAULT_CHAIN_CAP)
}

pub fn maximal_chains_with_cap(
    u: &Relation,
    alpha: &MultiplicityVector,
    cap: u64,
) -> Result<Vec<Vec<u32>>> {
    if alpha.n() != u.n() {
        return Err(Error::InvalidArguments(format!(
            "relation is on 1..={} but alpha has {} letters",
            u.n(),
            alpha.n()
        )));
    }
    let size = alpha.total() as u64;
    if size > cap {
        return Err(Error::SizeCapExceeded { size, cap });
    }
    let mut residual = alpha.counts().to_vec();
    let mut search = ChainSearch {
        u,
        memo: HashMap::new(),
    };
    let mut chains = Vec::new();
    while residual.iter().any(|&c| c > 0) {
        let chain = search.smallest_longest_chain(&mut residual);
        chains.push(chain);
    }
    Ok(chains)
}

/// `w = w_k .. w_2 w_1` where `w_1` is the first chain peeled off.
pub fn maximal_chain_word(u: &Relation, alpha: &MultiplicityVector) -> Result<Word> {
    maximal_chain_word_with_cap(u, alpha, DEFAULT_CHAIN_CAP)
}

pub fn maximal_chain_word_with_cap(
    u: &Relation,
    alpha: &MultiplicityVector,
    cap: u64,
) -> Result<Word> {
    let chains = maximal_chains_with_cap(u, alpha, cap)?;
    let letters: Vec<u32> = chains.into_iter().rev().flatten().collect();
    Ok(Word::from_parts_unchecked(letters, alpha.clone()))
}

struct ChainSearch<'a> {
    u: &'a Relation,
    // (residual multiplicities, last letter or 0) -> longest extension
    memo: HashMap<(Vec<u32>, u32), usize>,
}

impl ChainSearch<'_> {
    fn can_follow(&self, last: u32, y: u32) -> bool {
        last == 0 || self.u.contains(last, y)
    }

    fn longest(&mut self, residual: &mut Vec<u32>, last: u32) -> usize {
        if let Some(&v) = self.memo.get(&(residual.clone(), last)) {
            return v;
        }
        let mut best = 0;
        for y in 1..=residual.len() as u32 {
            if residual[y as usize - 1] == 0 || !self.can_follow(last, y) {
                continue;
            }
            residual[y as usize - 1] -= 1;
            best = best.max(1 + self.longest(residual, y));
            residual[y as usize - 1] += 1;
        }
        self.memo.insert((residual.clone(), last), best);
        best
    }

    /// Removes a lexicographically smallest longest chain from `residual`.
    fn smallest_longest_chain(&mut self, residual: &mut Vec<u32>) -> Vec<u32> {
        let mut target = self.longest(residual, 0);
        let mut chain = Vec::with_capacity(target);
        let mut last = 0;
        while target > 0 {
            let next = (1..=residual.len() as u32)
                .find(|&y| {
                    if residual[y as usize - 1] == 0 || !self.can_follow(last, y) {
                        return false;
                    }
                    residual[y as usize - 1] -= 1;
                    let ok = 1 + self.longest(residual, y) == target;
                    residual[y as usize - 1] += 1;
                    ok
                })
                .expect("memoized length is attained by some letter");
            residual[next as usize - 1] -= 1;
            chain.push(next);
            last = next;
            target -= 1;
        }
        chain
    }
}
