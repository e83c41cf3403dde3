//! Words over the alphabet `{1..n}` and their rearrangement classes.
//!
//! A [`MultiplicityVector`] `α = (α_1, .., α_n)` fixes the class `R(α)` of all
//! words with exactly `α_i` copies of letter `i`. Classes are enumerated in
//! lexicographic order of their letter sequences, which makes every
//! enumeration-derived artifact reproducible.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on `|R(α)|` for exhaustive enumeration.
pub const DEFAULT_MAX_CLASS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiplicityVector {
    counts: Vec<u32>,
}

impl MultiplicityVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArguments(
                "a multiplicity vector needs at least one letter".into(),
            ));
        }
        Ok(Self { counts })
    }

    /// Multiplicities of the letters occurring in `letters`, over the alphabet `1..=n`.
    pub fn of_letters(letters: &[u32], n: usize) -> Result<Self> {
        let mut counts = vec![0u32; n];
        for &x in letters {
            if x == 0 || x as usize > n {
                return Err(Error::LetterOutOfRange { letter: x, n });
            }
            counts[x as usize - 1] += 1;
        }
        Self::new(counts)
    }

    /// Alphabet size `n`.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Multiplicity of `letter` (1-based); zero outside the alphabet.
    pub fn count(&self, letter: u32) -> u32 {
        match letter {
            0 => 0,
            x => self.counts.get(x as usize - 1).copied().unwrap_or(0),
        }
    }

    /// Total mass `|α|`, the length of every word in the class.
    pub fn total(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// The weakly increasing word `1^α_1 2^α_2 .. n^α_n`.
    pub fn ascending_letters(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize))
            .collect()
    }

    pub fn class_size(&self) -> Result<u64> {
        class_size(self)
    }
}

impl TryFrom<Vec<u32>> for MultiplicityVector {
    type Error = Error;

    fn try_from(counts: Vec<u32>) -> Result<Self> {
        Self::new(counts)
    }
}

impl From<MultiplicityVector> for Vec<u32> {
    fn from(alpha: MultiplicityVector) -> Self {
        alpha.counts
    }
}

impl FromStr for MultiplicityVector {
    type Err = Error;

    /// Parses the comma-separated form `2,1,1,3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A word `x_1 .. x_m` validated against its rearrangement class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    class: MultiplicityVector,
}

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn class(&self) -> &MultiplicityVector {
        &self.class
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Builds a word whose class is read off its letters, over the alphabet
    /// `1..=n` with `n` the largest letter (at least 1).
    pub fn from_letters(letters: Vec<u32>) -> Result<Self> {
        let n = letters.iter().copied().max().unwrap_or(1).max(1) as usize;
        Self::with_alphabet(letters, n)
    }

    /// Builds a word over the alphabet `1..=n`.
    pub fn with_alphabet(letters: Vec<u32>, n: usize) -> Result<Self> {
        let class = MultiplicityVector::of_letters(&letters, n)?;
        Ok(Self { letters, class })
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<u32>, class: MultiplicityVector) -> Self {
        debug_assert_eq!(letters.len(), class.total());
        Self { letters, class }
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }
}

/// Validates `letters` as a member of `R(α)`.
pub fn make_word(letters: Vec<u32>, alpha: &MultiplicityVector) -> Result<Word> {
    let n = alpha.n();
    let mut seen = vec![0u64; n];
    for &x in &letters {
        if x == 0 || x as usize > n {
            return Err(Error::LetterOutOfRange { letter: x, n });
        }
        seen[x as usize - 1] += 1;
    }
    for (i, (&found, &expected)) in seen.iter().zip(alpha.counts()).enumerate() {
        if found != u64::from(expected) {
            return Err(Error::MultiplicityMismatch {
                letter: i as u32 + 1,
                expected: u64::from(expected),
                found,
            });
        }
    }
    Ok(Word {
        letters,
        class: alpha.clone(),
    })
}

/// Parses a word either as contiguous digits (`143123123`) or as
/// whitespace-separated integers (`1 4 3 12`).
pub fn parse_letters(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    if tokens.len() == 1 && tokens[0].len() > 1 {
        return tokens[0]
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in word {s:?}")))
            })
            .collect();
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad letter {t:?} in word {s:?}")))
        })
        .collect()
}

/// Renders letters as contiguous digits when every letter is a single digit,
/// otherwise space-separated.
pub fn render_letters(letters: &[u32], n: usize) -> String {
    if n <= 9 {
        letters.iter().map(|x| char::from_digit(*x, 10).unwrap_or('?')).collect()
    } else {
        letters.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::from_letters(parse_letters(s)?)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters, self.class.n()))
    }
}

/// `|α|! / ∏ α_i!`, overflow-checked.
pub fn class_size(alpha: &MultiplicityVector) -> Result<u64> {
    let mut size: u64 = 1;
    let mut placed: u64 = 0;
    for &c in alpha.counts() {
        placed += u64::from(c);
        let b = binomial(placed, u64::from(c)).ok_or(Error::Overflow("class size"))?;
        size = size.checked_mul(b).ok_or(Error::Overflow("class size"))?;
    }
    Ok(size)
}

/// Ordinary binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// Multinomial coefficient `(Σ parts)! / ∏ parts!`, `None` on overflow.
pub fn multinomial(parts: &[u64]) -> Option<u64> {
    let mut acc: u64 = 1;
    let mut placed: u64 = 0;
    for &p in parts {
        placed = placed.checked_add(p)?;
        acc = acc.checked_mul(binomial(placed, p)?)?;
    }
    Some(acc)
}

/// Lexicographic enumeration of `R(α)`, optionally restricted to an index range.
#[derive(Debug, Clone)]
pub struct RearrangementClass {
    class: MultiplicityVector,
    current: Vec<u32>,
    remaining: u64,
    started: bool,
}

/// Enumerates `R(α)` with the default cap of 10⁷ words.
pub fn rearrangement_class(alpha: &MultiplicityVector) -> Result<RearrangementClass> {
    rearrangement_class_with_cap(alpha, DEFAULT_MAX_CLASS)
}

pub fn rearrangement_class_with_cap(
    alpha: &MultiplicityVector,
    cap: u64,
) -> Result<RearrangementClass> {
    let size = class_size(alpha)?;
    if size > cap {
        return Err(Error::ClassTooLarge { size, cap });
    }
    Ok(RearrangementClass {
        class: alpha.clone(),
        current: alpha.ascending_letters(),
        remaining: size,
        started: false,
    })
}

impl RearrangementClass {
    /// The words with lexicographic index in `start..end`.
    pub fn range(alpha: &MultiplicityVector, start: u64, end: u64) -> Result<Self> {
        let size = class_size(alpha)?;
        let end = end.min(size);
        let start = start.min(end);
        let current = if start < size {
            unrank(alpha, start)?
        } else {
            alpha.ascending_letters()
        };
        Ok(Self {
            class: alpha.clone(),
            current,
            remaining: end - start,
            started: false,
        })
    }

    /// Advances and exposes the next word as a borrowed slice, avoiding an
    /// allocation per word.
    pub fn next_letters(&mut self) -> Option<&[u32]> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            next_permutation(&mut self.current);
        }
        self.started = true;
        self.remaining -= 1;
        Some(&self.current)
    }
}

impl Iterator for RearrangementClass {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let class = self.class.clone();
        self.next_letters()
            .map(|letters| Word::from_parts_unchecked(letters.to_vec(), class))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// The word of `R(α)` at lexicographic position `index`.
pub fn unrank(alpha: &MultiplicityVector, mut index: u64) -> Result<Vec<u32>> {
    let size = class_size(alpha)?;
    if index >= size {
        return Err(Error::InvalidArguments(format!(
            "index {index} out of range for a class of {size} words"
        )));
    }
    let mut counts: Vec<u64> = alpha.counts().iter().map(|&c| u64::from(c)).collect();
    let mut out = Vec::with_capacity(alpha.total());
    for _ in 0..alpha.total() {
        for letter in 0..counts.len() {
            if counts[letter] == 0 {
                continue;
            }
            counts[letter] -= 1;
            let block = multinomial(&counts).ok_or(Error::Overflow("unrank"))?;
            if index < block {
                out.push(letter as u32 + 1);
                break;
            }
            index -= block;
            counts[letter] += 1;
        }
    }
    Ok(out)
}

/// Lexicographic position of `letters` within its own rearrangement class.
pub fn rank(letters: &[u32], alpha: &MultiplicityVector) -> Result<u64> {
    let mut counts: Vec<u64> = alpha.counts().iter().map(|&c| u64::from(c)).collect();
    let mut index = 0u64;
    for &x in letters {
        let x = x as usize;
        if x == 0 || x > counts.len() || counts[x - 1] == 0 {
            return Err(Error::InvalidArguments("letters do not match the class".into()));
        }
        for smaller in 0..x - 1 {
            if counts[smaller] > 0 {
                counts[smaller] -= 1;
                index += multinomial(&counts).ok_or(Error::Overflow("rank"))?;
                counts[smaller] += 1;
            }
        }
        counts[x - 1] -= 1;
    }
    Ok(index)
}

/// Next lexicographic permutation of a multiset; returns false (and leaves
/// the slice sorted ascending) after the last one.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
