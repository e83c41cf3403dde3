//! Exact polynomials in `q` with nonnegative integer coefficients, and the
//! closed-form generating functions for graphical statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{from_ordered_bipartition, satisfies_sor_conditions, OrderedBipartition};
use crate::word::{binomial, multinomial, MultiplicityVector};

/// Dense coefficients, index = exponent of `q`, never with a trailing zero.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "CoeffsJson", into = "CoeffsJson")]
pub struct QPolynomial {
    coeffs: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CoeffsJson {
    coeffs: Vec<u64>,
}

impl From<CoeffsJson> for QPolynomial {
    fn from(raw: CoeffsJson) -> Self {
        QPolynomial::from_coeffs(raw.coeffs)
    }
}

impl From<QPolynomial> for CoeffsJson {
    fn from(p: QPolynomial) -> Self {
        CoeffsJson { coeffs: p.coeffs }
    }
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: u64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · q^e`.
    pub fn monomial(c: u64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> u64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Adds `c · q^e` in place.
    pub fn add_term(&mut self, c: u64, e: usize) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        if self.coeffs.len() <= e {
            self.coeffs.resize(e + 1, 0);
        }
        self.coeffs[e] = self.coeffs[e]
            .checked_add(c)
            .ok_or(Error::Overflow("polynomial coefficient"))?;
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, &c) in other.coeffs.iter().enumerate() {
            out.add_term(c, e)?;
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("polynomial product"))?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn checked_scale(&self, c: u64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("polynomial scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Value at `q = 1`, the total count.
    pub fn eval_at_one(&self) -> Result<u64> {
        self.coeffs.iter().try_fold(0u64, |acc, &c| {
            acc.checked_add(c).ok_or(Error::Overflow("evaluation at q = 1"))
        })
    }

    /// Symmetric under `q^e ↔ q^{deg - e}` once the lowest zero terms are ignored.
    pub fn is_palindromic(&self) -> bool {
        let low = self.coeffs.iter().position(|&c| c != 0).unwrap_or(0);
        let body = &self.coeffs[low..];
        body.iter().eq(body.iter().rev())
    }
}

impl fmt::Display for QPolynomial {
    /// `1 + 2*q + 3*q^2`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("q")?,
                (1, c) => write!(f, "{c}*q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, c) => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse(format!("bad polynomial term {t:?}"));
        let mut p = QPolynomial::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (c, e) = match term.split_once('q') {
                None => (term.parse::<u64>().map_err(|_| bad(term))?, 0),
                Some((head, tail)) => {
                    let c = match head.trim().strip_suffix('*') {
                        Some(c) => c.trim().parse::<u64>().map_err(|_| bad(term))?,
                        None if head.trim().is_empty() => 1,
                        None => return Err(bad(term)),
                    };
                    let e = match tail.trim().strip_prefix('^') {
                        Some(e) => e.trim().parse::<usize>().map_err(|_| bad(term))?,
                        None if tail.trim().is_empty() => 1,
                        None => return Err(bad(term)),
                    };
                    (c, e)
                }
            };
            p.add_term(c, e)?;
        }
        Ok(p)
    }
}

/// Gaussian binomial `[n choose k]_q` by the q-Pascal recurrence
/// `[r, i] = [r-1, i-1] + q^i [r-1, i]`.
pub fn q_binomial(n: u64, k: u64) -> Result<QPolynomial> {
    if k > n {
        return Err(Error::InvalidArguments(format!("q_binomial needs k <= n, got n={n}, k={k}")));
    }
    let k = k.min(n - k) as usize;
    // row[i] = [r choose i]_q for the current r
    let mut row = vec![QPolynomial::one()];
    for r in 1..=n as usize {
        let width = r.min(k);
        let mut next = Vec::with_capacity(width + 1);
        next.push(QPolynomial::one());
        for i in 1..=width {
            let left = &row[i - 1];
            let shifted = row.get(i).map(|p| p.shift(i)).unwrap_or_default();
            next.push(left.checked_add(&shifted)?);
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// `[Σ parts; parts]_q` as `∏_i [p_1+..+p_i choose p_i]_q`.
pub fn q_multinomial(parts: &[u64]) -> Result<QPolynomial> {
    let mut acc = QPolynomial::one();
    let mut placed = 0u64;
    for &p in parts {
        placed = placed.checked_add(p).ok_or(Error::Overflow("q-multinomial"))?;
        acc = acc.checked_mul(&q_binomial(placed, p)?)?;
    }
    Ok(acc)
}

/// Coefficient of `q^s` counts the partitions of `s` into at most `k` parts,
/// each at most `j`.
///
/// Computed by a knapsack over part sizes, independently of [`q_binomial`].
pub fn box_partition_counts(j: u64, k: u64) -> Result<QPolynomial> {
    let (j, k) = (j as usize, k as usize);
    let max = j * k;
    // dp[c][s]: multisets of c parts from 1..=j with sum s
    let mut dp = vec![vec![0u64; max + 1]; k + 1];
    dp[0][0] = 1;
    for part in 1..=j {
        for c in 1..=k {
            for s in part..=max {
                let add = dp[c - 1][s - part];
                if add > 0 {
                    dp[c][s] = dp[c][s]
                        .checked_add(add)
                        .ok_or(Error::Overflow("box partition count"))?;
                }
            }
        }
    }
    let mut out = vec![0u64; max + 1];
    for row in &dp {
        for (s, &v) in row.iter().enumerate() {
            out[s] = out[s].checked_add(v).ok_or(Error::Overflow("box partition count"))?;
        }
    }
    Ok(QPolynomial::from_coeffs(out))
}

/// `Σ_{i=0}^{min(a,b)} C(a, i)`.
pub fn partial_binomial_sum(a: u64, b: u64) -> u64 {
    (0..=a.min(b)).map(|i| binomial(a, i).expect("small binomial")).sum()
}

fn check_cover(alpha: &MultiplicityVector, bp: &OrderedBipartition) -> Result<()> {
    if bp.n() != alpha.n() {
        return Err(Error::InvalidBipartition(format!(
            "blocks cover 1..={} but alpha has {} letters",
            bp.n(),
            alpha.n()
        )));
    }
    Ok(())
}

/// `[|α|; m_1..m_k]_q` times the scalar `∏_j C(m_j; α(B_j))`.
fn block_product(alpha: &MultiplicityVector, bp: &OrderedBipartition) -> Result<QPolynomial> {
    let masses = bp.masses(alpha);
    let mut scalar = 1u64;
    for b in bp.blocks() {
        let within: Vec<u64> = b.iter().map(|&x| u64::from(alpha.count(x))).collect();
        let c = multinomial(&within).ok_or(Error::Overflow("block multinomial"))?;
        scalar = scalar.checked_mul(c).ok_or(Error::Overflow("block multinomial"))?;
    }
    q_multinomial(&masses)?.checked_scale(scalar)
}

/// Distribution of `inv'_U` (and `maj'_U`) over `R(α)` for the bipartitional
/// relation with blocks `bp`: the block product times `q^{Σ β_j C(m_j, 2)}`.
pub fn gf_bipartitional(alpha: &MultiplicityVector, bp: &OrderedBipartition) -> Result<QPolynomial> {
    check_cover(alpha, bp)?;
    let masses = bp.masses(alpha);
    let shift: u64 = masses
        .iter()
        .zip(bp.flags())
        .filter(|(_, &under)| under)
        .map(|(&m, _)| m * m.saturating_sub(1) / 2)
        .sum();
    Ok(block_product(alpha, bp)?.shift(shift as usize))
}

/// Distribution of `sor'_U` over `R(α)` when `U` (built from `bp`) meets the
/// sorting conditions.
pub fn gf_sorting(alpha: &MultiplicityVector, bp: &OrderedBipartition) -> Result<QPolynomial> {
    check_cover(alpha, bp)?;
    let cond = satisfies_sor_conditions(&from_ordered_bipartition(bp), alpha);
    if !cond.holds {
        return Err(Error::ConditionsNotSatisfied(cond.failures));
    }
    block_product(alpha, bp)
}
