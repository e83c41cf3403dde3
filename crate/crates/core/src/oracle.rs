//! Brute-force distributions and exhaustive equidistribution checks.
//!
//! Everything here enumerates: distributions walk the whole class `R(α)`,
//! theorem sweeps walk every relation on `{1..n}`. Relation universes are
//! indexed by row-major bitmasks over the `n²` ordered pairs, so reports
//! list disagreements in a reproducible order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::QPolynomial;
use crate::relation::{is_essentially_bipartitional, satisfies_sor_conditions, Relation};
use crate::stats::{inversions_of, major_index_of, sorting_index_of, TieRule};
use crate::word::{class_size, MultiplicityVector, RearrangementClass, DEFAULT_MAX_CLASS};

/// Words per shard when a class is split across workers.
const SHARD_LEN: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticId {
    InvGraphical,
    MajGraphical,
    SorGraphical,
    Inv,
    Maj,
    Sor,
}

impl StatisticId {
    /// Classical statistics are the graphical ones for the strict integer order.
    pub fn is_classical(self) -> bool {
        matches!(self, StatisticId::Inv | StatisticId::Maj | StatisticId::Sor)
    }

    pub fn graphical(self) -> StatisticId {
        match self {
            StatisticId::Inv => StatisticId::InvGraphical,
            StatisticId::Maj => StatisticId::MajGraphical,
            StatisticId::Sor => StatisticId::SorGraphical,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatisticId::InvGraphical => "inv-graphical",
            StatisticId::MajGraphical => "maj-graphical",
            StatisticId::SorGraphical => "sor-graphical",
            StatisticId::Inv => "inv",
            StatisticId::Maj => "maj",
            StatisticId::Sor => "sor",
        }
    }

    fn eval(self, u: &Relation, w: &[u32], rule: TieRule) -> u64 {
        match self.graphical() {
            StatisticId::InvGraphical => inversions_of(u, w),
            StatisticId::MajGraphical => major_index_of(u, w),
            _ => sorting_index_of(u, w, rule),
        }
    }
}

impl fmt::Display for StatisticId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatisticId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "inv-graphical" | "inv'" => StatisticId::InvGraphical,
            "maj-graphical" | "maj'" => StatisticId::MajGraphical,
            "sor-graphical" | "sor'" => StatisticId::SorGraphical,
            "inv" => StatisticId::Inv,
            "maj" => StatisticId::Maj,
            "sor" => StatisticId::Sor,
            other => return Err(Error::Parse(format!("unknown statistic {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest class enumerated for a single distribution.
    pub max_class: u64,
    /// Largest alphabet for a full relation sweep.
    pub max_universe_n: usize,
    pub tie_rule: TieRule,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_class: DEFAULT_MAX_CLASS,
            max_universe_n: 3,
            tie_rule: TieRule::default(),
            jobs: None,
        }
    }
}

impl OracleConfig {
    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map(|pool| pool.install(f))
                .unwrap_or_else(|_| panic!("could not start a pool of {jobs} threads")),
            None => f(),
        }
    }
}

fn check_class(alpha: &MultiplicityVector, u: &Relation, cap: u64) -> Result<u64> {
    if u.n() != alpha.n() {
        return Err(Error::InvalidArguments(format!(
            "relation is on 1..={} but alpha has {} letters",
            u.n(),
            alpha.n()
        )));
    }
    let size = class_size(alpha)?;
    if size > cap {
        return Err(Error::ClassTooLarge { size, cap });
    }
    Ok(size)
}

fn accumulate(hist: &mut Vec<u64>, value: u64) {
    let v = value as usize;
    if hist.len() <= v {
        hist.resize(v + 1, 0);
    }
    hist[v] += 1;
}

fn merge(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    for (ha, hb) in a.iter_mut().zip(b) {
        if ha.len() < hb.len() {
            ha.resize(hb.len(), 0);
        }
        for (x, y) in ha.iter_mut().zip(hb) {
            *x += y;
        }
    }
    a
}

fn histograms_of<'w>(
    stats: &[StatisticId],
    u: &Relation,
    words: impl Iterator<Item = &'w [u32]>,
    rule: TieRule,
) -> Vec<Vec<u64>> {
    let mut hists = vec![Vec::new(); stats.len()];
    for w in words {
        for (h, s) in hists.iter_mut().zip(stats) {
            accumulate(h, s.eval(u, w, rule));
        }
    }
    hists
}

/// Distributions of several statistics over `R(α)`, computed in one pass.
///
/// The class is split into fixed-size index ranges that are enumerated in
/// parallel and merged by addition, so the result does not depend on the
/// number of workers.
pub fn distributions(
    stats: &[StatisticId],
    alpha: &MultiplicityVector,
    u: &Relation,
    cfg: &OracleConfig,
) -> Result<Vec<QPolynomial>> {
    let size = check_class(alpha, u, cfg.max_class)?;
    let natural = Relation::natural_order(alpha.n());
    let shards = size.div_ceil(SHARD_LEN).max(1);
    let per_shard = |shard: u64| -> Result<Vec<Vec<u64>>> {
        let mut class = RearrangementClass::range(alpha, shard * SHARD_LEN, (shard + 1) * SHARD_LEN)?;
        let mut hists = vec![Vec::new(); stats.len()];
        while let Some(w) = class.next_letters() {
            for (h, s) in hists.iter_mut().zip(stats) {
                let rel = if s.is_classical() { &natural } else { u };
                accumulate(h, s.eval(rel, w, cfg.tie_rule));
            }
        }
        Ok(hists)
    };
    let hists = cfg.run(|| {
        (0..shards)
            .into_par_iter()
            .map(per_shard)
            .try_reduce(|| vec![Vec::new(); stats.len()], |a, b| Ok(merge(a, b)))
    })?;
    Ok(hists.into_iter().map(QPolynomial::from_coeffs).collect())
}

/// Coefficient of `q^k` = number of words in `R(α)` with statistic value `k`.
pub fn distribution(
    stat: StatisticId,
    alpha: &MultiplicityVector,
    u: &Relation,
    cfg: &OracleConfig,
) -> Result<QPolynomial> {
    Ok(distributions(&[stat], alpha, u, cfg)?.remove(0))
}

pub fn equidistributed(
    stats: &[StatisticId],
    alpha: &MultiplicityVector,
    u: &Relation,
    cfg: &OracleConfig,
) -> Result<bool> {
    let d = distributions(stats, alpha, u, cfg)?;
    Ok(d.windows(2).all(|p| p[0] == p[1]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub relation: Relation,
    /// Verdict of the structural predicate (essentially bipartitional, or the
    /// sorting conditions).
    pub predicate: bool,
    pub equidistributed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub n: usize,
    pub alpha: Vec<u32>,
    pub tie_rule: Option<TieRule>,
    pub relation_count: u64,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement>,
    pub elapsed_secs: f64,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha = self.alpha.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{} n={} alpha={}", self.theorem, self.n, alpha)?;
        if let Some(rule) = self.tie_rule {
            write!(f, " tie-rule={rule}")?;
        }
        writeln!(
            f,
            ": {}/{} agreements, {} disagreements ({:.3}s)",
            self.agreements,
            self.relation_count,
            self.disagreements.len(),
            self.elapsed_secs
        )?;
        for d in &self.disagreements {
            writeln!(
                f,
                "  U = {}: predicate {}, equidistributed {}",
                d.relation, d.predicate, d.equidistributed
            )?;
        }
        Ok(())
    }
}

fn check_universe(n: usize, alpha: &MultiplicityVector, cfg: &OracleConfig) -> Result<Vec<Vec<u32>>> {
    if alpha.n() != n {
        return Err(Error::InvalidArguments(format!("alpha has {} letters, expected n = {n}", alpha.n())));
    }
    if alpha.counts().contains(&0) {
        return Err(Error::InvalidArguments(
            "theorem sweeps need every letter to occur (alpha_i >= 1)".into(),
        ));
    }
    if n > cfg.max_universe_n || n * n > 63 {
        return Err(Error::UniverseTooLarge {
            n,
            cap: cfg.max_universe_n.min(7),
        });
    }
    let size = class_size(alpha)?;
    if size > cfg.max_class {
        return Err(Error::ClassTooLarge {
            size,
            cap: cfg.max_class,
        });
    }
    Ok(RearrangementClass::range(alpha, 0, size)?.map(|w| w.into_letters()).collect())
}

fn sweep<P>(
    theorem: &str,
    n: usize,
    alpha: &MultiplicityVector,
    cfg: &OracleConfig,
    stats: &[StatisticId],
    tie_rule: Option<TieRule>,
    predicate: P,
) -> Result<VerificationReport>
where
    P: Fn(&Relation) -> Result<bool> + Sync,
{
    let start = Instant::now();
    let words = check_universe(n, alpha, cfg)?;
    let rule = cfg.tie_rule;
    let relation_count = 1u64 << (n * n);
    let verdicts: Vec<Option<Disagreement>> = cfg.run(|| {
        (0..relation_count)
            .into_par_iter()
            .map(|mask| {
                let u = Relation::from_mask(n, mask);
                let hists = histograms_of(stats, &u, words.iter().map(Vec::as_slice), rule);
                let equi = hists.windows(2).all(|p| {
                    QPolynomial::from_coeffs(p[0].clone()) == QPolynomial::from_coeffs(p[1].clone())
                });
                let pred = predicate(&u)?;
                Ok((pred != equi).then_some(Disagreement {
                    relation: u,
                    predicate: pred,
                    equidistributed: equi,
                }))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let disagreements: Vec<Disagreement> = verdicts.into_iter().flatten().collect();
    Ok(VerificationReport {
        theorem: theorem.into(),
        n,
        alpha: alpha.counts().to_vec(),
        tie_rule,
        relation_count,
        agreements: relation_count - disagreements.len() as u64,
        disagreements,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// For every relation `U` on `1..=n`: `inv'_U` and `maj'_U` are equidistributed
/// over `R(α)` iff `U` is essentially bipartitional relative to `α`.
pub fn verify_theorem1(n: usize, alpha: &MultiplicityVector, cfg: &OracleConfig) -> Result<VerificationReport> {
    sweep(
        "thm1",
        n,
        alpha,
        cfg,
        &[StatisticId::InvGraphical, StatisticId::MajGraphical],
        None,
        |u| Ok(is_essentially_bipartitional(u, alpha)?.is_some()),
    )
}

/// For every relation `U` on `1..=n`: `inv'_U`, `maj'_U` and `sor'_U` are
/// equidistributed over `R(α)` iff `U` meets the sorting conditions.
pub fn verify_theorem2(n: usize, alpha: &MultiplicityVector, cfg: &OracleConfig) -> Result<VerificationReport> {
    sweep(
        "thm2",
        n,
        alpha,
        cfg,
        &[StatisticId::InvGraphical, StatisticId::MajGraphical, StatisticId::SorGraphical],
        Some(cfg.tie_rule),
        |u| Ok(satisfies_sor_conditions(u, alpha).holds),
    )
}
