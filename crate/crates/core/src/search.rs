//! Lexicographic dimension growth (Algorithm 1) and a campaign driver.
//!
//! Starting from a systematic constant row-weight-`t` code, each step appends
//! one information symbol whose row is `[0 … 0 1 | z]` (PIR mode) or
//! `[0 … 0 1 | z | 1]` (property-S mode), scanning `z` over constant-weight
//! vectors in lexicographic order. A candidate is accepted when it passes a
//! distance gate and then the mode's exact check; a candidate that passes the
//! gate but fails the check ends the run.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::constructions::shorten;
use crate::gf2::{BitVector, GenMatrix};
use crate::pir::{verify_pir, Verdict, VerifyOptions};
use crate::steiner::{check_property_st, Collection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SearchMode {
    /// Accept candidates that have the t-PIR property.
    Pir,
    /// Accept candidates whose redundancy sets have property S_t.
    PropertyS,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Pir => "pir",
            SearchMode::PropertyS => "s",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Number of zero columns appended before the scan (1 or 2).
    pub w: usize,
    /// Target availability; rows have weight `t`.
    pub t: usize,
    pub mode: SearchMode,
    pub verify: VerifyOptions,
    /// Stop growing once this dimension is reached.
    pub max_k: Option<usize>,
    /// Keep scanning after a candidate passes the distance gate but fails
    /// the mode check, instead of returning immediately.
    pub continue_on_fail: bool,
    /// What the distance gate measures.
    pub gate: DistanceGate,
}

/// How Algorithm 1's distance test is applied to a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceGate {
    /// Only the distance between rows is tested, against
    /// [`SearchConfig::distance_gate`].
    Rows,
    /// Additionally the code's minimum distance must be at least `t`
    /// (Proposition 1). This is the default; it reproduces the paper's runs.
    Code,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            w: 1,
            t: 5,
            mode: SearchMode::Pir,
            verify: VerifyOptions::default(),
            max_k: None,
            continue_on_fail: false,
            gate: DistanceGate::Code,
        }
    }
}

impl SearchConfig {
    pub fn new(w: usize, t: usize, mode: SearchMode) -> Self {
        SearchConfig {
            w,
            t,
            mode,
            ..Default::default()
        }
    }

    /// Weight of the scanned vector `z`.
    pub fn z_weight(&self) -> usize {
        match self.mode {
            SearchMode::Pir => self.t - 1,
            SearchMode::PropertyS => self.t - 2,
        }
    }

    /// Minimum row distance a candidate must reach before the exact check.
    ///
    /// Rows of equal weight are at even distance, so `d >= t` becomes
    /// `d >= 2 ceil(t/2)`; in S mode two rows may share at most two ones.
    pub fn distance_gate(&self) -> usize {
        let even = 2 * self.t.div_ceil(2);
        match self.mode {
            SearchMode::Pir => even,
            SearchMode::PropertyS => even.max((2 * self.t).saturating_sub(4)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("z has weight {found}, expected {expected}")]
    WeightMismatch { expected: usize, found: usize },
    #[error("z has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is not in systematic form")]
    NotSystematic,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// First vector of the scan: `weight` ones followed by zeros.
pub fn first_vector(len: usize, weight: usize) -> Option<BitVector> {
    (weight <= len).then(|| BitVector::from_indices(len, 0..weight))
}

/// Successor of `z` among vectors of the same weight, ordering vectors by
/// their sorted support lexicographically, so `111100 -> 111010`. Returns
/// `None` after the last vector `0…01…1`.
pub fn lexical_next(z: &BitVector) -> Option<BitVector> {
    let len = z.len();
    let mut pos = z.support();
    let w = pos.len();
    let j = (0..w).rev().find(|&j| pos[j] < len - (w - j))?;
    pos[j] += 1;
    for h in j + 1..w {
        pos[h] = pos[h - 1] + 1;
    }
    Some(BitVector::from_indices(len, pos))
}

/// Appends one information symbol: a zero column is inserted after the
/// identity block and the new row `[0 … 0 1 | z]` (PIR) or
/// `[0 … 0 1 | z | 1]` (S mode) is added.
pub fn grow_once(
    g_best: &GenMatrix,
    z: &BitVector,
    cfg: &SearchConfig,
) -> Result<GenMatrix, SearchError> {
    if !g_best.is_systematic() {
        return Err(SearchError::NotSystematic);
    }
    let (k, n) = (g_best.k(), g_best.n());
    let tail = match cfg.mode {
        SearchMode::Pir => 0,
        SearchMode::PropertyS => 1,
    };
    let expected = n - k - tail.min(n - k);
    if z.len() != expected {
        return Err(SearchError::LengthMismatch {
            expected,
            found: z.len(),
        });
    }
    if z.weight() != cfg.z_weight() {
        return Err(SearchError::WeightMismatch {
            expected: cfg.z_weight(),
            found: z.weight(),
        });
    }
    let zero = BitVector::zeros(1);
    let mut rows: Vec<BitVector> = g_best
        .rows()
        .iter()
        .map(|row| {
            let head = row.select(&(0..k).collect::<Vec<_>>());
            let rest = row.select(&(k..n).collect::<Vec<_>>());
            head.concat(&zero).concat(&rest)
        })
        .collect();
    let mut new_row = BitVector::unit(k + 1, k).concat(z);
    if tail == 1 {
        new_row = new_row.concat(&BitVector::ones(1));
    }
    rows.push(new_row);
    Ok(GenMatrix::new(rows).expect("nonempty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepVerdict {
    Accepted,
    Rejected,
    /// The PIR verifier hit its budget; treated as a rejection.
    Inconclusive,
}

impl fmt::Display for StepVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepVerdict::Accepted => "accepted",
            StepVerdict::Rejected => "rejected",
            StepVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// One candidate that passed the distance gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStep {
    pub z: BitVector,
    /// Candidates scanned in this pass, including this one.
    pub scanned: u64,
    pub verdict: StepVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Every `z` was scanned.
    Exhausted,
    /// A candidate passed the distance gate but failed the mode check.
    EarlyReturn,
    /// `max_k` was reached.
    MaxK,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Exhausted => "exhausted",
            Termination::EarlyReturn => "early-return",
            Termination::MaxK => "max-k",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub best: GenMatrix,
    pub k_input: usize,
    pub n_input: usize,
    pub k_best: usize,
    pub n_best: usize,
    /// Redundancy `n - k` of the input.
    pub r: usize,
    pub w: usize,
    pub t: usize,
    pub mode: SearchMode,
    pub steps: Vec<SearchStep>,
    pub candidates_scanned: u64,
    pub termination: Termination,
    /// Some mode check ran out of budget.
    pub inconclusive: bool,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn grew(&self) -> bool {
        self.k_best > self.k_input
    }
}

fn has_all_one_last_column(g: &GenMatrix) -> bool {
    g.column(g.n() - 1) == BitVector::ones(g.k())
}

fn mode_check(g: &GenMatrix, cfg: &SearchConfig) -> StepVerdict {
    match cfg.mode {
        SearchMode::Pir => match verify_pir(g, cfg.t, &cfg.verify) {
            Verdict::Yes(_) => StepVerdict::Accepted,
            Verdict::No(_) => StepVerdict::Rejected,
            Verdict::Inconclusive(_) => StepVerdict::Inconclusive,
        },
        SearchMode::PropertyS => match Collection::from_systematic(g) {
            Ok(c) if check_property_st(&c, cfg.t).is_yes() => StepVerdict::Accepted,
            _ => StepVerdict::Rejected,
        },
    }
}

/// Checks Algorithm 1's preconditions for `g` under `cfg`.
pub fn check_input(g: &GenMatrix, cfg: &SearchConfig) -> Result<(), SearchError> {
    let bad = |m: String| Err(SearchError::InvalidInput(m));
    if !(1..=2).contains(&cfg.w) {
        return bad(format!("w must be 1 or 2, got {}", cfg.w));
    }
    let min_t = match cfg.mode {
        SearchMode::Pir => 2,
        SearchMode::PropertyS => 3,
    };
    if cfg.t < min_t {
        return bad(format!("t = {} is too small for {} mode", cfg.t, cfg.mode));
    }
    if !g.is_systematic() {
        return bad("matrix is not systematic".into());
    }
    if g.constant_row_weight() != Some(cfg.t) {
        return bad(format!("rows do not all have weight {}", cfg.t));
    }
    match cfg.mode {
        SearchMode::Pir => {
            if !verify_pir(g, cfg.t, &cfg.verify).is_yes() {
                return bad(format!("input is not verified {}-PIR", cfg.t));
            }
        }
        SearchMode::PropertyS => {
            if g.n() == g.k() || !has_all_one_last_column(g) {
                return bad("last column is not all-one".into());
            }
            if mode_check(g, cfg) != StepVerdict::Accepted {
                return bad(format!("input lacks property S{}", cfg.t));
            }
        }
    }
    Ok(())
}

/// Pads the input as in Algorithm 1's first line: `[I | P | O_w]` in PIR
/// mode, `[I | P' | O_w | 1]` in S mode.
fn padded(g: &GenMatrix, cfg: &SearchConfig) -> GenMatrix {
    let zeros = BitVector::zeros(cfg.w);
    let rows = g
        .rows()
        .iter()
        .map(|row| match cfg.mode {
            SearchMode::Pir => row.concat(&zeros),
            SearchMode::PropertyS => {
                let n = row.len();
                row.remove(n - 1).concat(&zeros).concat(&BitVector::ones(1))
            }
        })
        .collect();
    GenMatrix::new(rows).expect("nonempty")
}

/// Smallest distance between the last row and every other row.
fn new_row_distance(g: &GenMatrix) -> usize {
    let last = g.row(g.k() - 1);
    g.rows()[..g.k() - 1]
        .iter()
        .map(|r| r.distance(last))
        .min()
        .unwrap_or(usize::MAX)
}

fn code_distance_at_least(g: &GenMatrix, cfg: &SearchConfig) -> bool {
    match g.min_distance_capped(cfg.verify.distance_cap) {
        Ok(d) => d >= cfg.t,
        // too many codewords to enumerate: leave the decision to the mode check
        Err(_) => true,
    }
}

/// Runs Algorithm 1 (or its property-S variant) on `g`.
///
/// After each acceptance the scan restarts from the first `z`. Because the
/// accepted row sits at distance `2 + d(z, z')` from every later candidate,
/// this visits the same accepted sequence as continuing the scan.
pub fn run_algorithm1(g: &GenMatrix, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    check_input(g, cfg)?;
    let (k, n) = (g.k(), g.n());
    let r = n - k;
    let z_len = match cfg.mode {
        SearchMode::Pir => r + cfg.w,
        SearchMode::PropertyS => r + cfg.w - 1,
    };
    let gate = cfg.distance_gate();

    let mut best = padded(g, cfg);
    let mut old_min = best.min_row_distance().unwrap_or(usize::MAX);
    let mut steps = Vec::new();
    let mut total = 0u64;
    let mut inconclusive = false;
    let mut termination = Termination::Exhausted;

    'outer: loop {
        if cfg.max_k.is_some_and(|m| best.k() >= m) {
            termination = Termination::MaxK;
            break;
        }
        let mut z = first_vector(z_len, cfg.z_weight());
        let mut scanned = 0u64;
        while let Some(cand) = z {
            scanned += 1;
            total += 1;
            let grown = grow_once(&best, &cand, cfg)?;
            let d = old_min.min(new_row_distance(&grown));
            let passes = d >= gate
                && match cfg.gate {
                    DistanceGate::Rows => true,
                    DistanceGate::Code => code_distance_at_least(&grown, cfg),
                };
            if passes {
                let verdict = mode_check(&grown, cfg);
                inconclusive |= verdict == StepVerdict::Inconclusive;
                steps.push(SearchStep {
                    z: cand.clone(),
                    scanned,
                    verdict,
                });
                log::debug!("z = {cand} after {scanned} candidates: {verdict}");
                if verdict == StepVerdict::Accepted {
                    old_min = d;
                    best = grown;
                    continue 'outer;
                }
                if !cfg.continue_on_fail {
                    termination = Termination::EarlyReturn;
                    break 'outer;
                }
            }
            z = lexical_next(&cand);
        }
        break;
    }

    let k_best = best.k();
    let (best, n_best) = if k_best == k {
        (g.clone(), n)
    } else {
        let n_best = best.n();
        debug_assert_eq!(n_best, k_best + r + cfg.w);
        (best, n_best)
    };
    Ok(SearchReport {
        best,
        k_input: k,
        n_input: n,
        k_best,
        n_best,
        r,
        w: cfg.w,
        t: cfg.t,
        mode: cfg.mode,
        steps,
        candidates_scanned: total,
        termination,
        inconclusive,
        elapsed: start.elapsed(),
    })
}

/// Settings for [`run_campaign`].
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub t: usize,
    pub widths: Vec<usize>,
    /// Codes with more symbols than this are neither recorded nor expanded.
    pub max_k: usize,
    /// Derive entries by shortening the last information symbol.
    pub shorten: bool,
    /// Only codes with `n <= best_n(k) + slack` are expanded further.
    pub slack: usize,
    /// Upper bound on Algorithm 1 runs, as a safety valve.
    pub max_runs: usize,
    /// Extra seeds: every code from [`enumerate_seeds`] for each `(k, n)`.
    pub seed_shapes: Vec<(usize, usize)>,
    pub verify: VerifyOptions,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            t: 5,
            widths: vec![1, 2],
            max_k: 8,
            shorten: true,
            slack: 0,
            max_runs: 10_000,
            seed_shapes: Vec::new(),
            verify: VerifyOptions::default(),
        }
    }
}

/// Best code found for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignEntry {
    pub k: usize,
    pub n: usize,
    pub matrix: GenMatrix,
    /// How the code was obtained, e.g. `seed0 > alg1(w=2,s) > shorten`.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignResult {
    pub t: usize,
    pub entries: BTreeMap<usize, CampaignEntry>,
    pub runs: usize,
}

impl CampaignResult {
    pub fn best_n(&self, k: usize) -> Option<usize> {
        self.entries.get(&k).map(|e| e.n)
    }
}

/// All systematic `[n, k]` codes whose rows have weight `t` and which are
/// t-PIR, with rows in increasing lexicographic order of their parity part
/// (so row permutations are listed once).
///
/// The parity parts are the weight-`(t-1)` vectors of length `n - k` in
/// [`lexical_next`] order; the result is ordered by the chosen row indices.
pub fn enumerate_seeds(k: usize, n: usize, t: usize, opts: &VerifyOptions) -> Vec<GenMatrix> {
    if k == 0 || n <= k || t == 0 {
        return Vec::new();
    }
    let mut parities = Vec::new();
    let mut z = first_vector(n - k, t - 1);
    while let Some(v) = z {
        z = lexical_next(&v);
        parities.push(v);
    }
    let opts = opts.clone().sequential();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if parities.len() < k {
        return out;
    }
    loop {
        let rows = idx
            .iter()
            .enumerate()
            .map(|(i, &p)| BitVector::unit(k, i).concat(&parities[p]))
            .collect();
        let g = GenMatrix::new(rows).expect("k >= 1");
        if g.min_distance_capped(opts.distance_cap)
            .is_ok_and(|d| d >= t)
            && verify_pir(&g, t, &opts).is_yes()
        {
            out.push(g);
        }
        // next k-subset of parity indices
        let m = parities.len();
        let Some(j) = (0..k).rev().find(|&j| idx[j] < m - (k - j)) else {
            break;
        };
        idx[j] += 1;
        for h in j + 1..k {
            idx[h] = idx[h - 1] + 1;
        }
    }
    out
}

/// Runs Algorithm 1 over a growing pool of codes.
///
/// Each pool member is tried with every width, in PIR mode and also in S
/// mode when it has property S_t. Every grown output and (optionally) its
/// shortening at the last symbol joins the pool, unless it is more than
/// `slack` longer than the best code of its dimension. Processing is breadth-first
/// in insertion order, so results are deterministic. The smallest `n` per
/// `k` is kept, with ties going to the first code found.
pub fn run_campaign(seeds: &[GenMatrix], cfg: &CampaignConfig) -> CampaignResult {
    let mut result = CampaignResult {
        t: cfg.t,
        entries: BTreeMap::new(),
        runs: 0,
    };
    let mut seen: BTreeSet<GenMatrix> = BTreeSet::new();
    let mut queue: VecDeque<(GenMatrix, String)> = VecDeque::new();

    let mut offer = |g: GenMatrix,
                     source: String,
                     queue: &mut VecDeque<(GenMatrix, String)>,
                     result: &mut CampaignResult| {
        if g.k() > cfg.max_k || !seen.insert(g.clone()) {
            return;
        }
        let best = result.entries.get(&g.k()).map(|e| e.n);
        if best.is_some_and(|b| g.n() > b + cfg.slack) {
            return;
        }
        if best.is_none_or(|b| g.n() < b) {
            result.entries.insert(
                g.k(),
                CampaignEntry {
                    k: g.k(),
                    n: g.n(),
                    matrix: g.clone(),
                    source: source.clone(),
                },
            );
        }
        queue.push_back((g, source));
    };

    for (i, g) in seeds.iter().enumerate() {
        let probe = SearchConfig {
            t: cfg.t,
            verify: cfg.verify.clone(),
            ..Default::default()
        };
        if check_input(g, &probe).is_ok() {
            offer(g.clone(), format!("seed{i}"), &mut queue, &mut result);
        }
    }
    for &(k, n) in &cfg.seed_shapes {
        for (i, g) in enumerate_seeds(k, n, cfg.t, &cfg.verify)
            .into_iter()
            .enumerate()
        {
            offer(g, format!("enum[{n},{k}]#{i}"), &mut queue, &mut result);
        }
    }

    while let Some((g, source)) = queue.pop_front() {
        if result.best_n(g.k()).is_some_and(|b| g.n() > b + cfg.slack) {
            continue;
        }
        if cfg.shorten && g.k() >= 2 {
            if let Ok(s) = shorten(&g, g.k() - 1) {
                offer(s, format!("{source} > shorten"), &mut queue, &mut result);
            }
        }
        if g.k() >= cfg.max_k {
            continue;
        }
        for mode in [SearchMode::Pir, SearchMode::PropertyS] {
            for &w in &cfg.widths {
                if result.runs >= cfg.max_runs {
                    return result;
                }
                let scfg = SearchConfig {
                    w,
                    t: cfg.t,
                    mode,
                    verify: cfg.verify.clone(),
                    max_k: Some(cfg.max_k),
                    ..Default::default()
                };
                let Ok(report) = run_algorithm1(&g, &scfg) else {
                    break; // input not valid for this mode
                };
                result.runs += 1;
                log::debug!(
                    "{source}: [{},{}] {mode} w={w} -> [{},{}]",
                    g.n(),
                    g.k(),
                    report.n_best,
                    report.k_best
                );
                if report.grew() {
                    offer(
                        report.best,
                        format!("{source} > alg1(w={w},{mode})"),
                        &mut queue,
                        &mut result,
                    );
                }
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::build_systematic;
    use crate::test_support::{eq1, example1_sets};

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn lexical_examples() {
        let z = BitVector::parse("111100").unwrap();
        assert_eq!(
            lexical_next(&z).unwrap(),
            BitVector::parse("111010").unwrap()
        );
        assert_eq!(lexical_next(&BitVector::parse("001111").unwrap()), None);
        for (len, w) in [(7, 4), (8, 3), (6, 0), (5, 5), (9, 2)] {
            let mut count = 0;
            let mut z = first_vector(len, w);
            let mut prev: Option<Vec<usize>> = None;
            while let Some(v) = z {
                assert_eq!(v.weight(), w);
                let s = v.support();
                assert!(prev.as_ref().is_none_or(|p| p < &s));
                prev = Some(s);
                count += 1;
                z = lexical_next(&v);
            }
            assert_eq!(count, binomial(len as u64, w as u64));
        }
    }

    #[test]
    fn grow_once_shapes() {
        let cfg = SearchConfig::new(1, 5, SearchMode::Pir);
        let g = padded(&eq1(), &cfg);
        let z = BitVector::parse("1111000").unwrap();
        let grown = grow_once(&g, &z, &cfg).unwrap();
        assert_eq!((grown.k(), grown.n()), (3, 10));
        assert!(grown.is_systematic());
        assert_eq!(grown.row(2).weight(), 5);
        assert_eq!(
            grow_once(&g, &BitVector::parse("1110000").unwrap(), &cfg),
            Err(SearchError::WeightMismatch {
                expected: 4,
                found: 3
            })
        );
        assert_eq!(
            grow_once(&g, &BitVector::parse("11110000").unwrap(), &cfg),
            Err(SearchError::LengthMismatch {
                expected: 7,
                found: 8
            })
        );

        let cfg = SearchConfig::new(2, 5, SearchMode::PropertyS);
        let g = padded(&eq1(), &cfg);
        assert_eq!(g.n(), 10);
        let grown = grow_once(&g, &BitVector::parse("1110000").unwrap(), &cfg).unwrap();
        assert_eq!((grown.k(), grown.n()), (3, 11));
        assert_eq!(grown.row(2).weight(), 5);
        assert!(has_all_one_last_column(&grown));
        assert!(grown.is_systematic());
    }

    #[test]
    fn reproduces_paper_runs() {
        let r = run_algorithm1(&eq1(), &SearchConfig::new(1, 5, SearchMode::Pir)).unwrap();
        assert_eq!((r.n_best, r.k_best), (11, 4));
        assert_eq!(r.n_best, r.k_best + r.r + r.w);
        assert!(verify_pir(&r.best, 5, &VerifyOptions::default()).is_yes());
        let c = Collection::from_systematic(&r.best).unwrap();
        assert!(!check_property_st(&c, 5).is_yes());

        let r = run_algorithm1(&eq1(), &SearchConfig::new(2, 5, SearchMode::PropertyS)).unwrap();
        assert_eq!((r.n_best, r.k_best), (13, 5));
        let c = Collection::from_systematic(&r.best).unwrap();
        assert!(check_property_st(&c, 5).is_yes());
        assert!(verify_pir(&r.best, 5, &VerifyOptions::default()).is_yes());
    }

    #[test]
    fn theorem_floors_and_arithmetic() {
        let example1 = build_systematic(&Collection::new(8, &example1_sets()).unwrap());
        for g in [eq1(), example1] {
            for mode in [SearchMode::Pir, SearchMode::PropertyS] {
                for w in [1, 2] {
                    let mut cfg = SearchConfig::new(w, 5, mode);
                    cfg.max_k = Some(g.k() + 3);
                    let r = run_algorithm1(&g, &cfg).unwrap();
                    if w == 2 {
                        assert!(r.k_best > g.k(), "{mode} w=2 on k={}", g.k());
                    }
                    if r.grew() {
                        assert_eq!(r.n_best, r.k_best + r.r + r.w);
                    } else {
                        assert_eq!(r.best, g);
                    }
                }
            }
        }
    }

    #[test]
    fn gate_matches_condition3_in_s_mode() {
        let cfg = SearchConfig::new(2, 5, SearchMode::PropertyS);
        let g = padded(&eq1(), &cfg);
        let mut z = first_vector(7, 3);
        while let Some(cand) = z {
            let grown = grow_once(&g, &cand, &cfg).unwrap();
            let d = grown.min_row_distance().unwrap();
            assert_eq!(d % 2, 0, "equal-weight rows are at even distance");
            let c = Collection::from_systematic(&grown).unwrap();
            let cond3 = crate::steiner::check_structure(&c, 5).is_ok();
            assert_eq!(cond3, d >= cfg.distance_gate());
            z = lexical_next(&cand);
        }
    }

    #[test]
    fn maximal_input_returns_itself() {
        // Any candidate row for the [5,1] repetition code with w = 1 has
        // distance 6 from the old row; PIR check decides. With max_k = 1 no
        // growth is attempted.
        let rep = GenMatrix::from_strings(&["11111"]).unwrap();
        let mut cfg = SearchConfig::new(1, 5, SearchMode::Pir);
        cfg.max_k = Some(1);
        let r = run_algorithm1(&rep, &cfg).unwrap();
        assert_eq!(r.best, rep);
        assert_eq!((r.k_best, r.n_best), (1, 5));
        assert_eq!(r.termination, Termination::MaxK);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = SearchConfig::new(1, 5, SearchMode::Pir);
        assert!(matches!(
            run_algorithm1(&GenMatrix::identity(2), &cfg),
            Err(SearchError::InvalidInput(_))
        ));
        let cfg = SearchConfig::new(3, 5, SearchMode::Pir);
        assert!(matches!(
            run_algorithm1(&eq1(), &cfg),
            Err(SearchError::InvalidInput(_))
        ));
    }

    #[test]
    fn deterministic_reports() {
        let cfg = SearchConfig::new(1, 5, SearchMode::Pir);
        let a = run_algorithm1(&eq1(), &cfg).unwrap();
        let b = run_algorithm1(&eq1(), &cfg).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(a.steps, b.steps);
        assert_eq!(a.candidates_scanned, b.candidates_scanned);
    }

    #[test]
    fn campaign_small() {
        let cfg = CampaignConfig {
            max_k: 5,
            ..Default::default()
        };
        let res = run_campaign(&[eq1()], &cfg);
        assert_eq!(res.best_n(4), Some(11));
        assert_eq!(res.best_n(5), Some(13));
        for e in res.entries.values() {
            assert!(verify_pir(&e.matrix, 5, &VerifyOptions::default()).is_yes());
        }
        assert!(run_campaign(&[], &cfg).entries.is_empty());
    }
}
