//! Exact decision of the t-PIR property.
//!
//! A generator matrix `G = [c_1, ..., c_n]` has the t-PIR property when every
//! information symbol `i` admits `t` pairwise disjoint coordinate sets whose
//! columns sum to the unit vector `e_i`. [`verify_pir`] either returns a
//! certificate listing such sets, a refutation, or reports that its explicit
//! search budget ran out.
//!
//! The search only ever needs *minimal* recovering sets: a recovering set
//! whose columns are linearly dependent contains a nonempty subset summing to
//! zero, and removing it leaves a smaller recovering set. Minimal sets thus
//! have independent columns and at most `rank(G)` elements, which is what the
//! default size cap uses.
//!
//! All coordinates and symbols are 0-based here; the CLI converts to the
//! 1-based convention of the file formats.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{solve, BitVector, GenMatrix, DEFAULT_DISTANCE_CAP};

/// Default limit on expanded search nodes per information symbol.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest `n` the packing search handles (coordinate sets are `u128` masks).
pub const MAX_SEARCH_LENGTH: usize = 128;

/// Largest null-space dimension whose coset is enumerated when listing
/// recovering sets.
pub const MAX_KERNEL_DIM: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PirError {
    #[error("coordinate {index} out of range for blocklength {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("certificate lists {found} symbols, matrix has k = {expected}")]
    SymbolCountMismatch { expected: usize, found: usize },
}

/// A set of coordinates, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecoveringSet {
    coords: Vec<usize>,
}

impl RecoveringSet {
    /// Sorts `coords`; returns `None` for an empty list or repeated entries.
    pub fn new(mut coords: Vec<usize>) -> Option<Self> {
        coords.sort_unstable();
        let distinct = coords.windows(2).all(|w| w[0] < w[1]);
        (!coords.is_empty() && distinct).then_some(Self { coords })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.coords.binary_search(&j).is_ok()
    }

    fn from_mask(mask: u128) -> Self {
        let mut coords = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            coords.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        Self { coords }
    }
}

impl fmt::Display for RecoveringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// For each information symbol, the `t` recovering sets witnessing t-PIR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PirCertificate {
    pub t: usize,
    pub per_symbol: Vec<Vec<RecoveringSet>>,
}

impl PirCertificate {
    pub fn sets(&self, symbol: usize) -> &[RecoveringSet] {
        &self.per_symbol[symbol]
    }
}

/// Re-validates a certificate: every set must sum to its unit vector, and
/// each symbol must list exactly `t` pairwise disjoint sets.
pub fn check_certificate(g: &GenMatrix, cert: &PirCertificate) -> Result<bool, PirError> {
    if cert.per_symbol.len() != g.k() {
        return Err(PirError::SymbolCountMismatch {
            expected: g.k(),
            found: cert.per_symbol.len(),
        });
    }
    let n = g.n();
    for sets in &cert.per_symbol {
        for s in sets {
            if let Some(&bad) = s.coords.iter().find(|&&c| c >= n) {
                return Err(PirError::IndexOutOfRange { index: bad, n });
            }
        }
    }
    for (i, sets) in cert.per_symbol.iter().enumerate() {
        if sets.len() != cert.t {
            return Ok(false);
        }
        let target = BitVector::unit(g.k(), i);
        let mut seen = vec![false; n];
        for s in sets {
            if s.is_empty() || g.column_sum(s.coords.iter().copied()) != target {
                return Ok(false);
            }
            for &c in &s.coords {
                if std::mem::replace(&mut seen[c], true) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every subset `S` of `allowed` with `|S| <= size_cap` whose columns sum to
/// `e_i`, ordered by cardinality and then lexicographically.
///
/// Works on the solution coset of the restricted linear system, so the cost
/// is `2^(|allowed| - rank)` rather than a walk over all subsets.
pub fn enumerate_recovering_sets(
    g: &GenMatrix,
    i: usize,
    allowed: &[usize],
    size_cap: usize,
) -> Vec<RecoveringSet> {
    assert!(i < g.k(), "symbol {i} out of range for k = {}", g.k());
    let mut allowed = allowed.to_vec();
    allowed.sort_unstable();
    allowed.dedup();
    if allowed.is_empty() {
        return Vec::new();
    }
    let columns: Vec<BitVector> = allowed.iter().map(|&j| g.column(j)).collect();
    let Some(solutions) = solve(&columns, &BitVector::unit(g.k(), i)) else {
        return Vec::new();
    };
    assert!(
        solutions.kernel.len() <= MAX_KERNEL_DIM,
        "null space of dimension {} is too large to enumerate",
        solutions.kernel.len()
    );
    let mut out = Vec::new();
    solutions.for_each(|x| {
        if x.weight() <= size_cap {
            out.push(RecoveringSet {
                coords: x.ones_iter().map(|p| allowed[p]).collect(),
            });
        }
    });
    sort_canonical(&mut out);
    out
}

fn sort_canonical(sets: &mut [RecoveringSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.coords.cmp(&b.coords)));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Node limit per information symbol.
    pub node_budget: u64,
    /// Largest recovering set considered; `None` means `k`, which is exact.
    pub size_cap: Option<usize>,
    /// Run the minimum-distance precheck when `k` is at most this value.
    pub distance_cap: usize,
    /// Evaluate the per-symbol searches on the rayon pool.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            size_cap: None,
            distance_cap: DEFAULT_DISTANCE_CAP,
            parallel: true,
        }
    }
}

impl VerifyOptions {
    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The code has distance below `t`, so it cannot be t-PIR.
    DistanceBelowT { distance: usize, t: usize },
    /// The exhaustive packing search for `symbol` found at most `found`
    /// disjoint recovering sets.
    NoPacking { symbol: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inconclusive {
    BudgetExhausted {
        symbol: usize,
        nodes: u64,
    },
    /// A packing failed while the size cap was below `rank(G)`, so larger
    /// recovering sets were never tried.
    SizeCapBelowRank {
        symbol: usize,
        cap: usize,
        rank: usize,
    },
    TooLarge {
        k: usize,
        n: usize,
    },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::DistanceBelowT { distance, t } => {
                write!(f, "minimum distance {distance} is below t = {t}")
            }
            Refutation::NoPacking { symbol, found } => write!(
                f,
                "symbol {} has at most {found} disjoint recovering sets",
                symbol + 1
            ),
        }
    }
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconclusive::BudgetExhausted { symbol, nodes } => write!(
                f,
                "search budget exhausted after {nodes} nodes on symbol {}",
                symbol + 1
            ),
            Inconclusive::SizeCapBelowRank { symbol, cap, rank } => write!(
                f,
                "symbol {} failed with set-size cap {cap} below rank {rank}",
                symbol + 1
            ),
            Inconclusive::TooLarge { k, n } => {
                write!(f, "[{n},{k}] exceeds the verifier's size limits")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(PirCertificate),
    No(Refutation),
    Inconclusive(Inconclusive),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn certificate(&self) -> Option<&PirCertificate> {
        match self {
            Verdict::Yes(c) => Some(c),
            _ => None,
        }
    }
}

enum SymbolOutcome {
    Found(Vec<RecoveringSet>),
    Exhausted { best: usize },
    Budget { nodes: u64 },
}

/// Decides whether `g` has the t-PIR property.
pub fn verify_pir(g: &GenMatrix, t: usize, opts: &VerifyOptions) -> Verdict {
    let (k, n) = (g.k(), g.n());
    if t == 0 {
        return Verdict::Yes(PirCertificate {
            t,
            per_symbol: vec![Vec::new(); k],
        });
    }
    if k > 64 || n > MAX_SEARCH_LENGTH {
        return Verdict::Inconclusive(Inconclusive::TooLarge { k, n });
    }
    if k <= opts.distance_cap {
        if let Ok(d) = g.min_distance_capped(opts.distance_cap) {
            if d < t {
                return Verdict::No(Refutation::DistanceBelowT { distance: d, t });
            }
        }
    }
    let rank = g.rank();
    let cap = opts.size_cap.unwrap_or(k);
    let columns = g.column_words().expect("k <= 64");
    if n - rank > MAX_KERNEL_DIM {
        return Verdict::Inconclusive(Inconclusive::TooLarge { k, n });
    }

    let run = |i: usize| pack_symbol(g, &columns, i, t, cap, opts.node_budget);
    let outcomes: Vec<SymbolOutcome> = if opts.parallel {
        (0..k).into_par_iter().map(run).collect()
    } else {
        let mut v = Vec::with_capacity(k);
        for i in 0..k {
            let o = run(i);
            let stop = matches!(o, SymbolOutcome::Exhausted { .. }) && cap >= rank;
            v.push(o);
            if stop {
                break;
            }
        }
        v
    };

    let mut inconclusive = None;
    for (symbol, o) in outcomes.iter().enumerate() {
        match o {
            SymbolOutcome::Exhausted { best } => {
                if cap >= rank {
                    return Verdict::No(Refutation::NoPacking {
                        symbol,
                        found: *best,
                    });
                }
                inconclusive.get_or_insert(Inconclusive::SizeCapBelowRank { symbol, cap, rank });
            }
            SymbolOutcome::Budget { nodes } => {
                inconclusive.get_or_insert(Inconclusive::BudgetExhausted {
                    symbol,
                    nodes: *nodes,
                });
            }
            SymbolOutcome::Found(_) => {}
        }
    }
    if let Some(reason) = inconclusive {
        return Verdict::Inconclusive(reason);
    }
    let per_symbol = outcomes
        .into_iter()
        .map(|o| match o {
            SymbolOutcome::Found(sets) => sets,
            _ => unreachable!(),
        })
        .collect();
    Verdict::Yes(PirCertificate { t, per_symbol })
}

/// True when the columns selected by `mask` are linearly independent.
fn independent(columns: &[u64], mask: u128) -> bool {
    let mut basis = [0u64; 64];
    let mut rest = mask;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut v = columns[j];
        loop {
            if v == 0 {
                return false;
            }
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                break;
            }
            v ^= basis[top];
        }
    }
    true
}

fn to_mask(v: &BitVector) -> u128 {
    v.ones_iter().fold(0u128, |m, j| m | (1u128 << j))
}

/// Minimal recovering sets of symbol `i` with at most `cap` elements, as
/// masks in canonical (cardinality, lexicographic) order.
fn minimal_candidates(g: &GenMatrix, columns: &[u64], i: usize, cap: usize) -> Vec<u128> {
    let cols: Vec<BitVector> = g.columns();
    let Some(solutions) = solve(&cols, &BitVector::unit(g.k(), i)) else {
        return Vec::new();
    };
    let mut found: Vec<u128> = Vec::new();
    solutions.for_each(|x| {
        if x.weight() <= cap {
            let m = to_mask(x);
            if independent(columns, m) {
                found.push(m);
            }
        }
    });
    let mut sets: Vec<RecoveringSet> = found.into_iter().map(RecoveringSet::from_mask).collect();
    sort_canonical(&mut sets);
    sets.iter()
        .map(|s| s.coords.iter().fold(0u128, |m, &j| m | (1u128 << j)))
        .collect()
}

struct Packer<'a> {
    cands: &'a [u128],
    n: u32,
    budget: u64,
    nodes: u64,
    best: usize,
}

struct BudgetHit;

impl Packer<'_> {
    /// Tries to extend `chosen` by `needed` more disjoint candidates drawn
    /// from `pool` (indices into `cands`, ascending, all disjoint from `used`).
    fn search(
        &mut self,
        pool: &[usize],
        used: u128,
        needed: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<bool, BudgetHit> {
        if needed == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetHit);
        }
        if pool.len() < needed {
            return Ok(false);
        }
        // The cheapest completion uses the `needed` smallest sets, which lead the pool.
        let free = self.n - used.count_ones();
        let min_cost: u32 = pool[..needed]
            .iter()
            .map(|&c| self.cands[c].count_ones())
            .sum();
        if min_cost > free {
            return Ok(false);
        }
        for (pos, &c) in pool.iter().enumerate() {
            if pool.len() - pos < needed {
                break;
            }
            let m = self.cands[c];
            let next: Vec<usize> = pool[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| self.cands[d] & m == 0)
                .collect();
            chosen.push(c);
            self.best = self.best.max(chosen.len());
            if self.search(&next, used | m, needed - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

fn pack_symbol(
    g: &GenMatrix,
    columns: &[u64],
    i: usize,
    t: usize,
    cap: usize,
    budget: u64,
) -> SymbolOutcome {
    let cands = minimal_candidates(g, columns, i, cap);

    // Any packing can swap in {i} when c_i = e_i: replace the set holding i,
    // or any set if none does.
    let mut seed = Vec::new();
    let mut used = 0u128;
    if columns[i] == 1u64 << i {
        seed.push(RecoveringSet { coords: vec![i] });
        used = 1u128 << i;
    }
    let pool: Vec<usize> = (0..cands.len()).filter(|&c| cands[c] & used == 0).collect();
    let mut packer = Packer {
        cands: &cands,
        n: g.n() as u32,
        budget,
        nodes: 0,
        best: 0,
    };
    let mut chosen = Vec::new();
    match packer.search(&pool, used, t - seed.len(), &mut chosen) {
        Ok(true) => {
            seed.extend(chosen.iter().map(|&c| RecoveringSet::from_mask(cands[c])));
            SymbolOutcome::Found(seed)
        }
        Ok(false) => SymbolOutcome::Exhausted {
            best: seed.len() + packer.best,
        },
        Err(BudgetHit) => SymbolOutcome::Budget {
            nodes: packer.nodes,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{eq1, example1_matrix, packing_oracle, random_systematic};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(one_based: &[usize]) -> RecoveringSet {
        RecoveringSet::new(one_based.iter().map(|c| c - 1).collect()).unwrap()
    }

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn paper_sets_for_first_symbol_of_example1() {
        let g = example1_matrix();
        let sets = vec![
            set(&[1]),
            set(&[2, 3, 9]),
            set(&[4, 6, 10]),
            set(&[5, 7, 11]),
            set(&[8, 13, 14, 17]),
        ];
        for s in &sets {
            assert_eq!(
                g.column_sum(s.coords().iter().copied()),
                BitVector::unit(8, 0)
            );
        }
    }

    #[test]
    fn check_certificate_eq1() {
        let g = eq1();
        let cert = PirCertificate {
            t: 5,
            per_symbol: vec![
                vec![set(&[1]), set(&[4]), set(&[5]), set(&[3, 6]), set(&[7, 8])],
                vec![set(&[2]), set(&[6]), set(&[7]), set(&[1, 3]), set(&[4, 8])],
            ],
        };
        assert_eq!(check_certificate(&g, &cert), Ok(true));

        let mut overlapping = cert.clone();
        overlapping.per_symbol[0][4] = set(&[3, 8]);
        assert_eq!(check_certificate(&g, &overlapping), Ok(false));

        let mut out_of_range = cert;
        out_of_range.per_symbol[1][0] = set(&[9]);
        assert_eq!(
            check_certificate(&g, &out_of_range),
            Err(PirError::IndexOutOfRange { index: 8, n: 8 })
        );
    }

    #[test]
    fn enumerate_eq1_symbol1() {
        let g = eq1();
        let all: Vec<usize> = (0..8).collect();
        let sets = enumerate_recovering_sets(&g, 0, &all, 2);
        assert_eq!(sets[0], set(&[1]));
        for s in [set(&[4]), set(&[5]), set(&[3, 6]), set(&[7, 8])] {
            assert!(sets.contains(&s), "missing {s}");
        }
        // brute force over every subset of size <= 2
        let mut brute = Vec::new();
        for a in 0..8 {
            if g.column(a) == BitVector::unit(2, 0) {
                brute.push(RecoveringSet::new(vec![a]).unwrap());
            }
        }
        for a in 0..8 {
            for b in a + 1..8 {
                if g.column_sum([a, b]) == BitVector::unit(2, 0) {
                    brute.push(RecoveringSet::new(vec![a, b]).unwrap());
                }
            }
        }
        assert_eq!(sets, brute);
    }

    #[test]
    fn enumerate_edge_cases() {
        assert!(enumerate_recovering_sets(&eq1(), 0, &[], 8).is_empty());
        let id = GenMatrix::identity(4);
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(enumerate_recovering_sets(&id, 0, &all, 1), vec![set(&[1])]);
    }

    #[test]
    fn verify_eq1_and_example1() {
        for g in [eq1(), example1_matrix()] {
            let v = verify_pir(&g, 5, &opts());
            let cert = v.certificate().expect("5-PIR");
            assert_eq!(check_certificate(&g, cert), Ok(true));
        }
    }

    #[test]
    fn identity_is_not_2pir() {
        let v = verify_pir(&GenMatrix::identity(3), 2, &opts());
        assert!(v.is_no(), "{v:?}");
    }

    #[test]
    fn eq1_fails_distance_gate_at_t6() {
        assert_eq!(
            verify_pir(&eq1(), 6, &opts()),
            Verdict::No(Refutation::DistanceBelowT { distance: 5, t: 6 })
        );
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let v = verify_pir(&example1_matrix(), 5, &opts().with_budget(1));
        assert!(matches!(
            v,
            Verdict::Inconclusive(Inconclusive::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn single_parity_needs_large_sets() {
        // [I_4 | 1]: the second recovering set of every symbol has k elements.
        let g = GenMatrix::from_strings(&["10001", "01001", "00101", "00011"]).unwrap();
        let v = verify_pir(&g, 2, &opts());
        assert!(v.is_yes());
        let capped = VerifyOptions {
            size_cap: Some(2),
            ..opts()
        };
        assert!(matches!(
            verify_pir(&g, 2, &capped),
            Verdict::Inconclusive(Inconclusive::SizeCapBelowRank { .. })
        ));
    }

    #[test]
    fn agrees_with_partition_oracle_at_desk_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..400 {
            let k = rng.gen_range(1..=4);
            let n = rng.gen_range(k..=12);
            let g = random_systematic(&mut rng, k, n);
            for t in 1..=5 {
                let v = verify_pir(&g, t, &opts().sequential());
                let oracle = packing_oracle(&g) >= t;
                assert_eq!(v.is_yes(), oracle, "{g:?} t={t} {v:?}");
                assert!(!matches!(v, Verdict::Inconclusive(_)));
                if let Verdict::Yes(cert) = &v {
                    assert_eq!(check_certificate(&g, cert), Ok(true));
                    assert!(g.min_distance().unwrap() >= t);
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = example1_matrix();
        assert_eq!(
            verify_pir(&g, 5, &opts()),
            verify_pir(&g, 5, &opts().sequential())
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn monotone_in_t(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(1..=4);
            let n = rng.gen_range(k..=12);
            let g = random_systematic(&mut rng, k, n);
            for t in 2..=5 {
                if verify_pir(&g, t, &opts()).is_yes() {
                    prop_assert!(verify_pir(&g, t - 1, &opts()).is_yes());
                }
            }
        }

        #[test]
        fn column_permutation_keeps_verdict(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(1..=4);
            let n = rng.gen_range(k..=12);
            let g = random_systematic(&mut rng, k, n);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let h = g.select_columns(&perm).unwrap();
            for t in 1..=4 {
                let a = verify_pir(&g, t, &opts());
                let b = verify_pir(&h, t, &opts());
                prop_assert_eq!(a.is_yes(), b.is_yes());
                if let Verdict::Yes(cert) = b {
                    prop_assert_eq!(check_certificate(&h, &cert), Ok(true));
                }
            }
        }
    }
}
