//! Systematic codes described by a collection of subsets, and property S_t.
//!
//! A collection `P_1, ..., P_r` of subsets of the `k` information symbols
//! defines the systematic code `[I_k | P]` whose `j`-th redundancy column is
//! the indicator of `P_j`. `J(i)` is the set of indices `j` with `i` in `P_j`.
//!
//! Property S_t asks that
//!
//! 1. the last set is the full symbol set,
//! 2. every symbol lies in exactly `t - 1` sets,
//! 3. any two of the first `r - 1` sets share at most one symbol, and
//! 4. for every symbol `m` there are `I(m)` (disjoint from the union of the
//!    sets of `J(m)` other than the last) and `V(m)` (disjoint from `J(m)`,
//!    drawn from the first `r - 1` sets) with
//!    `1(I(m)) + sum_{j in V(m)} 1(P_j) = 1 + e_m` over GF(2).
//!
//! Collections with property S_t give t-PIR codes with explicit recovering
//! sets ([`st_recovering_sets`]). Indices are 0-based throughout.

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{solve, BitVector, GenMatrix};
use crate::pir::{PirCertificate, RecoveringSet};

/// Largest null-space dimension for which the condition-4 search enumerates
/// every solution to pick the canonical one.
pub const MAX_CANONICAL_KERNEL: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("a collection needs at least one set")]
    NoSets,
    #[error("dimension k must be positive")]
    ZeroDimension,
    #[error("set {set} contains {element}, outside 0..{k}")]
    ElementOutOfRange {
        set: usize,
        element: usize,
        k: usize,
    },
    #[error("matrix is not in systematic form")]
    NotSystematic,
    #[error("invalid S_t certificate: {0}")]
    InvalidCertificate(String),
}

/// An ordered family of subsets of the `k` information symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Collection {
    k: usize,
    sets: Vec<BitVector>,
}

impl Collection {
    pub fn new(k: usize, sets: &[Vec<usize>]) -> Result<Self, SteinerError> {
        if k == 0 {
            return Err(SteinerError::ZeroDimension);
        }
        let bitsets = sets
            .iter()
            .enumerate()
            .map(|(j, s)| match s.iter().find(|&&x| x >= k) {
                Some(&element) => Err(SteinerError::ElementOutOfRange { set: j, element, k }),
                None => Ok(BitVector::from_indices(k, s.iter().copied())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bitsets(k, bitsets)
    }

    pub fn from_bitsets(k: usize, sets: Vec<BitVector>) -> Result<Self, SteinerError> {
        if k == 0 {
            return Err(SteinerError::ZeroDimension);
        }
        if sets.is_empty() {
            return Err(SteinerError::NoSets);
        }
        assert!(sets.iter().all(|s| s.len() == k), "set length must equal k");
        Ok(Self { k, sets })
    }

    /// Reads the collection off the redundancy columns of `[I_k | P]`.
    pub fn from_systematic(g: &GenMatrix) -> Result<Self, SteinerError> {
        if !g.is_systematic() {
            return Err(SteinerError::NotSystematic);
        }
        let k = g.k();
        Self::from_bitsets(k, (k..g.n()).map(|j| g.column(j)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, j: usize) -> &BitVector {
        &self.sets[j]
    }

    pub fn sets(&self) -> &[BitVector] {
        &self.sets
    }

    /// `J(i)`: indices of the sets containing symbol `i`, ascending.
    pub fn memberships(&self, i: usize) -> Vec<usize> {
        (0..self.r()).filter(|&j| self.sets[j].get(i)).collect()
    }

    pub fn blocklength(&self) -> usize {
        self.k + self.r()
    }
}

/// `[I_k | P]` with `p_ij = 1` iff `i` is in `P_j`.
pub fn build_systematic(c: &Collection) -> GenMatrix {
    let mut columns: Vec<BitVector> = (0..c.k).map(|i| BitVector::unit(c.k, i)).collect();
    columns.extend(c.sets.iter().cloned());
    GenMatrix::from_columns(&columns).expect("k >= 1")
}

/// The classical sufficient condition: every symbol in at least `t - 1`
/// sets and any two sets sharing at most one symbol.
pub fn check_lemma3(c: &Collection, t: usize) -> bool {
    let need = t.saturating_sub(1);
    (0..c.k).all(|i| c.memberships(i).len() >= need) && max_pair_overlap(&c.sets) <= 1
}

fn max_pair_overlap(sets: &[BitVector]) -> usize {
    let mut worst = 0;
    for (a, sa) in sets.iter().enumerate() {
        for sb in &sets[a + 1..] {
            worst = worst.max(sa.overlap(sb));
        }
    }
    worst
}

/// Condition-4 witness for one symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StWitness {
    /// `J(m)`.
    pub members: Vec<usize>,
    /// `I(m)`: information symbols of the last recovering set.
    pub info: Vec<usize>,
    /// `V(m)`: redundancy sets of the last recovering set (the last set
    /// itself is always added and not listed).
    pub parity: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StCertificate {
    pub t: usize,
    pub per_symbol: Vec<StWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StFailure {
    LastSetNotFull,
    MembershipCount {
        symbol: usize,
        count: usize,
        expected: usize,
    },
    LargeIntersection {
        first: usize,
        second: usize,
        size: usize,
    },
    NoCompletion {
        symbol: usize,
    },
}

impl std::fmt::Display for StFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StFailure::LastSetNotFull => f.write_str("the last set is not the full symbol set"),
            StFailure::MembershipCount {
                symbol,
                count,
                expected,
            } => write!(
                f,
                "symbol {} lies in {count} sets, expected {expected}",
                symbol + 1
            ),
            StFailure::LargeIntersection {
                first,
                second,
                size,
            } => write!(
                f,
                "sets {} and {} share {size} symbols",
                first + 1,
                second + 1
            ),
            StFailure::NoCompletion { symbol } => {
                write!(f, "symbol {} has no completing recovering set", symbol + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StVerdict {
    Yes(StCertificate),
    No(StFailure),
}

impl StVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, StVerdict::Yes(_))
    }

    pub fn certificate(&self) -> Option<&StCertificate> {
        match self {
            StVerdict::Yes(c) => Some(c),
            StVerdict::No(_) => None,
        }
    }
}

/// Checks conditions 1-3 only; these need no search.
pub fn check_structure(c: &Collection, t: usize) -> Result<(), StFailure> {
    let last = c.r() - 1;
    if c.sets[last] != BitVector::ones(c.k) {
        return Err(StFailure::LastSetNotFull);
    }
    let expected = t.checked_sub(1);
    for i in 0..c.k {
        let count = c.memberships(i).len();
        if Some(count) != expected {
            return Err(StFailure::MembershipCount {
                symbol: i,
                count,
                expected: expected.unwrap_or(0),
            });
        }
    }
    for a in 0..last {
        for b in a + 1..last {
            let size = c.sets[a].overlap(&c.sets[b]);
            if size > 1 {
                return Err(StFailure::LargeIntersection {
                    first: a,
                    second: b,
                    size,
                });
            }
        }
    }
    Ok(())
}

/// Decides property S_t. Condition 4 is solved exactly as a linear system.
pub fn check_property_st(c: &Collection, t: usize) -> StVerdict {
    if let Err(f) = check_structure(c, t) {
        return StVerdict::No(f);
    }
    let witnesses: Vec<Option<StWitness>> =
        (0..c.k).into_par_iter().map(|m| completion(c, m)).collect();
    let mut per_symbol = Vec::with_capacity(c.k);
    for (m, w) in witnesses.into_iter().enumerate() {
        match w {
            Some(w) => per_symbol.push(w),
            None => return StVerdict::No(StFailure::NoCompletion { symbol: m }),
        }
    }
    StVerdict::Yes(StCertificate { t, per_symbol })
}

/// Union of the sets of `J(m)` other than the last one.
fn blocked_symbols(c: &Collection, members: &[usize]) -> BitVector {
    let last = c.r() - 1;
    members
        .iter()
        .filter(|&&j| j != last)
        .fold(BitVector::zeros(c.k), |acc, &j| acc.or(&c.sets[j]))
}

/// Finds `(I(m), V(m))` for condition 4.
///
/// `I` is forced once `V` is fixed: `1(I) = 1 + e_m + sum_V 1(P_j)`, so the
/// requirement `I ∩ U = ∅` is the linear system `sum_V 1(P_j)|_U = (1 + e_m)|_U`.
/// Among all solutions the one with the fewest sets, then the
/// lexicographically smallest index list, is returned.
fn completion(c: &Collection, m: usize) -> Option<StWitness> {
    let last = c.r() - 1;
    let members = c.memberships(m);
    let blocked = blocked_symbols(c, &members);
    let positions = blocked.support();
    // Empty sets can never change the sum; leaving them out keeps V minimal.
    let candidates: Vec<usize> = (0..last)
        .filter(|j| !members.contains(j) && !c.sets[*j].is_zero())
        .collect();
    let target = BitVector::ones(c.k).xor(&BitVector::unit(c.k, m));

    let columns: Vec<BitVector> = candidates
        .iter()
        .map(|&j| c.sets[j].select(&positions))
        .collect();
    let solutions = solve(&columns, &target.select(&positions))?;
    let chosen = if solutions.kernel.len() <= MAX_CANONICAL_KERNEL {
        let mut best: Option<(usize, Vec<usize>)> = None;
        solutions.for_each(|x| {
            let key = (x.weight(), x.support());
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.expect("at least one solution").1
    } else {
        solutions.particular.support()
    };

    let parity: Vec<usize> = chosen.iter().map(|&p| candidates[p]).collect();
    let info_vec = parity.iter().fold(target, |acc, &j| acc.xor(&c.sets[j]));
    debug_assert_eq!(info_vec.overlap(&blocked), 0);
    Some(StWitness {
        members,
        info: info_vec.support(),
        parity,
    })
}

/// Checks a certificate against its collection, reporting the first
/// violated invariant.
pub fn validate_st_certificate(c: &Collection, cert: &StCertificate) -> Result<(), SteinerError> {
    let bad = |msg: String| Err(SteinerError::InvalidCertificate(msg));
    let (k, last) = (c.k, c.r() - 1);
    if cert.per_symbol.len() != k {
        return bad(format!("{} witnesses for k = {k}", cert.per_symbol.len()));
    }
    if c.sets[last] != BitVector::ones(k) {
        return bad("last set is not the full symbol set".into());
    }
    for (m, w) in cert.per_symbol.iter().enumerate() {
        if w.members != c.memberships(m) {
            return bad(format!("J of symbol {m} does not match the collection"));
        }
        if Some(w.members.len()) != cert.t.checked_sub(1) {
            return bad(format!("symbol {m} lies in {} sets", w.members.len()));
        }
        let inner: Vec<usize> = w.members.iter().copied().filter(|&j| j != last).collect();
        for (a, &ja) in inner.iter().enumerate() {
            for &jb in &inner[a + 1..] {
                if c.sets[ja].overlap(&c.sets[jb]) > 1 {
                    return bad(format!("sets {ja} and {jb} share more than one symbol"));
                }
            }
        }
        if let Some(&x) = w.info.iter().find(|&&x| x >= k) {
            return bad(format!("I of symbol {m} contains {x}"));
        }
        if let Some(&j) = w.parity.iter().find(|&&j| j >= last) {
            return bad(format!("V of symbol {m} contains {j}"));
        }
        if w.parity.iter().any(|j| w.members.contains(j)) {
            return bad(format!("V of symbol {m} meets J"));
        }
        let info = BitVector::from_indices(k, w.info.iter().copied());
        if info.weight() != w.info.len() {
            return bad(format!("I of symbol {m} has repeated entries"));
        }
        if info.overlap(&blocked_symbols(c, &w.members)) != 0 {
            return bad(format!("I of symbol {m} meets its blocked symbols"));
        }
        let mut lhs = info;
        let mut seen = vec![false; last];
        for &j in &w.parity {
            if std::mem::replace(&mut seen[j], true) {
                return bad(format!("V of symbol {m} repeats {j}"));
            }
            lhs.xor_assign(&c.sets[j]);
        }
        if lhs != BitVector::ones(k).xor(&BitVector::unit(k, m)) {
            return bad(format!("identity fails for symbol {m}"));
        }
    }
    Ok(())
}

/// The `t` explicit recovering sets per symbol derived from an S_t
/// certificate, as coordinates of [`build_systematic`]`(c)`:
/// `{m}`, then `(P_j \ {m}) ∪ {k + j}` for each `j` in `J(m)` other than the
/// last set, then `I(m) ∪ {k + j : j ∈ V(m)} ∪ {k + r - 1}`.
pub fn st_recovering_sets(
    c: &Collection,
    cert: &StCertificate,
) -> Result<PirCertificate, SteinerError> {
    validate_st_certificate(c, cert)?;
    let (k, last) = (c.k, c.r() - 1);
    let per_symbol = cert
        .per_symbol
        .iter()
        .enumerate()
        .map(|(m, w)| {
            let mut sets = vec![vec![m]];
            for &j in w.members.iter().filter(|&&j| j != last) {
                let mut s: Vec<usize> = c.sets[j].ones_iter().filter(|&x| x != m).collect();
                s.push(k + j);
                sets.push(s);
            }
            let mut tail = w.info.clone();
            tail.extend(w.parity.iter().map(|j| k + j));
            tail.push(k + last);
            sets.push(tail);
            sets.into_iter()
                .map(|s| RecoveringSet::new(s).expect("nonempty, distinct"))
                .collect()
        })
        .collect();
    Ok(PirCertificate {
        t: cert.t,
        per_symbol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::{check_certificate, verify_pir, VerifyOptions};
    use crate::test_support::{example1_matrix, example1_sets};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn example1() -> Collection {
        Collection::new(8, &example1_sets()).unwrap()
    }

    fn one_based(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x + 1).collect()
    }

    #[test]
    fn build_example1() {
        let g = build_systematic(&example1());
        assert_eq!((g.k(), g.n()), (8, 17));
        assert_eq!(g, example1_matrix());
        assert_eq!(g.column(8), BitVector::from_indices(8, [0, 1, 2]));
        assert_eq!(g.column(16), BitVector::ones(8));
        assert_eq!(Collection::from_systematic(&g).unwrap(), example1());
    }

    #[test]
    fn build_degenerate_collections() {
        let parity = Collection::new(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(
            build_systematic(&parity),
            GenMatrix::from_strings(&["1001", "0101", "0011"]).unwrap()
        );
        let empty = Collection::new(2, &[vec![], vec![]]).unwrap();
        assert_eq!(
            build_systematic(&empty),
            GenMatrix::from_strings(&["1000", "0100"]).unwrap()
        );
    }

    #[test]
    fn collection_rejects_bad_elements() {
        assert_eq!(
            Collection::new(3, &[vec![0, 3]]),
            Err(SteinerError::ElementOutOfRange {
                set: 0,
                element: 3,
                k: 3
            })
        );
        assert_eq!(Collection::new(3, &[]), Err(SteinerError::NoSets));
    }

    #[test]
    fn lemma3_examples() {
        let first_eight = Collection::new(8, &example1_sets()[..8]).unwrap();
        for i in 0..8 {
            assert_eq!(first_eight.memberships(i).len(), 3);
        }
        assert!(check_lemma3(&first_eight, 4));
        let dup = Collection::new(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!check_lemma3(&dup, 1));
        let uncovered = Collection::new(3, &[vec![0, 1]]).unwrap();
        assert!(!check_lemma3(&uncovered, 2));
    }

    #[test]
    fn example1_has_property_s5() {
        let c = example1();
        let cert = check_property_st(&c, 5).certificate().cloned().expect("S5");
        let w1 = &cert.per_symbol[0];
        assert_eq!(one_based(&w1.members), vec![1, 2, 3, 9]);
        assert_eq!(one_based(&w1.info), vec![8]);
        assert_eq!(one_based(&w1.parity), vec![5, 6]);
        let w8 = &cert.per_symbol[7];
        assert_eq!(one_based(&w8.members), vec![4, 7, 8, 9]);
        assert_eq!(one_based(&w8.info), vec![1]);
        assert_eq!(one_based(&w8.parity), vec![5, 6]);
        assert_eq!(validate_st_certificate(&c, &cert), Ok(()));
    }

    #[test]
    fn last_set_must_be_full() {
        let c = Collection::new(8, &example1_sets()[..8]).unwrap();
        assert_eq!(
            check_property_st(&c, 5),
            StVerdict::No(StFailure::LastSetNotFull)
        );
    }

    #[test]
    fn single_full_set_has_s2() {
        let c = Collection::new(4, &[vec![0, 1, 2, 3]]).unwrap();
        let cert = check_property_st(&c, 2).certificate().cloned().unwrap();
        for (m, w) in cert.per_symbol.iter().enumerate() {
            assert!(w.parity.is_empty());
            let expected: Vec<usize> = (0..4).filter(|&x| x != m).collect();
            assert_eq!(w.info, expected);
        }
        let pir = st_recovering_sets(&c, &cert).unwrap();
        assert_eq!(pir.per_symbol[0][0].coords(), &[0]);
        assert_eq!(pir.per_symbol[0][1].coords(), &[1, 2, 3, 4]);
    }

    #[test]
    fn example1_recovering_sets_for_first_symbol() {
        let c = example1();
        let cert = check_property_st(&c, 5).certificate().cloned().unwrap();
        let pir = st_recovering_sets(&c, &cert).unwrap();
        let got: Vec<Vec<usize>> = pir.per_symbol[0]
            .iter()
            .map(|s| one_based(s.coords()))
            .collect();
        assert_eq!(
            got,
            vec![
                vec![1],
                vec![2, 3, 9],
                vec![4, 6, 10],
                vec![5, 7, 11],
                vec![8, 13, 14, 17]
            ]
        );
        assert_eq!(check_certificate(&build_systematic(&c), &pir), Ok(true));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let c = example1();
        let mut cert = check_property_st(&c, 5).certificate().cloned().unwrap();
        cert.per_symbol[0].parity = vec![4];
        assert!(matches!(
            st_recovering_sets(&c, &cert),
            Err(SteinerError::InvalidCertificate(_))
        ));
    }

    #[test]
    fn certificates_are_deterministic() {
        let c = example1();
        assert_eq!(check_property_st(&c, 5), check_property_st(&c, 5));
    }

    fn random_collection(rng: &mut ChaCha8Rng, k: usize, r: usize, with_full: bool) -> Collection {
        let mut sets: Vec<Vec<usize>> = (0..r)
            .map(|_| (0..k).filter(|_| rng.gen_bool(0.4)).collect())
            .collect();
        if with_full {
            sets.push((0..k).collect());
        }
        Collection::new(k, &sets).unwrap()
    }

    #[test]
    fn property_st_implies_pir_on_random_collections() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut hits = 0;
        for _ in 0..20_000 {
            let k = rng.gen_range(1..=6);
            let r = rng.gen_range(0..=8);
            let c = random_collection(&mut rng, k, r, true);
            for t in 2..=5 {
                if let StVerdict::Yes(cert) = check_property_st(&c, t) {
                    hits += 1;
                    for (m, w) in cert.per_symbol.iter().enumerate() {
                        let mut lhs = BitVector::from_indices(k, w.info.iter().copied());
                        for &j in &w.parity {
                            lhs.xor_assign(c.set(j));
                        }
                        assert_eq!(lhs, BitVector::ones(k).xor(&BitVector::unit(k, m)));
                    }
                    let g = build_systematic(&c);
                    let pir = st_recovering_sets(&c, &cert).unwrap();
                    assert_eq!(check_certificate(&g, &pir), Ok(true), "{c:?} t={t}");
                    assert!(verify_pir(&g, t, &VerifyOptions::default()).is_yes());
                }
            }
        }
        assert!(hits > 20, "only {hits} S_t instances sampled");
    }

    #[test]
    fn lemma3_implies_pir_on_random_collections() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut hits = 0;
        for _ in 0..20_000 {
            let k = rng.gen_range(1..=7);
            let r = rng.gen_range(1..=12);
            let c = random_collection(&mut rng, k, r, false);
            if c.blocklength() > 20 {
                continue;
            }
            for t in 1..=4 {
                if check_lemma3(&c, t) {
                    hits += 1;
                    let g = build_systematic(&c);
                    assert!(
                        verify_pir(&g, t, &VerifyOptions::default()).is_yes(),
                        "{c:?} t={t}"
                    );
                }
            }
        }
        assert!(hits > 50, "only {hits} Lemma-3 instances sampled");
    }
}
