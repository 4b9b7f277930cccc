//! Code constructions that preserve (or trade) the PIR property.
//!
//! The matrix-only operations mirror the classical bounds on the minimum
//! blocklength: concatenation adds availabilities, the direct sum adds
//! dimensions, shortening and puncturing trade one symbol or one coordinate.
//! The certificate-carrying operations ([`even_extend`],
//! [`lengthen_extend`], [`s5_lengthen`]) also transport recovering sets, so
//! their outputs can be re-validated without a search via [`Certified::check`].

use thiserror::Error;

use crate::gf2::{BitVector, GenMatrix};
use crate::pir::{check_certificate, PirCertificate, RecoveringSet};
use crate::steiner::{validate_st_certificate, Collection, StCertificate, StWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not in systematic form")]
    NotSystematic,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("operation needs k >= {min}, got {k}")]
    DimensionTooSmall { k: usize, min: usize },
    #[error("deleting coordinate {column} drops the rank below k")]
    RankLoss { column: usize },
    #[error("certificate does not witness the stated availability")]
    InvalidCertificate,
    #[error("t = {t} must be even here")]
    OddT { t: usize },
    #[error("t = {t} must be odd here")]
    EvenT { t: usize },
    #[error("collection does not have property S5")]
    NoPropertyS5,
    #[error("set {j} is empty")]
    EmptyTargetSet { j: usize },
    #[error("re-verification of the constructed code failed")]
    VerificationFailed,
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// A generator matrix together with a certificate for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certified {
    pub matrix: GenMatrix,
    pub certificate: PirCertificate,
}

impl Certified {
    /// Re-validates the certificate against the matrix.
    pub fn check(&self) -> Result<()> {
        match check_certificate(&self.matrix, &self.certificate) {
            Ok(true) => Ok(()),
            _ => Err(ConstructionError::VerificationFailed),
        }
    }
}

fn require_valid(g: &GenMatrix, cert: &PirCertificate, t: usize) -> Result<()> {
    if cert.t != t || check_certificate(g, cert) != Ok(true) {
        return Err(ConstructionError::InvalidCertificate);
    }
    Ok(())
}

fn set(coords: Vec<usize>) -> RecoveringSet {
    RecoveringSet::new(coords).expect("nonempty set of distinct coordinates")
}

/// `[G | G']`: a t-PIR and a t'-PIR code of the same dimension give a
/// (t + t')-PIR code.
pub fn concat_availability(g: &GenMatrix, h: &GenMatrix) -> Result<GenMatrix> {
    g.hstack(h).ok_or(ConstructionError::DimensionMismatch {
        left: g.k(),
        right: h.k(),
    })
}

/// Certificate for [`concat_availability`]: the sets of `h` shifted by `n`.
pub fn concat_certificates(
    g: &GenMatrix,
    cg: &PirCertificate,
    ch: &PirCertificate,
) -> PirCertificate {
    let n = g.n();
    let per_symbol = cg
        .per_symbol
        .iter()
        .zip(&ch.per_symbol)
        .map(|(a, b)| {
            a.iter()
                .cloned()
                .chain(
                    b.iter()
                        .map(|s| set(s.coords().iter().map(|c| c + n).collect())),
                )
                .collect()
        })
        .collect();
    PirCertificate {
        t: cg.t + ch.t,
        per_symbol,
    }
}

/// Block-diagonal stacking `[[G, 0], [0, G']]`.
pub fn direct_sum(g: &GenMatrix, h: &GenMatrix) -> GenMatrix {
    let top = g.rows().iter().map(|r| r.concat(&BitVector::zeros(h.n())));
    let bottom = h.rows().iter().map(|r| BitVector::zeros(g.n()).concat(r));
    GenMatrix::new(top.chain(bottom).collect()).expect("nonempty")
}

/// Removes information symbol `i` of a systematic code: row `i` and the unit
/// column `i` are deleted.
pub fn shorten(g: &GenMatrix, i: usize) -> Result<GenMatrix> {
    if !g.is_systematic() {
        return Err(ConstructionError::NotSystematic);
    }
    if g.k() < 2 {
        return Err(ConstructionError::DimensionTooSmall { k: g.k(), min: 2 });
    }
    if i >= g.k() {
        return Err(ConstructionError::IndexOutOfRange {
            index: i,
            limit: g.k(),
        });
    }
    let g = g.remove_row(i).expect("k >= 2");
    Ok(g.remove_column(i).expect("n > k"))
}

/// Certificate for [`shorten`]: drop symbol `i`, remove coordinate `i` from
/// every set and renumber.
pub fn shorten_certificate(cert: &PirCertificate, i: usize) -> PirCertificate {
    let per_symbol = cert
        .per_symbol
        .iter()
        .enumerate()
        .filter(|(s, _)| *s != i)
        .map(|(_, sets)| {
            sets.iter()
                .map(|s| {
                    set(s
                        .coords()
                        .iter()
                        .filter(|&&c| c != i)
                        .map(|&c| if c > i { c - 1 } else { c })
                        .collect())
                })
                .collect()
        })
        .collect();
    PirCertificate {
        t: cert.t,
        per_symbol,
    }
}

/// Deletes coordinate `j`.
pub fn puncture(g: &GenMatrix, j: usize) -> Result<GenMatrix> {
    if j >= g.n() {
        return Err(ConstructionError::IndexOutOfRange {
            index: j,
            limit: g.n(),
        });
    }
    let out = g
        .remove_column(j)
        .map_err(|_| ConstructionError::RankLoss { column: j })?;
    if out.rank() < g.k() {
        return Err(ConstructionError::RankLoss { column: j });
    }
    Ok(out)
}

/// Certificate for [`puncture`]: per symbol, the set holding `j` (or the
/// last set if none does) is dropped and coordinates above `j` shift down.
pub fn puncture_certificate(cert: &PirCertificate, j: usize) -> PirCertificate {
    let per_symbol = cert
        .per_symbol
        .iter()
        .map(|sets| {
            let drop = sets
                .iter()
                .position(|s| s.contains(j))
                .unwrap_or(sets.len().saturating_sub(1));
            sets.iter()
                .enumerate()
                .filter(|(h, _)| *h != drop)
                .map(|(_, s)| {
                    set(s
                        .coords()
                        .iter()
                        .map(|&c| if c > j { c - 1 } else { c })
                        .collect())
                })
                .collect()
        })
        .collect();
    PirCertificate {
        t: cert.t.saturating_sub(1),
        per_symbol,
    }
}

/// Appends the sum of all columns to a t-PIR code with odd `t`, giving a
/// (t + 1)-PIR code. The extra set of symbol `i` is every coordinate not in
/// its `t` sets, plus the new one.
pub fn even_extend(g: &GenMatrix, t: usize, cert: &PirCertificate) -> Result<Certified> {
    if t.is_multiple_of(2) {
        return Err(ConstructionError::EvenT { t });
    }
    require_valid(g, cert, t)?;
    let n = g.n();
    let total = g.column_sum(0..n);
    let matrix = g.push_column(&total);
    let per_symbol = cert
        .per_symbol
        .iter()
        .map(|sets| {
            let mut used = vec![false; n];
            for s in sets {
                for &c in s.coords() {
                    used[c] = true;
                }
            }
            let mut extra: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
            extra.push(n);
            let mut out = sets.clone();
            out.push(set(extra));
            out
        })
        .collect();
    Ok(Certified {
        matrix,
        certificate: PirCertificate {
            t: t + 1,
            per_symbol,
        },
    })
}

/// Adds one information symbol and `ceil(t/2)` coordinates.
///
/// Even `t` uses [`append_symbol`] directly. Odd `t` goes through the
/// (t + 1) code: [`even_extend`], [`append_symbol`], then [`puncture`] of the
/// coordinate the even extension added.
pub fn lengthen_extend(
    g: &GenMatrix,
    t: usize,
    cert: &PirCertificate,
    m: usize,
) -> Result<Certified> {
    if t.is_multiple_of(2) {
        return append_symbol(g, t, cert, m);
    }
    let n = g.n();
    let extended = even_extend(g, t, cert)?;
    let grown = append_symbol(&extended.matrix, t + 1, &extended.certificate, m)?;
    let matrix = puncture(&grown.matrix, n)?;
    let certificate = puncture_certificate(&grown.certificate, n);
    Ok(Certified {
        matrix,
        certificate,
    })
}

/// The even-`t` lengthening: `[[G, 0], [z, 1...1]]` with `t/2` appended unit
/// columns. `z` has one 1 in each of `t/2` recovering sets of symbol `m`:
/// the smallest sets are chosen, and within each the smallest coordinate.
pub fn append_symbol(
    g: &GenMatrix,
    t: usize,
    cert: &PirCertificate,
    m: usize,
) -> Result<Certified> {
    if t % 2 == 1 {
        return Err(ConstructionError::OddT { t });
    }
    if m >= g.k() {
        return Err(ConstructionError::IndexOutOfRange {
            index: m,
            limit: g.k(),
        });
    }
    require_valid(g, cert, t)?;
    let (k, n, half) = (g.k(), g.n(), t / 2);

    let sets_m = &cert.per_symbol[m];
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&h| sets_m[h].len());
    let mut chosen: Vec<usize> = order[..half].to_vec();
    chosen.sort_unstable();
    let mut others: Vec<usize> = order[half..].to_vec();
    others.sort_unstable();
    let picks: Vec<usize> = chosen.iter().map(|&h| sets_m[h].coords()[0]).collect();

    let z = BitVector::from_indices(n, picks.iter().copied());
    let mut rows: Vec<BitVector> = g
        .rows()
        .iter()
        .map(|r| r.concat(&BitVector::zeros(half)))
        .collect();
    rows.push(z.concat(&BitVector::ones(half)));
    let matrix = GenMatrix::new(rows).expect("nonempty");

    let mut per_symbol: Vec<Vec<RecoveringSet>> = cert
        .per_symbol
        .iter()
        .map(|sets| {
            let mut next = n;
            sets.iter()
                .map(|s| {
                    let hits = s.coords().iter().filter(|c| picks.contains(c)).count();
                    if hits % 2 == 1 {
                        let mut coords = s.coords().to_vec();
                        coords.push(next);
                        next += 1;
                        set(coords)
                    } else {
                        s.clone()
                    }
                })
                .collect()
        })
        .collect();

    let mut new_sets: Vec<RecoveringSet> = chosen
        .iter()
        .zip(&others)
        .map(|(&a, &b)| {
            let mut coords = sets_m[a].coords().to_vec();
            coords.extend_from_slice(sets_m[b].coords());
            set(coords)
        })
        .collect();
    new_sets.extend((n..n + half).map(|c| set(vec![c])));
    per_symbol.push(new_sets);
    debug_assert_eq!(per_symbol.len(), k + 1);

    Ok(Certified {
        matrix,
        certificate: PirCertificate { t, per_symbol },
    })
}

/// Lengthens a collection with property S5 by one symbol and three
/// redundancy coordinates.
///
/// The new symbol joins set `j1`, two fresh singletons `{k}` are inserted
/// before the full set, and the full set grows to cover the new symbol. The
/// returned certificate transports the old witnesses and builds the new
/// symbol's witness from `l = min P_j1` and `j2 = min J(l) \ {j1, last}`.
pub fn s5_lengthen(
    c: &Collection,
    cert: &StCertificate,
    j1: usize,
) -> Result<(Collection, StCertificate)> {
    let (k, r) = (c.k(), c.r());
    let last = r - 1;
    if cert.t != 5 || validate_st_certificate(c, cert).is_err() {
        return Err(ConstructionError::NoPropertyS5);
    }
    if j1 >= last {
        return Err(ConstructionError::IndexOutOfRange {
            index: j1,
            limit: last,
        });
    }
    let Some(l) = c.set(j1).first_one() else {
        return Err(ConstructionError::EmptyTargetSet { j: j1 });
    };

    let widen = |s: &BitVector| s.concat(&BitVector::zeros(1));
    let mut sets: Vec<BitVector> = (0..last).map(|j| widen(c.set(j))).collect();
    sets[j1].set(k, true);
    sets.push(BitVector::unit(k + 1, k));
    sets.push(BitVector::unit(k + 1, k));
    sets.push(BitVector::ones(k + 1));
    let grown = Collection::from_bitsets(k + 1, sets).expect("k + 1 >= 1");

    // Old indices j < last keep their position; the old full set moves to last + 2.
    let remap = |j: usize| if j == last { last + 2 } else { j };
    let mut per_symbol: Vec<StWitness> = cert
        .per_symbol
        .iter()
        .map(|w| {
            let mut parity = w.parity.clone();
            if !parity.contains(&j1) {
                parity.push(last);
            }
            StWitness {
                members: grown_members(&w.members, remap),
                info: w.info.clone(),
                parity,
            }
        })
        .collect();

    let wl = &cert.per_symbol[l];
    let j2 = *wl
        .members
        .iter()
        .find(|&&j| j != j1 && j != last)
        .expect("symbol in S5 collection lies in four sets");
    let mut info: Vec<usize> = wl.info.clone();
    info.extend(c.set(j2).ones_iter().filter(|&x| x != l));
    info.sort_unstable();
    let mut parity = wl.parity.clone();
    parity.push(j2);
    parity.sort_unstable();
    per_symbol.push(StWitness {
        members: vec![j1, last, last + 1, last + 2],
        info,
        parity,
    });
    for w in &mut per_symbol {
        w.parity.sort_unstable();
    }

    let new_cert = StCertificate { t: 5, per_symbol };
    validate_st_certificate(&grown, &new_cert)
        .map_err(|_| ConstructionError::VerificationFailed)?;
    Ok((grown, new_cert))
}

fn grown_members(members: &[usize], remap: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out: Vec<usize> = members.iter().map(|&j| remap(j)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::{verify_pir, Verdict, VerifyOptions};
    use crate::steiner::{build_systematic, check_property_st, st_recovering_sets};
    use crate::test_support::{eq1, example1_matrix, example1_sets};

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    fn cert_of(g: &GenMatrix, t: usize) -> PirCertificate {
        match verify_pir(g, t, &opts()) {
            Verdict::Yes(c) => c,
            v => panic!("expected {t}-PIR, got {v:?}"),
        }
    }

    fn repetition(n: usize) -> GenMatrix {
        GenMatrix::from_strings(&["1".repeat(n)]).unwrap()
    }

    #[test]
    fn replication_is_2pir() {
        let id = GenMatrix::identity(2);
        let g = concat_availability(&id, &id).unwrap();
        assert_eq!((g.k(), g.n()), (2, 4));
        assert!(verify_pir(&g, 2, &opts()).is_yes());
        let c = concat_certificates(&id, &cert_of(&id, 1), &cert_of(&id, 1));
        assert_eq!(check_certificate(&g, &c), Ok(true));
    }

    #[test]
    fn concat_eq1_with_identity_is_6pir() {
        let g = concat_availability(&eq1(), &GenMatrix::identity(2)).unwrap();
        assert_eq!((g.k(), g.n()), (2, 10));
        assert!(verify_pir(&g, 6, &opts()).is_yes());
        assert_eq!(
            concat_availability(&eq1(), &GenMatrix::identity(3)),
            Err(ConstructionError::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn direct_sum_examples() {
        let one = GenMatrix::identity(1);
        assert_eq!(direct_sum(&one, &one), GenMatrix::identity(2));
        let g = direct_sum(&eq1(), &eq1());
        assert_eq!((g.k(), g.n()), (4, 16));
        assert!(verify_pir(&g, 5, &opts()).is_yes());
        for j in 0..8 {
            assert_eq!(g.column(j), eq1().column(j).concat(&BitVector::zeros(2)));
        }
    }

    #[test]
    fn shorten_examples() {
        assert_eq!(
            shorten(&GenMatrix::identity(2), 1).unwrap(),
            GenMatrix::identity(1)
        );
        let g = example1_matrix();
        let s = shorten(&g, 7).unwrap();
        assert_eq!((s.k(), s.n()), (7, 16));
        assert!(verify_pir(&s, 5, &opts()).is_yes());
        let moved = shorten_certificate(&cert_of(&g, 5), 7);
        assert_eq!(check_certificate(&s, &moved), Ok(true));
        let reversed = GenMatrix::from_strings(&["10011101", "11100110"]).unwrap();
        assert_eq!(shorten(&reversed, 0), Err(ConstructionError::NotSystematic));
    }

    #[test]
    fn puncture_examples() {
        let id = GenMatrix::identity(2);
        let rep = concat_availability(&id, &id).unwrap();
        let p = puncture(&rep, 2).unwrap();
        assert_eq!((p.k(), p.n()), (2, 3));
        assert!(verify_pir(&p, 1, &opts()).is_yes());

        let g = example1_matrix();
        let p = puncture(&g, 16).unwrap();
        assert_eq!(p.n(), 16);
        assert!(verify_pir(&p, 4, &opts()).is_yes());
        let moved = puncture_certificate(&cert_of(&g, 5), 16);
        assert_eq!(check_certificate(&p, &moved), Ok(true));

        assert_eq!(
            puncture(&GenMatrix::identity(3), 1),
            Err(ConstructionError::RankLoss { column: 1 })
        );
    }

    #[test]
    fn even_extend_repetition_and_eq1() {
        let rep = repetition(5);
        let out = even_extend(&rep, 5, &cert_of(&rep, 5)).unwrap();
        assert_eq!((out.matrix.k(), out.matrix.n()), (1, 6));
        out.check().unwrap();
        assert!(verify_pir(&out.matrix, 6, &opts()).is_yes());

        let g = eq1();
        let out = even_extend(&g, 5, &cert_of(&g, 5)).unwrap();
        assert_eq!(out.matrix.n(), 9);
        assert_eq!(out.matrix.column(8), g.column_sum(0..8));
        out.check().unwrap();
        assert!(verify_pir(&out.matrix, 6, &opts()).is_yes());

        assert_eq!(
            even_extend(&g, 4, &cert_of(&g, 4)),
            Err(ConstructionError::EvenT { t: 4 })
        );
        let mut wrong = cert_of(&g, 5);
        wrong.per_symbol.swap(0, 1);
        assert_eq!(
            even_extend(&g, 5, &wrong),
            Err(ConstructionError::InvalidCertificate)
        );
    }

    #[test]
    fn lengthen_extend_replication() {
        let rep = GenMatrix::from_strings(&["11"]).unwrap();
        let out = lengthen_extend(&rep, 2, &cert_of(&rep, 2), 0).unwrap();
        assert_eq!((out.matrix.k(), out.matrix.n()), (2, 3));
        out.check().unwrap();
        assert!(verify_pir(&out.matrix, 2, &opts()).is_yes());
    }

    #[test]
    fn lengthen_extend_shapes() {
        let g = eq1();
        let six = even_extend(&g, 5, &cert_of(&g, 5)).unwrap();
        let out = lengthen_extend(&six.matrix, 6, &six.certificate, 0).unwrap();
        assert_eq!((out.matrix.k(), out.matrix.n()), (3, 12));
        for j in 9..12 {
            assert_eq!(out.matrix.column(j), BitVector::unit(3, 2));
        }
        out.check().unwrap();
        assert!(verify_pir(&out.matrix, 6, &opts()).is_yes());

        // odd t: n grows by ceil(5/2) = 3
        let out = lengthen_extend(&g, 5, &cert_of(&g, 5), 1).unwrap();
        assert_eq!((out.matrix.k(), out.matrix.n()), (3, 11));
        out.check().unwrap();
        assert!(verify_pir(&out.matrix, 5, &opts()).is_yes());

        assert_eq!(
            append_symbol(&g, 5, &cert_of(&g, 5), 0),
            Err(ConstructionError::OddT { t: 5 })
        );
    }

    #[test]
    fn s5_lengthen_example1() {
        let c = Collection::new(8, &example1_sets()).unwrap();
        let cert = check_property_st(&c, 5).certificate().cloned().unwrap();
        for j1 in 0..8 {
            let (grown, gcert) = s5_lengthen(&c, &cert, j1).unwrap();
            assert_eq!((grown.k(), grown.blocklength()), (9, 20));
            assert_eq!(grown.set(grown.r() - 1), &BitVector::ones(9));
            assert!(check_property_st(&grown, 5).is_yes());
            let g = build_systematic(&grown);
            assert_eq!(g.row(8).weight(), 5);
            let pir = st_recovering_sets(&grown, &gcert).unwrap();
            assert_eq!(check_certificate(&g, &pir), Ok(true));
        }
        assert_eq!(
            s5_lengthen(&c, &cert, 8),
            Err(ConstructionError::IndexOutOfRange { index: 8, limit: 8 })
        );
    }

    #[test]
    fn s5_lengthen_rejects_non_s5() {
        let c = Collection::new(8, &example1_sets()).unwrap();
        let cert = check_property_st(&c, 5).certificate().cloned().unwrap();
        let broken = Collection::new(8, &example1_sets()[..8]).unwrap();
        assert_eq!(
            s5_lengthen(&broken, &cert, 0),
            Err(ConstructionError::NoPropertyS5)
        );
    }

    #[test]
    fn random_certificate_transport() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut exercised = 0;
        while exercised < 60 {
            let k = rng.gen_range(1..=3);
            let n = rng.gen_range(k + 2..=10);
            let g = crate::test_support::random_systematic(&mut rng, k, n);
            let t = crate::test_support::packing_oracle(&g);
            if t < 2 {
                continue;
            }
            exercised += 1;
            let cert = cert_of(&g, t);
            let grown = lengthen_extend(&g, t, &cert, rng.gen_range(0..k)).unwrap();
            grown.check().unwrap();
            assert_eq!(grown.matrix.n(), n + t.div_ceil(2));
            if t % 2 == 1 {
                even_extend(&g, t, &cert).unwrap().check().unwrap();
            }
            if k >= 2 {
                let i = rng.gen_range(0..k);
                let s = shorten(&g, i).unwrap();
                assert_eq!(
                    check_certificate(&s, &shorten_certificate(&cert, i)),
                    Ok(true)
                );
            }
            let j = rng.gen_range(0..n);
            if let Ok(p) = puncture(&g, j) {
                assert_eq!(
                    check_certificate(&p, &puncture_certificate(&cert, j)),
                    Ok(true)
                );
            }
        }
    }
}
