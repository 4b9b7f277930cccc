//! Shared fixtures and brute-force oracles for unit tests.

use rand::Rng;

use crate::gf2::{BitVector, GenMatrix};

/// The systematic [8,2] code with constant row weight 5.
pub fn eq1() -> GenMatrix {
    GenMatrix::from_strings(&["10111001", "01100111"]).unwrap()
}

/// The [17,8] code built from the eight triples plus the full set.
pub fn example1_matrix() -> GenMatrix {
    let parity = [
        "111000001",
        "100110001",
        "100001101",
        "010101001",
        "001010101",
        "010010011",
        "001001011",
        "000100111",
    ];
    let rows: Vec<String> = parity
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut s: String = (0..8).map(|j| if i == j { '1' } else { '0' }).collect();
            s.push_str(p);
            s
        })
        .collect();
    GenMatrix::from_strings(&rows).unwrap()
}

/// Example 1's sets, 0-based.
pub fn example1_sets() -> Vec<Vec<usize>> {
    let one_based: [&[usize]; 9] = [
        &[1, 2, 3],
        &[1, 4, 6],
        &[1, 5, 7],
        &[2, 4, 8],
        &[2, 5, 6],
        &[3, 4, 7],
        &[3, 5, 8],
        &[6, 7, 8],
        &[1, 2, 3, 4, 5, 6, 7, 8],
    ];
    one_based
        .iter()
        .map(|s| s.iter().map(|x| x - 1).collect())
        .collect()
}

pub fn random_systematic<R: Rng>(rng: &mut R, k: usize, n: usize) -> GenMatrix {
    let rows = (0..k)
        .map(|i| {
            let bits: Vec<bool> = (0..n)
                .map(|j| if j < k { i == j } else { rng.gen_bool(0.5) })
                .collect();
            BitVector::from_bools(&bits)
        })
        .collect();
    GenMatrix::new(rows).unwrap()
}

/// Largest `t` such that every symbol has `t` disjoint recovering sets,
/// found by dynamic programming over all coordinate subsets (n <= 16).
///
/// Independent of the solver path: sums are recomputed bit by bit and every
/// subset, minimal or not, is considered.
pub fn packing_oracle(g: &GenMatrix) -> usize {
    let (k, n) = (g.k(), g.n());
    assert!(n <= 16);
    let full = (1usize << n) - 1;
    let sum_of = |mask: usize| -> Vec<bool> {
        (0..k)
            .map(|i| {
                (0..n)
                    .filter(|&j| (mask >> j) & 1 == 1 && g.get(i, j))
                    .count()
                    % 2
                    == 1
            })
            .collect()
    };
    let sums: Vec<Vec<bool>> = (0..=full).map(sum_of).collect();
    (0..k)
        .map(|i| {
            let recovers: Vec<bool> = sums
                .iter()
                .map(|s| s.iter().enumerate().all(|(r, &b)| b == (r == i)))
                .collect();
            let mut best = vec![0usize; full + 1];
            for mask in 1..=full {
                let low = mask & mask.wrapping_neg();
                let mut value = best[mask & !low];
                let rest = mask & !low;
                let mut sub = rest;
                loop {
                    let s = sub | low;
                    if recovers[s] {
                        value = value.max(1 + best[mask & !s]);
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                best[mask] = value;
            }
            best[full]
        })
        .min()
        .unwrap()
}
