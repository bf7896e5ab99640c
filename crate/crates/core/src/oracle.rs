//! Brute-force element counting for Artin monoids.
//!
//! Elements of degree `n` are equivalence classes of length-`n` words over
//! the generators, where two words are equivalent iff one rewrites to the
//! other by replacing an alternating factor `aba...` (of length `m(a, b)`)
//! with `bab...`. The count is obtained by flood-filling rewrite orbits over
//! all `rank^n` words, with no input from the growth-function machinery it
//! cross-checks.

use serde::Serialize;

use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::series::invert_series;
use crate::skewgrowth::skew_growth_poly;

/// Default work budget, counted in words x positions x generator pairs.
pub const DEFAULT_WORK_BUDGET: u64 = 10_000_000;

/// The partition of all length-`n` words into braid-equivalence classes.
#[derive(Debug, Clone)]
pub struct EquivalenceClassing {
    rank: usize,
    length: usize,
    class_of: Vec<u32>,
    class_count: u64,
}

impl EquivalenceClassing {
    /// Partitions all `rank^n` words, flood-filling each rewrite orbit in
    /// lexicographic order of its least word.
    pub fn build(matrix: &CoxeterMatrix, n: usize, budget: u64) -> Result<Self> {
        let rank = matrix.rank();
        let estimated = estimate_work(rank, n);
        if estimated > budget as u128 {
            return Err(Error::BudgetExceeded { estimated, budget });
        }
        let total = (rank as u64).pow(n as u32) as usize;

        const UNASSIGNED: u32 = u32::MAX;
        let mut class_of = vec![UNASSIGNED; total];
        let mut class_count = 0u64;
        let mut stack: Vec<usize> = Vec::new();
        let mut word = vec![0u8; n];
        let mut swapped = vec![0u8; n];

        for start in 0..total {
            if class_of[start] != UNASSIGNED {
                continue;
            }
            let class = class_count as u32;
            class_count += 1;
            class_of[start] = class;
            stack.push(start);
            while let Some(index) = stack.pop() {
                decode(index, rank, &mut word);
                for pos in 0..n.saturating_sub(1) {
                    let a = word[pos];
                    let b = word[pos + 1];
                    if a == b {
                        continue;
                    }
                    let m = matrix.entry(a as usize + 1, b as usize + 1) as usize;
                    if pos + m > n || !is_alternating(&word[pos..pos + m], a, b) {
                        continue;
                    }
                    swapped.copy_from_slice(&word);
                    for (offset, letter) in swapped[pos..pos + m].iter_mut().enumerate() {
                        *letter = if offset % 2 == 0 { b } else { a };
                    }
                    let neighbor = encode(&swapped, rank);
                    if class_of[neighbor] == UNASSIGNED {
                        class_of[neighbor] = class;
                        stack.push(neighbor);
                    }
                }
            }
        }

        Ok(EquivalenceClassing {
            rank,
            length: n,
            class_of,
            class_count,
        })
    }

    /// Number of distinct monoid elements of this degree.
    pub fn class_count(&self) -> u64 {
        self.class_count
    }

    /// Total number of words, `rank^n`.
    pub fn word_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Class id of a word given as 1-based letters; `None` if the word has
    /// the wrong length or a letter out of range.
    pub fn class_of_word(&self, letters: &[usize]) -> Option<u32> {
        if letters.len() != self.length {
            return None;
        }
        let mut index = 0usize;
        for (pos, &letter) in letters.iter().enumerate() {
            if letter < 1 || letter > self.rank {
                return None;
            }
            index += (letter - 1) * self.rank.pow(pos as u32);
        }
        Some(self.class_of[index])
    }

    /// All words (as 1-based letters) in the given class.
    pub fn words_in_class(&self, class: u32) -> Vec<Vec<usize>> {
        let mut word = vec![0u8; self.length];
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == class)
            .map(|(index, _)| {
                decode(index, self.rank, &mut word);
                word.iter().map(|&l| l as usize + 1).collect()
            })
            .collect()
    }
}

/// Conservative work estimate for one degree: words x positions x pairs.
pub fn estimate_work(rank: usize, n: usize) -> u128 {
    let pairs = (rank * rank.saturating_sub(1) / 2) as u128;
    let mut words: u128 = 1;
    for _ in 0..n {
        words = words.saturating_mul(rank as u128);
    }
    words.saturating_mul(n as u128).saturating_mul(pairs.max(1))
}

fn is_alternating(factor: &[u8], a: u8, b: u8) -> bool {
    factor
        .iter()
        .enumerate()
        .all(|(offset, &letter)| letter == if offset % 2 == 0 { a } else { b })
}

fn encode(word: &[u8], rank: usize) -> usize {
    word.iter()
        .rev()
        .fold(0usize, |acc, &letter| acc * rank + letter as usize)
}

fn decode(mut index: usize, rank: usize, word: &mut [u8]) {
    for letter in word.iter_mut() {
        *letter = (index % rank) as u8;
        index /= rank;
    }
}

/// Number of distinct monoid elements of degree `n`, by brute-force closure.
pub fn count_elements(matrix: &CoxeterMatrix, n: usize, budget: u64) -> Result<u64> {
    Ok(EquivalenceClassing::build(matrix, n, budget)?.class_count())
}

#[derive(Debug, Clone, Serialize)]
pub struct InversionRow {
    pub degree: usize,
    pub series: String,
    pub oracle: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InversionReport {
    pub rows: Vec<InversionRow>,
}

impl InversionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Compares the brute-force element counts against the inverted skew-growth
/// series for every degree up to `d`.
pub fn verify_inversion(matrix: &CoxeterMatrix, d: usize, budget: u64) -> Result<InversionReport> {
    let series = invert_series(&skew_growth_poly(matrix)?, d)?;
    let mut rows = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let counted = count_elements(matrix, n, budget)?;
        let expected = series.coeff(n);
        rows.push(InversionRow {
            degree: n,
            series: expected.to_string(),
            oracle: counted,
            ok: expected == &num_bigint::BigInt::from(counted),
        });
    }
    Ok(InversionReport { rows })
}
