use crate::gf2::{Gf2Vector, SparseGf2Matrix};
use crate::{Error, Result};

const MAX_EXHAUSTIVE_COLS: usize = 20;
const MAX_COMBINATION_COLS: usize = 30;
const MAX_CANDIDATES: u128 = 1 << 28;

/// Every minimum-weight `ê` with `H · ê = s` and weight at most `w_max`;
/// empty if there is none.
///
/// Up to 20 columns every one of the `2^n` vectors is visited in Gray-code
/// order. Up to 30 columns the vectors of weight `0, 1, …, w_max` are
/// enumerated by increasing weight. Larger searches fail with
/// [`Error::Infeasible`].
pub fn brute_force_coset_leader(h: &SparseGf2Matrix, s: &Gf2Vector, w_max: usize) -> Result<Vec<Gf2Vector>> {
    if s.len() != h.rows() {
        return Err(Error::DimensionMismatch {
            context: "syndrome length",
            expected: h.rows(),
            actual: s.len(),
        });
    }
    let n = h.cols();
    let columns: Vec<Gf2Vector> = (0..n).map(|c| h.col_vector(c)).collect();
    if n <= MAX_EXHAUSTIVE_COLS {
        Ok(exhaustive(&columns, s, n, w_max))
    } else if n <= MAX_COMBINATION_COLS {
        let candidates: u128 = (0..=w_max.min(n)).map(|w| binomial(n, w)).sum();
        if candidates > MAX_CANDIDATES {
            return Err(Error::Infeasible(format!(
                "{candidates} candidates for n = {n}, w_max = {w_max}"
            )));
        }
        Ok(by_weight(&columns, s, n, w_max))
    } else {
        Err(Error::Infeasible(format!(
            "n = {n} exceeds the {MAX_COMBINATION_COLS}-column enumeration limit"
        )))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn exhaustive(columns: &[Gf2Vector], s: &Gf2Vector, n: usize, w_max: usize) -> Vec<Gf2Vector> {
    let mut syndrome = Gf2Vector::zeros(s.len());
    let mut best = usize::MAX;
    let mut found: Vec<u32> = Vec::new();
    let mut consider = |code: u32, syndrome: &Gf2Vector| {
        let w = code.count_ones() as usize;
        if w <= w_max && w <= best && syndrome == s {
            if w < best {
                best = w;
                found.clear();
            }
            found.push(code);
        }
    };
    consider(0, &syndrome);
    for i in 1u32..(1u32 << n) {
        // Gray code i ^ (i >> 1) differs from its predecessor in one bit
        let bit = i.trailing_zeros() as usize;
        syndrome ^= &columns[bit];
        consider(i ^ (i >> 1), &syndrome);
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|code| {
            let bits: Vec<bool> = (0..n).map(|b| code >> b & 1 == 1).collect();
            Gf2Vector::from_bools(&bits)
        })
        .collect()
}

fn by_weight(columns: &[Gf2Vector], s: &Gf2Vector, n: usize, w_max: usize) -> Vec<Gf2Vector> {
    for w in 0..=w_max.min(n) {
        let mut found = Vec::new();
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            let mut syndrome = Gf2Vector::zeros(s.len());
            for &c in &idx {
                syndrome ^= &columns[c];
            }
            if &syndrome == s {
                found.push(Gf2Vector::from_support(n, &idx).expect("indices in range"));
            }
            // next combination in lexicographic order
            let Some(pos) = (0..w).rev().find(|&i| idx[i] < n - w + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..w {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}
