//! Hamming and symbol-pair weights of vectors over a field.

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field};

pub fn support(c: &[Fe]) -> Vec<usize> {
    c.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn hamming_weight(c: &[Fe]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

/// The symbol-pair read vector `((c_0, c_1), …, (c_{n−1}, c_0))`.
pub fn pi_expand(c: &[Fe]) -> Result<Vec<(Fe, Fe)>> {
    let n = c.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "pair read needs length at least 2, got {n}"
        )));
    }
    Ok((0..n).map(|i| (c[i], c[(i + 1) % n])).collect())
}

/// Number of `i` with `(c_i, c_{i+1}) ≠ (0, 0)`, indices cyclic.
pub fn pair_weight(c: &[Fe]) -> usize {
    let n = c.len();
    (0..n)
        .filter(|&i| !c[i].is_zero() || !c[(i + 1) % n].is_zero())
        .count()
}

pub fn pair_distance(f: &Field, x: &[Fe], y: &[Fe]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let diff: Vec<Fe> = x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect();
    Ok(pair_weight(&diff))
}

pub fn hamming_distance(x: &[Fe], y: &[Fe]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

/// `|S ∪ (S − 1)|` for a set of positions in `Z_n`.
pub fn pair_weight_of_support(n: usize, s: &[usize]) -> usize {
    let mut hit = vec![false; n];
    for &i in s {
        hit[i % n] = true;
        hit[(i + n - 1) % n] = true;
    }
    hit.iter().filter(|&&b| b).count()
}
