//! Support patterns on `Z_n` up to rotation.
//!
//! A pattern is canonical when its sorted position list is the
//! lexicographically smallest among all `n` rotations. Every canonical
//! pattern other than the full set contains 0, starts a run there and
//! misses `n − 1`, so canonical patterns are generated from run/gap
//! compositions anchored at 0 and then filtered.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SupportPattern {
    n: usize,
    positions: Vec<usize>,
}

impl SupportPattern {
    pub fn new(n: usize, mut positions: Vec<usize>) -> Result<SupportPattern> {
        positions.sort_unstable();
        positions.dedup();
        if let Some(&bad) = positions.iter().find(|&&p| p >= n) {
            return Err(Error::InvalidArgument(format!(
                "position {bad} out of range for length {n}"
            )));
        }
        Ok(SupportPattern { n, positions })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &p in &self.positions {
            m[p] = true;
        }
        m
    }

    /// Positions shifted by `+k` modulo `n`.
    pub fn rotate(&self, k: usize) -> SupportPattern {
        let mut positions: Vec<usize> = self.positions.iter().map(|&p| (p + k) % self.n).collect();
        positions.sort_unstable();
        SupportPattern {
            n: self.n,
            positions,
        }
    }

    fn rotated_list(&self, anchor: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .positions
            .iter()
            .map(|&p| (p + self.n - anchor) % self.n)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn canonical(&self) -> SupportPattern {
        let positions = self
            .positions
            .iter()
            .map(|&a| self.rotated_list(a))
            .min()
            .unwrap_or_default();
        SupportPattern {
            n: self.n,
            positions,
        }
    }

    pub fn is_canonical(&self) -> bool {
        if self.positions.first().is_some_and(|&p| p != 0) {
            return false;
        }
        self.positions
            .iter()
            .skip(1)
            .all(|&a| self.rotated_list(a) >= self.positions)
    }

    /// Number of maximal cyclic runs of consecutive positions.
    pub fn runs(&self) -> usize {
        if self.positions.len() == self.n {
            return 1;
        }
        self.positions
            .iter()
            .filter(|&&p| !self.contains((p + self.n - 1) % self.n))
            .count()
    }

    /// `|S ∪ (S − 1)|`, which is `|S| + runs` unless `S` is everything.
    pub fn pair_weight(&self) -> usize {
        if self.positions.len() == self.n {
            self.n
        } else {
            self.positions.len() + self.runs()
        }
    }

    /// The characteristic string with `*` for a position and `0` elsewhere.
    pub fn shape_string(&self) -> String {
        self.mask().iter().map(|&b| if b { '*' } else { '0' }).collect()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of compositions of `total` into `parts` positive parts.
fn compositions_count(total: usize, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    if total < parts {
        return 0;
    }
    binomial(total - 1, parts - 1)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Canonical patterns of size `w` with exactly `rho` runs (`0 < w < n`).
fn by_size_and_runs(n: usize, w: usize, rho: usize) -> Vec<SupportPattern> {
    let mut out = Vec::new();
    let gaps = compositions(n - w, rho);
    for lens in compositions(w, rho) {
        for gap in &gaps {
            let mut positions = Vec::with_capacity(w);
            let mut at = 0;
            for (l, g) in lens.iter().zip(gap) {
                positions.extend(at..at + l);
                at += l + g;
            }
            let s = SupportPattern { n, positions };
            if s.is_canonical() {
                out.push(s);
            }
        }
    }
    out
}

fn full(n: usize) -> SupportPattern {
    SupportPattern {
        n,
        positions: (0..n).collect(),
    }
}

/// All canonical patterns with `|S| = w`, sorted.
pub fn by_weight(n: usize, w: usize) -> Vec<SupportPattern> {
    if w == 0 || w > n {
        return Vec::new();
    }
    if w == n {
        return vec![full(n)];
    }
    let mut out: Vec<SupportPattern> = (1..=w.min(n - w))
        .flat_map(|rho| by_size_and_runs(n, w, rho))
        .collect();
    out.sort();
    out
}

/// All canonical patterns with pair weight `pw`, ordered by `|S|` and then
/// lexicographically.
pub fn by_pair_weight(n: usize, pw: usize) -> Vec<SupportPattern> {
    let mut out = Vec::new();
    if pw < 2 || pw > n {
        return out;
    }
    // pw = w + rho with 1 ≤ rho ≤ min(w, n − w)
    for w in pw.div_ceil(2)..pw {
        let rho = pw - w;
        if w < n && rho <= w && rho <= n - w {
            out.extend(by_size_and_runs(n, w, rho));
        }
    }
    if pw == n {
        out.push(full(n));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.positions.cmp(&b.positions)));
    out
}

/// Upper bound on `by_weight(n, w).len()`: the number of anchored
/// run/gap compositions before rotation filtering.
pub fn weight_level_bound(n: usize, w: usize) -> u128 {
    if w == 0 || w > n {
        return 0;
    }
    if w == n {
        return 1;
    }
    (1..=w.min(n - w))
        .map(|rho| compositions_count(w, rho) * compositions_count(n - w, rho))
        .sum()
}

/// Upper bound on `by_pair_weight(n, pw).len()`.
pub fn pair_level_bound(n: usize, pw: usize) -> u128 {
    if pw < 2 || pw > n {
        return 0;
    }
    let mut total = u128::from(pw == n);
    for w in pw.div_ceil(2)..pw {
        let rho = pw - w;
        if w < n && rho <= w && rho <= n - w {
            total += compositions_count(w, rho) * compositions_count(n - w, rho);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(n: usize) -> Vec<SupportPattern> {
        let mut seen = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let s = SupportPattern::new(n, (0..n).filter(|&i| mask >> i & 1 == 1).collect())
                .unwrap();
            seen.insert(s.canonical());
        }
        seen.into_iter().collect()
    }

    #[test]
    fn generators_match_brute_force() {
        for n in 2..=12 {
            let all = brute(n);
            for w in 1..=n {
                let mut want: Vec<_> = all.iter().filter(|s| s.len() == w).cloned().collect();
                want.sort();
                assert_eq!(by_weight(n, w), want, "n={n} w={w}");
                assert!(want.len() as u128 <= weight_level_bound(n, w));
            }
            for pw in 2..=n {
                let mut want: Vec<_> = all
                    .iter()
                    .filter(|s| s.pair_weight() == pw)
                    .cloned()
                    .collect();
                want.sort_by(|a, b| a.len().cmp(&b.len()).then(a.positions.cmp(&b.positions)));
                assert_eq!(by_pair_weight(n, pw), want, "n={n} pw={pw}");
                assert!(want.len() as u128 <= pair_level_bound(n, pw));
            }
        }
    }

    #[test]
    fn canonical_form_properties() {
        let s = SupportPattern::new(10, vec![3, 4, 9]).unwrap();
        let c = s.canonical();
        assert!(c.is_canonical());
        assert_eq!(c.positions(), &[0, 1, 6]);
        assert_eq!(s.pair_weight(), 5);
        assert_eq!(s.runs(), 2);
        assert_eq!(s.rotate(1).positions(), &[0, 4, 5]);
        assert_eq!(c.shape_string(), "**0000*000");
        assert!(SupportPattern::new(4, vec![4]).is_err());
    }

    #[test]
    fn single_point_is_the_only_pair_weight_two_shape() {
        assert_eq!(by_pair_weight(9, 2), vec![SupportPattern::new(9, vec![0]).unwrap()]);
    }
}
