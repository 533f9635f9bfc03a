//! Exact minimum Hamming and symbol-pair distance engines.
//!
//! Two engines are available.
//!
//! *Support rank.* A codeword `c` lies in the code iff `c(α^t) = 0` for all
//! `t` in the defining set `T`, so some nonzero codeword has support inside
//! `S` iff the `|T| × |S|` matrix `[α^{t·s}]` has rank below `|S|` over
//! GF(q²). The row space is Frobenius-stable (`T` is a union of cosets), so
//! its reduced echelon form and the null-space basis read off it lie over
//! GF(q). Constacyclic shifts only rescale one coordinate, so supports are
//! scanned up to rotation, level by level. For Hamming weight the level is
//! `|S|`; for pair weight it is `pw(S)`. If `supp(c) ⊆ S` then
//! `pw(c) ≤ pw(S)`, and `supp(c)` itself would have been admissible at its
//! own level, so the first admissible pattern gives the exact minimum and
//! any nonzero null vector on it attains that minimum.
//!
//! *Full enumeration.* Walks all `q^k` codewords with an odometer over the
//! message digits, chunked on the top digits for parallel runs.

use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::code::ConstacyclicCode;
use super::metric::{hamming_weight, pair_weight};
use super::support::{by_pair_weight, by_weight, pair_level_bound, weight_level_bound, SupportPattern};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ffield::{Fe, Field};
use crate::linalg::{null_space, rank, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Hamming,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SupportRank,
    FullEnumeration,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Hamming: support rank whenever a root base exists. Pair: full
    /// enumeration when `q^k` is within the limit, support rank otherwise.
    #[default]
    Auto,
    SupportRank,
    FullEnumeration,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub exec: Exec,
    pub engine: Engine,
    /// Cap on the number of support patterns considered.
    pub max_patterns: u128,
    /// Largest `q^k` the full enumeration engine accepts.
    pub full_enum_limit: u128,
    /// Fill in `elapsed_ms`. Off by default so certificates are reproducible.
    pub record_time: bool,
}

pub const DEFAULT_FULL_ENUM_LIMIT: u128 = 1 << 22;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exec: Exec::default(),
            engine: Engine::Auto,
            max_patterns: 50_000_000,
            full_enum_limit: DEFAULT_FULL_ENUM_LIMIT,
            record_time: false,
        }
    }
}

impl SearchOptions {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceCertificate {
    pub kind: DistanceKind,
    /// The minimum distance when `exact`, else `search_bound + 1` as a lower
    /// bound.
    pub value: usize,
    pub exact: bool,
    pub method: Method,
    pub search_bound: usize,
    pub witness: Vec<Fe>,
    pub scanned_digest: String,
    pub patterns_scanned: u128,
    pub elapsed_ms: Option<u64>,
}

impl DistanceCertificate {
    /// Checks that the witness is a codeword of the stated weight.
    pub fn verify(&self, code: &ConstacyclicCode) -> Result<bool> {
        if !self.exact || self.value > code.n() {
            return Ok(self.witness.is_empty());
        }
        let w = match self.kind {
            DistanceKind::Hamming => hamming_weight(&self.witness),
            DistanceKind::Pair => pair_weight(&self.witness),
        };
        Ok(w == self.value && code.contains(&self.witness)?)
    }
}

/// Rank oracle for support admissibility.
pub struct SupportRank<'a> {
    code: &'a ConstacyclicCode,
    /// `powers[i][s] = α^{t_i · s}`.
    powers: Vec<Vec<Fe>>,
}

impl<'a> SupportRank<'a> {
    pub fn new(code: &'a ConstacyclicCode) -> Result<SupportRank<'a>> {
        let alpha = code.root_base().ok_or(Error::MissingRootBase)?;
        let t = code.defining_set().ok_or(Error::MissingRootBase)?;
        let big = code.tower().big();
        let n = code.n() as u64;
        let powers = t
            .exponents
            .iter()
            .map(|&e| (0..n).map(|s| big.pow(alpha, e * s)).collect())
            .collect();
        Ok(SupportRank { code, powers })
    }

    fn matrix(&self, s: &[usize]) -> Matrix {
        let rows: Vec<Vec<Fe>> = self
            .powers
            .iter()
            .map(|row| s.iter().map(|&j| row[j]).collect())
            .collect();
        if rows.is_empty() {
            Matrix::zeros(0, s.len())
        } else {
            Matrix::from_rows(&rows)
        }
    }

    /// Whether some nonzero codeword has support inside `s`.
    pub fn admissible(&self, s: &[usize]) -> bool {
        if s.len() > self.powers.len() {
            return true;
        }
        rank(self.code.tower().big(), &self.matrix(s)) < s.len()
    }

    /// Basis over GF(q) of the codewords supported inside `s`, restricted
    /// to the positions of `s`.
    pub fn null_space(&self, s: &[usize]) -> Result<Vec<Vec<Fe>>> {
        let tower = self.code.tower();
        null_space(tower.big(), &self.matrix(s))
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|x| tower.to_subfield(x))
                    .collect::<Result<Vec<Fe>>>()
                    .map_err(|e| Error::Invariant(format!("null vector not over GF(q): {e}")))
            })
            .collect()
    }

    /// Spreads a restricted vector back to length `n`.
    pub fn expand(&self, s: &[usize], v: &[Fe]) -> Vec<Fe> {
        let mut c = vec![Fe::ZERO; self.code.n()];
        for (&i, &x) in s.iter().zip(v) {
            c[i] = x;
        }
        c
    }
}

fn digest_pattern(h: &mut Sha256, s: &SupportPattern) {
    h.update((s.len() as u32).to_le_bytes());
    for &p in s.positions() {
        h.update((p as u32).to_le_bytes());
    }
}

fn choose_rank(code: &ConstacyclicCode, kind: DistanceKind, opts: &SearchOptions) -> Result<bool> {
    let has_root = code.root_base().is_some();
    let small = code.size() <= opts.full_enum_limit;
    match opts.engine {
        Engine::SupportRank if has_root => Ok(true),
        Engine::SupportRank => Err(Error::MissingRootBase),
        Engine::FullEnumeration if small => Ok(false),
        Engine::FullEnumeration => Err(Error::BudgetExceeded(format!(
            "q^k = {} exceeds the full enumeration limit {}",
            code.size(),
            opts.full_enum_limit
        ))),
        Engine::Auto => match kind {
            DistanceKind::Hamming if has_root => Ok(true),
            DistanceKind::Pair if !small && has_root => Ok(true),
            _ if small => Ok(false),
            _ => Err(Error::MissingRootBase),
        },
    }
}

/// Minimum Hamming distance, exact when it is at most `w_max`.
pub fn min_hamming(
    code: &ConstacyclicCode,
    w_max: usize,
    opts: &SearchOptions,
) -> Result<DistanceCertificate> {
    if w_max == 0 {
        return Err(Error::InvalidArgument("weight bound must be positive".into()));
    }
    if choose_rank(code, DistanceKind::Hamming, opts)? {
        rank_search(code, DistanceKind::Hamming, w_max, opts)
    } else {
        enumeration_certificate(code, DistanceKind::Hamming, w_max, opts)
    }
}

/// Minimum pair distance, exact when it is at most `pw_max`.
pub fn min_pair(
    code: &ConstacyclicCode,
    pw_max: usize,
    opts: &SearchOptions,
) -> Result<DistanceCertificate> {
    if code.n() < 2 {
        return Err(Error::InvalidArgument("pair distance needs length at least 2".into()));
    }
    if pw_max < 2 {
        return Err(Error::InvalidArgument("pair weight bound must be at least 2".into()));
    }
    if choose_rank(code, DistanceKind::Pair, opts)? {
        rank_search(code, DistanceKind::Pair, pw_max, opts)
    } else {
        enumeration_certificate(code, DistanceKind::Pair, pw_max, opts)
    }
}

fn rank_search(
    code: &ConstacyclicCode,
    kind: DistanceKind,
    bound: usize,
    opts: &SearchOptions,
) -> Result<DistanceCertificate> {
    let start = Instant::now();
    let oracle = SupportRank::new(code)?;
    let n = code.n();
    let bound = bound.min(n);
    let mut hasher = Sha256::new();
    hasher.update(match kind {
        DistanceKind::Hamming => b"hamming",
        DistanceKind::Pair => b"pair\0\0\0",
    });
    hasher.update((n as u32).to_le_bytes());
    let mut scanned: u128 = 0;
    let first_level = if kind == DistanceKind::Pair { 2 } else { 1 };
    for level in first_level..=bound {
        let estimate = match kind {
            DistanceKind::Hamming => weight_level_bound(n, level),
            DistanceKind::Pair => pair_level_bound(n, level),
        };
        if scanned + estimate > opts.max_patterns {
            return Err(Error::BudgetExceeded(format!(
                "level {level} needs up to {estimate} more patterns, budget is {}",
                opts.max_patterns
            )));
        }
        let patterns = match kind {
            DistanceKind::Hamming => by_weight(n, level),
            DistanceKind::Pair => by_pair_weight(n, level),
        };
        let hit = opts
            .exec
            .position_first(&patterns, |s| oracle.admissible(s.positions()));
        let upto = hit.map_or(patterns.len(), |i| i + 1);
        for s in &patterns[..upto] {
            digest_pattern(&mut hasher, s);
        }
        scanned += upto as u128;
        if let Some(i) = hit {
            let s = patterns[i].positions();
            let basis = oracle.null_space(s)?;
            let v = basis
                .first()
                .ok_or_else(|| Error::Invariant("admissible pattern with trivial kernel".into()))?;
            let witness = oracle.expand(s, v);
            let cert = DistanceCertificate {
                kind,
                value: level,
                exact: true,
                method: Method::SupportRank,
                search_bound: bound,
                witness,
                scanned_digest: hex::encode(hasher.finalize()),
                patterns_scanned: scanned,
                elapsed_ms: opts.record_time.then(|| start.elapsed().as_millis() as u64),
            };
            if !cert.verify(code)? {
                return Err(Error::Invariant(format!(
                    "witness on pattern {:?} does not attain level {level}",
                    s
                )));
            }
            return Ok(cert);
        }
    }
    // every level up to n scanned without a hit means the code is zero
    let exhaustive = bound == n;
    Ok(DistanceCertificate {
        kind,
        value: bound + 1,
        exact: exhaustive,
        method: Method::SupportRank,
        search_bound: bound,
        witness: Vec::new(),
        scanned_digest: hex::encode(hasher.finalize()),
        patterns_scanned: scanned,
        elapsed_ms: opts.record_time.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Minimum weights found by walking every codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub codewords: u128,
    /// `(weight, lexicographically smallest witness)`; `None` for `{0}`.
    pub hamming: Option<(usize, Vec<Fe>)>,
    pub pair: Option<(usize, Vec<Fe>)>,
}

#[derive(Clone)]
struct Best {
    hamming: Option<(usize, Vec<Fe>)>,
    pair: Option<(usize, Vec<Fe>)>,
}

fn better(slot: &mut Option<(usize, Vec<Fe>)>, w: usize, c: &[Fe]) {
    let replace = match slot {
        None => true,
        Some((bw, bc)) => w < *bw || (w == *bw && c < bc.as_slice()),
    };
    if replace {
        *slot = Some((w, c.to_vec()));
    }
}

impl Best {
    fn offer(&mut self, c: &[Fe]) {
        let h = hamming_weight(c);
        if h == 0 {
            return;
        }
        better(&mut self.hamming, h, c);
        better(&mut self.pair, pair_weight(c), c);
    }

    fn merge(mut self, other: Best) -> Best {
        if let Some((w, c)) = other.hamming {
            better(&mut self.hamming, w, &c);
        }
        if let Some((w, c)) = other.pair {
            better(&mut self.pair, w, &c);
        }
        self
    }
}

fn add_into(f: &Field, acc: &mut [Fe], d: &[Fe]) {
    for (a, &b) in acc.iter_mut().zip(d) {
        *a = f.add(*a, b);
    }
}

/// Walks all `q^k` codewords `Σ m_i x^i g(x)`.
pub fn enumerate_codewords(code: &ConstacyclicCode, exec: Exec) -> Result<Enumeration> {
    let f = code.field().clone();
    let q = f.order() as usize;
    let k = code.k();
    let n = code.n();
    let total = code.size();
    if total == u128::MAX || total > u64::MAX as u128 {
        return Err(Error::BudgetExceeded(format!("q^k with q = {q}, k = {k}")));
    }
    let rows = code.generator_matrix();
    let symbols: Vec<Fe> = f.elements().collect();
    // delta[i][j] moves digit i from symbol j to symbol j + 1 (mod q)
    let delta: Vec<Vec<Vec<Fe>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|j| {
                    let step = f.sub(symbols[(j + 1) % q], symbols[j]);
                    row.iter().map(|&x| f.mul(step, x)).collect()
                })
                .collect()
        })
        .collect();
    let mut top = 0;
    while top < k && (q as u128).pow(top as u32) < 256 {
        top += 1;
    }
    let low = k - top;
    let chunks = q.pow(top as u32);
    let per_chunk = (q as u128).pow(low as u32);
    let results = exec.map_range(chunks, |c| {
        let mut word = vec![Fe::ZERO; n];
        let mut rest = c;
        for i in low..k {
            let s = symbols[rest % q];
            rest /= q;
            for (w, &x) in word.iter_mut().zip(&rows[i]) {
                *w = f.add(*w, f.mul(s, x));
            }
        }
        let mut best = Best {
            hamming: None,
            pair: None,
        };
        let mut digits = vec![0usize; low];
        for _ in 0..per_chunk {
            best.offer(&word);
            for i in 0..low {
                add_into(&f, &mut word, &delta[i][digits[i]]);
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
            }
        }
        best
    });
    let best = results.into_iter().fold(
        Best {
            hamming: None,
            pair: None,
        },
        Best::merge,
    );
    Ok(Enumeration {
        codewords: total,
        hamming: best.hamming,
        pair: best.pair,
    })
}

fn enumeration_certificate(
    code: &ConstacyclicCode,
    kind: DistanceKind,
    bound: usize,
    opts: &SearchOptions,
) -> Result<DistanceCertificate> {
    let start = Instant::now();
    if code.size() > opts.full_enum_limit {
        return Err(Error::BudgetExceeded(format!(
            "q^k = {} exceeds the full enumeration limit {}",
            code.size(),
            opts.full_enum_limit
        )));
    }
    let e = enumerate_codewords(code, opts.exec)?;
    let best = match kind {
        DistanceKind::Hamming => e.hamming,
        DistanceKind::Pair => e.pair,
    };
    let mut hasher = Sha256::new();
    hasher.update(b"enumeration");
    hasher.update((code.n() as u32).to_le_bytes());
    hasher.update(e.codewords.to_le_bytes());
    for c in code.generator().coeffs() {
        hasher.update(c.index().to_le_bytes());
    }
    // the walk is exhaustive, so the value is exact whatever the bound
    let (value, witness) = best.unwrap_or((code.n() + 1, Vec::new()));
    Ok(DistanceCertificate {
        kind,
        value,
        exact: true,
        method: Method::FullEnumeration,
        search_bound: bound,
        witness,
        scanned_digest: hex::encode(hasher.finalize()),
        patterns_scanned: e.codewords,
        elapsed_ms: opts.record_time.then(|| start.elapsed().as_millis() as u64),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingletonReport {
    pub mds: bool,
    /// `(n − d_P + 2) − k`; zero exactly for MDS symbol-pair codes.
    pub defect: i64,
}

/// Compares `q^k` with the symbol-pair Singleton bound `q^{n − d_P + 2}`.
pub fn singleton_check(code: &ConstacyclicCode, d_p: usize) -> SingletonReport {
    let defect = code.n() as i64 - d_p as i64 + 2 - code.k() as i64;
    SingletonReport {
        mds: defect == 0,
        defect,
    }
}

/// Checks `d_P ≥ d_H + 2 ⇔ k < n − d_H + 1` for exact certificates.
pub fn chen_relation(
    code: &ConstacyclicCode,
    d_h: &DistanceCertificate,
    d_p: &DistanceCertificate,
) -> Result<bool> {
    if d_h.kind != DistanceKind::Hamming || d_p.kind != DistanceKind::Pair {
        return Err(Error::InvalidArgument("expected a Hamming and a pair certificate".into()));
    }
    if !d_h.exact || !d_p.exact {
        return Err(Error::InvalidArgument("both certificates must be exact".into()));
    }
    let (n, k) = (code.n(), code.k());
    if d_h.value < 2 || d_h.value > n {
        return Err(Error::InvalidArgument(format!(
            "relation needs 2 ≤ d_H ≤ n, got {}",
            d_h.value
        )));
    }
    let far = d_p.value >= d_h.value + 2;
    let not_mds = k < n - d_h.value + 1;
    Ok(far == not_mds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Tower;
    use crate::fpoly::Poly;
    use std::sync::Arc;

    fn cyclic(q: u64, n: usize, exps: &[u64]) -> ConstacyclicCode {
        let t = Arc::new(Tower::new(q).unwrap());
        let alpha = crate::cycstruct::root_base(&t, n as u64, Fe::ONE).unwrap().unwrap();
        let big = t.big();
        let roots: Vec<Fe> = exps.iter().map(|&e| big.pow(alpha, e)).collect();
        let g = Poly::from_roots(big.clone(), &roots).coerce(&t).unwrap();
        ConstacyclicCode::new(t, n, Fe::ONE, g).unwrap()
    }

    fn brute_min(code: &ConstacyclicCode) -> (usize, usize) {
        let e = enumerate_codewords(code, Exec::Sequential).unwrap();
        (e.hamming.unwrap().0, e.pair.unwrap().0)
    }

    #[test]
    fn reed_solomon_is_mds() {
        // roots α^1..α^4 in GF(9)*, n = 8: an [8, 4, 5] Reed–Solomon code
        let t = Arc::new(Tower::new(9).unwrap());
        let f = t.small().clone();
        let alpha = f.nth_root_of_unity(8).unwrap();
        let g = Poly::from_roots(f.clone(), &(1..=4).map(|e| f.pow(alpha, e)).collect::<Vec<_>>());
        let rs = ConstacyclicCode::new(t, 8, Fe::ONE, g).unwrap();
        let opts = SearchOptions::default();
        let h = min_hamming(&rs, 8, &opts.clone().with_engine(Engine::SupportRank)).unwrap();
        assert_eq!(h.value, 5);
        assert!(h.verify(&rs).unwrap());
        let p = min_pair(&rs, 8, &opts.clone().with_engine(Engine::SupportRank)).unwrap();
        let full = min_pair(&rs, 8, &opts.with_engine(Engine::FullEnumeration)).unwrap();
        assert_eq!(p.value, full.value);
        assert!(p.verify(&rs).unwrap() && full.verify(&rs).unwrap());
    }

    #[test]
    fn engines_agree_on_small_codes() {
        for (q, n, exps) in [
            (3u64, 8usize, vec![0u64, 1, 3]),
            (5, 12, vec![0, 1, 5]),
            (5, 12, vec![2, 10, 6]),
            (5, 6, vec![1, 5]),
            (7, 8, vec![0, 4, 1, 7]),
        ] {
            let code = cyclic(q, n, &exps);
            let (h, p) = brute_min(&code);
            let opts = SearchOptions::default().with_engine(Engine::SupportRank);
            for exec in [Exec::Sequential, Exec::Parallel] {
                let o = opts.clone().with_exec(exec);
                assert_eq!(min_hamming(&code, n, &o).unwrap().value, h, "q={q} n={n}");
                assert_eq!(min_pair(&code, n, &o).unwrap().value, p, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn bounded_search_reports_lower_bound() {
        let code = cyclic(5, 12, &[0, 1, 5, 2, 10]);
        let opts = SearchOptions::default().with_engine(Engine::SupportRank);
        let c = min_hamming(&code, 2, &opts).unwrap();
        assert!(!c.exact);
        assert_eq!(c.value, 3);
        assert!(c.witness.is_empty());
    }

    #[test]
    fn sequential_and_parallel_certificates_match() {
        let code = cyclic(5, 24, &[0, 12, 1, 5, 6]);
        let a = min_pair(&code, 8, &SearchOptions::default().with_exec(Exec::Sequential)).unwrap();
        let b = min_pair(&code, 8, &SearchOptions::default().with_exec(Exec::Parallel)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value, 7);
    }

    #[test]
    fn budget_is_enforced() {
        let code = cyclic(5, 24, &[0, 12, 1, 5, 6]);
        let opts = SearchOptions {
            max_patterns: 10,
            ..SearchOptions::default()
        };
        assert!(matches!(min_pair(&code, 8, &opts), Err(Error::BudgetExceeded(_))));
        let opts = SearchOptions::default().with_engine(Engine::FullEnumeration);
        assert!(matches!(min_hamming(&code, 4, &opts), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn singleton_and_relation() {
        let t = Arc::new(Tower::new(5).unwrap());
        let full = ConstacyclicCode::full_space(t, 6, Fe::ONE).unwrap();
        let r = singleton_check(&full, 2);
        assert!(r.mds);
        assert_eq!(r.defect, 0);
    }
}
