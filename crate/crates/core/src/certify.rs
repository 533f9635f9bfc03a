//! End-to-end family certification and pattern exclusion sweeps.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cycstruct::{bch_bound, bch_bound_strict, hartmann_tzeng_bound, DefiningSet};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::families::{build, FamilyId};
use crate::ffield::Fe;
use crate::linalg::{rank, Matrix};
use crate::spcode::support::by_pair_weight;
use crate::spcode::{
    chen_relation, min_hamming, min_pair, singleton_check, ConstacyclicCode, DistanceCertificate,
    SearchOptions, SingletonReport, SupportPattern, SupportRank,
};

/// All canonical supports of one pair weight on `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeClass {
    pub n: usize,
    pub pw: usize,
    pub shapes: Vec<SupportPattern>,
}

pub fn enumerate_shapes(n: usize, pw: usize) -> Result<ShapeClass> {
    if pw < 2 || pw > n {
        return Err(Error::InvalidArgument(format!(
            "pair weight {pw} outside [2, {n}]"
        )));
    }
    Ok(ShapeClass {
        n,
        pw,
        shapes: by_pair_weight(n, pw),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionReport {
    pub pattern: SupportPattern,
    /// Some codeword is nonzero at every position of the pattern and zero
    /// elsewhere.
    pub admissible: bool,
    pub fully_nonzero_witness: Option<Vec<Fe>>,
    /// Dimension of the codewords supported inside the pattern.
    pub null_dim: usize,
    /// Number of such fully nonzero codewords.
    pub fully_nonzero_count: u128,
}

/// Null spaces up to this many vectors are walked directly; larger ones are
/// counted by inclusion–exclusion over the coordinate hyperplanes.
const DIRECT_WALK_LIMIT: u128 = 1 << 16;

pub fn exclude_pattern(code: &ConstacyclicCode, pattern: &SupportPattern) -> Result<ExclusionReport> {
    let oracle = SupportRank::new(code)?;
    exclude_with(&oracle, code, pattern)
}

fn exclude_with(
    oracle: &SupportRank<'_>,
    code: &ConstacyclicCode,
    pattern: &SupportPattern,
) -> Result<ExclusionReport> {
    if pattern.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: pattern.n(),
        });
    }
    let s = pattern.positions();
    let empty = |null_dim| ExclusionReport {
        pattern: pattern.clone(),
        admissible: false,
        fully_nonzero_witness: None,
        null_dim,
        fully_nonzero_count: 0,
    };
    if s.is_empty() || !oracle.admissible(s) {
        return Ok(empty(0));
    }
    let basis = oracle.null_space(s)?;
    let d = basis.len();
    let f = code.field();
    let q = f.order() as u128;
    let total = q.checked_pow(d as u32).unwrap_or(u128::MAX);
    if total <= DIRECT_WALK_LIMIT {
        let symbols: Vec<Fe> = f.elements().collect();
        let mut witness = None;
        let mut count = 0u128;
        for idx in 0..total {
            let mut v = vec![Fe::ZERO; s.len()];
            let mut rest = idx;
            for b in &basis {
                let c = symbols[(rest % q) as usize];
                rest /= q;
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            if v.iter().all(|x| !x.is_zero()) {
                count += 1;
                if witness.is_none() {
                    witness = Some(oracle.expand(s, &v));
                }
            }
        }
        return Ok(ExclusionReport {
            pattern: pattern.clone(),
            admissible: count > 0,
            fully_nonzero_witness: witness,
            null_dim: d,
            fully_nonzero_count: count,
        });
    }
    let count = fully_nonzero_count(code, &basis, s.len())?;
    Ok(ExclusionReport {
        pattern: pattern.clone(),
        admissible: count > 0,
        fully_nonzero_witness: None,
        null_dim: d,
        fully_nonzero_count: count,
    })
}

/// `Σ_J (−1)^{|J|} q^{dim(N ∩ {x_J = 0})}` over all coordinate subsets `J`.
fn fully_nonzero_count(code: &ConstacyclicCode, basis: &[Vec<Fe>], width: usize) -> Result<u128> {
    if width > 24 {
        return Err(Error::BudgetExceeded(format!(
            "inclusion–exclusion over {width} coordinates"
        )));
    }
    let f = code.field();
    let q = f.order() as i128;
    let d = basis.len();
    let mut sum: i128 = 0;
    for mask in 0u32..(1 << width) {
        let cols: Vec<usize> = (0..width).filter(|&j| mask >> j & 1 == 1).collect();
        let r = if cols.is_empty() {
            0
        } else {
            let rows: Vec<Vec<Fe>> = basis
                .iter()
                .map(|b| cols.iter().map(|&j| b[j]).collect())
                .collect();
            rank(f, &Matrix::from_rows(&rows))
        };
        let term = q.pow((d - r) as u32);
        if cols.len() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    u128::try_from(sum).map_err(|_| Error::Invariant("negative inclusion–exclusion count".into()))
}

/// A run-length template `(⋆^{a₁}, 0_{r₁}, ⋆^{a₂}, 0_{r₂}, …)` where every
/// gap ranges over all positive lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternForm {
    pub runs: Vec<usize>,
}

impl PatternForm {
    pub fn new(runs: Vec<usize>) -> PatternForm {
        PatternForm { runs }
    }

    pub fn pair_weight(&self) -> usize {
        self.runs.iter().sum::<usize>() + self.runs.len()
    }

    /// Every placement on `Z_n` with the first run at position 0.
    pub fn instances(&self, n: usize) -> Vec<SupportPattern> {
        let stars: usize = self.runs.iter().sum();
        let parts = self.runs.len();
        if parts == 0 || stars + parts > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut gaps = vec![1usize; parts];
        // gaps[parts − 1] takes the remainder
        let free = n - stars - parts;
        fn rec(
            form: &PatternForm,
            n: usize,
            i: usize,
            left: usize,
            gaps: &mut Vec<usize>,
            out: &mut Vec<SupportPattern>,
        ) {
            let parts = gaps.len();
            if i == parts - 1 {
                gaps[i] = 1 + left;
                let mut pos = Vec::new();
                let mut at = 0;
                for (len, g) in form.runs.iter().zip(gaps.iter()) {
                    pos.extend(at..at + len);
                    at += len + g;
                }
                out.push(SupportPattern::new(n, pos).expect("positions in range"));
                return;
            }
            for extra in 0..=left {
                gaps[i] = 1 + extra;
                rec(form, n, i + 1, left - extra, gaps, out);
            }
        }
        rec(self, n, 0, free, &mut gaps, &mut out);
        out
    }
}

impl fmt::Display for PatternForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["r", "s", "t", "u"];
        let mut parts = Vec::new();
        for (i, &len) in self.runs.iter().enumerate() {
            parts.extend(std::iter::repeat_n("*".to_string(), len));
            if i + 1 == self.runs.len() {
                parts.push("0_rest".into());
            } else {
                parts.push(format!("0_{}", NAMES.get(i).copied().unwrap_or("g")));
            }
        }
        write!(f, "({})", parts.join(","))
    }
}

/// Whether every instance of every form has its canonical rotation among
/// `class.shapes`.
pub fn forms_contained(class: &ShapeClass, forms: &[PatternForm]) -> bool {
    let set: BTreeSet<&SupportPattern> = class.shapes.iter().collect();
    forms.iter().all(|form| {
        form.pair_weight() == class.pw
            && form
                .instances(class.n)
                .iter()
                .all(|s| set.contains(&s.canonical()))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub pw: usize,
    pub shapes: usize,
    pub excluded: usize,
    pub all_excluded: bool,
    /// Admissible shapes, in sorted order.
    pub counterexamples: Vec<ExclusionReport>,
    pub forms: Vec<String>,
    pub forms_contained: bool,
    pub digest: String,
}

/// Runs [`exclude_pattern`] on every shape of pair weight `pw`.
pub fn sweep(
    code: &ConstacyclicCode,
    pw: usize,
    forms: &[PatternForm],
    exec: Exec,
) -> Result<SweepReport> {
    let class = enumerate_shapes(code.n(), pw)?;
    let oracle = SupportRank::new(code)?;
    let reports = exec.map(&class.shapes, |s| exclude_with(&oracle, code, s));
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let mut h = Sha256::new();
    for r in &reports {
        h.update((r.pattern.len() as u32).to_le_bytes());
        for &p in r.pattern.positions() {
            h.update((p as u32).to_le_bytes());
        }
        h.update([u8::from(r.admissible)]);
    }
    let counterexamples: Vec<ExclusionReport> =
        reports.into_iter().filter(|r| r.admissible).collect();
    Ok(SweepReport {
        pw,
        shapes: class.shapes.len(),
        excluded: class.shapes.len() - counterexamples.len(),
        all_excluded: counterexamples.is_empty(),
        counterexamples,
        forms: forms.iter().map(ToString::to_string).collect(),
        forms_contained: forms_contained(&class, forms),
        digest: hex::encode(h.finalize()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    MdsConfirmed,
    Discrepancy,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::MdsConfirmed => 0,
            Status::Discrepancy => 3,
            Status::BudgetExceeded => 4,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::MdsConfirmed => "MDS_CONFIRMED",
            Status::Discrepancy => "DISCREPANCY",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Window anchored at the first exponent only.
    pub bch: usize,
    /// Longest run over all cyclic windows.
    pub shifted_bch: usize,
    pub hartmann_tzeng: Option<usize>,
    /// `bch ≤ shifted_bch ≤ hartmann_tzeng ≤ d_H`, when `d_H` is exact.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub family: FamilyId,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Fe>,
    pub defining_set: Option<DefiningSet>,
    #[serde(rename = "claimed_d_H")]
    pub claimed_d_h: Option<usize>,
    #[serde(rename = "claimed_d_P")]
    pub claimed_d_p: usize,
    #[serde(rename = "d_H")]
    pub d_h: Option<DistanceCertificate>,
    #[serde(rename = "d_P")]
    pub d_p: Option<DistanceCertificate>,
    pub bounds: Bounds,
    /// `d_P ≥ d_H + 2` exactly when the code is not MDS in the Hamming sense.
    #[serde(rename = "lemma3_ok")]
    pub relation_ok: Option<bool>,
    pub shapes_swept: Option<SweepReport>,
    pub singleton: Option<SingletonReport>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl FamilyCertificate {
    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub search: SearchOptions,
    /// Defaults to `claimed d_P − 1`.
    pub w_max: Option<usize>,
    /// Defaults to `claimed d_P`.
    pub pw_max: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            search: SearchOptions::default(),
            w_max: None,
            pw_max: None,
            time_limit: Some(Duration::from_secs(600)),
        }
    }
}

fn or_budget<T>(r: Result<T>, notes: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded(msg)) => {
            notes.push(format!("budget exceeded: {msg}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Builds the family code, certifies both distances and checks them
/// against the claimed parameters.
pub fn certify_family(id: FamilyId, q: u64, opts: &CertifyOptions) -> Result<FamilyCertificate> {
    let start = Instant::now();
    let code = build(id, q)?;
    certify_code(id, &code, &id.spec().excluded_forms(), opts, start)
}

fn certify_code(
    id: FamilyId,
    code: &ConstacyclicCode,
    forms: &[Vec<usize>],
    opts: &CertifyOptions,
    start: Instant,
) -> Result<FamilyCertificate> {
    let spec = id.spec();
    let q = code.q();
    let claimed_dp = spec.claimed_dp();
    let claimed_dh = spec.claimed_dh(q);
    let n = code.n();
    let mut notes = Vec::new();
    let timed_out = |notes: &mut Vec<String>| {
        let over = opts.time_limit.is_some_and(|l| start.elapsed() > l);
        if over {
            notes.push("time limit reached".into());
        }
        over
    };

    let t = code.defining_set().ok_or(Error::MissingRootBase)?;
    let mut bounds = Bounds {
        bch: bch_bound_strict(t),
        shifted_bch: bch_bound(t),
        hartmann_tzeng: if t.r == 1 {
            Some(hartmann_tzeng_bound(t, opts.search.exec)?)
        } else {
            None
        },
        consistent: None,
    };

    let w_max = opts.w_max.unwrap_or(claimed_dp - 1);
    let d_h = or_budget(min_hamming(code, w_max, &opts.search), &mut notes)?;
    let mut budget = d_h.as_ref().is_none_or(|c| !c.exact);
    if let Some(c) = &d_h {
        let ht = bounds.hartmann_tzeng.unwrap_or(bounds.shifted_bch);
        bounds.consistent = c.exact.then_some({
            bounds.bch <= bounds.shifted_bch && bounds.shifted_bch <= ht && ht <= c.value
        });
    }

    let mut shapes_swept = None;
    if !budget && !timed_out(&mut notes) && claimed_dp - 1 <= n {
        let forms: Vec<PatternForm> = forms.iter().cloned().map(PatternForm::new).collect();
        shapes_swept = or_budget(
            sweep(code, claimed_dp - 1, &forms, opts.search.exec),
            &mut notes,
        )?;
        budget |= shapes_swept.is_none();
    }

    let mut d_p = None;
    if !budget && !timed_out(&mut notes) {
        let pw_max = opts.pw_max.unwrap_or(claimed_dp);
        d_p = or_budget(min_pair(code, pw_max, &opts.search), &mut notes)?;
        budget |= d_p.as_ref().is_none_or(|c| !c.exact);
    }
    budget |= timed_out(&mut notes);

    let relation_ok = match (&d_h, &d_p) {
        (Some(h), Some(p)) if h.exact && p.exact && (2..=n).contains(&h.value) => {
            Some(chen_relation(code, h, p)?)
        }
        _ => None,
    };
    let singleton = d_p
        .as_ref()
        .filter(|c| c.exact)
        .map(|c| singleton_check(code, c.value));

    let status = if budget {
        Status::BudgetExceeded
    } else {
        let dh = d_h.as_ref().expect("present unless over budget");
        let dp = d_p.as_ref().expect("present unless over budget");
        let mut ok = true;
        if let Some(want) = claimed_dh {
            if dh.value != want {
                notes.push(format!("computed d_H = {} but {want} is claimed", dh.value));
                ok = false;
            }
        }
        if dp.value != claimed_dp {
            notes.push(format!("computed d_P = {} but {claimed_dp} is claimed", dp.value));
            if claimed_dp > n {
                notes.push(format!("pair weight never exceeds the length {n}"));
            }
            ok = false;
        }
        if !singleton.is_some_and(|s| s.mds) {
            notes.push("Singleton-type bound not met with equality".into());
            ok = false;
        }
        if relation_ok != Some(true) {
            notes.push("pair/Hamming relation check failed or not applicable".into());
            ok = ok && relation_ok.is_some();
        }
        if let Some(sw) = &shapes_swept {
            if !sw.all_excluded {
                notes.push(format!(
                    "{} shapes of pair weight {} carry a codeword",
                    sw.counterexamples.len(),
                    sw.pw
                ));
                ok = false;
            }
            if !sw.forms_contained {
                notes.push("a listed pattern form is missing from the shape class".into());
                ok = false;
            }
        }
        if bounds.consistent == Some(false) {
            notes.push("lower bounds exceed the computed d_H".into());
            ok = false;
        }
        if ok {
            Status::MdsConfirmed
        } else {
            Status::Discrepancy
        }
    };

    Ok(FamilyCertificate {
        family: id,
        q,
        n,
        k: code.k(),
        generator: code.generator().coeffs().to_vec(),
        defining_set: code.defining_set().cloned(),
        claimed_d_h: claimed_dh,
        claimed_d_p: claimed_dp,
        d_h,
        d_p,
        bounds,
        relation_ok,
        shapes_swept,
        singleton,
        status,
        notes,
    })
}
