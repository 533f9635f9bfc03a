//! Acceptance gate. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; the process exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use sympair::certify::{certify_family, CertifyOptions, FamilyCertificate, Status};
use sympair::cycstruct::{bch_bound, hartmann_tzeng_bound};
use sympair::decomp::{
    decompose, default_xi, dual_generator_by_division, dual_generator_by_recurrence,
    negacyclic_dual_generator,
};
use sympair::exec::Exec;
use sympair::families::{build, subcode_check, FamilyId};
use sympair::ffield::{Fe, Tower};
use sympair::spcode::{
    enumerate_codewords, min_hamming, min_pair, pair_weight, pair_weight_of_support, pi_expand,
    support, Engine, SearchOptions,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn seq() -> CertifyOptions {
    let mut o = CertifyOptions::default();
    o.search = o.search.with_exec(Exec::Sequential);
    o
}

fn cert(id: FamilyId, q: u64) -> Result<FamilyCertificate, String> {
    certify_family(id, q, &seq()).map_err(|e| format!("{id} q={q}: {e}"))
}

fn values(c: &FamilyCertificate) -> (Option<usize>, Option<usize>, bool) {
    let h = c.d_h.as_ref();
    let p = c.d_p.as_ref();
    let exact = h.is_some_and(|d| d.exact) && p.is_some_and(|d| d.exact);
    (h.map(|d| d.value), p.map(|d| d.value), exact)
}

fn expect(
    id: FamilyId,
    q: u64,
    nk: (usize, usize),
    dh: usize,
    dp: usize,
    status: Status,
    budget_ms: u128,
) -> Outcome {
    let t = Instant::now();
    let c = cert(id, q)?;
    let ms = t.elapsed().as_millis();
    let (h, p, exact) = values(&c);
    check(
        (c.n, c.k) == nk && h == Some(dh) && p == Some(dp) && exact && c.status == status,
        format!(
            "{id} q={q}: got (n,k,d_H,d_P)=({},{},{h:?},{p:?}) exact={exact} status={}",
            c.n, c.k, c.status
        ),
    )?;
    check(ms <= budget_ms, format!("{id} q={q} took {ms} ms"))?;
    Ok(format!("{id} q={q} ({},{},{dh},{dp}) {} in {ms} ms", c.n, c.k, c.status))
}

fn join(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn criterion1() -> Outcome {
    join(
        [(5u64, 5_000u128), (9, 60_000), (13, 60_000)]
            .into_iter()
            .map(|(q, ms)| {
                let n = 4 * q as usize;
                expect(FamilyId::Dp7, q, (n + 4, n - 1), 4, 7, Status::MdsConfirmed, ms)
            })
            .collect(),
    )
}

fn criterion2() -> Outcome {
    join(vec![
        expect(FamilyId::Dp8, 3, (8, 2), 6, 8, Status::MdsConfirmed, 90_000),
        expect(FamilyId::Dp8, 7, (24, 18), 4, 8, Status::MdsConfirmed, 90_000),
        expect(FamilyId::Dp8, 11, (40, 34), 4, 8, Status::MdsConfirmed, 90_000),
    ])
}

fn criterion3() -> Outcome {
    let mut parts: Vec<Outcome> = [5u64, 7, 9]
        .into_iter()
        .map(|q| {
            let n = 2 * q as usize;
            expect(FamilyId::Dp9, q, (n + 2, n - 5), 6, 9, Status::MdsConfirmed, 30_000)
        })
        .collect();
    parts.push(
        cert(FamilyId::Dp9, 3).and_then(|c| {
            let (_, p, _) = values(&c);
            check(
                c.status == Status::Discrepancy && p == Some(8) && c.claimed_d_p == 9,
                format!("dp9 q=3: status={} d_P={p:?}", c.status),
            )?;
            Ok("dp9 q=3 DISCREPANCY with d_P=8".to_string())
        }),
    );
    join(parts)
}

fn instances() -> Vec<(FamilyId, u64)> {
    let mut v = Vec::new();
    for q in [5, 9, 13] {
        v.push((FamilyId::Dp7, q));
    }
    for q in [3, 7, 11] {
        v.push((FamilyId::Dp8, q));
    }
    for q in [3, 5, 7, 9] {
        v.push((FamilyId::Dp9, q));
    }
    v
}

fn criterion4() -> Outcome {
    let mut done = Vec::new();
    for (id, q) in instances() {
        let code = build(id, q).map_err(|e| e.to_string())?;
        if (q as f64).powi(code.k() as i32) > (1u64 << 18) as f64 {
            continue;
        }
        let n = code.n();
        let mut got = Vec::new();
        for engine in [Engine::SupportRank, Engine::FullEnumeration] {
            let o = SearchOptions::default().with_engine(engine).with_exec(Exec::Sequential);
            let h = min_hamming(&code, n, &o).map_err(|e| e.to_string())?;
            let p = min_pair(&code, n, &o).map_err(|e| e.to_string())?;
            check(h.exact && p.exact, format!("{id} q={q}: inexact with {engine:?}"))?;
            got.push((h.value, p.value));
        }
        let e = enumerate_codewords(&code, Exec::Sequential).map_err(|e| e.to_string())?;
        let direct = (e.hamming.map(|x| x.0), e.pair.map(|x| x.0));
        check(
            got[0] == got[1] && direct == (Some(got[0].0), Some(got[0].1)),
            format!("{id} q={q}: engines disagree {got:?} vs {direct:?}"),
        )?;
        done.push(format!("{id} q={q} (d_H,d_P)={:?}", got[0]));
    }
    check(done.len() >= 3, "fewer than three small instances")?;
    Ok(done.join("; "))
}

fn criterion5() -> Outcome {
    let mut parts = Vec::new();
    for q in [7u64, 11] {
        let c = cert(FamilyId::KaiDp7, q)?;
        let (_, p, exact) = values(&c);
        check(p == Some(7) && exact, format!("kai_dp7 q={q}: d_P={p:?}"))?;
        let sub = subcode_check(q).map_err(|e| e.to_string())?;
        check(sub, format!("q={q}: dp8 is not a subcode of kai_dp7"))?;
        parts.push(format!("kai_dp7 q={q} d_P=7, dp8 ⊂ kai_dp7"));
    }
    Ok(parts.join("; "))
}

fn criterion6() -> Outcome {
    for q in [5u64, 7, 9, 11, 13] {
        let tower = std::sync::Arc::new(Tower::new(q).map_err(|e| e.to_string())?);
        let xi = default_xi(&tower).map_err(|e| e.to_string())?;
        let closed = negacyclic_dual_generator(&tower, xi).map_err(|e| e.to_string())?;
        let rec = dual_generator_by_recurrence(&tower, xi).map_err(|e| e.to_string())?;
        let div = dual_generator_by_division(&tower, xi).map_err(|e| e.to_string())?;
        check(closed == rec && rec == div, format!("q={q}: constructions differ"))?;
        let parent = sympair::families::build_with_root(FamilyId::Dp9, tower.clone(), xi)
            .map_err(|e| e.to_string())?;
        let pair = decompose(&parent).map_err(|e| e.to_string())?;
        let dual = pair.c2.dual().map_err(|e| e.to_string())?;
        check(
            dual.generator() == &closed.monic(),
            format!("q={q}: b(x) is not the dual generator of the negacyclic part"),
        )?;
    }
    Ok("q ∈ {5,7,9,11,13}: three constructions agree and match the dual generator".into())
}

fn criterion7() -> Outcome {
    let mut parts = Vec::new();
    for (id, q) in instances() {
        if (id, q) == (FamilyId::Dp9, 3) {
            continue;
        }
        let c = cert(id, q)?;
        let s = c
            .shapes_swept
            .as_ref()
            .ok_or_else(|| format!("{id} q={q}: no sweep"))?;
        check(
            s.pw == c.claimed_d_p - 1 && s.all_excluded && s.forms_contained,
            format!(
                "{id} q={q}: pw={} excluded {}/{} forms_contained={}",
                s.pw, s.excluded, s.shapes, s.forms_contained
            ),
        )?;
        parts.push(format!("{id} q={q} {}/{}", s.excluded, s.shapes));
    }
    Ok(parts.join("; "))
}

fn criterion8() -> Outcome {
    let mut all = instances();
    all.extend([(FamilyId::KaiDp7, 7), (FamilyId::KaiDp7, 11)]);
    for (id, q) in all {
        let c = cert(id, q)?;
        let t = c
            .defining_set
            .as_ref()
            .ok_or_else(|| format!("{id} q={q}: no defining set"))?;
        let bch = bch_bound(t);
        let ht = hartmann_tzeng_bound(t, Exec::Sequential).map_err(|e| e.to_string())?;
        let (h, _, _) = values(&c);
        let h = h.ok_or_else(|| format!("{id} q={q}: d_H missing"))?;
        check(
            bch <= ht && ht <= h,
            format!("{id} q={q}: bch={bch} ht={ht} d_H={h}"),
        )?;
        check(c.relation_ok == Some(true), format!("{id} q={q}: relation failed"))?;
    }
    Ok("bch ≤ HT ≤ d_H and the MDS relation hold on all certified codes".into())
}

fn criterion9() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for n in [2usize, 3, 8, 12, 20, 24, 40, 52] {
        for _ in 0..10_000 {
            let c: Vec<Fe> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { Fe::ZERO } else { Fe::ONE })
                .collect();
            let s = support(&c);
            let pw = pair_weight(&c);
            check(pw == pair_weight_of_support(n, &s), format!("n={n}: formula"))?;
            let mut r = c.clone();
            r.rotate_left(rng.gen_range(0..n));
            check(pair_weight(&r) == pw, format!("n={n}: shift invariance"))?;
            let pi = pi_expand(&c).map_err(|e| e.to_string())?;
            check(pi.len() == n, format!("n={n}: π length"))?;
            for (i, &(a, b)) in pi.iter().enumerate() {
                check(a == c[i] && b == c[(i + 1) % n], format!("n={n}: π adjacency"))?;
            }
        }
    }
    let mut all = instances();
    all.extend([(FamilyId::KaiDp7, 7), (FamilyId::KaiDp7, 11)]);
    for (id, q) in all {
        let c = cert(id, q)?;
        let (h, p, _) = values(&c);
        let (h, p) = (h.unwrap(), p.unwrap());
        // A full-support minimum word has pair weight n = d_H.
        let lower = if h == c.n { h } else { h + 1 };
        check(
            lower <= p && p <= 2 * h,
            format!("{id} q={q}: d_H={h} d_P={p}"),
        )?;
    }
    Ok("10^4 random words per length; d_H+1 ≤ d_P ≤ 2d_H on certified codes".into())
}

fn criterion10() -> Outcome {
    for (id, q) in [(FamilyId::Dp7, 5), (FamilyId::Dp8, 7), (FamilyId::Dp9, 5), (FamilyId::Dp9, 3)] {
        let a = cert(id, q)?.to_json();
        let b = cert(id, q)?.to_json();
        check(a == b, format!("{id} q={q}: repeated runs differ"))?;
        let par = certify_family(id, q, &CertifyOptions::default())
            .map_err(|e| e.to_string())?
            .to_json();
        check(a == par, format!("{id} q={q}: parallel run differs"))?;
    }
    Ok("certificates byte-identical across repeated and parallel runs".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    let mut failed = 0;
    for (i, f) in criteria {
        match f() {
            Ok(msg) => println!("criterion {i}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i}: FAIL {msg}");
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
