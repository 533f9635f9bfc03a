use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sympair::certify::{certify_family, CertifyOptions, FamilyCertificate, Status};
use sympair::cycstruct::{
    bch_bound, bch_bound_strict, generator_from_defining_set, hartmann_tzeng_bound, root_base,
    shift_order, DefiningSet,
};
use sympair::decomp::{
    default_xi, dual_generator_by_division, dual_generator_by_recurrence,
    negacyclic_dual_generator,
};
use sympair::exec::{init_workers, Exec};
use sympair::families::{build, root_choice_stability, subcode_check, FamilyId};
use sympair::ffield::{Fe, Tower};
use sympair::fpoly::Poly;
use sympair::spcode::{min_hamming, min_pair, ConstacyclicCode, Engine, SearchOptions};

#[derive(Parser)]
#[command(name = "sympair", version, about = "Build and certify MDS symbol-pair cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Rank,
    Full,
}

#[derive(clap::Args)]
struct Common {
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters and generator of a family code.
    Construct {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Certify both distances of a family code against its claims.
    Certify {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        pw_max: Option<usize>,
        #[arg(long)]
        w_max: Option<usize>,
        /// Record wall-clock times (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Exact distances of an arbitrary constacyclic code.
    Distance {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Index of the shift constant in GF(q).
        #[arg(long, default_value_t = 1)]
        lambda: u64,
        /// Generator coefficients as element indices, lowest degree first.
        #[arg(long, value_delimiter = ',', conflicts_with = "defining_set")]
        generator: Option<Vec<u32>>,
        /// Defining set exponents relative to the canonical root base.
        #[arg(long, value_delimiter = ',')]
        defining_set: Option<Vec<u64>>,
        /// Also compute the pair distance.
        #[arg(long)]
        pair: bool,
        #[arg(long)]
        w_max: Option<usize>,
        #[arg(long)]
        pw_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        #[command(flatten)]
        common: Common,
    },
    /// Certify every admissible family at each q and tabulate.
    Table {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        q: Vec<u64>,
        /// Restrict to these families.
        #[arg(long, value_delimiter = ',')]
        family: Vec<FamilyId>,
        #[command(flatten)]
        common: Common,
    },
    /// Distances of a family code for every choice of primitive root.
    Stability {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Check that the d_P = 8 code is a subcode of the d_P = 7 reference.
    Subcode {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// The three computations of the negacyclic dual generator.
    DualGenerator {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(common: &Common, json: &Value, text: &str) -> Result<()> {
    let body = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json)?;
            s.push('\n');
            s
        }
        Format::Text => text.to_string(),
    };
    match &common.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn setup(common: &Common) -> Exec {
    init_workers(common.workers);
    Exec::from_workers(common.workers)
}

fn indices(v: &[Fe]) -> Vec<u32> {
    v.iter().map(|x| x.index()).collect()
}

fn construct(family: FamilyId, q: u64, common: &Common) -> Result<()> {
    let code = build(family, q)?;
    let spec = family.spec();
    let t = code.defining_set().map(|d| d.exponents.clone()).unwrap_or_default();
    let json = json!({
        "family": family.name(),
        "q": q,
        "n": code.n(),
        "k": code.k(),
        "generator": indices(code.generator().coeffs()),
        "defining_set": t,
        "claimed_d_P": spec.claimed_dp(),
        "claimed_d_H": spec.claimed_dh(q),
    });
    let text = format!(
        "{family} q={q}\nn = {}\nk = {}\ng(x) = {}\nT = {:?}\n",
        code.n(),
        code.k(),
        code.generator(),
        t
    );
    emit(common, &json, &text)
}

fn certificate_text(c: &FamilyCertificate) -> String {
    let val = |d: &Option<sympair::spcode::DistanceCertificate>| {
        d.as_ref()
            .map_or("-".to_string(), |d| if d.exact { d.value.to_string() } else { format!(">{}", d.search_bound) })
    };
    let mut s = format!(
        "{} q={} n={} k={} d_H={} d_P={} status={}\n",
        c.family,
        c.q,
        c.n,
        c.k,
        val(&c.d_h),
        val(&c.d_p),
        c.status
    );
    for note in &c.notes {
        s.push_str(&format!("note: {note}\n"));
    }
    s
}

fn certify(
    family: FamilyId,
    q: u64,
    w_max: Option<usize>,
    pw_max: Option<usize>,
    timings: bool,
    common: &Common,
) -> Result<Status> {
    let exec = setup(common);
    let opts = CertifyOptions {
        search: SearchOptions {
            exec,
            record_time: timings,
            ..SearchOptions::default()
        },
        w_max,
        pw_max,
        ..CertifyOptions::default()
    };
    let cert = certify_family(family, q, &opts)?;
    let json = serde_json::to_value(&cert)?;
    emit(common, &json, &certificate_text(&cert))?;
    Ok(cert.status)
}

#[allow(clippy::too_many_arguments)]
fn distance(
    q: u64,
    n: usize,
    lambda: u64,
    generator: Option<Vec<u32>>,
    defining_set: Option<Vec<u64>>,
    pair: bool,
    w_max: Option<usize>,
    pw_max: Option<usize>,
    engine: EngineArg,
    common: &Common,
) -> Result<()> {
    let exec = setup(common);
    let tower = Arc::new(Tower::new(q)?);
    let f = tower.small().clone();
    let lambda = f.elem(lambda)?;
    let code = match (generator, defining_set) {
        (Some(g), _) => {
            let g = Poly::from_indices(f.clone(), &g)?;
            ConstacyclicCode::new(tower.clone(), n, lambda, g)?
        }
        (None, Some(t)) => {
            let alpha = root_base(&tower, n as u64, lambda)?
                .context("no root base: r·n does not divide q² − 1")?;
            let r = shift_order(&tower, lambda)?;
            let t = DefiningSet::new(n as u64, r, t)?;
            let g = generator_from_defining_set(&tower, alpha, &t)?;
            ConstacyclicCode::with_root(tower.clone(), n, lambda, g, alpha)?
        }
        (None, None) => bail!("give --generator or --defining-set"),
    };
    if code.k() == 0 {
        bail!("the code is zero-dimensional");
    }
    let opts = SearchOptions {
        exec,
        engine: match engine {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Rank => Engine::SupportRank,
            EngineArg::Full => Engine::FullEnumeration,
        },
        ..SearchOptions::default()
    };
    let h = min_hamming(&code, w_max.unwrap_or(n), &opts)?;
    let p = if pair {
        Some(min_pair(&code, pw_max.unwrap_or(n), &opts)?)
    } else {
        None
    };
    let (bch, shifted, ht) = match code.defining_set() {
        Some(t) => (
            Some(bch_bound_strict(t)),
            Some(bch_bound(t)),
            if t.r == 1 { Some(hartmann_tzeng_bound(t, exec)?) } else { None },
        ),
        None => (None, None, None),
    };
    let json = json!({
        "q": q,
        "n": n,
        "k": code.k(),
        "lambda": lambda.index(),
        "generator": indices(code.generator().coeffs()),
        "defining_set": code.defining_set(),
        "d_H": h,
        "d_P": p,
        "bounds": { "bch": bch, "shifted_bch": shifted, "hartmann_tzeng": ht },
    });
    let mut text = format!(
        "[{n}, {}] over GF({q}), λ = {}\ng(x) = {}\nd_H = {}{}\n",
        code.k(),
        lambda,
        code.generator(),
        if h.exact { "" } else { ">" },
        if h.exact { h.value } else { h.search_bound }
    );
    if let Some(p) = &p {
        text.push_str(&format!(
            "d_P = {}{}\n",
            if p.exact { "" } else { ">" },
            if p.exact { p.value } else { p.search_bound }
        ));
    }
    text.push_str(&format!(
        "BCH = {bch:?}, shifted BCH = {shifted:?}, HT = {ht:?}\n"
    ));
    emit(common, &json, &text)
}

fn table(qs: &[u64], families: &[FamilyId], common: &Common) -> Result<Status> {
    let exec = setup(common);
    let families: Vec<FamilyId> = if families.is_empty() {
        FamilyId::ALL.to_vec()
    } else {
        families.to_vec()
    };
    let opts = CertifyOptions {
        search: SearchOptions {
            exec,
            ..SearchOptions::default()
        },
        ..CertifyOptions::default()
    };
    let mut rows = Vec::new();
    let mut text = format!(
        "{:<8} {:>4} {:>5} {:>5} {:>4} {:>4}  status\n",
        "family", "q", "n", "k", "d_H", "d_P"
    );
    let mut worst = Status::MdsConfirmed;
    for &id in &families {
        for &q in qs {
            if id.spec().admissible(q).is_err() {
                continue;
            }
            let c = certify_family(id, q, &opts)?;
            let v = |d: &Option<sympair::spcode::DistanceCertificate>| d.as_ref().map(|d| d.value);
            text.push_str(&format!(
                "{:<8} {:>4} {:>5} {:>5} {:>4} {:>4}  {}\n",
                id.name(),
                q,
                c.n,
                c.k,
                v(&c.d_h).map_or("-".into(), |x| x.to_string()),
                v(&c.d_p).map_or("-".into(), |x| x.to_string()),
                c.status
            ));
            rows.push(json!({
                "family": id.name(),
                "q": q,
                "n": c.n,
                "k": c.k,
                "d_H": v(&c.d_h),
                "d_P": v(&c.d_p),
                "status": c.status,
            }));
            if c.status.exit_code() > worst.exit_code() {
                worst = c.status;
            }
        }
    }
    emit(common, &Value::Array(rows), &text)?;
    Ok(worst)
}

fn stability(family: FamilyId, q: u64, common: &Common) -> Result<()> {
    let exec = setup(common);
    let r = root_choice_stability(family, q, &SearchOptions::default().with_exec(exec))?;
    let mut text = format!("{family} q={q}: {} root choices\n", r.choices);
    for (xi, h, p) in &r.distances {
        text.push_str(&format!("ξ = {xi}: d_H = {h}, d_P = {p}\n"));
    }
    text.push_str(&format!("stable: {}\n", r.stable));
    emit(common, &serde_json::to_value(&r)?, &text)
}

fn subcode(q: u64, common: &Common) -> Result<bool> {
    let ok = subcode_check(q)?;
    emit(
        common,
        &json!({ "q": q, "subcode": ok }),
        &format!("dp8 ⊆ kai_dp7 at q={q}: {ok}\n"),
    )?;
    Ok(ok)
}

fn dual_generator(q: u64, common: &Common) -> Result<bool> {
    let tower = Arc::new(Tower::new(q)?);
    let xi = default_xi(&tower)?;
    let closed = negacyclic_dual_generator(&tower, xi)?;
    let rec = dual_generator_by_recurrence(&tower, xi)?;
    let div = dual_generator_by_division(&tower, xi)?;
    let agree = closed == rec && closed == div;
    let json = json!({
        "q": q,
        "closed_form": indices(closed.coeffs()),
        "recurrence": indices(rec.coeffs()),
        "division": indices(div.coeffs()),
        "agree": agree,
    });
    let text = format!(
        "closed form: {closed}\nrecurrence:  {rec}\ndivision:    {div}\nagree: {agree}\n"
    );
    emit(common, &json, &text)?;
    Ok(agree)
}

fn run(cli: Cli) -> Result<u8> {
    let code = match cli.command {
        Command::Construct { family, q, common } => {
            construct(family, q, &common)?;
            0
        }
        Command::Certify {
            family,
            q,
            pw_max,
            w_max,
            timings,
            common,
        } => certify(family, q, w_max, pw_max, timings, &common)?.exit_code() as u8,
        Command::Distance {
            q,
            n,
            lambda,
            generator,
            defining_set,
            pair,
            w_max,
            pw_max,
            engine,
            common,
        } => {
            distance(
                q,
                n,
                lambda,
                generator,
                defining_set,
                pair,
                w_max,
                pw_max,
                engine,
                &common,
            )?;
            0
        }
        Command::Table { q, family, common } => table(&q, &family, &common)?.exit_code() as u8,
        Command::Stability { family, q, common } => {
            stability(family, q, &common)?;
            0
        }
        Command::Subcode { q, common } => {
            if subcode(q, &common)? {
                0
            } else {
                3
            }
        }
        Command::DualGenerator { q, common } => {
            if dual_generator(q, &common)? {
                0
            } else {
                3
            }
        }
    };
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<sympair::Error>() {
                Some(sympair::Error::Inadmissible { .. }) => ExitCode::from(2),
                Some(sympair::Error::BudgetExceeded(_)) => ExitCode::from(4),
                _ => ExitCode::from(1),
            }
        }
    }
}
