use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use macfb::checkers::{
    cf_rate_curve, check_lemma1, check_lemma2, check_thm3, check_thm4, erasure_scaling_check,
    single_rate_capacity, verify_additive, z_channel, GroupSpec,
};
use macfb::io::{channel_doc_to_json, load_channel_doc, ChannelDoc};
use macfb::regions::{
    cl_frontier, cutset_bounds, default_u_card, weight_fan, FeedbackModel, CERTIFY_TOL,
};
use macfb::{families, Error, Mac, Pmf, User};

#[derive(Parser)]
#[command(
    name = "macfb",
    version,
    about = "Feedback capacity bounds for two-user discrete memoryless MACs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Best single-user rate for both users
    Singlerate(Common),
    /// Inner-bound frontier and cut-set lines
    Region(RegionArgs),
    /// Run one checker
    Check {
        which: Which,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1")]
        user: User,
        /// Erasure probability for erasure-scaling
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        search: Search,
    },
    /// Compress-forward rate curve
    Cfcurve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1")]
        user: User,
        #[arg(long, default_value = "0:0.2:0.005")]
        a_grid: String,
        #[arg(long)]
        xk_star: Option<String>,
        #[arg(long)]
        xbar_k: Option<String>,
    },
    /// Write a bundled example channel file
    Example {
        family: Family,
        /// Erasure probability or crossover probability
        #[arg(long)]
        param: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Thm3,
    Thm4,
    Lemmas,
    ErasureScaling,
    Additive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ErasureAdder,
    BscMac,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    channel: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    csv_out: Option<PathBuf>,
}

#[derive(Args)]
struct Search {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    restarts: usize,
    /// "w1:w2,..."; defaults to a 17-direction fan
    #[arg(long)]
    weights: Option<String>,
    /// Auxiliary cardinality; defaults to |X1||X2|+2
    #[arg(long)]
    u_card: Option<usize>,
    /// Re-evaluate every witness and fail on a discrepancy
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    search: Search,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    path: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let path = match &e {
            Error::Parse { path, .. } => Some(path.clone()),
            _ => None,
        };
        let (code, kind) = match &e {
            Error::Io(_) => (2, "io"),
            Error::Parse { .. } => (2, "parse"),
            _ => (2, "input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            path,
        }
    }
}

fn input_failure(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        kind: "input",
        message: msg.into(),
        path: None,
    }
}

fn internal_failure(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        kind: "internal",
        message: msg.into(),
        path: None,
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = json!({"error": {"kind": f.kind, "message": f.message, "path": f.path}});
            eprintln!("{body}");
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Singlerate(c) => singlerate(&c),
        Cmd::Region(r) => region(&r.common, &r.search),
        Cmd::Check {
            which,
            common,
            user,
            p,
            search,
        } => check(which, &common, user, p, &search),
        Cmd::Cfcurve {
            common,
            user,
            a_grid,
            xk_star,
            xbar_k,
        } => cfcurve(&common, user, &a_grid, xk_star, xbar_k),
        Cmd::Example { family, param, out } => example(family, param, out),
    }
}

fn load(c: &Common) -> Result<ChannelDoc, Failure> {
    if !(c.tol > 0.0) {
        return Err(input_failure("--tol must be positive"));
    }
    let path = c
        .channel
        .as_ref()
        .ok_or_else(|| input_failure("--channel is required"))?;
    load_channel_doc(path).map_err(|e| match e {
        Error::Io(io) => Failure {
            code: 2,
            kind: "io",
            message: format!("{}: {io}", path.display()),
            path: None,
        },
        other => other.into(),
    })
}

fn require_group(doc: &ChannelDoc) -> Result<&GroupSpec, Failure> {
    doc.group
        .as_ref()
        .ok_or_else(|| input_failure("group specification required"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn write_file(path: &PathBuf, text: &str) -> Outcome {
    fs::write(path, text)
        .map_err(|e| internal_failure(format!("cannot write {}: {e}", path.display())))
}

/// Prints `primary` and mirrors it to the files requested.
fn emit(c: &Common, primary: &str, json: Option<&str>, csv: Option<&str>) -> Outcome {
    print!("{primary}");
    if let (Some(p), Some(t)) = (&c.json_out, json) {
        write_file(p, t)?;
    }
    if let (Some(p), Some(t)) = (&c.csv_out, csv) {
        write_file(p, t)?;
    }
    Ok(())
}

fn singlerate(c: &Common) -> Outcome {
    let doc = load(c)?;
    let r1 = single_rate_capacity(&doc.mac, User::One, c.tol);
    let r2 = single_rate_capacity(&doc.mac, User::Two, c.tol);
    let body = to_json(&json!({
        "channel": doc.mac.name(),
        "user1": r1.value,
        "user2": r2.value,
        "details": {"user1": r1, "user2": r2},
    }));
    emit(c, &body, Some(&body), None)
}

fn parse_weights(s: Option<&str>) -> Result<Vec<(f64, f64)>, Failure> {
    let Some(s) = s else {
        return Ok(weight_fan(17));
    };
    s.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| input_failure(format!("weight {pair:?} is not w1:w2")))?;
            let num = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| input_failure(format!("bad number {t:?} in weights")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

/// `start:stop:step` or a comma-separated list.
fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| input_failure(format!("bad number {t:?} in a-grid")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || stop < start {
            return Err(input_failure("a-grid needs start <= stop and step > 0"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| start + i as f64 * step).collect());
    }
    s.split(',').map(num).collect()
}

fn region(c: &Common, s: &Search) -> Outcome {
    let doc = load(c)?;
    let mac = &doc.mac;
    let weights = parse_weights(s.weights.as_deref())?;
    let u_card = s.u_card.unwrap_or_else(|| default_u_card(mac));
    let inner = cl_frontier(mac, &weights, s.restarts, u_card, s.seed)?;
    let cuts: Vec<_> = [FeedbackModel::PF, FeedbackModel::IF, FeedbackModel::DF]
        .into_iter()
        .map(|m| cutset_bounds(mac, m, c.tol))
        .collect();
    let outer = cuts[1].frontier(&weights)?;
    if s.verify {
        verify(&inner, mac)?;
    }
    let mut csv = inner.to_csv();
    outer.append_csv_rows(&mut csv);
    let body = to_json(&json!({
        "channel": mac.name(),
        "u_card": u_card,
        "seed": s.seed,
        "restarts": s.restarts,
        "inner": inner,
        "cutset": cuts,
        "outer": outer,
    }));
    emit(c, &csv, Some(&body), Some(&csv))
}

fn verify(fr: &macfb::regions::RegionFrontier, mac: &Mac) -> Outcome {
    let worst = fr.max_certificate_violation(mac)?;
    if worst > CERTIFY_TOL {
        return Err(internal_failure(format!(
            "witness verification failed: constraint violated by {worst:e}"
        )));
    }
    Ok(())
}

fn check(which: Which, c: &Common, user: User, p: f64, s: &Search) -> Outcome {
    let doc = load(c)?;
    let mac = &doc.mac;
    let body = match which {
        Which::Thm3 => to_json(&check_thm3(mac, user, c.tol)),
        Which::Thm4 => to_json(&check_thm4(mac, require_group(&doc)?, user, c.tol)?),
        Which::Additive => to_json(&verify_additive(mac, require_group(&doc)?)?),
        Which::Lemmas => {
            let g = require_group(&doc)?;
            let lemma2 = |u: User| check_lemma2(mac, g, u, &Pmf::uniform(mac.alphabet(u).to_vec()));
            to_json(&json!({
                "lemma1": check_lemma1(&z_channel(mac, g)),
                "lemma2": {"user1": lemma2(User::One)?, "user2": lemma2(User::Two)?},
            }))
        }
        Which::ErasureScaling => {
            let weights = parse_weights(s.weights.as_deref())?;
            let r = erasure_scaling_check(mac, p, &weights, s.restarts, s.seed)?;
            if s.verify && r.certificate_violation > CERTIFY_TOL {
                return Err(internal_failure(format!(
                    "witness verification failed: constraint violated by {:e}",
                    r.certificate_violation
                )));
            }
            to_json(&r)
        }
    };
    emit(c, &body, Some(&body), None)
}

fn cfcurve(
    c: &Common,
    user: User,
    grid: &str,
    xk_star: Option<String>,
    xbar_k: Option<String>,
) -> Outcome {
    let doc = load(c)?;
    let mac = &doc.mac;
    let a_grid = parse_grid(grid)?;
    let sr = single_rate_capacity(mac, user, c.tol);
    let (xs, xb) = match (xk_star, xbar_k) {
        (Some(a), Some(b)) => (a, b),
        (None, None) => {
            let r = check_thm3(mac, user, c.tol);
            match r.witness {
                Some(w) => (w.xk_star, w.xbar_k),
                None => {
                    let xb = mac
                        .alphabet(user.other())
                        .iter()
                        .find(|x| **x != sr.xk_star)
                        .cloned()
                        .ok_or_else(|| input_failure("the other user has a single symbol"))?;
                    (sr.xk_star.clone(), xb)
                }
            }
        }
        _ => return Err(input_failure("give both --xk-star and --xbar-k or neither")),
    };
    let p_star = sr
        .candidates
        .iter()
        .find(|cand| cand.xk == xs)
        .map(|cand| cand.p_star.clone())
        .ok_or_else(|| input_failure(format!("unknown symbol {xs:?}")))?;
    let curve = cf_rate_curve(mac, user, &xs, &xb, &p_star, &a_grid)?;
    let csv = curve.to_csv();
    let body = to_json(&curve);
    emit(c, &csv, Some(&body), Some(&csv))
}

fn example(family: Family, param: f64, out: Option<PathBuf>) -> Outcome {
    let (mac, g) = match family {
        Family::ErasureAdder => families::erasure_adder_additive(param, 3)?,
        Family::BscMac => families::bsc_mac_additive(param)?,
    };
    let text = channel_doc_to_json(&ChannelDoc {
        mac,
        group: Some(g),
    });
    match out {
        Some(p) => write_file(&p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
