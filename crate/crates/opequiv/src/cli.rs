//! Batch front-end: parses sequence and matrix specs, dispatches to the
//! decision modules, and emits deterministic JSON (or CSV) reports.
//!
//! Exit codes: 0 = holds/true/verified, 1 = refuted/false,
//! 2 = inconclusive, 64 = usage error, 65 = data error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::axioms::{check_axioms, SFunction, SNumberFunction};
use crate::config::{OutputFormat, RunConfig, CONFIG_ENV_VAR};
use crate::criteria::{
    geometry_obstruction, schatten_test, timotin_test, Criterion, CriterionVerdict,
    CriterionWitness, RatioDirection, Relation,
};
use crate::findim::{
    self, decide_eae, decide_eaoe, op_norm, s_number_with_ceiling, verify_mc, verify_sc, CMat,
    EaeWitness, ExtendedSide, LpExponent, MatrixOperator, SNumberKind,
};
use crate::report::{csv_table, Report};
use crate::seq::{parse_sequence_spec, shifted_ratio, OperatorMeta};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser)]
#[command(
    name = "opequiv",
    version,
    about = "Criteria and finite-dimensional witnesses for operator equivalence after extension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file (key = value lines); overrides the OPEQUIV_CONFIG default
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Report output path (stdout when omitted)
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format: json or csv
    #[arg(long, global = true)]
    format: Option<String>,

    /// Seed for all randomized searches
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the Schatten or Timotin criterion for two sequence specs
    Criteria(CriteriaArgs),
    /// Finite-dimensional decisions, s-numbers, and witness verification
    Finite {
        #[command(subcommand)]
        cmd: FiniteCmd,
    },
    /// s-function axiom harness over seeded random ensembles
    Axioms {
        #[command(subcommand)]
        cmd: AxiomsCmd,
    },
    /// Operator norms between finite l^p spaces
    Norms {
        #[command(subcommand)]
        cmd: NormsCmd,
    },
}

#[derive(Args)]
struct CriteriaArgs {
    /// Criterion: schatten or timotin
    #[arg(long)]
    kind: String,
    /// First sequence spec, e.g. geometric:r=0.5
    #[arg(long = "t")]
    t: String,
    /// Second sequence spec, e.g. polynomial:alpha=1.0
    #[arg(long = "s")]
    s: String,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    delta_floor: Option<f64>,
    /// Operator metadata for T, e.g. lp:2,compact or hilbert
    #[arg(long)]
    meta_t: Option<String>,
    /// Operator metadata for S
    #[arg(long)]
    meta_s: Option<String>,
}

#[derive(Subcommand)]
enum FiniteCmd {
    /// Decide equivalence after extension with an explicit witness
    DecideEae {
        #[arg(long = "t")]
        t: PathBuf,
        #[arg(long = "s")]
        s: PathBuf,
    },
    /// Decide equivalence after one-sided extension
    DecideEaoe {
        #[arg(long = "t")]
        t: PathBuf,
        #[arg(long = "s")]
        s: PathBuf,
    },
    /// s-numbers of a matrix operator
    Snumber {
        #[arg(long = "a")]
        a: PathBuf,
        /// hilbert, approximation, kolmogorov, or gelfand
        #[arg(long)]
        kind: String,
        /// Single index to evaluate
        #[arg(long)]
        k: Option<usize>,
        /// Sweep indices 1..=k_max instead
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Verify a witness identity (modes: eae, eaoe, mc, sc, ran)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    mode: String,
    #[arg(long = "t")]
    t: Option<PathBuf>,
    #[arg(long = "s")]
    s: Option<PathBuf>,
    #[arg(long = "e")]
    e: Option<PathBuf>,
    #[arg(long = "f")]
    f: Option<PathBuf>,
    #[arg(long = "u")]
    u: Option<PathBuf>,
    /// Block split for mc mode (side of the T block)
    #[arg(long)]
    split: Option<usize>,
    #[arg(long = "a")]
    a: Option<PathBuf>,
    #[arg(long = "b")]
    b: Option<PathBuf>,
    #[arg(long = "c")]
    c: Option<PathBuf>,
    #[arg(long = "d")]
    d: Option<PathBuf>,
    #[arg(long = "g")]
    g: Option<PathBuf>,
    #[arg(long = "h")]
    h: Option<PathBuf>,
    #[arg(long = "r")]
    r: Option<PathBuf>,
    /// eaoe mode: which operator was extended (t or s)
    #[arg(long)]
    side: Option<String>,
    /// eaoe mode: extension dimension
    #[arg(long)]
    ext: Option<usize>,
}

#[derive(Subcommand)]
enum AxiomsCmd {
    /// Run the five-axiom suite
    Run {
        /// hilbert, approximation, kolmogorov, or gelfand
        #[arg(long, default_value = "hilbert")]
        kind: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        dims: usize,
        /// Domain exponent for search kinds
        #[arg(long)]
        p: Option<String>,
        /// Codomain exponent for search kinds
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Subcommand)]
enum NormsCmd {
    /// Operator norm of a matrix file
    Matrix {
        #[arg(long = "a")]
        a: PathBuf,
    },
    /// Identity norm law n^{max(0, 1/q - 1/p)}
    Identity {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

macro_rules! data_err {
    ($e:expr) => {
        $e.map_err(|err| Failure::data(err.to_string()))
    };
}

/// Run the CLI on an argv slice; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let started = Instant::now();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };

    let mut config = RunConfig::default();
    // precedence: env default < --config file < flags
    let config_path = cli.config.clone().or_else(|| {
        std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from)
    });
    if let Some(path) = config_path {
        if let Err(err) = config.apply_file(&path) {
            eprintln!("opequiv: {err}");
            return EXIT_DATA;
        }
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(output) = &cli.output {
        config.output = Some(output.clone());
    }
    if let Some(format) = &cli.format {
        match OutputFormat::parse(format) {
            Ok(f) => config.format = f,
            Err(msg) => {
                eprintln!("opequiv: {msg}");
                return EXIT_USAGE;
            }
        }
    }
    if let Err(err) = config.validate() {
        eprintln!("opequiv: {err}");
        return EXIT_DATA;
    }

    let outcome = dispatch(&cli.command, &mut config);
    let (result, exit, csv) = match outcome {
        Ok(v) => v,
        Err(f) => {
            eprintln!("opequiv: {}", f.message);
            return f.code;
        }
    };

    let body = match config.format {
        OutputFormat::Json => {
            // skip argv[0] in the command echo
            let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
            Report::new(&echo, &config, result).to_json()
        }
        OutputFormat::Csv => match csv {
            Some(table) => table,
            None => {
                eprintln!("opequiv: this subcommand has no csv payload");
                return EXIT_USAGE;
            }
        },
    };
    if let Err(err) = crate::report::emit(&body, config.output.as_deref()) {
        eprintln!("opequiv: cannot write report: {err}");
        return EXIT_DATA;
    }
    eprintln!(
        "opequiv: done in {:.3}s",
        started.elapsed().as_secs_f64()
    );
    exit
}

type Outcome = Result<(Value, i32, Option<String>), Failure>;

fn dispatch(command: &Command, config: &mut RunConfig) -> Outcome {
    match command {
        Command::Criteria(args) => run_criteria(args, config),
        Command::Finite { cmd } => match cmd {
            FiniteCmd::DecideEae { t, s } => run_decide_eae(t, s, config),
            FiniteCmd::DecideEaoe { t, s } => run_decide_eaoe(t, s, config),
            FiniteCmd::Snumber { a, kind, k, k_max } => {
                run_snumber(a, kind, *k, *k_max, config)
            }
            FiniteCmd::Verify(args) => run_verify(args, config),
        },
        Command::Axioms { cmd } => match cmd {
            AxiomsCmd::Run {
                kind,
                samples,
                dims,
                p,
                q,
            } => run_axioms(kind, *samples, *dims, p.as_deref(), q.as_deref(), config),
        },
        Command::Norms { cmd } => match cmd {
            NormsCmd::Matrix { a } => run_norm_matrix(a, config),
            NormsCmd::Identity { n, n_max, p, q } => run_norm_identity(*n, *n_max, p, q),
        },
    }
}

// ── criteria ────────────────────────────────────────────────────────

fn parse_meta(spec: &str) -> Result<OperatorMeta, Failure> {
    let lower = spec.trim().to_ascii_lowercase();
    let (head, compact) = match lower.strip_suffix(",compact") {
        Some(h) => (h.to_string(), true),
        None => (lower, false),
    };
    if head == "hilbert" {
        return Ok(OperatorMeta::hilbert(compact));
    }
    if head == "unspecified" {
        return Ok(OperatorMeta::unspecified());
    }
    if let Some(ptext) = head.strip_prefix("lp:") {
        let p: f64 = if ptext == "inf" {
            f64::INFINITY
        } else {
            ptext
                .parse()
                .map_err(|_| Failure::data(format!("bad lp exponent `{ptext}`")))?
        };
        return data_err!(OperatorMeta::lp(p, compact));
    }
    Err(Failure::data(format!(
        "bad meta `{spec}` (expected lp:<p>[,compact], hilbert[,compact], unspecified)"
    )))
}

fn witness_json(w: &CriterionWitness) -> Value {
    match w {
        CriterionWitness::Schatten(sw) => json!({"kind": "schatten", "m": sw.m, "M": sw.constant}),
        CriterionWitness::Timotin(tw) => json!({
            "kind": "timotin",
            "m": tw.m,
            "delta": tw.delta,
            "direction": match tw.direction {
                RatioDirection::SOverTShifted => "s_over_t_shifted",
                RatioDirection::TOverSShifted => "t_over_s_shifted",
            },
        }),
    }
}

fn run_criteria(args: &CriteriaArgs, config: &mut RunConfig) -> Outcome {
    let criterion = match args.kind.to_ascii_lowercase().as_str() {
        "schatten" => Criterion::Schatten,
        "timotin" => Criterion::Timotin,
        other => return Err(Failure::usage(format!("unknown criterion `{other}`"))),
    };
    if let Some(m) = args.m_max {
        config.m_max = m;
    }
    if let Some(h) = args.horizon {
        config.horizon = h;
    }
    if let Some(d) = args.delta_floor {
        config.delta_floor = d;
    }
    config
        .validate()
        .map_err(|e| Failure::data(e.to_string()))?;

    let t = data_err!(parse_sequence_spec(&args.t))?;
    let s = data_err!(parse_sequence_spec(&args.s))?;

    let verdict = match criterion {
        Criterion::Schatten => {
            data_err!(schatten_test(&t, &s, config.m_max, config.horizon))?
        }
        Criterion::Timotin => data_err!(timotin_test(
            &t,
            &s,
            config.m_max,
            config.horizon,
            config.delta_floor
        ))?,
    };

    let mut obstructions = Vec::new();
    if let (Some(mt), Some(ms)) = (&args.meta_t, &args.meta_s) {
        let meta_t = parse_meta(mt)?;
        let meta_s = parse_meta(ms)?;
        for relation in [Relation::Eae, Relation::Eaoe] {
            if let Some(ob) = geometry_obstruction(&meta_t, &meta_s, relation) {
                obstructions.push(serde_json::to_value(&ob).unwrap());
            }
        }
    }

    let (verdict_name, witness, certificate, best_partial, exit) = match &verdict {
        CriterionVerdict::Holds { witness } => (
            "holds",
            Some(witness_json(witness)),
            None,
            None,
            EXIT_HOLDS,
        ),
        CriterionVerdict::RefutedAnalytic { certificate } => (
            "refuted_analytic",
            None,
            Some(serde_json::to_value(certificate).unwrap()),
            None,
            EXIT_REFUTED,
        ),
        CriterionVerdict::InconclusiveAtHorizon { best_partial, .. } => (
            "inconclusive_at_horizon",
            None,
            None,
            best_partial.as_ref().map(witness_json),
            EXIT_INCONCLUSIVE,
        ),
    };

    let result = json!({
        "criterion": match criterion {
            Criterion::Schatten => "schatten",
            Criterion::Timotin => "timotin",
        },
        "verdict": verdict_name,
        "witness": witness,
        "certificate": certificate,
        "best_partial": best_partial,
        "horizon": config.horizon,
        "m_max": config.m_max,
        "delta_floor": config.delta_floor,
        "obstructions": obstructions,
    });

    // plot-ready series: the shifted ratio at the most relevant m
    let csv = {
        let m_plot = match &verdict {
            CriterionVerdict::Holds {
                witness: CriterionWitness::Timotin(w),
            } => w.m,
            CriterionVerdict::Holds {
                witness: CriterionWitness::Schatten(w),
            } => w.m,
            _ => 0,
        };
        let rows: Vec<(f64, f64)> = (1..=config.horizon.min(10_000))
            .map(|n| {
                let r = match criterion {
                    Criterion::Timotin => shifted_ratio(&t, &s, m_plot, n).value,
                    Criterion::Schatten => {
                        let idx = m_plot.max(1) * (n - 1) + 1;
                        let num = t.value(idx);
                        let den = s.value(n);
                        if den > 0.0 {
                            num / den
                        } else if num > 0.0 {
                            f64::INFINITY
                        } else {
                            1.0
                        }
                    }
                };
                (n as f64, r)
            })
            .collect();
        Some(csv_table(("n", "ratio"), &rows))
    };

    Ok((result, exit, csv))
}

// ── finite decisions ────────────────────────────────────────────────

fn read_operator(path: &Path) -> Result<MatrixOperator, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    MatrixOperator::from_text(&text)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn read_square(path: &Path) -> Result<CMat, Failure> {
    let op = read_operator(path)?;
    if !op.matrix.is_square() {
        return Err(Failure::data(format!(
            "{}: matrix must be square",
            path.display()
        )));
    }
    Ok(op.matrix)
}

fn eae_witness_json(w: &EaeWitness) -> Value {
    json!({
        "e": MatrixOperator::hilbert(w.e.clone()).to_text(),
        "f": MatrixOperator::hilbert(w.f.clone()).to_text(),
        "dims": [w.dims.0, w.dims.1],
        "residual": w.residual,
        "rcond_e": w.rcond_e,
        "rcond_f": w.rcond_f,
    })
}

fn run_decide_eae(t_path: &Path, s_path: &Path, config: &RunConfig) -> Outcome {
    let t = read_square(t_path)?;
    let s = read_square(s_path)?;
    let d = data_err!(decide_eae(&t, &s, &config.tolerances))?;
    let result = json!({
        "eae": d.eae,
        "cut_t": serde_json::to_value(&d.cut_t).unwrap(),
        "cut_s": serde_json::to_value(&d.cut_s).unwrap(),
        "ill_conditioned": d.ill_conditioned,
        "witness": d.witness.as_ref().map(eae_witness_json),
    });
    let exit = if d.eae { EXIT_HOLDS } else { EXIT_REFUTED };
    Ok((result, exit, None))
}

fn run_decide_eaoe(t_path: &Path, s_path: &Path, config: &RunConfig) -> Outcome {
    let t = read_square(t_path)?;
    let s = read_square(s_path)?;
    let d = data_err!(decide_eaoe(&t, &s, &config.tolerances))?;
    let result = json!({
        "eaoe": d.eaoe,
        "side": d.side.map(|side| match side {
            ExtendedSide::T => "t",
            ExtendedSide::S => "s",
        }),
        "extension_dim": d.extension_dim,
        "cut_t": serde_json::to_value(&d.cut_t).unwrap(),
        "cut_s": serde_json::to_value(&d.cut_s).unwrap(),
        "ill_conditioned": d.ill_conditioned,
        "witness": d.witness.as_ref().map(eae_witness_json),
    });
    let exit = if d.eaoe { EXIT_HOLDS } else { EXIT_REFUTED };
    Ok((result, exit, None))
}

fn run_snumber(
    a_path: &Path,
    kind: &str,
    k: Option<usize>,
    k_max: Option<usize>,
    _config: &RunConfig,
) -> Outcome {
    let a = read_operator(a_path)?;
    let kind = data_err!(SNumberKind::parse(kind))?;
    let indices: Vec<usize> = match (k, k_max) {
        (Some(k), None) => vec![k],
        (None, Some(kmax)) => (1..=kmax).collect(),
        (None, None) => (1..=a.rows().min(a.cols())).collect(),
        (Some(_), Some(_)) => {
            return Err(Failure::usage("pass either --k or --k-max, not both"))
        }
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for k in indices {
        let r = data_err!(s_number_with_ceiling(&a, kind, k, 6))?;
        rows.push((k as f64, r.value));
        entries.push(serde_json::to_value(&r).unwrap());
    }
    let result = json!({
        "kind": kind.to_string(),
        "values": entries,
    });
    let csv = Some(csv_table(("n", "s_number"), &rows));
    Ok((result, EXIT_HOLDS, csv))
}

fn need(path: &Option<PathBuf>, flag: &str) -> Result<PathBuf, Failure> {
    path.clone()
        .ok_or_else(|| Failure::usage(format!("verify: missing --{flag}")))
}

fn run_verify(args: &VerifyArgs, config: &RunConfig) -> Outcome {
    let tols = &config.tolerances;
    match args.mode.to_ascii_lowercase().as_str() {
        "eae" => {
            let t = read_square(&need(&args.t, "t")?)?;
            let s = read_square(&need(&args.s, "s")?)?;
            let e = read_square(&need(&args.e, "e")?)?;
            let f = read_square(&need(&args.f, "f")?)?;
            let witness = EaeWitness {
                e,
                f,
                dims: (t.rows(), s.rows()),
                residual: 0.0,
                rcond_e: 0.0,
                rcond_f: 0.0,
            };
            let residual = witness.verify(&t, &s);
            let rcond_e = data_err!(findim::svd(&witness.e))?.rcond();
            let rcond_f = data_err!(findim::svd(&witness.f))?.rcond();
            let verified = residual <= tols.tol_witness
                && rcond_e >= tols.cond_floor
                && rcond_f >= tols.cond_floor;
            let result = json!({
                "mode": "eae",
                "verified": verified,
                "residual": residual,
                "rcond_e": rcond_e,
                "rcond_f": rcond_f,
            });
            Ok((result, if verified { EXIT_HOLDS } else { EXIT_REFUTED }, None))
        }
        "eaoe" => {
            let t = read_square(&need(&args.t, "t")?)?;
            let s = read_square(&need(&args.s, "s")?)?;
            let e = read_square(&need(&args.e, "e")?)?;
            let f = read_square(&need(&args.f, "f")?)?;
            let side = match args.side.as_deref() {
                Some("t") => ExtendedSide::T,
                Some("s") => ExtendedSide::S,
                _ => return Err(Failure::usage("eaoe verify needs --side t|s")),
            };
            let ext = args
                .ext
                .ok_or_else(|| Failure::usage("eaoe verify needs --ext"))?;
            let witness = EaeWitness {
                e,
                f,
                dims: (t.rows(), s.rows()),
                residual: 0.0,
                rcond_e: 0.0,
                rcond_f: 0.0,
            };
            let residual = findim::equivalence::verify_eaoe_witness(&witness, &t, &s, side, ext);
            let rcond_e = data_err!(findim::svd(&witness.e))?.rcond();
            let rcond_f = data_err!(findim::svd(&witness.f))?.rcond();
            let verified = residual <= tols.tol_witness
                && rcond_e >= tols.cond_floor
                && rcond_f >= tols.cond_floor;
            let result = json!({
                "mode": "eaoe",
                "verified": verified,
                "residual": residual,
                "rcond_e": rcond_e,
                "rcond_f": rcond_f,
            });
            Ok((result, if verified { EXIT_HOLDS } else { EXIT_REFUTED }, None))
        }
        "mc" => {
            let u = read_square(&need(&args.u, "u")?)?;
            let t = read_square(&need(&args.t, "t")?)?;
            let s = read_square(&need(&args.s, "s")?)?;
            let split = args
                .split
                .ok_or_else(|| Failure::usage("mc verify needs --split"))?;
            let r = data_err!(verify_mc(&u, split, &t, &s, tols))?;
            let verified = r.ok;
            let result = json!({"mode": "mc", "report": serde_json::to_value(&r).unwrap()});
            Ok((result, if verified { EXIT_HOLDS } else { EXIT_REFUTED }, None))
        }
        "sc" => {
            let a = read_square(&need(&args.a, "a")?)?;
            let b_path = need(&args.b, "b")?;
            let b = read_operator(&b_path)?.matrix;
            let c = read_operator(&need(&args.c, "c")?)?.matrix;
            let d = read_square(&need(&args.d, "d")?)?;
            let t = read_square(&need(&args.t, "t")?)?;
            let s = read_square(&need(&args.s, "s")?)?;
            let r = data_err!(verify_sc(&a, &b, &c, &d, &t, &s, tols))?;
            let verified = r.ok;
            let result = json!({"mode": "sc", "report": serde_json::to_value(&r).unwrap()});
            Ok((result, if verified { EXIT_HOLDS } else { EXIT_REFUTED }, None))
        }
        "ran" => {
            let t = read_square(&need(&args.t, "t")?)?;
            let s = read_square(&need(&args.s, "s")?)?;
            let g = read_operator(&need(&args.g, "g")?)?.matrix;
            let h = read_operator(&need(&args.h, "h")?)?.matrix;
            let r = read_operator(&need(&args.r, "r")?)?.matrix;
            let reconstructed = g.mul(&s).mul(&h).add(&r);
            let residual = t.sub(&reconstructed).frobenius_norm();
            let rank_r = data_err!(findim::svd(&r))?.rank(tols.rank_tol);
            let verified = residual <= tols.tol_witness;
            let result = json!({
                "mode": "ran",
                "verified": verified,
                "residual": residual,
                "rank_r": rank_r,
            });
            Ok((result, if verified { EXIT_HOLDS } else { EXIT_REFUTED }, None))
        }
        other => Err(Failure::usage(format!(
            "unknown verify mode `{other}` (expected eae, eaoe, mc, sc, ran)"
        ))),
    }
}

// ── axioms ──────────────────────────────────────────────────────────

fn run_axioms(
    kind: &str,
    samples: usize,
    dims: usize,
    p: Option<&str>,
    q: Option<&str>,
    config: &RunConfig,
) -> Outcome {
    let kind = data_err!(SNumberKind::parse(kind))?;
    let p_dom = match p {
        Some(tok) => data_err!(LpExponent::parse(tok))?,
        None => LpExponent::TWO,
    };
    let p_cod = match q {
        Some(tok) => data_err!(LpExponent::parse(tok))?,
        None => LpExponent::TWO,
    };
    let ceiling = if kind == SNumberKind::HilbertSingular || (p_dom.is_two() && p_cod.is_two()) {
        dims.max(8)
    } else {
        6
    };
    if dims == 0 || dims > ceiling {
        return Err(Failure::data(format!(
            "dims must lie in 1..={ceiling} for this kind"
        )));
    }
    let sfn = SNumberFunction::new(kind, p_dom, p_cod, ceiling);
    let reports = check_axioms(&sfn, samples, dims, config.seed);
    let clean = reports.iter().all(|r| r.clean());
    let result = json!({
        "s_function": sfn.label(),
        "clean": clean,
        "reports": serde_json::to_value(&reports).unwrap(),
    });
    Ok((result, if clean { EXIT_HOLDS } else { EXIT_REFUTED }, None))
}

// ── norms ───────────────────────────────────────────────────────────

fn run_norm_matrix(a_path: &Path, _config: &RunConfig) -> Outcome {
    let a = read_operator(a_path)?;
    let r = op_norm(&a);
    let witness: Vec<[f64; 2]> = r.witness.iter().map(|z| [z.re, z.im]).collect();
    let result = json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "p_dom": a.p_dom.to_string(),
        "p_cod": a.p_cod.to_string(),
        "value": r.value,
        "method": match r.method {
            findim::NormMethod::Exact => "exact",
            findim::NormMethod::Search => "search",
        },
        "witness": witness,
    });
    Ok((result, EXIT_HOLDS, None))
}

fn run_norm_identity(
    n: Option<usize>,
    n_max: Option<usize>,
    p: &str,
    q: &str,
) -> Outcome {
    let p = data_err!(LpExponent::parse(p))?;
    let q = data_err!(LpExponent::parse(q))?;
    let ns: Vec<usize> = match (n, n_max) {
        (Some(n), None) => vec![n],
        (None, Some(nm)) => (1..=nm).collect(),
        (None, None) => (1..=6).collect(),
        (Some(_), Some(_)) => return Err(Failure::usage("pass either --n or --n-max, not both")),
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for n in ns {
        let v = data_err!(findim::lp_identity_norm(n, p, q))?;
        entries.push(json!({"n": n, "value": v}));
        rows.push((n as f64, v));
    }
    let exponent = (q.reciprocal() - p.reciprocal()).max(0.0);
    let result = json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "growth_exponent": exponent,
        "entries": entries,
    });
    let csv = Some(csv_table(("n", "value"), &rows));
    Ok((result, EXIT_HOLDS, csv))
}
