//! `rrcf`: classification, limits, witnesses, trajectories and conjecture
//! grids for Rogers-Ramanujan continued fractions on the unit circle.
//!
//! Exit codes: 0 on a definite result, 2 on argument errors, 3 when the
//! verdict is indefinite (condition not satisfied / heuristic inconclusive),
//! 4 when a conjecture grid finds an exact counterexample.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rrcf_core::bigfloat::{bf_lt, format_sig, rational_from_decimal_str};
use rrcf_core::cf::{trajectory, CfSpec, CSV_HEADER};
use rrcf_core::classify::{
    classify, classify_complex, conjecture2_check, conjecture2_grid, conjecture3_check,
    field_membership, ClassifyOptions, Detected, RootOfUnitySpec, Verdict,
};
use rrcf_core::complex::ComplexBF;
use rrcf_core::report::{
    to_json_line, CertificateRecord, ClassificationRecord, Conjecture2Record, MembershipRecord,
    WitnessRecord,
};
use rrcf_core::witness::{
    construct_witness, divergence_certificate, RadiusSpec, StopReason, WitnessParams,
};
use rrcf_core::BigRational;

#[derive(Parser)]
#[command(
    name = "rrcf",
    about = "Rogers-Ramanujan continued fractions on the unit circle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args)]
struct RunConfig {
    /// Working precision in bits for numeric paths.
    #[arg(long, global = true, default_value_t = 256, env = "RRCF_PRECISION_BITS")]
    precision_bits: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Worker threads for grid commands.
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,

    /// Largest order evaluated through the exact cyclotomic path.
    #[arg(long, global = true, default_value_t = 200)]
    exact_threshold: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Classify K_a(zeta_m): convergent with limit, or divergent and how.
    Classify {
        /// Coefficient a: a root of unity "j/k" or a complex decimal
        /// "re" / "re,im" (the latter routes to the heuristic path).
        #[arg(long)]
        a: String,
        /// Root-of-unity order m of the evaluation point x = e^(2 pi i/m).
        #[arg(long)]
        m: u32,
    },
    /// Construct a divergence witness digit sequence near x = -1.
    Witness {
        /// Arc radius R (decimal), e.g. 0.9424777961 for 2*pi*0.15.
        #[arg(long, short = 'R', value_name = "R")]
        radius: String,
        /// Interpret the radius as R = 2*pi*<value> exactly.
        #[arg(long, default_value_t = false)]
        two_pi_times: bool,
        /// Number of digits to produce (seed included).
        #[arg(long)]
        terms: usize,
        /// Bit budget for any single computed digit.
        #[arg(long, default_value_t = 1 << 20)]
        budget_bits: u64,
    },
    /// Run a conjecture verification grid.
    Conjectures {
        /// Which conjecture: 1 (field membership), 2 (eigenvector indices),
        /// 3 (limit-point clusters).
        #[arg(long)]
        which: u8,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
        #[arg(long, default_value_t = 60)]
        m_max: u32,
        /// Use the full published grid bounds (k <= 50, m <= 100).
        #[arg(long, default_value_t = false)]
        full_grid: bool,
    },
    /// Stream a |Q_N Q_(N-1)| trajectory as CSV.
    Trajectory {
        /// Continued fraction kind.
        #[arg(long, value_enum)]
        kind: Kind,
        /// Evaluation point as a root of unity "l/m".
        #[arg(long)]
        x: String,
        /// Coefficient a as a root of unity "j/k" (K_a only).
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Schur,
    Ka,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.parallelism)
            .build_global()
            .ok();
    }
    let mut sink: Box<dyn Write> = match &cli.config.out {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("rrcf: cannot open {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(std::io::stdout()),
    };
    let code = match run(&cli, &mut sink) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rrcf: {e}");
            2
        }
    };
    ExitCode::from(code)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, String> {
    match &cli.command {
        Command::Classify { a, m } => cmd_classify(a, *m, &cli.config, out),
        Command::Witness {
            radius,
            two_pi_times,
            terms,
            budget_bits,
        } => cmd_witness(radius, *two_pi_times, *terms, *budget_bits, &cli.config, out),
        Command::Conjectures {
            which,
            k_max,
            m_max,
            full_grid,
        } => {
            let (k_max, m_max) = if *full_grid { (50, 100) } else { (*k_max, *m_max) };
            cmd_conjectures(*which, k_max, m_max, &cli.config, out)
        }
        Command::Trajectory {
            kind,
            x,
            a,
            n_max,
            stride,
        } => cmd_trajectory(*kind, x, a.as_deref(), *n_max, *stride, &cli.config, out),
    }
}

/// Writes a line, treating a closed pipe as a normal end of output.
fn emit(out: &mut dyn Write, args: std::fmt::Arguments) {
    use std::io::ErrorKind;
    if let Err(e) = out.write_fmt(args) {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("rrcf: write error: {e}");
        std::process::exit(2);
    }
}

macro_rules! outln {
    ($out:expr) => { emit($out, format_args!("\n")) };
    ($out:expr, $($arg:tt)*) => { emit($out, format_args!("{}\n", format_args!($($arg)*))) };
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn parse_complex(s: &str, prec: usize) -> Option<ComplexBF> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re.trim(), im.trim()),
        None => (s.trim(), "0"),
    };
    let re = rational_from_decimal_str(re)?;
    let im = rational_from_decimal_str(im)?;
    Some(ComplexBF::new(
        rrcf_core::bigfloat::bf_from_ratio(&re, prec),
        rrcf_core::bigfloat::bf_from_ratio(&im, prec),
        prec,
    ))
}

fn cmd_classify(a: &str, m: u32, cfg: &RunConfig, out: &mut dyn Write) -> Result<u8, String> {
    let opts = ClassifyOptions {
        precision_bits: cfg.precision_bits,
        ..ClassifyOptions::default()
    };
    let result = if a.contains('/') {
        let spec = RootOfUnitySpec::parse(a).map_err(|e| e.to_string())?;
        let level = lcm_u32(spec.order(), m);
        if level > cfg.exact_threshold {
            eprintln!(
                "rrcf: note: level lcm({}, {m}) = {level} exceeds --exact-threshold {}; \
                 classifying numerically",
                spec.order(),
                cfg.exact_threshold
            );
            classify_complex(&spec.embed(cfg.precision_bits), m, &opts)
        } else {
            classify(&spec, m, &opts)
        }
    } else {
        let z = parse_complex(a, cfg.precision_bits)
            .ok_or_else(|| format!("cannot parse coefficient {a:?}"))?;
        classify_complex(&z, m, &opts)
    };
    let classification = match result {
        Ok(c) => c,
        Err(rrcf_core::Error::HeuristicInconclusive { msg }) => {
            eprintln!("rrcf: inconclusive: {msg}");
            return Ok(3);
        }
        Err(e) => return Err(e.to_string()),
    };
    let record = ClassificationRecord::of(a, m, &classification);
    match cfg.output {
        Output::Json | Output::Csv => outln!(out, "{}", to_json_line(&record)),
        Output::Human => {
            outln!(out, "a = {a}, m = {m}: {}", record.verdict);
            outln!(out, "  provenance: {}", record.provenance);
            outln!(out,
                "  algebraic condition (sqrt outside the field): {}",
                record.algebraic_condition_held
            );
            if let Some(limit) = &record.limit {
                if let Some(n) = &limit.numeric {
                    outln!(out, "  limit = {} + {} i", n.re, n.im);
                }
            }
            if let Some(points) = &record.limit_points {
                for (i, p) in points.iter().enumerate() {
                    match &p.numeric {
                        Some(n) => {
                            outln!(out, "  limit point {i}: {} + {} i", n.re, n.im)
                        }
                        None => outln!(out, "  limit point {i}: infinity"),
                    }
                }
            }
        }
    }
    Ok(if classification.verdict == Verdict::ConditionNotSatisfied {
        3
    } else {
        0
    })
}

fn cmd_witness(
    radius: &str,
    two_pi_times: bool,
    terms: usize,
    budget_bits: u64,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<u8, String> {
    let q = rational_from_decimal_str(radius)
        .ok_or_else(|| format!("cannot parse radius {radius:?}"))?;
    if q <= BigRational::new(0.into(), 1.into()) {
        return Err("radius must be positive".into());
    }
    let spec = if two_pi_times {
        RadiusSpec::TwoPiTimes(q)
    } else {
        RadiusSpec::Exact(q)
    };
    // the witness set strictly enlarges the golden-ratio set only for
    // R < sqrt(5) - 1
    let prec = cfg.precision_bits;
    let r_bf = spec.to_bigfloat(prec);
    let sqrt5m1 = rrcf_core::bigfloat::bf_i64(5, prec)
        .sqrt(prec, rrcf_core::bigfloat::RM)
        .sub(
            &rrcf_core::bigfloat::bf_i64(1, prec),
            prec,
            rrcf_core::bigfloat::RM,
        );
    if !bf_lt(&r_bf, &sqrt5m1) {
        eprintln!(
            "rrcf: warning: R = {} >= sqrt(5) - 1; the enlargement interpretation is void",
            format_sig(&r_bf, 10)
        );
    }
    let params = WitnessParams {
        radius: spec.clone(),
        seed_digits: vec![1, 1, 2],
        max_terms: terms,
        digit_budget_bits: budget_bits,
    };
    let result = construct_witness(&params).map_err(|e| e.to_string())?;
    let record = WitnessRecord::of(&result);
    let feasible: Vec<usize> = (3..=result.digits.len()).collect();
    let certs = divergence_certificate(&result.digits, &spec, &feasible, prec, 1 << 20)
        .map_err(|e| e.to_string())?;
    match cfg.output {
        Output::Json | Output::Csv => {
            outln!(out, "{}", to_json_line(&record));
            for c in &certs {
                outln!(out, "{}", to_json_line(&CertificateRecord::of(c)));
            }
        }
        Output::Human => {
            outln!(out, "digits: [0; {}]", record.digits.join(", "));
            outln!(out, "denominators d_n: {}", record.denominators.join(", "));
            outln!(out, "lambda_R = {}", record.lambda);
            outln!(out, "T_R ratio evidence: {}", record.ratios.join(", "));
            outln!(out, "stop: {}", record.stopped);
            for c in &certs {
                if c.feasible {
                    outln!(out,
                        "certificate n={} (d={}): in M_R = {:?}, |Q Q'| bound = {}, direct = {}",
                        c.n,
                        c.d_n,
                        c.in_m_r,
                        c.product_bound
                            .as_ref()
                            .map(|b| format_sig(b, 10))
                            .unwrap_or_default(),
                        c.product_direct
                            .as_ref()
                            .map(|b| format_sig(b, 10))
                            .unwrap_or_default(),
                    );
                } else {
                    outln!(out,
                        "certificate n={} (d={}): {}",
                        c.n,
                        c.d_n,
                        c.budget_note.clone().unwrap_or_default()
                    );
                }
            }
        }
    }
    let exhausted = matches!(result.stop, StopReason::BudgetExhausted { .. });
    if exhausted && result.digits.len() < terms {
        // requested more terms than the budget allows: reported, not an error
        eprintln!("rrcf: note: digit generation stopped early ({})", record.stopped);
    }
    Ok(0)
}

fn cmd_conjectures(
    which: u8,
    k_max: u32,
    m_max: u32,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<u8, String> {
    use rayon::prelude::*;
    if k_max == 0 || m_max == 0 {
        return Err("grid bounds must be positive".into());
    }
    match which {
        1 => {
            let pairs: Vec<(u32, u32)> = (1..=k_max)
                .flat_map(|k| (1..=m_max).map(move |m| (k, m)))
                .collect();
            let reports: Vec<_> = pairs
                .par_iter()
                .map(|&(k, m)| field_membership(k, m, 512, 1_000_000).unwrap())
                .collect();
            let mut detections = 0usize;
            let mut counterexamples = Vec::new();
            for rep in &reports {
                let predicted = (rep.k == 1 && rep.m % 5 == 0) || (rep.k == 2 && rep.m % 3 == 0);
                if rep.in_field() {
                    detections += 1;
                    if !predicted {
                        counterexamples.push((rep.k, rep.m));
                    }
                }
                if cfg.output == Output::Json {
                    outln!(out, "{}", to_json_line(&MembershipRecord::of(rep)));
                }
                if matches!(rep.detected, Detected::InField { .. }) && !predicted {
                    outln!(out,
                        "counterexample: sqrt(1 + 4 zeta_{}) detected in Q(zeta_{})",
                        rep.k, rep.m
                    );
                }
            }
            outln!(out,
                "conjecture 1 grid (k <= {k_max}, m <= {m_max}): {} pairs, {} detections, {} counterexamples",
                pairs.len(),
                detections,
                counterexamples.len()
            );
            Ok(if counterexamples.is_empty() { 0 } else { 4 })
        }
        2 => {
            let tuples = conjecture2_grid(k_max, m_max);
            let reports: Vec<_> = tuples
                .par_iter()
                .map(|&(j, k, l, m)| conjecture2_check(j, k, l, m).unwrap())
                .collect();
            let mut counterexamples = 0usize;
            for rep in &reports {
                if cfg.output == Output::Json {
                    outln!(out, "{}", to_json_line(&Conjecture2Record::of(rep)));
                }
                if !rep.holds {
                    counterexamples += 1;
                    outln!(out,
                        "counterexample at (j, k, l, m) = ({}, {}, {}, {}): {:?}",
                        rep.j, rep.k, rep.l, rep.m, rep.candidates
                    );
                }
            }
            outln!(out,
                "conjecture 2 grid (k <= {k_max}, m <= {m_max}): {} tuples, {} counterexamples",
                tuples.len(),
                counterexamples
            );
            Ok(if counterexamples == 0 { 0 } else { 4 })
        }
        3 => {
            // spot checks: two-point clusters for 5 | m, k | m, and
            // three-point families for a^m = -1 with 3 | m
            let mut cases: Vec<(RootOfUnitySpec, u32)> = Vec::new();
            for m in (5..=m_max.min(20)).step_by(5) {
                for k in 1..=k_max.min(m) {
                    if m % k == 0 {
                        cases.push((RootOfUnitySpec::new(1, k).unwrap(), m));
                    }
                }
            }
            for (k, m) in [(2u32, 3u32), (2, 9), (6, 3), (2, 12)] {
                if k <= k_max && m <= m_max {
                    cases.push((RootOfUnitySpec::new(1, k).unwrap(), m));
                }
            }
            let checks: Vec<_> = cases
                .par_iter()
                .map(|(a, m)| conjecture3_check(a, *m, 150, cfg.precision_bits))
                .collect();
            let mut mismatched = 0usize;
            for (case, chk) in cases.iter().zip(&checks) {
                match chk {
                    Ok(c) => {
                        if !c.all_matched {
                            mismatched += 1;
                        }
                        outln!(out,
                            "a = {}, m = {}: clusters {} predicted points",
                            case.0,
                            case.1,
                            if c.all_matched { "match" } else { "MISS" }
                        );
                    }
                    Err(e) => {
                        outln!(out, "a = {}, m = {}: skipped ({e})", case.0, case.1);
                    }
                }
            }
            outln!(out,
                "conjecture 3 spot checks: {} cases, {} cluster mismatches",
                cases.len(),
                mismatched
            );
            Ok(if mismatched == 0 { 0 } else { 4 })
        }
        other => Err(format!("unknown conjecture {other} (use 1, 2 or 3)")),
    }
}

fn cmd_trajectory(
    kind: Kind,
    x: &str,
    a: Option<&str>,
    n_max: i64,
    stride: u64,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<u8, String> {
    if stride == 0 {
        return Err("stride must be positive".into());
    }
    if n_max < 0 {
        return Err("n-max must be nonnegative".into());
    }
    let prec = cfg.precision_bits;
    let x_spec = RootOfUnitySpec::parse(x).map_err(|e| e.to_string())?;
    let spec = match kind {
        Kind::Schur => CfSpec::schur(x_spec.embed(prec)),
        Kind::Ka => {
            let a = a.ok_or("K_a trajectories need --a")?;
            let a_spec = RootOfUnitySpec::parse(a).map_err(|e| e.to_string())?;
            CfSpec::generalized(a_spec.embed(prec), x_spec.embed(prec))
        }
    };
    outln!(out, "{CSV_HEADER}");
    trajectory(&spec, n_max, stride, |p| {
        outln!(out, "{}", p.csv_row());
    })
    .map_err(|e| e.to_string())?;
    Ok(0)
}
