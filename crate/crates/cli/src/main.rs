//! `cop6`: command-line front end for the 6×6 copositive cone toolkit.
//!
//! Every subcommand is a thin adapter over the library: it parses inputs,
//! calls one library operation and prints machine-readable output (JSON
//! by default, CSV with `--format csv`) on stdout, diagnostics on stderr.
//! Exit codes: 0 on success, 1 when a verdict-level confirmation fails,
//! 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cop6_core::copositivity::{certify, sample_falsify, CopositivityVerdict};
use cop6_core::generator::{
    build_case13, classify_regime, closed_form_zeros, expected_extended_supports,
    extremality_side_condition, scale_dad, Case13Variant,
};
use cop6_core::parrilo::{
    counterexample_matrix, counterexample_phi, solve_certificate, MembershipVerdict,
};
use cop6_core::zeros::{minimal_zero_search, ZeroTolerances};
use cop6_core::{components, AngleVector, SymmetricMatrixF64, Zero};

#[derive(Parser)]
#[command(
    name = "cop6",
    version,
    about = "Structure analysis of the 6x6 copositive cone"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PhiArgs {
    /// Six comma-separated angles, as multiples of pi by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    phi: Vec<f64>,

    /// Interpret --phi as raw radians instead of multiples of pi.
    #[arg(long)]
    radians: bool,
}

impl PhiArgs {
    fn angles(&self) -> Result<AngleVector<f64>, String> {
        let values: [f64; 6] = self
            .phi
            .clone()
            .try_into()
            .map_err(|v: Vec<f64>| format!("--phi needs exactly 6 values, got {}", v.len()))?;
        let angles = if self.radians {
            AngleVector::new(values)
        } else {
            AngleVector::from_pi_multiples(values)
        };
        angles.map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct TolArgs {
    /// Eigenvalue slack for PSD face acceptance.
    #[arg(long)]
    tol_psd: Option<f64>,
    /// Bound on |u'Au| for accepted zeros.
    #[arg(long)]
    tol_quad: Option<f64>,
    /// Slack below zero for entries of Au.
    #[arg(long)]
    tol_slack: Option<f64>,
    /// Strict positivity threshold for kernel vectors.
    #[arg(long)]
    tol_pos: Option<f64>,
}

impl TolArgs {
    fn tolerances(&self) -> ZeroTolerances<f64> {
        let mut tol = ZeroTolerances::default();
        if let Some(v) = self.tol_psd {
            tol.psd = v;
        }
        if let Some(v) = self.tol_quad {
            tol.quad = v;
        }
        if let Some(v) = self.tol_slack {
            tol.slack = v;
        }
        if let Some(v) = self.tol_pos {
            tol.pos = v;
        }
        tol
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a case-13 matrix with its closed-form minimal zeros.
    Gen {
        #[command(flatten)]
        phi: PhiArgs,
        /// Family variant: 13.1 or 13.2.
        #[arg(long)]
        variant: Case13Variant,
        /// Optional positive diagonal scaling d1,...,d6 (emits D A D).
        #[arg(long, value_delimiter = ',')]
        scale: Option<Vec<f64>>,
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Minimal zeros and extended supports of a matrix read from a file.
    Zeros {
        /// Path to a JSON file holding an array of n arrays of n numbers.
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Certify copositivity by simplicial partition, or refute it.
    CheckCop {
        #[arg(long)]
        matrix: String,
        /// Entrywise Gram slack of the certificate.
        #[arg(long, default_value_t = cop6_core::copositivity::DEFAULT_EPS)]
        eps: f64,
        /// Refinement budget in diameter halvings.
        #[arg(long, default_value_t = cop6_core::copositivity::DEFAULT_MAX_DEPTH)]
        depth: u32,
        /// Run the randomized falsifier first with this many samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Closure-candidate table over the 22 main components.
    Table3 {
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Names of the essential components.
    Essential {
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Level-1 SOS membership certificate for a 13.1 main-regime matrix.
    K1check {
        #[command(flatten)]
        phi: PhiArgs,
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
    /// Reproduce the unit-diagonal copositive matrix outside the level-1
    /// cone and re-verify all three confirmations.
    Counterexample {
        #[arg(long, default_value_t = cop6_core::copositivity::DEFAULT_EPS)]
        eps: f64,
        #[arg(long, default_value_t = cop6_core::copositivity::DEFAULT_MAX_DEPTH)]
        depth: u32,
        #[arg(long, visible_alias = "out", value_enum, default_value = "json")]
        format: Format,
    },
}

/// Prints a line to stdout, exiting quietly when the consumer of a pipe
/// has gone away.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut stdout = std::io::stdout().lock();
        if let Err(e) = writeln!(stdout, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed printing to stdout: {e}");
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Gen {
            phi,
            variant,
            scale,
            format,
        } => cmd_gen(&phi, variant, scale, format),
        Command::Zeros {
            matrix,
            tol,
            format,
        } => cmd_zeros(&matrix, &tol.tolerances(), format),
        Command::CheckCop {
            matrix,
            eps,
            depth,
            samples,
            seed,
            format,
        } => cmd_check_cop(&matrix, eps, depth, samples, seed, format),
        Command::Table3 { format } => cmd_table3(format),
        Command::Essential { format } => cmd_essential(format),
        Command::K1check { phi, format } => cmd_k1check(&phi, format),
        Command::Counterexample { eps, depth, format } => cmd_counterexample(eps, depth, format),
    }
}

fn load_matrix(path: &str) -> Result<SymmetricMatrixF64, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid matrix file {path}: {e}"))
}

fn print_json(value: &Value) {
    outln!("{value}");
}

fn zero_json(z: &Zero<f64>) -> Value {
    json!({ "vector": z.vector(), "support": z.support().to_vec() })
}

fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_gen(
    phi: &PhiArgs,
    variant: Case13Variant,
    scale: Option<Vec<f64>>,
    format: Format,
) -> Result<ExitCode, String> {
    let angles = phi.angles()?;
    let a = build_case13(&angles, variant).map_err(|e| e.to_string())?;
    if !extremality_side_condition(&angles) {
        eprintln!(
            "warning: angles sum to pi without two boundary equalities; \
             the generated matrix need not be extreme"
        );
    }
    let (matrix, zeros) = match scale {
        None => (a, closed_form_zeros(&angles)),
        Some(d) => {
            let x = scale_dad(&a, &d).map_err(|e| e.to_string())?;
            // Zeros of D A D are the rescaled zeros of A.
            let zeros = closed_form_zeros(&angles)
                .iter()
                .map(|z| {
                    let v: Vec<f64> = z.vector().iter().zip(&d).map(|(u, di)| u / di).collect();
                    Zero::from_vector(v).expect("rescaled zeros stay nonnegative")
                })
                .collect();
            (x, zeros)
        }
    };
    let esupps = expected_extended_supports(&angles, variant).map_err(|e| e.to_string())?;
    match format {
        Format::Json => print_json(&json!({
            "variant": variant.to_string(),
            "phi": angles.as_array(),
            "regime_is_main": classify_regime(&angles).is_main(variant),
            "matrix": serde_json::to_value(&matrix).expect("serializable"),
            "zeros": zeros.iter().map(zero_json).collect::<Vec<_>>(),
            "extended_supports": serde_json::to_value(&esupps).expect("serializable"),
        })),
        Format::Csv => {
            for row in matrix.rows() {
                outln!("{}", csv_row(&row));
            }
            outln!();
            for z in &zeros {
                outln!("{}", csv_row(z.vector()));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_zeros(path: &str, tol: &ZeroTolerances<f64>, format: Format) -> Result<ExitCode, String> {
    let a = load_matrix(path)?;
    let search = minimal_zero_search(&a, tol).map_err(|e| e.to_string())?;
    let esupps: Vec<_> = search
        .zeros
        .iter()
        .map(|z| cop6_core::zeros::extended_support(&a, z, tol))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for s in &search.degenerate_supports {
        eprintln!("warning: face {s} has a degenerate near-kernel and was skipped");
    }
    match format {
        Format::Json => print_json(&json!({
            "zeros": search.zeros.iter().map(zero_json).collect::<Vec<_>>(),
            "extended_supports": serde_json::to_value(&esupps).expect("serializable"),
            "degenerate_supports":
                search.degenerate_supports.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            outln!("support,complementary,vector");
            for (z, e) in search.zeros.iter().zip(&esupps) {
                let fmt_set = |s: cop6_core::IndexSet| {
                    s.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                outln!(
                    "{},{},{}",
                    fmt_set(e.support()),
                    fmt_set(e.complementary()),
                    z.vector()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(v: &CopositivityVerdict<f64>) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_check_cop(
    path: &str,
    eps: f64,
    depth: u32,
    samples: usize,
    seed: u64,
    format: Format,
) -> Result<ExitCode, String> {
    let a = load_matrix(path)?;
    let sampled = if samples > 0 {
        sample_falsify(&a, samples, seed)
    } else {
        None
    };
    let verdict = match &sampled {
        Some(w) if w.value < -eps => CopositivityVerdict::NotCopositive {
            witness: w.vector.clone(),
            value: w.value,
        },
        _ => certify(&a, eps, depth),
    };
    match format {
        Format::Json => print_json(&json!({
            "eps": eps,
            "max_depth": depth,
            "sampled_witness": sampled.map(|w| json!({"vector": w.vector, "value": w.value})),
            "result": verdict_json(&verdict),
        })),
        Format::Csv => match &verdict {
            CopositivityVerdict::CopositiveUpToEps { depth, simplices } => {
                outln!("copositive_up_to_eps,{depth},{simplices}")
            }
            CopositivityVerdict::NotCopositive { witness, value } => {
                outln!(
                    "not_copositive,{value},{}",
                    witness
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            }
            CopositivityVerdict::Inconclusive { depth, simplices } => {
                outln!("inconclusive,{depth},{simplices}")
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table3(format: Format) -> Result<ExitCode, String> {
    let table = components::table3();
    match format {
        Format::Json => {
            print_json(&serde_json::to_value(&table).expect("serializable"));
        }
        Format::Csv => {
            outln!("no,may_be_in_closure_of");
            for (name, ins) in &table {
                outln!("{name},\"{}\"", ins.join(","));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_essential(format: Format) -> Result<ExitCode, String> {
    let names = components::essential_set();
    match format {
        Format::Json => print_json(&serde_json::to_value(&names).expect("serializable")),
        Format::Csv => {
            for name in &names {
                outln!("{name}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn k1_json(cert: &cop6_core::K1CertificateF64) -> Value {
    let tensor: Vec<Value> = cert
        .m_tensor
        .iter()
        .map(|(&(i, j, k), &v)| json!({ "ijk": [i, j, k], "value": v }))
        .collect();
    let (min_triple, min_value) = cert
        .m_tensor
        .iter()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("comparable"))
        .map(|(&t, &v)| (t, v))
        .expect("tensor has 20 entries");
    json!({
        "verdict": serde_json::to_value(&cert.verdict).expect("serializable"),
        "det_system": cert.det_system,
        "m_tensor": tensor,
        "margins": { "min_m": min_value, "min_m_triple": [min_triple.0, min_triple.1, min_triple.2] },
        "m_matrices": cert.m.iter().map(|m| serde_json::to_value(m).expect("serializable")).collect::<Vec<_>>(),
        "lambda_matrices": cert.lambda.iter().map(|m| serde_json::to_value(m).expect("serializable")).collect::<Vec<_>>(),
    })
}

fn cmd_k1check(phi: &PhiArgs, format: Format) -> Result<ExitCode, String> {
    let angles = phi.angles()?;
    let a = build_case13(&angles, Case13Variant::V13_1).map_err(|e| e.to_string())?;
    let cert = solve_certificate(&a, &angles).map_err(|e| e.to_string())?;
    match format {
        Format::Json => print_json(&json!({
            "phi": angles.as_array(),
            "certificate": k1_json(&cert),
        })),
        Format::Csv => {
            outln!("ijk,value");
            for (&(i, j, k), &v) in &cert.m_tensor {
                outln!("{i}{j}{k},{v}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_counterexample(eps: f64, depth: u32, format: Format) -> Result<ExitCode, String> {
    let angles = counterexample_phi::<f64>();
    let a = counterexample_matrix::<f64>();

    // Confirmation 1: the zero machinery recovers the six cyclic supports
    // and their extended supports.
    let tol = ZeroTolerances::default();
    let search = minimal_zero_search(&a, &tol).map_err(|e| e.to_string())?;
    let esupps: Vec<_> = search
        .zeros
        .iter()
        .map(|z| cop6_core::zeros::extended_support(&a, z, &tol))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut expected =
        expected_extended_supports(&angles, Case13Variant::V13_1).map_err(|e| e.to_string())?;
    expected.sort();
    let zeros_ok = esupps == expected;

    // Confirmation 2: the partition oracle certifies copositivity.
    let verdict = certify(&a, eps, depth);
    let copositive_ok = matches!(verdict, CopositivityVerdict::CopositiveUpToEps { .. });

    // Confirmation 3: level-1 membership fails with m_136 below -4/3.
    let cert = solve_certificate(&a, &angles).map_err(|e| e.to_string())?;
    let m136 = cert.m_tensor[&(1, 3, 6)];
    let k1_ok = matches!(&cert.verdict, MembershipVerdict::NonMember { violating }
        if violating.contains(&(1, 3, 6)))
        && m136 < -4.0 / 3.0;

    let all_ok = zeros_ok && copositive_ok && k1_ok;
    match format {
        Format::Json => print_json(&json!({
            "phi": angles.as_array(),
            "matrix": serde_json::to_value(&a).expect("serializable"),
            "confirmations": {
                "zero_supports": zeros_ok,
                "copositivity": copositive_ok,
                "k1_nonmember": k1_ok,
            },
            "zeros": search.zeros.iter().map(zero_json).collect::<Vec<_>>(),
            "extended_supports": serde_json::to_value(&esupps).expect("serializable"),
            "copositivity": verdict_json(&verdict),
            "k1": { "m136": m136, "margin_below_bound": -4.0 / 3.0 - m136,
                    "verdict": serde_json::to_value(&cert.verdict).expect("serializable") },
            "all_confirmed": all_ok,
        })),
        Format::Csv => {
            outln!("confirmation,ok");
            outln!("zero_supports,{zeros_ok}");
            outln!("copositivity,{copositive_ok}");
            outln!("k1_nonmember,{k1_ok}");
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
