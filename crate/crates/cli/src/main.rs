use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use inversive_cli::scene::{run_scene_with_budget, Scene, DEFAULT_BUDGET};
use inversive_cli::svg::Figure;
use inversive_cli::verify::{self, Fault, Options, SUITES};
use inversive_cli::{parse, CliError};

#[derive(Parser)]
#[command(name = "inversive", version, about = "Exact inversive geometry over Q, F_p and Q(sqrt d)")]
struct Cli {
    /// Field descriptor: Q, Fp:7, Qsqrt:2, ...
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Search budget for zero sets and common zeros.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scene file and print each operation's exact result.
    Scene {
        path: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run seeded invariant suites, one JSON verdict per line.
    Verify {
        /// pairing, reflect-equiv, pencils, conjugate, stereo, projline, ninepoint or all
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Reflect a cycle ("a | b.. | c") or a point in a mirror cycle.
    Reflect {
        mirror: String,
        target: String,
        #[arg(long, default_value = "std 2")]
        space: String,
    },
    /// Invert a point in a circle.
    Invert {
        mirror: String,
        point: String,
        #[arg(long, default_value = "std 2")]
        space: String,
    },
    /// Classify the pencil spanned by two cycles and list its common zeros.
    Pencil {
        first: String,
        second: String,
        #[arg(long, default_value = "std 2")]
        space: String,
    },
    /// The conjugate of a point with respect to a mirror, with certificate.
    Conjugate {
        mirror: String,
        point: String,
        #[arg(long, default_value = "std 2")]
        space: String,
    },
    /// Stereographic image of a cycle in the Lorentz space.
    Stereo {
        cycle: String,
        #[arg(long, default_value = "std 2")]
        space: String,
    },
    /// Polar involution of a cycle on the line, or Desargues involution of two.
    Projline {
        cycles: Vec<String>,
        #[arg(long, default_value = "std 1")]
        space: String,
    },
    /// Nine-point circle of the triangle M, N, P.
    Ninepoint {
        #[arg(long = "M")]
        m: String,
        #[arg(long = "N")]
        n: String,
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Render a scene file as SVG.
    Render {
        scene: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let budget = cli.budget;
    let field = cli.field.as_str();
    let inline = |space: &str, decls: &[(&str, &str)], op: &str| -> Result<u8, CliError> {
        let mut text = format!("field {field}\nspace {space}\n");
        for (name, lit) in decls {
            let kind = if lit.contains('|') { "cycle" } else { "point" };
            text.push_str(&format!("{kind} {name} = {lit}\n"));
        }
        text.push_str(&format!("op {op}\n"));
        print_scene(&run_scene_with_budget(&text, budget).map_err(without_line)?)
    };
    match cli.command {
        Command::Scene { path, svg } => {
            let scene = load(&path, budget)?;
            if let Some(out) = svg {
                write_svg(&out, &Figure::from_scene(&scene)?)?;
            }
            print_scene(&scene)
        }
        Command::Render { scene, svg } => {
            write_svg(&svg, &Figure::from_scene(&load(&scene, budget)?)?)?;
            Ok(0)
        }
        Command::Verify { suite, seed, count, inject_fault } => {
            let fault = inject_fault.map(|s| s.parse::<Fault>()).transpose().map_err(CliError::Usage)?;
            let opts = Options {
                field: parse::field(field).map_err(CliError::Usage)?,
                seed,
                count,
                budget,
                fault,
            };
            run_verify(&suite, &opts)
        }
        Command::Reflect { mirror, target, space } => inline(&space, &[("m", &mirror), ("x", &target)], "reflect m x"),
        Command::Invert { mirror, point, space } => inline(&space, &[("m", &mirror)], &format!("invert m point {point}")),
        Command::Pencil { first, second, space } => inline(&space, &[("p", &first), ("q", &second)], "pencil p q"),
        Command::Conjugate { mirror, point, space } => {
            inline(&space, &[("m", &mirror)], &format!("conjugate m point {point}"))
        }
        Command::Stereo { cycle, space } => inline(&space, &[("p", &cycle)], "stereo p"),
        Command::Projline { cycles, space } => match cycles.as_slice() {
            [q] => inline(&space, &[("q", q)], "polar q"),
            [q0, q1] => inline(&space, &[("q0", q0), ("q1", q1)], "desargues q0 q1"),
            _ => Err(CliError::Usage("projline takes one cycle (polar) or two (desargues)".into())),
        },
        Command::Ninepoint { m, n, p, svg } => {
            let text = format!("field {field}\nop ninepoint {m} {n} {p}\n");
            let scene = run_scene_with_budget(&text, budget).map_err(without_line)?;
            if let Some(out) = svg {
                write_svg(&out, &Figure::from_ninepoint(&scene.figures[0])?)?;
            }
            print_scene(&scene)
        }
    }
}

/// Line numbers of generated scenes mean nothing to the user.
fn without_line(e: CliError) -> CliError {
    match e {
        CliError::Parse { message, .. } => CliError::Usage(message),
        CliError::Domain { op, source } => {
            let op = op.split(" (line").next().unwrap_or(&op).to_string();
            CliError::Domain { op, source }
        }
        other => other,
    }
}

fn load(path: &Path, budget: u64) -> Result<Scene, CliError> {
    run_scene_with_budget(&fs::read_to_string(path)?, budget)
}

fn print_scene(scene: &Scene) -> Result<u8, CliError> {
    let mut out = std::io::stdout().lock();
    for line in &scene.output {
        writeln!(out, "{line}")?;
    }
    Ok(0)
}

fn write_svg(path: &Path, fig: &Figure) -> Result<(), CliError> {
    fs::write(path, fig.to_svg())?;
    Ok(())
}

fn run_verify(suite: &str, opts: &Options) -> Result<u8, CliError> {
    let suites: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut verdicts = Vec::new();
    for s in suites {
        verdicts.extend(verify::run(s, opts)?);
    }
    verdicts.sort_by(|a, b| (&a.check, a.seed).cmp(&(&b.check, b.seed)));
    let mut out = std::io::stdout().lock();
    for v in &verdicts {
        writeln!(out, "{}", serde_json::to_string(v).expect("verdicts serialize"))?;
    }
    let failed: Vec<_> = verdicts.iter().filter(|v| !v.pass).collect();
    eprintln!(
        "{} of {} checks passed over {} (seed {}, count {})",
        verdicts.len() - failed.len(),
        verdicts.len(),
        opts.field,
        opts.seed,
        opts.count
    );
    for v in &failed {
        eprintln!("FAIL {} seed {}: {}", v.check, v.seed, v.witness.as_deref().unwrap_or(""));
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}
