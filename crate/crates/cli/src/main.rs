mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dgmorse::catalog;
use dgmorse::scene::{AnyScene, SceneDoc, SceneError};
use dgmorse::spectral::{self, FieldChoice, Reduction};
use dgmorse::with_scene;

use commands::{Failure, Run};
use table::{Format, Output};

/// Morse complexes with DG coefficients: homology, products and spectral pages.
#[derive(Parser, Debug)]
#[command(name = "dgmorse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scene file (JSON).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "catalog")]
    scene: Option<PathBuf>,

    /// Built-in scene: circle-path, circle-free-loop, torus-free-loop or sphere-path(k).
    #[arg(long, global = true, value_name = "NAME")]
    catalog: Option<String>,

    /// Degree window of generated algebras and modules.
    #[arg(long, global = true, value_name = "N")]
    window: Option<usize>,

    /// Field for spectral pages: q, fp:<p> or generic-laurent.
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<FieldChoice>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    out: Format,

    /// Seed for fuzz.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Run every validator and chain-level contract.
    Check,
    /// Homology groups with generators.
    Homology,
    /// Loop product multiplication tables.
    Product,
    /// Pages of the spectral sequence of the Morse filtration.
    Ss,
    /// Künneth maps and dimension counts.
    Kunneth,
    /// Chain maps, their contracts and induced maps on homology.
    Maps,
    /// Randomized perturbation and corruption trials.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Print the scene document.
    Export,
}

fn load(cli: &Cli) -> Result<SceneDoc, Failure> {
    let doc = match (&cli.scene, &cli.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let doc = SceneDoc::from_json(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            match cli.window {
                Some(n) => doc.with_window(n),
                None => doc,
            }
        }
        (None, Some(name)) => catalog::doc(name, cli.window.unwrap_or(catalog::DEFAULT_WINDOW)).map_err(|e| Failure::Usage(e.to_string()))?,
        _ => return Err(Failure::Usage("one of --scene or --catalog is required".into())),
    };
    Ok(doc)
}

fn ss(cli: &Cli, scene: &AnyScene) -> Result<Run, Failure> {
    let plan = spectral::plan(&scene.ring_name(), cli.field)?;
    match (scene, plan) {
        (AnyScene::Integers(s), Reduction::ModP(p)) => commands::ss(s, &format!("F{p}"), |c| spectral::reduce_mod_p(c, p)),
        (_, Reduction::ModP(p)) => Err(Failure::Usage(format!("fp:{p} reduction applies only to integer scenes"))),
        (_, Reduction::FractionField(f)) => with_scene!(scene, s => commands::ss(s, &f, |c| Ok(c.clone()))),
    }
}

fn run(cli: &Cli) -> Result<Run, Failure> {
    let doc = load(cli)?;
    if cli.command == Command::Export {
        return Ok(Run { out: Output { tables: vec![], notes: vec![doc.to_json()] }, ok: true });
    }
    let scene = match AnyScene::load(doc) {
        Ok(s) => s,
        Err(SceneError::Validation(reports)) => {
            let mut out = commands::reports_output(&reports);
            out.notes.push("scene failed validation".into());
            return Ok(Run { out, ok: false });
        }
        Err(e) => return Err(Failure::Data(e.to_string())),
    };
    match cli.command {
        Command::Check => Ok(with_scene!(&scene, s => commands::check(s))),
        Command::Homology => with_scene!(&scene, s => commands::homology(s)),
        Command::Product => with_scene!(&scene, s => commands::product(s)),
        Command::Ss => ss(cli, &scene),
        Command::Kunneth => with_scene!(&scene, s => commands::kunneth(s)),
        Command::Maps => with_scene!(&scene, s => commands::maps(s)),
        Command::Fuzz { trials } => with_scene!(&scene, s => commands::fuzz(s, trials, cli.seed)),
        Command::Export => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let text = if cli.command == Command::Export { r.out.notes.concat() + "\n" } else { r.out.render(cli.out) };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(e)) => {
            eprintln!("dgmorse: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Data(e)) => {
            eprintln!("dgmorse: {e}");
            ExitCode::from(1)
        }
    }
}
