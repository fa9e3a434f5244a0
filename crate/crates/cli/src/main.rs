use clap::{Args, Parser, Subcommand};
use poincare_cli::commands::{
    centers_sheet, charges_sheet, compute_charges, disc_sheet, parse_event, parse_velocity, radii_sheet,
    ObserverChoice, Overrides, SliceArg,
};
use poincare_cli::constants::PhysicalConstants;
use poincare_cli::report::Format;
use poincare_cli::verify::{self, Fault, Suite, VerifyConfig};
use poincare_cli::{CliError, CliResult, Scene};
use std::path::PathBuf;
use std::process::ExitCode;

/// Conserved Poincaré charges, mass centres and Møller radii.
#[derive(Parser)]
#[command(name = "poincare", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,

    /// Fail with exit code 4 when the quadrature error estimate exceeds this.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[arg(long, global = true)]
    points_per_axis: Option<usize>,

    /// ε_0123 sign, overriding the scene.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_orientation)]
    orientation: Option<i8>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate P and J[z] over a slice.
    Charges(SceneArgs),
    /// Mass-centre lines, spin and orbital parts per observer.
    Centers {
        #[command(flatten)]
        scene: SceneArgs,
        /// Observer 3-velocity `vx,vy,vz`; repeatable.
        #[arg(long, conflicts_with = "rest")]
        observer: Vec<String>,
        /// Use the body's rest frame.
        #[arg(long)]
        rest: bool,
    },
    /// Mass centres of boosted observers on the rest-frame slice.
    Disc {
        #[command(flatten)]
        scene: SceneArgs,
        /// Evenly spaced directions in the spin equator, instead of the
        /// default 24-direction grid.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Møller radii of the proton and of catalogued rigid bodies, in SI units.
    RadiiTable {
        /// Constants file; defaults to $POINCARE_CONSTANTS, then built-ins.
        #[arg(long)]
        constants: Option<PathBuf>,
    },
    /// Run the randomized identity checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Feed a deliberately broken input to the relevant check.
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Args)]
struct SceneArgs {
    scene: PathBuf,
    /// `sigma` or `vx,vy,vz,sigma`; the slice Σ(u, σ) through `--z`.
    #[arg(long, allow_hyphen_values = true)]
    slice: Option<String>,
    /// Reference event `t,x,y,z`; defaults to the scene origin.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
}

impl SceneArgs {
    fn resolve(&self) -> CliResult<(Scene, SliceArg, Option<poincare_charges::Event>)> {
        let scene = Scene::load(&self.scene)?;
        let slice = self.slice.as_deref().map(SliceArg::parse).transpose()?.unwrap_or_default();
        let z = self.z.as_deref().map(parse_event).transpose()?;
        Ok((scene, slice, z))
    }
}

fn parse_orientation(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("orientation must be +1 or -1, got `{s}`")),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let o = Overrides { points_per_axis: cli.points_per_axis, tolerance: cli.tolerance, orientation: cli.orientation };
    let sheet = match &cli.command {
        Command::Charges(args) => {
            let (scene, slice, z) = args.resolve()?;
            charges_sheet(&compute_charges(&scene, slice, z, &o)?)
        }
        Command::Centers { scene, observer, rest } => {
            let (scene, slice, z) = scene.resolve()?;
            let choice = if *rest {
                ObserverChoice::Rest
            } else if observer.is_empty() {
                ObserverChoice::Scene
            } else {
                ObserverChoice::Velocities(observer.iter().map(|s| parse_velocity(s)).collect::<CliResult<_>>()?)
            };
            centers_sheet(&scene, slice, z, &choice, &o)?
        }
        Command::Disc { scene, samples } => {
            let (scene, slice, z) = scene.resolve()?;
            disc_sheet(&scene, slice, z, *samples, &o)?
        }
        Command::RadiiTable { constants } => radii_sheet(&PhysicalConstants::resolve(constants.as_deref())?),
        Command::Verify { suite, seed, samples, inject_fault } => {
            let cfg = VerifyConfig { suite: *suite, seed: *seed, samples: *samples, fault: *inject_fault };
            let results = verify::run(&cfg);
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            println!("{} checks, {} failed (seed {})", results.len(), failed, seed);
            return if failed == 0 { Ok(()) } else { Err(CliError::VerifyFailed(failed)) };
        }
    };
    print!("{}", sheet.render(cli.format, cli.precision));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
