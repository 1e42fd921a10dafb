use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qimg_cli::run::{self, EncodeOptions, ExportFormat, ImageSource, SampleOptions};
use qimg_cli::tables::{self, TableId};
use qimg_cli::{CliError, Result};
use qimg_core::encoders::{AxisOrder, Technique};
use qimg_core::noise::{NoiseModel, DEFAULT_SHOTS};

/// Encode images into quantum registers, audit the states, sample them
/// under noise, and regenerate reference tables.
#[derive(Parser, Debug)]
#[command(name = "qimg", version)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode an image and report resources, fidelity and CBS verdict as JSON.
    Encode {
        #[command(flatten)]
        image: ImageArgs,
    },
    /// Print a reference table as CSV.
    Tables {
        /// I, II, IV, V-marginals, VI, VII-marginals, VIII, IX-marginals or X.
        #[arg(long, value_parser = parse_table)]
        which: TableId,
    },
    /// Sample the encoded circuit and report the histogram as JSON.
    Sample {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, default_value_t = 0)]
        tile_index: usize,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        /// Readout bit-flip probability.
        #[arg(long, default_value_t = 0.0)]
        readout: f64,
        /// Depolarizing probability per gate.
        #[arg(long, default_value_t = 0.0)]
        depol: f64,
        #[arg(long, env = "QIMG_SEED", default_value_t = 0)]
        seed: u64,
        /// Print only the histogram, as `bits,count` CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Print the encoding circuit as JSON gates or OpenQASM 2.0.
    Export {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, default_value_t = 0)]
        tile_index: usize,
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct ImageArgs {
    /// PNM image (P2, P3, P5 or P6).
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    image: Option<PathBuf>,
    /// Use a built-in image instead of a file.
    #[arg(long)]
    fixture: Option<String>,
    /// frqi, neqr, gqir, mcqi or qbip.
    #[arg(long, short)]
    technique: Technique,
    /// Encode only bit plane k (k = q-1 is the MSB).
    #[arg(long)]
    bit_plane: Option<u32>,
    /// Split into square tiles of this power-of-two side.
    #[arg(long)]
    tile: Option<usize>,
    /// GQIR position register order; defaults to the fixture's or yx.
    #[arg(long, value_enum)]
    axis_order: Option<Axis>,
    /// QBIP pixel as Y,X.
    #[arg(long, value_parser = parse_pixel, default_value = "0,0")]
    pixel: (usize, usize),
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Axis {
    Yx,
    Xy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    JsonCircuit,
    Qasm,
}

fn parse_table(s: &str) -> std::result::Result<TableId, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_pixel(s: &str) -> std::result::Result<(usize, usize), String> {
    let (y, x) = s.split_once(',').ok_or("expected Y,X")?;
    let n = |v: &str| v.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((n(y)?, n(x)?))
}

impl ImageArgs {
    fn options(&self) -> EncodeOptions {
        let source = match (&self.fixture, &self.image) {
            (Some(name), _) => ImageSource::Fixture(name.clone()),
            (None, Some(path)) => ImageSource::Path(path.clone()),
            (None, None) => unreachable!("clap requires an image or a fixture"),
        };
        EncodeOptions {
            bit_plane: self.bit_plane,
            tile: self.tile,
            axis_order: self.axis_order.map(|a| match a {
                Axis::Yx => AxisOrder::Yx,
                Axis::Xy => AxisOrder::Xy,
            }),
            pixel: self.pixel,
            timings: self.timings,
            ..EncodeOptions::new(self.technique, source)
        }
    }
}

fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Encode { image } => run::encode(&image.options()),
        Command::Tables { which } => tables::render(*which),
        Command::Sample {
            image,
            tile_index,
            shots,
            readout,
            depol,
            seed,
            csv,
        } => {
            let opts = SampleOptions {
                encode: image.options(),
                tile_index: *tile_index,
                shots: *shots,
                noise: NoiseModel::new(*readout, *depol)?,
                seed: *seed,
            };
            if *csv {
                run::sample_csv(&opts)
            } else {
                run::sample(&opts)
            }
        }
        Command::Export {
            image,
            tile_index,
            format,
        } => run::export(
            &image.options(),
            *tile_index,
            match format {
                Format::JsonCircuit => ExportFormat::JsonCircuit,
                Format::Qasm => ExportFormat::Qasm,
            },
        ),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command).and_then(|text| emit(&text, cli.output.as_ref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qimg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
