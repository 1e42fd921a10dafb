//! The `encode`, `sample` and `export` commands as plain functions.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use qimg_core::analysis::{
    fidelity, frqi_outcomes, is_cbs_register, mcqi_outcomes, outcome_table, resource_count,
    CbsVerdict, OutcomeTable, ResourceCount, EXACT_TOL,
};
use qimg_core::encoders::{
    frqi_image, gqir, mcqi_image, neqr, qbip_decode, qbip_pixel, AxisOrder, EncodingResult,
    QuantumImage, Technique,
};
use qimg_core::export::{circuit_to_json, circuit_to_qasm};
use qimg_core::fixtures::{self, fixture};
use qimg_core::imageio::{bit_plane, parse_pnm, tile};
use qimg_core::noise::{forbidden_bins, run_noisy, NoiseModel};
use qimg_core::qcore::bit_string;
use qimg_core::StateVector;
use rayon::prelude::*;
use serde::Serialize;

use crate::{to_json, CliError, Result, SCHEMA};

/// Largest statevector copied verbatim into a report.
pub const MAX_REPORTED_DIM: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageSource {
    Fixture(String),
    Path(PathBuf),
}

#[derive(Debug, Clone)]
pub struct EncodeOptions {
    pub technique: Technique,
    pub source: ImageSource,
    pub bit_plane: Option<u32>,
    /// Tile side; must be a power of two.
    pub tile: Option<usize>,
    /// Overrides the fixture's axis order (GQIR only).
    pub axis_order: Option<AxisOrder>,
    /// `(y, x)` of the pixel a QBIP encoding copies.
    pub pixel: (usize, usize),
    pub timings: bool,
}

impl EncodeOptions {
    pub fn new(technique: Technique, source: ImageSource) -> Self {
        EncodeOptions {
            technique,
            source,
            bit_plane: None,
            tile: None,
            axis_order: None,
            pixel: (0, 0),
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    JsonCircuit,
    Qasm,
}

#[derive(Debug, Clone, Serialize)]
pub struct TileInfo {
    pub side: usize,
    pub index: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageDescriptor {
    pub source: String,
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub bit_depth: u32,
    pub bit_plane: Option<u32>,
    pub tile: Option<TileInfo>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcomes {
    Basis(OutcomeTable),
    Frqi {
        values: Vec<f64>,
    },
    Mcqi {
        values: Vec<[f64; 3]>,
        aggregate: Vec<f64>,
    },
    Qbip {
        bits: String,
        decoded: Option<String>,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub encode_ms: f64,
    pub simulate_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub technique: Technique,
    pub image: ImageDescriptor,
    pub resources: ResourceCount,
    /// Fidelity of the executed circuit against the ideal state.
    pub fidelity: Option<f64>,
    pub cbs: CbsVerdict,
    pub outcomes: Option<Outcomes>,
    /// `[re, im]` pairs; omitted above [`MAX_REPORTED_DIM`] amplitudes.
    pub statevector: Option<Vec<[f64; 2]>>,
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TiledReport {
    pub schema: u32,
    pub tile_side: usize,
    pub tile_count: usize,
    pub reports: Vec<RunReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModalOutcome {
    pub bits: String,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenReport {
    /// Number of outcomes with zero exact probability.
    pub bins: usize,
    /// Forbidden outcomes that received shots.
    pub occupied: BTreeMap<String, u64>,
    pub mass: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub schema: u32,
    pub technique: Technique,
    pub image: ImageDescriptor,
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseModel,
    pub counts: BTreeMap<String, u64>,
    pub modal: Option<ModalOutcome>,
    /// The encoded basis state, when the ideal state is one.
    pub expected: Option<String>,
    pub forbidden: ForbiddenReport,
    pub total_variation: f64,
    pub timings: Option<Timings>,
}

struct Prepared {
    descriptor: ImageDescriptor,
    axis_order: AxisOrder,
    blocks: Vec<QuantumImage>,
}

fn load(source: &ImageSource) -> Result<(QuantumImage, String, AxisOrder)> {
    match source {
        ImageSource::Fixture(name) => {
            let fx = fixture(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown fixture '{name}'; expected one of {}",
                    fixtures::NAMES.join(", ")
                ))
            })?;
            Ok((fx.image, format!("fixture:{name}"), fx.axis_order))
        }
        ImageSource::Path(path) => {
            let bytes = std::fs::read(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let img = parse_pnm(&bytes)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            Ok((img, path.display().to_string(), AxisOrder::default()))
        }
    }
}

fn prepare(opts: &EncodeOptions) -> Result<Prepared> {
    let (mut img, source, fixture_order) = load(&opts.source)?;
    if let Some(k) = opts.bit_plane {
        img = bit_plane(&img, k)?;
    }
    let descriptor = ImageDescriptor {
        source,
        width: img.width(),
        height: img.height(),
        channels: img.channels(),
        bit_depth: img.bit_depth(),
        bit_plane: opts.bit_plane,
        tile: None,
    };
    let blocks = match opts.tile {
        Some(side) => tile(&img, side)?,
        None => vec![img],
    };
    Ok(Prepared {
        descriptor,
        axis_order: opts.axis_order.unwrap_or(fixture_order),
        blocks,
    })
}

fn describe(prepared: &Prepared, side: Option<usize>, index: usize) -> ImageDescriptor {
    let mut d = prepared.descriptor.clone();
    if let Some(side) = side {
        d.tile = Some(TileInfo {
            side,
            index,
            count: prepared.blocks.len(),
        });
    }
    d
}

fn select_block(prepared: &Prepared, index: usize) -> Result<&QuantumImage> {
    prepared.blocks.get(index).ok_or_else(|| {
        CliError::Validation(format!(
            "tile index {index} out of range for {} tiles",
            prepared.blocks.len()
        ))
    })
}

/// Encodes one image block with the chosen technique.
pub fn encode_block(
    technique: Technique,
    img: &QuantumImage,
    axis_order: AxisOrder,
    pixel: (usize, usize),
) -> Result<EncodingResult> {
    Ok(match technique {
        Technique::Frqi => frqi_image(img)?,
        Technique::Neqr => neqr(img)?,
        Technique::Gqir => gqir(img, axis_order)?,
        Technique::Mcqi => mcqi_image(img)?,
        Technique::Qbip => qbip_pixel(img, pixel.0, pixel.1)?,
    })
}

fn bools(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn outcomes_of(enc: &EncodingResult, state: &StateVector) -> Result<Outcomes> {
    Ok(match enc.technique {
        Technique::Frqi => Outcomes::Frqi {
            values: frqi_outcomes(state, &enc.layout)?,
        },
        Technique::Mcqi => {
            let values = mcqi_outcomes(state, &enc.layout)?;
            let aggregate = values.iter().map(|r| r.iter().sum::<f64>() / 3.0).collect();
            Outcomes::Mcqi { values, aggregate }
        }
        Technique::Neqr | Technique::Gqir => Outcomes::Basis(outcome_table(enc)?),
        Technique::Qbip => {
            let idx = is_cbs_register(&enc.ideal, 0.0)
                .basis_index
                .ok_or_else(|| {
                    CliError::Internal("QBIP ideal state is not a basis state".into())
                })?;
            Outcomes::Qbip {
                bits: bit_string(idx, enc.ideal.num_qubits()),
                decoded: qbip_decode(state).map(|b| bools(&b)),
            }
        }
    })
}

fn report_block(
    opts: &EncodeOptions,
    img: &QuantumImage,
    axis_order: AxisOrder,
    image: ImageDescriptor,
) -> Result<RunReport> {
    let t0 = Instant::now();
    let enc = encode_block(opts.technique, img, axis_order, opts.pixel)?;
    let t1 = Instant::now();
    let state = enc.circuit.run_from_zero()?;
    let t2 = Instant::now();
    let statevector = (state.dim() <= MAX_REPORTED_DIM)
        .then(|| state.amplitudes().iter().map(|z| [z.re, z.im]).collect());
    Ok(RunReport {
        schema: SCHEMA,
        technique: opts.technique,
        image,
        resources: resource_count(&enc.circuit),
        fidelity: Some(fidelity(&state, &enc.ideal)?),
        cbs: is_cbs_register(&state, EXACT_TOL),
        outcomes: Some(outcomes_of(&enc, &state)?),
        statevector,
        timings: opts.timings.then(|| Timings {
            encode_ms: (t1 - t0).as_secs_f64() * 1e3,
            simulate_ms: (t2 - t1).as_secs_f64() * 1e3,
        }),
    })
}

/// Builds run reports for the image or, with tiling, for every tile.
pub fn encode_reports(opts: &EncodeOptions) -> Result<Vec<RunReport>> {
    let prepared = prepare(opts)?;
    prepared
        .blocks
        .par_iter()
        .enumerate()
        .map(|(i, img)| {
            report_block(
                opts,
                img,
                prepared.axis_order,
                describe(&prepared, opts.tile, i),
            )
        })
        .collect()
}

/// JSON text of the `encode` command.
pub fn encode(opts: &EncodeOptions) -> Result<String> {
    let reports = encode_reports(opts)?;
    match opts.tile {
        None => to_json(&reports[0]),
        Some(side) => to_json(&TiledReport {
            schema: SCHEMA,
            tile_side: side,
            tile_count: reports.len(),
            reports,
        }),
    }
}

#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub encode: EncodeOptions,
    pub tile_index: usize,
    pub shots: u64,
    pub noise: NoiseModel,
    pub seed: u64,
}

/// Sampled histogram and forbidden-bin audit of one encoded block.
pub fn sample_report(opts: &SampleOptions) -> Result<SampleReport> {
    let prepared = prepare(&opts.encode)?;
    let img = select_block(&prepared, opts.tile_index)?;
    let t0 = Instant::now();
    let enc = encode_block(
        opts.encode.technique,
        img,
        prepared.axis_order,
        opts.encode.pixel,
    )?;
    let t1 = Instant::now();
    let hist = run_noisy(&enc.circuit, opts.noise, opts.shots, opts.seed)?;
    let t2 = Instant::now();
    let probs = enc.ideal.probabilities();
    let forbidden = forbidden_bins(&probs);
    let n = enc.ideal.num_qubits();
    let occupied = forbidden
        .iter()
        .map(|&i| (bit_string(i, n), hist.count_index(i)))
        .filter(|&(_, c)| c > 0)
        .collect();
    Ok(SampleReport {
        schema: SCHEMA,
        technique: opts.encode.technique,
        image: describe(&prepared, opts.encode.tile, opts.tile_index),
        shots: opts.shots,
        seed: opts.seed,
        noise: opts.noise,
        modal: hist.modal().map(|(bits, count)| ModalOutcome {
            bits: bits.to_string(),
            count,
        }),
        expected: is_cbs_register(&enc.ideal, EXACT_TOL)
            .basis_index
            .map(|i| bit_string(i, n)),
        forbidden: ForbiddenReport {
            bins: forbidden.len(),
            occupied,
            mass: hist.forbidden_mass(&probs),
        },
        total_variation: hist.total_variation(&probs),
        counts: hist.counts,
        timings: opts.encode.timings.then(|| Timings {
            encode_ms: (t1 - t0).as_secs_f64() * 1e3,
            simulate_ms: (t2 - t1).as_secs_f64() * 1e3,
        }),
    })
}

/// JSON text of the `sample` command.
pub fn sample(opts: &SampleOptions) -> Result<String> {
    to_json(&sample_report(opts)?)
}

/// Histogram of the `sample` command as `bits,count` CSV.
pub fn sample_csv(opts: &SampleOptions) -> Result<String> {
    let report = sample_report(opts)?;
    let mut out = String::from("bits,count\n");
    for (bits, c) in &report.counts {
        out.push_str(&format!("{bits},{c}\n"));
    }
    Ok(out)
}

/// Circuit text of the `export` command.
pub fn export(opts: &EncodeOptions, tile_index: usize, format: ExportFormat) -> Result<String> {
    let prepared = prepare(opts)?;
    let img = select_block(&prepared, tile_index)?;
    let enc = encode_block(opts.technique, img, prepared.axis_order, opts.pixel)?;
    Ok(match format {
        ExportFormat::JsonCircuit => circuit_to_json(&enc.circuit) + "\n",
        ExportFormat::Qasm => circuit_to_qasm(&enc.circuit),
    })
}
