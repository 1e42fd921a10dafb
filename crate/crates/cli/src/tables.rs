//! Regeneration of the reference tables from the built-in fixtures.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use qimg_core::analysis::{
    format_decimal, frqi_outcomes, is_cbs_qubit, mcqi_outcomes, outcome_table, partial_trace,
    EXACT_TOL,
};
use qimg_core::encoders::{
    frqi_image, gqir, image_angles, mcqi_image, neqr, EncodingResult, RegisterLayout,
};
use qimg_core::fixtures::fixture;
use qimg_core::qcore::bit_string;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// FRQI angles and outcomes of the gray ramp.
    I,
    /// FRQI angles and outcomes of the alternating binary image.
    II,
    /// NEQR per-position colors.
    IV,
    /// NEQR per-qubit marginals.
    VMarginals,
    /// GQIR 2x2 per-position colors.
    VI,
    /// GQIR 2x2 per-qubit marginals.
    VIIMarginals,
    /// GQIR 1x3 per-position colors.
    VIII,
    /// GQIR 1x3 per-qubit marginals.
    IXMarginals,
    /// MCQI per-position sine outcomes of the alternating binary image.
    X,
}

impl TableId {
    pub const ALL: [TableId; 9] = [
        TableId::I,
        TableId::II,
        TableId::IV,
        TableId::VMarginals,
        TableId::VI,
        TableId::VIIMarginals,
        TableId::VIII,
        TableId::IXMarginals,
        TableId::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::IV => "IV",
            TableId::VMarginals => "V-marginals",
            TableId::VI => "VI",
            TableId::VIIMarginals => "VII-marginals",
            TableId::VIII => "VIII",
            TableId::IXMarginals => "IX-marginals",
            TableId::X => "X",
        }
    }
}

impl FromStr for TableId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = TableId::ALL.iter().map(|t| t.name()).collect();
                CliError::Validation(format!(
                    "unknown table '{s}'; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

fn fixture_image(name: &str) -> Result<qimg_core::fixtures::Fixture> {
    fixture(name).ok_or_else(|| CliError::Internal(format!("missing fixture {name}")))
}

/// `k*pi/d` with the smallest `d <= 12`, or the decimal value.
fn pi_label(angle: f64) -> String {
    if angle == 0.0 {
        return "0".into();
    }
    for d in 1..=12u32 {
        let k = angle / PI * f64::from(d);
        if (k - k.round()).abs() < 1e-12 {
            let k = k.round() as i64;
            return match (k, d) {
                (1, 1) => "pi".into(),
                (k, 1) => format!("{k}*pi"),
                (1, d) => format!("pi/{d}"),
                (k, d) => format!("{k}*pi/{d}"),
            };
        }
    }
    format_decimal(angle)
}

fn frqi_table(name: &str, note: Option<&str>) -> Result<String> {
    let fx = fixture_image(name)?;
    let enc = frqi_image(&fx.image)?;
    let angles = image_angles(&fx.image)?;
    let outcomes = frqi_outcomes(&enc.ideal, &enc.layout)?;
    let m = enc.layout.position.len();
    let mut out = String::new();
    if let Some(note) = note {
        let _ = writeln!(out, "# {note}");
    }
    out.push_str("position,pixel,angle,angle_rad,outcome\n");
    for (i, ((px, theta), o)) in fx
        .image
        .pixels()
        .iter()
        .zip(&angles)
        .zip(&outcomes)
        .enumerate()
    {
        let _ = writeln!(
            out,
            "{},{px},{},{},{}",
            bit_string(i, m),
            pi_label(*theta),
            format_decimal(*theta),
            format_decimal(*o)
        );
    }
    Ok(out)
}

fn label_qubits(layout: &RegisterLayout) -> Vec<(usize, String)> {
    let mut labels = Vec::new();
    let m = layout.position.len();
    let q = layout.color.len();
    labels.extend(
        layout
            .position
            .iter()
            .enumerate()
            .map(|(k, &qb)| (qb, format!("P{}", m - 1 - k))),
    );
    labels.extend(
        layout
            .color
            .iter()
            .enumerate()
            .map(|(k, &qb)| (qb, format!("C{}", q - 1 - k))),
    );
    labels.sort();
    labels
}

fn marginal_table(enc: &EncodingResult) -> Result<String> {
    let mut out = String::from("qubit,label,p0,p1,purity,is_cbs\n");
    for (qb, label) in label_qubits(&enc.layout) {
        let rho = partial_trace(&enc.ideal, &[qb])?;
        let d = rho.diagonal();
        let _ = writeln!(
            out,
            "{qb},{label},{},{},{},{}",
            format_decimal(d[0]),
            format_decimal(d[1]),
            format_decimal(rho.purity()),
            is_cbs_qubit(&rho, EXACT_TOL)?
        );
    }
    Ok(out)
}

fn basis_encoding(id: TableId) -> Result<EncodingResult> {
    let (name, neqr_layout) = match id {
        TableId::IV | TableId::VMarginals => ("neqr-2x2", true),
        TableId::VI | TableId::VIIMarginals => ("gqir-2x2", false),
        _ => ("gqir-1x3", false),
    };
    let fx = fixture_image(name)?;
    Ok(if neqr_layout {
        neqr(&fx.image)?
    } else {
        gqir(&fx.image, fx.axis_order)?
    })
}

fn mcqi_table() -> Result<String> {
    let fx = fixture_image("stripes-2x2")?;
    let enc = mcqi_image(&fx.image)?;
    let rows = mcqi_outcomes(&enc.ideal, &enc.layout)?;
    let m = enc.layout.position.len();
    let mut out = String::from("position,outcome_r,outcome_g,outcome_b,outcome\n");
    for (i, [r, g, b]) in rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            bit_string(i, m),
            format_decimal(*r),
            format_decimal(*g),
            format_decimal(*b),
            format_decimal((r + g + b) / 3.0)
        );
    }
    Ok(out)
}

/// CSV text of the requested table; identical bytes on every call.
pub fn render(id: TableId) -> Result<String> {
    match id {
        TableId::I => frqi_table(
            "ramp-2x2",
            Some("outcome = sin(angle)/2 at full precision; 0.25 is sometimes quoted as 0.249 after truncation"),
        ),
        TableId::II => frqi_table("stripes-2x2", None),
        TableId::IV | TableId::VI | TableId::VIII => {
            Ok(outcome_table(&basis_encoding(id)?)?.to_csv())
        }
        TableId::VMarginals | TableId::VIIMarginals | TableId::IXMarginals => {
            marginal_table(&basis_encoding(id)?)
        }
        TableId::X => mcqi_table(),
    }
}
