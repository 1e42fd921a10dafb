//! Built-in example images, so reference tables regenerate without files.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

use crate::encoders::{AxisOrder, QuantumImage};

/// A named example image and the axis order its reference layout uses.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub image: QuantumImage,
    pub axis_order: AxisOrder,
}

/// FRQI angles of the gray ramp: `0, pi/6, pi/3, pi/2`.
pub const RAMP_ANGLES: [f64; 4] = [0.0, FRAC_PI_6, FRAC_PI_3, FRAC_PI_2];

/// FRQI angles of the alternating binary image.
pub const STRIPE_ANGLES: [f64; 4] = [0.0, FRAC_PI_2, 0.0, FRAC_PI_2];

pub const NAMES: [&str; 6] = [
    "ramp-2x2",
    "stripes-2x2",
    "neqr-2x2",
    "gqir-2x2",
    "gqir-1x3",
    "rgb-2x2",
];

fn gray(width: usize, height: usize, pixels: &[u32]) -> QuantumImage {
    QuantumImage::gray(width, height, 8, pixels.to_vec()).expect("fixture pixels are 8-bit")
}

/// Looks up a fixture by name.
pub fn fixture(name: &str) -> Option<Fixture> {
    let (summary, image, axis_order) = match name {
        "ramp-2x2" => (
            "2x2 gray ramp 0, 85, 170, 255",
            gray(2, 2, &[0, 85, 170, 255]),
            AxisOrder::Yx,
        ),
        "stripes-2x2" => (
            "2x2 alternating black and white columns",
            gray(2, 2, &[0, 255, 0, 255]),
            AxisOrder::Yx,
        ),
        "neqr-2x2" => (
            "2x2 gray image 0, 100, 200, 255",
            gray(2, 2, &[0, 100, 200, 255]),
            AxisOrder::Yx,
        ),
        "gqir-2x2" => (
            "2x2 gray image 130, 65, 147, 17",
            gray(2, 2, &[130, 65, 147, 17]),
            AxisOrder::Yx,
        ),
        "gqir-1x3" => (
            "one-row image with colors 2, 1, 3, X-major position register",
            gray(3, 1, &[2, 1, 3]),
            AxisOrder::Xy,
        ),
        "rgb-2x2" => (
            "2x2 RGB image, 2 bits per channel; pixel (0,1) is R=3 G=2 B=3",
            QuantumImage::new(2, 2, 3, 2, vec![0, 1, 2, 3, 2, 3, 1, 0, 3, 2, 3, 0])
                .expect("fixture pixels are 2-bit"),
            AxisOrder::Yx,
        ),
        _ => return None,
    };
    Some(Fixture {
        name: NAMES.iter().copied().find(|n| *n == name)?,
        summary,
        image,
        axis_order,
    })
}

pub fn all() -> Vec<Fixture> {
    NAMES.iter().filter_map(|n| fixture(n)).collect()
}
