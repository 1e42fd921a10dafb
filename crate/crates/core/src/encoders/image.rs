use crate::error::{Error, Result};

/// Classical raster image: row-major pixels, channel samples interleaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumImage {
    width: usize,
    height: usize,
    channels: usize,
    bit_depth: u32,
    pixels: Vec<u32>,
}

/// Widest sample supported (matches 16-bit PNM).
pub const MAX_BIT_DEPTH: u32 = 16;

impl QuantumImage {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        bit_depth: u32,
        pixels: Vec<u32>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::validation(format!(
                "image dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::validation(format!(
                "channel count must be 1 or 3, got {channels}"
            )));
        }
        if bit_depth == 0 || bit_depth > MAX_BIT_DEPTH {
            return Err(Error::validation(format!(
                "bit depth must be in 1..={MAX_BIT_DEPTH}, got {bit_depth}"
            )));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|v| v.checked_mul(channels))
            .ok_or_else(|| Error::validation("image dimensions overflow"))?;
        if pixels.len() != expected {
            return Err(Error::validation(format!(
                "expected {expected} samples, got {}",
                pixels.len()
            )));
        }
        let limit = 1u32 << bit_depth;
        if let Some((i, &p)) = pixels.iter().enumerate().find(|(_, &p)| p >= limit) {
            return Err(Error::validation(format!(
                "sample {i} = {p} does not fit in {bit_depth} bits"
            )));
        }
        Ok(QuantumImage {
            width,
            height,
            channels,
            bit_depth,
            pixels,
        })
    }

    /// Single-channel image.
    pub fn gray(width: usize, height: usize, bit_depth: u32, pixels: Vec<u32>) -> Result<Self> {
        Self::new(width, height, 1, bit_depth, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn bit_depth(&self) -> u32 {
        self.bit_depth
    }

    /// Largest representable sample, `2^q - 1`.
    pub fn max_value(&self) -> u32 {
        (1u32 << self.bit_depth) - 1
    }

    pub fn pixels(&self) -> &[u32] {
        &self.pixels
    }

    pub fn sample(&self, y: usize, x: usize, channel: usize) -> u32 {
        self.pixels[(y * self.width + x) * self.channels + channel]
    }

    pub fn is_gray(&self) -> bool {
        self.channels == 1
    }

    /// Side length `2^n` and `n` when the image is a square power of two.
    pub fn square_power_of_two(&self) -> Option<(usize, usize)> {
        (self.width == self.height && self.width.is_power_of_two())
            .then(|| (self.width, self.width.trailing_zeros() as usize))
    }

    /// Per-pixel color with all channels concatenated MSB-first (R, G, B),
    /// and the total bit width.
    pub fn packed_colors(&self) -> (Vec<u64>, usize) {
        let q = self.bit_depth as usize;
        let colors = self
            .pixels
            .chunks(self.channels)
            .map(|px| px.iter().fold(0u64, |acc, &v| (acc << q) | u64::from(v)))
            .collect();
        (colors, q * self.channels)
    }
}
