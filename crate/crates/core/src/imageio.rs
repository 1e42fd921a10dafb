//! Netpbm (P2/P3/P5/P6) I/O, tiling into encoder-sized blocks and bit planes.

use std::fmt;

use crate::encoders::QuantumImage;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PnmFormat {
    /// ASCII graymap.
    P2,
    /// ASCII pixmap.
    P3,
    /// Binary graymap.
    P5,
    /// Binary pixmap.
    P6,
}

impl PnmFormat {
    pub const ALL: [PnmFormat; 4] = [PnmFormat::P2, PnmFormat::P3, PnmFormat::P5, PnmFormat::P6];

    fn from_magic(magic: &[u8]) -> Option<Self> {
        match magic {
            b"P2" => Some(PnmFormat::P2),
            b"P3" => Some(PnmFormat::P3),
            b"P5" => Some(PnmFormat::P5),
            b"P6" => Some(PnmFormat::P6),
            _ => None,
        }
    }

    pub fn channels(self) -> usize {
        match self {
            PnmFormat::P2 | PnmFormat::P5 => 1,
            PnmFormat::P3 | PnmFormat::P6 => 3,
        }
    }

    pub fn is_ascii(self) -> bool {
        matches!(self, PnmFormat::P2 | PnmFormat::P3)
    }

    /// Format with the given channel count and encoding.
    pub fn for_channels(channels: usize, ascii: bool) -> Result<Self> {
        match (channels, ascii) {
            (1, true) => Ok(PnmFormat::P2),
            (3, true) => Ok(PnmFormat::P3),
            (1, false) => Ok(PnmFormat::P5),
            (3, false) => Ok(PnmFormat::P6),
            _ => Err(Error::validation(format!(
                "no PNM format for {channels} channels"
            ))),
        }
    }
}

impl fmt::Display for PnmFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Decoded PNM raster, samples row-major with channels interleaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnmImage {
    pub format: PnmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or_else(|| Error::parse(start, format!("{what} overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.bytes.get(self.pos) {
                None => Error::parse(start, format!("truncated: expected {what}")),
                Some(&b) => Error::parse(start, format!("expected {what}, found byte 0x{b:02x}")),
            });
        }
        Ok(value)
    }
}

impl PnmImage {
    pub fn channels(&self) -> usize {
        self.format.channels()
    }

    /// Parses one PNM image. Trailing bytes after the raster are ignored.
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let format = bytes
            .get(..2)
            .and_then(PnmFormat::from_magic)
            .ok_or_else(|| Error::parse(0, "bad magic: expected P2, P3, P5 or P6"))?;
        let mut cur = Cursor { bytes, pos: 2 };
        match bytes.get(2) {
            Some(b) if b.is_ascii_whitespace() || *b == b'#' => {}
            None => return Err(Error::parse(2, "truncated header")),
            Some(_) => return Err(Error::parse(2, "expected whitespace after magic")),
        }

        let width_at = cur.pos;
        let width = cur.number("width")?;
        let height = cur.number("height")?;
        if width == 0 || height == 0 {
            return Err(Error::parse(width_at, "image dimensions must be nonzero"));
        }
        cur.skip_space_and_comments();
        let maxval_at = cur.pos;
        let maxval = cur.number("maxval")?;
        if maxval == 0 || maxval > 65535 {
            return Err(Error::parse(
                maxval_at,
                format!("maxval {maxval} outside 1..=65535"),
            ));
        }
        let maxval = maxval as u16;
        let count = width
            .checked_mul(height)
            .and_then(|v| v.checked_mul(format.channels() as u64))
            .and_then(|v| usize::try_from(v).ok())
            .ok_or_else(|| Error::parse(width_at, "image dimensions overflow"))?;

        let samples = if format.is_ascii() {
            // every ASCII sample needs at least one byte
            if count > bytes.len() - cur.pos {
                return Err(Error::parse(
                    bytes.len(),
                    format!("truncated: {count} samples cannot fit in the payload"),
                ));
            }
            let mut samples = Vec::with_capacity(count);
            for _ in 0..count {
                let at = {
                    cur.skip_space_and_comments();
                    cur.pos
                };
                let v = cur.number("sample")?;
                if v > u64::from(maxval) {
                    return Err(Error::parse(
                        at,
                        format!("sample {v} exceeds maxval {maxval}"),
                    ));
                }
                samples.push(v as u16);
            }
            samples
        } else {
            match bytes.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                None => return Err(Error::parse(cur.pos, "truncated: missing raster")),
                Some(_) => return Err(Error::parse(cur.pos, "expected whitespace after maxval")),
            }
            let width_bytes = if maxval > 255 { 2 } else { 1 };
            let need = count
                .checked_mul(width_bytes)
                .ok_or_else(|| Error::parse(width_at, "image dimensions overflow"))?;
            let end = cur.pos.saturating_add(need);
            let raster = bytes.get(cur.pos..end).ok_or_else(|| {
                Error::parse(
                    bytes.len(),
                    format!(
                        "truncated raster: need {need} bytes, have {}",
                        bytes.len() - cur.pos
                    ),
                )
            })?;
            let samples: Vec<u16> = if width_bytes == 2 {
                raster
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]))
                    .collect()
            } else {
                raster.iter().map(|&b| u16::from(b)).collect()
            };
            if let Some(i) = samples.iter().position(|&s| s > maxval) {
                return Err(Error::parse(
                    cur.pos + i * width_bytes,
                    format!("sample {} exceeds maxval {maxval}", samples[i]),
                ));
            }
            samples
        };

        Ok(PnmImage {
            format,
            width: width as usize,
            height: height as usize,
            maxval,
            samples,
        })
    }

    /// Canonical serialization: single-space separated header, one raster
    /// row per line for the ASCII variants, 16-bit big-endian samples when
    /// `maxval > 255`.
    pub fn encode(&self) -> Vec<u8> {
        let magic = match self.format {
            PnmFormat::P2 => "P2",
            PnmFormat::P3 => "P3",
            PnmFormat::P5 => "P5",
            PnmFormat::P6 => "P6",
        };
        let mut out =
            format!("{magic}\n{} {}\n{}\n", self.width, self.height, self.maxval).into_bytes();
        if self.format.is_ascii() {
            let row = self.width * self.channels();
            for line in self.samples.chunks(row.max(1)) {
                let text: Vec<String> = line.iter().map(u16::to_string).collect();
                out.extend_from_slice(text.join(" ").as_bytes());
                out.push(b'\n');
            }
        } else if self.maxval > 255 {
            for s in &self.samples {
                out.extend_from_slice(&s.to_be_bytes());
            }
        } else {
            out.extend(self.samples.iter().map(|&s| s as u8));
        }
        out
    }

    /// Bit depth `q = ceil(log2(maxval + 1))`.
    pub fn bit_depth(&self) -> u32 {
        16 - self.maxval.leading_zeros()
    }

    pub fn to_quantum_image(&self) -> Result<QuantumImage> {
        QuantumImage::new(
            self.width,
            self.height,
            self.channels(),
            self.bit_depth(),
            self.samples.iter().map(|&s| u32::from(s)).collect(),
        )
    }

    /// PNM carrier of `img` with `maxval = 2^q - 1`.
    pub fn from_quantum_image(img: &QuantumImage, ascii: bool) -> Result<Self> {
        Ok(PnmImage {
            format: PnmFormat::for_channels(img.channels(), ascii)?,
            width: img.width(),
            height: img.height(),
            maxval: img.max_value() as u16,
            samples: img.pixels().iter().map(|&p| p as u16).collect(),
        })
    }
}

/// Parses PNM bytes straight into an encoder image.
pub fn parse_pnm(bytes: &[u8]) -> Result<QuantumImage> {
    PnmImage::parse(bytes)?.to_quantum_image()
}

/// Number of `side x side` blocks covering a `width x height` image.
pub fn tile_count(width: usize, height: usize, side: usize) -> usize {
    width.div_ceil(side) * height.div_ceil(side)
}

fn check_side(side: usize) -> Result<()> {
    if side == 0 || !side.is_power_of_two() {
        return Err(Error::validation(format!(
            "tile side {side} is not a power of two"
        )));
    }
    Ok(())
}

/// Splits `img` into row-major `side x side` blocks, zero-padding the
/// right and bottom remainders.
pub fn tile(img: &QuantumImage, side: usize) -> Result<Vec<QuantumImage>> {
    check_side(side)?;
    let ch = img.channels();
    let (bw, bh) = (img.width().div_ceil(side), img.height().div_ceil(side));
    let mut blocks = Vec::with_capacity(bw * bh);
    for by in 0..bh {
        for bx in 0..bw {
            let mut px = vec![0u32; side * side * ch];
            for dy in 0..side {
                let y = by * side + dy;
                if y >= img.height() {
                    break;
                }
                for dx in 0..side {
                    let x = bx * side + dx;
                    if x >= img.width() {
                        break;
                    }
                    for c in 0..ch {
                        px[(dy * side + dx) * ch + c] = img.sample(y, x, c);
                    }
                }
            }
            blocks.push(QuantumImage::new(side, side, ch, img.bit_depth(), px)?);
        }
    }
    Ok(blocks)
}

/// Inverse of [`tile`]: reassembles blocks and drops the padding.
pub fn assemble_tiles(
    tiles: &[QuantumImage],
    side: usize,
    width: usize,
    height: usize,
) -> Result<QuantumImage> {
    check_side(side)?;
    if tiles.len() != tile_count(width, height, side) {
        return Err(Error::validation(format!(
            "{} tiles do not cover a {width}x{height} image",
            tiles.len()
        )));
    }
    let first = tiles
        .first()
        .ok_or_else(|| Error::validation("no tiles to assemble"))?;
    let (ch, q) = (first.channels(), first.bit_depth());
    let bw = width.div_ceil(side);
    let mut px = vec![0u32; width * height * ch];
    for (t, block) in tiles.iter().enumerate() {
        if block.width() != side || block.height() != side || block.channels() != ch {
            return Err(Error::validation(format!("tile {t} has the wrong shape")));
        }
        let (by, bx) = (t / bw, t % bw);
        for dy in 0..side {
            for dx in 0..side {
                let (y, x) = (by * side + dy, bx * side + dx);
                if y < height && x < width {
                    for c in 0..ch {
                        px[(y * width + x) * ch + c] = block.sample(dy, dx, c);
                    }
                }
            }
        }
    }
    QuantumImage::new(width, height, ch, q, px)
}

/// Binary image of bit `k` of every sample (`k = q - 1` is the MSB plane).
pub fn bit_plane(img: &QuantumImage, k: u32) -> Result<QuantumImage> {
    if k >= img.bit_depth() {
        return Err(Error::validation(format!(
            "bit plane {k} out of range for {}-bit samples",
            img.bit_depth()
        )));
    }
    QuantumImage::new(
        img.width(),
        img.height(),
        img.channels(),
        1,
        img.pixels().iter().map(|&p| (p >> k) & 1).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ascii_gray() {
        let img = parse_pnm(b"P2 2 2 255 0 85 170 255").unwrap();
        assert_eq!((img.width(), img.height(), img.bit_depth()), (2, 2, 8));
        assert_eq!(img.pixels(), &[0, 85, 170, 255]);
    }

    #[test]
    fn parses_ascii_rgb_with_comments() {
        let img = parse_pnm(b"P3\n# two bits per channel\n1 1\n3\n3 2 3\n").unwrap();
        assert_eq!((img.channels(), img.bit_depth()), (3, 2));
        assert_eq!(img.pixels(), &[0b11, 0b10, 0b11]);
    }

    #[test]
    fn truncation_is_reported() {
        let err = parse_pnm(b"P2 1 1 255").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_pnm(b"P5 2 1 255\n\x01").unwrap_err();
        assert!(err.to_string().contains("truncated"), "{err}");
    }

    #[test]
    fn header_errors_carry_offsets() {
        assert_eq!(
            parse_pnm(b"P7 1 1 1 0"),
            Err(Error::parse(0, "bad magic: expected P2, P3, P5 or P6"))
        );
        match parse_pnm(b"P2 1 1 0 0") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_pnm(b"P2 1 1 3 4").is_err());
        assert!(parse_pnm(b"P2 0 1 3").is_err());
        assert!(parse_pnm(b"P2 99999999999999999999999 1 3").is_err());
        assert!(parse_pnm(b"P2x1 1 3 0").is_err());
        assert!(parse_pnm(b"P5 4294967296 4294967296 65535\n").is_err());
    }

    #[test]
    fn sixteen_bit_binary_is_big_endian() {
        let img = PnmImage::parse(b"P5 2 1 65535\n\x01\x02\xff\xfe").unwrap();
        assert_eq!(img.samples, vec![0x0102, 0xfffe]);
        assert_eq!(img.bit_depth(), 16);
        assert_eq!(PnmImage::parse(&img.encode()).unwrap(), img);
    }

    #[test]
    fn bit_depth_from_maxval() {
        for (maxval, q) in [
            (1u16, 1),
            (3, 2),
            (4, 3),
            (100, 7),
            (255, 8),
            (256, 9),
            (65535, 16),
        ] {
            let img = PnmImage {
                format: PnmFormat::P2,
                width: 1,
                height: 1,
                maxval,
                samples: vec![0],
            };
            assert_eq!(img.bit_depth(), q, "maxval {maxval}");
        }
    }

    #[test]
    fn tiling_examples() {
        let img = QuantumImage::gray(4, 4, 8, (0..16).collect()).unwrap();
        let t = tile(&img, 2).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[1].pixels(), &[2, 3, 6, 7]);

        let img = QuantumImage::gray(3, 3, 8, (1..=9).collect()).unwrap();
        let t = tile(&img, 2).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[3].pixels(), &[9, 0, 0, 0]);
        assert_eq!(assemble_tiles(&t, 2, 3, 3).unwrap(), img);
        assert!(tile(&img, 3).is_err());
    }

    #[test]
    fn full_hd_group_count() {
        assert_eq!(tile_count(1920, 1080, 2) * 3, 1_555_200);
    }

    #[test]
    fn bit_plane_examples() {
        let img = QuantumImage::gray(2, 2, 8, vec![0, 100, 200, 255]).unwrap();
        assert_eq!(bit_plane(&img, 7).unwrap().pixels(), &[0, 0, 1, 1]);
        let img = QuantumImage::gray(2, 2, 8, vec![0, 85, 170, 255]).unwrap();
        assert_eq!(bit_plane(&img, 0).unwrap().pixels(), &[0, 1, 0, 1]);
        let bin = QuantumImage::gray(2, 1, 1, vec![1, 0]).unwrap();
        assert_eq!(bit_plane(&bin, 0).unwrap(), bin);
        assert!(bit_plane(&img, 8).is_err());
    }
}
