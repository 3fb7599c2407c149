//! Frame ingestion and image-space data types.
//!
//! Frames are 8-bit RGB throughout; the math side works on real-valued
//! images generic over the scalar. [`load_sequence`] reads a directory of
//! PNG/JPEG/BMP frames in natural-sort order, [`build_data_matrix`] turns a
//! sequence into the stacked snapshot matrix, and the rest of the module
//! handles the way back from a selected mode to a normalized color image.

mod normalize;
mod reinhard;
mod stacking;
mod stat_mode;

pub use normalize::{normalize_mode_image, Normalization};
pub use reinhard::{lalphabeta_from_rgb_unit, lalphabeta_stats, lalphabeta_to_rgb_unit,
    reinhard_transfer, ColorStats, LMS_LOG_CLAMP, STD_FLOOR};
pub use stacking::{build_data_matrix, realize_mode_vector, unstack_vector, ModeRealization};
pub use stat_mode::statistical_mode_image;

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use image::RgbImage;

use crate::error::{Error, Result};
use crate::scalar::{from_u8, from_usize, quantize_unit, Real};

/// An ordered sequence of same-sized 8-bit RGB frames.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    frames: Vec<RgbImage>,
    source_names: Vec<String>,
}

impl FrameSequence {
    /// Wrap frames, checking that at least one exists and all share their
    /// dimensions.
    pub fn new(frames: Vec<RgbImage>, source_names: Vec<String>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::SequenceTooShort { needed: 1, got: 0 });
        }
        if source_names.len() != frames.len() {
            return Err(Error::DimensionMismatch(
                "one source name per frame required".into(),
            ));
        }
        let (w, h) = frames[0].dimensions();
        let offenders: Vec<&str> = frames
            .iter()
            .zip(&source_names)
            .filter(|(f, _)| f.dimensions() != (w, h))
            .map(|(_, name)| name.as_str())
            .collect();
        if !offenders.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "frames differ from the {w}x{h} lead frame: {}",
                offenders.join(", ")
            )));
        }
        Ok(Self {
            frames,
            source_names,
        })
    }

    pub fn frames(&self) -> &[RgbImage] {
        &self.frames
    }

    pub fn source_names(&self) -> &[String] {
        &self.source_names
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    /// Pixel rows `m` (image height).
    pub fn pixel_rows(&self) -> usize {
        self.frames[0].height() as usize
    }

    /// Pixel columns `n` (image width).
    pub fn pixel_cols(&self) -> usize {
        self.frames[0].width() as usize
    }
}

/// Real-valued `m×n×3` image, interleaved RGB.
#[derive(Debug, Clone, PartialEq)]
pub struct RealImage<T: Real> {
    m: usize,
    n: usize,
    data: Vec<T>,
}

impl<T: Real> RealImage<T> {
    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(m * n * 3);
        for row in 0..m {
            for col in 0..n {
                for ch in 0..3 {
                    data.push(f(row, col, ch));
                }
            }
        }
        Self { m, n, data }
    }

    /// Decode an 8-bit image to `[0, 1]` channel values.
    pub fn from_rgb8_unit(img: &RgbImage) -> Self {
        let scale = from_usize::<T>(255);
        Self::from_fn(img.height() as usize, img.width() as usize, |row, col, ch| {
            from_u8::<T>(img.get_pixel(col as u32, row as u32).0[ch]) / scale
        })
    }

    /// Decode an 8-bit image keeping the `0..=255` scale.
    pub fn from_rgb8_scaled(img: &RgbImage) -> Self {
        Self::from_fn(img.height() as usize, img.width() as usize, |row, col, ch| {
            from_u8::<T>(img.get_pixel(col as u32, row as u32).0[ch])
        })
    }

    pub fn pixel_rows(&self) -> usize {
        self.m
    }

    pub fn pixel_cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, ch: usize) -> T {
        self.data[(row * self.n + col) * 3 + ch]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, ch: usize, v: T) {
        self.data[(row * self.n + col) * 3 + ch] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// Quantize `[0, 1]` channels to an 8-bit image, rounding half away
    /// from zero.
    pub fn to_rgb8_unit(&self) -> RgbImage {
        let mut img = RgbImage::new(self.n as u32, self.m as u32);
        for row in 0..self.m {
            for col in 0..self.n {
                let px = image::Rgb([
                    quantize_unit(self.get(row, col, 0)),
                    quantize_unit(self.get(row, col, 1)),
                    quantize_unit(self.get(row, col, 2)),
                ]);
                img.put_pixel(col as u32, row as u32, px);
            }
        }
        img
    }
}

/// Three separate `m×n` real planes, the unstacked form of a snapshot
/// column.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPlanes<T: Real> {
    pub r: nalgebra::DMatrix<T>,
    pub g: nalgebra::DMatrix<T>,
    pub b: nalgebra::DMatrix<T>,
}

impl<T: Real> ChannelPlanes<T> {
    pub fn pixel_rows(&self) -> usize {
        self.r.nrows()
    }

    pub fn pixel_cols(&self) -> usize {
        self.r.ncols()
    }

    pub fn plane(&self, ch: usize) -> &nalgebra::DMatrix<T> {
        match ch {
            0 => &self.r,
            1 => &self.g,
            _ => &self.b,
        }
    }
}

/// Extracted background image plus its provenance.
#[derive(Debug, Clone)]
pub struct BackgroundModel<T: Real> {
    /// `m×n×3` image with every channel in `[0, 1]`.
    pub image: RealImage<T>,
    /// Index of the selected mode in the eigenvalue ordering.
    pub mode_index: usize,
    /// `|μ|` of the selected mode.
    pub abs_mu: T,
    /// Whether color transfer has been applied on top of the raw mode image.
    pub color_transfer_applied: bool,
}

/// Natural-order filename comparison: runs of digits compare numerically,
/// everything else case-insensitively. Letter case and leading zeros only
/// break full ties, keeping the order total.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let ab = a.as_bytes();
    let bb = b.as_bytes();
    let (mut i, mut j) = (0, 0);
    let mut tiebreak = Ordering::Equal;
    while i < ab.len() && j < bb.len() {
        let a_digit = ab[i].is_ascii_digit();
        let b_digit = bb[j].is_ascii_digit();
        if a_digit && b_digit {
            let i0 = i;
            let j0 = j;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let run_a = a[i0..i].trim_start_matches('0');
            let run_b = b[j0..j].trim_start_matches('0');
            let ord = run_a.len().cmp(&run_b.len()).then_with(|| run_a.cmp(run_b));
            if ord != Ordering::Equal {
                return ord;
            }
            if tiebreak == Ordering::Equal {
                // equal value: fewer leading zeros first
                tiebreak = (i - i0).cmp(&(j - j0));
            }
        } else if a_digit != b_digit {
            // digits sort before non-digits at the same position
            return if a_digit {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        } else {
            let ca = ab[i].to_ascii_lowercase();
            let cb = bb[j].to_ascii_lowercase();
            let ord = ca.cmp(&cb);
            if ord != Ordering::Equal {
                return ord;
            }
            if tiebreak == Ordering::Equal {
                tiebreak = ab[i].cmp(&bb[j]);
            }
            i += 1;
            j += 1;
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then(tiebreak)
}

const FRAME_EXTENSIONS: [&str; 4] = ["png", "jpg", "jpeg", "bmp"];

/// Load a directory of frames in natural-sort order.
///
/// `pattern`, when given, keeps only file names containing it. Alpha
/// channels are dropped; grayscale inputs are replicated to three channels
/// with a warning.
pub fn load_sequence(directory: &Path, pattern: Option<&str>) -> Result<FrameSequence> {
    let entries = std::fs::read_dir(directory).map_err(|e| Error::io(directory, e))?;
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(directory, e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let ext_ok = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| FRAME_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
            .unwrap_or(false);
        if !ext_ok {
            continue;
        }
        if let Some(pat) = pattern {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if !name.contains(pat) {
                continue;
            }
        }
        paths.push(path);
    }
    if paths.is_empty() {
        return Err(Error::io(
            directory,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no decodable frames (png/jpg/jpeg/bmp) found",
            ),
        ));
    }
    paths.sort_by(|a, b| {
        let an = a.file_name().and_then(|n| n.to_str()).unwrap_or("");
        let bn = b.file_name().and_then(|n| n.to_str()).unwrap_or("");
        natural_cmp(an, bn)
    });

    let mut frames = Vec::with_capacity(paths.len());
    let mut names = Vec::with_capacity(paths.len());
    for path in &paths {
        let dyn_img = image::open(path).map_err(|e| Error::Image {
            path: path.clone(),
            source: e,
        })?;
        if dyn_img.color().channel_count() < 3 {
            log::warn!(
                "grayscale frame {} replicated to 3 channels",
                path.display()
            );
        }
        frames.push(dyn_img.to_rgb8());
        names.push(
            path.file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default()
                .to_string(),
        );
    }
    FrameSequence::new(frames, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_sort_orders_numeric_runs() {
        let mut names = vec!["in0100.png", "in0009.png", "in0010.png"];
        names.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(names, vec!["in0009.png", "in0010.png", "in0100.png"]);
    }

    #[test]
    fn natural_sort_is_case_insensitive_on_text() {
        let mut names = vec!["Frame2.png", "frame10.png", "frame1.png"];
        names.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(names, vec!["frame1.png", "Frame2.png", "frame10.png"]);
    }

    #[test]
    fn natural_sort_total_on_leading_zeros() {
        assert_eq!(natural_cmp("a9", "a09"), Ordering::Less);
        assert_eq!(natural_cmp("a09", "a9"), Ordering::Greater);
        assert_eq!(natural_cmp("a09", "a09"), Ordering::Equal);
    }

    #[test]
    fn sequence_rejects_mixed_dimensions() {
        let a = RgbImage::new(4, 3);
        let b = RgbImage::new(5, 3);
        let err = FrameSequence::new(vec![a, b], vec!["a.png".into(), "b.png".into()])
            .unwrap_err();
        match err {
            Error::DimensionMismatch(msg) => assert!(msg.contains("b.png")),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_directory_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        match load_sequence(dir.path(), None) {
            Err(Error::Io { .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn loads_single_frame_directory() {
        let dir = tempfile::tempdir().unwrap();
        let img = RgbImage::from_fn(64, 48, |x, y| image::Rgb([x as u8, y as u8, 7]));
        img.save(dir.path().join("only.png")).unwrap();
        let seq = load_sequence(dir.path(), None).unwrap();
        assert_eq!(seq.frame_count(), 1);
        assert_eq!(seq.pixel_rows(), 48);
        assert_eq!(seq.pixel_cols(), 64);
    }

    #[test]
    fn real_image_quantization_roundtrip() {
        let img = RgbImage::from_fn(5, 4, |x, y| {
            image::Rgb([(x * 50) as u8, (y * 60) as u8, 255 - x as u8])
        });
        let real = RealImage::<f64>::from_rgb8_unit(&img);
        assert_eq!(real.to_rgb8_unit(), img);
    }
}
