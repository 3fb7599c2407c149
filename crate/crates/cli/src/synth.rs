//! Synthetic sequences with known ground truth, for the oracle suites and
//! for trying the pipeline without a dataset.

use std::path::Path;

use image::RgbImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    /// Identical frames.
    Static,
    /// Textured background occluded by a square sweeping in row bands.
    MovingSquare,
    /// Static background with a sinusoidally flickering region.
    TwoMode,
}

/// Flicker parameters of a [`SynthKind::TwoMode`] sequence.
#[derive(Debug, Clone, Copy)]
pub struct FlickerInfo {
    /// Temporal frequency in cycles per frame.
    pub cycles_per_frame: f64,
    /// `|μ|` of the flicker mode pair: `2π·frequency` for unit time step.
    pub mu_magnitude: f64,
    /// Region as (row0, row1, col0, col1), half-open.
    pub region: (usize, usize, usize, usize),
}

#[derive(Debug, Clone)]
pub struct SynthOutput {
    pub frames: Vec<RgbImage>,
    pub ground_truth: RgbImage,
    /// Largest per-pixel occlusion count (moving-square only).
    pub max_occlusion: Option<usize>,
    pub flicker: Option<FlickerInfo>,
}

/// Flicker angular frequency in radians per frame. A period of `4π` frames
/// never lines up with the frame grid, so quantization noise stays
/// incoherent instead of folding onto unit-magnitude harmonics.
pub const FLICKER_OMEGA: f64 = 0.5;
pub const FLICKER_AMPLITUDE: f64 = 40.0;

fn round_u8(x: f64) -> u8 {
    (x + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Blurred per-channel noise planes (not yet scaled to 8 bits).
fn smooth_noise_planes(rng: &mut ChaCha8Rng, width: usize, height: usize) -> [Vec<f64>; 3] {
    let mut planes = [
        vec![0.0_f64; width * height],
        vec![0.0_f64; width * height],
        vec![0.0_f64; width * height],
    ];
    for row in 0..height {
        for col in 0..width {
            for plane in planes.iter_mut() {
                plane[row * width + col] = rng.random::<u8>() as f64;
            }
        }
    }
    // three separable box-blur passes with wraparound
    for plane in planes.iter_mut() {
        for _ in 0..3 {
            let mut tmp = vec![0.0_f64; width * height];
            for row in 0..height {
                let up = (row + height - 1) % height;
                let down = (row + 1) % height;
                for col in 0..width {
                    tmp[row * width + col] = (plane[up * width + col]
                        + plane[row * width + col]
                        + plane[down * width + col])
                        / 3.0;
                }
            }
            for row in 0..height {
                for col in 0..width {
                    let left = (col + width - 1) % width;
                    let right = (col + 1) % width;
                    plane[row * width + col] =
                        (tmp[row * width + left] + tmp[row * width + col] + tmp[row * width + right])
                            / 3.0;
                }
            }
        }
    }
    planes
}

fn planes_to_image(planes: &[Vec<f64>; 3], width: usize, height: usize) -> RgbImage {
    RgbImage::from_fn(width as u32, height as u32, |x, y| {
        let idx = (y as usize) * width + x as usize;
        image::Rgb([
            round_u8(planes[0][idx]),
            round_u8(planes[1][idx]),
            round_u8(planes[2][idx]),
        ])
    })
}

/// Stretch each plane so the pixels selected by `keep` span `0..=255`;
/// everything else follows the same affine map, clamped.
fn stretch_planes(planes: &mut [Vec<f64>; 3], keep: impl Fn(usize) -> bool + Copy) {
    for plane in planes.iter_mut() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (idx, &v) in plane.iter().enumerate() {
            if keep(idx) {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        if hi > lo {
            for v in plane.iter_mut() {
                *v = ((*v - lo) / (hi - lo) * 255.0).clamp(0.0, 255.0);
            }
        }
    }
}

/// Box-blurred random texture stretched to the full 8-bit range per channel.
fn smooth_texture(rng: &mut ChaCha8Rng, width: usize, height: usize) -> RgbImage {
    let mut planes = smooth_noise_planes(rng, width, height);
    stretch_planes(&mut planes, |_| true);
    planes_to_image(&planes, width, height)
}

/// Generate one synthetic sequence. Deterministic for a fixed seed.
pub fn generate(
    kind: SynthKind,
    frames: usize,
    width: usize,
    height: usize,
    seed: u64,
) -> Result<SynthOutput> {
    if frames < 2 {
        return Err(CliError::Usage(format!(
            "synthetic sequences need at least 2 frames, got {frames}"
        )));
    }
    if width == 0 || height == 0 {
        return Err(CliError::Usage("frame dimensions must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    match kind {
        SynthKind::Static => {
            let background = smooth_texture(&mut rng, width, height);
            Ok(SynthOutput {
                frames: vec![background.clone(); frames],
                ground_truth: background,
                max_occlusion: None,
                flicker: None,
            })
        }
        SynthKind::MovingSquare => {
            let background = smooth_texture(&mut rng, width, height);
            let side = (height / 4).max(4).min(height).min(width);
            let bands = height.div_ceil(side);
            let per_band = (frames / bands).max(1);
            let speed = (width + side).div_ceil(per_band);
            let color = image::Rgb([96u8, 96, 96]);
            let mut occlusion = vec![0usize; width * height];
            let mut seq = Vec::with_capacity(frames);
            for t in 0..frames {
                let band = (t / per_band).min(bands - 1);
                let k = t - band * per_band;
                let x0 = (speed * k) as i64 - side as i64;
                let y0 = (band * side) as i64;
                let mut frame = background.clone();
                for dy in 0..side as i64 {
                    for dx in 0..side as i64 {
                        let (x, y) = (x0 + dx, y0 + dy);
                        if x >= 0 && (x as usize) < width && y >= 0 && (y as usize) < height {
                            frame.put_pixel(x as u32, y as u32, color);
                            occlusion[y as usize * width + x as usize] += 1;
                        }
                    }
                }
                seq.push(frame);
            }
            let max_occlusion = occlusion.iter().copied().max().unwrap_or(0);
            if 2 * max_occlusion >= frames {
                return Err(CliError::Usage(format!(
                    "square would occlude a pixel in {max_occlusion} of {frames} frames; \
                     use more frames"
                )));
            }
            Ok(SynthOutput {
                frames: seq,
                ground_truth: background,
                max_occlusion: Some(max_occlusion),
                flicker: None,
            })
        }
        SynthKind::TwoMode => {
            let (r0, r1) = (height / 3, 2 * height / 3);
            let (c0, c1) = (width / 3, 2 * width / 3);
            let inside =
                |idx: usize| (r0..r1).contains(&(idx / width)) && (c0..c1).contains(&(idx % width));
            // stretch on the outside pixels so the ground truth still spans
            // the full range once the flicker region is compressed below
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut planes = smooth_noise_planes(&mut rng, width, height);
            stretch_planes(&mut planes, |idx| !inside(idx));
            let mut bg = planes_to_image(&planes, width, height);
            // compress the flicker region so the sinusoid never clips
            for row in r0..r1 {
                for col in c0..c1 {
                    let px = bg.get_pixel_mut(col as u32, row as u32);
                    for ch in 0..3 {
                        px.0[ch] = round_u8(60.0 + px.0[ch] as f64 * (135.0 / 255.0));
                    }
                }
            }
            // a phase gradient across the region gives the flicker two
            // spatial directions, making the principal signal exactly rank 3
            let phase = |col: usize| {
                2.0 * std::f64::consts::PI * (col - c0) as f64 / (c1 - c0).max(1) as f64
            };
            let mut seq = Vec::with_capacity(frames);
            for t in 0..frames {
                let mut frame = bg.clone();
                for row in r0..r1 {
                    for col in c0..c1 {
                        let offset =
                            FLICKER_AMPLITUDE * (FLICKER_OMEGA * t as f64 + phase(col)).sin();
                        let px = frame.get_pixel_mut(col as u32, row as u32);
                        for ch in 0..3 {
                            px.0[ch] = round_u8(px.0[ch] as f64 + offset);
                        }
                    }
                }
                seq.push(frame);
            }
            Ok(SynthOutput {
                frames: seq,
                ground_truth: bg,
                max_occlusion: None,
                flicker: Some(FlickerInfo {
                    cycles_per_frame: FLICKER_OMEGA / (2.0 * std::f64::consts::PI),
                    mu_magnitude: FLICKER_OMEGA,
                    region: (r0, r1, c0, c1),
                }),
            })
        }
    }
}

/// Write the sequence in the dataset layout: `<dir>/input/in%06d.png` and
/// `<dir>/GT/GT.png`.
pub fn write_sequence(out: &SynthOutput, dir: &Path) -> Result<()> {
    let input = dir.join("input");
    let gt_dir = dir.join("GT");
    std::fs::create_dir_all(&input).map_err(|e| CliError::io(&input, e))?;
    std::fs::create_dir_all(&gt_dir).map_err(|e| CliError::io(&gt_dir, e))?;
    for (i, frame) in out.frames.iter().enumerate() {
        let path = input.join(format!("in{i:06}.png"));
        frame
            .save(&path)
            .map_err(|e| CliError::io(&path, std::io::Error::other(e)))?;
    }
    let gt_path = gt_dir.join("GT.png");
    out.ground_truth
        .save(&gt_path)
        .map_err(|e| CliError::io(&gt_path, std::io::Error::other(e)))?;
    Ok(())
}
