//! Temporal median baseline.

use dmdbg_core::imaging::FrameSequence;
use image::RgbImage;

/// Per-pixel, per-channel temporal median. Even frame counts use the lower
/// median (the `⌈N/2⌉`-th order statistic, 1-based).
pub fn median_baseline(seq: &FrameSequence) -> RgbImage {
    let w = seq.pixel_cols() as u32;
    let h = seq.pixel_rows() as u32;
    let n = seq.frame_count();
    let target = (n - 1) / 2; // 0-based lower-median index
    let mut out = RgbImage::new(w, h);
    let mut counts = [0u32; 256];
    for y in 0..h {
        for x in 0..w {
            let mut px = [0u8; 3];
            for ch in 0..3 {
                counts.fill(0);
                for frame in seq.frames() {
                    counts[frame.get_pixel(x, y).0[ch] as usize] += 1;
                }
                let mut seen = 0u32;
                for v in 0..256 {
                    seen += counts[v];
                    if seen > target as u32 {
                        px[ch] = v as u8;
                        break;
                    }
                }
            }
            out.put_pixel(x, y, image::Rgb(px));
        }
    }
    out
}
