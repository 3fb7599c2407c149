//! Per-pixel temporal statistical mode of a sequence.

use image::RgbImage;

use super::FrameSequence;

/// The most frequent 8-bit value per pixel and channel across all frames;
/// ties resolve to the smallest value. For a sequence whose background is
/// visible at each pixel more often than any single foreground value, this
/// is exactly the clean background.
pub fn statistical_mode_image(seq: &FrameSequence) -> RgbImage {
    let w = seq.pixel_cols() as u32;
    let h = seq.pixel_rows() as u32;
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
                let mut best = 0usize;
                for v in 1..256 {
                    // strict comparison keeps the smallest value on ties
                    if counts[v] > counts[best] {
                        best = v;
                    }
                }
                px[ch] = best as u8;
            }
            out.put_pixel(x, y, image::Rgb(px));
        }
    }
    out
}
