//! Imaging-side properties: stacking round trips, normalization laws, the
//! statistical mode against a brute-force histogram, and color-transfer
//! statistics.

use dmdbg_core::imaging::{
    build_data_matrix, lalphabeta_from_rgb_unit, lalphabeta_stats, normalize_mode_image,
    reinhard_transfer, statistical_mode_image, unstack_vector, BackgroundModel, ChannelPlanes,
    FrameSequence, Normalization, RealImage,
};
use image::RgbImage;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sequence_from(frames: Vec<RgbImage>) -> FrameSequence {
    let names = (0..frames.len()).map(|i| format!("f{i:03}")).collect();
    FrameSequence::new(frames, names).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stack_unstack_roundtrip(
        w in 1u32..8,
        h in 1u32..8,
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let frame = RgbImage::from_fn(w, h, |_, _| {
            image::Rgb([rng.random(), rng.random(), rng.random()])
        });
        let seq = sequence_from(vec![frame.clone()]);
        let p = build_data_matrix::<f64>(&seq).unwrap();
        let planes = unstack_vector(&p.column(0).into_owned(), h as usize, w as usize).unwrap();
        for row in 0..h as usize {
            for col in 0..w as usize {
                let px = frame.get_pixel(col as u32, row as u32).0;
                prop_assert_eq!(planes.r[(row, col)], px[0] as f64);
                prop_assert_eq!(planes.g[(row, col)], px[1] as f64);
                prop_assert_eq!(planes.b[(row, col)], px[2] as f64);
            }
        }
    }

    #[test]
    fn normalization_bounds_and_scale_invariance(
        seed in 0u64..1000,
        scale in 1e-3f64..1e3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mk = || nalgebra::DMatrix::from_fn(5, 6, |_, _| rng.random::<f64>() * 40.0 - 20.0);
        let planes = ChannelPlanes { r: mk(), g: mk(), b: mk() };
        let base = normalize_mode_image(&planes, Normalization::PerChannel).unwrap();
        for &v in base.as_slice() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        let scaled = ChannelPlanes {
            r: &planes.r * scale,
            g: &planes.g * scale,
            b: &planes.b * scale,
        };
        let rescaled = normalize_mode_image(&scaled, Normalization::PerChannel).unwrap();
        for (a, b) in base.as_slice().iter().zip(rescaled.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn statistical_mode_matches_histogram_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (w, h, n) = (4u32, 4u32, 7usize);
    let frames: Vec<RgbImage> = (0..n)
        .map(|_| RgbImage::from_fn(w, h, |_, _| image::Rgb([rng.random(), rng.random(), rng.random()])))
        .collect();
    let seq = sequence_from(frames.clone());
    let got = statistical_mode_image(&seq);
    for y in 0..h {
        for x in 0..w {
            for ch in 0..3 {
                // exhaustive 256-bin histogram, smallest value on ties
                let mut bins = [0u32; 256];
                for f in &frames {
                    bins[f.get_pixel(x, y).0[ch] as usize] += 1;
                }
                let expected = (0u16..256)
                    .max_by_key(|&v| (bins[v as usize], 255 - v))
                    .unwrap() as u8;
                assert_eq!(got.get_pixel(x, y).0[ch], expected);
            }
        }
    }
}

#[test]
fn transfer_statistics_and_idempotence() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (w, h) = (24u32, 18u32);
    let source = RgbImage::from_fn(w, h, |_, _| {
        image::Rgb([
            rng.random_range(70..190),
            rng.random_range(60..200),
            rng.random_range(80..180),
        ])
    });
    let target_img = RgbImage::from_fn(w, h, |_, _| {
        image::Rgb([
            rng.random_range(90..170),
            rng.random_range(85..175),
            rng.random_range(95..165),
        ])
    });
    let target = BackgroundModel {
        image: RealImage::<f64>::from_rgb8_unit(&target_img),
        mode_index: 3,
        abs_mu: 1e-12,
        color_transfer_applied: false,
    };
    let once = reinhard_transfer(&source, &target).unwrap();
    assert!(once.color_transfer_applied);
    assert_eq!(once.mode_index, 3);

    // mid-range inputs keep the transfer away from the clamps
    assert!(once.image.as_slice().iter().all(|&v| v > 0.0 && v < 1.0));
    let out_stats = lalphabeta_stats(&lalphabeta_from_rgb_unit(&once.image));
    let src_stats = lalphabeta_stats(&lalphabeta_from_rgb_unit(
        &RealImage::<f64>::from_rgb8_unit(&source),
    ));
    for ch in 0..3 {
        assert!((out_stats.mean[ch] - src_stats.mean[ch]).abs() < 1e-6);
        assert!((out_stats.std[ch] - src_stats.std[ch]).abs() < 1e-6);
    }

    let twice = reinhard_transfer(&source, &once).unwrap();
    for (a, b) in twice.image.as_slice().iter().zip(once.image.as_slice()) {
        assert!((a - b).abs() <= 1.0 / 255.0);
    }
}

#[test]
fn static_mode_image_of_static_sequence_is_the_frame() {
    let frame = RgbImage::from_fn(9, 7, |x, y| image::Rgb([x as u8 * 20, y as u8 * 30, 120]));
    let seq = sequence_from(vec![frame.clone(); 5]);
    assert_eq!(statistical_mode_image(&seq), frame);
}
