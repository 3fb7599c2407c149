//! Library side of the `dmdbg` command-line harness: the extraction
//! pipeline, the median baseline, synthetic sequence generators, dataset
//! benchmarking, and report serialization. The binary in `main.rs` is a
//! thin dispatcher over these.

pub mod baseline;
pub mod bench;
pub mod cli;
pub mod commands;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod synth;

/// Cap the global rayon pool from the `DMDBG_THREADS` environment variable.
/// Silently keeps the default when unset, unparsable, or already built.
pub fn init_thread_pool_from_env() {
    if let Ok(raw) = std::env::var("DMDBG_THREADS") {
        if let Ok(threads) = raw.trim().parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
