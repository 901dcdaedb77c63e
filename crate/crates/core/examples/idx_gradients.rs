//! Gradients on image data read from an IDX pair.
//!
//!     cargo run --release --example idx_gradients -- <images.idx> <labels.idx>
//!
//! Without arguments a small synthetic pair is written to the temp directory.

use std::path::PathBuf;

use onecircuit::data::{load_idx_images, write_idx_images, write_idx_labels};
use onecircuit::grad::{exact_gradients, improved_gradients, ShiftRule, ShotPlan};
use onecircuit::vqc::{num_params, AnsatzConfig};

fn main() -> onecircuit::Result<()> {
    let args: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let (images, labels) = match args.as_slice() {
        [i, l] => (i.clone(), l.clone()),
        _ => {
            let dir = std::env::temp_dir();
            let (i, l) = (
                dir.join("onecircuit-images.idx"),
                dir.join("onecircuit-labels.idx"),
            );
            let pixels: Vec<Vec<u8>> = (0..4u32)
                .map(|k| (0..784).map(|p| ((p * 7 + k * 31) % 256) as u8).collect())
                .collect();
            write_idx_images(&i, 28, 28, &pixels)?;
            write_idx_labels(&l, &[3, 1, 4, 1])?;
            (i, l)
        }
    };

    let data = load_idx_images(&images, &labels, 2)?;
    let q = data.dimension().trailing_zeros() as usize;
    let config = AnsatzConfig::new(
        q,
        0,
        (0..num_params(q, 0)).map(|i| 0.1 * i as f64).collect(),
    )?;
    let rule = ShiftRule::default();
    let exact = exact_gradients(&data, &config, &rule)?;
    let est = improved_gradients(
        &data,
        &config,
        &rule,
        &ShotPlan::new(200, config.num_params())?,
        1,
    )?;
    println!(
        "{} inputs of dimension {}, Q = {q}",
        data.len(),
        data.dimension()
    );
    for (i, (g, e)) in est.gradients.iter().zip(&exact.gradients).enumerate() {
        println!("{i:>2}: {g:+.3e} (exact {e:+.3e})");
    }
    Ok(())
}
