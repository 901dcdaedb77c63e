//! IDX binary files (the MNIST layout): big-endian u32 magic, u32 dimension
//! sizes, then unsigned bytes.

use std::fs;
use std::path::Path;

use super::{DataSource, Dataset};
use crate::error::{Error, Result};

const IMAGE_MAGIC: u32 = 0x0000_0803;
const LABEL_MAGIC: u32 = 0x0000_0801;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdxImages {
    pub rows: usize,
    pub cols: usize,
    pub pixels: Vec<Vec<u8>>,
}

fn idx_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Idx {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

fn header(bytes: &[u8], path: &Path, magic: u32, dims: usize) -> Result<Vec<usize>> {
    let words: Vec<u32> = bytes
        .chunks_exact(4)
        .take(dims + 1)
        .map(|w| u32::from_be_bytes([w[0], w[1], w[2], w[3]]))
        .collect();
    if words.len() < dims + 1 {
        return Err(idx_err(path, "truncated header"));
    }
    if words[0] != magic {
        return Err(idx_err(
            path,
            format!(
                "bad magic number {:#010x}, expected {magic:#010x}",
                words[0]
            ),
        ));
    }
    Ok(words[1..].iter().map(|&w| w as usize).collect())
}

pub fn read_idx_images(path: impl AsRef<Path>) -> Result<IdxImages> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let dims = header(&bytes, path, IMAGE_MAGIC, 3)?;
    let (count, rows, cols) = (dims[0], dims[1], dims[2]);
    let body = &bytes[16..];
    let size = rows * cols;
    if body.len() < count * size {
        return Err(idx_err(
            path,
            format!(
                "truncated: {} pixel bytes for {count} images of {size}",
                body.len()
            ),
        ));
    }
    let pixels = body
        .chunks_exact(size.max(1))
        .take(count)
        .map(<[u8]>::to_vec)
        .collect();
    Ok(IdxImages { rows, cols, pixels })
}

pub fn read_idx_labels(path: impl AsRef<Path>) -> Result<Vec<u8>> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let count = header(&bytes, path, LABEL_MAGIC, 1)?[0];
    let body = &bytes[8..];
    if body.len() < count {
        return Err(idx_err(
            path,
            format!("truncated: {} label bytes for {count} labels", body.len()),
        ));
    }
    Ok(body[..count].to_vec())
}

pub fn write_idx_images(
    path: impl AsRef<Path>,
    rows: usize,
    cols: usize,
    images: &[Vec<u8>],
) -> Result<()> {
    let mut bytes = Vec::with_capacity(16 + images.len() * rows * cols);
    for word in [IMAGE_MAGIC, images.len() as u32, rows as u32, cols as u32] {
        bytes.extend_from_slice(&word.to_be_bytes());
    }
    for image in images {
        if image.len() != rows * cols {
            return Err(idx_err(
                path.as_ref(),
                "image size does not match rows x cols",
            ));
        }
        bytes.extend_from_slice(image);
    }
    fs::write(path, bytes)?;
    Ok(())
}

pub fn write_idx_labels(path: impl AsRef<Path>, labels: &[u8]) -> Result<()> {
    let mut bytes = Vec::with_capacity(8 + labels.len());
    bytes.extend_from_slice(&LABEL_MAGIC.to_be_bytes());
    bytes.extend_from_slice(&(labels.len() as u32).to_be_bytes());
    bytes.extend_from_slice(labels);
    fs::write(path, bytes)?;
    Ok(())
}

/// First `limit` images, pixels scaled to [0, 1] and zero-padded to the next
/// power of two (784 → 1024).
pub fn load_idx_images(
    images: impl AsRef<Path>,
    labels: impl AsRef<Path>,
    limit: usize,
) -> Result<Dataset> {
    let imgs = read_idx_images(images.as_ref())?;
    let labs = read_idx_labels(labels.as_ref())?;
    if imgs.pixels.len() != labs.len() {
        return Err(idx_err(
            labels.as_ref(),
            format!("{} labels for {} images", labs.len(), imgs.pixels.len()),
        ));
    }
    if limit == 0 {
        return Err(Error::EmptyDataset);
    }
    if limit > labs.len() {
        return Err(idx_err(
            images.as_ref(),
            format!("requested {limit} images, file has {}", labs.len()),
        ));
    }
    let dim = (imgs.rows * imgs.cols).next_power_of_two().max(2);
    let inputs = imgs.pixels[..limit]
        .iter()
        .map(|img| {
            let mut v: Vec<f64> = img.iter().map(|&p| p as f64 / 255.0).collect();
            v.resize(dim, 0.0);
            v
        })
        .collect();
    Dataset::new(
        inputs,
        labs[..limit].iter().map(|&l| l as usize).collect(),
        DataSource::IdxImage,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(dir: &Path, count: usize) -> (std::path::PathBuf, std::path::PathBuf) {
        let images: Vec<Vec<u8>> = (0..count)
            .map(|k| (0..784).map(|p| ((p * 7 + k * 13) % 256) as u8).collect())
            .collect();
        let labels: Vec<u8> = (0..count).map(|k| (k % 10) as u8).collect();
        let ip = dir.join("images.idx");
        let lp = dir.join("labels.idx");
        write_idx_images(&ip, 28, 28, &images).unwrap();
        write_idx_labels(&lp, &labels).unwrap();
        (ip, lp)
    }

    #[test]
    fn loads_scaled_and_padded() {
        let dir = tempfile::tempdir().unwrap();
        let (ip, lp) = fixture(dir.path(), 7);
        let d = load_idx_images(&ip, &lp, 5).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.dimension(), 1024);
        assert!(d.inputs.iter().all(|x| x[784..].iter().all(|&v| v == 0.0)));
        assert!(d
            .inputs
            .iter()
            .all(|x| x.iter().all(|v| (0.0..=1.0).contains(v))));
        assert_eq!(d.labels, vec![0, 1, 2, 3, 4]);
        assert!((d.inputs[0][1] - 7.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let (ip, lp) = fixture(dir.path(), 3);
        assert!(matches!(
            load_idx_images(&lp, &lp, 1),
            Err(Error::Idx { .. })
        ));
        assert!(matches!(
            load_idx_images(&ip, &ip, 1),
            Err(Error::Idx { .. })
        ));

        let bytes = fs::read(&ip).unwrap();
        let cut = dir.path().join("cut.idx");
        fs::write(&cut, &bytes[..bytes.len() - 10]).unwrap();
        let err = load_idx_images(&cut, &lp, 1).unwrap_err();
        assert!(err.to_string().contains("truncated"), "{err}");

        let short_labels = dir.path().join("short.idx");
        write_idx_labels(&short_labels, &[1, 2]).unwrap();
        let err = load_idx_images(&ip, &short_labels, 1).unwrap_err();
        assert!(err.to_string().contains("2 labels for 3 images"), "{err}");
    }

    #[test]
    fn black_image_fails_to_encode() {
        let dir = tempfile::tempdir().unwrap();
        let ip = dir.path().join("black.idx");
        let lp = dir.path().join("black-labels.idx");
        write_idx_images(&ip, 28, 28, &[vec![0u8; 784]]).unwrap();
        write_idx_labels(&lp, &[0]).unwrap();
        let d = load_idx_images(&ip, &lp, 1).unwrap();
        assert!(matches!(
            crate::vqc::amplitude_encode(&d.inputs[0]),
            Err(Error::ZeroVector)
        ));
    }
}
