//! Dataset handling: IDX files, synthetic clusters, and IID partitioning.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::nn::ModelConfig;
use crate::rng::RngStream;

pub const IDX_IMAGE_MAGIC: u32 = 0x0000_0803;
pub const IDX_LABEL_MAGIC: u32 = 0x0000_0801;

/// In-memory dataset; shards are datasets too.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// Row-major features, `len() x dim`, values in [0, 1].
    pub features: Vec<f64>,
    pub labels: Vec<u8>,
    pub dim: usize,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.features[r * self.dim..(r + 1) * self.dim]
    }

    /// New dataset containing the given rows, in order.
    pub fn subset(&self, rows: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(rows.len() * self.dim);
        let mut labels = Vec::with_capacity(rows.len());
        for &r in rows {
            features.extend_from_slice(self.row(r));
            labels.push(self.labels[r]);
        }
        Dataset {
            features,
            labels,
            dim: self.dim,
        }
    }
}

fn read_u32_be(reader: &mut impl Read, what: &str) -> Result<u32> {
    let mut buf = [0u8; 4];
    reader
        .read_exact(&mut buf)
        .map_err(|_| Error::TruncatedFile(what.to_string()))?;
    Ok(u32::from_be_bytes(buf))
}

/// Parse an IDX image/label file pair into a dataset, pixels scaled by 1/255.
pub fn load_idx(images_path: &Path, labels_path: &Path) -> Result<Dataset> {
    let mut img = BufReader::new(File::open(images_path)?);
    let magic = read_u32_be(&mut img, "image magic")?;
    if magic != IDX_IMAGE_MAGIC {
        return Err(Error::BadMagic {
            found: magic,
            expected: IDX_IMAGE_MAGIC,
        });
    }
    let count = read_u32_be(&mut img, "image count")? as usize;
    let rows = read_u32_be(&mut img, "image rows")? as usize;
    let cols = read_u32_be(&mut img, "image cols")? as usize;
    let dim = rows * cols;
    let mut pixels = vec![0u8; count * dim];
    img.read_exact(&mut pixels)
        .map_err(|_| Error::TruncatedFile("image data".to_string()))?;

    let mut lab = BufReader::new(File::open(labels_path)?);
    let magic = read_u32_be(&mut lab, "label magic")?;
    if magic != IDX_LABEL_MAGIC {
        return Err(Error::BadMagic {
            found: magic,
            expected: IDX_LABEL_MAGIC,
        });
    }
    let label_count = read_u32_be(&mut lab, "label count")? as usize;
    if label_count != count {
        return Err(Error::CountMismatch {
            images: count,
            labels: label_count,
        });
    }
    let mut labels = vec![0u8; label_count];
    lab.read_exact(&mut labels)
        .map_err(|_| Error::TruncatedFile("label data".to_string()))?;

    let features = pixels.iter().map(|&p| f64::from(p) / 255.0).collect();
    Ok(Dataset {
        features,
        labels,
        dim,
    })
}

/// Write a dataset as an IDX image/label file pair (square images when the
/// feature dimension is a perfect square, otherwise `1 x dim`). Feature
/// values are mapped back to bytes by `round(x * 255)`.
pub fn write_idx(dataset: &Dataset, images_path: &Path, labels_path: &Path) -> Result<()> {
    let side = (dataset.dim as f64).sqrt().round() as usize;
    let (rows, cols) = if side * side == dataset.dim {
        (side, side)
    } else {
        (1, dataset.dim)
    };
    let mut img = BufWriter::new(File::create(images_path)?);
    img.write_all(&IDX_IMAGE_MAGIC.to_be_bytes())?;
    img.write_all(&(dataset.len() as u32).to_be_bytes())?;
    img.write_all(&(rows as u32).to_be_bytes())?;
    img.write_all(&(cols as u32).to_be_bytes())?;
    let bytes: Vec<u8> = dataset
        .features
        .iter()
        .map(|&x| (x * 255.0).round().clamp(0.0, 255.0) as u8)
        .collect();
    img.write_all(&bytes)?;
    img.flush()?;

    let mut lab = BufWriter::new(File::create(labels_path)?);
    lab.write_all(&IDX_LABEL_MAGIC.to_be_bytes())?;
    lab.write_all(&(dataset.len() as u32).to_be_bytes())?;
    lab.write_all(&dataset.labels)?;
    lab.flush()?;
    Ok(())
}

/// Synthetic stand-in for MNIST: one Gaussian cluster per class around a
/// random center in the unit cube, clipped to [0, 1], near-balanced labels.
pub fn synth_dataset(
    stream: &mut RngStream,
    n: usize,
    cfg: &ModelConfig,
    cluster_spread: f64,
) -> Result<Dataset> {
    if n < cfg.classes {
        return Err(Error::InvalidRange {
            field: "n".to_string(),
            message: format!("need at least {} examples for {} classes", cfg.classes, n),
        });
    }
    let dim = cfg.input_dim;
    let centers: Vec<f64> = (0..cfg.classes * dim).map(|_| stream.next_f64()).collect();
    let mut features = Vec::with_capacity(n * dim);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = i % cfg.classes;
        labels.push(class as u8);
        let center = &centers[class * dim..(class + 1) * dim];
        for &c in center {
            let x = c + cluster_spread * stream.next_gaussian();
            features.push(x.clamp(0.0, 1.0));
        }
    }
    Ok(Dataset {
        features,
        labels,
        dim,
    })
}

/// Random near-equal IID split into `n_devices` disjoint shards.
pub fn partition(dataset: &Dataset, n_devices: usize, stream: &mut RngStream) -> Result<Vec<Dataset>> {
    if dataset.len() < n_devices {
        return Err(Error::TooFewExamples {
            examples: dataset.len(),
            devices: n_devices,
        });
    }
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    stream.shuffle(&mut order);
    let base = dataset.len() / n_devices;
    let extra = dataset.len() % n_devices;
    let mut shards = Vec::with_capacity(n_devices);
    let mut offset = 0;
    for i in 0..n_devices {
        let size = base + usize::from(i < extra);
        shards.push(dataset.subset(&order[offset..offset + size]));
        offset += size;
    }
    Ok(shards)
}
