//! Device placement on the 2-D plane.

use crate::error::{Error, Result};
use crate::rng::RngStream;

pub type DeviceId = usize;

/// Side length of the square plane devices are embedded in.
pub const PLANE_SIZE: f64 = 1000.0;

/// Per-device coordinates, all in [0, PLANE_SIZE].
#[derive(Debug, Clone)]
pub struct Placement {
    coords: Vec<(f64, f64)>,
}

impl Placement {
    pub fn from_coords(coords: Vec<(f64, f64)>) -> Self {
        Self { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, id: DeviceId) -> Result<(f64, f64)> {
        self.coords.get(id).copied().ok_or(Error::UnknownDevice(id))
    }
}

/// Place `n` devices i.i.d. uniform on the plane.
pub fn place_devices(n: usize, stream: &mut RngStream) -> Placement {
    assert!(n >= 1);
    let coords = (0..n)
        .map(|_| {
            let x = stream.next_f64() * PLANE_SIZE;
            let y = stream.next_f64() * PLANE_SIZE;
            (x, y)
        })
        .collect();
    Placement { coords }
}

/// Euclidean distance between two devices.
pub fn distance(p: &Placement, i: DeviceId, j: DeviceId) -> Result<f64> {
    let (xi, yi) = p.coord(i)?;
    let (xj, yj) = p.coord(j)?;
    Ok((xi - xj).hypot(yi - yj))
}
