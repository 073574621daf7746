//! Device catalog, per-round occupancy, the stress metric, and the
//! resource-dependent time models for compute, transfer, aggregation, and
//! proof-of-work solving.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::topology::DeviceId;

/// Hardware profile of one device class.
///
/// The shipped numbers are editable defaults in the spirit of small edge
/// boards (datasheet ballparks); `batch_time_ms` and `hash_rate` are
/// calibration values for the simulated workloads.
#[derive(Debug, Clone)]
pub struct DeviceType {
    pub name: String,
    /// CPU speed, GHz.
    pub cpu: f64,
    /// Memory, GB.
    pub mem: f64,
    /// Network bandwidth, MB/s.
    pub net: f64,
    /// Per-mini-batch compute time at zero occupancy, ms.
    pub batch_time_ms: f64,
    /// Puzzle attempts per second at zero occupancy.
    pub hash_rate: f64,
}

fn ty(name: &str, cpu: f64, mem: f64, net: f64, batch_time_ms: f64, hash_rate: f64) -> DeviceType {
    DeviceType {
        name: name.to_string(),
        cpu,
        mem,
        net,
        batch_time_ms,
        hash_rate,
    }
}

/// The five-entry default catalog.
pub fn default_catalog() -> Vec<DeviceType> {
    vec![
        ty("jetson_nano", 1.43, 4.0, 100.0, 2.6, 1.8e6),
        ty("up_squared_n3350", 1.10, 2.0, 12.5, 4.8, 0.6e6),
        ty("up_squared_n4200", 1.10, 4.0, 25.0, 4.0, 0.8e6),
        ty("up_squared_x7_e3950", 1.60, 8.0, 50.0, 3.0, 1.5e6),
        ty("coral_dev_board", 1.50, 1.0, 12.5, 3.2, 1.0e6),
    ]
}

/// Parameter count of the default model; time models scale relative to it.
pub const REFERENCE_MODEL_SIZE: usize = 50_890;

/// Aggregation calibration: aggregating 10 updates of the default model on
/// the fastest default device takes about 5 ms.
pub const AGG_CALIB_MS_GHZ_PER_PARAM: f64 = 5.0 * 1.6 / (10.0 * REFERENCE_MODEL_SIZE as f64);

/// Occupancy levels a background workload may pin on a device.
pub const OCCUPANCY_LEVELS: [f64; 3] = [0.25, 0.50, 0.75];

/// Per-round device state.
#[derive(Debug, Clone)]
pub struct DeviceState {
    pub device_id: DeviceId,
    pub type_index: usize,
    pub occupancy: f64,
}

/// First `device_type_count` catalog entries, with config overrides applied.
///
/// Override keys are `(entry index, field)` with fields `cpu`, `mem`, `net`,
/// `batch_time_ms`, `hash_rate`.
pub fn build_catalog(
    device_type_count: usize,
    overrides: &BTreeMap<(usize, String), f64>,
) -> Result<Vec<DeviceType>> {
    let full = default_catalog();
    if device_type_count < 1 || device_type_count > full.len() {
        return Err(Error::CountOutOfRange {
            count: device_type_count,
            max: full.len(),
        });
    }
    let mut catalog: Vec<DeviceType> = full.into_iter().take(device_type_count).collect();
    for ((idx, field), value) in overrides {
        let entry = catalog.get_mut(*idx).ok_or(Error::InvalidRange {
            field: format!("device.{idx}"),
            message: format!("override index {idx} outside catalog of {device_type_count}"),
        })?;
        if *value <= 0.0 {
            return Err(Error::InvalidRange {
                field: format!("device.{idx}.{field}"),
                message: "device fields must be positive".to_string(),
            });
        }
        match field.as_str() {
            "cpu" => entry.cpu = *value,
            "mem" => entry.mem = *value,
            "net" => entry.net = *value,
            "batch_time_ms" => entry.batch_time_ms = *value,
            "hash_rate" => entry.hash_rate = *value,
            other => {
                return Err(Error::InvalidRange {
                    field: format!("device.{idx}.{other}"),
                    message: "unknown device field".to_string(),
                })
            }
        }
    }
    Ok(catalog)
}

/// Assign every device a catalog index uniformly at random.
pub fn assign_types(n: usize, catalog: &[DeviceType], stream: &mut RngStream) -> Vec<usize> {
    assert!(!catalog.is_empty());
    (0..n).map(|_| stream.next_below(catalog.len())).collect()
}

/// Draw one occupancy level uniformly from `OCCUPANCY_LEVELS`.
pub fn draw_occupancy(stream: &mut RngStream) -> f64 {
    OCCUPANCY_LEVELS[stream.next_below(OCCUPANCY_LEVELS.len())]
}

/// Stress over available (post-occupancy) resources: lower is better.
pub fn stress_metric(ty: &DeviceType, occupancy: f64) -> f64 {
    assert!((0.0..1.0).contains(&occupancy));
    let free = 1.0 - occupancy;
    1.0 / ((ty.cpu * free) * (ty.mem * free) * (ty.net * free))
}

/// Local-optimization wall time for `local_steps` mini-batch updates.
pub fn compute_time(ty: &DeviceType, occupancy: f64, local_steps: usize, model_size: usize) -> f64 {
    assert!(local_steps >= 1);
    local_steps as f64 * ty.batch_time_ms * (model_size as f64 / REFERENCE_MODEL_SIZE as f64)
        / (1.0 - occupancy)
}

/// Serialization time for `payload_bytes` through the device's available
/// bandwidth; the orchestrator adds this on top of link latency.
pub fn transfer_time(ty: &DeviceType, occupancy: f64, payload_bytes: u64) -> f64 {
    // bytes / (MB/s) -> us, so /1000 for ms.
    payload_bytes as f64 / (ty.net * (1.0 - occupancy)) / 1000.0
}

/// Master-side cost of averaging `k` updates.
pub fn aggregation_time(ty: &DeviceType, occupancy: f64, k: usize, model_size: usize) -> f64 {
    assert!(k >= 1);
    AGG_CALIB_MS_GHZ_PER_PARAM * k as f64 * model_size as f64 / (ty.cpu * (1.0 - occupancy))
}

/// Exponential solve-time draw for a proof-of-work puzzle (memoryless search).
pub fn pow_solve_time(
    ty: &DeviceType,
    occupancy: f64,
    difficulty: u32,
    stream: &mut RngStream,
) -> f64 {
    assert!(difficulty >= 1);
    let mean_ms = (difficulty as f64).exp2() / (ty.hash_rate * (1.0 - occupancy)) * 1000.0;
    let u = 1.0 - stream.next_f64(); // (0, 1]
    -mean_ms * u.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;
    use approx::assert_relative_eq;
    use std::collections::BTreeMap;

    #[test]
    fn catalog_prefix_rule() {
        let cat = build_catalog(2, &BTreeMap::new()).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].name, "jetson_nano");
        assert_eq!(cat[1].name, "up_squared_n3350");
        assert!(matches!(
            build_catalog(0, &BTreeMap::new()),
            Err(Error::CountOutOfRange { .. })
        ));
        assert!(matches!(
            build_catalog(6, &BTreeMap::new()),
            Err(Error::CountOutOfRange { .. })
        ));
    }

    #[test]
    fn catalog_override_semantics() {
        let mut ov = BTreeMap::new();
        ov.insert((0usize, "cpu".to_string()), 2.0);
        let cat = build_catalog(4, &ov).unwrap();
        assert_eq!(cat[0].cpu, 2.0);
        assert_eq!(cat[1].cpu, default_catalog()[1].cpu);
    }

    #[test]
    fn catalog_fields_positive() {
        for t in default_catalog() {
            assert!(t.cpu > 0.0 && t.mem > 0.0 && t.net > 0.0);
            assert!(t.batch_time_ms > 0.0 && t.hash_rate > 0.0);
        }
    }

    #[test]
    fn assignment_uniform_and_deterministic() {
        let cat = build_catalog(4, &BTreeMap::new()).unwrap();
        let mut a = derive_stream(5, "placement");
        let mut b = derive_stream(5, "placement");
        let ta = assign_types(10_000, &cat, &mut a);
        let tb = assign_types(10_000, &cat, &mut b);
        assert_eq!(ta, tb);
        for idx in 0..4 {
            let freq = ta.iter().filter(|&&t| t == idx).count() as f64 / 10_000.0;
            assert!((freq - 0.25).abs() < 0.02, "type {idx} freq {freq}");
        }
        let single = build_catalog(1, &BTreeMap::new()).unwrap();
        assert!(assign_types(50, &single, &mut a).iter().all(|&t| t == 0));
    }

    #[test]
    fn occupancy_support_and_frequencies() {
        let mut s = derive_stream(8, "stress");
        let mut counts = [0usize; 3];
        for _ in 0..30_000 {
            let o = draw_occupancy(&mut s);
            let idx = OCCUPANCY_LEVELS.iter().position(|&l| l == o).unwrap();
            counts[idx] += 1;
        }
        for c in counts {
            let freq = c as f64 / 30_000.0;
            assert!((freq - 1.0 / 3.0).abs() < 0.02, "freq {freq}");
        }
    }

    #[test]
    fn stress_unit_cases() {
        let unit = ty("u", 1.0, 1.0, 1.0, 1.0, 1.0);
        assert_relative_eq!(stress_metric(&unit, 0.0), 1.0);
        let dev = ty("d", 2.0, 4.0, 100.0, 1.0, 1.0);
        assert_relative_eq!(stress_metric(&dev, 0.0), 1.0 / 800.0);
        // halving availability scales stress by exactly (1/0.5)^3
        assert_relative_eq!(
            stress_metric(&dev, 0.5) / stress_metric(&dev, 0.0),
            8.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn stress_monotonicity() {
        let base = ty("b", 1.5, 2.0, 10.0, 1.0, 1.0);
        for field in 0..3 {
            let mut bigger = base.clone();
            match field {
                0 => bigger.cpu *= 1.5,
                1 => bigger.mem *= 1.5,
                _ => bigger.net *= 1.5,
            }
            assert!(stress_metric(&bigger, 0.25) < stress_metric(&base, 0.25));
        }
        assert!(stress_metric(&base, 0.5) > stress_metric(&base, 0.25));
    }

    #[test]
    fn stress_argmin_scale_invariant() {
        let mut s = derive_stream(3, "stress");
        let types: Vec<DeviceType> = (0..20)
            .map(|i| {
                ty(
                    &format!("t{i}"),
                    0.5 + s.next_f64() * 2.0,
                    0.5 + s.next_f64() * 8.0,
                    1.0 + s.next_f64() * 99.0,
                    1.0,
                    1.0,
                )
            })
            .collect();
        let occ: Vec<f64> = (0..20).map(|_| draw_occupancy(&mut s)).collect();
        let argmin = |ts: &[DeviceType]| -> usize {
            (0..ts.len())
                .min_by(|&a, &b| {
                    stress_metric(&ts[a], occ[a])
                        .partial_cmp(&stress_metric(&ts[b], occ[b]))
                        .unwrap()
                })
                .unwrap()
        };
        let scaled: Vec<DeviceType> = types
            .iter()
            .map(|t| {
                let mut t2 = t.clone();
                t2.cpu *= 3.7;
                t2.mem *= 3.7;
                t2.net *= 3.7;
                t2
            })
            .collect();
        assert_eq!(argmin(&types), argmin(&scaled));
    }

    #[test]
    fn compute_time_scaling() {
        let t = ty("t", 1.0, 1.0, 1.0, 7.5, 1.0);
        assert_relative_eq!(compute_time(&t, 0.0, 1, REFERENCE_MODEL_SIZE), 7.5);
        assert_relative_eq!(
            compute_time(&t, 0.75, 1, REFERENCE_MODEL_SIZE)
                / compute_time(&t, 0.0, 1, REFERENCE_MODEL_SIZE),
            4.0
        );
        let a = compute_time(&t, 0.25, 3, 1000);
        assert!(compute_time(&t, 0.25, 4, 1000) > a);
        assert!(compute_time(&t, 0.5, 3, 1000) > a);
        assert!(compute_time(&t, 0.25, 3, 2000) > a);
    }

    #[test]
    fn transfer_time_unit_conversion() {
        let t = ty("t", 1.0, 1.0, 100.0, 1.0, 1.0);
        assert_eq!(transfer_time(&t, 0.0, 0), 0.0);
        assert_relative_eq!(transfer_time(&t, 0.0, 1_000_000), 10.0);
        assert_relative_eq!(
            transfer_time(&t, 0.25, 2_000_000),
            2.0 * transfer_time(&t, 0.25, 1_000_000)
        );
    }

    #[test]
    fn aggregation_time_calibration() {
        // fastest default device, k = 10, default-size model: about 5 ms.
        let cat = default_catalog();
        let fastest = cat
            .iter()
            .max_by(|a, b| a.cpu.partial_cmp(&b.cpu).unwrap())
            .unwrap();
        assert_relative_eq!(
            aggregation_time(fastest, 0.0, 10, REFERENCE_MODEL_SIZE),
            5.0,
            epsilon = 1e-9
        );
        let t = ty("t", 2.0, 1.0, 1.0, 1.0, 1.0);
        assert_relative_eq!(
            aggregation_time(&t, 0.0, 10, 1000) / aggregation_time(&t, 0.0, 1, 1000),
            10.0
        );
        assert_relative_eq!(
            aggregation_time(&t, 0.5, 3, 1000) / aggregation_time(&t, 0.0, 3, 1000),
            2.0
        );
    }

    #[test]
    fn pow_solve_time_monte_carlo_mean() {
        let t = ty("t", 1.0, 1.0, 1.0, 1.0, 2.0e5);
        let mut s = derive_stream(17, "pow");
        let difficulty = 10;
        let expected = (difficulty as f64).exp2() / (2.0e5 * 0.5) * 1000.0;
        let mean: f64 =
            (0..10_000).map(|_| pow_solve_time(&t, 0.5, difficulty, &mut s)).sum::<f64>() / 10_000.0;
        assert!(
            (mean / expected - 1.0).abs() < 0.03,
            "mean {mean} vs {expected}"
        );
        // rate scaling: doubling hash_rate halves the mean
        let t2 = ty("t2", 1.0, 1.0, 1.0, 1.0, 4.0e5);
        let mean2: f64 =
            (0..10_000).map(|_| pow_solve_time(&t2, 0.5, difficulty, &mut s)).sum::<f64>() / 10_000.0;
        assert!((mean2 * 2.0 / expected - 1.0).abs() < 0.05);
        // difficulty + 1 doubles the mean
        let mean3: f64 = (0..10_000)
            .map(|_| pow_solve_time(&t, 0.5, difficulty + 1, &mut s))
            .sum::<f64>()
            / 10_000.0;
        assert!((mean3 / (2.0 * expected) - 1.0).abs() < 0.05);
    }
}
