//! Generalized Extreme Value distribution: sampling, quantiles, and fitting.
//!
//! Latency traces are fitted with an L-moment initial estimate refined by
//! Nelder-Mead maximization of the log-likelihood, then ranked against a
//! Gaussian fit by AIC.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use statrs::function::gamma::gamma;

/// GEV parameters: shape xi, scale sigma (> 0), location mu (ms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GevParams {
    pub shape: f64,
    pub scale: f64,
    pub location: f64,
}

impl GevParams {
    pub fn new(shape: f64, scale: f64, location: f64) -> Self {
        assert!(scale > 0.0, "GEV scale must be positive");
        Self {
            shape,
            scale,
            location,
        }
    }
}

/// Quantile (inverse CDF) at probability `u`.
pub fn gev_quantile(p: &GevParams, u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) || u == 0.0 || u == 1.0 || u.is_nan() {
        return Err(Error::InvalidProbability(u));
    }
    let lnu = -u.ln();
    let x = if p.shape == 0.0 {
        p.location - p.scale * lnu.ln()
    } else {
        p.location + p.scale * (lnu.powf(-p.shape) - 1.0) / p.shape
    };
    Ok(x)
}

/// Cumulative distribution function.
pub fn gev_cdf(p: &GevParams, x: f64) -> f64 {
    let z = (x - p.location) / p.scale;
    let t = if p.shape == 0.0 {
        (-z).exp()
    } else {
        let base = 1.0 + p.shape * z;
        if base <= 0.0 {
            // Outside the support: below it for xi > 0, above it for xi < 0.
            return if p.shape > 0.0 { 0.0 } else { 1.0 };
        }
        base.powf(-1.0 / p.shape)
    };
    (-t).exp()
}

/// Log density; `-inf` outside the support.
pub fn gev_ln_pdf(p: &GevParams, x: f64) -> f64 {
    let z = (x - p.location) / p.scale;
    if p.shape == 0.0 {
        let t = (-z).exp();
        -p.scale.ln() - z - t
    } else {
        let base = 1.0 + p.shape * z;
        if base <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let t = base.powf(-1.0 / p.shape);
        -p.scale.ln() + (p.shape + 1.0) * t.ln() - t
    }
}

/// One draw via inverse-CDF sampling.
pub fn gev_sample(p: &GevParams, stream: &mut RngStream) -> f64 {
    let mut u = stream.next_f64();
    if u == 0.0 {
        u = f64::MIN_POSITIVE;
    }
    gev_quantile(p, u).expect("u in (0,1)")
}

/// Sample mean and unbiased standard deviation.
pub fn fit_gaussian(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

const MIN_FIT_SAMPLES: usize = 50;

/// Fit GEV parameters by maximum likelihood.
///
/// The starting point comes from sample L-moments (Hosking's estimators);
/// Nelder-Mead then refines the log-likelihood, so the result is never worse
/// than the L-moment fit.
pub fn fit_gev(samples: &[f64]) -> Result<GevParams> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_FIT_SAMPLES,
            got: samples.len(),
        });
    }
    let first = samples[0];
    if samples.iter().all(|&x| x == first) {
        return Err(Error::DegenerateSamples);
    }

    let init = lmoment_estimate(samples);
    let objective = |theta: &[f64; 3]| -> f64 {
        let p = GevParams {
            shape: theta[0],
            scale: theta[1].exp(),
            location: theta[2],
        };
        let ll: f64 = samples.iter().map(|&x| gev_ln_pdf(&p, x)).sum();
        -ll
    };
    let theta0 = [init.shape, init.scale.ln(), init.location];
    let best = nelder_mead(objective, theta0, [0.05, 0.1, 0.5 * init.scale.max(1e-3)], 800);
    Ok(GevParams {
        shape: best[0],
        scale: best[1].exp(),
        location: best[2],
    })
}

/// L-moment (probability-weighted moment) starting estimate.
fn lmoment_estimate(samples: &[f64]) -> GevParams {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;

    let b0 = xs.iter().sum::<f64>() / n;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for (j, &x) in xs.iter().enumerate() {
        let j = j as f64; // 0-based; weights use (j)/(n-1) style products
        b1 += j * x;
        b2 += j * (j - 1.0) * x;
    }
    b1 /= n * (n - 1.0);
    b2 /= n * (n - 1.0) * (n - 2.0);

    let l1 = b0;
    let l2 = 2.0 * b1 - b0;
    let l3 = 6.0 * b2 - 6.0 * b1 + b0;
    let t3 = l3 / l2;

    // Hosking's approximation, k = -shape.
    let c = 2.0 / (3.0 + t3) - std::f64::consts::LN_2 / 3f64.ln();
    let mut k = 7.8590 * c + 2.9554 * c * c;
    // Keep the initial point inside the region where the L-moment formulas
    // are defined (finite mean, gamma argument positive).
    k = k.clamp(-0.95, 10.0);

    if k.abs() < 1e-6 {
        // Gumbel limit.
        let scale = l2 / std::f64::consts::LN_2;
        let location = l1 - scale * 0.577_215_664_901_532_9;
        return GevParams {
            shape: 0.0,
            scale: scale.max(1e-9),
            location,
        };
    }
    let g = gamma(1.0 + k);
    let scale = (l2 * k / ((1.0 - 2f64.powf(-k)) * g)).max(1e-9);
    let location = l1 - scale * (1.0 - g) / k;
    GevParams {
        shape: -k,
        scale,
        location,
    }
}

/// Plain Nelder-Mead minimizer over R^3. Returns the best vertex seen.
fn nelder_mead<F: Fn(&[f64; 3]) -> f64>(
    f: F,
    x0: [f64; 3],
    step: [f64; 3],
    max_iter: usize,
) -> [f64; 3] {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let mut simplex: Vec<[f64; 3]> = vec![x0];
    for i in 0..3 {
        let mut v = x0;
        v[i] += step[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(&f).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        let sorted: Vec<[f64; 3]> = order.iter().map(|&i| simplex[i]).collect();
        let sorted_vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = sorted;
        values = sorted_vals;

        if (values[3] - values[0]).abs() < 1e-12 * (1.0 + values[0].abs()) {
            break;
        }

        let mut centroid = [0.0; 3];
        for v in simplex.iter().take(3) {
            for i in 0..3 {
                centroid[i] += v[i] / 3.0;
            }
        }

        let worst = simplex[3];
        let mut reflected = [0.0; 3];
        for i in 0..3 {
            reflected[i] = centroid[i] + ALPHA * (centroid[i] - worst[i]);
        }
        let fr = f(&reflected);

        if fr < values[0] {
            let mut expanded = [0.0; 3];
            for i in 0..3 {
                expanded[i] = centroid[i] + GAMMA * (reflected[i] - centroid[i]);
            }
            let fe = f(&expanded);
            if fe < fr {
                simplex[3] = expanded;
                values[3] = fe;
            } else {
                simplex[3] = reflected;
                values[3] = fr;
            }
        } else if fr < values[2] {
            simplex[3] = reflected;
            values[3] = fr;
        } else {
            let mut contracted = [0.0; 3];
            for i in 0..3 {
                contracted[i] = centroid[i] + RHO * (worst[i] - centroid[i]);
            }
            let fc = f(&contracted);
            if fc < values[3] {
                simplex[3] = contracted;
                values[3] = fc;
            } else {
                for v in 1..4 {
                    for i in 0..3 {
                        simplex[v][i] = simplex[0][i] + SIGMA * (simplex[v][i] - simplex[0][i]);
                    }
                    values[v] = f(&simplex[v]);
                }
            }
        }
    }

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0);
    simplex[best]
}

/// One row of a distribution-comparison report.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub model: String,
    pub loglik: f64,
    pub aic: f64,
    /// GEV: (shape, scale, location); Gaussian: (mean, std, unused).
    pub params: [f64; 3],
}

/// Fit every candidate distribution and rank by AIC (ascending).
pub fn compare_fits(samples: &[f64]) -> Result<Vec<FitReport>> {
    let gev = fit_gev(samples)?;
    let gev_ll: f64 = samples.iter().map(|&x| gev_ln_pdf(&gev, x)).sum();

    let (mean, std) = fit_gaussian(samples)?;
    let gauss_ll: f64 = if std > 0.0 {
        let ln_norm = -(std.ln() + 0.5 * (2.0 * std::f64::consts::PI).ln());
        samples
            .iter()
            .map(|&x| {
                let z = (x - mean) / std;
                ln_norm - 0.5 * z * z
            })
            .sum()
    } else {
        f64::NEG_INFINITY
    };

    let mut rows = vec![
        FitReport {
            model: "gev".to_string(),
            loglik: gev_ll,
            aic: 2.0 * 3.0 - 2.0 * gev_ll,
            params: [gev.shape, gev.scale, gev.location],
        },
        FitReport {
            model: "gaussian".to_string(),
            loglik: gauss_ll,
            aic: 2.0 * 2.0 - 2.0 * gauss_ll,
            params: [mean, std, f64::NAN],
        },
    ];
    rows.retain(|r| r.loglik.is_finite());
    rows.sort_by(|a, b| a.aic.partial_cmp(&b.aic).unwrap_or(std::cmp::Ordering::Equal));
    Ok(rows)
}
