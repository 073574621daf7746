//! The learning substrate: a 2-layer sigmoid network, mini-batch SGD, and
//! parameter aggregation. All operations are pure functions of their inputs.

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Output-layer activation. Softmax pairs with multi-class cross-entropy;
/// sigmoid pairs with per-class binary cross-entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputActivation {
    Softmax,
    Sigmoid,
}

#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub classes: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub local_steps: usize,
    pub output_activation: OutputActivation,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            input_dim: 784,
            hidden_dim: 64,
            classes: 10,
            batch_size: 128,
            learning_rate: 0.1,
            local_steps: 5,
            output_activation: OutputActivation::Softmax,
        }
    }
}

impl ModelConfig {
    pub fn param_count(&self) -> usize {
        self.input_dim * self.hidden_dim
            + self.hidden_dim
            + self.hidden_dim * self.classes
            + self.classes
    }
}

/// Flat parameter vector with shape metadata.
///
/// Layout: W1 (input x hidden, row-major), b1, W2 (hidden x classes,
/// row-major), b2.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub classes: usize,
    pub weights: Vec<f64>,
}

impl ModelParams {
    pub fn param_count(&self) -> usize {
        self.weights.len()
    }

    /// Simulated wire size: 4 bytes per parameter.
    pub fn payload_bytes(&self) -> u64 {
        4 * self.weights.len() as u64
    }

    /// Canonical little-endian serialization (shape header plus weights).
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 8 * self.weights.len());
        out.extend_from_slice(&(self.input_dim as u32).to_le_bytes());
        out.extend_from_slice(&(self.hidden_dim as u32).to_le_bytes());
        out.extend_from_slice(&(self.classes as u32).to_le_bytes());
        for w in &self.weights {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    fn offsets(&self) -> (usize, usize, usize) {
        let w1 = self.input_dim * self.hidden_dim;
        let b1 = w1 + self.hidden_dim;
        let w2 = b1 + self.hidden_dim * self.classes;
        (w1, b1, w2)
    }
}

/// Glorot-uniform initialization with zero biases.
pub fn init_model(stream: &mut RngStream, cfg: &ModelConfig) -> ModelParams {
    let mut weights = vec![0.0; cfg.param_count()];
    let r1 = (6.0 / (cfg.input_dim + cfg.hidden_dim) as f64).sqrt();
    let r2 = (6.0 / (cfg.hidden_dim + cfg.classes) as f64).sqrt();
    let w1 = cfg.input_dim * cfg.hidden_dim;
    let b1 = w1 + cfg.hidden_dim;
    let w2 = b1 + cfg.hidden_dim * cfg.classes;
    for w in weights.iter_mut().take(w1) {
        *w = (stream.next_f64() * 2.0 - 1.0) * r1;
    }
    for w in weights.iter_mut().take(w2).skip(b1) {
        *w = (stream.next_f64() * 2.0 - 1.0) * r2;
    }
    ModelParams {
        input_dim: cfg.input_dim,
        hidden_dim: cfg.hidden_dim,
        classes: cfg.classes,
        weights,
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Hidden activations and output activations for a batch.
fn forward_inner(
    params: &ModelParams,
    batch: &Dataset,
    activation: OutputActivation,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if batch.dim != params.input_dim {
        return Err(Error::DimensionMismatch(format!(
            "batch feature dim {} != model input dim {}",
            batch.dim, params.input_dim
        )));
    }
    let (w1_end, b1_end, w2_end) = params.offsets();
    let w1 = &params.weights[..w1_end];
    let b1 = &params.weights[w1_end..b1_end];
    let w2 = &params.weights[b1_end..w2_end];
    let b2 = &params.weights[w2_end..];
    let (h, c) = (params.hidden_dim, params.classes);
    let rows = batch.len();

    let mut hidden = vec![0.0; rows * h];
    let mut out = vec![0.0; rows * c];
    for r in 0..rows {
        let x = batch.row(r);
        let hrow = &mut hidden[r * h..(r + 1) * h];
        hrow.copy_from_slice(b1);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            let wrow = &w1[i * h..(i + 1) * h];
            for (hj, wj) in hrow.iter_mut().zip(wrow) {
                *hj += xi * wj;
            }
        }
        for hj in hrow.iter_mut() {
            *hj = sigmoid(*hj);
        }

        let orow = &mut out[r * c..(r + 1) * c];
        orow.copy_from_slice(b2);
        for (j, &hj) in hrow.iter().enumerate() {
            let wrow = &w2[j * c..(j + 1) * c];
            for (oc, wc) in orow.iter_mut().zip(wrow) {
                *oc += hj * wc;
            }
        }
        match activation {
            OutputActivation::Softmax => {
                let max = orow.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let mut sum = 0.0;
                for oc in orow.iter_mut() {
                    *oc = (*oc - max).exp();
                    sum += *oc;
                }
                for oc in orow.iter_mut() {
                    *oc /= sum;
                }
            }
            OutputActivation::Sigmoid => {
                for oc in orow.iter_mut() {
                    *oc = sigmoid(*oc);
                }
            }
        }
    }
    Ok((hidden, out))
}

/// Class-probability matrix, row-major `batch.len() x classes`.
pub fn forward(params: &ModelParams, batch: &Dataset, cfg: &ModelConfig) -> Result<Vec<f64>> {
    forward_inner(params, batch, cfg.output_activation).map(|(_, out)| out)
}

/// Mean cross-entropy loss and its gradient with respect to the weights.
pub fn loss_and_grad(
    params: &ModelParams,
    batch: &Dataset,
    cfg: &ModelConfig,
) -> Result<(f64, Vec<f64>)> {
    let rows = batch.len();
    if rows == 0 {
        return Err(Error::EmptyShard);
    }
    let (hidden, out) = forward_inner(params, batch, cfg.output_activation)?;
    let (w1_end, b1_end, w2_end) = params.offsets();
    let w2 = &params.weights[b1_end..w2_end];
    let (h, c) = (params.hidden_dim, params.classes);
    let inv_b = 1.0 / rows as f64;
    const EPS: f64 = 1e-12;

    let mut loss = 0.0;
    // dL/dZ2, shared by softmax + CE and sigmoid + per-class BCE.
    let mut dz2 = vec![0.0; rows * c];
    for r in 0..rows {
        let y = batch.labels[r] as usize;
        let orow = &out[r * c..(r + 1) * c];
        match cfg.output_activation {
            OutputActivation::Softmax => {
                loss -= (orow[y].max(EPS)).ln() * inv_b;
            }
            OutputActivation::Sigmoid => {
                for (cls, &a) in orow.iter().enumerate() {
                    let t = if cls == y { 1.0 } else { 0.0 };
                    loss -= (t * a.max(EPS).ln() + (1.0 - t) * (1.0 - a).max(EPS).ln()) * inv_b;
                }
            }
        }
        let drow = &mut dz2[r * c..(r + 1) * c];
        for (cls, (&a, d)) in orow.iter().zip(drow.iter_mut()).enumerate() {
            let t = if cls == y { 1.0 } else { 0.0 };
            *d = (a - t) * inv_b;
        }
    }

    let mut grad = vec![0.0; params.weights.len()];
    {
        let (gw1, rest) = grad.split_at_mut(w1_end);
        let (gb1, rest) = rest.split_at_mut(b1_end - w1_end);
        let (gw2, gb2) = rest.split_at_mut(w2_end - b1_end);
        let mut dz1 = vec![0.0; h];
        for r in 0..rows {
            let drow = &dz2[r * c..(r + 1) * c];
            let hrow = &hidden[r * h..(r + 1) * h];
            let x = batch.row(r);

            for (j, &hj) in hrow.iter().enumerate() {
                let gw2_row = &mut gw2[j * c..(j + 1) * c];
                for (g, &d) in gw2_row.iter_mut().zip(drow) {
                    *g += hj * d;
                }
            }
            for (g, &d) in gb2.iter_mut().zip(drow) {
                *g += d;
            }

            for (j, dz) in dz1.iter_mut().enumerate() {
                let wrow = &w2[j * c..(j + 1) * c];
                let dh: f64 = wrow.iter().zip(drow).map(|(&w, &d)| w * d).sum();
                let hj = hrow[j];
                *dz = dh * hj * (1.0 - hj);
            }
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0.0 {
                    continue;
                }
                let gw1_row = &mut gw1[i * h..(i + 1) * h];
                for (g, &d) in gw1_row.iter_mut().zip(&dz1) {
                    *g += xi * d;
                }
            }
            for (g, &d) in gb1.iter_mut().zip(&dz1) {
                *g += d;
            }
        }
    }
    Ok((loss, grad))
}

/// `local_steps` mini-batch SGD updates; batches are sampled without
/// replacement per pass through the shard, driven by `stream`.
pub fn local_sgd(
    params: &ModelParams,
    shard: &Dataset,
    cfg: &ModelConfig,
    stream: &mut RngStream,
) -> Result<ModelParams> {
    if shard.is_empty() {
        return Err(Error::EmptyShard);
    }
    let mut current = params.clone();
    let mut order: Vec<usize> = (0..shard.len()).collect();
    stream.shuffle(&mut order);
    let mut pos = 0;
    for _ in 0..cfg.local_steps {
        if pos >= order.len() {
            stream.shuffle(&mut order);
            pos = 0;
        }
        let take = cfg.batch_size.min(order.len() - pos);
        let batch = shard.subset(&order[pos..pos + take]);
        pos += take;
        let (_, grad) = loss_and_grad(&current, &batch, cfg)?;
        for (w, g) in current.weights.iter_mut().zip(&grad) {
            *w -= cfg.learning_rate * g;
        }
    }
    Ok(current)
}

/// Weighted mean of parameter vectors; uniform by default.
pub fn aggregate(updates: &[ModelParams], weights: Option<&[f64]>) -> Result<ModelParams> {
    let first = updates.first().ok_or(Error::EmptyList)?;
    if updates
        .iter()
        .any(|u| u.weights.len() != first.weights.len() || u.input_dim != first.input_dim)
    {
        return Err(Error::ShapeMismatch);
    }
    let uniform = vec![1.0; updates.len()];
    let w = match weights {
        Some(w) => {
            if w.len() != updates.len() {
                return Err(Error::InvalidWeights(format!(
                    "{} weights for {} updates",
                    w.len(),
                    updates.len()
                )));
            }
            if w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
                return Err(Error::InvalidWeights("negative or non-finite".to_string()));
            }
            w
        }
        None => &uniform,
    };
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidWeights("weights sum to zero".to_string()));
    }
    let mut acc = vec![0.0; first.weights.len()];
    for (update, &wk) in updates.iter().zip(w) {
        let scale = wk / total;
        for (a, &v) in acc.iter_mut().zip(&update.weights) {
            *a += scale * v;
        }
    }
    Ok(ModelParams {
        input_dim: first.input_dim,
        hidden_dim: first.hidden_dim,
        classes: first.classes,
        weights: acc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{synth_dataset, Dataset};
    use crate::rng::derive_stream;
    use approx::assert_relative_eq;

    fn small_cfg() -> ModelConfig {
        ModelConfig {
            input_dim: 12,
            hidden_dim: 6,
            classes: 4,
            batch_size: 8,
            learning_rate: 0.1,
            local_steps: 1,
            output_activation: OutputActivation::Softmax,
        }
    }

    fn random_batch(cfg: &ModelConfig, n: usize, seed: u64) -> Dataset {
        let mut s = derive_stream(seed, "init");
        let features = (0..n * cfg.input_dim).map(|_| s.next_f64()).collect();
        let labels = (0..n).map(|_| s.next_below(cfg.classes) as u8).collect();
        Dataset {
            features,
            labels,
            dim: cfg.input_dim,
        }
    }

    #[test]
    fn init_deterministic_with_expected_shape() {
        let cfg = ModelConfig::default();
        let a = init_model(&mut derive_stream(1, "init"), &cfg);
        let b = init_model(&mut derive_stream(1, "init"), &cfg);
        assert_eq!(a, b);
        assert_eq!(a.param_count(), 50_890);
        // biases are zero
        let w1 = cfg.input_dim * cfg.hidden_dim;
        for &bias in &a.weights[w1..w1 + cfg.hidden_dim] {
            assert_eq!(bias, 0.0);
        }
        let w2_end = w1 + cfg.hidden_dim + cfg.hidden_dim * cfg.classes;
        for &bias in &a.weights[w2_end..] {
            assert_eq!(bias, 0.0);
        }
    }

    #[test]
    fn forward_zero_weights_uniform() {
        let cfg = small_cfg();
        let params = ModelParams {
            input_dim: cfg.input_dim,
            hidden_dim: cfg.hidden_dim,
            classes: cfg.classes,
            weights: vec![0.0; cfg.param_count()],
        };
        let batch = random_batch(&cfg, 5, 2);
        let probs = forward(&params, &batch, &cfg).unwrap();
        for &p in &probs {
            assert_relative_eq!(p, 1.0 / cfg.classes as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn forward_rows_sum_to_one() {
        let cfg = small_cfg();
        let params = init_model(&mut derive_stream(3, "init"), &cfg);
        let batch = random_batch(&cfg, 7, 4);
        let probs = forward(&params, &batch, &cfg).unwrap();
        for r in 0..7 {
            let sum: f64 = probs[r * cfg.classes..(r + 1) * cfg.classes].iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
            for &p in &probs[r * cfg.classes..(r + 1) * cfg.classes] {
                assert!(p > 0.0 && p < 1.0);
            }
        }
    }

    #[test]
    fn forward_matches_straight_line_reimplementation() {
        let cfg = small_cfg();
        let params = init_model(&mut derive_stream(5, "init"), &cfg);
        let batch = random_batch(&cfg, 6, 6);
        let probs = forward(&params, &batch, &cfg).unwrap();

        // naive independent recomputation
        let (ind, hd, cl) = (cfg.input_dim, cfg.hidden_dim, cfg.classes);
        for r in 0..batch.len() {
            let x = batch.row(r);
            let mut hidden = vec![0.0; hd];
            for j in 0..hd {
                let mut z = params.weights[ind * hd + j];
                for i in 0..ind {
                    z += x[i] * params.weights[i * hd + j];
                }
                hidden[j] = 1.0 / (1.0 + (-z).exp());
            }
            let b2_off = ind * hd + hd + hd * cl;
            let mut logits = vec![0.0; cl];
            for c in 0..cl {
                let mut z = params.weights[b2_off + c];
                for j in 0..hd {
                    z += hidden[j] * params.weights[ind * hd + hd + j * cl + c];
                }
                logits[c] = z;
            }
            let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
            let sum: f64 = exps.iter().sum();
            for c in 0..cl {
                assert_relative_eq!(probs[r * cl + c], exps[c] / sum, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let cfg = small_cfg();
        let params = init_model(&mut derive_stream(5, "init"), &cfg);
        let mut bad = random_batch(&cfg, 3, 6);
        bad.dim = cfg.input_dim - 1;
        bad.features.truncate(3 * bad.dim);
        assert!(matches!(
            forward(&params, &bad, &cfg),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_weight_loss_is_ln_classes() {
        let cfg = ModelConfig::default();
        let params = ModelParams {
            input_dim: cfg.input_dim,
            hidden_dim: cfg.hidden_dim,
            classes: cfg.classes,
            weights: vec![0.0; cfg.param_count()],
        };
        let batch = random_batch(&cfg, 4, 8);
        let (loss, _) = loss_and_grad(&params, &batch, &cfg).unwrap();
        assert_relative_eq!(loss, 10f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn gradient_matches_central_finite_differences() {
        for activation in [OutputActivation::Softmax, OutputActivation::Sigmoid] {
            let mut cfg = small_cfg();
            cfg.output_activation = activation;
            let mut params = init_model(&mut derive_stream(7, "init"), &cfg);
            // nonzero biases so their gradient entries are exercised too
            let mut s = derive_stream(8, "init");
            for w in params.weights.iter_mut() {
                *w += 0.05 * (s.next_f64() - 0.5);
            }
            let batch = random_batch(&cfg, 10, 9);
            let (_, grad) = loss_and_grad(&params, &batch, &cfg).unwrap();

            let eps = 1e-5;
            let mut max_rel = 0.0f64;
            for idx in 0..params.weights.len() {
                let orig = params.weights[idx];
                params.weights[idx] = orig + eps;
                let (lp, _) = loss_and_grad(&params, &batch, &cfg).unwrap();
                params.weights[idx] = orig - eps;
                let (lm, _) = loss_and_grad(&params, &batch, &cfg).unwrap();
                params.weights[idx] = orig;
                let fd = (lp - lm) / (2.0 * eps);
                let denom = grad[idx].abs().max(fd.abs()).max(1e-6);
                max_rel = max_rel.max((grad[idx] - fd).abs() / denom);
            }
            assert!(max_rel < 1e-4, "max relative error {max_rel}");
        }
    }

    #[test]
    fn duplicated_batch_same_loss_and_grad() {
        let cfg = small_cfg();
        let params = init_model(&mut derive_stream(11, "init"), &cfg);
        let batch = random_batch(&cfg, 5, 12);
        let doubled = {
            let idx: Vec<usize> = (0..5).chain(0..5).collect();
            batch.subset(&idx)
        };
        let (l1, g1) = loss_and_grad(&params, &batch, &cfg).unwrap();
        let (l2, g2) = loss_and_grad(&params, &doubled, &cfg).unwrap();
        assert_relative_eq!(l1, l2, epsilon = 1e-12);
        for (a, b) in g1.iter().zip(&g2) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn sgd_zero_learning_rate_is_identity() {
        let mut cfg = small_cfg();
        cfg.learning_rate = 0.0;
        cfg.local_steps = 3;
        let params = init_model(&mut derive_stream(13, "init"), &cfg);
        let shard = random_batch(&cfg, 9, 14);
        let out = local_sgd(&params, &shard, &cfg, &mut derive_stream(15, "shuffle")).unwrap();
        assert_eq!(params, out);
    }

    #[test]
    fn sgd_single_step_matches_manual_update() {
        let mut cfg = small_cfg();
        cfg.local_steps = 1;
        cfg.batch_size = 1;
        let params = init_model(&mut derive_stream(17, "init"), &cfg);
        let shard = random_batch(&cfg, 1, 18);
        let out = local_sgd(&params, &shard, &cfg, &mut derive_stream(19, "shuffle")).unwrap();
        let (_, grad) = loss_and_grad(&params, &shard, &cfg).unwrap();
        for ((&w_new, &w_old), &g) in out.weights.iter().zip(&params.weights).zip(&grad) {
            assert_relative_eq!(w_new, w_old - cfg.learning_rate * g, epsilon = 1e-15);
        }
    }

    #[test]
    fn sgd_reduces_loss_on_separable_data() {
        let mut cfg = small_cfg();
        cfg.local_steps = 50;
        cfg.learning_rate = 0.5;
        let mut ds_stream = derive_stream(20, "init").keyed(&[93]);
        let shard = synth_dataset(&mut ds_stream, 40, &cfg, 0.02).unwrap();
        let params = init_model(&mut derive_stream(21, "init"), &cfg);
        let (before, _) = loss_and_grad(&params, &shard, &cfg).unwrap();
        let trained = local_sgd(&params, &shard, &cfg, &mut derive_stream(22, "shuffle")).unwrap();
        let (after, _) = loss_and_grad(&trained, &shard, &cfg).unwrap();
        assert!(after < before, "loss {before} -> {after}");
    }

    #[test]
    fn sgd_reproducible_and_input_untouched() {
        let cfg = small_cfg();
        let params = init_model(&mut derive_stream(23, "init"), &cfg);
        let snapshot = params.clone();
        let shard = random_batch(&cfg, 9, 24);
        let a = local_sgd(&params, &shard, &cfg, &mut derive_stream(25, "shuffle")).unwrap();
        let b = local_sgd(&params, &shard, &cfg, &mut derive_stream(25, "shuffle")).unwrap();
        assert_eq!(a, b);
        assert_eq!(params, snapshot);
        assert!(matches!(
            local_sgd(
                &params,
                &Dataset {
                    features: vec![],
                    labels: vec![],
                    dim: cfg.input_dim
                },
                &cfg,
                &mut derive_stream(25, "shuffle")
            ),
            Err(Error::EmptyShard)
        ));
    }

    #[test]
    fn aggregate_idempotent_and_mean() {
        let cfg = small_cfg();
        let w = init_model(&mut derive_stream(27, "init"), &cfg);
        let agg = aggregate(&[w.clone(), w.clone(), w.clone()], None).unwrap();
        for (a, b) in agg.weights.iter().zip(&w.weights) {
            assert_relative_eq!(a, b, epsilon = 1e-15);
        }
        let w2 = init_model(&mut derive_stream(28, "init"), &cfg);
        let mean = aggregate(&[w.clone(), w2.clone()], None).unwrap();
        for ((&m, &a), &b) in mean.weights.iter().zip(&w.weights).zip(&w2.weights) {
            assert_relative_eq!(m, (a + b) / 2.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn aggregate_weighted_matches_brute_force() {
        let cfg = small_cfg();
        let updates: Vec<ModelParams> = (0..5)
            .map(|i| init_model(&mut derive_stream(30 + i, "init"), &cfg))
            .collect();
        let weights = [1.0, 2.0, 3.0, 4.0, 5.0];
        let agg = aggregate(&updates, Some(&weights)).unwrap();
        let total: f64 = weights.iter().sum();
        for idx in 0..agg.weights.len() {
            let expected: f64 = updates
                .iter()
                .zip(&weights)
                .map(|(u, &w)| w * u.weights[idx])
                .sum::<f64>()
                / total;
            assert_relative_eq!(agg.weights[idx], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn aggregate_error_paths() {
        let cfg = small_cfg();
        let w = init_model(&mut derive_stream(40, "init"), &cfg);
        assert!(matches!(aggregate(&[], None), Err(Error::EmptyList)));
        let mut other = w.clone();
        other.weights.push(0.0);
        assert!(matches!(
            aggregate(&[w.clone(), other], None),
            Err(Error::ShapeMismatch)
        ));
        assert!(matches!(
            aggregate(&[w.clone()], Some(&[-1.0])),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(
            aggregate(&[w.clone()], Some(&[0.0])),
            Err(Error::InvalidWeights(_))
        ));
    }

    #[test]
    fn aggregate_permutation_invariant() {
        let cfg = small_cfg();
        let updates: Vec<ModelParams> = (0..4)
            .map(|i| init_model(&mut derive_stream(50 + i, "init"), &cfg))
            .collect();
        let mut reversed = updates.clone();
        reversed.reverse();
        let a = aggregate(&updates, None).unwrap();
        let b = aggregate(&reversed, None).unwrap();
        for (x, y) in a.weights.iter().zip(&b.weights) {
            assert_relative_eq!(x, y, epsilon = 1e-12);
        }
    }
}
