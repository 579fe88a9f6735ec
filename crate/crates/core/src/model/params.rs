//! Parameter tensors of the encoder-decoder, with deterministic seeded
//! initialization and flat access for generic updates.

use ndarray::{Array1, Array2};
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::ModelConfig;

/// Fused gate weights of one LSTM layer; rows hold the four gates in the
/// order input, forget, cell, output.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmLayer {
    /// [4H, in_dim]
    pub w_x: Array2<f64>,
    /// [4H, H]
    pub w_h: Array2<f64>,
    /// [4H]
    pub bias: Array1<f64>,
}

impl LstmLayer {
    fn zeros(in_dim: usize, hidden: usize) -> Self {
        LstmLayer {
            w_x: Array2::zeros((4 * hidden, in_dim)),
            w_h: Array2::zeros((4 * hidden, hidden)),
            bias: Array1::zeros(4 * hidden),
        }
    }
}

/// All parameters of the model.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    /// [src_vocab, E]
    pub src_embed: Array2<f64>,
    /// [tgt_vocab, E]
    pub tgt_embed: Array2<f64>,
    pub encoder: Vec<LstmLayer>,
    pub decoder: Vec<LstmLayer>,
    /// Bilinear attention projection, [H, H].
    pub attn: Array2<f64>,
    /// Projection of [context; hidden] to the attentional hidden, [H, 2H].
    pub ctx_proj: Array2<f64>,
    /// [H]
    pub ctx_bias: Array1<f64>,
    /// Output projection to target vocabulary logits, [tgt_vocab, H].
    pub out_proj: Array2<f64>,
    /// [tgt_vocab]
    pub out_bias: Array1<f64>,
}

impl Params {
    pub fn zeros(config: &ModelConfig) -> Self {
        let (e, h, l) = (config.embed_dim, config.hidden_dim, config.num_layers);
        let layer_dims = |layer: usize| if layer == 0 { e } else { h };
        Params {
            src_embed: Array2::zeros((config.src_vocab_size, e)),
            tgt_embed: Array2::zeros((config.tgt_vocab_size, e)),
            encoder: (0..l).map(|k| LstmLayer::zeros(layer_dims(k), h)).collect(),
            decoder: (0..l).map(|k| LstmLayer::zeros(layer_dims(k), h)).collect(),
            attn: Array2::zeros((h, h)),
            ctx_proj: Array2::zeros((h, 2 * h)),
            ctx_bias: Array1::zeros(h),
            out_proj: Array2::zeros((config.tgt_vocab_size, h)),
            out_bias: Array1::zeros(config.tgt_vocab_size),
        }
    }

    /// Seeded uniform initialization scaled by fan-in; biases start at
    /// zero. Identical (config, seed) gives bit-identical parameters.
    pub fn init(config: &ModelConfig, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params = Params::zeros(config);
        let mut fill = |a: &mut Array2<f64>, fan_in: usize| {
            let bound = 1.0 / (fan_in.max(1) as f64).sqrt();
            let dist = Uniform::new_inclusive(-bound, bound);
            for x in a.iter_mut() {
                *x = dist.sample(&mut rng);
            }
        };
        let e = config.embed_dim;
        let h = config.hidden_dim;
        fill(&mut params.src_embed, e);
        fill(&mut params.tgt_embed, e);
        for layer in params.encoder.iter_mut().chain(params.decoder.iter_mut()) {
            let in_dim = layer.w_x.ncols();
            fill(&mut layer.w_x, in_dim);
            fill(&mut layer.w_h, h);
        }
        fill(&mut params.attn, h);
        fill(&mut params.ctx_proj, 2 * h);
        fill(&mut params.out_proj, h);
        params
    }

    /// Named tensors in a fixed order: (name, shape, data view).
    pub fn named_tensors(&self) -> Vec<(String, Vec<usize>, Vec<f64>)> {
        let mut out = Vec::new();
        let push2 = |out: &mut Vec<_>, name: String, a: &Array2<f64>| {
            out.push((name, vec![a.nrows(), a.ncols()], a.iter().copied().collect()));
        };
        let push1 = |out: &mut Vec<_>, name: String, a: &Array1<f64>| {
            out.push((name, vec![a.len()], a.to_vec()));
        };
        push2(&mut out, "src_embed".into(), &self.src_embed);
        push2(&mut out, "tgt_embed".into(), &self.tgt_embed);
        for (side, layers) in [("encoder", &self.encoder), ("decoder", &self.decoder)] {
            for (k, layer) in layers.iter().enumerate() {
                push2(&mut out, format!("{side}.{k}.w_x"), &layer.w_x);
                push2(&mut out, format!("{side}.{k}.w_h"), &layer.w_h);
                push1(&mut out, format!("{side}.{k}.bias"), &layer.bias);
            }
        }
        push2(&mut out, "attn".into(), &self.attn);
        push2(&mut out, "ctx_proj".into(), &self.ctx_proj);
        push1(&mut out, "ctx_bias".into(), &self.ctx_bias);
        push2(&mut out, "out_proj".into(), &self.out_proj);
        push1(&mut out, "out_bias".into(), &self.out_bias);
        out
    }

    /// Apply a function to every parameter, in `named_tensors` order.
    pub fn for_each_mut(&mut self, mut f: impl FnMut(&mut f64)) {
        for a in self.tensors_mut() {
            match a {
                TensorMut::D1(a) => a.iter_mut().for_each(&mut f),
                TensorMut::D2(a) => a.iter_mut().for_each(&mut f),
            }
        }
    }

    pub fn for_each(&self, mut f: impl FnMut(f64)) {
        for (_, _, data) in self.named_tensors() {
            data.into_iter().for_each(&mut f);
        }
    }

    pub fn len(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| n += 1);
        n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Read the i-th parameter in flat order.
    pub fn get_flat(&self, index: usize) -> f64 {
        let mut k = 0;
        let mut found = f64::NAN;
        self.for_each(|x| {
            if k == index {
                found = x;
            }
            k += 1;
        });
        found
    }

    /// Add `delta` to the i-th parameter in flat order.
    pub fn nudge_flat(&mut self, index: usize, delta: f64) {
        let mut k = 0;
        self.for_each_mut(|x| {
            if k == index {
                *x += delta;
            }
            k += 1;
        });
    }

    /// p -= lr * g, elementwise.
    pub fn sgd_step(&mut self, grads: &Params, lr: f64) {
        let mut gs = Vec::new();
        grads.for_each(|g| gs.push(g));
        let mut k = 0;
        self.for_each_mut(|p| {
            *p -= lr * gs[k];
            k += 1;
        });
    }

    pub fn l2_norm(&self) -> f64 {
        let mut sum = 0.0;
        self.for_each(|x| sum += x * x);
        sum.sqrt()
    }

    pub fn scale(&mut self, factor: f64) {
        self.for_each_mut(|x| *x *= factor);
    }

    pub fn all_finite(&self) -> bool {
        let mut ok = true;
        self.for_each(|x| ok &= x.is_finite());
        ok
    }

    fn tensors_mut(&mut self) -> Vec<TensorMut<'_>> {
        let mut out = vec![
            TensorMut::D2(&mut self.src_embed),
            TensorMut::D2(&mut self.tgt_embed),
        ];
        for layer in self.encoder.iter_mut().chain(self.decoder.iter_mut()) {
            out.push(TensorMut::D2(&mut layer.w_x));
            out.push(TensorMut::D2(&mut layer.w_h));
            out.push(TensorMut::D1(&mut layer.bias));
        }
        out.push(TensorMut::D2(&mut self.attn));
        out.push(TensorMut::D2(&mut self.ctx_proj));
        out.push(TensorMut::D1(&mut self.ctx_bias));
        out.push(TensorMut::D2(&mut self.out_proj));
        out.push(TensorMut::D1(&mut self.out_bias));
        out
    }

    /// Rebuild from named tensors, checking shapes against the config.
    pub fn from_named(
        config: &ModelConfig,
        tensors: &[(String, Vec<usize>, Vec<f64>)],
    ) -> Result<Self, super::ModelError> {
        let mut params = Params::zeros(config);
        let expected = params.named_tensors();
        if expected.len() != tensors.len() {
            return Err(super::ModelError::Checkpoint(format!(
                "expected {} tensors, found {}",
                expected.len(),
                tensors.len()
            )));
        }
        for ((name, shape, _), (got_name, got_shape, data)) in
            expected.iter().zip(tensors.iter())
        {
            if name != got_name || shape != got_shape {
                return Err(super::ModelError::Checkpoint(format!(
                    "tensor mismatch: expected {name} {shape:?}, found {got_name} {got_shape:?}"
                )));
            }
            if data.len() != shape.iter().product::<usize>() {
                return Err(super::ModelError::Checkpoint(format!(
                    "tensor {name} has {} values for shape {shape:?}",
                    data.len()
                )));
            }
        }
        let mut flat: Vec<f64> = Vec::new();
        for (_, _, data) in tensors {
            flat.extend_from_slice(data);
        }
        let mut k = 0;
        params.for_each_mut(|x| {
            *x = flat[k];
            k += 1;
        });
        Ok(params)
    }
}

enum TensorMut<'a> {
    D1(&'a mut Array1<f64>),
    D2(&'a mut Array2<f64>),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ModelConfig {
        ModelConfig {
            src_vocab_size: 7,
            tgt_vocab_size: 6,
            embed_dim: 8,
            hidden_dim: 16,
            num_layers: 2,
            ..ModelConfig::default()
        }
    }

    #[test]
    fn init_is_deterministic_per_seed() {
        let config = tiny_config();
        assert_eq!(Params::init(&config, 3), Params::init(&config, 3));
        assert_ne!(Params::init(&config, 3), Params::init(&config, 4));
    }

    #[test]
    fn parameter_count_matches_shape_arithmetic() {
        let config = tiny_config();
        let params = Params::init(&config, 0);
        let (vs, vt, e, h) = (7usize, 6usize, 8usize, 16usize);
        let lstm = |in_dim: usize| 4 * h * in_dim + 4 * h * h + 4 * h;
        let expected = vs * e + vt * e                  // embeddings
            + 2 * (lstm(e) + lstm(h))                   // encoder + decoder stacks
            + h * h                                     // attention
            + h * 2 * h + h                             // context projection
            + vt * h + vt; // output projection
        assert_eq!(params.len(), expected);
    }

    #[test]
    fn flat_roundtrip_and_sgd_step() {
        let config = tiny_config();
        let mut params = Params::init(&config, 1);
        let before = params.get_flat(10);
        params.nudge_flat(10, 0.5);
        assert_eq!(params.get_flat(10), before + 0.5);

        let grads = Params::init(&config, 2);
        let g10 = grads.get_flat(10);
        params.sgd_step(&grads, 0.1);
        let after = params.get_flat(10);
        assert!((after - (before + 0.5 - 0.1 * g10)).abs() < 1e-12);
    }

    #[test]
    fn named_tensor_roundtrip() {
        let config = tiny_config();
        let params = Params::init(&config, 5);
        let named = params.named_tensors();
        let rebuilt = Params::from_named(&config, &named).unwrap();
        assert_eq!(rebuilt, params);
    }
}
