//! Model hyperparameters.

use serde::{Deserialize, Serialize};

/// Encoder-decoder dimensions and training settings. Defaults are
/// desk-scale; the reference setup of 2 layers of 500 units with
/// 500-wide embeddings is a supported configuration, not the default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    /// Filled from the vocabulary at initialization when zero.
    pub src_vocab_size: usize,
    pub tgt_vocab_size: usize,
    pub embed_dim: usize,
    pub hidden_dim: usize,
    pub num_layers: usize,
    pub max_src_len: usize,
    pub max_tgt_len: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub beam_width: usize,
    /// Global gradient-norm clip; non-positive disables clipping.
    pub grad_clip: f64,
    /// Vocabulary cutoff used when training from files.
    pub min_freq: usize,
    pub seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            src_vocab_size: 0,
            tgt_vocab_size: 0,
            embed_dim: 64,
            hidden_dim: 64,
            num_layers: 2,
            max_src_len: 256,
            max_tgt_len: 64,
            learning_rate: 0.5,
            epochs: 30,
            batch_size: 16,
            beam_width: 10,
            grad_clip: 5.0,
            min_freq: 1,
            seed: 0,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<(), super::ModelError> {
        let dims = [
            ("embed_dim", self.embed_dim),
            ("hidden_dim", self.hidden_dim),
            ("num_layers", self.num_layers),
            ("max_src_len", self.max_src_len),
            ("max_tgt_len", self.max_tgt_len),
            ("batch_size", self.batch_size),
            ("beam_width", self.beam_width),
        ];
        for (name, value) in dims {
            if value == 0 {
                return Err(super::ModelError::Config(format!("{name} must be >= 1")));
            }
        }
        Ok(())
    }
}
