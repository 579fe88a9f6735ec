//! stub
pub struct ModelConfig;
pub struct Seq2SeqModel;
pub struct Prediction;
