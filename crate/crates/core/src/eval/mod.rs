//! stub
pub struct EvalReport;
pub struct Ranking;
pub fn jaccard() {}
pub fn coverage() {}
pub fn slice_ranking() {}
