use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
  #[error("input error: {0}")]
  Input(String),
  #[error("parse error at line {line}, column {column}: {message}")]
  Parse { line: usize, column: usize, message: String },
  #[error("unknown element `{0}`")]
  UnknownElement(String),
  #[error("duplicate face `{0}`")]
  DuplicateFace(String),
  #[error("arrows {0}->{1} and {1}->{0} violate antisymmetry")]
  NotAntisymmetric(String, String),
  #[error("dimension mismatch: {0}")]
  Shape(String),
  #[error("map {0}->{1} is not injective")]
  NotInjective(String, String),
  #[error("map {0}->{1} is not surjective")]
  NotSurjective(String, String),
  #[error("composition {0}->{1}->{2} is not functorial")]
  NotFunctorial(String, String, String),
  #[error("missing map {0}->{1}")]
  MissingMap(String, String),
  #[error("variance mismatch: {0}")]
  Variance(String),
  #[error("not an open set: {0}")]
  NotOpen(String),
  #[error("not a cover: {0}")]
  NotCover(String),
  #[error("degree {0} out of range (complex built to degree {1})")]
  Degree(usize, usize),
  #[error("missing conditional product of `{0}` and `{1}`")]
  NoConditionalProduct(String, String),
  #[error("inclusion is not strict and simplicial: {0}")]
  BadInclusion(String),
  #[error("cohomology does not stabilize: H^{0} = {1} past the poset dimension")]
  Unstable(usize, usize),
  #[error("identity check failed: {0}")]
  Identity(String),
}
