//! Free graded shuffle Hopf algebras over Q.

mod element;
pub mod json;
pub mod lyndon;
mod tensor;
mod word;

pub use element::{
    coassociativity_defect, cobar_defect, deconcat_word, project_bidegree, reduced_word,
    shuffle_product, shuffle_words, tensor, tensor_mul, ShuffleElement, TensorElement,
    TensorElement3,
};
pub use lyndon::{is_lyndon, LyndonBasis, LyndonPoly};
pub use tensor::{Tensor2, Tensor3};
pub use word::{Generator, GeneratorSet, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShuffleError {
    #[error("generator {0:?} has half-weight 0")]
    ZeroWeight(String),
    #[error("duplicate generator id {0:?}")]
    DuplicateId(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("word {0} uses letters outside the generator set")]
    ForeignWord(String),
    #[error("malformed shuffle element: {0}")]
    Parse(String),
}
