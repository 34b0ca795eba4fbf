use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("duplicate identifier {0:?}")]
    DuplicateId(String),
    #[error("object {0:?} not in category")]
    ObjectNotInCategory(String),
    #[error("object {0:?} not in target category")]
    ObjectNotInTarget(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("missing or invalid identity at object {object:?}: {detail}")]
    MissingIdentity { object: String, detail: String },
    #[error("composition not associative: ({h} ∘ {g}) ∘ {f} differs from {h} ∘ ({g} ∘ {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("incompatible endpoints for {g} ∘ {f}: {detail}")]
    IncompatibleEndpoints { g: String, f: String, detail: String },
    #[error("composition table has no entry for {g} ∘ {f}")]
    IncompleteCompositionTable { g: String, f: String },
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),
    #[error("category is not EI: endomorphism {0:?} is not invertible")]
    NotEI(String),
    #[error("category is not skeletal: {0:?} and {1:?} are isomorphic")]
    NotSkeletal(String, String),

    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different categories or fields: {0}")]
    MismatchedBase(String),
    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),
    #[error("degree {requested} exceeds the computed bound {bound}")]
    DegreeOverflow { requested: usize, bound: usize },
    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("functor is not the identity on objects: {0}")]
    NotIdentityOnObjects(String),
    #[error("functor is not surjective on Mor({src}, {tgt})")]
    NotSurjective { src: String, tgt: String },
    #[error("extension has the wrong orientation: {0}")]
    WrongOrientation(String),
    #[error("no theorem shape matches: {0}")]
    ShapeMismatch(String),
    #[error("not regular: {0}")]
    NotRegular(String),

    #[error("group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("collection of {size} subgroups exceeds the bound {bound}")]
    CollectionTooLarge { size: usize, bound: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("collection not closed under conjugation: {0}")]
    CollectionNotClosed(String),
    #[error("composition is not well defined: {0}")]
    IllDefinedComposition(String),
    #[error("centralizer splitting failed: {0}")]
    SplittingFailure(String),
}
