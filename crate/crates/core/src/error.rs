use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report.
///
/// Variants split into two families: input or construction errors
/// (arity mismatches, zero denominators, points off a variety) and honest
/// negative verdicts (a law that does not hold, a slice that is not
/// regular). Callers that present results, such as the session runner,
/// use [`Error::is_verdict`] to tell them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("groebner budget exceeded after {steps} S-pair steps")]
    BudgetExceeded { steps: u64 },
    #[error("representatives {first} and {second} disagree in coordinate {coordinate}")]
    RepresentativeMismatch { first: usize, second: usize, coordinate: usize },
    #[error("pullback of target relation {relation} does not vanish: {residue}")]
    NotIntoTarget { relation: String, residue: String },
    #[error("denominator vanishes identically: {0}")]
    ZeroDenominator(String),
    #[error("rational map is not dominant")]
    NotDominant,
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("could not certify birationality: {0}")]
    NotBirational(String),
    #[error("point does not lie on the variety: {0}")]
    PointNotOnVariety(String),
    #[error("group axiom fails: {law}: {residue}")]
    AxiomFailure { law: String, residue: String },
    #[error("not an action: {law} fails with residue {residue}")]
    NotAnAction { law: String, residue: String },
    #[error("computed locus is empty; supply more representatives")]
    EmptyLocus,
    #[error("point does not lie on the group: {0}")]
    PointNotOnGroup(String),
    #[error("open subset is empty")]
    EmptyOpen,
    #[error("round trip failed: {0}")]
    RoundTripFailure(String),
    #[error("pullback escapes the linear span: {0}")]
    NotInSpan(String),
    #[error("denominator {denominator} is not supported on V({f})")]
    NotFPower { denominator: String, f: String },
    #[error("sample enumeration exhausted after {tried} candidates")]
    BudgetExhausted { tried: usize },
    #[error("slice at sample {sample} is not regular: {slice}")]
    SliceNotRegular { sample: usize, slice: String },
    #[error("solved coefficient {index} is not regular: {residue}")]
    NonPolynomialResidue { index: usize, residue: String },
    #[error("specialization at {point} is not a regular automorphism")]
    NotRegularOnSample { point: String },
    #[error("sample matrix is singular")]
    SingularSamples,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for errors that are a negative answer to the question asked
    /// rather than a malformed question.
    pub fn is_verdict(&self) -> bool {
        matches!(
            self,
            Error::NotAnAction { .. }
                | Error::AxiomFailure { .. }
                | Error::SliceNotRegular { .. }
                | Error::NonPolynomialResidue { .. }
                | Error::NotRegularOnSample { .. }
        )
    }

    /// The variant name, for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::RepresentativeMismatch { .. } => "RepresentativeMismatch",
            Error::NotIntoTarget { .. } => "NotIntoTarget",
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::NotDominant => "NotDominant",
            Error::NotComposable(_) => "NotComposable",
            Error::NotBirational(_) => "NotBirational",
            Error::PointNotOnVariety(_) => "PointNotOnVariety",
            Error::AxiomFailure { .. } => "AxiomFailure",
            Error::NotAnAction { .. } => "NotAnAction",
            Error::EmptyLocus => "EmptyLocus",
            Error::PointNotOnGroup(_) => "PointNotOnGroup",
            Error::EmptyOpen => "EmptyOpen",
            Error::RoundTripFailure(_) => "RoundTripFailure",
            Error::NotInSpan(_) => "NotInSpan",
            Error::NotFPower { .. } => "NotFPower",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::SliceNotRegular { .. } => "SliceNotRegular",
            Error::NonPolynomialResidue { .. } => "NonPolynomialResidue",
            Error::NotRegularOnSample { .. } => "NotRegularOnSample",
            Error::SingularSamples => "SingularSamples",
            Error::Unsupported(_) => "Unsupported",
            Error::Invalid(_) => "Invalid",
        }
    }
}
