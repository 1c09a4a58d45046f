//! Experiments and verifications built on the engine.

pub mod agreement;
pub mod cocycle;
pub mod hn;
pub mod hypotheses;
pub mod repetitivity;
pub mod separation;

pub use agreement::{ball_agreement, constructed_agreement, AgreementReport, ConstructedAgreement};
pub use cocycle::{phi, phi_report, tau, CocycleEvaluation, PhiReport};
pub use hn::{parity_embedding_check, parity_sample_words, verify_hn, HnOptions, HnReport, ParityReport, TileContexts};
pub use hypotheses::{
    check_linrep_hypotheses, minimality_witness, theorem_hypothesis_check, LinrepReport, TheoremHypothesisReport,
};
pub use repetitivity::{repetitivity, repetitivity_of_sequence, RepetitivityReport};
pub use separation::{separation_experiment, SeparationReport};
