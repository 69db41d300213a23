//! Rule-based resolution of *dousha* ("the same company") in annotated
//! Japanese newspaper text.
//!
//! The crate consumes standoff annotations (companies, people, titles and
//! the anaphor itself, each with its trailing particle) and provides:
//!
//! * [`corpus`]: the line-delimited JSON corpus format and its validation
//! * [`structure`]: sentence distance and the location/context taxonomy
//! * [`resolver`]: the nearest-company baseline and the particle cascades
//! * [`profiler`] and [`evaluator`]: gold-link statistics and accuracy
//! * [`synthgen`] and [`golden`]: synthetic and hand-built fixtures
//! * [`cli`]: the `dousha` command-line front end

pub mod build;
pub mod cli;
pub mod corpus;
pub mod evaluator;
pub mod golden;
pub mod model;
pub mod particle;
pub mod profiler;
pub mod resolver;
pub mod structure;
pub mod synthgen;

pub use corpus::{load_corpus, validate_corpus, write_corpus, CorpusError, LoadError};
pub use evaluator::{compare_methods, evaluate, EvalReport, MethodComparison, Tally};
pub use model::{Corpus, Document, Located, Mention, MentionKind, Paragraph, Position, Sentence};
pub use particle::{normalize_particle, AnaphorParticle, Particle};
pub use profiler::{distant_particle_stat, profile, DistantReferentStat, LocationContextProfile};
pub use resolver::{candidates_before, MethodId, Resolution, Resolver, ResolverConfig, RuleId, RuleOrder};
pub use structure::{ClosingSet, ContextCategory, LocationCategory};
pub use synthgen::{generate_corpus, generate_document, GenSpec};
