//! Finite-index subgroups as transitive coset actions.

pub mod action;
pub mod lowindex;
pub mod presentation;
pub mod schreier;
pub mod word;

pub use action::{gamma0_action, CosetAction};
pub use lowindex::low_index_actions;
pub use presentation::{bianchi_presentation, GroupKind, Presentation};
pub use schreier::{abelianized_rs, cusp_count, rotation_free_cusps, schreier, SchreierData};
pub use word::Word;
