//! Graded path algebras with relations, truncated at a path degree `D`, and
//! the module-level machinery behind truncated mutation: free and presented
//! graded modules, minimal projective resolutions, Ext between simples,
//! mutation of one projective, and the duality check against the simples of
//! the iterated tilt.
//!
//! Conventions. Paths are stored in traversal order (first arrow first). The
//! JSON format writes relation paths right to left, like composition, so
//! `["delta", "alpha"]` means `alpha` followed by `delta`. `P_v` is spanned by
//! the paths starting at `v` and an arrow acts by appending itself, so
//! `Hom(P_θ, P_α)` is the span of paths from `α` to `θ`.

mod algebra;
mod complex;
mod module;
mod mutation;

pub use algebra::{Algebra, Arrow, NormalForm, Quiver, QuiverSpec, Word};
pub use complex::{ext_simples, minimal_resolution, ProjComplex};
pub use module::{hom_space, Free, GradedRep, Module, Presented};
pub use mutation::{
    run_mutation, tilted_simples, verify_dual_pairing, DualPairingReport, MutationRun,
    MutationState, PairingEntry, Section, StepOutcome, StepRecord,
};
