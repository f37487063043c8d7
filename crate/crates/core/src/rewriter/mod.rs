//! Free words, Reidemeister-Schreier rewriting and the reduction to a
//! single-relator presentation of the surface group.

mod links;
mod schreier;
mod simplify;
mod symbols;
mod word;

use std::collections::BTreeSet;

use thiserror::Error;

pub use links::{are_linked, check_evenly_worded, check_fully_linked};
pub use schreier::{
    base_presentation, long_relator, subgroup_presentation, RelatorOrigin, SchreierPresentation, SchreierSystem,
};
pub use simplify::{
    induced_action_on_generators, long_relator_image, simplify_to_single_relator, single_relator_presentation,
    t0_presentation, SimplifiedPresentation,
};
pub use symbols::{BaseGenerator, GeneratorSymbol, SchreierGenerator, SymbolKind};
pub use word::{FreeWord, Letter, Symbol};

use crate::invariants::PrimeOrderData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("word is not in the kernel: it ends in coset {coset}")]
    NotInKernel { coset: u32 },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("word is not evenly worded")]
    NotEvenlyWorded,
    #[error("operation does not apply with t = {0}")]
    BadT(usize),
}

/// A finite presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<G> {
    pub generators: Vec<G>,
    pub relators: Vec<FreeWord<G>>,
}

impl<G: Symbol> Presentation<G> {
    /// Every relator uses only listed generators, and none is listed twice.
    pub fn is_consistent(&self) -> bool {
        let gens: BTreeSet<&G> = self.generators.iter().collect();
        gens.len() == self.generators.len()
            && self
                .relators
                .iter()
                .all(|r| r.letters().iter().all(|l| gens.contains(&l.symbol)))
    }
}

/// Coset of `w` under the surface-kernel map of `d` (as given, not
/// normalized), i.e. its image in `Z_p`.
pub fn coset_of(w: &FreeWord<BaseGenerator>, d: &PrimeOrderData) -> Result<u32, RewriteError> {
    SchreierSystem::for_data(d).phi(w)
}

/// Rewrite a kernel word into Schreier generators, dropping the discarded
/// ones (see [`SchreierSystem::is_deleted`]).
pub fn rewrite_tau(
    w: &FreeWord<BaseGenerator>,
    d: &PrimeOrderData,
) -> Result<FreeWord<SchreierGenerator>, RewriteError> {
    let sys = SchreierSystem::for_data(d);
    Ok(sys.delete_trivial(&sys.rewrite(w)?))
}
