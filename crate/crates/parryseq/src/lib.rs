//! Positional numeration systems, exact beta-expansions, canonical Parry
//! automata and automatic sequences in one and two dimensions.

pub mod algebraic;
pub mod automata;
pub mod beta;
mod bigser;
pub mod experiments;
pub mod numsys;
pub mod sequences;

pub use algebraic::{isolate_real_roots, AlgebraicReal, FieldElement, IntPoly, Sign};
pub use automata::{
    canonical_parry_automaton, enumerate_genealogical, equivalent, is_bertrand_regular,
    is_primitive, langdfa::language_dfa, path_counts, product_dfao, reverse_dfao,
    right_quotients, AutomataError, Dfa, Dfao, RightQuotients, Symbol,
};
pub use beta::{
    beta_expand, bertrand_language_check, canonical_system, is_parry, parry_admissible,
    quasi_greedy, BetaError, BetaExpansion, ParryStatus, PeriodicWord, QuasiGreedy,
};
pub use numsys::{genealogical_cmp, DigitWord, NumerationSystem, NumsysError};
pub use sequences::{
    char_sequence_from_regular_set, evaluate2d, evaluate2d_u64, grid_from_machine,
    kernel::{index_set, kernel, kernel2d, kernel2d_to_dfao, kernel2d_to_forward_dfao, kernel_finiteness},
    pair_product_dfao,
    substitution::{automaton_to_substitution, Substitution},
    AutomaticSequence, Grid2D, SeqError,
};
