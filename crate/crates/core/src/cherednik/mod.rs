//! Parameters, Dunkl operators, the contravariant form on the polynomial
//! representation, and index combinatorics for G(l, m, n).

mod census;
mod dunkl;
mod gram;
mod parameter;
mod poly;

pub use census::{jack_index_census, JackCensus};
pub use dunkl::{dunkl_apply, DunklOperators};
pub use gram::{
    degree_action_matrix, det_multiplicity_l, det_projector, det_row_projector, gram_and_dimension, gram_layers, gram_with_cap, singular_subspace,
    GramLayer, GramReport, SingularSubspace,
};
pub use parameter::{base_parameter, c_function, c_function_of, dot_action, sigma, BaseParameter, Parameter};
pub use poly::{monomials_of_degree, substitution_matrix, Monomial, Poly};
