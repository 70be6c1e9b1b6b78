//! Archimedean data: K-Bessel functions, the Whittaker function, special-value
//! constants of the degenerate Heisenberg Eisenstein series, and the long intertwiner.

mod constants;
mod intertwiner;
mod special;
mod sympoly;
mod whittaker;

pub use constants::{
    constant_term_constants, f0_quadrature, f0_special, f1_rank1_coeff, ConstantTermConstants, F0Special, ZetaPiConstant,
};
pub use intertwiner::{
    a_factor, basis_matrix, c_f, composed_c_function, composed_c_function_float, intertwiner_data, intertwiner_ratio,
    short_root_c, simple_reflection_c, word_pairings, z_factor, z_leading, IntertwinerData, LeadingTerm,
    A_DENOMINATOR_ROOTS, A_NUMERATOR_ROOTS, LONGEST_WORD, EXPECTED_BASIS_MATRIX,
};
pub use special::{gamma, gamma_c, gamma_r, kbessel, zeta};
pub use sympoly::{generating_sum, generating_target, half_pochhammers, pochhammer, poly_identity_check, SymPoly};
pub use whittaker::{pairing_with_r0, whittaker, WhittakerQuery, WhittakerValue};
