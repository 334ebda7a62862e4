//! Valued complexes: simplicial stacks, discrete Morse functions, their
//! gradient vector fields, gradient paths, basification and stack collapses.

mod basify;
mod certify;
mod gradient;
mod stack;
mod valued;

pub use basify::basify;
pub use certify::{
    check_dmf, check_stack, is_basic_dmf, is_basic_stack, BasicViolation, DmfCertificate, DmfSide,
    DmfViolation, StackCertificate, StackViolation,
};
pub use gradient::{
    dmf_gradient, enumerate_gradient_paths, find_closed_path, forman_equivalent, has_closed_path,
    stack_gradient, Criticality, GradientPath, GradientVectorField, Vector,
};
pub(crate) use stack::minimum_ids;
pub use stack::{
    divide, free_pairs_for_stack, minima, ultimate_stack_collapse, Minima, Minimum, StackCollapse,
};
pub use valued::ValuedComplex;
