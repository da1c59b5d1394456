//! Equation systems over x₀ = 0, x₁ = 1 with sum and product equations and an
//! all-distinct constraint; builders for the system families, symbolic
//! propagation over ℤ[t], verification and witnesses.

mod builders;
mod propagate;
mod system;
mod verify;
mod witness;

pub use builders::{
    build_cofinite, build_cofinite_cofinite, build_finite, build_finite_all, build_phi_n, build_root_of_unity,
    prime_product, root_of_unity_params, Family, MAX_CHAIN,
};
pub use propagate::{
    bad_set_certificate, evaluate, plan, propagate_symbolic, reduce_values, BadSetCertificate, PairDifference, Plan,
    PrimeVerdict,
};
pub use system::{Equation, EquationKind, EquationSystem, Finding, X0, X1};
pub use verify::{search_solutions, verify_assignment, Assignment, VerificationReport, ViolatedEquation};
pub use witness::{finite_all_degree, witness_finite_all, witness_root_of_unity, SkewWitness};
