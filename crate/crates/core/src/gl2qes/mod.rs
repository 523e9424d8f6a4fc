//! gl(2) generators, particular integrals, the nine-parameter
//! quasi-exactly-solvable operator, the sextic model, and exact commutant
//! verification in both the t- and x-representations.

pub mod gl2;
pub mod heun;
pub mod quasipoly;
pub mod sextic;
pub mod spectrum;
pub mod verify;

pub use gl2::{pi_integral_gl2, Gl2Generators};
pub use heun::{heun_operator, HeunCoeffs, HeunData};
pub use quasipoly::{apply_to_quasipoly, QuasiPoly};
pub use sextic::{sextic_pi_integral_quantum, QuantumPiIntegral, SexticModel};
pub use spectrum::{adjugate_annihilation_check, qes_block_spectrum, BlockSpectrum};
pub use verify::{
    flag_preservation_report, verify_commutant, verify_commutant_quasi, CommutantReport,
    CommutantWitness, FlagReport,
};
