//! Exact symbolic kernel for two-parameter quantum groups `U_{r,s}(g)` of
//! finite type.
//!
//! The crate builds the algebra from its generators-and-relations
//! presentation over the exact field ℚ(r, s) (and auxiliary parameters for
//! twists and one-parameter specializations), and provides:
//!
//! * canonical rational-function scalars and quantum combinatorics
//!   ([`scalars`]);
//! * Cartan data of the finite types, the associated asymmetric Euler form,
//!   and the structure constants it induces ([`cartan`]);
//! * the free layer: words in the generators, weight bookkeeping, and
//!   (anti)homomorphisms defined on generators ([`freealg`]);
//! * the algebra itself: straightening to triangular normal form, quantum
//!   Serre ideal reduction, dimension counts, and the standard
//!   (anti)automorphisms ([`urs`]);
//! * the Hopf structure: coproduct, counit, antipode ([`hopf`]);
//! * the skew Hopf pairing between the positive and negative halves and its
//!   Gram matrices ([`pairing`]);
//! * two-cocycle deformations along bicharacters of the weight lattice and
//!   the induced equivalences between parameter pairs ([`cocycle`]);
//! * the skew-derivation calculus on the positive half ([`kashiwara`]);
//! * machine-readable verification reports ([`report`]), an element
//!   expression grammar ([`expr`]), and the verification suites behind the
//!   command-line interface ([`suites`]).
//!
//! All symbolic computation is exact; there is no floating point anywhere.
//! Every algebra can also be instantiated at a sampled rational point
//! (specialization mode), which runs the same verification logic with
//! constant scalars as a cross-check on the symbolic path.

pub mod cartan;
pub mod cocycle;
pub mod freealg;
pub mod hopf;
pub mod kashiwara;
pub mod pairing;
pub mod scalars;
pub mod urs;
