//! Exact symbolic verification engine for the operator calculus of leafwise
//! cochain complexes over the solvable pair an ⊂ sl(2,R).
//!
//! Everything is computed over the field Q(i,√2) with no floating point:
//! Clifford algebras with their spin representations, PBW normal forms for
//! the enveloping algebras, the closed operator identities of the three
//! tensor ambients, a finitely presented rewrite calculus for the
//! discrete-series operators, Chevalley–Eilenberg cohomology with Hodge
//! families, the subalgebra spectral sequence, truncated weight models, and
//! the genus-parametrized dimension tables.

pub mod clifford;
pub mod complex;
pub mod identities;
pub mod lie;
pub mod matrix;
pub mod oprewrite;
pub mod pbw;
pub mod scalar;
pub mod spectral;
pub mod tables;
pub mod tensor;
pub mod weights;
