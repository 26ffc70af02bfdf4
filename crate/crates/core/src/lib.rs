//! Exact symbolic kernel for the quantum supergroup OSP_q(1|2n):
//! scalars over Q(q), root data, the quantized enveloping
//! superalgebra and its finite-dimensional modules, the coordinate
//! superalgebra in its Peter-Weyl basis, and the induced-module /
//! section machinery for quantum homogeneous superspaces.

pub mod context;
pub mod coordring;
pub mod homogeneous;
pub mod error;
pub mod linalg;
pub mod par;
pub mod repcore;
pub mod rootdata;
pub mod scalars;
pub mod uqalg;
