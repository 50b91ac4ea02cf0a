//! Exact combinatorics for lower-bounding Yang indices of Stiefel manifolds
//! and oriented Grassmannians: sign matrices and their validity certificates,
//! GF(2) chain algebra with a free involution, complexes of valid faces, and
//! an interval-propagation engine over the known index bounds.

pub mod bounds;
pub mod chain;
pub mod complex;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod validity;
