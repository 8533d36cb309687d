pub mod coeffs;
pub mod eval;
pub mod rate;
pub mod series;
pub mod verify;
