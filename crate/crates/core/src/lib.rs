pub mod error;
pub mod polyring;
pub mod modgb;
pub mod frobenius;
pub mod testideal;
pub mod listmod;
pub mod estimate;
pub mod bfun;
pub mod problem;
pub mod cli;
