pub mod error;
pub mod graph;
pub mod handelman;
pub mod hierarchies;
pub mod lp;
pub mod maxcut;
pub mod poly;
pub mod rational;
pub mod reproduce;
pub mod stable;

pub use error::{Error, Result};
pub use rational::{Bound, Q};
