pub mod balanced;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod nondecreasing;
pub mod perm;
pub mod rational;
pub mod rng;
pub mod setfn;
pub mod subset;
pub mod transform;
pub mod twolayer;

pub use error::{Error, Result};

pub use balanced::{BalancedVector, SubsetMultiset};
pub use cone::{ConeH, Ray};
pub use matroid::Matroid;
pub use nondecreasing::Antichain;
pub use rational::Rational;
pub use rng::Lcg64;
pub use setfn::{ClosePair, SetFunction};
pub use subset::SubsetMask;
pub use transform::SupermodularityVector;
