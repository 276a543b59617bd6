//! Block, Brauer-character and weight labels of `GL_n(eps q)` and
//! `SL_n(eps q)` in non-defining characteristic `ell`, with exhaustive
//! checks of the blockwise weight equalities and a brute-force matrix-group
//! oracle.
//!
//! ```
//! use blockweights::{arith::{InstanceParams, Sign}, instance::Instance, symbols};
//!
//! let inst = Instance::new(InstanceParams::new(2, 5, Sign::Plus, 3).unwrap());
//! assert_eq!(symbols::enumerate_block_symbols(&inst).len(), 12);
//! assert_eq!(symbols::enumerate_admissible_symbols(&inst).len(), 16);
//! ```

pub mod arith;
pub mod error;
pub mod instance;
pub mod oracle;
pub mod partitions;
pub mod semisimple;
pub mod symbols;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};

/// How batch work is scheduled. Output never depends on the choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map; runs on the rayon pool when the `parallel` feature
/// is on and `exec` asks for it.
pub fn par_map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}
