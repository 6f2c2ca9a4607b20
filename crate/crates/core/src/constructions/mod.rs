//! Generated machines, machine-to-machine compilers and brute-force language oracles.

mod builder;
pub mod fixtures;
mod map;
mod oracles;
mod otto;
mod power_of_two;
mod doubling;
pub mod rm_to_pcpa;
pub mod sync_to_mhpda;

pub use doubling::build_doubling_sensing_pda;
pub use map::{CompilationMap, StateNote};
pub use oracles::{oracle_otto, oracle_power_of_two, Oracle};
pub use otto::build_otto_acceptor;
pub use power_of_two::build_power_of_two_pcpa;
pub use rm_to_pcpa::{compile_rm_to_pcpa, RmCompilation};
pub use sync_to_mhpda::{compile_sync_pcpa_to_mhpda, SyncCompilation};
