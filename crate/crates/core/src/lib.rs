//! Nash equilibria of a two-provider market where one provider dimensions its
//! network for URLLC (delay-tail bound) and the other for eMBB (mean-delay
//! bound), and users value the peak Age of Information of each provider's
//! M/M/1-FCFS update stream.
//!
//! - [`aoi`]: closed-form average and peak AoI, delay tail, service classes.
//! - [`market`]: Hotelling shares, consumer surplus, profit, coverage.
//! - [`equilibrium`]: best responses and the equilibrium solver.
//! - [`sweep`]: comparative statics with CSV/JSON output.
//! - [`sim`]: seeded discrete-event simulation of the update queue.
//! - [`cli`]: the `aoi-duopoly` command-line tool.
//!
//! ```
//! use aoi_duopoly::{find_nash, Scenario};
//!
//! let eq = find_nash(&Scenario::default());
//! assert!(eq.converged);
//! assert!(eq.outcome.m1 > eq.outcome.m2);
//! ```

pub mod aoi;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod market;
pub mod optimize;
mod serde_ext;
pub mod sim;
pub mod sweep;

pub use aoi::{average_aoi, delay_tail_probability, peak_aoi, QueueOperatingPoint, ServiceClass};
pub use equilibrium::{best_response, find_nash, EquilibriumResult, Role, Strategy};
pub use error::ModelError;
pub use market::{MarketOutcome, Scenario};
pub use sim::{simulate, SimConfig, SimReport};
pub use sweep::{run_sweep, SweepRecord, SweepSpec};
