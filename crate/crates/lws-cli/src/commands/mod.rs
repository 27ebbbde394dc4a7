//! One module per subcommand family; each exposes a `run`-style function
//! returning an outcome struct, so the clap layer in `main` stays a thin
//! shell over testable logic.

pub mod breathing;
pub mod calibrate;
pub mod estimate;
pub mod occupancy;
pub mod simulate;
