//! Library surface of the `ginv` command-line tool: report schema, input
//! loading, and the selfcheck battery. The binary in `main.rs` is a thin
//! dispatcher over these.

pub mod io;
pub mod report;
pub mod selfcheck;

/// Exit codes shared by the subcommands.
pub mod exit_codes {
    /// Success; for `analyze`/`balance`/`flower`: the non-negative/balanced outcome.
    pub const OK: i32 = 0;
    /// Internal error or selfcheck discrepancy.
    pub const INTERNAL: i32 = 1;
    /// Input/precondition failure: unreadable or malformed file, not
    /// bipartite, no perfect matching, matching not unique.
    pub const PRECONDITION: i32 = 2;
    /// The decision procedure answered negatively: an odd flower exists
    /// (`analyze`, `flower`) or the graph is unbalanced (`balance`).
    pub const ODD_FLOWER: i32 = 10;
}
