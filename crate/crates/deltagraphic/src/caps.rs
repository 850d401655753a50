//! Enumeration caps.
//!
//! Exhaustive routines check their input size against these limits and fail
//! with [`Error::Resource`](crate::Error::Resource) rather than silently
//! truncating. The CLI installs values from its config file once at start-up;
//! library users may do the same with [`set`].

use serde::{Deserialize, Serialize};
use std::sync::RwLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Ground-set size for explicit base/circuit enumeration.
    pub bases: usize,
    /// Ground-set size for isomorphism and minor scans.
    pub minor_scan: usize,
    /// Ground-set size for subset scans (separations, decompositions).
    pub separation: usize,
    /// Rank limit for cocycle-space scans used by graphicness tests.
    pub cocycle_rank: usize,
    /// Edge count for T-spanning forest enumeration.
    pub graft_edges: usize,
    /// Vertex count for pivot-minor search.
    pub pivot_minor: usize,
    /// Element count for the excluded-minor search.
    pub search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            bases: 16,
            minor_scan: 12,
            separation: 48,
            cocycle_rank: 20,
            graft_edges: 18,
            pivot_minor: 8,
            search: 10,
        }
    }
}

static CAPS: RwLock<Option<Caps>> = RwLock::new(None);

pub fn get() -> Caps {
    CAPS.read().ok().and_then(|c| *c).unwrap_or_default()
}

pub fn set(caps: Caps) {
    if let Ok(mut c) = CAPS.write() {
        *c = Some(caps);
    }
}

/// Fail with a resource error when `got > limit`.
pub fn check(what: &'static str, limit: usize, got: usize) -> crate::Result<()> {
    if got > limit {
        Err(crate::Error::Resource { what, limit, got })
    } else {
        Ok(())
    }
}
