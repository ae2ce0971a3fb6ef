//! Depth and search caps shared by every exhaustive operation.

use crate::error::{Error, Result};

/// Environment variable that overrides the level and scan depth caps.
pub const DEPTH_CAP_ENV: &str = "TRIP_DEPTH_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Deepest level materialised as a list.
    pub level_cap: usize,
    /// Deepest level visited by an exhaustive (streaming) scan.
    pub scan_cap: usize,
    /// Deepest level reached by single-path walks.
    pub path_cap: usize,
    /// Deepest subdivision rendered.
    pub render_cap: usize,
    /// Largest digit tried by the subtriangle search.
    pub digit_cap: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { level_cap: 30, scan_cap: 25, path_cap: 60, render_cap: 12, digit_cap: 1_000_000 }
    }
}

impl Limits {
    /// Defaults, with `TRIP_DEPTH_CAP` applied when set.
    pub fn from_env() -> Result<Limits> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(DEPTH_CAP_ENV) {
            let cap: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse { what: "TRIP_DEPTH_CAP", input: raw.clone() })?;
            limits = limits.with_depth_cap(cap);
        }
        Ok(limits)
    }

    pub fn with_depth_cap(mut self, cap: usize) -> Limits {
        self.level_cap = cap;
        self.scan_cap = cap;
        self
    }

    pub fn check_level(&self, depth: usize) -> Result<()> {
        check(depth, self.level_cap)
    }

    pub fn check_scan(&self, depth: usize) -> Result<()> {
        check(depth, self.scan_cap)
    }

    pub fn check_path(&self, depth: usize) -> Result<()> {
        check(depth, self.path_cap)
    }

    pub fn check_render(&self, depth: usize) -> Result<()> {
        check(depth, self.render_cap)
    }
}

fn check(requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::DepthCap { requested, cap })
    } else {
        Ok(())
    }
}
