//! Enumeration and search caps.
//!
//! Every exhaustive step in the crate checks one of these before it starts,
//! and refuses with [`Error::SpanTooLarge`] or [`Error::CapExceeded`] naming
//! the cap instead of running away.

use crate::error::{Error, Result};

/// Default cap on the number of vectors enumerated from any span (2^24).
pub const DEFAULT_SPAN_CAP: u64 = 1 << 24;
/// Default node budget for the exact orthogonal-family search.
pub const DEFAULT_CLIQUE_NODES: u64 = 10_000_000;
/// Default cap on t-subsets counted by the design checker.
pub const DEFAULT_DESIGN_CAP: u64 = 1 << 24;
/// Default cap on error patterns tried by exhaustive decoder verification.
pub const DEFAULT_ERROR_PATTERN_CAP: u64 = 1 << 24;

/// Caps shared by all analyses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest span (code, dual code, or coset) that may be enumerated.
    pub span_cap: u64,
    /// Node budget for branch-and-bound maximum-clique search.
    pub clique_nodes: u64,
    /// Optional weight cap on candidate parity checks. Setting it makes
    /// every orthogonal-family result a lower bound only.
    pub max_check_weight: Option<usize>,
    /// Largest number of t-subsets the design checker may count.
    pub design_cap: u64,
    /// Largest number of error patterns exhaustive MLD verification may try.
    pub error_pattern_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            span_cap: DEFAULT_SPAN_CAP,
            clique_nodes: DEFAULT_CLIQUE_NODES,
            max_check_weight: None,
            design_cap: DEFAULT_DESIGN_CAP,
            error_pattern_cap: DEFAULT_ERROR_PATTERN_CAP,
        }
    }
}

impl Limits {
    /// Refuses unless a span of `2^dim` vectors fits under the span cap.
    pub fn check_span(&self, dim: usize) -> Result<()> {
        if span_size(dim).is_some_and(|size| size <= self.span_cap as u128) {
            Ok(())
        } else {
            Err(Error::SpanTooLarge {
                log2_size: dim,
                cap: self.span_cap,
            })
        }
    }

    /// Applies a `key=value[,key=value...]` override string, as read from the
    /// `SRRLAB_CAPS` environment variable.
    ///
    /// Keys: `span` (alias `dual`), `clique-nodes`, `check-weight`, `design`,
    /// `errors`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameters(format!("cap override `{item}` is not key=value")))?;
            let parsed: u64 = value.trim().parse().map_err(|_| {
                Error::InvalidParameters(format!("cap override `{item}` has a non-integer value"))
            })?;
            match key.trim() {
                "span" | "dual" => self.span_cap = parsed,
                "clique-nodes" | "clique" => self.clique_nodes = parsed,
                "check-weight" => self.max_check_weight = Some(parsed as usize),
                "design" => self.design_cap = parsed,
                "errors" => self.error_pattern_cap = parsed,
                other => return Err(Error::InvalidParameters(format!(
                    "unknown cap `{other}` (expected span, dual, clique-nodes, check-weight, design, errors)"
                ))),
            }
        }
        Ok(())
    }
}

fn span_size(dim: usize) -> Option<u128> {
    if dim < 127 {
        Some(1u128 << dim)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_cap_boundary() {
        let limits = Limits {
            span_cap: 1 << 11,
            ..Limits::default()
        };
        assert!(limits.check_span(11).is_ok());
        assert_eq!(
            limits.check_span(12),
            Err(Error::SpanTooLarge {
                log2_size: 12,
                cap: 2048
            })
        );
        assert!(limits.check_span(200).is_err());
    }

    #[test]
    fn overrides() {
        let mut limits = Limits::default();
        limits
            .apply_overrides("dual=4096, clique-nodes=5,errors=10")
            .unwrap();
        assert_eq!(limits.span_cap, 4096);
        assert_eq!(limits.clique_nodes, 5);
        assert_eq!(limits.error_pattern_cap, 10);
        assert!(limits.apply_overrides("bogus=1").is_err());
        assert!(limits.apply_overrides("span").is_err());
        assert!(limits.apply_overrides("span=x").is_err());
    }
}
