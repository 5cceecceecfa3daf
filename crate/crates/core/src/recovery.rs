//! Recovery sets of data objects.
//!
//! A set of servers `R` recovers object `ℓ` when `e_ℓ` lies in the span of
//! the columns indexed by `R`. Over GF(2) the subsets whose columns sum to
//! exactly `e_ℓ` are the coset `x₀ + C⊥` of any particular solution `x₀`,
//! so minimal recovery sets are the inclusion-minimal supports in that coset.

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{enumerate_coset, BinaryMatrix, BinaryVector};

/// Servers (0-based, ascending) whose stored symbols sum to `e_object`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RecoverySet {
    pub object: usize,
    pub servers: Vec<usize>,
    pub minimal: bool,
}

impl RecoverySet {
    pub fn len(&self) -> usize {
        self.servers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.servers.is_empty()
    }

    pub fn incidence(&self, n: usize) -> BinaryVector {
        BinaryVector::from_indices(n, &self.servers).expect("servers are within the code length")
    }

    /// `{1, 12, 13}` style rendering with 1-based server labels.
    pub fn label(&self) -> String {
        format_set(&self.servers)
    }
}

/// Renders 0-based indices as a 1-based set literal.
pub fn format_set(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `Σ_{j ∈ servers} c^j`.
pub fn column_sum(code: &LinearCode, servers: &[usize]) -> Result<BinaryVector> {
    let x = BinaryVector::from_indices(code.n(), servers)?;
    code.generator().mul_vec(&x)
}

/// Incidence vectors of all minimal recovery sets of `object`, ordered by
/// size and then lexicographically.
pub fn minimal_recovery_vectors(
    code: &LinearCode,
    object: usize,
    span_cap: u64,
) -> Result<Vec<BinaryVector>> {
    code.check_object(object)?;
    let target = BinaryVector::unit(code.k(), object);
    let particular = code.generator().solve(&target)?.ok_or_else(|| {
        Error::Internal(format!(
            "e_{} is outside the column space of a full-rank generator",
            object + 1
        ))
    })?;
    let mut coset: Vec<BinaryVector> = enumerate_coset(&particular, code.dual_basis(), span_cap)?.collect();
    coset.sort_by(BinaryVector::cmp_by_support);
    let mut minimal: Vec<BinaryVector> = Vec::new();
    for v in coset {
        if !minimal.iter().any(|m| m.is_subset_of(&v)) {
            minimal.push(v);
        }
    }
    Ok(minimal)
}

/// All minimal recovery sets of `object`, ordered by size, then
/// lexicographically.
pub fn minimal_recovery_sets(code: &LinearCode, object: usize, span_cap: u64) -> Result<Vec<RecoverySet>> {
    Ok(minimal_recovery_vectors(code, object, span_cap)?
        .iter()
        .map(|v| RecoverySet {
            object,
            servers: v.support(),
            minimal: true,
        })
        .collect())
}

/// The minimum recovery-set size `a` and every minimal set of that size.
pub fn smallest_recovery_sets(
    code: &LinearCode,
    object: usize,
    span_cap: u64,
) -> Result<(usize, Vec<RecoverySet>)> {
    let all = minimal_recovery_sets(code, object, span_cap)?;
    let a = all
        .first()
        .map(RecoverySet::len)
        .ok_or_else(|| Error::Internal("object without any recovery set".into()))?;
    Ok((a, all.into_iter().take_while(|r| r.len() == a).collect()))
}

/// If `servers` can recover `object`, a witness subset whose columns sum to
/// `e_object`; otherwise `None`.
pub fn is_recovery_set(code: &LinearCode, object: usize, servers: &[usize]) -> Result<Option<Vec<usize>>> {
    code.check_object(object)?;
    check_servers(code, servers)?;
    if servers.is_empty() {
        return Ok(None);
    }
    let columns: Vec<BinaryVector> = servers.iter().map(|&j| code.column(j)).collect();
    let sub = BinaryMatrix::from_columns(&columns)?;
    let target = BinaryVector::unit(code.k(), object);
    Ok(sub.solve(&target)?.map(|x| {
        let mut witness: Vec<usize> = x.iter_ones().map(|i| servers[i]).collect();
        witness.sort_unstable();
        witness
    }))
}

/// True when `servers` sum to `e_object` and no proper subset recovers it.
pub fn is_minimal_recovery_set(code: &LinearCode, object: usize, servers: &[usize]) -> Result<bool> {
    code.check_object(object)?;
    check_servers(code, servers)?;
    if servers.is_empty() || column_sum(code, servers)? != BinaryVector::unit(code.k(), object) {
        return Ok(false);
    }
    for skip in 0..servers.len() {
        let rest: Vec<usize> = servers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &j)| j)
            .collect();
        if is_recovery_set(code, object, &rest)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `χ(R1 Δ R2)` for two distinct minimal recovery sets of the same object,
/// checked to be a nonzero dual codeword of weight at least `d⊥`.
pub fn symmetric_difference_check(
    code: &LinearCode,
    object: usize,
    first: &[usize],
    second: &[usize],
    span_cap: u64,
) -> Result<BinaryVector> {
    let mut a = first.to_vec();
    let mut b = second.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a == b {
        return Err(Error::Precondition(
            "symmetric difference needs two distinct recovery sets".into(),
        ));
    }
    for set in [&a, &b] {
        if !is_minimal_recovery_set(code, object, set)? {
            return Err(Error::Precondition(format!(
                "{} is not a minimal recovery set for object {}",
                format_set(set),
                object + 1
            )));
        }
    }
    let chi = BinaryVector::from_indices(code.n(), &a)?.xor(&BinaryVector::from_indices(code.n(), &b)?);
    if chi.is_zero() || !code.is_dual_codeword(&chi)? {
        return Err(Error::Internal(
            "symmetric difference is not a nonzero dual codeword".into(),
        ));
    }
    match code.dual_distance(span_cap)? {
        Some(d) if chi.weight() < d => Err(Error::Internal(format!(
            "dual codeword of weight {} below dual distance {d}",
            chi.weight()
        ))),
        _ => Ok(chi),
    }
}

fn check_servers(code: &LinearCode, servers: &[usize]) -> Result<()> {
    match servers.iter().find(|&&j| j >= code.n()) {
        Some(&j) => Err(Error::IndexOutOfRange {
            index: j + 1,
            bound: code.n(),
        }),
        None => Ok(()),
    }
}
