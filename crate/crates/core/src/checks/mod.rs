//! Parity checks orthogonal on a coordinate set.
//!
//! Checks `I_1..I_J` are orthogonal on `O` when every `I_i ⊇ O` and
//! `I_i ∩ I_j = O` for `i ≠ j`. The maximum `J_O` is a maximum clique in the
//! graph whose vertices are candidate checks and whose edges join checks with
//! disjoint residuals `I \ O`. Before the search the residuals are reduced to
//! the inclusion-minimal ones: swapping a residual for a subset keeps a
//! family disjoint, so the clique number is unchanged.

pub mod clique;

use serde::{Deserialize, Serialize};

use crate::codes::{next_combination, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{enumerate_span, BinaryVector};
use crate::limits::Limits;
use crate::rational::Rational;
use crate::recovery::{column_sum, smallest_recovery_sets, RecoverySet};
use clique::{greedy_clique, max_clique, Bitset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Branch and bound to proven optimality (within the node budget).
    Exact,
    /// One greedy pass; a maximal family only.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalFamily {
    /// The common set `O`, 0-based and ascending.
    pub base: Vec<usize>,
    /// Check supports `I_i`, each containing `base`, ordered by size then
    /// lexicographically.
    pub members: Vec<Vec<usize>>,
    /// Set when the family is not proven maximum: greedy mode, a candidate
    /// weight cap, or an exhausted node budget.
    pub lower_bound_only: bool,
    pub nodes: u64,
}

impl OrthogonalFamily {
    pub fn j(&self) -> usize {
        self.members.len()
    }

    /// `I_i \ O` for every member.
    pub fn residuals(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|m| m.iter().copied().filter(|j| !self.base.contains(j)).collect())
            .collect()
    }

    /// Checks the three defining properties against `code`.
    pub fn validate(&self, code: &LinearCode) -> Result<()> {
        let zero = BinaryVector::zeros(code.k());
        for m in &self.members {
            if column_sum(code, m)? != zero {
                return Err(Error::Internal(format!(
                    "{} is not a parity check",
                    crate::recovery::format_set(m)
                )));
            }
            if !self.base.iter().all(|o| m.contains(o)) {
                return Err(Error::Internal("check does not contain the base set".into()));
            }
        }
        let residuals = self.residuals();
        for (i, a) in residuals.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::Internal("check equal to the base set".into()));
            }
            for b in &residuals[i + 1..] {
                if a.iter().any(|x| b.contains(x)) {
                    return Err(Error::Internal("checks meet outside the base set".into()));
                }
            }
        }
        Ok(())
    }
}

/// Supports of all parity checks strictly containing `base`, ordered by size
/// then lexicographically.
///
/// With `limits.max_check_weight = Some(w)` only checks of weight at most
/// `w` are produced, by enumerating subsets instead of the dual code.
pub fn parity_checks_through(code: &LinearCode, base: &[usize], limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let base_vec = BinaryVector::from_indices(code.n(), base)?;
    let mut out: Vec<BinaryVector> = match limits.max_check_weight {
        None => enumerate_span(code.dual_basis(), code.n(), limits.span_cap)?
            .filter(|w| base_vec.is_subset_of(w) && *w != base_vec)
            .collect(),
        Some(w) => bounded_checks(code, &base_vec, w, limits.span_cap)?,
    };
    out.sort_by(BinaryVector::cmp_by_support);
    Ok(out.iter().map(BinaryVector::support).collect())
}

fn bounded_checks(
    code: &LinearCode,
    base: &BinaryVector,
    max_weight: usize,
    cap: u64,
) -> Result<Vec<BinaryVector>> {
    let rest: Vec<usize> = (0..code.n()).filter(|&j| !base.get(j)).collect();
    let extra = max_weight.saturating_sub(base.weight()).min(rest.len());
    let needed: u128 = (1..=extra).map(|s| binomial(rest.len(), s)).sum();
    if needed > cap as u128 {
        return Err(Error::CapExceeded {
            what: "weight-bounded parity-check candidates",
            needed,
            cap,
        });
    }
    let target = code.generator().mul_vec(base)?;
    let columns: Vec<BinaryVector> = rest.iter().map(|&j| code.column(j)).collect();
    let mut out = Vec::new();
    for size in 1..=extra {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut sum = BinaryVector::zeros(code.k());
            for &i in &combo {
                sum.xor_assign(&columns[i]);
            }
            if sum == target {
                let mut v = base.clone();
                for &i in &combo {
                    v.set(rest[i], true);
                }
                out.push(v);
            }
            if !next_combination(&mut combo, rest.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A largest family of parity checks orthogonal on `base`.
pub fn max_orthogonal_family(
    code: &LinearCode,
    base: &[usize],
    mode: SearchMode,
    limits: &Limits,
) -> Result<OrthogonalFamily> {
    let mut base = base.to_vec();
    base.sort_unstable();
    base.dedup();
    let base_vec = BinaryVector::from_indices(code.n(), &base)?;
    let mut residuals: Vec<BinaryVector> = Vec::new();
    for check in parity_checks_through(code, &base, limits)? {
        let r = BinaryVector::from_indices(code.n(), &check)?.and_not(&base_vec);
        if !residuals.iter().any(|m| m.is_subset_of(&r)) {
            residuals.push(r);
        }
    }
    let adjacency: Vec<Bitset> = residuals
        .iter()
        .map(|a| {
            let mut row = Bitset::new(residuals.len());
            for (j, b) in residuals.iter().enumerate() {
                if !a.intersects(b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let greedy = greedy_clique(&adjacency);
    let (chosen, proved, nodes) = match mode {
        SearchMode::Greedy => (greedy, false, 0),
        SearchMode::Exact => {
            let r = max_clique(&adjacency, greedy, limits.clique_nodes);
            (r.clique, r.proved_optimal, r.nodes)
        }
    };
    let mut members: Vec<BinaryVector> = chosen.iter().map(|&v| residuals[v].xor(&base_vec)).collect();
    members.sort_by(BinaryVector::cmp_by_support);
    Ok(OrthogonalFamily {
        base,
        members: members.iter().map(BinaryVector::support).collect(),
        lower_bound_only: !proved || limits.max_check_weight.is_some(),
        nodes,
    })
}

/// `(n − a) / max{a, d⊥ − a}`, an upper bound on `J_O` for `|O| = a`.
///
/// `None` when `k = n` (no nonzero dual codewords, so `J_O = 0`).
pub fn j_upper_bound(code: &LinearCode, a: usize, limits: &Limits) -> Result<Option<Rational>> {
    let Some(d_dual) = code.dual_distance(limits.span_cap)? else {
        return Ok(None);
    };
    if a == 0 || a > code.n() {
        return Err(Error::Precondition(format!(
            "base set size must be in 1..=n, got {a}"
        )));
    }
    let denom = a.max(d_dual.saturating_sub(a));
    Ok(Some(Rational::from(code.n() - a) / Rational::from(denom)))
}

/// `J_O + 1` pairwise disjoint recovery sets for `object`: a smallest
/// recovery set `O` and the residuals of a maximum family orthogonal on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointRecovery {
    pub object: usize,
    /// Size of the smallest recovery sets.
    pub a: usize,
    /// How many smallest recovery sets were searched.
    pub candidates: usize,
    pub family: OrthogonalFamily,
    /// `O` first, then `I_i \ O` in family order.
    pub sets: Vec<RecoverySet>,
}

impl DisjointRecovery {
    pub fn j(&self) -> usize {
        self.family.j()
    }
}

/// Searches every smallest recovery set `O` and keeps the one with the
/// largest `J_O` (ties go to the lexicographically first `O`).
pub fn disjoint_recovery_sets(
    code: &LinearCode,
    object: usize,
    mode: SearchMode,
    limits: &Limits,
) -> Result<DisjointRecovery> {
    let (a, smallest) = smallest_recovery_sets(code, object, limits.span_cap)?;
    let mut best: Option<OrthogonalFamily> = None;
    for o in &smallest {
        let family = max_orthogonal_family(code, &o.servers, mode, limits)?;
        let better = match &best {
            None => true,
            Some(b) => family.j() > b.j(),
        };
        if better {
            best = Some(family);
        }
    }
    let family = best.ok_or_else(|| Error::Internal("no smallest recovery set".into()))?;
    let target = BinaryVector::unit(code.k(), object);
    let mut sets = vec![RecoverySet {
        object,
        servers: family.base.clone(),
        minimal: true,
    }];
    for r in family.residuals() {
        if column_sum(code, &r)? != target {
            return Err(Error::Internal(format!(
                "residual {} does not recover object {}",
                crate::recovery::format_set(&r),
                object + 1
            )));
        }
        sets.push(RecoverySet {
            object,
            servers: r,
            minimal: false,
        });
    }
    Ok(DisjointRecovery {
        object,
        a,
        candidates: smallest.len(),
        family,
        sets,
    })
}
