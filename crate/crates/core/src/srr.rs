//! Service rates: exact axis-intercept LPs, demand feasibility, the
//! `1 + J ≤ λ_max ≤ 1 + (n − a)/max{d⊥ − a, a}` bound triple, and the
//! design-based allocation.
//!
//! Every server has capacity 1 unless capacities are given explicitly.
//! Allocations range over minimal recovery sets only; any rate on a larger
//! set can be moved to a minimal subset without raising a load.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{disjoint_recovery_sets, DisjointRecovery, SearchMode};
use crate::codes::LinearCode;
use crate::designs::{check_t_design, reduce_design, BlockCollection, DesignReport};
use crate::error::{Error, Result};
use crate::gf2::BinaryVector;
use crate::limits::Limits;
use crate::lp::{LinearProgram, LpOutcome, RowKind};
use crate::rational::Rational;
use crate::recovery::{column_sum, minimal_recovery_sets, RecoverySet};

/// Label used for λ_max in reports.
pub const LAMBDA_LABEL: &str = "axis intercept (equals the coordinate-wise maximum demand)";

/// Rate assigned to each recovery set.
pub type Allocation = Vec<(RecoverySet, Rational)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

/// Optimal axis-intercept LP for one object with both certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    pub object: usize,
    pub status: LpStatus,
    pub value: Rational,
    /// Recovery sets with nonzero rate.
    pub primal: Allocation,
    /// One price per server.
    pub dual_certificate: Vec<Rational>,
    pub capacities: Vec<Rational>,
    /// Number of LP variables (minimal recovery sets).
    pub variables: usize,
}

fn unit_capacities(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// λ_max for `object`: the largest total rate over its minimal recovery
/// sets with every server load at most 1.
pub fn max_demand(code: &LinearCode, object: usize, limits: &Limits) -> Result<LpSolution> {
    max_demand_with_capacities(code, object, &unit_capacities(code.n()), limits)
}

pub fn max_demand_with_capacities(
    code: &LinearCode,
    object: usize,
    capacities: &[Rational],
    limits: &Limits,
) -> Result<LpSolution> {
    if capacities.len() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: capacities.len(),
        });
    }
    let sets = minimal_recovery_sets(code, object, limits.span_cap)?;
    let lp = LinearProgram {
        kinds: vec![RowKind::Le; code.n()],
        rhs: capacities.to_vec(),
        columns: sets.iter().map(|r| r.servers.clone()).collect(),
        objective: vec![Rational::one(); sets.len()],
    };
    match lp.solve()? {
        LpOutcome::Optimal { x, y, value } => Ok(LpSolution {
            object,
            status: LpStatus::Optimal,
            value,
            primal: sets
                .iter()
                .cloned()
                .zip(x)
                .filter(|(_, rate)| !rate.is_zero())
                .collect(),
            dual_certificate: y,
            capacities: capacities.to_vec(),
            variables: sets.len(),
        }),
        other => Err(Error::Internal(format!(
            "axis-intercept LP for object {} ended as {other:?}",
            object + 1
        ))),
    }
}

/// Per-server load of an allocation.
pub fn server_loads(n: usize, allocation: &[(RecoverySet, Rational)]) -> Vec<Rational> {
    let mut loads = vec![Rational::zero(); n];
    for (set, rate) in allocation {
        for &l in &set.servers {
            loads[l] += rate;
        }
    }
    loads
}

/// Result of re-checking an [`LpSolution`] without trusting the solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateAudit {
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    pub values_equal: bool,
}

impl CertificateAudit {
    pub fn is_valid(&self) -> bool {
        self.primal_feasible && self.dual_feasible && self.values_equal
    }
}

/// Re-verifies primal feasibility, dual feasibility over every minimal
/// recovery set, and `Σ x = Σ μ_l y_l = value`.
pub fn audit_certificates(
    code: &LinearCode,
    solution: &LpSolution,
    limits: &Limits,
) -> Result<CertificateAudit> {
    let target = BinaryVector::unit(code.k(), solution.object);
    let mut primal_feasible = solution.capacities.len() == code.n();
    for (set, rate) in &solution.primal {
        primal_feasible &= !rate.is_negative() && column_sum(code, &set.servers)? == target;
    }
    let loads = server_loads(code.n(), &solution.primal);
    primal_feasible &= loads.iter().zip(&solution.capacities).all(|(l, c)| l <= c);

    let y = &solution.dual_certificate;
    let mut dual_feasible = y.len() == code.n() && y.iter().all(|v| !v.is_negative());
    if dual_feasible {
        for set in minimal_recovery_sets(code, solution.object, limits.span_cap)? {
            let price: Rational = set.servers.iter().map(|&l| &y[l]).sum();
            if price < Rational::one() {
                dual_feasible = false;
                break;
            }
        }
    }
    let primal_value: Rational = solution.primal.iter().map(|(_, r)| r).sum();
    let dual_value: Rational = y.iter().zip(&solution.capacities).map(|(a, b)| a * b).sum();
    Ok(CertificateAudit {
        primal_feasible,
        dual_feasible,
        values_equal: primal_value == solution.value && dual_value == solution.value,
    })
}

/// Proof that a demand vector is outside the service rate region.
///
/// Server prices `v ≥ 0` under which every recovery set of object `i` costs
/// at least `u_i`, while `Σ u_i λ_i` exceeds the total capacity `Σ v_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub object_multipliers: Vec<Rational>,
    pub server_multipliers: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    Feasible(Allocation),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether `demand` (one rate per object) can be served.
pub fn feasible(code: &LinearCode, demand: &[Rational], limits: &Limits) -> Result<Feasibility> {
    if demand.len() != code.k() {
        return Err(Error::DimensionMismatch {
            expected: code.k(),
            found: demand.len(),
        });
    }
    if let Some(i) = demand.iter().position(Rational::is_negative) {
        return Err(Error::InvalidParameters(format!(
            "demand for object {} is negative",
            i + 1
        )));
    }
    let n = code.n();
    let active: Vec<usize> = (0..code.k()).filter(|&i| demand[i].is_positive()).collect();
    let mut sets: Vec<RecoverySet> = Vec::new();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for (row, &object) in active.iter().enumerate() {
        for set in minimal_recovery_sets(code, object, limits.span_cap)? {
            let mut col = vec![row];
            col.extend(set.servers.iter().map(|&l| active.len() + l));
            columns.push(col);
            sets.push(set);
        }
    }
    let mut kinds = vec![RowKind::Eq; active.len()];
    kinds.extend(std::iter::repeat_n(RowKind::Le, n));
    let mut rhs: Vec<Rational> = active.iter().map(|&i| demand[i].clone()).collect();
    rhs.extend(unit_capacities(n));
    let lp = LinearProgram {
        kinds,
        rhs,
        objective: vec![Rational::zero(); columns.len()],
        columns,
    };
    match lp.solve()? {
        LpOutcome::Optimal { x, .. } => Ok(Feasibility::Feasible(
            sets.into_iter().zip(x).filter(|(_, r)| !r.is_zero()).collect(),
        )),
        LpOutcome::Infeasible { farkas } => {
            let mut object_multipliers = vec![Rational::zero(); code.k()];
            for (row, &object) in active.iter().enumerate() {
                object_multipliers[object] = -&farkas[row];
            }
            Ok(Feasibility::Infeasible(FarkasCertificate {
                object_multipliers,
                server_multipliers: farkas[active.len()..].to_vec(),
            }))
        }
        LpOutcome::Unbounded => Err(Error::Internal("feasibility LP reported unbounded".into())),
    }
}

/// Checks a feasible allocation: each set recovers its object, per-object
/// rates sum to the demand, and no server exceeds capacity 1.
pub fn verify_allocation(
    code: &LinearCode,
    demand: &[Rational],
    allocation: &[(RecoverySet, Rational)],
) -> Result<bool> {
    let mut served = vec![Rational::zero(); code.k()];
    for (set, rate) in allocation {
        code.check_object(set.object)?;
        if rate.is_negative() || column_sum(code, &set.servers)? != BinaryVector::unit(code.k(), set.object) {
            return Ok(false);
        }
        served[set.object] += rate;
    }
    Ok(served == demand
        && server_loads(code.n(), allocation)
            .iter()
            .all(|l| *l <= Rational::one()))
}

/// Checks a Farkas certificate against every minimal recovery set.
pub fn verify_infeasibility(
    code: &LinearCode,
    demand: &[Rational],
    certificate: &FarkasCertificate,
    limits: &Limits,
) -> Result<bool> {
    let u = &certificate.object_multipliers;
    let v = &certificate.server_multipliers;
    if u.len() != code.k() || v.len() != code.n() || demand.len() != code.k() {
        return Ok(false);
    }
    if v.iter().any(Rational::is_negative) {
        return Ok(false);
    }
    for object in 0..code.k() {
        if !demand[object].is_positive() {
            continue;
        }
        for set in minimal_recovery_sets(code, object, limits.span_cap)? {
            let price: Rational = set.servers.iter().map(|&l| &v[l]).sum();
            if price < u[object] {
                return Ok(false);
            }
        }
    }
    let value: Rational = u.iter().zip(demand).map(|(a, b)| a * b).sum();
    let capacity: Rational = v.iter().sum();
    Ok(value > capacity)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub object: usize,
    pub a: usize,
    pub j: usize,
    /// False when `j` is only a lower bound on the maximum.
    pub j_exact: bool,
    pub disjoint: DisjointRecovery,
    pub d_min: usize,
    pub d_dual: Option<usize>,
    /// `1 + J`.
    pub lower: Rational,
    /// `1 + (n − a)/max{d⊥ − a, a}`; absent when `k = n` or `d⊥ = 1`.
    pub upper_refined: Option<Rational>,
    /// `1 + (n − a)/(d⊥ − a)`; absent when `d⊥ ≤ a`.
    pub upper_loose: Option<Rational>,
    pub lp: Option<LpSolution>,
}

impl BoundsReport {
    pub fn lp_exact(&self) -> Option<&Rational> {
        self.lp.as_ref().map(|s| &s.value)
    }

    /// `lower ≤ lp ≤ upper_refined ≤ upper_loose` over the present values.
    pub fn sandwich_holds(&self) -> bool {
        let mut chain: Vec<&Rational> = vec![&self.lower];
        chain.extend(self.lp_exact());
        chain.extend(self.upper_refined.as_ref());
        chain.extend(self.upper_loose.as_ref());
        chain.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn demand_bounds(
    code: &LinearCode,
    object: usize,
    with_lp: bool,
    mode: SearchMode,
    limits: &Limits,
) -> Result<BoundsReport> {
    let disjoint = disjoint_recovery_sets(code, object, mode, limits)?;
    let n = code.n();
    let a = disjoint.a;
    let j = disjoint.j();
    let d_dual = code.dual_distance(limits.span_cap)?;
    let one = Rational::one();
    let upper_refined = d_dual
        .filter(|&d| d > 1)
        .map(|d| &one + Rational::from(n - a) / Rational::from(a.max(d.saturating_sub(a))));
    let upper_loose = d_dual
        .filter(|&d| d > a)
        .map(|d| &one + Rational::from(n - a) / Rational::from(d - a));
    let lp = if with_lp {
        Some(max_demand(code, object, limits)?)
    } else {
        None
    };
    Ok(BoundsReport {
        object,
        a,
        j,
        j_exact: !disjoint.family.lower_bound_only,
        d_min: code.min_distance(limits.span_cap)?,
        d_dual,
        lower: one + Rational::from(j),
        upper_refined,
        upper_loose,
        lp,
        disjoint,
    })
}

/// Rate 1 on each of the `J + 1` disjoint recovery sets.
pub fn disjoint_allocation(disjoint: &DisjointRecovery) -> Allocation {
    disjoint
        .sets
        .iter()
        .map(|s| (s.clone(), Rational::one()))
        .collect()
}

/// Allocation built from minimum-weight dual codewords through the
/// systematic column of an object, when their punctures form a 1-design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignAllocation {
    pub object: usize,
    /// Column holding `e_object`.
    pub column: usize,
    pub d_dual: usize,
    /// Number of blocks, γ.
    pub gamma: usize,
    /// Blocks through each point, d_c.
    pub replication: u64,
    pub rate: Rational,
    pub allocation: Allocation,
    pub design: DesignReport,
}

/// `{ℓ} → 1` plus `1/d_c` on each block; `None` when the punctured supports
/// are not a 1-design.
pub fn design_allocation(
    code: &LinearCode,
    object: usize,
    limits: &Limits,
) -> Result<Option<DesignAllocation>> {
    code.check_object(object)?;
    let column = code
        .systematic_column(object)
        .ok_or(Error::NotSystematic { object: object + 1 })?;
    let d_dual = match code.dual_distance(limits.span_cap)? {
        Some(d) if d > 1 => d,
        _ => {
            return Err(Error::Precondition(
                "design allocation needs dual distance greater than 1".into(),
            ))
        }
    };
    let supports = code
        .dual()?
        .min_weight_codewords(d_dual, Some(column), limits.span_cap)?;
    let full = BlockCollection::new(code.n(), supports)?;
    let punctured = reduce_design(&full, &[column])?;
    let design = check_t_design(&punctured, 1, limits.design_cap)?;
    let replication = match (design.is_design, design.replication) {
        (true, Some(r)) if r > 0 => r,
        _ => return Ok(None),
    };
    let share = Rational::one() / Rational::from(replication as usize);
    let mut allocation = vec![(
        RecoverySet {
            object,
            servers: vec![column],
            minimal: true,
        },
        Rational::one(),
    )];
    for block in punctured.labelled_blocks() {
        allocation.push((
            RecoverySet {
                object,
                servers: block,
                minimal: true,
            },
            share.clone(),
        ));
    }
    let target = BinaryVector::unit(code.k(), object);
    for (set, _) in &allocation {
        if column_sum(code, &set.servers)? != target {
            return Err(Error::Internal(format!(
                "block {} does not recover object {}",
                set.label(),
                object + 1
            )));
        }
    }
    if server_loads(code.n(), &allocation)
        .iter()
        .any(|l| *l > Rational::one())
    {
        return Err(Error::Internal("design allocation overloads a server".into()));
    }
    let gamma = punctured.len();
    Ok(Some(DesignAllocation {
        object,
        column,
        d_dual,
        gamma,
        replication,
        rate: Rational::one() + Rational::from(gamma) / Rational::from(replication as usize),
        allocation,
        design,
    }))
}

/// `λ_1^max … λ_k^max`, solved in parallel.
pub fn maximal_simplex(code: &LinearCode, limits: &Limits) -> Result<Vec<LpSolution>> {
    (0..code.k())
        .into_par_iter()
        .map(|object| max_demand(code, object, limits))
        .collect()
}
