//! The sharp comparison constant `C_x`: the supremum of
//! `ν / (mult · s)` over the psef cone, computed by exact linear programming.
//!
//! The ratio is homogeneous of degree 0, so it suffices to look at divisors
//! with slope exactly 1, i.e. `a >= m` with `a_p = m_p` for some `p`. For each
//! pinned index `p` one LP maximizes `ν = e . a` over
//!
//! ```text
//!     -C a >= 0,   a >= m,   a_p <= m_p
//! ```
//!
//! and `C_x · mult` is the largest of these optima. Every LP carries a dual
//! certificate, so the answer can be re-checked with plain arithmetic.

mod rays;
mod sample;
pub(crate) mod simplex;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{dot, Rat};
use crate::graph::{Divisor, ValidGraph};
use crate::invariants;
use simplex::LpOutcome;

pub use rays::{enumerate_rays, enumerate_rays_with_limit, RayFamily, DEFAULT_RAY_LIMIT};
pub use sample::{sample_cone, sample_cone_with_limit};

/// A constraint of the normalized cone, used to report which ones are tight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintId {
    /// `-Σ_j c_ij a_j >= 0`
    Psef(usize),
    /// `a_i >= m_i`
    Slope(usize),
}

impl ConstraintId {
    pub fn label(&self, g: &ValidGraph) -> String {
        match *self {
            ConstraintId::Psef(i) => format!("psef:{}", g.vertices()[i].id),
            ConstraintId::Slope(i) => format!("slope:{}", g.vertices()[i].id),
        }
    }
}

/// Dual solution for the LP with `a_pinned` fixed to `m_pinned`.
///
/// With `y >= 0` on the psef rows, `z >= 0` on `a >= m` and `w >= 0` on
/// `a_p <= m_p`, the identity `C^T y - z + w u_p = e` gives, for every
/// feasible `a`,
/// `e . a = y . C a - z . a + w a_p <= -z . m + w m_p = bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub pinned: usize,
    pub psef: Vec<Rat>,
    pub slope: Vec<Rat>,
    pub pin: Rat,
    pub bound: Rat,
}

impl DualCertificate {
    /// Re-checks sign conditions, the column identity and the bound.
    pub fn verify(&self, g: &ValidGraph) -> bool {
        let n = g.len();
        if self.psef.len() != n || self.slope.len() != n || self.pinned >= n {
            return false;
        }
        let nonneg = |v: &Rat| !v.is_negative();
        if !(self.psef.iter().all(nonneg) && self.slope.iter().all(nonneg) && nonneg(&self.pin)) {
            return false;
        }
        let c = g.intersections();
        let columns_match = (0..n).all(|j| {
            let mut col: Rat = (0..n).map(|i| &c[(i, j)] * &self.psef[i]).sum();
            col -= &self.slope[j];
            if j == self.pinned {
                col += &self.pin;
            }
            col == g.theta()[j]
        });
        let m = g.multiplicities();
        let bound = -dot(&m, &self.slope) + &m[self.pinned] * &self.pin;
        columns_match && bound == self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinnedOptimum {
    pub pinned: usize,
    pub value: Rat,
    pub vertex: Divisor,
    pub certificate: DualCertificate,
}

/// Solves the LP with `a_pinned = m_pinned`. `Ok(None)` when it is
/// infeasible, which only happens when `m` itself is outside the cone.
pub fn pinned_optimum(g: &ValidGraph, pinned: usize) -> Result<Option<PinnedOptimum>> {
    let n = g.len();
    if pinned >= n {
        return Err(Error::Parameter(format!(
            "no component with index {pinned}"
        )));
    }
    // Shift a = m + x with x >= 0:  C x <= -C m,  x_p <= 0.
    let m = g.multiplicities();
    let c = g.intersections();
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| c.row(i).to_vec()).collect();
    let mut rhs: Vec<Rat> = (0..n).map(|i| -dot(c.row(i), &m)).collect();
    let mut pin_row = vec![Rat::zero(); n];
    pin_row[pinned] = Rat::one();
    rows.push(pin_row);
    rhs.push(Rat::zero());

    let sol = match simplex::maximize(&rows, &rhs, g.theta()) {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => {
            return Err(Error::InconsistentGraph(format!(
                "Lelong number is unbounded at slope 1 with {} pinned",
                g.vertices()[pinned].id
            )))
        }
    };

    let psef = sol.duals[..n].to_vec();
    let pin = sol.duals[n].clone();
    let slope: Vec<Rat> = (0..n)
        .map(|j| {
            let mut z: Rat = (0..n).map(|i| &c[(i, j)] * &psef[i]).sum();
            if j == pinned {
                z += &pin;
            }
            z - &g.theta()[j]
        })
        .collect();
    let vertex: Vec<Rat> = m.iter().zip(&sol.x).map(|(mi, xi)| mi + xi).collect();
    let value = dot(g.theta(), &vertex);
    let bound = -dot(&m, &slope) + &m[pinned] * &pin;
    Ok(Some(PinnedOptimum {
        pinned,
        value,
        vertex: Divisor::new(vertex).expect("a >= m > 0"),
        certificate: DualCertificate {
            pinned,
            psef,
            slope,
            pin,
            bound,
        },
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpConstantResult {
    /// `max ν / (mult · s)` over the cone.
    pub c_sharp: Rat,
    /// An optimal divisor, normalized to slope 1.
    pub extremal: Divisor,
    /// Constraints tight at `extremal`.
    pub active_constraints: Vec<ConstraintId>,
    /// `ν(extremal) = c_sharp · mult`.
    pub optimal_value_nu: Rat,
    /// One entry per pinned index; `None` where that LP is infeasible.
    pub certificates: Vec<Option<DualCertificate>>,
}

impl SharpConstantResult {
    /// Checks the whole optimality proof with plain arithmetic: the extremal is
    /// feasible and attains the value, every certificate is valid and bounds
    /// its LP by the claimed optimum, and one of them meets it.
    pub fn verify(&self, g: &ValidGraph) -> bool {
        let Ok(report) = invariants::report(g, &self.extremal) else {
            return false;
        };
        let mult = g.multiplicity();
        let primal = report.in_cone
            && report.slope == Rat::one()
            && report.lelong == self.optimal_value_nu
            && &self.c_sharp * mult == self.optimal_value_nu;
        let certs = self.certificates.len() == g.len()
            && self
                .certificates
                .iter()
                .flatten()
                .all(|cert| cert.verify(g) && cert.bound <= self.optimal_value_nu);
        let tight = self
            .certificates
            .iter()
            .flatten()
            .any(|cert| cert.bound == self.optimal_value_nu);
        primal && certs && tight
    }
}

/// Constraints of the slope-1 slice that are tight at `a`.
pub fn active_constraints(g: &ValidGraph, a: &Divisor) -> Result<Vec<ConstraintId>> {
    let cone = invariants::in_psef_cone(g, a)?;
    let mut out: Vec<ConstraintId> = cone
        .slack
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_zero())
        .map(|(i, _)| ConstraintId::Psef(i))
        .collect();
    out.extend(
        a.coefficients()
            .iter()
            .zip(g.vertices())
            .enumerate()
            .filter(|(_, (ai, v))| **ai == Rat::from(v.m))
            .map(|(i, _)| ConstraintId::Slope(i)),
    );
    Ok(out)
}

/// The sharp constant `C_x` with `ν <= C_x · mult · s` on the psef cone.
/// Ties between pinned LPs go to the smallest index.
pub fn sharp_constant(g: &ValidGraph) -> Result<SharpConstantResult> {
    let mut best: Option<PinnedOptimum> = None;
    let mut certificates = Vec::with_capacity(g.len());
    for p in 0..g.len() {
        let opt = pinned_optimum(g, p)?;
        certificates.push(opt.as_ref().map(|o| o.certificate.clone()));
        if let Some(o) = opt {
            if best.as_ref().is_none_or(|b| o.value > b.value) {
                best = Some(o);
            }
        }
    }
    let best =
        best.ok_or_else(|| Error::InconsistentGraph("no cone divisor has positive slope".into()))?;
    Ok(SharpConstantResult {
        c_sharp: &best.value / g.multiplicity(),
        active_constraints: active_constraints(g, &best.vertex)?,
        extremal: best.vertex,
        optimal_value_nu: best.value,
        certificates,
    })
}

/// Independent route to `C_x`: the largest `ν / (mult · s)` over extreme rays.
/// The ratio is quasi-convex and scale invariant, so over a pointed cone its
/// supremum sits on an extreme ray. Returns the ratio and the ray.
pub fn sharp_constant_from_rays(g: &ValidGraph, rays: &RayFamily) -> Result<(Rat, Divisor)> {
    let mut best: Option<(Rat, &Divisor)> = None;
    for r in &rays.rays {
        let report = invariants::report(g, r)?;
        let ratio = match report.ratio {
            Some(q) => q,
            None if report.lelong.is_zero() => continue,
            None => {
                return Err(Error::InconsistentGraph(format!(
                    "ray {r} has slope 0 but positive Lelong number"
                )))
            }
        };
        if best.as_ref().is_none_or(|(q, _)| ratio > *q) {
            best = Some((ratio, r));
        }
    }
    best.map(|(q, r)| (q, r.clone()))
        .ok_or_else(|| Error::InconsistentGraph("no ray with positive slope".into()))
}
