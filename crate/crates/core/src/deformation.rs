//! One-parameter deformations of the symplectic form and dimension
//! sweeps along them.
//!
//! A family is a polynomial 2-form theta(t). The deformed form is
//! omega + theta(t) when theta vanishes at t = 0, and omega + t*theta(t)
//! otherwise, so the baseline sample t = 0 always reproduces the original
//! structure. Every coefficient form of the family must be closed, which
//! keeps the deformed form closed for all parameter values.
//!
//! Samples that fail to define a valid structure (degenerate form,
//! singular coframe, incompatible almost-complex structure) are excluded
//! and reported, never silently dropped. The baseline must survive.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::cohomology::{betti, cohomology, Theory};
use crate::form::{Form, PolyForm};
use crate::operators::Context;
use crate::rational::{format_rational, Rational};
use crate::symplectic::{AlmostComplexStructure, MetricData, SymplecticStructure};
use num_traits::{One, Signed, Zero};

#[derive(Error, Debug)]
pub enum DeformationError {
    #[error("deformation form must have degree 2, got {got}")]
    ThetaWrongDegree { got: usize },
    #[error("coefficient of t^{power} in the deformation is not closed: d = {residue}")]
    CoefficientNotClosed { power: usize, residue: String },
    #[error("coframe family must have {dim} entries, got {got}")]
    CoframeWrongLength { dim: usize, got: usize },
    #[error("coframe family entry {index} must be a 1-form")]
    CoframeEntryWrongDegree { index: usize },
    #[error("baseline sample t = 0 is excluded: {reason}")]
    BaselineExcluded { reason: String },
    #[error("no valid parameter samples")]
    NoValidSamples,
}

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub theta: PolyForm,
    pub samples: Vec<Rational>,
    pub coframe: Option<Vec<PolyForm>>,
    pub semicontinuity_bound: Rational,
}

pub fn default_samples() -> Vec<Rational> {
    vec![
        Rational::zero(),
        Rational::one(),
        -Rational::one(),
        crate::rational::frac(1, 2),
        crate::rational::frac(-1, 3),
    ]
}

impl DeformationFamily {
    pub fn new(
        theta: PolyForm,
        samples: Option<Vec<Rational>>,
        coframe: Option<Vec<PolyForm>>,
        semicontinuity_bound: Option<Rational>,
    ) -> Self {
        let mut set: BTreeSet<Rational> = samples
            .unwrap_or_else(default_samples)
            .into_iter()
            .collect();
        set.insert(Rational::zero());
        DeformationFamily {
            theta,
            samples: set.into_iter().collect(),
            coframe,
            semicontinuity_bound: semicontinuity_bound.unwrap_or_else(Rational::one),
        }
    }

    /// The family actually added to omega: theta itself if it vanishes at
    /// t = 0, otherwise t * theta.
    pub fn effective_theta(&self) -> PolyForm {
        if self.theta.coefficient_form(0).is_zero() {
            self.theta.clone()
        } else {
            self.theta.mul_t()
        }
    }

    fn validate(&self, algebra: &LieAlgebra) -> Result<(), DeformationError> {
        if self.theta.degree() != 2 {
            return Err(DeformationError::ThetaWrongDegree {
                got: self.theta.degree(),
            });
        }
        for power in 0..=self.theta.max_power() {
            let coeff = self.theta.coefficient_form(power);
            let residue = algebra.d(&coeff);
            if !residue.is_zero() {
                return Err(DeformationError::CoefficientNotClosed {
                    power,
                    residue: residue.to_string(),
                });
            }
        }
        if let Some(coframe) = &self.coframe {
            if coframe.len() != algebra.dim() {
                return Err(DeformationError::CoframeWrongLength {
                    dim: algebra.dim(),
                    got: coframe.len(),
                });
            }
            for (i, f) in coframe.iter().enumerate() {
                if f.degree() != 1 {
                    return Err(DeformationError::CoframeEntryWrongDegree { index: i + 1 });
                }
            }
        }
        Ok(())
    }
}

fn standard_pairs(dim: usize) -> Vec<[u8; 2]> {
    (0..dim / 2)
        .map(|a| [2 * a as u8 + 1, 2 * a as u8 + 2])
        .collect()
}

/// Build the model at one parameter value; Err carries the exclusion
/// reason.
pub fn model_at(
    algebra: &LieAlgebra,
    omega: &Form,
    family: &DeformationFamily,
    t: &Rational,
) -> Result<Context, String> {
    let theta = family.effective_theta();
    let omega_t = omega.add(&theta.eval(t));
    let sym = SymplecticStructure::new(algebra, omega_t).map_err(|e| e.to_string())?;
    let (j, metric) = match &family.coframe {
        None => (None, None),
        Some(coframe) => {
            let forms: Vec<Form> = coframe.iter().map(|f| f.eval(t)).collect();
            let j = AlmostComplexStructure::from_coframe(&forms, &standard_pairs(algebra.dim()))
                .map_err(|e| e.to_string())?;
            let metric = MetricData::from_triple(&sym, &j).map_err(|e| e.to_string())?;
            (Some(j), Some(metric))
        }
    };
    Context::new(algebra.clone(), sym, j, metric).map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub t: Rational,
    pub d_lambda: Vec<usize>,
    pub bott_chern: Vec<usize>,
    pub aeppli: Vec<usize>,
    pub delta_bc: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ExcludedSample {
    pub t: Rational,
    pub reason: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JumpDirection {
    Unchanged,
    Drop,
    Jump,
    Mixed,
}

impl JumpDirection {
    pub fn key(self) -> &'static str {
        match self {
            JumpDirection::Unchanged => "unchanged",
            JumpDirection::Drop => "drop",
            JumpDirection::Jump => "jump",
            JumpDirection::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JumpEntry {
    pub t: Rational,
    pub theory: Theory,
    pub direction: JumpDirection,
    /// (degree, baseline dimension, dimension at t) for every degree that
    /// moved.
    pub changes: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct SemicontinuityViolation {
    pub t: Rational,
    pub theory: Theory,
    pub degree: usize,
    pub baseline: usize,
    pub value: usize,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub betti: Vec<usize>,
    pub rows: Vec<SweepRow>,
    pub excluded: Vec<ExcludedSample>,
    pub jumps: Vec<JumpEntry>,
    pub semicontinuity_bound: Rational,
    pub violations: Vec<SemicontinuityViolation>,
}

fn direction_of(changes: &[(usize, usize, usize)]) -> JumpDirection {
    let drops = changes.iter().any(|(_, base, val)| val < base);
    let jumps = changes.iter().any(|(_, base, val)| val > base);
    match (drops, jumps) {
        (false, false) => JumpDirection::Unchanged,
        (true, false) => JumpDirection::Drop,
        (false, true) => JumpDirection::Jump,
        (true, true) => JumpDirection::Mixed,
    }
}

pub fn sweep(
    algebra: &LieAlgebra,
    omega: &Form,
    family: &DeformationFamily,
) -> Result<SweepReport, DeformationError> {
    family.validate(algebra)?;
    let dim = algebra.dim();
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    let mut betti_dims = Vec::new();
    for t in &family.samples {
        match model_at(algebra, omega, family, t) {
            Err(reason) => {
                if t.is_zero() {
                    return Err(DeformationError::BaselineExcluded { reason });
                }
                excluded.push(ExcludedSample {
                    t: t.clone(),
                    reason,
                });
            }
            Ok(ctx) => {
                if t.is_zero() {
                    betti_dims = (0..=dim).map(|k| betti(&ctx, k)).collect();
                }
                let dims = |theory: Theory| -> Vec<usize> {
                    (0..=dim).map(|k| cohomology(&ctx, theory, k).dim()).collect()
                };
                let bott_chern = dims(Theory::BottChern);
                let betti_here: Vec<usize> = (0..=dim).map(|k| betti(&ctx, k)).collect();
                let delta_bc = bott_chern
                    .iter()
                    .zip(&betti_here)
                    .map(|(h, b)| *h as i64 - *b as i64)
                    .collect();
                rows.push(SweepRow {
                    t: t.clone(),
                    d_lambda: dims(Theory::DLambda),
                    bott_chern,
                    aeppli: dims(Theory::Aeppli),
                    delta_bc,
                });
            }
        }
    }
    if rows.is_empty() {
        return Err(DeformationError::NoValidSamples);
    }
    let baseline = rows
        .iter()
        .find(|r| r.t.is_zero())
        .expect("baseline survives or sweep errored")
        .clone();
    let mut jumps = Vec::new();
    let mut violations = Vec::new();
    for row in &rows {
        if row.t.is_zero() {
            continue;
        }
        for (theory, base_dims, dims) in [
            (Theory::DLambda, &baseline.d_lambda, &row.d_lambda),
            (Theory::BottChern, &baseline.bott_chern, &row.bott_chern),
            (Theory::Aeppli, &baseline.aeppli, &row.aeppli),
        ] {
            let changes: Vec<(usize, usize, usize)> = base_dims
                .iter()
                .zip(dims)
                .enumerate()
                .filter(|(_, (b, v))| b != v)
                .map(|(k, (b, v))| (k, *b, *v))
                .collect();
            let direction = direction_of(&changes);
            if direction != JumpDirection::Unchanged {
                jumps.push(JumpEntry {
                    t: row.t.clone(),
                    theory,
                    direction,
                    changes,
                });
            }
            if matches!(theory, Theory::BottChern | Theory::Aeppli)
                && row.t.abs() <= family.semicontinuity_bound
            {
                for (k, (b, v)) in base_dims.iter().zip(dims).enumerate() {
                    if v > b {
                        violations.push(SemicontinuityViolation {
                            t: row.t.clone(),
                            theory,
                            degree: k,
                            baseline: *b,
                            value: *v,
                        });
                    }
                }
            }
        }
    }
    Ok(SweepReport {
        betti: betti_dims,
        rows,
        excluded,
        jumps,
        semicontinuity_bound: family.semicontinuity_bound.clone(),
        violations,
    })
}

/// Human-readable sample value, e.g. for exclusion messages.
pub fn sample_label(t: &Rational) -> String {
    format_rational(t)
}
