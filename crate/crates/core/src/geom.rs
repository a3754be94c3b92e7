//! Multiplicities of irreducibles in kernels of geometric Dirac operators on
//! `G/H`, obtained from the algebraic kernels by Frobenius reciprocity.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::kernelcalc::{noncubic_kernel_torus, orthogonal_positive_roots, OperatorTag};
use crate::rational::Weight;
use crate::repweights::HighestWeightModule;
use crate::rootsys::RootSystem;
use crate::spinweights::{
    dominant_spin_weights, dominant_subset_weights, spin_weights, SpinWeightMultiset, SubalgebraDatum,
    DEFAULT_BUDGET,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub lambda: Weight,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricKernelReport {
    pub mu: Weight,
    pub constituents: Vec<Constituent>,
    pub operator_tag: OperatorTag,
}

impl GeometricKernelReport {
    pub fn coefficient(&self, lambda: &Weight) -> u64 {
        self.constituents.iter().find(|c| &c.lambda == lambda).map_or(0, |c| c.multiplicity)
    }
}

/// The single `V_{w(μ+ρ_h)−ρ}` when some `w` makes it dominant integral,
/// otherwise nothing.
pub fn geometric_cubic_kernel(datum: &SubalgebraDatum, mu: &Weight) -> Result<GeometricKernelReport> {
    let rs = datum.rs();
    rs.check_len(mu)?;
    let shifted = mu + datum.rho_h();
    let (dom, _) = rs.dominant_representative(&shifted);
    // w(μ+ρ_h)−ρ is dominant only if w(μ+ρ_h) is the dominant representative
    // and that representative is regular
    let lambda = &dom - rs.rho();
    let constituents = if rs.is_dominant(&lambda) && rs.is_integral(&lambda) {
        vec![Constituent { lambda, multiplicity: 1 }]
    } else {
        Vec::new()
    };
    Ok(GeometricKernelReport { mu: mu.clone(), constituents, operator_tag: OperatorTag::Cubic })
}

/// `dim(V_λ ⊗ S)_μ` by convolving weight multiplicities.
pub fn tensor_weight_multiplicity(module: &HighestWeightModule, spin: &SpinWeightMultiset, mu: &Weight) -> u64 {
    module.all_weights().iter().map(|(nu, m)| m * spin.multiplicity(&(mu - nu))).sum()
}

/// Whether `κ` is `ρ − Σ_A α` with `A` inside `(ℝλ)^⊥ ∩ Δ⁺`.
fn realizable_in_orthogonal(rs: &RootSystem, lambda: &Weight, kappa: &Weight) -> bool {
    let orth = orthogonal_positive_roots(rs, lambda);
    dominant_subset_weights(rs, rs.rho(), &orth).iter().any(|d| &d.weight == kappa)
}

/// `Σ_{(λ,κ)∈𝒜_μ} dim(V_λ⊗S)_μ V_λ` for `H = T`. Only lattice integrality of
/// `λ` is checked; the spin-lifting condition on `μ` is left to the caller.
pub fn geometric_noncubic_kernel_torus(rs: &Arc<RootSystem>, mu: &Weight) -> Result<GeometricKernelReport> {
    rs.check_len(mu)?;
    let datum = SubalgebraDatum::torus(rs.clone());
    let spin = spin_weights(&datum, DEFAULT_BUDGET)?;
    let candidates = dominant_spin_weights(&datum);
    let found: Vec<Result<Option<Constituent>>> = candidates
        .par_iter()
        .map(|(kappa, _)| {
            let lambda = mu - kappa;
            if !rs.is_dominant(&lambda) || !rs.is_integral(&lambda) {
                return Ok(None);
            }
            if !realizable_in_orthogonal(rs, &lambda, kappa) {
                return Ok(None);
            }
            let module = HighestWeightModule::new(rs.clone(), lambda.clone())?;
            let multiplicity = tensor_weight_multiplicity(&module, &spin, mu);
            Ok((multiplicity > 0).then_some(Constituent { lambda, multiplicity }))
        })
        .collect();
    let mut constituents = Vec::new();
    for c in found {
        constituents.extend(c?);
    }
    constituents.sort_by(|a, b| b.lambda.cmp(&a.lambda));
    Ok(GeometricKernelReport { mu: mu.clone(), constituents, operator_tag: OperatorTag::Noncubic })
}

/// Multiplicity of the weight `μ` in `ker D̂(V_λ)` for `h = t`.
pub fn cross_check_branching(rs: &Arc<RootSystem>, mu: &Weight, lambda: &Weight) -> Result<u64> {
    rs.check_len(mu)?;
    let module = HighestWeightModule::new(rs.clone(), lambda.clone())?;
    let dom = rs.dominant_part(mu);
    Ok(noncubic_kernel_torus(&module)
        .blocks
        .iter()
        .filter(|b| b.representative == dom)
        .map(|b| b.block_dim)
        .sum())
}
