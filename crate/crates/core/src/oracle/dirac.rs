//! `D^t/√2 = Σ_i π(b_i) ⊗ γ(b̃_i) − t·1 ⊗ γ(c)` on `V ⊗ S'`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::chevalley::{ChevalleyData, GVec};
use super::reps::ModuleMatrices;
use super::spinor::{OracleSubalgebra, SpinorModule};
use crate::error::{Error, Result};
use crate::linalg::{dense, nullspace, SparseMat};
use crate::rational::{q, serialize_q, Q};

#[derive(Clone, Debug, Serialize)]
pub struct BasisLabel {
    pub v: usize,
    pub spinor: String,
}

/// The matrix of `D^t/√2`; the factor `√2` does not change the kernel.
#[derive(Clone, Debug, Serialize)]
pub struct DiracMatrix {
    #[serde(serialize_with = "serialize_q")]
    pub t: Q,
    #[serde(skip)]
    pub entries: SparseMat,
    pub labels: Vec<BasisLabel>,
}

impl DiracMatrix {
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        nullspace(&self.entries)
    }

    pub fn nullity(&self) -> usize {
        self.kernel().len()
    }
}

/// `γ(c) = ⅙ Σ ⟨b̃_i,[b̃_j,b̃_k]⟩ γ(b_i)γ(b_j)γ(b_k)`, summed over `i` first:
/// `Σ_i ⟨b̃_i, X⟩ γ(b_i) = γ(X_q)`.
pub fn cubic_term(chev: &ChevalleyData, spin: &SpinorModule) -> SparseMat {
    let basis = spin.q_basis();
    let dual = spin.q_dual_basis();
    let gammas: Vec<SparseMat> = basis.iter().map(|b| spin.gamma(chev, b)).collect();
    let n = basis.len();
    let d = spin.dim();
    let terms: Vec<SparseMat> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = SparseMat::zeros(d, d);
            for k in 0..n {
                let x = chev.bracket(&dual[j], &dual[k]);
                if x.iter().all(Zero::is_zero) {
                    continue;
                }
                let gx = spin.gamma(chev, &x);
                if gx.is_zero() {
                    continue;
                }
                acc = acc.add(&gx.mul(&gammas[j]).mul(&gammas[k]));
            }
            acc
        })
        .collect();
    let sum = terms.iter().fold(SparseMat::zeros(d, d), |a, t| a.add(t));
    sum.scale(&Q::new(1.into(), 6.into()))
}

/// Spin action of `x ∈ h`: `σ(x) = ½ Σ_i γ([x, b_i]) γ(b̃_i)`.
pub fn sigma(chev: &ChevalleyData, spin: &SpinorModule, x: &[Q]) -> SparseMat {
    let d = spin.dim();
    let basis = spin.q_basis();
    let dual = spin.q_dual_basis();
    let mut acc = SparseMat::zeros(d, d);
    for (b, bt) in basis.iter().zip(&dual) {
        let br = chev.bracket(x, b);
        if br.iter().all(Zero::is_zero) {
            continue;
        }
        acc = acc.add(&spin.gamma(chev, &br).mul(&spin.gamma(chev, bt)));
    }
    acc.scale(&Q::new(1.into(), 2.into()))
}

/// The two pieces of `D^t/√2`, so that any `t` is a linear combination.
pub struct DiracParts {
    pub module_dim: usize,
    pub spin_dim: usize,
    /// `Σ_i π(b_i) ⊗ γ(b̃_i)`.
    pub noncubic: SparseMat,
    /// `1 ⊗ γ(c)`.
    pub cubic: SparseMat,
    /// `γ(c)` on `S'` alone.
    pub gamma_c: SparseMat,
    pub labels: Vec<BasisLabel>,
}

impl DiracParts {
    pub fn new(chev: &ChevalleyData, module: &ModuleMatrices, spin: &SpinorModule) -> Self {
        let basis = spin.q_basis();
        let dual = spin.q_dual_basis();
        Self::with_basis(chev, module, spin, &basis, &dual)
    }

    /// Uses an arbitrary basis of `q`, with its Killing dual computed here.
    pub fn from_basis(chev: &ChevalleyData, module: &ModuleMatrices, spin: &SpinorModule, basis: &[GVec]) -> Result<Self> {
        let gram: dense::DMat = basis.iter().map(|x| basis.iter().map(|y| chev.killing(x, y)).collect()).collect();
        let inv = dense::inverse(&gram).ok_or_else(|| Error::Precondition("q basis is degenerate".into()))?;
        let dual: Vec<GVec> = (0..basis.len())
            .map(|i| {
                let mut v = vec![Q::zero(); chev.dim()];
                for (j, b) in basis.iter().enumerate() {
                    if !inv[j][i].is_zero() {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &inv[j][i] * y;
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Self::with_basis(chev, module, spin, basis, &dual))
    }

    fn with_basis(chev: &ChevalleyData, module: &ModuleMatrices, spin: &SpinorModule, basis: &[GVec], dual: &[GVec]) -> Self {
        let nv = module.dim();
        let ns = spin.dim();
        let noncubic = basis
            .par_iter()
            .zip(dual)
            .map(|(b, bt)| module.pi(b).kron(&spin.gamma(chev, bt)))
            .reduce(|| SparseMat::zeros(nv * ns, nv * ns), |a, b| a.add(&b));
        let gamma_c = cubic_term(chev, spin);
        let cubic = SparseMat::identity(nv).kron(&gamma_c);
        let labels = (0..nv)
            .flat_map(|v| (0..ns).map(move |s| (v, s)))
            .map(|(v, s)| BasisLabel { v, spinor: spin.label(chev, s) })
            .collect();
        DiracParts { module_dim: nv, spin_dim: ns, noncubic, cubic, gamma_c, labels }
    }

    pub fn at(&self, t: &Q) -> DiracMatrix {
        DiracMatrix { t: t.clone(), entries: self.noncubic.add_scaled(&self.cubic, &-t), labels: self.labels.clone() }
    }

    pub fn index(&self, v: usize, s: usize) -> usize {
        v * self.spin_dim + s
    }
}

pub fn build_dirac(chev: &ChevalleyData, module: &ModuleMatrices, spin: &SpinorModule, t: &Q) -> DiracMatrix {
    DiracParts::new(chev, module, spin).at(t)
}

/// `Σ_k Π(z_k) Π(z̃_k)` for `Π = π ⊗ 1 + 1 ⊗ σ`, over a basis of `h`.
pub fn diagonal_casimir(chev: &ChevalleyData, module: &ModuleMatrices, spin: &SpinorModule, h: &OracleSubalgebra) -> Result<SparseMat> {
    let basis = h.basis(chev);
    let gram: dense::DMat = basis.iter().map(|x| basis.iter().map(|y| chev.killing(x, y)).collect()).collect();
    let inv = dense::inverse(&gram).ok_or_else(|| Error::Precondition("Killing form is degenerate on h".into()))?;
    let nv = module.dim();
    let ns = spin.dim();
    let big: Vec<SparseMat> = basis
        .par_iter()
        .map(|z| module.pi(z).kron(&SparseMat::identity(ns)).add(&SparseMat::identity(nv).kron(&sigma(chev, spin, z))))
        .collect();
    let mut acc = SparseMat::zeros(nv * ns, nv * ns);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if !inv[i][j].is_zero() {
                acc = acc.add_scaled(&big[i].mul(&big[j]), &inv[i][j]);
            }
        }
    }
    Ok(acc)
}

/// Residual of `2M² + Ω_{h_Δ} − (‖λ+ρ‖² − ‖ρ_h‖²)·Id` with `M = D/√2`.
pub fn square_identity_residual(
    chev: &ChevalleyData,
    module: &ModuleMatrices,
    h: &OracleSubalgebra,
) -> Result<SparseMat> {
    let spin = SpinorModule::new(chev, h)?;
    let rs = chev.rs();
    let m = build_dirac(chev, module, &spin, &q(1)).entries;
    let omega = diagonal_casimir(chev, module, &spin, h)?;
    let rho_h = h.rho_h(chev)?;
    let c = chev.killing_norm2(&(&module.highest_weight + rs.rho())) - chev.killing_norm2(&rho_h);
    let n = m.rows();
    Ok(m.mul(&m).scale(&q(2)).add(&omega).sub(&SparseMat::scalar(n, c)))
}
