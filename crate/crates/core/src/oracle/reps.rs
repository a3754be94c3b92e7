//! Trivial, defining and adjoint representations as exact sparse matrices.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::chevalley::ChevalleyData;
use crate::error::{Error, Result};
use crate::linalg::SparseMat;
use crate::rational::{Weight, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Trivial,
    Standard,
    Adjoint,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::Trivial => "trivial",
            RepKind::Standard => "standard",
            RepKind::Adjoint => "adjoint",
        })
    }
}

impl std::str::FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(RepKind::Trivial),
            "standard" => Ok(RepKind::Standard),
            "adjoint" => Ok(RepKind::Adjoint),
            _ => Err(Error::Unsupported(format!("representation {s:?}"))),
        }
    }
}

/// `π(x_a)` for every basis element `x_a` of `g`, in a weight basis of `V`.
#[derive(Clone)]
pub struct ModuleMatrices {
    pub kind: RepKind,
    pub highest_weight: Weight,
    pub weights: Vec<Weight>,
    pub mats: Vec<SparseMat>,
}

pub fn representation_matrices(chev: &ChevalleyData, kind: RepKind) -> Result<ModuleMatrices> {
    let rs = chev.rs();
    match kind {
        RepKind::Trivial => Ok(ModuleMatrices {
            kind,
            highest_weight: rs.zero_weight(),
            weights: vec![rs.zero_weight()],
            mats: vec![SparseMat::zeros(1, 1); chev.dim()],
        }),
        RepKind::Standard => {
            let def = chev.defining().ok_or_else(|| {
                Error::Unsupported(format!("{} has no defining matrix representation here", rs.code()))
            })?;
            let highest_weight = rs
                .standard_highest_weight()
                .ok_or_else(|| Error::Unsupported(format!("{} has no standard representation", rs.code())))?;
            Ok(ModuleMatrices { kind, highest_weight, weights: def.weights.clone(), mats: def.mats.clone() })
        }
        RepKind::Adjoint => Ok(ModuleMatrices {
            kind,
            highest_weight: rs.highest_root().clone(),
            weights: (0..chev.dim()).map(|a| chev.basis_weight(a)).collect(),
            mats: (0..chev.dim()).map(|a| chev.ad(a)).collect(),
        }),
    }
}

impl ModuleMatrices {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn pi(&self, x: &[Q]) -> SparseMat {
        let n = self.dim();
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(SparseMat::zeros(n, n), |acc, (a, c)| acc.add_scaled(&self.mats[a], c))
    }

    /// Basis pairs with `[π(x_a), π(x_b)] ≠ π([x_a, x_b])`.
    pub fn commutation_violations(&self, chev: &ChevalleyData) -> usize {
        let d = chev.dim();
        let mut bad = 0;
        for a in 0..d {
            for b in 0..d {
                let lhs = self.mats[a].commutator(&self.mats[b]);
                let rhs = self.pi(&chev.bracket(&chev.unit(a), &chev.unit(b)));
                if !lhs.sub(&rhs).is_zero() {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// Whether every basis vector is a weight vector of the recorded weight.
    pub fn weights_consistent(&self, chev: &ChevalleyData) -> bool {
        let rs = chev.rs();
        (0..rs.rank()).all(|i| {
            let h = &self.mats[chev.cartan_index(i)];
            (0..self.dim()).all(|v| {
                let expect = rs.coroot_pairing(&self.weights[v], i);
                h.row(v).iter().all(|(c, x)| *c == v && *x == expect) && (!h.row(v).is_empty() || expect.is_zero())
            })
        })
    }
}
