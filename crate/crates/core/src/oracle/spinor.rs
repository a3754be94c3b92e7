//! Subalgebras `h`, the splitting of `q = h^⊥`, and the spinor module.
//!
//! `q` is split as `⊕_β (ℂe_β ⊕ ℂf_β) ⊕ W` where the `β` are the positive
//! roots not in `h`, `f_β` is the Killing dual of `e_β`, and `W = t ∩ q`.
//! Over ℚ the form on `W` need not split into isotropic halves, so the module
//! used is `S' = ∧span{f_β} ⊗̂ C(W)` with `C(W)` acting on itself by left
//! multiplication. As a `C(q)`-module `S'` is `2^{p/2}` copies of the spinor
//! module, `p = dim W`; every kernel is the spinor kernel tensored with a
//! trivial factor of that dimension. For `h ⊇ t` we have `W = 0` and `S' = S`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::chevalley::{ChevalleyData, GVec};
use crate::error::{Error, Result};
use crate::linalg::{dense, rank_of_rows, span_contains, SparseMat};
use crate::rational::{q, Weight, Q};
use crate::spinweights::SubalgebraDatum;

/// `h = (Cartan part) ⊕ ⊕_{α∈roots} g_α` with the Cartan part inside `t`.
#[derive(Clone, Debug)]
pub struct OracleSubalgebra {
    cartan: Vec<GVec>,
    roots: BTreeSet<usize>,
}

impl OracleSubalgebra {
    pub fn torus(chev: &ChevalleyData) -> Self {
        OracleSubalgebra { cartan: (0..chev.rs().rank()).map(|i| chev.unit(chev.cartan_index(i))).collect(), roots: BTreeSet::new() }
    }

    /// The equal-rank subalgebra `t ⊕ ⊕_{α∈Δ_h} g_α` of a datum.
    pub fn from_datum(chev: &ChevalleyData, datum: &SubalgebraDatum) -> Result<Self> {
        let rs = chev.rs();
        if rs.code() != datum.rs().code() {
            return Err(Error::Precondition("datum and algebra differ".into()));
        }
        let mut roots = BTreeSet::new();
        for a in datum.h_roots() {
            roots.insert(rs.root_index(&a).expect("h root is a root"));
            roots.insert(rs.root_index(&-&a).expect("h root is a root"));
        }
        Ok(OracleSubalgebra { cartan: Self::torus(chev).cartan, roots })
    }

    /// Checks closure under the bracket and nondegeneracy of the Killing form.
    pub fn custom(chev: &ChevalleyData, cartan: Vec<GVec>, roots: &[usize]) -> Result<Self> {
        for h in &cartan {
            if h.len() != chev.dim() || (0..chev.nroots()).any(|a| !h[a].is_zero()) {
                return Err(Error::Precondition("Cartan part must lie in t".into()));
            }
        }
        let sub = OracleSubalgebra { cartan, roots: roots.iter().copied().collect() };
        let basis = sub.basis(chev);
        for x in &basis {
            for y in &basis {
                if !span_contains(&basis, &[chev.bracket(x, y)]) {
                    return Err(Error::Precondition("h is not closed under the bracket".into()));
                }
            }
        }
        if rank_of_rows(&basis) != basis.len() {
            return Err(Error::Precondition("h basis is dependent".into()));
        }
        let gram: dense::DMat = basis.iter().map(|x| basis.iter().map(|y| chev.killing(x, y)).collect()).collect();
        if dense::inverse(&gram).is_none() {
            return Err(Error::Precondition("Killing form is degenerate on h".into()));
        }
        Ok(sub)
    }

    pub fn basis(&self, chev: &ChevalleyData) -> Vec<GVec> {
        self.cartan.iter().cloned().chain(self.roots.iter().map(|&k| chev.unit(k))).collect()
    }

    pub fn dim(&self) -> usize {
        self.cartan.len() + self.roots.len()
    }

    pub fn contains_root(&self, k: usize) -> bool {
        self.roots.contains(&k)
    }

    pub fn is_equal_rank(&self, chev: &ChevalleyData) -> bool {
        self.cartan.len() == chev.rs().rank()
    }

    /// `ρ_h` for the positive roots of `h`, as an element of `t*`. For a
    /// smaller Cartan part it must vanish on `t ∩ h^⊥`, so that its norm is
    /// the norm of its restriction to `h ∩ t`.
    pub fn rho_h(&self, chev: &ChevalleyData) -> Result<Weight> {
        let rs = chev.rs();
        let npos = rs.positive_roots().len();
        let pos: Vec<usize> = self.roots.iter().copied().filter(|&k| k < npos).collect();
        let half = Q::new(1.into(), 2.into());
        let sum = pos.iter().fold(rs.zero_weight(), |acc, &k| &acc + &rs.roots()[k]);
        if !self.is_equal_rank(chev) {
            let dual = pos.iter().fold(vec![Q::zero(); chev.dim()], |acc: GVec, &k| {
                acc.iter().zip(chev.h_alpha(k)).map(|(a, b)| a + b).collect()
            });
            if !span_contains(&self.cartan, &[dual]) {
                return Err(Error::Unsupported("ρ_h does not restrict from t to the Cartan part of h".into()));
            }
        }
        Ok(sum.scale(&half))
    }
}

/// `S'` with Clifford generators normalized as `XY + YX = ⟨X, Y⟩`.
pub struct SpinorModule {
    /// Positive roots `β` of `q`, as indices into the root list.
    hyper: Vec<usize>,
    e_vecs: Vec<GVec>,
    f_vecs: Vec<GVec>,
    w_vecs: Vec<GVec>,
    w_norms: Vec<Q>,
    gamma_e: Vec<SparseMat>,
    gamma_f: Vec<SparseMat>,
    gamma_w: Vec<SparseMat>,
    weights: Vec<Weight>,
}

fn below(mask: usize, k: usize) -> u32 {
    (mask & ((1usize << k) - 1)).count_ones()
}

fn sign(n: u32) -> Q {
    if n % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

impl SpinorModule {
    pub fn new(chev: &ChevalleyData, h: &OracleSubalgebra) -> Result<Self> {
        let rs = chev.rs();
        let npos = rs.positive_roots().len();
        for &k in &h.roots {
            let neg = rs.root_index(&-&rs.roots()[k]).expect("roots are symmetric");
            if !h.roots.contains(&neg) {
                return Err(Error::Precondition("h roots must be closed under negation".into()));
            }
        }
        let hyper: Vec<usize> = (0..npos).filter(|k| !h.roots.contains(k)).collect();
        let e_vecs: Vec<GVec> = hyper.iter().map(|&k| chev.unit(k)).collect();
        let f_vecs: Vec<GVec> = hyper.iter().map(|&k| chev.dual_root_vector(k)).collect();
        // W = t ∩ h^⊥, orthogonalized
        let r = rs.rank();
        let tbasis: Vec<GVec> = (0..r).map(|i| chev.unit(chev.cartan_index(i))).collect();
        let constraints: Vec<Vec<Q>> =
            h.cartan.iter().map(|c| tbasis.iter().map(|t| chev.killing(c, t)).collect()).collect();
        let kernel = if constraints.is_empty() {
            dense::identity(r)
        } else {
            crate::linalg::nullspace(&SparseMat::from_dense(&constraints))
        };
        let mut w_vecs: Vec<GVec> = Vec::new();
        let mut w_norms: Vec<Q> = Vec::new();
        for coeffs in kernel {
            let mut v: GVec = vec![Q::zero(); chev.dim()];
            for (i, c) in coeffs.iter().enumerate() {
                v[chev.cartan_index(i)] = c.clone();
            }
            for (w, n) in w_vecs.iter().zip(&w_norms) {
                let c = chev.killing(&v, w) / n;
                v = v.iter().zip(w).map(|(x, y)| x - &c * y).collect();
            }
            let n = chev.killing(&v, &v);
            if n.is_zero() {
                return Err(Error::Internal("isotropic vector in t ∩ q".into()));
            }
            w_vecs.push(v);
            w_norms.push(n);
        }
        let m = hyper.len();
        let p = w_vecs.len();
        if p % 2 == 1 {
            return Err(Error::Unsupported(format!("q has odd dimension {}", 2 * m + p)));
        }
        let dim = 1usize << (m + p);
        let wmask = (1usize << p) - 1;
        let mut gamma_e = Vec::with_capacity(m);
        let mut gamma_f = Vec::with_capacity(m);
        for k in 0..m {
            let bit = 1usize << (k + p);
            let mut wedge = Vec::new();
            let mut contract = Vec::new();
            for idx in 0..dim {
                let hm = idx >> p;
                let s = sign(below(hm, k));
                if idx & bit == 0 {
                    wedge.push((idx | bit, idx, s));
                } else {
                    contract.push((idx & !bit, idx, s));
                }
            }
            gamma_f.push(SparseMat::from_triplets(dim, dim, wedge));
            gamma_e.push(SparseMat::from_triplets(dim, dim, contract));
        }
        let mut gamma_w = Vec::with_capacity(p);
        for (k, n) in w_norms.iter().enumerate() {
            let half = n / q(2);
            let trip = (0..dim).map(|idx| {
                let parity = sign((idx >> p).count_ones());
                let wm = idx & wmask;
                let s = parity * sign(below(wm, k));
                if wm & (1 << k) == 0 {
                    (idx | (1 << k), idx, s)
                } else {
                    (idx & !(1 << k), idx, s * &half)
                }
            });
            gamma_w.push(SparseMat::from_triplets(dim, dim, trip));
        }
        let vacuum = hyper.iter().fold(rs.zero_weight(), |acc, &k| &acc + &rs.roots()[k]).scale(&Q::new(1.into(), 2.into()));
        let weights = (0..dim)
            .map(|idx| {
                let hm = idx >> p;
                (0..m).filter(|k| hm & (1 << k) != 0).fold(vacuum.clone(), |acc, k| &acc - &rs.roots()[hyper[k]])
            })
            .collect();
        Ok(SpinorModule { hyper, e_vecs, f_vecs, w_vecs, w_norms, gamma_e, gamma_f, gamma_w, weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn hyperbolic_roots(&self) -> &[usize] {
        &self.hyper
    }

    pub fn anisotropic_dim(&self) -> usize {
        self.w_vecs.len()
    }

    /// `dim S' / dim S`.
    pub fn multiplicity_factor(&self) -> u64 {
        1 << (self.anisotropic_dim() / 2)
    }

    /// The `t`-weight of each basis monomial (ignoring the `C(W)` factor).
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn label(&self, chev: &ChevalleyData, idx: usize) -> String {
        let p = self.anisotropic_dim();
        let hm = idx >> p;
        let mut parts: Vec<String> = (0..self.hyper.len())
            .filter(|k| hm & (1 << k) != 0)
            .map(|k| format!("f{}", chev.rs().roots()[self.hyper[k]]))
            .collect();
        parts.extend((0..p).filter(|k| idx & (1 << k) != 0).map(|k| format!("w{}", k + 1)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("∧")
        }
    }

    /// Canonical basis of `q`: `e_β, f_β` pairs then the orthogonal `W` basis.
    pub fn q_basis(&self) -> Vec<GVec> {
        let mut out = Vec::new();
        for (e, f) in self.e_vecs.iter().zip(&self.f_vecs) {
            out.push(e.clone());
            out.push(f.clone());
        }
        out.extend(self.w_vecs.iter().cloned());
        out
    }

    /// Canonical dual basis, matching `q_basis` term by term.
    pub fn q_dual_basis(&self) -> Vec<GVec> {
        let mut out = Vec::new();
        for (e, f) in self.e_vecs.iter().zip(&self.f_vecs) {
            out.push(f.clone());
            out.push(e.clone());
        }
        out.extend(self.w_vecs.iter().zip(&self.w_norms).map(|(w, n)| w.iter().map(|x| x / n).collect()));
        out
    }

    /// `γ(v)` for `v ∈ g`; the component along `h` is ignored.
    pub fn gamma(&self, chev: &ChevalleyData, v: &[Q]) -> SparseMat {
        let d = self.dim();
        let mut out = SparseMat::zeros(d, d);
        for k in 0..self.hyper.len() {
            let ce = chev.killing(v, &self.f_vecs[k]);
            if !ce.is_zero() {
                out = out.add_scaled(&self.gamma_e[k], &ce);
            }
            let cf = chev.killing(v, &self.e_vecs[k]);
            if !cf.is_zero() {
                out = out.add_scaled(&self.gamma_f[k], &cf);
            }
        }
        for k in 0..self.w_vecs.len() {
            let c = chev.killing(v, &self.w_vecs[k]) / &self.w_norms[k];
            if !c.is_zero() {
                out = out.add_scaled(&self.gamma_w[k], &c);
            }
        }
        out
    }

    /// `γ(e_β)` (contraction) and `γ(f_β)` (wedge) for the `k`-th root of `q`.
    pub fn gamma_pair(&self, k: usize) -> (&SparseMat, &SparseMat) {
        (&self.gamma_e[k], &self.gamma_f[k])
    }

    pub fn e_vec(&self, k: usize) -> &GVec {
        &self.e_vecs[k]
    }

    pub fn f_vec(&self, k: usize) -> &GVec {
        &self.f_vecs[k]
    }

    /// Basis index and sign of `f_{β_1} ∧ … ∧ f_{β_s}` (roots given by index
    /// into the root list, in the order written) times the `C(W)` unit.
    pub fn monomial(&self, roots: &[usize]) -> Result<(usize, Q)> {
        let p = self.anisotropic_dim();
        let mut mask = 0usize;
        let mut s = Q::one();
        for &r in roots.iter().rev() {
            let k = self
                .hyper
                .iter()
                .position(|&x| x == r)
                .ok_or_else(|| Error::Precondition("root is not a positive root of q".into()))?;
            if mask & (1 << k) != 0 {
                return Ok((0, Q::zero()));
            }
            s *= sign(below(mask, k));
            mask |= 1 << k;
        }
        Ok((mask << p, s))
    }
}
