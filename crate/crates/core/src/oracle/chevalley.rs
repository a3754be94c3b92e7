//! Structure constants, Killing form and root-vector bookkeeping.
//!
//! The basis of `g` is `e_α` for `α` in the root order of the root system
//! (positives first), followed by the simple coroots `h_1, …, h_r`. Classical
//! types are realized as matrix algebras so that the defining representation
//! is available; G2 and F4 use structure constants from extraspecial pairs.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::dense::{self, DMat};
use crate::linalg::SparseMat;
use crate::rational::{q, Weight, Q};
use crate::rootsys::{Family, RootSystem};

/// A vector of `g` in the basis described above.
pub type GVec = Vec<Q>;

pub struct ChevalleyData {
    rs: Arc<RootSystem>,
    nroots: usize,
    /// `bracket[a][b]` is `[x_a, x_b]` as a sparse coordinate vector.
    bracket: Vec<Vec<Vec<(usize, Q)>>>,
    killing: DMat,
    /// Killing form on the span of the coroots, inverted.
    cartan_killing_inv: DMat,
    defining: Option<Defining>,
}

/// Matrices of the basis of `g` in the defining representation.
#[derive(Clone)]
pub struct Defining {
    pub mats: Vec<SparseMat>,
    pub weights: Vec<Weight>,
}

impl ChevalleyData {
    pub fn build(rs: Arc<RootSystem>) -> Result<Self> {
        match rs.family() {
            Family::A | Family::B | Family::C | Family::D => Self::from_matrices(rs),
            Family::G2 | Family::F4 => Self::from_extraspecial_pairs(rs),
        }
    }

    /// Structure constants from extraspecial pairs for any type; used for the
    /// exceptional algebras and as a cross-check on the classical ones.
    pub fn from_extraspecial_pairs(rs: Arc<RootSystem>) -> Result<Self> {
        let nroots = rs.roots().len();
        let r = rs.rank();
        let dim = nroots + r;
        let npos = rs.positive_roots().len();
        let n = StructureConstants::new(&rs)?;
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for a in 0..nroots {
            for b in 0..nroots {
                let s = &rs.roots()[a] + &rs.roots()[b];
                if s.is_zero() {
                    // [e_α, e_{−α}] = h_α for α > 0
                    let (pos, sign) = if a < npos { (a, q(1)) } else { (b, q(-1)) };
                    bracket[a][b] = coroot_in_simple_coroots(&rs, pos)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (nroots + i, c * &sign))
                        .collect();
                } else if let Some(k) = rs.root_index(&s) {
                    bracket[a][b] = vec![(k, n.get(a, b))];
                }
            }
            for i in 0..r {
                let c = rs.coroot_pairing(&rs.roots()[a], i);
                if !c.is_zero() {
                    bracket[nroots + i][a] = vec![(a, c.clone())];
                    bracket[a][nroots + i] = vec![(a, -c)];
                }
            }
        }
        Ok(Self::finish(rs, bracket, None))
    }

    fn from_matrices(rs: Arc<RootSystem>) -> Result<Self> {
        let real = ClassicalRealization::new(&rs)?;
        let nroots = rs.roots().len();
        let npos = rs.positive_roots().len();
        let r = rs.rank();
        let mut mats: Vec<DMat> = Vec::with_capacity(nroots + r);
        for k in 0..npos {
            mats.push(real.root_vector(&rs.positive_roots()[k])?);
        }
        for k in 0..npos {
            mats.push(dense::transpose(&mats[k]));
        }
        for i in 0..r {
            let k = rs.positive_index(&rs.simple_roots()[i]).expect("simple root is positive");
            let e = &mats[k];
            let h = commutator(e, &mats[npos + k]);
            let he = commutator(&h, e);
            let c = ratio(&he, e).ok_or_else(|| Error::Internal("simple root vector is not an eigenvector".into()))?;
            mats.push(scale(&h, &(q(2) / c)));
        }
        let dim = mats.len();
        let cartan_diag: Vec<Vec<Q>> = mats[nroots..].iter().map(|m| (0..m.len()).map(|i| m[i][i].clone()).collect()).collect();
        let gram: DMat = (0..r)
            .map(|i| (0..r).map(|j| dot(&cartan_diag[i], &cartan_diag[j])).collect())
            .collect();
        let mut bracket = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = commutator(&mats[a], &mats[b]);
                if is_zero_mat(&c) {
                    continue;
                }
                let wa = basis_weight(&rs, nroots, a);
                let wb = basis_weight(&rs, nroots, b);
                let w = &wa + &wb;
                bracket[a][b] = if w.is_zero() {
                    let d: Vec<Q> = (0..c.len()).map(|i| c[i][i].clone()).collect();
                    let rhs: Vec<Q> = cartan_diag.iter().map(|h| dot(h, &d)).collect();
                    let x = dense::solve(&gram, &rhs).ok_or_else(|| Error::Internal("singular Cartan gram".into()))?;
                    let mut back = zeros(c.len());
                    for (i, xi) in x.iter().enumerate() {
                        back = add_scaled(&back, &mats[nroots + i], xi);
                    }
                    if back != c {
                        return Err(Error::Internal("bracket leaves the Cartan subalgebra".into()));
                    }
                    x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (nroots + i, v)).collect()
                } else {
                    let k = rs
                        .root_index(&w)
                        .ok_or_else(|| Error::Internal(format!("bracket of weight {w} is not a root")))?;
                    let f = ratio(&c, &mats[k]).ok_or_else(|| Error::Internal("bracket is not a root vector".into()))?;
                    vec![(k, f)]
                };
            }
        }
        let defining = Defining {
            mats: mats.iter().map(|m| SparseMat::from_dense(m)).collect(),
            weights: real.weights.clone(),
        };
        Ok(Self::finish(rs, bracket, Some(defining)))
    }

    fn finish(rs: Arc<RootSystem>, bracket: Vec<Vec<Vec<(usize, Q)>>>, defining: Option<Defining>) -> Self {
        let nroots = rs.roots().len();
        let dim = bracket.len();
        let ad: Vec<SparseMat> = (0..dim).map(|a| ad_from(&bracket, a)).collect();
        let mut killing = dense::zeros(dim, dim);
        for a in 0..dim {
            for b in a..dim {
                let v = trace_of_product(&ad[a], &ad[b]);
                killing[a][b] = v.clone();
                killing[b][a] = v;
            }
        }
        let r = rs.rank();
        let ck: DMat = (0..r).map(|i| (0..r).map(|j| killing[nroots + i][nroots + j].clone()).collect()).collect();
        let cartan_killing_inv = dense::inverse(&ck).expect("Killing form is nondegenerate on the Cartan subalgebra");
        ChevalleyData { rs, nroots, bracket, killing, cartan_killing_inv, defining }
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.bracket.len()
    }

    pub fn nroots(&self) -> usize {
        self.nroots
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.nroots + i
    }

    pub fn defining(&self) -> Option<&Defining> {
        self.defining.as_ref()
    }

    pub fn unit(&self, a: usize) -> GVec {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    pub fn basis_weight(&self, a: usize) -> Weight {
        basis_weight(&self.rs, self.nroots, a)
    }

    pub fn basis_label(&self, a: usize) -> String {
        if a < self.nroots {
            format!("e{}", self.rs.roots()[a])
        } else {
            format!("h{}", a - self.nroots + 1)
        }
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.bracket[a][b]
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> GVec {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (c, s) in &self.bracket[a][b] {
                    out[*c] += &xy * s;
                }
            }
        }
        out
    }

    pub fn killing_matrix(&self) -> &DMat {
        &self.killing
    }

    pub fn killing(&self, u: &[Q], v: &[Q]) -> Q {
        let mut s = Q::zero();
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if !self.killing[a][b].is_zero() {
                    s += x * y * &self.killing[a][b];
                }
            }
        }
        s
    }

    pub fn ad(&self, a: usize) -> SparseMat {
        ad_from(&self.bracket, a)
    }

    /// `e_{−α} / ⟨e_α, e_{−α}⟩`, the Killing-dual partner of `e_α`.
    pub fn dual_root_vector(&self, k: usize) -> GVec {
        let neg = self.rs.root_index(&-&self.rs.roots()[k]).expect("roots are symmetric");
        let b = self.killing[k][neg].clone();
        let mut v = vec![Q::zero(); self.dim()];
        v[neg] = Q::one() / b;
        v
    }

    /// `H_α = [E_α, E_{−α}] / ⟨E_α, E_{−α}⟩`, the Killing dual of `α` in `t`.
    pub fn h_alpha(&self, k: usize) -> GVec {
        let neg = self.rs.root_index(&-&self.rs.roots()[k]).expect("roots are symmetric");
        let b = self.killing[k][neg].clone();
        self.bracket(&self.unit(k), &self.unit(neg)).into_iter().map(|x| x / &b).collect()
    }

    /// `‖μ‖²` for the form on `t*` dual to the Killing form.
    pub fn killing_norm2(&self, mu: &Weight) -> Q {
        let c: Vec<Q> = (0..self.rs.rank()).map(|i| self.rs.coroot_pairing(mu, i)).collect();
        let x = dense::mul_vec(&self.cartan_killing_inv, &c);
        c.iter().zip(&x).map(|(a, b)| a * b).sum()
    }

    /// Number of basis triples violating the Jacobi identity.
    pub fn jacobi_violations(&self) -> usize {
        let d = self.dim();
        let mut bad = 0;
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    if t1.iter().zip(&t2).zip(&t3).any(|((p, q), r)| !(p + q + r).is_zero()) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Number of basis pairs violating antisymmetry.
    pub fn antisymmetry_violations(&self) -> usize {
        let d = self.dim();
        let mut bad = 0;
        for a in 0..d {
            for b in 0..d {
                let s = self.bracket(&self.unit(a), &self.unit(b));
                let t = self.bracket(&self.unit(b), &self.unit(a));
                if s.iter().zip(&t).any(|(x, y)| !(x + y).is_zero()) {
                    bad += 1;
                }
            }
        }
        bad
    }
}

fn basis_weight(rs: &RootSystem, nroots: usize, a: usize) -> Weight {
    if a < nroots {
        rs.roots()[a].clone()
    } else {
        rs.zero_weight()
    }
}

/// Coefficients of `α^∨` in the simple coroots, for the positive root `Δ⁺[k]`.
fn coroot_in_simple_coroots(rs: &RootSystem, k: usize) -> Vec<Q> {
    let alpha = &rs.positive_roots()[k];
    let n2 = alpha.norm2();
    rs.positive_root_coords(k)
        .iter()
        .zip(rs.simple_roots())
        .map(|(&c, s)| q(c) * s.norm2() / &n2)
        .collect()
}

fn ad_from(bracket: &[Vec<Vec<(usize, Q)>>], a: usize) -> SparseMat {
    let d = bracket.len();
    let trip = (0..d).flat_map(|b| bracket[a][b].iter().map(move |(c, v)| (*c, b, v.clone())));
    SparseMat::from_triplets(d, d, trip)
}

fn trace_of_product(x: &SparseMat, y: &SparseMat) -> Q {
    let mut s = Q::zero();
    for i in 0..x.rows() {
        for (k, v) in x.row(i) {
            let w = y.get(*k, i);
            if !w.is_zero() {
                s += v * w;
            }
        }
    }
    s
}

/// Signs `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}` in a Chevalley basis,
/// fixed by taking every extraspecial pair positive.
struct StructureConstants<'a> {
    rs: &'a RootSystem,
    npos: usize,
    table: HashMap<(usize, usize), i64>,
}

impl<'a> StructureConstants<'a> {
    fn new(rs: &'a RootSystem) -> Result<Self> {
        let npos = rs.positive_roots().len();
        let mut sc = StructureConstants { rs, npos, table: HashMap::new() };
        for xi in 0..npos {
            let target = &rs.positive_roots()[xi];
            let pairs: Vec<(usize, usize)> = (0..npos)
                .filter_map(|z| rs.positive_index(&(target - &rs.positive_roots()[z])).map(|e| (z, e)))
                .filter(|(z, e)| z < e)
                .collect();
            let Some(&(alpha, beta)) = pairs.first() else { continue };
            let p = sc.string_below(alpha, beta);
            sc.set(alpha, beta, p + 1);
            let nab = q(p + 1);
            let xi_n2 = target.norm2();
            for &(zeta, eta) in &pairs[1..] {
                let mut s = Q::zero();
                let (na, nb) = (alpha + npos, beta + npos);
                if rs.is_root(&(&rs.positive_roots()[eta] - &rs.positive_roots()[alpha])) {
                    let d = (&rs.positive_roots()[eta] - &rs.positive_roots()[alpha]).norm2();
                    s += sc.n(eta, na)? * sc.n(zeta, nb)? / d;
                }
                if rs.is_root(&(&rs.positive_roots()[zeta] - &rs.positive_roots()[alpha])) {
                    let d = (&rs.positive_roots()[zeta] - &rs.positive_roots()[alpha]).norm2();
                    s += sc.n(na, zeta)? * sc.n(eta, nb)? / d;
                }
                let v = &xi_n2 / &nab * s;
                if !v.is_integer() || v.is_zero() {
                    return Err(Error::Internal(format!("structure constant {v} is not a nonzero integer")));
                }
                let v = v.to_integer().try_into().map_err(|_| Error::Internal("structure constant overflow".into()))?;
                sc.set(zeta, eta, v);
            }
        }
        Ok(sc)
    }

    fn set(&mut self, a: usize, b: usize, v: i64) {
        self.table.insert((a, b), v);
        self.table.insert((b, a), -v);
    }

    /// Largest `p` with `β − pα` a root.
    fn string_below(&self, alpha: usize, beta: usize) -> i64 {
        let (a, b) = (&self.rs.positive_roots()[alpha], &self.rs.positive_roots()[beta]);
        let mut p = 0;
        let mut w = b - a;
        while self.rs.is_root(&w) {
            p += 1;
            w = &w - a;
        }
        p
    }

    fn neg(&self, x: usize) -> usize {
        if x < self.npos {
            x + self.npos
        } else {
            x - self.npos
        }
    }

    /// `N_{x,y}` for root indices with `x + y` a root.
    fn n(&self, x: usize, y: usize) -> Result<Q> {
        let roots = self.rs.roots();
        let z = &roots[x] + &roots[y];
        let zi = self.rs.root_index(&z).ok_or_else(|| Error::Internal("N of a non-root sum".into()))?;
        let pos = |i: usize| i < self.npos;
        if pos(x) && pos(y) {
            return self
                .table
                .get(&(x, y))
                .map(|&v| q(v))
                .ok_or_else(|| Error::Internal("structure constant requested out of order".into()));
        }
        if !pos(x) && !pos(y) {
            return Ok(-self.n(self.neg(x), self.neg(y))?);
        }
        // x + y + (−z) = 0 gives N_{x,y}/|z|² = N_{y,−z}/|x|² = N_{−z,x}/|y|²
        let mz = self.neg(zi);
        let z2 = z.norm2();
        if pos(y) == pos(mz) {
            Ok(z2 / roots[x].norm2() * self.n(y, mz)?)
        } else {
            Ok(z2 / roots[y].norm2() * self.n(mz, x)?)
        }
    }

    fn get(&self, a: usize, b: usize) -> Q {
        self.n(a, b).expect("structure constants are complete")
    }
}

/// Defining representations of the classical algebras with diagonal Cartan.
struct ClassicalRealization {
    family: Family,
    n: usize,
    weights: Vec<Weight>,
    /// Invariant form (absent for type A).
    form: Option<DMat>,
}

impl ClassicalRealization {
    fn new(rs: &RootSystem) -> Result<Self> {
        let r = rs.rank();
        let amb = rs.ambient_dim();
        let family = rs.family();
        let (n, weights): (usize, Vec<Weight>) = match family {
            Family::A => (r + 1, (0..=r).map(|i| rs.project(&Weight::unit(amb, i))).collect()),
            Family::B => {
                let mut w: Vec<Weight> = (0..r).map(|i| Weight::unit(amb, i)).collect();
                w.push(rs.zero_weight());
                w.extend((0..r).rev().map(|i| -&Weight::unit(amb, i)));
                (2 * r + 1, w)
            }
            Family::C | Family::D => {
                let mut w: Vec<Weight> = (0..r).map(|i| Weight::unit(amb, i)).collect();
                w.extend((0..r).rev().map(|i| -&Weight::unit(amb, i)));
                (2 * r, w)
            }
            _ => return Err(Error::UnsupportedRootSystem(rs.code())),
        };
        let form = match family {
            Family::A => None,
            _ => {
                let mut j = dense::zeros(n, n);
                for a in 0..n {
                    let sign = if family == Family::C && a >= r { -1 } else { 1 };
                    j[a][n - 1 - a] = q(sign);
                }
                Some(j)
            }
        };
        Ok(ClassicalRealization { family, n, weights, form })
    }

    fn in_algebra(&self, x: &DMat) -> bool {
        match &self.form {
            None => (0..self.n).map(|i| x[i][i].clone()).sum::<Q>().is_zero(),
            Some(j) => {
                let a = dense::mul(&dense::transpose(x), j);
                let b = dense::mul(j, x);
                a.iter().zip(&b).all(|(r, s)| r.iter().zip(s).all(|(u, v)| (u + v).is_zero()))
            }
        }
    }

    fn root_vector(&self, alpha: &Weight) -> Result<DMat> {
        let n = self.n;
        let (a, b) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && &(&self.weights[a] - &self.weights[b]) == alpha)
            .ok_or_else(|| Error::Internal(format!("no matrix unit of weight {alpha}")))?;
        let mut x = dense::zeros(n, n);
        x[a][b] = q(1);
        if self.family == Family::A {
            return Ok(x);
        }
        let (bp, ap) = (n - 1 - b, n - 1 - a);
        if (bp, ap) == (a, b) {
            return if self.in_algebra(&x) { Ok(x) } else { Err(Error::Internal("long root vector".into())) };
        }
        for s in [1, -1] {
            let mut y = x.clone();
            y[bp][ap] = q(s);
            if self.in_algebra(&y) {
                return Ok(y);
            }
        }
        Err(Error::Internal(format!("no root vector of weight {alpha}")))
    }
}

fn commutator(a: &DMat, b: &DMat) -> DMat {
    let ab = dense::mul(a, b);
    let ba = dense::mul(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn scale(a: &DMat, c: &Q) -> DMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn zeros(n: usize) -> DMat {
    dense::zeros(n, n)
}

fn add_scaled(a: &DMat, b: &DMat, c: &Q) -> DMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y * c).collect()).collect()
}

fn is_zero_mat(a: &DMat) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `c` with `a = c·b`, if any.
fn ratio(a: &DMat, b: &DMat) -> Option<Q> {
    let (i, j) = (0..b.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).find(|&(i, j)| !b[i][j].is_zero())?;
    let c = &a[i][j] / &b[i][j];
    (a == &scale(b, &c) && !c.is_zero()).then_some(c)
}
