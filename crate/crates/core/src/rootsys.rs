//! Root systems of types A–D, G2 and F4 in exact ε-coordinates, with Weyl
//! group actions, dominance, orbits and stabilizers.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::dense::{self, DMat};
use crate::rational::{q, qf, Weight, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
            Family::F4 => "F",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G" | "G2" => Ok(Family::G2),
            "F" | "F4" => Ok(Family::F4),
            other => Err(Error::UnsupportedRootSystem(format!("unknown family {other:?}"))),
        }
    }
}

/// Euclidean inner product on ε-coordinates.
pub fn inner_product(x: &Weight, y: &Weight) -> Q {
    x.dot(y)
}

/// An element of the Weyl group: `word = [i0, i1, ...]` stands for
/// `s_{i0} s_{i1} ...` (the last reflection acts first).
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: DMat,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { word: Vec::new(), matrix: dense::identity(n) }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut m = dense::identity(rs.ambient_dim);
        for &i in word {
            m = dense::mul(&m, &rs.reflection_matrices[i]);
        }
        WeylElement { word: word.to_vec(), matrix: m }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &DMat {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == dense::identity(self.matrix.len())
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight::new(dense::mul_vec(&self.matrix, w.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { word, matrix: dense::mul(&self.matrix, &other.matrix) }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut word = self.word.clone();
        word.reverse();
        WeylElement { word, matrix: dense::transpose(&self.matrix) }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    simple_roots: Vec<Weight>,
    rho: Weight,
    positive_coords: Vec<Vec<i64>>,
    fundamental_weights: Vec<Weight>,
    gram_inv: DMat,
    reflection_matrices: Vec<DMat>,
    root_index: HashMap<Weight, usize>,
}

fn eps(n: usize, terms: &[(usize, i64)]) -> Weight {
    let mut c = vec![Q::zero(); n];
    for &(i, v) in terms {
        c[i] += q(v);
    }
    Weight::new(c)
}

fn simple_roots_for(family: Family, rank: usize) -> Result<(usize, Vec<Weight>)> {
    let unsupported = || Error::UnsupportedRootSystem(format!("{family}{rank}"));
    let chain = |n: usize, k: usize| -> Vec<Weight> { (0..k).map(|i| eps(n, &[(i, 1), (i + 1, -1)])).collect() };
    match family {
        Family::A => {
            if rank < 1 {
                return Err(unsupported());
            }
            Ok((rank + 1, chain(rank + 1, rank)))
        }
        Family::B | Family::C => {
            if rank < 2 {
                return Err(unsupported());
            }
            let mut s = chain(rank, rank - 1);
            let last = if family == Family::B { 1 } else { 2 };
            s.push(eps(rank, &[(rank - 1, last)]));
            Ok((rank, s))
        }
        Family::D => {
            // D2 = A1 × A1 is admitted so that the classical tables start at rank 2.
            if rank < 2 {
                return Err(unsupported());
            }
            let mut s = chain(rank, rank - 1);
            s.push(eps(rank, &[(rank - 2, 1), (rank - 1, 1)]));
            Ok((rank, s))
        }
        Family::G2 => {
            if rank != 2 {
                return Err(unsupported());
            }
            Ok((3, vec![eps(3, &[(0, 1), (1, -1)]), eps(3, &[(0, -2), (1, 1), (2, 1)])]))
        }
        Family::F4 => {
            if rank != 4 {
                return Err(unsupported());
            }
            Ok((
                4,
                vec![
                    Weight::from_fracs(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)]),
                    eps(4, &[(3, 1)]),
                    eps(4, &[(2, 1), (3, -1)]),
                    eps(4, &[(1, 1), (2, -1)]),
                ],
            ))
        }
    }
}

fn reflect(v: &Weight, alpha: &Weight) -> Weight {
    let c = q(2) * v.dot(alpha) / alpha.norm2();
    v - &alpha.scale(&c)
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        let (n, simple) = simple_roots_for(family, rank)?;
        let gram: DMat = simple.iter().map(|a| simple.iter().map(|b| a.dot(b)).collect()).collect();
        let gram_inv = dense::inverse(&gram).ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;

        let mut seen: HashSet<Weight> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Weight> = simple.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for a in &simple {
                let s = reflect(&r, a);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }

        let coords_of = |w: &Weight| -> Vec<Q> {
            let pairings: Vec<Q> = simple.iter().map(|a| w.dot(a)).collect();
            dense::mul_vec(&gram_inv, &pairings)
        };
        let mut positive: Vec<(Vec<i64>, Weight)> = Vec::new();
        for r in &seen {
            let c = coords_of(r);
            if c.iter().all(|x| !x.is_negative()) {
                let ic = c
                    .iter()
                    .map(|x| x.to_integer().to_i64().filter(|_| x.is_integer()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Internal(format!("root {r} not an integer combination")))?;
                positive.push((ic, r.clone()));
            }
        }
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        if 2 * positive.len() != seen.len() {
            return Err(Error::Internal("roots do not split into ± positive halves".into()));
        }
        let positive_coords: Vec<Vec<i64>> = positive.iter().map(|(c, _)| c.clone()).collect();
        let positive_roots: Vec<Weight> = positive.into_iter().map(|(_, r)| r).collect();
        let mut roots = positive_roots.clone();
        roots.extend(positive_roots.iter().map(|r| -r));
        let root_index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let half = qf(1, 2);
        let rho = positive_roots
            .iter()
            .fold(Weight::zero(n), |acc, r| &acc + r)
            .scale(&half);

        // Cartan matrix A_jk = <α_k, α_j^∨>; fundamental weights solve A x = e_i.
        let cartan: DMat = simple
            .iter()
            .map(|aj| simple.iter().map(|ak| q(2) * ak.dot(aj) / aj.norm2()).collect())
            .collect();
        let cartan_inv = dense::inverse(&cartan).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        let fundamental_weights = (0..rank)
            .map(|i| {
                (0..rank).fold(Weight::zero(n), |acc, k| &acc + &simple[k].scale(&cartan_inv[k][i]))
            })
            .collect();

        let reflection_matrices = simple
            .iter()
            .map(|a| {
                let c = q(2) / a.norm2();
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let id = if i == j { Q::one() } else { Q::zero() };
                                id - &c * &a.coords()[i] * &a.coords()[j]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        Ok(RootSystem {
            family,
            rank,
            ambient_dim: n,
            roots,
            positive_roots,
            simple_roots: simple,
            rho,
            positive_coords,
            fundamental_weights,
            gram_inv,
            reflection_matrices,
            root_index,
        })
    }

    /// Parses codes such as `"A3"`, `"B3"`, `"G2"`, `"F4"`.
    pub fn from_code(code: &str) -> Result<Self> {
        let code = code.trim();
        let bad = || Error::UnsupportedRootSystem(format!("{code:?}"));
        let mut chars = code.chars();
        let f = chars.next().ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let family = match f.to_ascii_uppercase() {
            'G' if rank == 2 => Family::G2,
            'F' if rank == 4 => Family::F4,
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            _ => return Err(bad()),
        };
        RootSystem::build(family, rank)
    }

    pub fn code(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Positive roots first, then their negatives in the same order.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    /// Sorted by height, ties broken by descending simple-root coordinates.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    /// Simple-root coordinates of the `k`-th positive root.
    pub fn positive_root_coords(&self, k: usize) -> &[i64] {
        &self.positive_coords[k]
    }

    pub fn height(&self, k: usize) -> i64 {
        self.positive_coords[k].iter().sum()
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn positive_index(&self, w: &Weight) -> Option<usize> {
        self.root_index(w).filter(|&i| i < self.positive_roots.len())
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index.contains_key(w)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.ambient_dim)
    }

    pub fn highest_root(&self) -> &Weight {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.ambient_dim {
            return Err(Error::MalformedWeight(format!(
                "{w} has {} coordinates, {} expects {}",
                w.len(),
                self.code(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// `2<w, α_i>/<α_i, α_i>`.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> Q {
        let a = &self.simple_roots[i];
        q(2) * w.dot(a) / a.norm2()
    }

    /// Coordinates of the orthogonal projection of `w` onto the root span,
    /// in the basis of simple roots.
    pub fn simple_coordinates(&self, w: &Weight) -> Vec<Q> {
        let pairings: Vec<Q> = self.simple_roots.iter().map(|a| w.dot(a)).collect();
        dense::mul_vec(&self.gram_inv, &pairings)
    }

    pub fn project(&self, w: &Weight) -> Weight {
        let c = self.simple_coordinates(w);
        c.iter()
            .zip(&self.simple_roots)
            .fold(self.zero_weight(), |acc, (x, a)| &acc + &a.scale(x))
    }

    pub fn in_root_span(&self, w: &Weight) -> bool {
        w.len() == self.ambient_dim && self.project(w) == *w
    }

    /// Lattice integrality: integer coroot pairings and membership in the root span.
    pub fn is_integral(&self, w: &Weight) -> bool {
        self.in_root_span(w) && (0..self.rank).all(|i| self.coroot_pairing(w, i).is_integer())
    }

    /// Whether `w` is a nonnegative integer combination of simple roots.
    pub fn is_nonneg_root_combination(&self, w: &Weight) -> bool {
        self.in_root_span(w)
            && self
                .simple_coordinates(w)
                .iter()
                .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple_roots.iter().all(|a| !w.dot(a).is_negative())
    }

    pub fn is_regular(&self, w: &Weight) -> bool {
        self.positive_roots.iter().all(|a| !w.dot(a).is_zero())
    }

    pub fn from_fundamental(&self, coeffs: &[Q]) -> Result<Weight> {
        if coeffs.len() != self.rank {
            return Err(Error::MalformedWeight(format!(
                "{} fundamental coefficients given, rank is {}",
                coeffs.len(),
                self.rank
            )));
        }
        Ok(coeffs
            .iter()
            .zip(&self.fundamental_weights)
            .fold(self.zero_weight(), |acc, (c, w)| &acc + &w.scale(c)))
    }

    pub fn to_fundamental(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank).map(|i| self.coroot_pairing(w, i)).collect()
    }

    pub fn simple_reflection(&self, w: &Weight, i: usize) -> Weight {
        reflect(w, &self.simple_roots[i])
    }

    pub fn reflection(&self, w: &Weight, alpha: &Weight) -> Weight {
        reflect(w, alpha)
    }

    /// The dominant element of the orbit of `w`, and `x` with `x(w)` equal to it.
    /// Reflects at the lowest-index simple root with negative pairing until dominant.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, WeylElement) {
        let mut v = w.clone();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| self.simple_roots[i].dot(&v).is_negative()) {
            v = self.simple_reflection(&v, i);
            applied.push(i);
        }
        applied.reverse();
        (v, WeylElement::from_word(self, &applied))
    }

    pub fn dominant_part(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(i) = (0..self.rank).find(|&i| self.simple_roots[i].dot(&v).is_negative()) {
            v = self.simple_reflection(&v, i);
        }
        v
    }

    /// The W-orbit of `w`, in breadth-first order from its dominant representative.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let start = self.dominant_part(w);
        let mut seen: HashSet<Weight> = HashSet::from([start.clone()]);
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for i in 0..self.rank {
                // from a chamber-side element only reflections that lower the weight are new
                if self.simple_roots[i].dot(&cur).is_positive() {
                    let s = self.simple_reflection(&cur, i);
                    if seen.insert(s.clone()) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    pub fn orbit_and_stabilizer(&self, w: &Weight) -> (u64, u64) {
        let orbit = self.orbit(w).len() as u64;
        let order = self.weyl_group_order();
        debug_assert_eq!(order % orbit, 0);
        (orbit, order / orbit)
    }

    /// |W| by closed form.
    pub fn weyl_group_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::G2 => 12,
            Family::F4 => 1152,
        }
    }

    /// All of W, breadth first from the identity; words are reduced.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let mut keys: HashMap<Weight, usize> = HashMap::new();
        let id = WeylElement::identity(self.ambient_dim);
        keys.insert(self.rho.clone(), 0);
        let mut images = vec![self.rho.clone()];
        let mut elems = vec![id];
        let mut head = 0;
        while head < elems.len() {
            for i in 0..self.rank {
                let img = self.simple_reflection(&images[head], i);
                if keys.contains_key(&img) {
                    continue;
                }
                let mut word = vec![i];
                word.extend_from_slice(&elems[head].word);
                let matrix = dense::mul(&self.reflection_matrices[i], &elems[head].matrix);
                keys.insert(img.clone(), elems.len());
                images.push(img);
                elems.push(WeylElement { word, matrix });
            }
            head += 1;
        }
        elems
    }

    /// Highest weight of the defining representation of a classical algebra.
    pub fn standard_highest_weight(&self) -> Option<Weight> {
        match self.family {
            Family::A => Some(self.project(&Weight::unit(self.ambient_dim, 0))),
            Family::B | Family::C | Family::D => Some(Weight::unit(self.ambient_dim, 0)),
            Family::G2 | Family::F4 => None,
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots
            .iter()
            .filter(|a| self.positive_index(&w.apply(a)).is_none())
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_systems() -> Vec<RootSystem> {
        let mut v = Vec::new();
        for n in 1..=5 {
            v.push(RootSystem::build(Family::A, n).unwrap());
        }
        for n in 2..=5 {
            v.push(RootSystem::build(Family::B, n).unwrap());
            v.push(RootSystem::build(Family::C, n).unwrap());
            v.push(RootSystem::build(Family::D, n).unwrap());
        }
        v.push(RootSystem::build(Family::G2, 2).unwrap());
        v.push(RootSystem::build(Family::F4, 4).unwrap());
        v
    }

    #[test]
    fn a3_positive_roots_are_eps_i_minus_eps_j() {
        let rs = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(rs.roots().len(), 12);
        let mut expect = HashSet::new();
        for i in 0..4 {
            for j in i + 1..4 {
                expect.insert(eps(4, &[(i, 1), (j, -1)]));
            }
        }
        let got: HashSet<Weight> = rs.positive_roots().iter().cloned().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn f4_roots_and_simple_roots() {
        let rs = RootSystem::build(Family::F4, 4).unwrap();
        assert_eq!(rs.roots().len(), 48);
        assert_eq!(rs.simple_roots()[0], Weight::from_fracs(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)]));
        assert_eq!(rs.simple_roots()[1], Weight::from_ints(&[0, 0, 0, 1]));
        assert_eq!(rs.simple_roots()[2], Weight::from_ints(&[0, 0, 1, -1]));
        assert_eq!(rs.simple_roots()[3], Weight::from_ints(&[0, 1, -1, 0]));
        // positive system {εi±εj, εi, ½(ε1±ε2±ε3±ε4)}
        let mut expect = HashSet::new();
        for i in 0..4 {
            expect.insert(eps(4, &[(i, 1)]));
            for j in i + 1..4 {
                expect.insert(eps(4, &[(i, 1), (j, -1)]));
                expect.insert(eps(4, &[(i, 1), (j, 1)]));
            }
        }
        for s in 0..8 {
            let sign = |b: i64| if s >> b & 1 == 1 { -1 } else { 1 };
            expect.insert(Weight::from_fracs(&[(1, 2), (sign(0), 2), (sign(1), 2), (sign(2), 2)]));
        }
        let got: HashSet<Weight> = rs.positive_roots().iter().cloned().collect();
        assert_eq!(got, expect);
        assert_eq!(rs.rho(), &Weight::from_fracs(&[(11, 2), (5, 2), (3, 2), (1, 2)]));
    }

    #[test]
    fn b3_counts_and_rho() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        assert_eq!(rs.roots().len(), 18);
        assert_eq!(rs.positive_roots().len(), 9);
        assert_eq!(rs.rho(), &Weight::from_fracs(&[(5, 2), (3, 2), (1, 2)]));
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        for rs in all_systems() {
            let n = rs.rank();
            let expect = match rs.family() {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
                Family::G2 => 12,
                Family::F4 => 48,
            };
            assert_eq!(rs.roots().len(), expect, "{}", rs.code());
            let sum = rs.positive_roots().iter().fold(rs.zero_weight(), |a, r| &a + r);
            assert_eq!(sum, rs.rho().scale(&q(2)));
        }
    }

    #[test]
    fn unsupported_pairs_are_rejected() {
        assert!(RootSystem::build(Family::A, 0).is_err());
        assert!(RootSystem::build(Family::B, 1).is_err());
        assert!(RootSystem::build(Family::C, 1).is_err());
        assert!(RootSystem::build(Family::D, 1).is_err());
        assert!(RootSystem::build(Family::G2, 3).is_err());
        assert!(RootSystem::from_code("E6").is_err());
        assert!(RootSystem::from_code("Bx").is_err());
        assert_eq!(RootSystem::from_code("g2").unwrap().code(), "G2");
    }

    #[test]
    fn dominance_examples() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        assert!(rs.is_dominant(rs.rho()));
        assert!(!rs.is_dominant(&-rs.rho()));
        assert!(rs.is_dominant(&Weight::from_fracs(&[(5, 2), (1, 2), (1, 2)])));
    }

    #[test]
    fn dominant_representative_examples() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        let (d, w) = rs.dominant_representative(rs.rho());
        assert_eq!(&d, rs.rho());
        assert!(w.is_identity());
        for i in 0..3 {
            let s = rs.simple_reflection(rs.rho(), i);
            let (d, w) = rs.dominant_representative(&s);
            assert_eq!(&d, rs.rho());
            assert_eq!(w, WeylElement::from_word(&rs, &[i]));
        }
        let x = Weight::from_fracs(&[(1, 2), (3, 2), (5, 2)]);
        let (d, w) = rs.dominant_representative(&x);
        assert_eq!(d, Weight::from_fracs(&[(5, 2), (3, 2), (1, 2)]));
        assert_eq!(w.apply(&x), d);
        // a pure permutation: every matrix entry is 0 or 1
        assert!(w.matrix().iter().flatten().all(|e| e.is_zero() || e.is_one()));
    }

    #[test]
    fn orbit_stabilizer_examples() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        assert_eq!(rs.orbit_and_stabilizer(&Weight::from_fracs(&[(5, 2), (3, 2), (1, 2)])), (48, 1));
        assert_eq!(rs.orbit_and_stabilizer(&Weight::from_fracs(&[(1, 2), (1, 2), (1, 2)])), (8, 6));
        assert_eq!(rs.orbit_and_stabilizer(&rs.zero_weight()), (1, 48));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(RootSystem::from_code("A3").unwrap().weyl_group_order(), 24);
        assert_eq!(RootSystem::from_code("B3").unwrap().weyl_group_order(), 48);
        assert_eq!(RootSystem::from_code("F4").unwrap().weyl_group_order(), 1152);
        for rs in all_systems().into_iter().filter(|r| r.positive_roots().len() <= 16) {
            assert_eq!(rs.weyl_group().len() as u64, rs.weyl_group_order(), "{}", rs.code());
        }
    }

    #[test]
    fn weyl_elements_permute_roots_and_lengths_match_words() {
        for code in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2"] {
            let rs = RootSystem::from_code(code).unwrap();
            let roots: HashSet<Weight> = rs.roots().iter().cloned().collect();
            for w in rs.weyl_group() {
                let image: HashSet<Weight> = rs.roots().iter().map(|a| w.apply(a)).collect();
                assert_eq!(image, roots);
                assert_eq!(rs.length(&w), w.word().len(), "{code} {:?}", w.word());
                let m = w.matrix();
                assert_eq!(dense::mul(m, &dense::transpose(m)), dense::identity(rs.ambient_dim()));
                assert_eq!(w.compose(&w.inverse()), WeylElement::identity(rs.ambient_dim()));
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for rs in all_systems() {
            for (i, w) in rs.fundamental_weights().iter().enumerate() {
                for j in 0..rs.rank() {
                    let e = if i == j { Q::one() } else { Q::zero() };
                    assert_eq!(rs.coroot_pairing(w, j), e);
                }
                assert!(rs.is_integral(w));
            }
            let ones = vec![Q::one(); rs.rank()];
            assert_eq!(&rs.from_fundamental(&ones).unwrap(), rs.rho());
        }
        let a3 = RootSystem::from_code("A3").unwrap();
        assert_eq!(a3.fundamental_weights()[0], Weight::from_fracs(&[(3, 4), (-1, 4), (-1, 4), (-1, 4)]));
    }

    fn system_strategy() -> impl Strategy<Value = RootSystem> {
        prop::sample::select(vec!["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "D3", "D4", "G2", "F4"])
            .prop_map(|c| RootSystem::from_code(c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reflections_preserve_inner_product(
            rs in system_strategy(),
            a in proptest::collection::vec(-4i64..5, 4),
            b in proptest::collection::vec(-4i64..5, 4),
        ) {
            let x = rs.from_fundamental(&a[..rs.rank()].iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap();
            let y = rs.from_fundamental(&b[..rs.rank()].iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap();
            for alpha in rs.roots() {
                prop_assert_eq!(rs.reflection(&x, alpha).dot(&rs.reflection(&y, alpha)), x.dot(&y));
            }
        }

        #[test]
        fn orbit_times_stabilizer_is_group_order(
            rs in system_strategy(),
            a in proptest::collection::vec(-2i64..3, 4),
        ) {
            let x = rs.from_fundamental(&a[..rs.rank()].iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap();
            let (o, s) = rs.orbit_and_stabilizer(&x);
            prop_assert_eq!(o * s, rs.weyl_group_order());
        }

        #[test]
        fn dominant_representative_is_idempotent(
            rs in system_strategy(),
            a in proptest::collection::vec(-3i64..4, 4),
        ) {
            let x = rs.from_fundamental(&a[..rs.rank()].iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap();
            let (d, w) = rs.dominant_representative(&x);
            prop_assert!(rs.is_dominant(&d));
            prop_assert_eq!(w.apply(&x), d.clone());
            let (d2, w2) = rs.dominant_representative(&d);
            prop_assert_eq!(d2, d);
            prop_assert!(w2.is_identity());
        }
    }
}
