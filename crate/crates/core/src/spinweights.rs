//! Weights of the spin module `S = ∧q⁻` for an equal-rank subalgebra datum:
//! the multiset of `ρ − ρ_h − Σ_{β∈I} β` over subsets `I ⊆ Δ_q⁺`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{qf, Scaled, Weight};
use crate::rootsys::{RootSystem, WeylElement};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// `Δ_h⁺ ⊆ Δ⁺` (as positive-root indices) for `h = t ⊕ Σ_{α∈Δ_h} g_α`.
#[derive(Clone, Debug)]
pub struct SubalgebraDatum {
    rs: Arc<RootSystem>,
    delta_h_plus: Vec<usize>,
    rho_h: Weight,
}

impl SubalgebraDatum {
    /// `h = t`.
    pub fn torus(rs: Arc<RootSystem>) -> Self {
        let rho_h = rs.zero_weight();
        SubalgebraDatum { rs, delta_h_plus: Vec::new(), rho_h }
    }

    /// Validates that `Δ_h = ±delta_h_plus` is closed under its own reflections.
    pub fn new(rs: Arc<RootSystem>, mut delta_h_plus: Vec<usize>) -> Result<Self> {
        delta_h_plus.sort_unstable();
        delta_h_plus.dedup();
        let npos = rs.positive_roots().len();
        if let Some(&k) = delta_h_plus.iter().find(|&&k| k >= npos) {
            return Err(Error::Precondition(format!("positive root index {k} out of range")));
        }
        let members: HashSet<usize> = delta_h_plus.iter().copied().collect();
        let in_h = |w: &Weight| -> bool {
            let w = if rs.positive_index(w).is_some() { w.clone() } else { -w };
            rs.positive_index(&w).is_some_and(|k| members.contains(&k))
        };
        for &a in &delta_h_plus {
            for &b in &delta_h_plus {
                let alpha = &rs.positive_roots()[a];
                let beta = &rs.positive_roots()[b];
                if !in_h(&rs.reflection(beta, alpha)) {
                    return Err(Error::Precondition(format!(
                        "Δ_h is not closed under the reflection in {alpha}"
                    )));
                }
            }
        }
        let half = qf(1, 2);
        let rho_h = delta_h_plus
            .iter()
            .fold(rs.zero_weight(), |acc, &k| &acc + &rs.positive_roots()[k])
            .scale(&half);
        Ok(SubalgebraDatum { rs, delta_h_plus, rho_h })
    }

    /// Smallest closed symmetric subset of Δ containing `±gens`.
    pub fn generated_by(rs: Arc<RootSystem>, gens: &[Weight]) -> Result<Self> {
        let mut set: HashSet<Weight> = HashSet::new();
        for g in gens {
            rs.check_len(g)?;
            if !rs.is_root(g) {
                return Err(Error::MalformedWeight(format!("{g} is not a root of {}", rs.code())));
            }
            set.insert(g.clone());
            set.insert(-g);
        }
        loop {
            let cur: Vec<Weight> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &cur {
                for b in &cur {
                    let s = a + b;
                    if rs.is_root(&s) && set.insert(s) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let pos = set.iter().filter_map(|w| rs.positive_index(w)).collect();
        Self::new(rs, pos)
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn is_torus(&self) -> bool {
        self.delta_h_plus.is_empty()
    }

    pub fn delta_h_plus(&self) -> &[usize] {
        &self.delta_h_plus
    }

    pub fn delta_q_plus(&self) -> Vec<usize> {
        (0..self.rs.positive_roots().len())
            .filter(|k| self.delta_h_plus.binary_search(k).is_err())
            .collect()
    }

    pub fn h_roots(&self) -> Vec<Weight> {
        self.delta_h_plus.iter().map(|&k| self.rs.positive_roots()[k].clone()).collect()
    }

    pub fn rho_h(&self) -> &Weight {
        &self.rho_h
    }

    /// Whether `α, β ∈ Δ_h`, `α+β ∈ Δ` imply `α+β ∈ Δ_h`, i.e. `h` is a subalgebra.
    pub fn is_closed(&self) -> bool {
        let mut set: HashSet<Weight> = HashSet::new();
        for r in self.h_roots() {
            set.insert(-&r);
            set.insert(r);
        }
        set.iter()
            .all(|a| set.iter().all(|b| !self.rs.is_root(&(a + b)) || set.contains(&(a + b))))
    }

    /// Dominance for `Δ_h⁺`.
    pub fn is_h_dominant(&self, w: &Weight) -> bool {
        self.h_roots().iter().all(|a| !w.dot(a).is_negative())
    }

    /// Weyl dimension formula for the `h`-module of highest weight `mu`.
    pub fn h_dimension(&self, mu: &Weight) -> Result<u64> {
        let roots = self.h_roots();
        let lr = mu + &self.rho_h;
        let mut d = qf(1, 1);
        for a in &roots {
            d = d * lr.dot(a) / self.rho_h.dot(a);
        }
        if !d.is_integer() || d.is_negative() {
            return Err(Error::Internal(format!("h-dimension {d} at {mu}")));
        }
        use num_traits::ToPrimitive;
        d.to_integer().to_u64().ok_or_else(|| Error::Internal("dimension overflow".into()))
    }

    pub fn base_spin_weight(&self) -> Weight {
        self.rs.rho() - &self.rho_h
    }
}

/// Weight multiset of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinWeightMultiset {
    pub entries: BTreeMap<Weight, u64>,
    pub total: u64,
}

impl SpinWeightMultiset {
    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }
}

pub fn check_budget(exponent: usize, budget: u64) -> Result<()> {
    if exponent >= 64 || (1u64 << exponent) > budget {
        return Err(Error::BudgetExceeded { exponent, budget });
    }
    Ok(())
}

/// Multiset of `base − Σ_{k∈I} roots[k]` over all subsets `I`, by expanding
/// the product `∏_k (1 + x^{−roots[k]})`.
pub fn subset_sum_multiset(base: &Weight, roots: &[Weight]) -> BTreeMap<Weight, u64> {
    let sc = Scaled::for_weights(roots.iter().chain([base]));
    let mut cur: HashMap<Vec<i64>, u64> = HashMap::from([(sc.down(base), 1)]);
    for r in roots {
        let r = sc.down(r);
        let mut next: HashMap<Vec<i64>, u64> = HashMap::with_capacity(cur.len() * 2);
        for (w, c) in cur {
            let lowered: Vec<i64> = w.iter().zip(&r).map(|(a, b)| a - b).collect();
            *next.entry(lowered).or_insert(0) += c;
            *next.entry(w).or_insert(0) += c;
        }
        cur = next;
    }
    cur.into_iter().map(|(w, c)| (sc.up(&w), c)).collect()
}

pub fn spin_weights(datum: &SubalgebraDatum, budget: u64) -> Result<SpinWeightMultiset> {
    let q_plus = datum.delta_q_plus();
    check_budget(q_plus.len(), budget)?;
    let roots: Vec<Weight> = q_plus.iter().map(|&k| datum.rs.positive_roots()[k].clone()).collect();
    let entries = subset_sum_multiset(&datum.base_spin_weight(), &roots);
    Ok(SpinWeightMultiset { entries, total: 1u64 << q_plus.len() })
}

/// A dominant weight `base − Σ_A`, the number of subsets `A` realizing it and
/// the first such subset in (cardinality, lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantSubsetWeight {
    pub weight: Weight,
    pub count: u64,
    pub first: Vec<usize>,
}

struct Dfs {
    order: Vec<usize>,
    vecs: Vec<Vec<i64>>,
    pair: Vec<Vec<i64>>,
    // slack[k][i]: total positive gain on simple root i from roots order[k..]
    slack: Vec<Vec<i64>>,
    found: HashMap<Vec<i64>, (u64, Vec<usize>)>,
    chosen: Vec<usize>,
}

impl Dfs {
    fn run(&mut self, k: usize, w: &mut Vec<i64>, p: &mut Vec<i64>) {
        if p.iter().zip(&self.slack[k]).any(|(a, b)| a + b < 0) {
            return;
        }
        if k == self.order.len() {
            let mut key = self.chosen.clone();
            key.sort_unstable();
            let e = self.found.entry(w.clone()).or_insert((0, key.clone()));
            e.0 += 1;
            if (key.len(), &key) < (e.1.len(), &e.1) {
                e.1 = key;
            }
            return;
        }
        self.run(k + 1, w, p);
        let idx = self.order[k];
        for (x, y) in w.iter_mut().zip(&self.vecs[k]) {
            *x -= y;
        }
        for (x, y) in p.iter_mut().zip(&self.pair[k]) {
            *x -= y;
        }
        self.chosen.push(idx);
        self.run(k + 1, w, p);
        self.chosen.pop();
        for (x, y) in w.iter_mut().zip(&self.vecs[k]) {
            *x += y;
        }
        for (x, y) in p.iter_mut().zip(&self.pair[k]) {
            *x += y;
        }
    }
}

/// Dominant weights of the form `base − Σ_{k∈A} Δ⁺[k]`, `A ⊆ subset`, by a
/// depth-first search over `subset` (highest roots first) that prunes once the
/// partial weight can no longer reach the dominant cone. Sorted by the first
/// realizing subset in (cardinality, lexicographic) order.
pub fn dominant_subset_weights(rs: &RootSystem, base: &Weight, subset: &[usize]) -> Vec<DominantSubsetWeight> {
    let mut order = subset.to_vec();
    order.sort_by_key(|&k| std::cmp::Reverse((rs.height(k), std::cmp::Reverse(k))));
    let all: Vec<&Weight> = rs.positive_roots().iter().chain([base]).collect();
    let sc = Scaled::for_weights(all);
    let simple: Vec<Vec<i64>> = rs.simple_roots().iter().map(|a| sc.down(a)).collect();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let vecs: Vec<Vec<i64>> = order.iter().map(|&k| sc.down(&rs.positive_roots()[k])).collect();
    let pair: Vec<Vec<i64>> = vecs.iter().map(|v| simple.iter().map(|s| dot(v, s)).collect()).collect();
    let r = simple.len();
    let mut slack = vec![vec![0i64; r]; order.len() + 1];
    for k in (0..order.len()).rev() {
        for i in 0..r {
            slack[k][i] = slack[k + 1][i] + (-pair[k][i]).max(0);
        }
    }
    let mut w = sc.down(base);
    let mut p: Vec<i64> = simple.iter().map(|s| dot(&w, s)).collect();
    let mut dfs = Dfs { order, vecs, pair, slack, found: HashMap::new(), chosen: Vec::new() };
    dfs.run(0, &mut w, &mut p);
    let mut out: Vec<DominantSubsetWeight> = dfs
        .found
        .into_iter()
        .map(|(w, (count, first))| DominantSubsetWeight { weight: sc.up(&w), count, first })
        .collect();
    out.sort_by(|a, b| (a.first.len(), &a.first).cmp(&(b.first.len(), &b.first)));
    out
}

/// Δ⁺-dominant entries of the spin multiset, with multiplicities.
pub fn dominant_spin_weights(datum: &SubalgebraDatum) -> Vec<(Weight, u64)> {
    let mut out: Vec<(Weight, u64)> =
        dominant_subset_weights(&datum.rs, &datum.base_spin_weight(), &datum.delta_q_plus())
            .into_iter()
            .map(|d| (d.weight, d.count))
            .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// For `h = t`: the subset `A ⊆ Δ⁺` with `w(ρ − Σ_B β) = ρ − Σ_A α`.
///
/// Writing `ρ − Σ_B β = ½ Σ_{β>0} σ_β β` with `σ_β = −1` exactly on `B`, the
/// image under `w` is `½ Σ σ_β (wβ)`; each `wβ` is `±γ` for a distinct `γ > 0`,
/// so `A` collects the `γ` whose resulting sign is negative.
pub fn spin_weight_conjugate(rs: &RootSystem, w: &WeylElement, b: &[usize]) -> Result<Vec<usize>> {
    let in_b: HashSet<usize> = b.iter().copied().collect();
    let mut a = Vec::new();
    for (k, beta) in rs.positive_roots().iter().enumerate() {
        let img = w.apply(beta);
        let (gamma, flip) = match rs.positive_index(&img) {
            Some(g) => (g, false),
            None => (
                rs.positive_index(&-&img)
                    .ok_or_else(|| Error::Internal(format!("{img} is not a root")))?,
                true,
            ),
        };
        if in_b.contains(&k) != flip {
            a.push(gamma);
        }
    }
    a.sort_unstable();
    let sum = |s: &[usize]| s.iter().fold(rs.zero_weight(), |acc, &k| &acc + &rs.positive_roots()[k]);
    let lhs = w.apply(&(rs.rho() - &sum(b)));
    if lhs != rs.rho() - &sum(&a) {
        return Err(Error::Internal("no subset A realizes the conjugate spin weight".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs(code: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::from_code(code).unwrap())
    }

    fn brute_force(datum: &SubalgebraDatum) -> BTreeMap<Weight, u64> {
        let qp = datum.delta_q_plus();
        let mut out = BTreeMap::new();
        for mask in 0u64..(1 << qp.len()) {
            let mut w = datum.base_spin_weight();
            for (bit, &k) in qp.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    w = &w - &datum.rs().positive_roots()[k];
                }
            }
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    fn b3_table() -> Vec<(Weight, u64)> {
        [((5, 3, 1), 1), ((5, 1, 1), 2), ((3, 3, 3), 2), ((3, 3, 1), 4), ((3, 1, 1), 8), ((1, 1, 1), 14)]
            .iter()
            .map(|&((a, b, c), m)| (Weight::from_fracs(&[(a, 2), (b, 2), (c, 2)]), m))
            .collect()
    }

    #[test]
    fn a1_torus() {
        let r = rs("A1");
        let s = spin_weights(&SubalgebraDatum::torus(r.clone()), DEFAULT_BUDGET).unwrap();
        assert_eq!(s.total, 2);
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.multiplicity(r.rho()), 1);
        assert_eq!(s.multiplicity(&-r.rho()), 1);
        assert_eq!(dominant_spin_weights(&SubalgebraDatum::torus(r.clone())), vec![(r.rho().clone(), 1)]);
    }

    #[test]
    fn b3_matches_table_and_brute_force() {
        let r = rs("B3");
        let d = SubalgebraDatum::torus(r.clone());
        let s = spin_weights(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.total, 512);
        assert_eq!(s.entries, brute_force(&d));
        let dom = dominant_spin_weights(&d);
        assert_eq!(dom, b3_table());
        let from_multiset: Vec<(Weight, u64)> = {
            let mut v: Vec<_> = s.entries.iter().filter(|(w, _)| r.is_dominant(w)).map(|(w, m)| (w.clone(), *m)).collect();
            v.sort_by(|a, b| b.0.cmp(&a.0));
            v
        };
        assert_eq!(dom, from_multiset);
        let weighted: u64 = dom.iter().map(|(w, m)| r.orbit_and_stabilizer(w).0 * m).sum();
        assert_eq!(weighted, 512);
    }

    #[test]
    fn a2_dominant() {
        let r = rs("A2");
        let d = dominant_spin_weights(&SubalgebraDatum::torus(r.clone()));
        assert_eq!(d, vec![(r.rho().clone(), 1), (r.zero_weight(), 2)]);
    }

    #[test]
    fn a3_levi_total() {
        let r = rs("A3");
        let gens = [Weight::from_ints(&[1, -1, 0, 0]), Weight::from_ints(&[0, 1, -1, 0])];
        let d = SubalgebraDatum::generated_by(r, &gens).unwrap();
        assert_eq!(d.delta_h_plus().len(), 3);
        assert!(d.is_closed());
        let s = spin_weights(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.total, 8);
        assert_eq!(s.entries, brute_force(&d));
    }

    #[test]
    fn degenerate_h_equal_g() {
        let r = rs("A2");
        let d = SubalgebraDatum::new(r.clone(), (0..3).collect()).unwrap();
        let s = spin_weights(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.total, 1);
        assert_eq!(s.multiplicity(&r.zero_weight()), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let d = SubalgebraDatum::torus(rs("B3"));
        assert!(matches!(spin_weights(&d, 256), Err(Error::BudgetExceeded { exponent: 9, budget: 256 })));
        assert!(spin_weights(&d, 512).is_ok());
    }

    #[test]
    fn non_closed_sets_are_rejected() {
        let r = rs("B2");
        // the short root ε2 alone: reflection in ε2 fixes ε2, so {ε2} is a subsystem
        let k = r.positive_index(&Weight::from_ints(&[0, 1])).unwrap();
        assert!(SubalgebraDatum::new(r.clone(), vec![k]).is_ok());
        // {ε1−ε2, ε2}: the reflection in ε2 sends ε1−ε2 to ε1+ε2, missing
        let k2 = r.positive_index(&Weight::from_ints(&[1, -1])).unwrap();
        assert!(SubalgebraDatum::new(r.clone(), vec![k, k2]).is_err());
        // short roots ±ε1, ±ε2 are reflection-closed but not additively closed
        let k1 = r.positive_index(&Weight::from_ints(&[1, 0])).unwrap();
        let d = SubalgebraDatum::new(r, vec![k, k1]).unwrap();
        assert!(!d.is_closed());
    }

    #[test]
    fn torus_multiset_is_w_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for code in ["A3", "B3", "C3", "G2"] {
            let r = rs(code);
            let s = spin_weights(&SubalgebraDatum::torus(r.clone()), DEFAULT_BUDGET).unwrap();
            for _ in 0..20 {
                let word: Vec<usize> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..r.rank())).collect();
                let w = WeylElement::from_word(&r, &word);
                for (x, m) in &s.entries {
                    assert_eq!(s.multiplicity(&w.apply(x)), *m);
                }
            }
        }
    }

    #[test]
    fn levi_multiset_is_wh_stable() {
        let r = rs("B3");
        let d = SubalgebraDatum::generated_by(r.clone(), &[Weight::from_ints(&[1, -1, 0])]).unwrap();
        let s = spin_weights(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.total, 256);
        let alpha = Weight::from_ints(&[1, -1, 0]);
        for (x, m) in &s.entries {
            assert_eq!(s.multiplicity(&r.reflection(x, &alpha)), *m);
        }
    }

    fn subset_search(r: &RootSystem, target: &Weight) -> Vec<Vec<usize>> {
        let n = r.positive_roots().len();
        (0u32..1 << n)
            .filter_map(|mask| {
                let a: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                let w = a.iter().fold(r.rho().clone(), |acc, &k| &acc - &r.positive_roots()[k]);
                (w == *target).then_some(a)
            })
            .collect()
    }

    #[test]
    fn conjugate_examples() {
        let r = rs("A2");
        let id = WeylElement::identity(3);
        assert_eq!(spin_weight_conjugate(&r, &id, &[1]).unwrap(), vec![1]);
        for i in 0..2 {
            let s = WeylElement::from_word(&r, &[i]);
            let alpha = r.positive_index(&r.simple_roots()[i]).unwrap();
            assert_eq!(spin_weight_conjugate(&r, &s, &[]).unwrap(), vec![alpha]);
        }
        let w = WeylElement::from_word(&r, &[0, 1]);
        let a = spin_weight_conjugate(&r, &w, &[]).unwrap();
        assert_eq!(a.len(), 2);
        let target = w.apply(r.rho());
        assert_eq!(subset_search(&r, &target), vec![a]);
    }

    #[test]
    fn conjugate_every_element_and_subset_rank_two() {
        for code in ["A2", "B2", "G2"] {
            let r = rs(code);
            let n = r.positive_roots().len();
            for w in r.weyl_group() {
                for mask in 0u32..1 << n {
                    let b: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
                    assert!(spin_weight_conjugate(&r, &w, &b).is_ok());
                }
            }
        }
    }

    #[test]
    fn dominant_search_counts_match_multiset() {
        for code in ["A3", "B3", "C3", "D4", "G2"] {
            let r = rs(code);
            let d = SubalgebraDatum::torus(r.clone());
            let s = spin_weights(&d, DEFAULT_BUDGET).unwrap();
            let dom = dominant_spin_weights(&d);
            let expect: usize = s.entries.keys().filter(|w| r.is_dominant(w)).count();
            assert_eq!(dom.len(), expect, "{code}");
            for (w, m) in dom {
                assert_eq!(s.multiplicity(&w), m);
            }
            let weighted: u64 = dominant_spin_weights(&d).iter().map(|(w, m)| r.orbit_and_stabilizer(w).0 * m).sum();
            assert_eq!(weighted, s.total);
        }
    }
}
