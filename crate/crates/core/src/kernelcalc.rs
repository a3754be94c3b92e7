//! Combinatorial kernels: Kostant's decomposition of `ker D`, the blocks
//! indexed by `A(λ)` for `ker D̂` with `h = t`, the property-(*) count, and the
//! related-weight inequality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, serialize_q, Weight, Q};
use crate::repweights::HighestWeightModule;
use crate::rootsys::{Family, RootSystem};
use crate::spinweights::{dominant_subset_weights, subset_sum_multiset, SpinWeightMultiset, SubalgebraDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorTag {
    Cubic,
    Noncubic,
    TNoncubic(Q),
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorTag::Cubic => write!(f, "cubic"),
            OperatorTag::Noncubic => write!(f, "noncubic"),
            OperatorTag::TNoncubic(t) => write!(f, "t-noncubic({})", fmt_q(t)),
        }
    }
}

impl Serialize for OperatorTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelBlock {
    pub representative: Weight,
    pub orbit_size: u64,
    pub block_dim: u64,
}

/// For `h = t` the representatives are dominant and pairwise non-conjugate;
/// for larger `h` each block is one irreducible `h`-module (orbit size 1) and
/// the representative is its `Δ_h⁺`-highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDecomposition {
    pub blocks: Vec<KernelBlock>,
    pub total_dim: u64,
    pub operator_tag: OperatorTag,
}

impl KernelDecomposition {
    fn assemble(blocks: Vec<KernelBlock>, operator_tag: OperatorTag) -> Self {
        let total_dim = blocks.iter().map(|b| b.orbit_size * b.block_dim).sum();
        KernelDecomposition { blocks, total_dim, operator_tag }
    }

    pub fn empty(operator_tag: OperatorTag) -> Self {
        KernelDecomposition { blocks: Vec::new(), total_dim: 0, operator_tag }
    }
}

fn same_system(module: &HighestWeightModule, datum: &SubalgebraDatum) -> Result<()> {
    if module.rs().code() != datum.rs().code() {
        return Err(Error::Precondition(format!(
            "module over {} but subalgebra datum over {}",
            module.rs().code(),
            datum.rs().code()
        )));
    }
    Ok(())
}

/// `ker D = ⊕_{w∈W¹} F_{w(λ+ρ)−ρ_h}` with `W¹ = {w : Δ_h⁺ ⊆ wΔ⁺}`.
pub fn kostant_kernel(module: &HighestWeightModule, datum: &SubalgebraDatum) -> Result<KernelDecomposition> {
    same_system(module, datum)?;
    let rs = module.rs();
    let lr = module.highest_weight() + rs.rho();
    if datum.is_torus() {
        let block = KernelBlock { representative: lr, orbit_size: rs.weyl_group_order(), block_dim: 1 };
        return Ok(KernelDecomposition::assemble(vec![block], OperatorTag::Cubic));
    }
    let h_roots = datum.h_roots();
    let mut blocks = Vec::new();
    for w in rs.weyl_group() {
        let img = w.apply(&lr);
        // Δ_h⁺ ⊆ wΔ⁺ iff every α ∈ Δ_h⁺ pairs positively with w(λ+ρ)
        if h_roots.iter().all(|a| a.dot(&img).is_positive()) {
            let rep = &img - datum.rho_h();
            let block_dim = datum.h_dimension(&rep)?;
            blocks.push(KernelBlock { representative: rep, orbit_size: 1, block_dim });
        }
    }
    blocks.sort_by(|a, b| b.representative.cmp(&a.representative));
    Ok(KernelDecomposition::assemble(blocks, OperatorTag::Cubic))
}

/// Positive roots orthogonal to `λ`, as indices.
pub fn orthogonal_positive_roots(rs: &RootSystem, lambda: &Weight) -> Vec<usize> {
    (0..rs.positive_roots().len())
        .filter(|&k| rs.positive_roots()[k].dot(lambda).is_zero())
        .collect()
}

/// Representatives `μ = λ + ρ − Σ_A α` of `A(λ)`, `A ⊆ (ℝλ)^⊥ ∩ Δ⁺` with
/// `ρ − Σ_A α` dominant, each with the number of subsets realizing it.
/// Ordered by the first realizing subset (cardinality, then lexicographic).
pub fn compute_a_lambda(module: &HighestWeightModule) -> Vec<(Weight, u64)> {
    let rs = module.rs();
    let lambda = module.highest_weight();
    let orth = orthogonal_positive_roots(rs, lambda);
    dominant_subset_weights(rs, rs.rho(), &orth)
        .into_iter()
        .map(|d| (lambda + &d.weight, d.count))
        .collect()
}

/// `ker D̂` for `h = t`, one block per element of `A(λ)`.
pub fn noncubic_kernel_torus(module: &HighestWeightModule) -> KernelDecomposition {
    let rs = module.rs();
    let blocks = compute_a_lambda(module)
        .into_iter()
        .map(|(mu, count)| KernelBlock { orbit_size: rs.orbit_and_stabilizer(&mu).0, representative: mu, block_dim: count })
        .collect();
    KernelDecomposition::assemble(blocks, OperatorTag::Noncubic)
}

/// Evidence that a module satisfies property (*).
#[derive(Clone, Debug)]
pub enum PropertyStarBasis {
    /// Defining representation of a classical algebra.
    ClassicalStandard,
    /// Confirmed by the matrix oracle.
    Verified(PropertyStarWitness),
    /// Asserted by the caller.
    Assumed,
}

/// Only the oracle can construct this.
#[derive(Clone, Debug)]
pub struct PropertyStarWitness {
    pub(crate) module_code: String,
    pub(crate) highest_weight: Weight,
}

fn check_property_star_basis(module: &HighestWeightModule, basis: &PropertyStarBasis) -> Result<()> {
    let rs = module.rs();
    match basis {
        PropertyStarBasis::Assumed => Ok(()),
        PropertyStarBasis::ClassicalStandard => {
            let classical = matches!(rs.family(), Family::A | Family::B | Family::C | Family::D);
            if classical && rs.standard_highest_weight().as_ref() == Some(module.highest_weight()) {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "{} with highest weight {} is not a classical defining representation; \
                     property (*) must be verified or assumed",
                    rs.code(),
                    module.highest_weight()
                )))
            }
        }
        PropertyStarBasis::Verified(w) => {
            if w.module_code == rs.code() && &w.highest_weight == module.highest_weight() {
                Ok(())
            } else {
                Err(Error::Precondition("property (*) witness is for a different module".into()))
            }
        }
    }
}

/// `ker D̂` for `h = t` as `⊕_ν ⟨v_ν ⊗ e_I : ¹Δ ⊆ I, ²Δ ∩ I = ∅⟩`.
pub fn property_star_kernel(module: &HighestWeightModule, basis: &PropertyStarBasis) -> Result<KernelDecomposition> {
    check_property_star_basis(module, basis)?;
    if !module.is_multiplicity_free() {
        return Err(Error::Precondition("property-(*) count needs every weight multiplicity to be 1".into()));
    }
    let rs = module.rs();
    let weights: Vec<Weight> = module.all_weights().into_iter().map(|(w, _)| w).collect();
    let mut kernel_weights: BTreeMap<Weight, u64> = BTreeMap::new();
    for nu in &weights {
        let mut forced = Vec::new();
        let mut free = Vec::new();
        let mut clash = false;
        for a in rs.positive_roots() {
            let up = module.is_weight(&(nu + a));
            let down = module.is_weight(&(nu - a));
            match (up, down) {
                (true, true) => clash = true,
                (true, false) => forced.push(a.clone()),
                (false, true) => {}
                (false, false) => free.push(a.clone()),
            }
        }
        if clash {
            continue;
        }
        let base = forced.iter().fold(nu + rs.rho(), |acc, a| &acc - a);
        for (w, c) in subset_sum_multiset(&base, &free) {
            *kernel_weights.entry(w).or_insert(0) += c;
        }
    }
    let mut blocks = Vec::new();
    let mut covered: u64 = 0;
    for (w, c) in kernel_weights.iter().rev() {
        if !rs.is_dominant(w) {
            continue;
        }
        let orbit = rs.orbit(w);
        if orbit.iter().any(|x| kernel_weights.get(x) != Some(c)) {
            return Err(Error::Internal(format!("kernel weights are not W-stable at {w}")));
        }
        covered += orbit.len() as u64 * c;
        blocks.push(KernelBlock { representative: w.clone(), orbit_size: orbit.len() as u64, block_dim: *c });
    }
    if covered != kernel_weights.values().sum::<u64>() {
        return Err(Error::Internal("kernel weights not covered by dominant orbits".into()));
    }
    Ok(KernelDecomposition::assemble(blocks, OperatorTag::Noncubic))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatedPair {
    pub mu: Weight,
    pub mu1: Weight,
    #[serde(serialize_with = "serialize_q")]
    pub lhs: Q,
    #[serde(serialize_with = "serialize_q")]
    pub rhs: Q,
    pub equality: bool,
}

/// Evaluates the related-weight inequality against a precomputed spin multiset.
pub struct RelatedChecker<'a> {
    module: &'a HighestWeightModule,
    datum: &'a SubalgebraDatum,
    spin: SpinWeightMultiset,
}

impl<'a> RelatedChecker<'a> {
    pub fn new(module: &'a HighestWeightModule, datum: &'a SubalgebraDatum, budget: u64) -> Result<Self> {
        same_system(module, datum)?;
        let spin = crate::spinweights::spin_weights(datum, budget)?;
        Ok(RelatedChecker { module, datum, spin })
    }

    pub fn spin(&self) -> &SpinWeightMultiset {
        &self.spin
    }

    pub fn check(&self, mu: &Weight, mu1: &Weight) -> Result<RelatedPair> {
        let rs = self.module.rs();
        rs.check_len(mu)?;
        rs.check_len(mu1)?;
        if self.spin.multiplicity(mu1) == 0 {
            return Err(Error::Precondition(format!("{mu1} is not a weight of S")));
        }
        let nu = mu - mu1;
        if !self.module.is_weight(&nu) {
            return Err(Error::Precondition(format!("{mu} − {mu1} is not a weight of V")));
        }
        let lambda = self.module.highest_weight();
        let rho_h = self.datum.rho_h();
        let lhs = (lambda + rs.rho()).norm2() - (mu + rho_h).norm2();
        let rhs = rs.rho().norm2() - (mu1 + rho_h).norm2();
        let (_, w) = rs.dominant_representative(&nu);
        let equality = self.module.is_extremal(&nu) && (rs.rho() - &w.apply(&(mu1 + rho_h))).dot(lambda).is_zero();
        Ok(RelatedPair { mu: mu.clone(), mu1: mu1.clone(), lhs, rhs, equality })
    }
}

pub fn check_related_inequality(
    module: &HighestWeightModule,
    datum: &SubalgebraDatum,
    mu: &Weight,
    mu1: &Weight,
) -> Result<RelatedPair> {
    RelatedChecker::new(module, datum, crate::spinweights::DEFAULT_BUDGET)?.check(mu, mu1)
}

/// `ker D^t = ker D` for `t ∈ (0, 2)`.
pub fn strict_kernel_equality_t(
    module: &HighestWeightModule,
    datum: &SubalgebraDatum,
    t: &Q,
) -> Result<KernelDecomposition> {
    if !(t.is_positive() && *t < q(2)) {
        return Err(Error::Precondition(format!("t = {} is outside (0, 2)", fmt_q(t))));
    }
    let mut k = kostant_kernel(module, datum)?;
    k.operator_tag = OperatorTag::TNoncubic(t.clone());
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::spinweights::DEFAULT_BUDGET;
    use std::sync::Arc;

    fn rs(code: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::from_code(code).unwrap())
    }

    fn standard(code: &str) -> HighestWeightModule {
        let r = rs(code);
        let l = r.standard_highest_weight().unwrap();
        HighestWeightModule::new(r, l).unwrap()
    }

    #[test]
    fn kostant_examples() {
        let m = standard("A3");
        let t = SubalgebraDatum::torus(m.rs().clone());
        assert_eq!(kostant_kernel(&m, &t).unwrap().total_dim, 24);
        let triv = HighestWeightModule::trivial(rs("B2"));
        let k = kostant_kernel(&triv, &SubalgebraDatum::torus(triv.rs().clone())).unwrap();
        assert_eq!(k.total_dim, 8);
        assert_eq!(k.blocks[0].representative, triv.rs().rho().clone());
        assert_eq!(kostant_kernel(&standard("B2"), &SubalgebraDatum::torus(rs("B2"))).unwrap().total_dim, 8);
    }

    #[test]
    fn kostant_for_levi_matches_w1_count() {
        let m = standard("A3");
        let d = SubalgebraDatum::generated_by(
            m.rs().clone(),
            &[Weight::from_ints(&[1, -1, 0, 0]), Weight::from_ints(&[0, 1, -1, 0])],
        )
        .unwrap();
        let k = kostant_kernel(&m, &d).unwrap();
        assert_eq!(k.blocks.len(), 4);
        // total = |W¹| blocks, and dim (V⊗S) = 4·8 bounds it
        assert!(k.total_dim <= 32);
        for b in &k.blocks {
            assert!(d.is_h_dominant(&b.representative));
        }
        // torus datum through the general path agrees with the closed form
        let gen = kostant_kernel(&m, &SubalgebraDatum::torus(m.rs().clone())).unwrap();
        assert_eq!(gen.total_dim, 24);
    }

    #[test]
    fn a_lambda_examples() {
        let m = standard("A3");
        let a = compute_a_lambda(&m);
        let l = m.highest_weight();
        let lr = l + m.rs().rho();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0], (lr.clone(), 1));
        assert_eq!(a[1], (&lr - &Weight::from_ints(&[0, 1, 0, -1]), 2));
        // regular λ: only λ+ρ
        let r = rs("B2");
        let reg = HighestWeightModule::new(r.clone(), r.rho().clone()).unwrap();
        assert_eq!(compute_a_lambda(&reg), vec![(&(r.rho() + r.rho()), 1)].into_iter().map(|(w, c)| (w.clone(), c)).collect::<Vec<_>>());
    }

    #[test]
    fn f4_a_lambda_is_table_3_shifted() {
        let r = rs("F4");
        let m = HighestWeightModule::new(r.clone(), Weight::from_ints(&[1, 0, 0, 0])).unwrap();
        let a = compute_a_lambda(&m);
        assert_eq!(a.len(), 6);
        let rho1 = Weight::from_fracs(&[(0, 1), (5, 2), (3, 2), (1, 2)]);
        let shift = &(m.highest_weight() + r.rho()) - &rho1;
        let mut got: Vec<(Weight, u64)> = a.iter().map(|(mu, c)| (mu - &shift, *c)).collect();
        got.sort_by(|x, y| y.0.cmp(&x.0));
        let expect: Vec<(Weight, u64)> =
            [((5, 3, 1), 1), ((5, 1, 1), 2), ((3, 3, 3), 2), ((3, 3, 1), 4), ((3, 1, 1), 8), ((1, 1, 1), 14)]
                .iter()
                .map(|&((x, y, z), c)| (Weight::from_fracs(&[(0, 1), (x, 2), (y, 2), (z, 2)]), c))
                .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn a_lambda_counts_equal_spin_multiplicities_and_are_non_conjugate() {
        for (code, fund) in [("A3", vec![1, 0, 0]), ("B3", vec![1, 0, 0]), ("C3", vec![0, 1, 0]), ("G2", vec![1, 0]), ("A3", vec![0, 1, 0])] {
            let r = rs(code);
            let l = r.from_fundamental(&fund.iter().map(|&c| q(c)).collect::<Vec<_>>()).unwrap();
            let m = HighestWeightModule::new(r.clone(), l.clone()).unwrap();
            let spin = crate::spinweights::spin_weights(&SubalgebraDatum::torus(r.clone()), DEFAULT_BUDGET).unwrap();
            let a = compute_a_lambda(&m);
            let mut seen = std::collections::HashSet::new();
            for (mu, c) in &a {
                assert!(r.is_dominant(mu));
                assert_eq!(spin.multiplicity(&(mu - &l)), *c, "{code}");
                assert!(seen.insert(r.dominant_part(mu)));
            }
        }
    }

    #[test]
    fn noncubic_examples() {
        assert_eq!(noncubic_kernel_torus(&standard("A3")).total_dim, 32);
        assert_eq!(noncubic_kernel_torus(&standard("A1")).total_dim, 2);
        assert_eq!(noncubic_kernel_torus(&standard("B2")).total_dim, 8);
    }

    #[test]
    fn property_star_examples() {
        let basis = PropertyStarBasis::ClassicalStandard;
        assert_eq!(property_star_kernel(&standard("A3"), &basis).unwrap().total_dim, 32);
        assert_eq!(property_star_kernel(&standard("A1"), &basis).unwrap().total_dim, 2);
        assert_eq!(property_star_kernel(&standard("D3"), &basis).unwrap().total_dim, 24);
        assert_eq!(property_star_kernel(&standard("B2"), &basis).unwrap().total_dim, 8);
    }

    #[test]
    fn property_star_policy() {
        let r = rs("A2");
        let adj = HighestWeightModule::new(r.clone(), r.highest_root().clone()).unwrap();
        assert!(property_star_kernel(&adj, &PropertyStarBasis::ClassicalStandard).is_err());
        // multiplicity 2 at the zero weight
        assert!(matches!(
            property_star_kernel(&adj, &PropertyStarBasis::Assumed),
            Err(Error::Precondition(_))
        ));
        let sym2 = HighestWeightModule::new(r.clone(), r.from_fundamental(&[q(2), q(0)]).unwrap()).unwrap();
        assert!(property_star_kernel(&sym2, &PropertyStarBasis::ClassicalStandard).is_err());
        let k = property_star_kernel(&sym2, &PropertyStarBasis::Assumed).unwrap();
        assert_eq!(k.total_dim, noncubic_kernel_torus(&sym2).total_dim);
    }

    #[test]
    fn property_star_agrees_with_a_lambda_on_standard_modules() {
        for code in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D2", "D3", "D4"] {
            let m = standard(code);
            let a = noncubic_kernel_torus(&m);
            let p = property_star_kernel(&m, &PropertyStarBasis::ClassicalStandard).unwrap();
            assert_eq!(a.total_dim, p.total_dim, "{code}");
            let mut ab = a.blocks.clone();
            ab.sort_by(|x, y| y.representative.cmp(&x.representative));
            assert_eq!(ab, p.blocks, "{code}");
        }
    }

    #[test]
    fn related_examples() {
        let m = standard("A3");
        let r = m.rs().clone();
        let t = SubalgebraDatum::torus(r.clone());
        let l = m.highest_weight().clone();
        let rho = r.rho().clone();
        let p = check_related_inequality(&m, &t, &(&l + &rho), &rho).unwrap();
        assert!(p.equality);
        assert_eq!((p.lhs.clone(), p.rhs.clone()), (q(0), q(0)));
        let a23 = Weight::from_ints(&[0, 1, -1, 0]);
        let p = check_related_inequality(&m, &t, &(&(&l + &rho) - &a23), &(&rho - &a23)).unwrap();
        assert!(p.equality);
        assert_eq!(p.lhs, p.rhs);
        let a12 = Weight::from_ints(&[1, -1, 0, 0]);
        let p = check_related_inequality(&m, &t, &(&(&l + &rho) - &a12), &(&rho - &a12)).unwrap();
        assert!(!p.equality);
        assert!(p.lhs > p.rhs);
        assert!(check_related_inequality(&m, &t, &rho, &l).is_err());
    }

    #[test]
    fn strict_equality_range() {
        let m = standard("A3");
        let t = SubalgebraDatum::torus(m.rs().clone());
        let k = strict_kernel_equality_t(&m, &t, &qf(1, 2)).unwrap();
        assert_eq!(k.total_dim, 24);
        assert_eq!(k.operator_tag, OperatorTag::TNoncubic(qf(1, 2)));
        assert_eq!(strict_kernel_equality_t(&m, &t, &q(1)).unwrap().blocks, kostant_kernel(&m, &t).unwrap().blocks);
        assert!(strict_kernel_equality_t(&m, &t, &q(0)).is_err());
        assert!(strict_kernel_equality_t(&m, &t, &q(2)).is_err());
        let b2 = standard("B2");
        let tb = SubalgebraDatum::torus(b2.rs().clone());
        assert_eq!(strict_kernel_equality_t(&b2, &tb, &qf(3, 2)).unwrap().total_dim, 8);
    }

    #[test]
    fn inclusion_of_dimensions() {
        for code in ["A2", "A3", "B2", "B3", "C3", "G2"] {
            let r = rs(code);
            for l in r.fundamental_weights() {
                let m = HighestWeightModule::new(r.clone(), l.clone()).unwrap();
                let t = SubalgebraDatum::torus(r.clone());
                assert!(kostant_kernel(&m, &t).unwrap().total_dim <= noncubic_kernel_torus(&m).total_dim);
            }
        }
    }
}
