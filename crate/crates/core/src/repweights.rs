//! Weights and multiplicities of finite-dimensional irreducible modules:
//! Freudenthal's recursion and the Weyl dimension formula.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Weight, Q};
use crate::rootsys::RootSystem;

fn check_dominant_integral(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_len(lambda)?;
    if !rs.is_integral(lambda) {
        return Err(Error::Precondition(format!("{lambda} is not integral for {}", rs.code())));
    }
    if !rs.is_dominant(lambda) {
        return Err(Error::Precondition(format!("{lambda} is not dominant for {}", rs.code())));
    }
    Ok(())
}

/// `∏_{α>0} <λ+ρ, α> / <ρ, α>`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    check_dominant_integral(rs, lambda)?;
    let lr = lambda + rs.rho();
    let d = rs
        .positive_roots()
        .iter()
        .fold(q(1), |acc, a| acc * lr.dot(a) / rs.rho().dot(a));
    if !d.is_integer() {
        return Err(Error::Internal(format!("Weyl dimension {d} is not an integer")));
    }
    d.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal("dimension overflows u64".into()))
}

/// The irreducible module `V_λ`. Multiplicities of dominant weights are
/// computed once at construction; the value is immutable afterwards.
#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    rs: Arc<RootSystem>,
    highest_weight: Weight,
    dominant: Vec<(Weight, u64)>,
    index: HashMap<Weight, usize>,
}

impl HighestWeightModule {
    pub fn new(rs: Arc<RootSystem>, lambda: Weight) -> Result<Self> {
        check_dominant_integral(&rs, &lambda)?;

        // Dominant weights below λ: every cover in the dominance order on
        // dominant weights differs by a positive root.
        let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
        let mut found = vec![lambda.clone()];
        let mut head = 0;
        while head < found.len() {
            let mu = found[head].clone();
            head += 1;
            for a in rs.positive_roots() {
                let d = rs.dominant_part(&(&mu - a));
                if !seen.contains(&d) && rs.is_nonneg_root_combination(&(&lambda - &d)) {
                    seen.insert(d.clone());
                    found.push(d);
                }
            }
        }
        let depth = |w: &Weight| -> Q { rs.simple_coordinates(&(&lambda - w)).into_iter().sum() };
        let mut keyed: Vec<(Q, Weight)> = found.into_iter().map(|w| (depth(&w), w)).collect();
        keyed.sort();

        let index: HashMap<Weight, usize> = keyed.iter().enumerate().map(|(i, (_, w))| (w.clone(), i)).collect();
        let mut mults: Vec<Option<u64>> = vec![None; keyed.len()];
        let lr2 = (&lambda + rs.rho()).norm2();
        for (i, (_, nu)) in keyed.iter().enumerate() {
            if i == 0 {
                mults[0] = Some(1);
                continue;
            }
            let mut sum = Q::zero();
            for a in rs.positive_roots() {
                let mut x = nu + a;
                loop {
                    let Some(&j) = index.get(&rs.dominant_part(&x)) else { break };
                    let m = mults[j].ok_or_else(|| Error::Internal("Freudenthal order violated".into()))?;
                    sum += q(m as i64) * x.dot(a);
                    x = &x + a;
                }
            }
            let den = &lr2 - (nu + rs.rho()).norm2();
            if den.is_zero() {
                return Err(Error::Internal(format!("zero Freudenthal denominator at {nu}")));
            }
            let m = q(2) * sum / den;
            if !m.is_integer() || m < q(1) {
                return Err(Error::Internal(format!("multiplicity {m} at {nu} is not a positive integer")));
            }
            mults[i] = m.to_integer().to_u64();
        }
        let dominant = keyed
            .into_iter()
            .zip(mults)
            .map(|((_, w), m)| (w, m.expect("filled")))
            .collect();
        Ok(HighestWeightModule { rs, highest_weight: lambda, dominant, index })
    }

    pub fn trivial(rs: Arc<RootSystem>) -> Self {
        let z = rs.zero_weight();
        Self::new(rs, z).expect("0 is dominant integral")
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Dominant weights with multiplicities, in order of increasing depth below λ.
    pub fn dominant_weights(&self) -> &[(Weight, u64)] {
        &self.dominant
    }

    /// Exact multiplicity; 0 if `nu` is not a weight.
    pub fn weight_multiplicity(&self, nu: &Weight) -> u64 {
        if nu.len() != self.rs.ambient_dim() {
            return 0;
        }
        self.index
            .get(&self.rs.dominant_part(nu))
            .map_or(0, |&i| self.dominant[i].1)
    }

    pub fn is_weight(&self, nu: &Weight) -> bool {
        self.weight_multiplicity(nu) > 0
    }

    /// All weights with multiplicities, sorted.
    pub fn all_weights(&self) -> Vec<(Weight, u64)> {
        let mut out: Vec<(Weight, u64)> = self
            .dominant
            .iter()
            .flat_map(|(w, m)| self.rs.orbit(w).into_iter().map(move |x| (x, *m)))
            .collect();
        out.sort();
        out
    }

    pub fn is_extremal(&self, nu: &Weight) -> bool {
        nu.len() == self.rs.ambient_dim() && self.rs.dominant_part(nu) == self.highest_weight
    }

    pub fn dimension(&self) -> u64 {
        self.dominant
            .iter()
            .map(|(w, m)| self.rs.orbit_and_stabilizer(w).0 * m)
            .sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.dominant.iter().all(|(_, m)| *m == 1)
    }
}
