use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use dirac_core::geom::{geometric_cubic_kernel, geometric_noncubic_kernel_torus, GeometricKernelReport};
use dirac_core::kernelcalc::{
    compute_a_lambda, kostant_kernel, noncubic_kernel_torus, orthogonal_positive_roots, property_star_kernel,
    strict_kernel_equality_t, KernelDecomposition, OperatorTag, PropertyStarBasis,
};
use dirac_core::oracle::{representation_matrices, run_case, verify_property_star, ChevalleyData, RepKind};
use dirac_core::rational::{fmt_q, parse_q, q, qf};
use dirac_core::repweights::HighestWeightModule;
use dirac_core::spinweights::{check_budget, dominant_spin_weights, spin_weights, SubalgebraDatum, DEFAULT_BUDGET};
use dirac_core::{Error, Family, RootSystem, Weight, Q};

use crate::job::{Command, JobSpec};
use crate::report::{subscript, superscript, Document};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "usage_error",
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

pub fn run(job: &JobSpec) -> Res<Document> {
    match job.command {
        Command::Weights => weights(job),
        Command::SpinWeights => spin_weights_cmd(job),
        Command::Kernel => kernel(job),
        Command::DimsTable => dims_table(job),
        Command::F4Table => f4_table(),
        Command::OracleVerify => oracle_verify(job),
        Command::Geom => geom(job),
    }
}

fn root_system(job: &JobSpec) -> Res<Arc<RootSystem>> {
    Ok(Arc::new(RootSystem::from_code(&job.root_system)?))
}

fn required<'a>(job: &'a JobSpec, key: &str) -> Res<&'a str> {
    job.param(key).ok_or_else(|| CliError::Usage(format!("missing parameter {key:?}")))
}

fn budget(job: &JobSpec) -> Res<u64> {
    match job.param("budget") {
        None => Ok(DEFAULT_BUDGET),
        Some(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("budget {s:?} is not a nonnegative integer"))),
    }
}

/// ε-coordinates, or fundamental-weight coefficients when `fundamental` is set.
fn weight_param(job: &JobSpec, rs: &RootSystem, key: &str) -> Res<Weight> {
    let raw = required(job, key)?;
    if job.flag("fundamental") {
        let t = raw.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs = t.split(',').map(parse_q).collect::<dirac_core::Result<Vec<Q>>>()?;
        Ok(rs.from_fundamental(&coeffs)?)
    } else {
        let w = Weight::parse(raw)?;
        rs.check_len(&w)?;
        Ok(w)
    }
}

/// `;`-separated roots generating `Δ_h`; absent or empty means `h = t`.
fn subalgebra(job: &JobSpec, rs: &Arc<RootSystem>) -> Res<SubalgebraDatum> {
    match job.param("subalgebra").map(str::trim) {
        None | Some("") => Ok(SubalgebraDatum::torus(rs.clone())),
        Some(s) => {
            let gens = s.split(';').map(Weight::parse).collect::<dirac_core::Result<Vec<_>>>()?;
            Ok(SubalgebraDatum::generated_by(rs.clone(), &gens)?)
        }
    }
}

fn weight_rows(list: &[(Weight, u64)]) -> (Value, Vec<Vec<String>>) {
    let json = list.iter().map(|(w, m)| json!({ "weight": w, "multiplicity": m })).collect();
    let rows = list.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]).collect();
    (json, rows)
}

fn weights(job: &JobSpec) -> Res<Document> {
    let rs = root_system(job)?;
    let lambda = weight_param(job, &rs, "lambda")?;
    let module = HighestWeightModule::new(rs, lambda)?;
    let mut all = module.all_weights();
    all.sort_by(|a, b| b.0.cmp(&a.0));
    let (json, rows) = weight_rows(&all);
    Ok(Document::new(json, &["weight", "multiplicity"], rows))
}

fn spin_weights_cmd(job: &JobSpec) -> Res<Document> {
    let rs = root_system(job)?;
    let datum = subalgebra(job, &rs)?;
    let budget = budget(job)?;
    if job.flag("dominant_only") {
        check_budget(datum.delta_q_plus().len(), budget)?;
        let list = dominant_spin_weights(&datum);
        let json = list
            .iter()
            .map(|(w, m)| json!({ "weight": w, "multiplicity": m, "orbit_size": rs.orbit(w).len() }))
            .collect();
        let rows = list.iter().map(|(w, m)| vec![w.to_string(), m.to_string(), rs.orbit(w).len().to_string()]).collect();
        return Ok(Document::new(json, &["weight", "multiplicity", "orbit_size"], rows));
    }
    let spin = spin_weights(&datum, budget)?;
    let list: Vec<(Weight, u64)> = spin.entries.into_iter().rev().collect();
    let (json, rows) = weight_rows(&list);
    Ok(Document::new(json, &["weight", "multiplicity"], rows))
}

enum Operator {
    Cubic,
    T(Q),
}

fn parse_operator(s: Option<&str>) -> Res<Operator> {
    match s.map(str::trim) {
        None | Some("cubic") => Ok(Operator::Cubic),
        Some("noncubic") => Ok(Operator::T(Q::zero())),
        Some(s) => match s.strip_prefix("t=") {
            Some(t) => Ok(Operator::T(parse_q(t)?)),
            None => Err(CliError::Usage(format!("operator {s:?}; expected cubic, noncubic or t=<rational>"))),
        },
    }
}

fn property_star_basis(job: &JobSpec, module: &HighestWeightModule) -> Res<PropertyStarBasis> {
    let rs = module.rs();
    let classical = matches!(rs.family(), Family::A | Family::B | Family::C | Family::D);
    if classical && rs.standard_highest_weight().as_ref() == Some(module.highest_weight()) {
        return Ok(PropertyStarBasis::ClassicalStandard);
    }
    if job.flag("assume_property_star") {
        return Ok(PropertyStarBasis::Assumed);
    }
    let kind = if module.highest_weight().is_zero() {
        RepKind::Trivial
    } else if module.highest_weight() == rs.highest_root() {
        RepKind::Adjoint
    } else {
        return Err(Error::Precondition(format!(
            "property (*) for highest weight {} cannot be checked by the matrix oracle; \
             pass --assume-property-star to use the count anyway",
            module.highest_weight()
        ))
        .into());
    };
    let chev = ChevalleyData::build(rs.clone())?;
    let mats = representation_matrices(&chev, kind)?;
    verify_property_star(&chev, &mats).map(PropertyStarBasis::Verified).ok_or_else(|| {
        Error::Precondition(format!("the {kind} module of {} does not have property (*)", rs.code())).into()
    })
}

fn noncubic_torus(job: &JobSpec, module: &HighestWeightModule) -> Res<KernelDecomposition> {
    check_budget(orthogonal_positive_roots(module.rs(), module.highest_weight()).len(), budget(job)?)?;
    match job.param("method").unwrap_or("a-lambda") {
        "a-lambda" => Ok(noncubic_kernel_torus(module)),
        "property-star" => Ok(property_star_kernel(module, &property_star_basis(job, module)?)?),
        m => Err(CliError::Usage(format!("method {m:?}; expected a-lambda or property-star"))),
    }
}

pub fn kernel_decomposition(job: &JobSpec) -> Res<KernelDecomposition> {
    let rs = root_system(job)?;
    let lambda = weight_param(job, &rs, "lambda")?;
    let module = HighestWeightModule::new(rs.clone(), lambda)?;
    let datum = subalgebra(job, &rs)?;
    let need_torus = |what: &str| -> Res<()> {
        if datum.is_torus() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} for h ≠ t has no closed form; only the matrix oracle computes it"
            ))
            .into())
        }
    };
    match parse_operator(job.param("operator"))? {
        Operator::Cubic => Ok(kostant_kernel(&module, &datum)?),
        Operator::T(t) if t.is_one() => {
            let mut k = kostant_kernel(&module, &datum)?;
            k.operator_tag = OperatorTag::TNoncubic(t);
            Ok(k)
        }
        Operator::T(t) if t.is_zero() => {
            need_torus("the noncubic kernel")?;
            noncubic_torus(job, &module)
        }
        Operator::T(t) if t.is_positive() && t < q(2) => Ok(strict_kernel_equality_t(&module, &datum, &t)?),
        Operator::T(t) => Err(Error::Unsupported(format!(
            "no kernel formula is known at t = {}; formulas exist for t = 0 and 0 < t < 2",
            fmt_q(&t)
        ))
        .into()),
    }
}

fn kernel(job: &JobSpec) -> Res<Document> {
    let k = kernel_decomposition(job)?;
    let rows = k
        .blocks
        .iter()
        .map(|b| vec![b.representative.to_string(), b.orbit_size.to_string(), b.block_dim.to_string()])
        .collect();
    let json = serde_json::to_value(&k).expect("serializable");
    Ok(Document::new(json, &["representative", "orbit_size", "block_dim"], rows))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

struct DimsRow {
    algebra: String,
    n: u64,
    cubic_expected: u64,
    coefficient: u64,
    exponent: u64,
}

fn closed_forms(family: Family, rank: usize) -> DimsRow {
    let r = rank as u64;
    match family {
        Family::A => {
            let n = r + 1;
            DimsRow { algebra: format!("sl({n})"), n, cubic_expected: factorial(n), coefficient: n, exponent: (n - 1) * (n - 2) / 2 }
        }
        Family::B => DimsRow {
            algebra: format!("so({})", 2 * r + 1),
            n: r,
            cubic_expected: (1 << r) * factorial(r),
            coefficient: 2 * r,
            exponent: (r - 1) * (r - 1),
        },
        Family::C => DimsRow {
            algebra: format!("sp({r})"),
            n: r,
            cubic_expected: (1 << r) * factorial(r),
            coefficient: 2 * r,
            exponent: (r - 1) * (r - 1),
        },
        Family::D => DimsRow {
            algebra: format!("so({})", 2 * r),
            n: r,
            cubic_expected: (1 << (r - 1)) * factorial(r),
            coefficient: 2 * r,
            exponent: (r - 1) * (r - 2),
        },
        Family::G2 | Family::F4 => unreachable!("filtered by the caller"),
    }
}

fn dims_table(job: &JobSpec) -> Res<Document> {
    let family: Family = required(job, "family")?.parse()?;
    if matches!(family, Family::G2 | Family::F4) {
        return Err(CliError::Usage("dims-table covers the classical families A, B, C, D".into()));
    }
    let parse_rank = |key: &str, default: usize| -> Res<usize> {
        job.param(key).map_or(Ok(default), |s| {
            s.trim().parse().map_err(|_| CliError::Usage(format!("{key} {s:?} is not a positive integer")))
        })
    };
    let min_rank = parse_rank("min_rank", 2)?.max(1);
    let max_rank = parse_rank("max_rank", 5)?;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for rank in min_rank..=max_rank {
        let rs = Arc::new(RootSystem::build(family, rank)?);
        let lambda = rs.standard_highest_weight().expect("classical");
        let module = HighestWeightModule::new(rs.clone(), lambda)?;
        let cubic = kostant_kernel(&module, &SubalgebraDatum::torus(rs.clone()))?.total_dim;
        let noncubic = noncubic_kernel_torus(&module).total_dim;
        let star = property_star_kernel(&module, &PropertyStarBasis::ClassicalStandard)?.total_dim;
        let f = closed_forms(family, rank);
        let expected = f.coefficient << f.exponent;
        let pass = cubic == rs.weyl_group_order() && cubic == f.cubic_expected && noncubic == expected && star == expected;
        all_pass &= pass;
        let formula = format!("{}×2{}", f.coefficient, superscript(f.exponent));
        let noncubic_cell = if noncubic == expected {
            format!("{formula}={noncubic}")
        } else {
            format!("{formula}={expected}, computed {noncubic}")
        };
        rows.push(vec![f.algebra.clone(), cubic.to_string(), noncubic_cell]);
        json_rows.push(json!({
            "algebra": f.algebra,
            "root_system": rs.code(),
            "n": f.n,
            "weyl_order": rs.weyl_group_order(),
            "cubic": cubic,
            "cubic_closed_form": f.cubic_expected,
            "noncubic": noncubic,
            "property_star": star,
            "noncubic_closed_form": format!("{}*2^{}", f.coefficient, f.exponent),
            "noncubic_expected": expected,
            "pass": pass,
        }));
    }
    let json = json!({ "family": family.to_string(), "rows": json_rows, "pass": all_pass });
    Ok(Document::new(json, &["g", "dim ker D = |W|", "dim ker D̂"], rows).with_pass(all_pass))
}

/// `c₂ε₂ + c₃ε₃ + …` with zero terms dropped.
fn eps_expression(w: &Weight) -> String {
    let mut out = String::new();
    for (i, c) in w.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { fmt_q(&mag) };
        out.push_str(&format!("{sign}{coeff}ε{}", subscript(i as u64 + 1)));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Table of `Δ₁⁺`-dominant spin weights for the `B₃` inside `F₄` orthogonal to
/// `λ = ε₁`, computed from `A(λ)` of `F₄` and checked against `B₃` directly.
fn f4_table() -> Res<Document> {
    let f4 = Arc::new(RootSystem::from_code("F4")?);
    let lambda = Weight::from_ints(&[1, 0, 0, 0]);
    let module = HighestWeightModule::new(f4.clone(), lambda.clone())?;
    let delta1 = orthogonal_positive_roots(&f4, &lambda);
    let rho1 = delta1
        .iter()
        .fold(f4.zero_weight(), |acc, &k| &acc + &f4.positive_roots()[k])
        .scale(&qf(1, 2));
    let shift = &(&lambda + f4.rho()) - &rho1;
    let mut from_f4: Vec<(Weight, u64, Weight)> =
        compute_a_lambda(&module).into_iter().map(|(mu, c)| (&mu - &shift, c, mu)).collect();
    from_f4.sort_by(|a, b| b.0.cmp(&a.0));

    let b3 = Arc::new(RootSystem::from_code("B3")?);
    let direct = dominant_spin_weights(&SubalgebraDatum::torus(b3.clone()));
    let embed = |w: &Weight| Weight::new(std::iter::once(Q::zero()).chain(w.coords().iter().cloned()).collect());
    let agree = direct.len() == from_f4.len()
        && direct.iter().zip(&from_f4).all(|((w, c), (v, d, _))| embed(w) == *v && c == d);
    let mut total = 0;
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for ((w, c, mu), (wb, _)) in from_f4.iter().zip(&direct) {
        let orbit = b3.orbit(wb).len() as u64;
        total += orbit * c;
        json_rows.push(json!({ "weight": w, "multiplicity": c, "orbit_size": orbit, "a_lambda": mu }));
        rows.push(vec![eps_expression(w), c.to_string(), orbit.to_string()]);
    }
    let pass = agree && total == 1 << b3.positive_roots().len();
    let json = json!({
        "root_system": "F4",
        "lambda": lambda,
        "rho_1": rho1,
        "rows": json_rows,
        "spin_dim": total,
        "pass": pass,
    });
    Ok(Document::new(json, &["Weight", "Vectors", "W₁-orbit"], rows).with_pass(pass))
}

fn oracle_verify(job: &JobSpec) -> Res<Document> {
    let case = required(job, "case")?;
    let report = run_case(case)?;
    let rows = vec![vec![report.case.clone(), report.pass.to_string()]];
    let json = serde_json::to_value(&report).expect("serializable");
    Ok(Document::new(json, &["case", "pass"], rows).with_pass(report.pass))
}

pub fn geometric_report(job: &JobSpec) -> Res<GeometricKernelReport> {
    let rs = root_system(job)?;
    let mu = weight_param(job, &rs, "mu")?;
    let datum = subalgebra(job, &rs)?;
    match parse_operator(job.param("operator"))? {
        Operator::Cubic => Ok(geometric_cubic_kernel(&datum, &mu)?),
        Operator::T(t) if t.is_zero() => {
            if !datum.is_torus() {
                return Err(Error::Unsupported("the geometric noncubic kernel is implemented for h = t only".into()).into());
            }
            check_budget(rs.positive_roots().len(), budget(job)?)?;
            Ok(geometric_noncubic_kernel_torus(&rs, &mu)?)
        }
        Operator::T(_) => Err(CliError::Usage("geom takes --operator cubic or noncubic".into())),
    }
}

fn geom(job: &JobSpec) -> Res<Document> {
    let r = geometric_report(job)?;
    let rows = r.constituents.iter().map(|c| vec![c.lambda.to_string(), c.multiplicity.to_string()]).collect();
    let json = serde_json::to_value(&r).expect("serializable");
    Ok(Document::new(json, &["lambda", "multiplicity"], rows))
}
