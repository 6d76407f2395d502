//! JSON documents emitted by the CLI.
//!
//! Complex numbers are `[re, im]` pairs written with the shortest decimal
//! form that round-trips, so every finite value survives a write/read cycle
//! bit for bit. Non-finite components become `null` and read back as NaN.

use heun_ghf::pi_system::RootFlags;
use heun_ghf::verify::{RootReport, VerifyReport};
use heun_ghf::{
    CaseClass, CheParams, Complex64, ConstructedSolution, GhfSolution, Relations, Route,
    SolutionSet,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx(pub Option<f64>, pub Option<f64>);

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx(finite(z.re), finite(z.im))
    }
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        Complex64::new(c.0.unwrap_or(f64::NAN), c.1.unwrap_or(f64::NAN))
    }
}

fn cxs(v: &[Complex64]) -> Vec<Cx> {
    v.iter().map(|&z| z.into()).collect()
}

fn cplx(v: &[Cx]) -> Vec<Complex64> {
    v.iter().map(|&z| z.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub gamma: Cx,
    pub delta: Cx,
    pub epsilon: Cx,
    pub alpha: Cx,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Cx>,
}

impl From<&CheParams> for ParamsDoc {
    fn from(p: &CheParams) -> Self {
        ParamsDoc {
            gamma: p.gamma.into(),
            delta: p.delta.into(),
            epsilon: p.epsilon.into(),
            alpha: p.alpha.into(),
            q: p.q.map(Into::into),
        }
    }
}

impl From<&ParamsDoc> for CheParams {
    fn from(d: &ParamsDoc) -> Self {
        let p = CheParams::new(
            d.gamma.into(),
            d.delta.into(),
            d.epsilon.into(),
            d.alpha.into(),
        );
        match d.q {
            Some(q) => p.with_q(q.into()),
            None => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseDoc {
    pub kind: String,
    pub route: Option<String>,
    pub n_value: Option<usize>,
    pub integer: Option<i64>,
    pub epsilon_zero: bool,
}

impl From<&CaseClass> for CaseDoc {
    fn from(c: &CaseClass) -> Self {
        CaseDoc {
            kind: c.kind.name().to_string(),
            route: c.route().map(|r: Route| r.name().to_string()),
            n_value: c.n_value,
            integer: c.integer,
            epsilon_zero: c.epsilon_zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhfDoc {
    pub numerator: Vec<Cx>,
    pub denominator: Vec<Cx>,
    pub scale: Cx,
    pub base_point: Cx,
    pub prefactor_center: Cx,
    pub prefactor_exponent: Cx,
}

impl From<&GhfSolution> for GhfDoc {
    fn from(g: &GhfSolution) -> Self {
        GhfDoc {
            numerator: cxs(&g.numerator_params),
            denominator: cxs(&g.denominator_params),
            scale: g.scale.into(),
            base_point: g.base_point.into(),
            prefactor_center: g.prefactor_center.into(),
            prefactor_exponent: g.prefactor_exponent.into(),
        }
    }
}

impl From<&GhfDoc> for GhfSolution {
    fn from(d: &GhfDoc) -> Self {
        GhfSolution {
            numerator_params: cplx(&d.numerator),
            denominator_params: cplx(&d.denominator),
            scale: d.scale.into(),
            base_point: d.base_point.into(),
            prefactor_center: d.prefactor_center.into(),
            prefactor_exponent: d.prefactor_exponent.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagsDoc {
    pub valid: bool,
    pub consistent: bool,
    pub denominator_hazard: bool,
    pub alpha_epsilon_coincidence: bool,
    pub degenerate: bool,
    pub consistency_residual: Option<f64>,
    pub pi_residual: Option<f64>,
}

impl From<&RootFlags> for FlagsDoc {
    fn from(f: &RootFlags) -> Self {
        FlagsDoc {
            valid: f.is_valid(),
            consistent: f.consistent,
            denominator_hazard: f.denominator_hazard,
            alpha_epsilon_coincidence: f.alpha_epsilon_coincidence,
            degenerate: f.degenerate,
            consistency_residual: finite(f.consistency_residual),
            pi_residual: finite(f.pi_residual),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationsDoc {
    pub product: Option<f64>,
    pub conjectured_product: Option<f64>,
    pub sum: Option<f64>,
}

impl From<&Relations> for RelationsDoc {
    fn from(r: &Relations) -> Self {
        RelationsDoc {
            product: r.product.and_then(finite),
            conjectured_product: r.conjectured_product.and_then(finite),
            sum: r.sum.and_then(finite),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub z: Cx,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub coefficient_deviation: Option<f64>,
    pub termwise_deviation: Option<f64>,
    pub residuals: Vec<ResidualDoc>,
    pub max_residual: Option<f64>,
    pub passed: bool,
    pub conjecture_warning: bool,
}

impl From<&RootReport> for VerificationDoc {
    fn from(r: &RootReport) -> Self {
        VerificationDoc {
            coefficient_deviation: finite(r.coefficient_deviation),
            termwise_deviation: finite(r.termwise_deviation),
            residuals: r
                .residuals
                .iter()
                .map(|&(z, res)| ResidualDoc {
                    z: z.into(),
                    residual: finite(res),
                })
                .collect(),
            max_residual: finite(r.max_residual()),
            passed: r.passed,
            conjecture_warning: r.conjecture_warning,
        }
    }
}

/// One solution: everything needed to evaluate it again without
/// recomputing the spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDescriptor {
    /// Input equation including the root's `q`.
    pub params: ParamsDoc,
    pub case: CaseDoc,
    pub q: Cx,
    /// Canonical `δ = -N` equation the series was built for, with its `q`.
    pub canonical: ParamsDoc,
    pub e: Vec<Cx>,
    pub ghf: GhfDoc,
    pub flags: FlagsDoc,
    pub relations: RelationsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

impl SolutionDescriptor {
    pub fn new(
        params: &CheParams,
        class: &CaseClass,
        s: &ConstructedSolution,
        relations: &Relations,
    ) -> Self {
        SolutionDescriptor {
            params: (&params.with_q(s.q)).into(),
            case: class.into(),
            q: s.q.into(),
            canonical: (&s.canonical).into(),
            e: cxs(&s.e),
            ghf: (&s.ghf).into(),
            flags: (&s.flags).into(),
            relations: relations.into(),
            verification: None,
        }
    }

    pub fn che_params(&self) -> CheParams {
        (&self.params).into()
    }

    pub fn ghf_solution(&self) -> GhfSolution {
        (&self.ghf).into()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub params: ParamsDoc,
    pub case: CaseDoc,
    pub canonical: ParamsDoc,
    pub n_value: usize,
    /// Monic accessory polynomial of the canonical equation, ascending powers.
    pub accessory_polynomial: Vec<Cx>,
    pub diagnostics: Vec<String>,
    pub solutions: Vec<SolutionDescriptor>,
}

impl SpectrumDoc {
    pub fn new(set: &SolutionSet) -> Self {
        let solutions = set
            .solutions
            .iter()
            .map(|s| {
                let rel = heun_ghf::consistency_relations(
                    &set.canonical,
                    s.canonical.q.unwrap_or(s.q),
                    &s.e,
                );
                SolutionDescriptor::new(&set.params, &set.class, s, &rel)
            })
            .collect();
        SpectrumDoc {
            params: (&set.params).into(),
            case: (&set.class).into(),
            canonical: (&set.canonical).into(),
            n_value: set.spectrum.n_value,
            accessory_polynomial: cxs(set.spectrum.q_poly.coeffs()),
            diagnostics: set.diagnostics.iter().map(ToString::to_string).collect(),
            solutions,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub params: ParamsDoc,
    pub case: CaseDoc,
    pub n_value: usize,
    pub golden_spread: Option<f64>,
    pub passed: bool,
    pub solutions: Vec<SolutionDescriptor>,
}

impl VerifyDoc {
    pub fn new(set: &SolutionSet, report: &VerifyReport) -> Self {
        let solutions = set
            .solutions
            .iter()
            .zip(&report.roots)
            .map(|(s, r)| {
                let mut d = SolutionDescriptor::new(&set.params, &set.class, s, &r.relations);
                d.verification = Some(r.into());
                d
            })
            .collect();
        VerifyDoc {
            params: (&set.params).into(),
            case: (&set.class).into(),
            n_value: report.n_value,
            golden_spread: report.golden_spread.and_then(finite),
            passed: report.passed,
            solutions,
        }
    }
}
