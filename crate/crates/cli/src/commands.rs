use std::fmt::Write as _;

use heun_ghf::che::Diagnostic;
use heun_ghf::frobenius::ode_residual;
use heun_ghf::ghf::{ghf_eval, DEFAULT_REL_TOL};
use heun_ghf::two_state::{
    amplitude_a2, amplitude_pair, amplitude_residual_of, crossing_window, field_configuration,
    norm_drift, two_state_reduction, GeneralSolution, TwoStateConfig, TwoStateDerived,
    DEFAULT_FD_STEP,
};
use heun_ghf::verify::{verify_set, verify_solution};
use heun_ghf::{
    classify, solution_for_q, solution_set, validate_params, CheParams, Complex64, GhfSolution,
};

use crate::args::{DemoArgs, EquationArgs, EvalArgs, VerifyArgs};
use crate::descriptor::{SolutionDescriptor, SpectrumDoc, VerifyDoc};
use crate::{CliError, Outcome, EXIT_OK, EXIT_VERIFY_FAILED};

/// Tolerances for the demo footer verdict.
const ACCESSORY_TOL: f64 = 1e-9;
const NORM_DRIFT_TOL: f64 = 1e-6;
const AMPLITUDE_RESIDUAL_TOL: f64 = 1e-6;

fn checked(p: CheParams) -> Result<CheParams, CliError> {
    if validate_params(&p)
        .iter()
        .any(|d| matches!(d, Diagnostic::NonFinite(_)))
    {
        return Err(CliError::Usage(format!("parameters must be finite: {p}")));
    }
    Ok(p)
}

fn json<T: serde::Serialize>(doc: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(doc)?;
    out.push(b'\n');
    Ok(out)
}

pub fn spectrum(args: &EquationArgs) -> Result<Outcome, CliError> {
    let set = solution_set(&checked(args.params())?)?;
    for d in &set.diagnostics {
        eprintln!("warning: {d}");
    }
    Ok(Outcome {
        stdout: json(&SpectrumDoc::new(&set))?,
        code: EXIT_OK,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let p = checked(args.equation.params())?;
    let doc = match args.q_override {
        None => {
            let set = solution_set(&p)?;
            VerifyDoc::new(&set, &verify_set(&set)?)
        }
        Some(q) => {
            let class = classify(&p, heun_ghf::che::INT_TOL);
            let s = solution_for_q(&p, q)?;
            let report = verify_solution(&p, &s);
            let mut d = SolutionDescriptor::new(&p, &class, &s, &report.relations);
            d.verification = Some((&report).into());
            VerifyDoc {
                params: (&p).into(),
                case: (&class).into(),
                n_value: class.n_value.unwrap_or(0),
                golden_spread: None,
                passed: report.passed,
                solutions: vec![d],
            }
        }
    };
    Ok(Outcome {
        code: if doc.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        stdout: json(&doc)?,
    })
}

fn eval_target(args: &EvalArgs) -> Result<(CheParams, GhfSolution), CliError> {
    if let Some(path) = &args.descriptor {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read descriptor {}: {e}", path.display()))
        })?;
        let d: SolutionDescriptor = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("malformed descriptor {}: {e}", path.display()))
        })?;
        let p = checked(d.che_params())?;
        if p.q.is_none() {
            return Err(CliError::Usage("descriptor parameters lack q".into()));
        }
        let g = d.ghf_solution();
        g.validate()?;
        return Ok((p, g));
    }
    let p = checked(args.params().ok_or_else(|| {
        CliError::Usage("give --descriptor, or all of --gamma --delta --epsilon --alpha".into())
    })?)?;
    if let Some(q) = args.q {
        let s = solution_for_q(&p, q)?;
        if !s.flags.consistent {
            eprintln!("warning: q = {q} is not in the accessory spectrum");
        }
        return Ok((p.with_q(s.q), s.ghf));
    }
    let set = solution_set(&p)?;
    let k = args.root.unwrap_or(0);
    let valid: Vec<_> = set.valid().collect();
    let s = valid.get(k).ok_or_else(|| {
        CliError::Usage(format!(
            "root index {k} out of range: {} valid roots",
            valid.len()
        ))
    })?;
    Ok((p.with_q(s.q), s.ghf.clone()))
}

pub fn eval(args: &EvalArgs) -> Result<Outcome, CliError> {
    let (p, g) = eval_target(args)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["z_re", "z_im", "u_re", "u_im", "residual"])?;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    for z in args.grid() {
        let value = ghf_eval(&g, z, DEFAULT_REL_TOL);
        let u = value.as_ref().map_or(nan, |v| v.value);
        let singular = z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0);
        let residual = match (&value, singular) {
            (_, true) => {
                eprintln!(
                    "warning: z = {z} is a singular point of the equation; residual not defined"
                );
                f64::NAN
            }
            (Err(e), false) => {
                eprintln!("warning: z = {z}: {e}");
                f64::NAN
            }
            (Ok(v), false) => {
                ode_residual(v.value, v.first, v.second, &p, z).map_or(f64::NAN, |r| r.norm())
            }
        };
        w.write_record([z.re, z.im, u.re, u.im, residual].map(|x| format!("{x:?}")))?;
    }
    let stdout = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(Outcome {
        stdout,
        code: EXIT_OK,
    })
}

#[allow(clippy::large_enum_variant)]
enum Trajectory {
    Single(TwoStateDerived),
    General(GeneralSolution),
}

impl Trajectory {
    fn pair(&self, t: f64) -> heun_ghf::Result<(Complex64, Complex64)> {
        match self {
            Trajectory::Single(d) => amplitude_pair(d, t),
            Trajectory::General(g) => g.amplitude_pair(t),
        }
    }

    fn a2(&self, t: f64) -> heun_ghf::Result<Complex64> {
        match self {
            Trajectory::Single(d) => amplitude_a2(d, t),
            Trajectory::General(g) => g.amplitude_a2(t),
        }
    }

    fn parts(&self) -> Vec<&TwoStateDerived> {
        match self {
            Trajectory::Single(d) => vec![d],
            Trajectory::General(g) => g.parts.iter().collect(),
        }
    }
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn demo(args: &DemoArgs) -> Result<Outcome, CliError> {
    let c = TwoStateConfig::new(
        args.u0,
        args.delta0,
        args.delta1,
        args.tau,
        args.sign1,
        args.sign0,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    if c.u0 == 0.0 {
        return Err(CliError::Usage(
            "--u0 must be positive: a1 is recovered by dividing by U0".into(),
        ));
    }
    if args.t_stop <= args.t_start {
        return Err(CliError::Usage("--t-stop must exceed --t-start".into()));
    }
    let traj = match args.ground_at {
        None => Trajectory::Single(two_state_reduction(&c)?),
        Some(t0) => Trajectory::General(GeneralSolution::matching(
            &c,
            t0,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )?),
    };
    let h = DEFAULT_FD_STEP * c.tau;
    let residual_at = |t: f64| amplitude_residual_of(|s| traj.a2(s), &c, t, h);

    let grid = args.grid();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "t",
        "z",
        "a1_re",
        "a1_im",
        "a2_re",
        "a2_im",
        "norm",
        "residual",
        "detuning_rate",
    ])?;
    for &t in &grid {
        let (a1, a2) = traj.pair(t)?;
        let norm = a1.norm_sqr() + a2.norm_sqr();
        let row = [
            t,
            c.z(t),
            a1.re,
            a1.im,
            a2.re,
            a2.im,
            norm,
            residual_at(t)?,
            field_configuration(&c, t).1,
        ];
        w.write_record(row.map(|x| format!("{x:?}")))?;
    }
    let mut out = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;

    let drift = norm_drift(|t| traj.pair(t), &grid)?;
    let crossing = crossing_window(&c, 20)
        .into_iter()
        .map(&residual_at)
        .collect::<heun_ghf::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let parts = traj.parts();
    let accessory = parts
        .iter()
        .map(|d| d.accessory_residual)
        .fold(0.0, f64::max);
    let passed =
        accessory <= ACCESSORY_TOL && drift <= NORM_DRIFT_TOL && crossing <= AMPLITUDE_RESIDUAL_TOL;

    let mut footer = String::new();
    for d in &parts {
        let k = &d.config;
        let _ = writeln!(
            footer,
            "# signs=({},{}) gamma={} epsilon={} alpha={} q={} a={} e={}",
            k.sign1,
            k.sign0,
            d.che.gamma,
            d.che.epsilon,
            d.che.alpha,
            d.che.q.unwrap_or_default(),
            d.a_param,
            d.e_param
        );
        let _ = writeln!(
            footer,
            "# closed_form_a_discrepancy={} closed_form_e_discrepancy={}",
            sci(d.a_discrepancy()),
            sci(d.e_discrepancy())
        );
    }
    if let Trajectory::General(g) = &traj {
        let _ = writeln!(footer, "# weights={} {}", g.weights[0], g.weights[1]);
    }
    let _ = writeln!(footer, "# accessory_residual={}", sci(accessory));
    let _ = writeln!(footer, "# norm_drift={}", sci(drift));
    let _ = writeln!(footer, "# crossing_amplitude_residual={}", sci(crossing));
    let _ = writeln!(footer, "# passed={passed}");
    out.extend_from_slice(footer.as_bytes());
    Ok(Outcome {
        stdout: out,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
