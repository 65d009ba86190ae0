use std::collections::BTreeMap;
use std::fs;

use dirac_spin::amplitudes::{algebraic_residual, parity_relation_residual, sandwich_formula_residual};
use dirac_spin::dynamics::{integrate, ChargedState, FieldConfig, GradientReading};
use dirac_spin::lorentz::{
    axis_angle, bispinor_rep, boost_from_velocity, covariance_residual, su2_from_so3, wigner_closed, wigner_numeric,
    BoostVelocity,
};
use dirac_spin::position::{parseval_check, ParsevalGrids, ParsevalReport};
use dirac_spin::spin::{spin_transform_closed, spin_transform_wigner, triple_residual};
use dirac_spin::states::{to_covariant, DensityState, GaussianProfile, MomentumWaveFunction, WavefunctionSpec};
use dirac_spin::types::Spinor;
use dirac_spin::verify::{resolve_tolerances, run_all, SweepConfig};
use dirac_spin::{on_shell, EnergySign, R3x3, Real3, C64};
use serde_json::{json, Map, Value};

use crate::report::{self, cmatrix, lorentz, num, rotation, vec3};
use crate::{
    tolerance_overrides, AmplitudeArgs, BoostArgs, BoostMomentumArgs, Failure, FieldKind, Format, FourierArgs,
    GlobalArgs, Outcome, PrecessArgs, Reading, SpinTransformArgs,
};

/// Checks a command can report on, with default tolerances.
type ToleranceTable = &'static [(&'static str, f64)];

const WIGNER_TOLS: ToleranceTable = &[("wigner_closed_form", 1e-10)];
const BOOST_TOLS: ToleranceTable = &[("covariance_gamma", 1e-10), ("on_shell", 1e-10)];
const AMPLITUDE_TOLS: ToleranceTable =
    &[("amplitude_algebra", 1e-12), ("parity_relation", 1e-12), ("sandwich_formulas", 1e-12)];
const SPIN_TRANSFORM_TOLS: ToleranceTable = &[("spin_transform", 1e-10)];
const FOURIER_TOLS: ToleranceTable = &[("parseval", 1e-3)];

fn resolve(global: &GlobalArgs, table: ToleranceTable) -> Result<BTreeMap<String, f64>, Failure> {
    let mut out: BTreeMap<String, f64> = table.iter().map(|&(n, t)| (n.to_string(), t)).collect();
    for (name, value) in tolerance_overrides(global)? {
        let Some(slot) = out.get_mut(&name) else {
            let known: Vec<_> = table.iter().map(|(n, _)| *n).collect();
            return Err(Failure::Config(format!(
                "unknown tolerance '{name}' for this command (known: {})",
                known.join(", ")
            )));
        };
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Failure::Config(format!("tolerance '{name}' must be finite and non-negative")));
        }
        *slot = value;
    }
    Ok(out)
}

fn json_only(global: &GlobalArgs) -> Result<(), Failure> {
    match global.format {
        Some(Format::Csv) => Err(Failure::Config("this command only produces json".into())),
        _ => Ok(()),
    }
}

fn check_mass(m: f64) -> Result<(), Failure> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Failure::Config(format!("mass must be positive and finite, got {m}")))
    }
}

fn sweep_config(global: &GlobalArgs) -> Result<SweepConfig, Failure> {
    let cfg = SweepConfig {
        seed: global.seed,
        samples: global.samples,
        mass: global.mass,
        pmax_over_m: global.pmax,
        vmax: global.vmax,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Report envelope: tool version, resolved configuration, command payload.
fn envelope(
    command: &str,
    global: &GlobalArgs,
    tolerances: &BTreeMap<String, f64>,
    arguments: Value,
    body: Map<String, Value>,
) -> Value {
    let tol: Map<String, Value> = tolerances.iter().map(|(k, &v)| (k.clone(), num(v))).collect();
    let mut out = Map::new();
    out.insert("tool".into(), json!("dirac-spin"));
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("command".into(), json!(command));
    out.insert(
        "config".into(),
        json!({
            "seed": global.seed,
            "samples": global.samples,
            "mass": num(global.mass),
            "pmax_over_m": num(global.pmax),
            "vmax": num(global.vmax),
            "format": global.format.unwrap_or(Format::Json).name(),
            "tolerances": tol,
            "arguments": arguments,
        }),
    );
    out.extend(body);
    Value::Object(out)
}

fn check(name: &str, residual: f64, tolerances: &BTreeMap<String, f64>) -> (Value, bool) {
    let tol = tolerances[name];
    let passed = residual <= tol;
    (json!({"name": name, "residual": num(residual), "tolerance": num(tol), "passed": passed}), passed)
}

fn finish(
    command: &str,
    global: &GlobalArgs,
    tolerances: &BTreeMap<String, f64>,
    arguments: Value,
    mut body: Map<String, Value>,
    checks: Vec<(Value, bool)>,
) -> Outcome {
    let passed = checks.iter().all(|(_, p)| *p);
    body.insert("checks".into(), Value::Array(checks.into_iter().map(|(v, _)| v).collect()));
    body.insert("passed".into(), json!(passed));
    Outcome { text: report::to_string(&envelope(command, global, tolerances, arguments, body)), passed }
}

fn velocity(v: &[f64; 3]) -> Result<BoostVelocity, Failure> {
    BoostVelocity::new(Real3::from(*v)).map_err(|e| Failure::Config(e.to_string()))
}

pub fn verify(global: &GlobalArgs) -> Result<Outcome, Failure> {
    let cfg = sweep_config(global)?;
    let tolerances = resolve_tolerances(&tolerance_overrides(global)?)?;
    let results = run_all(&cfg, &tolerances)?;
    let passed = results.iter().all(|r| r.passed);
    let text = match global.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = String::from("name,samples,max_residual,worst_sample,tolerance,passed\n");
            for r in &results {
                s.push_str(&format!(
                    "{},{},{:.16e},{},{:.16e},{}\n",
                    r.name, r.samples, r.max_residual, r.worst_sample, r.tolerance, r.passed
                ));
            }
            s
        }
        Format::Json => {
            let identities: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "samples": r.samples,
                        "max_residual": num(r.max_residual),
                        "worst_sample": r.worst_sample,
                        "tolerance": num(r.tolerance),
                        "passed": r.passed,
                    })
                })
                .collect();
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
            let mut body = Map::new();
            body.insert("identities".into(), Value::Array(identities));
            body.insert("failed".into(), json!(failed));
            body.insert("passed".into(), json!(passed));
            report::to_string(&envelope("verify", global, &tolerances, json!({}), body))
        }
    };
    for r in results.iter().filter(|r| !r.passed) {
        eprintln!("identity {} failed: residual {:e} > tolerance {:e}", r.name, r.max_residual, r.tolerance);
    }
    Ok(Outcome { text, passed })
}

pub fn wigner(global: &GlobalArgs, a: &BoostMomentumArgs) -> Result<Outcome, Failure> {
    json_only(global)?;
    check_mass(global.mass)?;
    let tolerances = resolve(global, WIGNER_TOLS)?;
    let v = velocity(&a.velocity)?;
    let p = on_shell(global.mass, &Real3::from(a.momentum))?;
    let closed = wigner_closed(&v, &p, global.mass)?;
    let (numeric, _) = wigner_numeric(&boost_from_velocity(&v), &p, global.mass)?;
    let (axis, angle) = axis_angle(&closed)?;
    let d = su2_from_so3(&closed)?;
    let mut body = Map::new();
    body.insert("rotation".into(), rotation(&closed));
    body.insert("axis".into(), vec3(&axis));
    body.insert("angle".into(), num(angle));
    body.insert("su2".into(), cmatrix(2, 2, |i, j| d[(i, j)]));
    body.insert("brute_force_rotation".into(), rotation(&numeric));
    let checks = vec![check("wigner_closed_form", (closed - numeric).amax(), &tolerances)];
    let args = json!({"velocity": a.velocity.map(num), "momentum": a.momentum.map(num)});
    Ok(finish("wigner", global, &tolerances, args, body, checks))
}

pub fn boost(global: &GlobalArgs, a: &BoostArgs) -> Result<Outcome, Failure> {
    json_only(global)?;
    let tolerances = resolve(global, BOOST_TOLS)?;
    let v = velocity(&a.velocity)?;
    let l = boost_from_velocity(&v);
    let s = bispinor_rep(&l)?;
    let mut body = Map::new();
    body.insert("gamma".into(), num(v.gamma()));
    body.insert("rapidity".into(), num(v.rapidity()));
    body.insert("lorentz".into(), lorentz(&l));
    body.insert("bispinor".into(), cmatrix(4, 4, |i, j| s[(i, j)]));
    let mut checks = vec![check("covariance_gamma", covariance_residual(&s, &l), &tolerances)];
    if let Some(p3) = a.momentum {
        check_mass(global.mass)?;
        let p = on_shell(global.mass, &Real3::from(p3))?;
        let q = l.apply(&p);
        body.insert("momentum".into(), json!(p.to_array().map(num)));
        body.insert("image".into(), json!(q.to_array().map(num)));
        let m2 = global.mass * global.mass;
        checks.push(check("on_shell", (q.dot(&q) - m2).abs() / q.t.powi(2).max(m2), &tolerances));
    }
    let args = json!({"velocity": a.velocity.map(num), "momentum": a.momentum.map(|p| p.map(num))});
    Ok(finish("boost", global, &tolerances, args, body, checks))
}

pub fn amplitude(global: &GlobalArgs, a: &AmplitudeArgs) -> Result<Outcome, Failure> {
    json_only(global)?;
    check_mass(global.mass)?;
    let tolerances = resolve(global, AMPLITUDE_TOLS)?;
    let e = EnergySign::from_i32(a.sign).map_err(|err| Failure::Config(err.to_string()))?;
    let m = global.mass;
    let p = on_shell(m, &Real3::from(a.momentum))?;
    let v = dirac_spin::amplitudes::amplitude(e, &p, m)?;
    let bar = v.bar();
    let mut body = Map::new();
    body.insert("momentum".into(), json!(p.to_array().map(num)));
    body.insert("amplitude".into(), cmatrix(4, 2, |i, j| v.matrix[(i, j)]));
    body.insert("adjoint".into(), cmatrix(2, 4, |i, j| bar[(i, j)]));
    let checks = vec![
        check("amplitude_algebra", algebraic_residual(&p, m)?, &tolerances),
        check("parity_relation", parity_relation_residual(e, &p, m)?, &tolerances),
        check("sandwich_formulas", sandwich_formula_residual(e, &p, m)?, &tolerances),
    ];
    let args = json!({"sign": a.sign, "momentum": a.momentum.map(num)});
    Ok(finish("amplitude", global, &tolerances, args, body, checks))
}

pub fn spin_transform(global: &GlobalArgs, a: &SpinTransformArgs) -> Result<Outcome, Failure> {
    json_only(global)?;
    check_mass(global.mass)?;
    let tolerances = resolve(global, SPIN_TRANSFORM_TOLS)?;
    let m = global.mass;
    let v = velocity(&a.kinematics.velocity)?;
    let p = on_shell(m, &Real3::from(a.kinematics.momentum))?;
    let closed = spin_transform_closed(&v, &p, m);
    let via_rotation = spin_transform_wigner(&v, &p, m)?;
    let r: R3x3 = wigner_closed(&v, &p, m)?;
    let mut body = Map::new();
    body.insert("wigner_rotation".into(), rotation(&r));
    body.insert("spin".into(), Value::Array(closed.iter().map(|s| cmatrix(2, 2, |i, j| s[(i, j)])).collect()));
    if let Some(xi) = a.xi {
        let rho = DensityState::new(m, &p.spatial(), Real3::from(xi))?;
        let moved = rho.bloch_transform(&boost_from_velocity(&v))?;
        body.insert("xi".into(), vec3(&moved.xi));
        body.insert("xi_norm".into(), num(moved.xi.norm()));
        body.insert("momentum".into(), json!(moved.q.to_array().map(num)));
    }
    let checks = vec![check("spin_transform", triple_residual(&closed, &via_rotation), &tolerances)];
    let args = json!({
        "velocity": a.kinematics.velocity.map(num),
        "momentum": a.kinematics.momentum.map(num),
        "xi": a.xi.map(|x| x.map(num)),
    });
    Ok(finish("spin-transform", global, &tolerances, args, body, checks))
}

fn field_config(a: &PrecessArgs) -> Result<FieldConfig, Failure> {
    let b = Real3::from(a.b);
    match a.field {
        FieldKind::Uniform => {
            if a.gradient.is_some() || a.g.is_some() {
                return Err(Failure::Config("a uniform field takes no gradient".into()));
            }
            Ok(FieldConfig::Uniform(b))
        }
        FieldKind::Linear => {
            let g = a.gradient.ok_or_else(|| Failure::Config("a linear field needs --gradient".into()))?;
            Ok(FieldConfig::Linear { b0: b, gradient: R3x3::from_row_slice(&g) })
        }
        FieldKind::Quadrupole => {
            let g = a.g.ok_or_else(|| Failure::Config("a quadrupole field needs --g".into()))?;
            if !g.is_finite() {
                return Err(Failure::Config("quadrupole strength must be finite".into()));
            }
            Ok(FieldConfig::quadrupole(g))
        }
    }
}

pub fn precess(global: &GlobalArgs, a: &PrecessArgs) -> Result<Outcome, Failure> {
    check_mass(global.mass)?;
    let tolerances = resolve(global, &[])?;
    let field = field_config(a)?;
    let m = global.mass;
    if !a.charge.is_finite() {
        return Err(Failure::Config("charge must be finite".into()));
    }
    let xi = Real3::from(a.xi);
    if xi.norm() > 1.0 + 1e-12 {
        return Err(Failure::Config(format!("Bloch vector length {} exceeds 1", xi.norm())));
    }
    let x0 = Real3::from(a.x);
    let t_end = match a.time {
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => return Err(Failure::Config(format!("final time must be finite and non-negative, got {t}"))),
        None => {
            let rate = (a.charge * field.field(&x0).norm() / m).abs();
            if rate == 0.0 {
                return Err(Failure::Config("no Larmor period without field or charge; pass --time".into()));
            }
            std::f64::consts::FRAC_PI_2 / rate
        }
    };
    let reading = match a.reading {
        Reading::SternGerlach => GradientReading::SternGerlach,
        Reading::Transposed => GradientReading::Transposed,
    };
    let s0 = ChargedState::new(Real3::from(a.q), xi, x0, a.charge, m)?;
    let traj = integrate(&s0, &field, t_end, a.steps, reading)?;
    let sum = traj.summary(&field);
    let last = traj.last();
    eprintln!(
        "t={:.16e} xi=({:.16e},{:.16e},{:.16e}) xi_norm_drift={:.3e} q_norm_drift={:.3e} xi_dot_q_drift={:.3e} q_along_field_drift={:.3e}",
        last.t, last.xi.x, last.xi.y, last.xi.z, sum.xi_norm_drift, sum.q_norm_drift, sum.xi_dot_q_drift, sum.q_along_field_drift
    );
    let text = match global.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            traj.write_csv(&mut buf).map_err(|e| Failure::Config(e.to_string()))?;
            String::from_utf8(buf).expect("formatted numbers are ASCII")
        }
        Format::Json => {
            let rows: Vec<Value> = traj
                .samples
                .iter()
                .map(|s| {
                    let mut row = json!({"t": num(s.t), "q": vec3(&s.q), "xi": vec3(&s.xi)});
                    if traj.track_position {
                        row["x"] = vec3(&s.x);
                    }
                    row
                })
                .collect();
            let mut body = Map::new();
            body.insert(
                "summary".into(),
                json!({
                    "xi_norm_drift": num(sum.xi_norm_drift),
                    "q_norm_drift": num(sum.q_norm_drift),
                    "xi_dot_q_drift": num(sum.xi_dot_q_drift),
                    "q_along_field_drift": num(sum.q_along_field_drift),
                }),
            );
            body.insert("trajectory".into(), Value::Array(rows));
            let args = json!({
                "field": format!("{:?}", a.field).to_lowercase(),
                "b": a.b.map(num),
                "gradient": a.gradient.map(|g| g.map(num)),
                "g": a.g.map(num),
                "q": a.q.map(num),
                "xi": a.xi.map(num),
                "x": a.x.map(num),
                "charge": num(a.charge),
                "time": num(t_end),
                "steps": a.steps,
                "reading": format!("{:?}", a.reading).to_lowercase(),
            });
            report::to_string(&envelope("precess", global, &tolerances, args, body))
        }
    };
    Ok(Outcome { text, passed: true })
}

fn default_wavefunction(m: f64) -> Result<MomentumWaveFunction, Failure> {
    let g = GaussianProfile::normalized(
        Real3::zeros(),
        1.0,
        Spinor::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        Real3::zeros(),
    )?;
    Ok(MomentumWaveFunction::gaussian(m, EnergySign::Positive, g)?)
}

fn parseval_json(r: &ParsevalReport) -> Value {
    json!({"position": report::complex(r.lhs), "momentum": report::complex(r.rhs), "relative_error": num(r.relerr)})
}

pub fn fourier_check(global: &GlobalArgs, a: &FourierArgs) -> Result<Outcome, Failure> {
    json_only(global)?;
    let tolerances = resolve(global, FOURIER_TOLS)?;
    let (w, source) = match &a.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            let spec: WavefunctionSpec =
                toml::from_str(&text).map_err(|e| Failure::Config(format!("malformed wavefunction spec: {e}")))?;
            (spec.build()?, Value::String(path.display().to_string()))
        }
        None => {
            check_mass(global.mass)?;
            (default_wavefunction(global.mass)?, Value::Null)
        }
    };
    let cov = to_covariant(&w);
    let default = parseval_check(&cov, &cov, &ParsevalGrids::default_for(&cov, &cov))?;
    let mut body = Map::new();
    body.insert("mass".into(), num(w.mass));
    body.insert("default_grid".into(), parseval_json(&default));
    let mut checks = vec![check("parseval", default.relerr, &tolerances)];
    if !a.no_refine {
        let refined = parseval_check(&cov, &cov, &ParsevalGrids::refined_for(&cov, &cov))?;
        body.insert("refined_grid".into(), parseval_json(&refined));
        let improves = refined.relerr < default.relerr;
        checks.push((
            json!({"name": "parseval_refinement", "default": num(default.relerr), "refined": num(refined.relerr), "passed": improves}),
            improves,
        ));
    }
    let args = json!({"spec": source, "refine": !a.no_refine});
    Ok(finish("fourier-check", global, &tolerances, args, body, checks))
}
