//! Computation commands: twist, degree-one twist, Hecke images, forms, evaluation.

use std::path::Path;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{points_or, BuiltinForm, CliError, EvalArgs, FormKind, GlobalArgs, Gl2Args, HeckeArgs, MakeFormArgs, OpArg, Outcome, TwistArgs};
use crate::exact::{format_rational, upow};
use crate::forms::{
    delta_qexp, eisenstein_qexp, gritsenko_lift, jacobi_eisenstein, phi10, required_disc, JacobiForm,
    LiftSource, ProductSource,
};
use crate::fourier::{
    evaluate, load_expansion, materialize, point, relative_deviation, save_expansion, slash_numeric,
    CoefficientSource, Expansion, FourierExpansion, Index, ReducedLookup, Window, C2,
};
use crate::groups::{in_paramodular_global, symmetry_fricke, symmetry_swap};
use crate::hecke::{apply_atkin_lehner_numeric, apply_hecke_numeric, apply_t1, HeckeOp};
use crate::twist::gl2::{gl2_twist_slash, verify_gl2_commutation, verify_gl2_twist};
use crate::twist::{apply_twist, oracle_forward, TwistError, TwistPlan};

/// Largest discriminant of the default `phi_10` table.
pub(super) const CHI10_DISC: u64 = 20_000;

/// Window of the default truncation of lifted `chi_10`.
pub(super) fn chi10_window() -> Window {
    Window::Box { n_max: 24, m_max: 24 }
}

/// Points with `Im Z` near `1.6`, where `T(1,l,l,l^2)` images stay inside [`chi10_window`].
pub(super) fn eigen_points() -> Vec<C2> {
    vec![
        point([0.1, 0.05, -0.2], [1.6, 0.2, 1.7]),
        point([0.0, 0.15, 0.0], [1.5, 0.1, 1.5]),
        point([0.3, -0.1, 0.2], [1.7, -0.3, 1.5]),
    ]
}

/// `Z = (i/3) 1` and `Z = i diag(1/2, 1/3)`.
pub(super) fn sample_points() -> Vec<C2> {
    vec![
        point([0.0; 3], [1.0 / 3.0, 0.0, 1.0 / 3.0]),
        point([0.0; 3], [0.5, 0.0, 1.0 / 3.0]),
    ]
}

pub(super) fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub(super) fn point_json(z: &C2) -> Value {
    json!({
        "re": [z[0][0].re, z[0][1].re, z[1][1].re],
        "im": [z[0][0].im, z[0][1].im, z[1][1].im],
    })
}

fn load(path: &Path) -> Result<Expansion, CliError> {
    load_expansion(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub(super) fn load_siegel(path: &Path) -> Result<FourierExpansion, CliError> {
    match load(path)? {
        Expansion::Siegel(f) => Ok(f),
        Expansion::Elliptic(_) => Err(CliError::Usage(format!(
            "{} holds an elliptic expansion; a Siegel expansion is needed",
            path.display()
        ))),
    }
}

fn save(path: &Path, x: &Expansion) -> Result<(), CliError> {
    save_expansion(path, x).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Forward push of the coefficients with `n <= 2N`, `m <= 2`: every image off
/// the level-`N p^4` lattice must cancel.
fn lattice_check(source: &dyn CoefficientSource, p: u64) -> Result<(usize, bool), CliError> {
    let level = source.level();
    let mut inputs = Vec::new();
    for i in Index::semidefinite_box(2 * level as i64, 2, level) {
        let Some(v) = source.coefficient(&i) else { continue };
        if v.is_zero() {
            continue;
        }
        let r = v.to_rational().filter(|r| r.is_integer()).ok_or(TwistError::NonRationalInput)?;
        let a = i128::try_from(r.to_integer()).map_err(|_| TwistError::NonRationalInput)?;
        inputs.push((i, a));
    }
    let forward = oracle_forward(&inputs, p, source.weight(), level);
    Ok((inputs.len(), forward.off_lattice_cancels()))
}

pub(super) fn twist(a: &TwistArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let loaded = a.input.as_deref().map(load_siegel).transpose()?;
    let reduced = loaded.as_ref().and_then(ReducedLookup::new);
    let lift = LiftSource::new(phi10(if a.form.is_some() { CHI10_DISC } else { 4 }));
    let square = ProductSource::new(&lift, &lift).expect("same level");
    let source: &dyn CoefficientSource = match (&loaded, &reduced, a.form) {
        (_, Some(r), _) => r,
        (Some(f), None, _) => f,
        (None, _, Some(BuiltinForm::Chi10Squared)) => &square,
        (None, _, _) => &lift,
    };
    let (weight, level) = (source.weight(), source.level());
    let plan = TwistPlan::new(a.p, weight)?;
    let out_level = level * upow(a.p, 4);
    let (n_max, m_max) = g.window.unwrap_or((out_level as i64, 1));
    let outputs = Index::semidefinite_box(n_max, m_max, out_level);
    let out = apply_twist(source, &plan, &outputs)?;
    let computed = out.window.indices(out_level).len();
    let nonzero = out.coefficients.len();
    if let Some(path) = &a.out {
        save(path, &Expansion::Siegel(out.clone()))?;
    }
    let mut summary = vec![format!(
        "twist p = {}: level {level} -> {out_level}, {computed} of {} window indices computed, {nonzero} nonzero",
        a.p,
        outputs.len()
    )];
    let mut result = json!({
        "p": a.p,
        "weight": weight,
        "input_level": level,
        "output_level": out_level,
        "window": {"n_max": n_max, "m_max": m_max},
        "requested": outputs.len(),
        "computed": computed,
        "nonzero": nonzero,
    });
    let mut passed = true;
    if a.check {
        let (pushed, cancels) = lattice_check(source, a.p)?;
        let points = points_or(&a.points, sample_points())?;
        let generators = [("fricke", symmetry_fricke(out_level)), ("swap", symmetry_swap())];
        let mut invariance = Vec::new();
        let mut inv_ok = true;
        for (name, gamma) in &generators {
            let member = in_paramodular_global(gamma, out_level);
            for z in &points {
                let lhs = slash_numeric(&out, gamma, z, g.precision)?;
                let rhs = evaluate(&out, z, g.precision)?;
                let dev = relative_deviation(lhs.value, rhs.value);
                let ok = member && dev < 1e-6;
                inv_ok &= ok;
                invariance.push(json!({
                    "generator": name,
                    "member": member,
                    "point": point_json(z),
                    "value": complex_json(rhs.value),
                    "deviation": dev,
                    "tail": lhs.tail.max(rhs.tail),
                    "vacuous": lhs.value.is_zero() && rhs.value.is_zero(),
                    "passed": ok,
                }));
            }
        }
        passed = cancels && nonzero > 0 && inv_ok;
        summary.push(format!("  support on the lattice ({pushed} inputs pushed forward): {cancels}"));
        summary.push(format!("  nonzero on the window: {}", nonzero > 0));
        summary.push(format!("  invariance at {} points: {inv_ok}", points.len()));
        result["checks"] = json!({
            "lattice_support": {"inputs": pushed, "off_lattice_cancels": cancels},
            "nonzero": nonzero > 0,
            "invariance": invariance,
        });
    }
    Ok(Outcome { passed, result, summary })
}

pub(super) fn gl2_twist(a: &Gl2Args) -> Result<Outcome, CliError> {
    let f = match &a.input {
        Some(path) => match load(path)? {
            Expansion::Elliptic(f) => f,
            Expansion::Siegel(_) => {
                return Err(CliError::Usage(format!("{} is not an elliptic expansion", path.display())))
            }
        },
        None => delta_qexp(a.terms),
    };
    let mut twists = Vec::new();
    let mut commutations = Vec::new();
    let mut summary = Vec::new();
    for &p in &a.primes {
        let r = verify_gl2_twist(&f, p)?;
        summary.push(format!("closed form, p = {p}: {} (q^{})", r.passed, r.truncation));
        twists.push(r);
        for &ell in &a.ells {
            let c = verify_gl2_commutation(&f, p, ell)?;
            summary.push(format!("T({ell}) commutation, p = {p}: {}", c.passed));
            commutations.push(json!({"ell": ell, "report": c}));
        }
    }
    if let (Some(path), Some(&p)) = (&a.out, a.primes.first()) {
        save(path, &Expansion::Elliptic(gl2_twist_slash(&f, p)?))?;
    }
    let passed = twists.iter().all(|r| r.passed)
        && commutations.iter().all(|c| c["report"]["passed"] == json!(true));
    Ok(Outcome {
        passed,
        result: json!({"weight": f.weight, "truncation": f.truncation(), "twist": twists, "commutation": commutations}),
        summary,
    })
}

/// The common ratio `b(T) / a(T)` over indices where `a(T)` is a nonzero rational.
fn eigen_ratio(f: &FourierExpansion, g: &FourierExpansion) -> Option<String> {
    let mut ratio = None;
    for (idx, a) in &f.coefficients {
        if !g.window.contains(idx) {
            continue;
        }
        let q = g.get(idx).to_rational()? / a.to_rational()?;
        match &ratio {
            None => ratio = Some(q),
            Some(r) if *r == q => {}
            Some(_) => return None,
        }
    }
    ratio.map(|r| format_rational(&r))
}

pub(super) fn hecke(a: &HeckeArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let f = load_siegel(&a.input)?;
    let ell = a.ell;
    let mut result = json!({"op": a.op, "ell": ell, "level": f.level, "weight": f.weight});
    let mut summary = Vec::new();
    if matches!(a.op, OpArg::T1) && f.level % ell != 0 {
        let outputs = match g.window {
            Some((n, m)) => Index::semidefinite_box(n, m, f.level),
            None => f.window.indices(f.level),
        };
        let reduced = ReducedLookup::new(&f);
        let source: &dyn CoefficientSource = match &reduced {
            Some(r) => r,
            None => &f,
        };
        let image = apply_t1(source, ell, &outputs)?;
        let computed = image.window.indices(f.level).len();
        let eigen = eigen_ratio(&f, &image);
        summary.push(format!(
            "T(1,1,{ell},{ell}) exact on {computed} indices; eigenvalue {}",
            eigen.as_deref().unwrap_or("none")
        ));
        result["exact"] = json!({"computed": computed, "nonzero": image.coefficients.len(), "eigenvalue": eigen});
        if let Some(path) = &a.out {
            save(path, &Expansion::Siegel(image))?;
        }
        if a.points.is_empty() {
            return Ok(Outcome { passed: true, result, summary });
        }
    } else if a.out.is_some() {
        return Err(CliError::Usage(
            "--out needs the exact T1 image (level prime to l)".into(),
        ));
    }
    let points = points_or(&a.points, eigen_points())?;
    let mut values = Vec::new();
    for z in &points {
        let image = match a.op {
            OpArg::T1 => apply_hecke_numeric(&f, HeckeOp::T1, ell, z, g.precision)?,
            OpArg::T2 => apply_hecke_numeric(&f, HeckeOp::T2, ell, z, g.precision)?,
            OpArg::Al => apply_atkin_lehner_numeric(&f, ell, a.shift, z, g.precision)?,
        };
        let fz = evaluate(&f, z, g.precision)?;
        let ratio = (!fz.value.is_zero()).then(|| image.value / fz.value);
        summary.push(format!(
            "value {:.12e}{:+.12e}i{}",
            image.value.re,
            image.value.im,
            ratio.map(|r| format!(", ratio {:.12e}", r.re)).unwrap_or_default()
        ));
        values.push(json!({
            "point": point_json(z),
            "value": complex_json(image.value),
            "tail": image.tail,
            "f_value": complex_json(fz.value),
            "ratio": ratio.map(complex_json),
        }));
    }
    result["numeric"] = json!(values);
    Ok(Outcome { passed: true, result, summary })
}

fn jacobi_json(j: &JacobiForm) -> Value {
    json!({
        "kind": "jacobi",
        "index": 1,
        "weight": j.weight,
        "max_disc": j.max_disc(),
        "by_discriminant": j.by_disc.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("json");
    std::fs::write(path, text + "\n").map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub(super) fn make_form(a: &MakeFormArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let eis_weight = || match a.weight {
        Some(k @ (4 | 6)) => Ok(k),
        Some(k) => Err(CliError::Usage(format!("Eisenstein weight {k} is not supported (4 or 6)"))),
        None => Err(CliError::Usage("--weight is required for this kind".into())),
    };
    let window = |default: (i64, i64)| match a.disc {
        Some(d) => Window::List(Index::reduced_classes(d).into_iter().collect()),
        None => {
            let (n_max, m_max) = g.window.unwrap_or(default);
            Window::Box { n_max, m_max }
        }
    };
    let terms = |default: usize| a.terms.unwrap_or(default);
    let (summary, result) = match a.kind {
        FormKind::Delta | FormKind::Eisenstein => {
            let f = match a.kind {
                FormKind::Delta => delta_qexp(terms(40)),
                _ => eisenstein_qexp(eis_weight()? as u32, terms(40)),
            };
            save(&a.out, &Expansion::Elliptic(f.clone()))?;
            (
                format!("q-expansion of weight {} to q^{}", f.weight, f.truncation()),
                json!({"weight": f.weight, "level": f.level, "truncation": f.truncation()}),
            )
        }
        FormKind::JacobiEis | FormKind::Phi10 => {
            let j = match a.kind {
                FormKind::Phi10 => phi10(terms(400) as u64),
                _ => jacobi_eisenstein(eis_weight()?, terms(400) as u64)?,
            };
            write_json(&a.out, &jacobi_json(&j))?;
            (
                format!("Jacobi form of weight {} to discriminant {}", j.weight, j.max_disc()),
                json!({"weight": j.weight, "max_disc": j.max_disc()}),
            )
        }
        FormKind::Lift | FormKind::LiftSquare => {
            let (w, f) = if matches!(a.kind, FormKind::Lift) {
                let w = window((12, 12));
                let f = gritsenko_lift(&phi10(required_disc(&w).max(4) as u64), 1, w.clone())?;
                (w, f)
            } else {
                let w = window((6, 6));
                let lift = LiftSource::new(phi10(required_disc(&w).max(4) as u64));
                let sq = ProductSource::new(&lift, &lift).expect("same level");
                (w.clone(), materialize(&sq, &w))
            };
            save(&a.out, &Expansion::Siegel(f.clone()))?;
            (
                format!("Siegel form of weight {}: {} nonzero coefficients", f.weight, f.coefficients.len()),
                json!({
                    "weight": f.weight,
                    "level": f.level,
                    "window": w,
                    "indices": f.window.indices(f.level).len(),
                    "nonzero": f.coefficients.len(),
                }),
            )
        }
    };
    let mut result = result;
    result["kind"] = json!(a.kind);
    result["out"] = json!(a.out);
    Ok(Outcome { passed: true, result, summary: vec![summary] })
}

fn parse_upper_half_plane(s: &str) -> Result<Complex64, CliError> {
    let (x, y) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("point {s:?} must look like x:y")))?;
    let x: f64 = x.trim().parse().map_err(|_| CliError::Usage(format!("bad number {x:?}")))?;
    let y: f64 = y.trim().parse().map_err(|_| CliError::Usage(format!("bad number {y:?}")))?;
    if y <= 0.0 {
        return Err(CliError::Usage(format!("{s:?} is not in the upper half plane")));
    }
    Ok(Complex64::new(x, y))
}

pub(super) fn eval(a: &EvalArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let mut values = Vec::new();
    let mut summary = Vec::new();
    match load(&a.input)? {
        Expansion::Siegel(f) => {
            for s in &a.points {
                let z = super::parse_point(s)?;
                let e = evaluate(&f, &z, g.precision)?;
                summary.push(format!("F({s}) = {:.15e}{:+.15e}i (tail {:.1e})", e.value.re, e.value.im, e.tail));
                values.push(json!({"point": s, "value": complex_json(e.value), "tail": e.tail}));
            }
        }
        Expansion::Elliptic(f) => {
            for s in &a.points {
                let z = parse_upper_half_plane(s)?;
                let v = f.evaluate(z);
                summary.push(format!("f({s}) = {:.15e}{:+.15e}i", v.re, v.im));
                values.push(json!({"point": s, "value": complex_json(v)}));
            }
        }
    }
    Ok(Outcome { passed: true, result: json!({"values": values}), summary })
}
