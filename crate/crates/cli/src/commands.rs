use heis_core::classify::{find_witness, representative};
use heis_core::exterior::compound;
use heis_core::forms::{
    arf, binary_equivalent_char2, binary_forms_equivalent_char2, hermitian_class, is_diagonalizable,
    HermitianClass,
};
use heis_core::heisenberg::{membership_predicate, sigma_generators};
use heis_core::orbits::{generate_group, omega_counts, stabilizes_compound, verify_table};
use heis_core::{
    classify_subspace, BinaryQForm, Field, HermitianForm, Matrix, OrbitLabel, QuadExtension, QuatAlgebra,
    QuatError, Quaternion, Subspace,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CliError, INFINITE, PARSE, SPLIT, TABLE_MISMATCH};
use crate::input::{self, elem, get, matrix_json, vector, vector_json};

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub budget: u64,
    pub seed: u64,
    pub sample: u64,
}

/// A report body, and the error to exit with after printing it.
pub type Outcome = (Value, Option<CliError>);

fn refinement<F: Field>(f: &F, label: &OrbitLabel<F::Elem>) -> Value {
    match label {
        OrbitLabel::LineP1 { t, d } | OrbitLabel::PlaneP3 { t, d } => {
            json!({"t": f.format(t), "d": f.format(d)})
        }
        OrbitLabel::PlaneP2 { c, d, t } => json!({"c": f.format(c), "d": f.format(d), "t": f.format(t)}),
        OrbitLabel::PerpOf(inner) => refinement(f, inner),
        _ => Value::Null,
    }
}

pub fn classify<F: Field>(f: &F, cfg: &Config, input: &Value) -> Result<Outcome, CliError> {
    let u = input::subspace(f, input)?;
    let label = classify_subspace(f, &u)?;
    let witness = if f.is_finite() {
        find_witness(f, &u, &label, cfg.budget as usize).ok().map(|w| matrix_json(f, &w))
    } else {
        None
    };
    let body = json!({
        "label": label.display(f),
        "tag": label.tag(f),
        "dim": u.dim(),
        "reduced": !label.is_degenerate(),
        "refinement": refinement(f, &label),
        "witness": witness,
    });
    Ok((body, None))
}

fn label_of<F: Field>(f: &F, u: &Subspace<F>) -> Result<OrbitLabel<F::Elem>, CliError> {
    let label = classify_subspace(f, u)?;
    if label.is_degenerate() {
        return Err(CliError::new(
            crate::error::DEGENERATE,
            format!("kernel {} gives an algebra that is not reduced", label.tag(f)),
        ));
    }
    Ok(label)
}

/// Membership test against direct stabilization: random words in the
/// generators must pass, random matrices must pass exactly when they fix
/// the kernel.
fn predicate_check<F: Field>(
    f: &F,
    label: &OrbitLabel<F::Elem>,
    gens: &[Matrix<F>],
    cfg: &Config,
) -> Value {
    let rep = representative(f, label);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut members, mut disagreements) = (0u64, 0u64);
    for _ in 0..cfg.sample {
        let mut word = Matrix::identity(f, 4);
        for _ in 0..rng.gen_range(1..=6) {
            word = gens[rng.gen_range(0..gens.len())].mul(f, &word);
        }
        disagreements += !membership_predicate(f, label, &word) as u64;
        let a = Matrix::from_fn(4, 4, |_, _| f.random(&mut rng));
        let direct = a.is_invertible(f) && stabilizes_compound(f, &compound(f, &a), &rep);
        members += direct as u64;
        disagreements += (direct != membership_predicate(f, label, &a)) as u64;
    }
    json!({"words": cfg.sample, "random_matrices": cfg.sample, "random_members": members, "disagreements": disagreements})
}

pub fn aut<F: Field>(f: &F, cfg: &Config, input: &Value) -> Result<Outcome, CliError> {
    let u = input::subspace(f, input)?;
    let label = label_of(f, &u)?;
    let gens = sigma_generators(f, &label)?;
    let rep = representative(f, &label);
    // Generators for the input kernel are the conjugates by a witness A with A.rep = U.
    let witness = if u == rep {
        Some(Matrix::identity(f, 4))
    } else if f.is_finite() {
        find_witness(f, &u, &label, cfg.budget as usize).ok()
    } else {
        None
    };
    let (frame, matrices) = match &witness {
        Some(w) => {
            let wi = w.inverse(f).expect("witness is invertible");
            ("input", gens.matrices.iter().map(|g| w.mul(f, g).mul(f, &wi)).collect::<Vec<_>>())
        }
        None => ("representative", gens.matrices.clone()),
    };
    let order = if f.is_finite() {
        generate_group(f, &matrices, cfg.budget as usize).ok().map(|g| g.len())
    } else {
        None
    };
    let body = json!({
        "label": label.tag(f),
        "predicate": gens.name,
        "frame": frame,
        "representative": rep.format(f),
        "generator_count": matrices.len(),
        "generators": matrices.iter().map(|m| matrix_json(f, m)).collect::<Vec<_>>(),
        "order": order,
        "predicate_check": predicate_check(f, &label, &gens.matrices, cfg),
    });
    Ok((body, None))
}

pub fn orbits<F: Field>(f: &F, _cfg: &Config, input: &Value) -> Result<Outcome, CliError> {
    let q = f.order().ok_or_else(|| CliError::new(INFINITE, "orbit counts need a finite field"))?;
    let u = input::subspace(f, input)?;
    let label = label_of(f, &u)?;
    let gens = sigma_generators(f, &label)?;
    let counts = omega_counts(f, &representative(f, &label), &gens.matrices)?;
    let tag = label.tag(f);
    let row = if q <= 4 {
        verify_table(f)?.rows.into_iter().find(|r| r.kernel == tag)
    } else {
        None
    };
    let body = json!({
        "field": f.name(),
        "kernel_label": tag,
        "omega_v": counts.omega_v,
        "omega_z": counts.omega_z,
        "omega": counts.omega,
        "expected": row.as_ref().map(|r| r.expected),
        "pass": row.as_ref().map(|r| r.pass),
    });
    Ok((body, None))
}

pub fn verify<F: Field>(f: &F, _cfg: &Config) -> Result<Outcome, CliError> {
    let report = verify_table(f)?;
    let failures: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} omega={} (table {})", r.kernel, r.counts.omega, r.expected))
        .collect();
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "kernel": r.kernel,
                "formula": r.formula,
                "expected": r.expected,
                "omega_v": r.counts.omega_v,
                "omega_z": r.counts.omega_z,
                "omega": r.counts.omega,
                "pass": r.pass,
            })
        })
        .collect();
    let invariants: serde_json::Map<String, Value> =
        report.invariants.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let n = report.rows.len();
    let body = json!({
        "invariants": invariants,
        "rows": rows,
        "summary": format!("{n} rows, {n} checked, {} failures", failures.len()),
    });
    let err = (!failures.is_empty())
        .then(|| CliError::new(TABLE_MISMATCH, format!("table mismatch: {}", failures.join(", "))));
    Ok((body, err))
}

fn quaternion<F: Field>(f: &F, v: &Value) -> Result<Quaternion<F::Elem>, CliError> {
    let x = vector(f, v, 4)?;
    Ok(std::array::from_fn(|i| x[i].clone()))
}

const SPLIT_NOTE: &str = "norm and trace do not determine conjugacy in a split algebra: \
    [[0,-1],[1,2]] and the identity matrix share norm 1 and trace 2 but are not conjugate";

pub fn conj<F: Field>(f: &F, _cfg: &Config, input: &Value) -> Result<Outcome, CliError> {
    let params = vector(f, get(input, "algebra")?, 2)?;
    let (d, c) = (f.neg(&params[0]), f.neg(&params[1]));
    let h = match input.get("t") {
        Some(t) => QuatAlgebra::with_t(f.clone(), elem(f, t)?, d, c)?,
        None => QuatAlgebra::new(f.clone(), d, c)?,
    };
    let v = quaternion(f, get(input, "v")?)?;
    let x = quaternion(f, get(input, "x")?)?;
    let pair = match (input.get("w"), input.get("y")) {
        (Some(w), Some(y)) => Some((quaternion(f, w)?, quaternion(f, y)?)),
        (None, None) => None,
        _ => return Err(CliError::parse("\"w\" and \"y\" go together")),
    };
    let solved = match &pair {
        Some((w, y)) => h.pair_conjugate_solver(&v, w, &x, y),
        None => h.conjugate_solver(&v, &x),
    };
    let a = match solved {
        Ok(a) => a,
        Err(QuatError::Split) => {
            return Err(CliError::new(SPLIT, format!("{} is split; {SPLIT_NOTE}", h.label())));
        }
        Err(QuatError::Commutative) => {
            return Err(CliError::new(PARSE, format!("{} is commutative", h.label())));
        }
        Err(
            e @ (QuatError::NormMismatch(_)
            | QuatError::TraceMismatch(_)
            | QuatError::PolarMismatch
            | QuatError::Dependent(..)),
        ) => {
            let body = json!({"algebra": h.label(), "conjugate": false, "reason": e.to_string()});
            return Ok((body, None));
        }
        Err(e) => return Err(e.into()),
    };
    let image = |z: &Quaternion<F::Elem>| h.format(&h.conjugate_by(&a, z).expect("a is a unit"));
    let mut check = vec![json!({"a v a^-1": image(&v), "x": h.format(&x)})];
    if let Some((w, y)) = &pair {
        check.push(json!({"a w a^-1": image(w), "y": h.format(y)}));
    }
    let body = json!({
        "algebra": h.label(),
        "conjugate": true,
        "a": h.format(&a),
        "a_coordinates": vector_json(f, &a),
        "check": check,
    });
    Ok((body, None))
}

fn binary_form<F: Field>(f: &F, v: &Value) -> Result<BinaryQForm<F::Elem>, CliError> {
    let c = vector(f, v, 3)?;
    Ok(BinaryQForm::new(c[0].clone(), c[1].clone(), c[2].clone()))
}

fn arf_json<F: Field>(f: &F, q: &BinaryQForm<F::Elem>) -> Result<Value, CliError> {
    if is_diagonalizable(f, q)? {
        return Ok(json!({"diagonalizable": true, "arf": null, "arf_rep": null}));
    }
    let a = arf(f, q)?;
    Ok(json!({"diagonalizable": false, "arf": f.format(&a.value), "arf_rep": a.rep.map(|r| f.format(&r))}))
}

fn hermitian_json<F: Field>(f: &F, v: &Value) -> Result<Value, CliError> {
    let ext = vector(f, get(v, "ext")?, 2)?;
    let diag = vector(f, get(v, "diag")?, 2)?;
    let l = QuadExtension::new(f.clone(), ext[0].clone(), ext[1].clone())?;
    let name = l.label();
    let h = HermitianForm::diag(l, diag[0].clone(), diag[1].clone())?;
    let class = hermitian_class(&h).map(|c| match c {
        HermitianClass::Zero => "zero".to_string(),
        HermitianClass::Degenerate(r) => format!("degenerate(r={})", f.format(&r)),
        HermitianClass::Isotropic => "isotropic".to_string(),
        HermitianClass::Anisotropic { det_rep, scale_rep } => {
            format!("anisotropic(det={},scale={})", f.format(&det_rep), f.format(&scale_rep))
        }
    });
    Ok(json!({"extension": name, "rank": h.rank(), "isotropic": h.is_isotropic(), "class": class}))
}

pub fn forms<F: Field>(f: &F, _cfg: &Config, input: &Value) -> Result<Outcome, CliError> {
    let body = if let Some(v) = input.get("form") {
        arf_json(f, &binary_form(f, v)?)?
    } else if let Some(v) = input.get("forms") {
        let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| CliError::parse("\"forms\" must hold two forms"))?;
        let (q, r) = (binary_form(f, &pair[0])?, binary_form(f, &pair[1])?);
        let equivalent = binary_forms_equivalent_char2(f, &q, &r)?;
        let witness = match binary_equivalent_char2(f, &q, &r) {
            Ok(e) => e.witness.map(|w| matrix_json(f, &w)),
            Err(_) => None,
        };
        json!({"equivalent": equivalent, "witness": witness, "invariants": [arf_json(f, &q)?, arf_json(f, &r)?]})
    } else if let Some(v) = input.get("hermitian") {
        hermitian_json(f, v)?
    } else {
        return Err(CliError::parse("forms input needs \"form\", \"forms\" or \"hermitian\""));
    };
    Ok((body, None))
}
