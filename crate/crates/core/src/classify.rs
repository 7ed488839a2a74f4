//! GL₄(K)-orbit labels of subspaces of Λ²(K⁴).
//!
//! Lines and planes are told apart by the shape of the Pfaffian restricted
//! to them; totally singular planes by whether their points are lines
//! through a common point; subspaces of dimension 4 and 5 through their
//! orthogonal spaces.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::exterior::{self, compound, perp, quadric_to_line, restrict_form, ExteriorError};
use crate::field::Field;
use crate::forms::{
    self, binary_extension, classify_ternary_form, radical_quotient, BinaryQForm, FormsError,
    TernaryClass,
};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("subspace dimension {0} is outside 1..=5")]
    Dimension(usize),
    #[error("cannot classify: {0}")]
    Undecided(&'static str),
    #[error("plane is not totally singular")]
    NotTotallySingular,
    #[error("witness search needs a finite field")]
    Infinite,
    #[error("witness search exhausted its budget of {0} subspaces")]
    Budget(usize),
    #[error("subspace is not in the orbit of the representative")]
    NotInOrbit,
}

impl From<FormsError> for ClassifyError {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::Undecided(why) => ClassifyError::Undecided(why),
            _ => ClassifyError::Undecided("restricted form"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrbitLabel<E> {
    PointOnQ,
    PointOffQ,
    LineE,
    LineT,
    LineS,
    /// Anisotropic line; the restricted form is similar to the norm form of
    /// K[X]/(X² + tX + d).
    LineP1 { t: E, d: E },
    PlaneF,
    PlaneJF,
    PlaneET,
    PlaneES,
    PlaneTS,
    /// Anisotropic plane in the orbit of W^t_{c,d}.
    PlaneP2 { c: E, d: E, t: E },
    /// A singular point plus an anisotropic line of type (t, d).
    PlaneP3 { t: E, d: E },
    PerpOf(Box<OrbitLabel<E>>),
}

impl<E: Clone> OrbitLabel<E> {
    pub fn dim(&self) -> usize {
        use OrbitLabel::*;
        match self {
            PointOnQ | PointOffQ => 1,
            LineE | LineT | LineS | LineP1 { .. } => 2,
            PerpOf(inner) => 6 - inner.dim(),
            _ => 3,
        }
    }

    /// Kernels whose Heisenberg algebra is not reduced: F, E^⊥ and ⟨s01⟩^⊥.
    pub fn is_degenerate(&self) -> bool {
        match self {
            OrbitLabel::PlaneF => true,
            OrbitLabel::PerpOf(inner) => matches!(**inner, OrbitLabel::LineE | OrbitLabel::PointOnQ),
            _ => false,
        }
    }

    /// Stable string tag such as `line:T` or `perp:line:P1(t=0,d=1)`.
    pub fn tag<F: Field<Elem = E>>(&self, f: &F) -> String {
        use OrbitLabel::*;
        match self {
            PointOnQ => "point:s01".into(),
            PointOffQ => "point:s01+s23".into(),
            LineE => "line:E".into(),
            LineT => "line:T".into(),
            LineS => "line:S".into(),
            LineP1 { t, d } => format!("line:P1(t={},d={})", f.format(t), f.format(d)),
            PlaneF => "plane:F".into(),
            PlaneJF => "plane:JF".into(),
            PlaneET => "plane:E+T".into(),
            PlaneES => "plane:E+S".into(),
            PlaneTS => "plane:T+S".into(),
            PlaneP2 { c, d, t } => {
                format!("plane:P2(c={},d={},t={})", f.format(c), f.format(d), f.format(t))
            }
            PlaneP3 { t, d } => format!("plane:P3(t={},d={})", f.format(t), f.format(d)),
            PerpOf(inner) => format!("perp:{}", inner.tag(f)),
        }
    }

    /// Tag followed by `(not reduced)` for degenerate kernels.
    pub fn display<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_degenerate() {
            format!("{} (not reduced)", self.tag(f))
        } else {
            self.tag(f)
        }
    }

}

impl<E: fmt::Debug> fmt::Display for OrbitLabel<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn p1_params<F: Field>(f: &F, q: &BinaryQForm<F::Elem>) -> Result<(F::Elem, F::Elem), ClassifyError> {
    binary_extension(f, q).ok_or(ClassifyError::Undecided("extension invariant"))
}

fn classify_line<F: Field>(f: &F, u: &Subspace<F>) -> Result<OrbitLabel<F::Elem>, ClassifyError> {
    let q = BinaryQForm::from_matrix(f, &restrict_form(f, u));
    if q.is_zero(f) {
        return Ok(OrbitLabel::LineE);
    }
    if f.characteristic() == 2 {
        if f.is_zero(&q.b) {
            // a x² + d y² is a multiple of a square iff d/a or a/d is a square.
            let square = f.is_zero(&q.a) || f.is_zero(&q.d) || f.is_square(&f.div(&q.d, &q.a));
            if square {
                return Ok(OrbitLabel::LineT);
            }
            let (t, d) = p1_params(f, &q)?;
            return Ok(OrbitLabel::LineP1 { t, d });
        }
        let delta = f.div(&f.mul(&q.a, &q.d), &f.square(&q.b));
        return match f.in_wp(&delta) {
            Some(true) => Ok(OrbitLabel::LineS),
            Some(false) => {
                let (t, d) = p1_params(f, &q)?;
                Ok(OrbitLabel::LineP1 { t, d })
            }
            None => Err(ClassifyError::Undecided("℘-membership")),
        };
    }
    let disc = f.sub(&f.square(&q.b), &f.mul(&f.from_int(4), &f.mul(&q.a, &q.d)));
    if f.is_zero(&disc) {
        return Ok(OrbitLabel::LineT);
    }
    if f.is_square(&disc) {
        return Ok(OrbitLabel::LineS);
    }
    let (t, d) = p1_params(f, &q)?;
    Ok(OrbitLabel::LineP1 { t, d })
}

/// F if the lines λ⁻¹(x) for x ∈ U share a point, JF if they lie in a plane.
pub fn plane_type_f_vs_jf<F: Field>(f: &F, u: &Subspace<F>) -> Result<OrbitLabel<F::Elem>, ClassifyError> {
    if u.dim() != 3 || !restrict_form(f, u).is_zero(f) {
        return Err(ClassifyError::NotTotallySingular);
    }
    let lines: Vec<Subspace<F>> = u
        .basis
        .iter()
        .map(|x| quadric_to_line(f, x))
        .collect::<Result<_, ExteriorError>>()
        .map_err(|_| ClassifyError::NotTotallySingular)?;
    let common = lines[0].intersection(f, &lines[1]).intersection(f, &lines[2]);
    Ok(if common.dim() > 0 { OrbitLabel::PlaneF } else { OrbitLabel::PlaneJF })
}

fn classify_plane<F: Field>(f: &F, u: &Subspace<F>) -> Result<OrbitLabel<F::Elem>, ClassifyError> {
    let m = restrict_form(f, u);
    Ok(match classify_ternary_form(f, &m)? {
        TernaryClass::Zero => plane_type_f_vs_jf(f, u)?,
        TernaryClass::RankOneSquare => OrbitLabel::PlaneET,
        TernaryClass::SplitPair => OrbitLabel::PlaneES,
        TernaryClass::ConicNondegenerate => OrbitLabel::PlaneTS,
        TernaryClass::RadicalAnisotropic => {
            let q = radical_quotient(f, &m).ok_or(ClassifyError::Undecided("radical quotient"))?;
            let (t, d) = p1_params(f, &q)?;
            OrbitLabel::PlaneP3 { t, d }
        }
        TernaryClass::Anisotropic => p2_params(f, &m)?,
    })
}

/// Parameters (c, d, t) of a W^t_{c,d} in the orbit of an anisotropic plane.
fn p2_params<F: Field>(f: &F, m: &Matrix<F>) -> Result<OrbitLabel<F::Elem>, ClassifyError> {
    let rep = |x: F::Elem| f.square_class_rep(&x).unwrap_or(x);
    if f.characteristic() != 2 {
        // q|W^0_{c,d} = −⟨1, c, d⟩, and U carries a multiple of ⟨a₁, a₂, a₃⟩.
        let a = forms::diagonalize(f, m);
        let c = rep(f.div(&a[1], &a[0]));
        let d = rep(f.div(&a[2], &a[0]));
        return Ok(OrbitLabel::PlaneP2 { c, d, t: f.zero() });
    }
    // q|W^1_{c,d} = x² + xz + dz² + cy² with radical direction y.
    let q = radical_quotient(f, m).ok_or(ClassifyError::Undecided("radical quotient"))?;
    let gram = forms::polar_gram(f, m);
    let r = crate::linalg::nullspace(f, &gram).remove(0);
    let a = if f.is_zero(&q.a) { q.d.clone() } else { q.a.clone() };
    let delta = f.div(&f.mul(&q.a, &q.d), &f.square(&q.b));
    let c = f.div(&forms::eval(f, m, &r), &a);
    let d = f.wp_rep(&delta).unwrap_or(delta);
    Ok(OrbitLabel::PlaneP2 { c, d, t: f.one() })
}

pub fn classify_subspace<F: Field>(f: &F, u: &Subspace<F>) -> Result<OrbitLabel<F::Elem>, ClassifyError> {
    match u.dim() {
        1 => Ok(if f.is_zero(&exterior::pfaffian(f, &u.basis[0])) {
            OrbitLabel::PointOnQ
        } else {
            OrbitLabel::PointOffQ
        }),
        2 => classify_line(f, u),
        3 => classify_plane(f, u),
        4 | 5 => Ok(OrbitLabel::PerpOf(Box::new(classify_subspace(f, &perp(f, u))?))),
        n => Err(ClassifyError::Dimension(n)),
    }
}

/// Whether two labels name the same orbit. Labels with canonical
/// parameters compare structurally; P2 labels over ℚ compare their
/// quaternion algebras.
pub fn same_orbit<F: Field>(f: &F, x: &OrbitLabel<F::Elem>, y: &OrbitLabel<F::Elem>) -> Option<bool> {
    use OrbitLabel::*;
    match (x, y) {
        (PerpOf(a), PerpOf(b)) => same_orbit(f, a, b),
        (PlaneP2 { c: c1, d: d1, t: t1 }, PlaneP2 { c: c2, d: d2, t: t2 }) => {
            if x == y {
                return Some(true);
            }
            if f.characteristic() != 2 && f.is_zero(t1) && f.is_zero(t2) {
                // ⟨1, c, d⟩ up to similarity is the pure part of ℍ^{−c,−d}.
                let ram = |c: &F::Elem, d: &F::Elem| {
                    let (c, d) = (f.as_rational(c)?, f.as_rational(d)?);
                    crate::field::rational::ramification(&-c, &-d)
                };
                return Some(ram(c1, d1)? == ram(c2, d2)?);
            }
            None
        }
        _ => {
            if x == y {
                Some(true)
            } else if std::mem::discriminant(x) == std::mem::discriminant(y) && !f.is_finite() {
                // Canonical parameters are only guaranteed over fields with
                // canonical square-class and ℘ representatives.
                match x {
                    LineP1 { .. } | PlaneP3 { .. } if f.as_rational(&f.one()).is_none() => None,
                    _ => Some(false),
                }
            } else {
                Some(false)
            }
        }
    }
}

/// The stored representative of each orbit.
pub fn representative<F: Field>(f: &F, label: &OrbitLabel<F::Elem>) -> Subspace<F> {
    use OrbitLabel::*;
    let v = |c: [i64; 6]| exterior::tensor(f, c);
    let lin = |terms: &[(&F::Elem, usize)]| {
        let mut x = vec![f.zero(); 6];
        for (c, i) in terms {
            x[*i] = f.add(&x[*i], c);
        }
        x
    };
    let sp = |vs: Vec<Vec<F::Elem>>| Subspace::new(f, 6, vs);
    let (one, mone) = (f.one(), f.neg(&f.one()));
    match label {
        PointOnQ => sp(vec![v([1, 0, 0, 0, 0, 0])]),
        PointOffQ => sp(vec![v([1, 0, 0, 0, 0, 1])]),
        LineE => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 1, 0, 0, 0, 0])]),
        LineT => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 0, 1, 1, 0, 0])]),
        LineS => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 0, 0, 0, 0, 1])]),
        // P_L = ⟨d s02 − s13, d s03 + d s12 − t s13⟩.
        LineP1 { t, d } => sp(vec![
            lin(&[(d, 1), (&mone, 4)]),
            lin(&[(d, 2), (d, 3), (&f.neg(t), 4)]),
        ]),
        PlaneF => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 1, 0, 0, 0, 0]), v([0, 0, 1, 0, 0, 0])]),
        PlaneJF => sp(vec![v([0, 0, 0, 1, 0, 0]), v([0, 0, 0, 0, 1, 0]), v([0, 0, 0, 0, 0, 1])]),
        PlaneET => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 1, 0, 0, 0, 0]), v([0, 0, 1, 1, 0, 0])]),
        PlaneES => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 1, 0, 0, 0, 0]), v([0, 0, 0, 0, 0, 1])]),
        PlaneTS => sp(vec![v([1, 0, 0, 0, 0, 0]), v([0, 0, 1, 1, 0, 0]), v([0, 0, 0, 0, 0, 1])]),
        // W^t_{c,d} = ⟨s03 − s12, c s01 − s23, s13 + d s02 + t s03⟩.
        PlaneP2 { c, d, t } => sp(vec![
            v([0, 0, 1, -1, 0, 0]),
            lin(&[(c, 0), (&mone, 5)]),
            lin(&[(&one, 4), (d, 1), (t, 2)]),
        ]),
        // P_L⁰ = P_L ⊕ ⟨s01⟩.
        PlaneP3 { t, d } => {
            let mut u = representative(f, &LineP1 { t: t.clone(), d: d.clone() }).basis;
            u.push(v([1, 0, 0, 0, 0, 0]));
            sp(u)
        }
        PerpOf(inner) => perp(f, &representative(f, inner)),
    }
}

/// Generators of GL₄ over a small finite field: transvections I + λE_ij and
/// the torus elements diag(λ, 1, 1, 1).
pub fn gl4_generators<F: Field>(f: &F) -> Option<Vec<Matrix<F>>> {
    let units: Vec<F::Elem> = f.elements()?.into_iter().filter(|x| !f.is_zero(x)).collect();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            for l in &units {
                let mut m = Matrix::identity(f, 4);
                m.set(i, j, l.clone());
                out.push(m);
            }
        }
    }
    for l in &units {
        if !f.is_one(l) {
            let mut m = Matrix::identity(f, 4);
            m.set(0, 0, l.clone());
            out.push(m);
        }
    }
    Some(out)
}

/// A matrix A with A.rep = U, found by breadth-first search over the orbit
/// of the representative of `label`.
pub fn find_witness<F: Field>(
    f: &F,
    u: &Subspace<F>,
    label: &OrbitLabel<F::Elem>,
    budget: usize,
) -> Result<Matrix<F>, ClassifyError> {
    let gens = gl4_generators(f).ok_or(ClassifyError::Infinite)?;
    let comps: Vec<Matrix<F>> = gens.iter().map(|g| compound(f, g)).collect();
    let start = representative(f, label);
    let mut seen: HashMap<Subspace<F>, Matrix<F>> = HashMap::new();
    seen.insert(start.clone(), Matrix::identity(f, 4));
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == *u {
            let w = seen[&x].clone();
            debug_assert_eq!(exterior::act_subspace(f, &w, &representative(f, label)).ok().as_ref(), Some(u));
            return Ok(w);
        }
        for (g, c) in gens.iter().zip(&comps) {
            let y = exterior::act_subspace_unchecked(f, c, &x);
            if !seen.contains_key(&y) {
                if seen.len() >= budget {
                    return Err(ClassifyError::Budget(budget));
                }
                let w = g.mul(f, &seen[&x]);
                seen.insert(y.clone(), w);
                queue.push_back(y);
            }
        }
    }
    Err(ClassifyError::NotInOrbit)
}

/// The canonical finite-field labels of each dimension, used to enumerate
/// orbits over GF(q).
pub fn finite_labels<F: Field>(f: &F) -> Option<Vec<OrbitLabel<F::Elem>>> {
    use OrbitLabel::*;
    f.elements()?;
    let (t, d) = irreducible_quadratic(f)?;
    let lines = vec![LineE, LineT, LineS, LineP1 { t: t.clone(), d: d.clone() }];
    let mut out = vec![PointOnQ, PointOffQ];
    out.extend(lines.iter().cloned());
    out.extend([PlaneF, PlaneJF, PlaneET, PlaneES, PlaneTS, PlaneP3 { t, d }]);
    out.extend(lines.into_iter().map(|l| PerpOf(Box::new(l))));
    out.extend([PerpOf(Box::new(PointOnQ)), PerpOf(Box::new(PointOffQ))]);
    Some(out)
}

/// The canonical (t, d) with X² + tX + d irreducible over a finite field.
pub fn irreducible_quadratic<F: Field>(f: &F) -> Option<(F::Elem, F::Elem)> {
    if f.characteristic() == 2 {
        let d = f.elements()?.into_iter().find(|x| f.in_wp(x) == Some(false))?;
        Some((f.one(), f.wp_rep(&d)?))
    } else {
        // X² + d is irreducible iff −d is not a square.
        let n = f.nonsquare()?;
        Some((f.zero(), f.square_class_rep(&f.neg(&n))?))
    }
}
