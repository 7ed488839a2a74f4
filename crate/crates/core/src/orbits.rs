//! Brute-force orbit and stabilizer computations over small finite fields.
//!
//! Points of Kⁿ are indexed in base q by the field's canonical element
//! order, first coordinate least significant.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use crate::classify::{representative, OrbitLabel};
use crate::exterior::compound;
use crate::field::{units, Field, FieldProfile, QuadExtension};
use crate::forms::{HermitianForm, L2};
use crate::heisenberg::{shape_test, sigma_generators, HeisError, HeisenbergAlgebra};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitsError {
    #[error("brute force needs a finite field")]
    Infinite,
    #[error("search space of {0} elements exceeds the budget")]
    Budget(u128),
    #[error("unsupported field {0}")]
    Unsupported(String),
    #[error(transparent)]
    Heis(#[from] HeisError),
}

/// Linear action of a list of matrices on Kⁿ.
#[derive(Clone, Debug)]
pub struct ActionSpec<F: Field> {
    pub generators: Vec<Matrix<F>>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport<E> {
    pub orbit_count: usize,
    /// Least element of each orbit in index order; the zero vector first.
    pub reps: Vec<Vec<E>>,
    pub sizes: Vec<u64>,
}

/// Enumerates Kⁿ by index.
pub struct PointIndex<F: Field> {
    field: F,
    elems: Vec<F::Elem>,
    pub dim: usize,
}

impl<F: Field> PointIndex<F> {
    pub fn new(f: &F, dim: usize) -> Result<Self, OrbitsError> {
        let elems = f.elements().ok_or(OrbitsError::Infinite)?;
        Ok(PointIndex { field: f.clone(), elems, dim })
    }

    pub fn size(&self) -> u128 {
        (self.elems.len() as u128).pow(self.dim as u32)
    }

    pub fn point(&self, mut i: usize) -> Vec<F::Elem> {
        let q = self.elems.len();
        (0..self.dim)
            .map(|_| {
                let e = self.elems[i % q].clone();
                i /= q;
                e
            })
            .collect()
    }

    pub fn index(&self, v: &[F::Elem]) -> usize {
        let q = self.elems.len();
        v.iter().rev().fold(0, |acc, x| acc * q + self.field.index_of(x).expect("finite element"))
    }
}

pub fn enumerate_orbits<F: Field>(f: &F, spec: &ActionSpec<F>, budget: u64) -> Result<OrbitReport<F::Elem>, OrbitsError> {
    let idx = PointIndex::new(f, spec.dim)?;
    if idx.size() > budget as u128 {
        return Err(OrbitsError::Budget(idx.size()));
    }
    let size = idx.size() as usize;
    let mut orbit = vec![u32::MAX; size];
    let (mut reps, mut sizes) = (Vec::new(), Vec::new());
    for start in 0..size {
        if orbit[start] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        orbit[start] = id;
        let mut count = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let v = idx.point(i);
            for g in &spec.generators {
                let j = idx.index(&g.mul_vec(f, &v));
                if orbit[j] == u32::MAX {
                    orbit[j] = id;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        reps.push(idx.point(start));
        sizes.push(count);
    }
    // Every orbit is closed under every generator.
    for (i, &o) in orbit.iter().enumerate() {
        let v = idx.point(i);
        for g in &spec.generators {
            assert_eq!(orbit[idx.index(&g.mul_vec(f, &v))], o, "orbit not closed");
        }
    }
    debug_assert_eq!(sizes.iter().sum::<u64>() as usize, size);
    Ok(OrbitReport { orbit_count: reps.len(), reps, sizes })
}

/// |GL_n(q)|.
pub fn gl_order(q: u64, n: u32) -> u128 {
    let qn = (q as u128).pow(n);
    (0..n).map(|i| qn - (q as u128).pow(i)).product()
}

/// Calls `visit` on every invertible n×n matrix, rows chosen in index
/// order; stops early when `visit` breaks. Returns the number visited.
pub fn for_each_gl<F: Field>(
    f: &F,
    n: usize,
    budget: u128,
    mut visit: impl FnMut(&Matrix<F>) -> ControlFlow<()>,
) -> Result<u128, OrbitsError> {
    let idx = PointIndex::new(f, n)?;
    let q = f.order().unwrap();
    if gl_order(q, n as u32) > budget {
        return Err(OrbitsError::Budget(gl_order(q, n as u32)));
    }
    let points: Vec<Vec<F::Elem>> = (0..idx.size() as usize).map(|i| idx.point(i)).collect();
    let scalars = f.elements().unwrap();
    let mut rows: Vec<usize> = Vec::with_capacity(n);
    let mut count = 0u128;
    let span0 = vec![0usize];
    let mut stop = false;
    gl_rec(f, &idx, &points, &scalars, n, &span0, &mut rows, &mut count, &mut stop, &mut visit);
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn gl_rec<F: Field>(
    f: &F,
    idx: &PointIndex<F>,
    points: &[Vec<F::Elem>],
    scalars: &[F::Elem],
    n: usize,
    span: &[usize],
    rows: &mut Vec<usize>,
    count: &mut u128,
    stop: &mut bool,
    visit: &mut impl FnMut(&Matrix<F>) -> ControlFlow<()>,
) {
    if rows.len() == n {
        let m = Matrix::from_rows(rows.iter().map(|&r| points[r].clone()).collect());
        *count += 1;
        if visit(&m).is_break() {
            *stop = true;
        }
        return;
    }
    let mut in_span = vec![false; points.len()];
    for &s in span {
        in_span[s] = true;
    }
    for r in 0..points.len() {
        if in_span[r] {
            continue;
        }
        let next: Vec<usize> = if rows.len() + 1 < n {
            let mut out = Vec::with_capacity(span.len() * scalars.len());
            for &s in span {
                for c in scalars {
                    let v: Vec<F::Elem> = points[s]
                        .iter()
                        .zip(&points[r])
                        .map(|(a, b)| f.add(a, &f.mul(c, b)))
                        .collect();
                    out.push(idx.index(&v));
                }
            }
            out
        } else {
            Vec::new()
        };
        rows.push(r);
        gl_rec(f, idx, points, scalars, n, &next, rows, count, stop, visit);
        rows.pop();
        if *stop {
            return;
        }
    }
}

/// Whether the matrix with compound `c` maps `u` into itself.
pub fn stabilizes_compound<F: Field>(f: &F, c: &Matrix<F>, u: &Subspace<F>) -> bool {
    u.basis.iter().all(|x| u.contains(f, &c.mul_vec(f, x)))
}

/// All elements of GL₄(K) fixing `u`, by a full scan.
pub fn brute_stabilizer<F: Field>(f: &F, u: &Subspace<F>, budget: u128) -> Result<Vec<Matrix<F>>, OrbitsError> {
    let mut out = Vec::new();
    for_each_gl(f, 4, budget, |m| {
        if stabilizes_compound(f, &compound(f, m), u) {
            out.push(m.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Result of comparing the closed-form membership test with direct
/// stabilization over a whole general linear group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateScan {
    pub kernel: String,
    /// Number of matrices stabilizing the kernel.
    pub stabilizer_order: u64,
    /// Matrices where the two tests disagree.
    pub disagreements: u64,
}

/// One pass over GL₄(K) checking every label's membership test against
/// direct stabilization of its representative kernel.
pub fn predicate_scan<F: Field>(
    f: &F,
    labels: &[OrbitLabel<F::Elem>],
    budget: u128,
) -> Result<Vec<PredicateScan>, OrbitsError> {
    let kernels: Vec<Subspace<F>> = labels.iter().map(|l| representative(f, l)).collect();
    let mut out: Vec<PredicateScan> = labels
        .iter()
        .map(|l| PredicateScan { kernel: l.tag(f), stabilizer_order: 0, disagreements: 0 })
        .collect();
    for_each_gl(f, 4, budget, |m| {
        let c = compound(f, m);
        for ((label, u), row) in labels.iter().zip(&kernels).zip(out.iter_mut()) {
            let direct = stabilizes_compound(f, &c, u);
            row.stabilizer_order += direct as u64;
            if direct != shape_test(f, label, m) {
                row.disagreements += 1;
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The group generated by `gens`, as an explicit set.
pub fn generate_group<F: Field>(f: &F, gens: &[Matrix<F>], budget: usize) -> Result<HashSet<Matrix<F>>, OrbitsError> {
    let n = gens.first().map_or(4, |g| g.rows);
    let id = Matrix::identity(f, n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(f, &x);
            if !seen.contains(&y) {
                if seen.len() >= budget {
                    return Err(OrbitsError::Budget(seen.len() as u128));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Orbit counts of Σ on V ∖ {0} and Z ∖ {0}, and ω = ω_V + ω_Z + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaCounts {
    pub omega_v: usize,
    pub omega_z: usize,
    pub omega: usize,
}

/// ω of the algebra with the given kernel under the group generated by
/// `sigma_gens`. Points (v, z) with v ≠ 0 are moved along the whole fiber
/// over v by the maps (id, τ), so they contribute the nonzero Σ-orbits on V.
pub fn omega_counts<F: Field>(
    f: &F,
    kernel: &Subspace<F>,
    sigma_gens: &[Matrix<F>],
) -> Result<OmegaCounts, OrbitsError> {
    let h = HeisenbergAlgebra::new(f, 4, kernel.clone())?;
    if !h.is_reduced() {
        return Err(HeisError::NotReduced(format!("of dimension {}", kernel.dim())).into());
    }
    let primes = sigma_gens.iter().map(|g| h.induced_sigma_prime(g)).collect::<Result<Vec<_>, _>>()?;
    let on_v = enumerate_orbits(f, &ActionSpec { generators: sigma_gens.to_vec(), dim: 4 }, 1 << 24)?;
    let on_z = enumerate_orbits(f, &ActionSpec { generators: primes, dim: h.z_dim() }, 1 << 24)?;
    let (omega_v, omega_z) = (on_v.orbit_count - 1, on_z.orbit_count - 1);
    Ok(OmegaCounts { omega_v, omega_z, omega: omega_v + omega_z + 1 })
}

/// Number of GL₂(L)-classes of nonzero hermitian forms on L², by orbit
/// enumeration of M ↦ Ā′MA.
pub fn hermitian_class_count<F: Field>(ext: &QuadExtension<F>) -> Result<usize, OrbitsError> {
    let f = &ext.base;
    let ls = ext.elements().ok_or(OrbitsError::Infinite)?;
    let ks = f.elements().ok_or(OrbitsError::Infinite)?;
    let mut forms: Vec<L2<F::Elem>> = Vec::new();
    for a in &ks {
        for c in &ks {
            for b in &ls {
                forms.push([[ext.from_base(a.clone()), b.clone()], [ext.conj(b), ext.from_base(c.clone())]]);
            }
        }
    }
    let (one, zero) = (ext.one(), ext.zero());
    let mut gens: Vec<L2<F::Elem>> = Vec::new();
    for l in ls.iter().filter(|l| !ext.is_zero(l)) {
        gens.push([[one.clone(), l.clone()], [zero.clone(), one.clone()]]);
        gens.push([[one.clone(), zero.clone()], [l.clone(), one.clone()]]);
        gens.push([[l.clone(), zero.clone()], [zero.clone(), one.clone()]]);
    }
    let act = |a: &L2<F::Elem>, m: &L2<F::Elem>| -> L2<F::Elem> {
        // Ā′ M A
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = ext.zero();
                for k in 0..2 {
                    for l in 0..2 {
                        let t = ext.mul(&ext.mul(&ext.conj(&a[k][i]), &m[k][l]), &a[l][j]);
                        s = ext.add(&s, &t);
                    }
                }
                s
            })
        })
    };
    let mut seen: HashSet<L2<F::Elem>> = HashSet::new();
    let mut classes = 0;
    for start in forms {
        if seen.contains(&start) || start.iter().flatten().all(|x| ext.is_zero(x)) {
            continue;
        }
        classes += 1;
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let y = act(g, &m);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(classes)
}

/// |K^× / N(L^×)⟨−1⟩| by listing norms.
pub fn norm_class_count<F: Field>(ext: &QuadExtension<F>) -> Result<usize, OrbitsError> {
    let f = &ext.base;
    let ks = units(f).ok_or(OrbitsError::Infinite)?;
    let ls = ext.elements().ok_or(OrbitsError::Infinite)?;
    let mut group: HashSet<F::Elem> = ls.iter().filter(|x| !ext.is_zero(x)).map(|x| ext.norm(x)).collect();
    group.extend(group.clone().into_iter().map(|x| f.neg(&x)).collect::<Vec<_>>());
    Ok(ks.len() / group.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub kernel: String,
    pub formula: &'static str,
    pub expected: usize,
    pub counts: OmegaCounts,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub field: String,
    pub rows: Vec<TableRow>,
    /// Field invariants used to instantiate the formulas.
    pub invariants: Vec<(&'static str, usize)>,
}

impl TableReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }
}

/// Rows of the ω table realizable over a finite field of order at most 4.
/// Rows needing a quaternion division algebra or an inseparable extension
/// do not occur over finite fields.
pub fn verify_table<F: Field>(f: &F) -> Result<TableReport, OrbitsError> {
    let q = f.order().ok_or(OrbitsError::Infinite)?;
    if q > 4 {
        return Err(OrbitsError::Unsupported(f.name()));
    }
    let profile = FieldProfile::new(f.clone());
    let char2 = f.characteristic() == 2;
    let r_star = profile.r_star().unwrap();
    let (r_wp, r_plus) = (profile.r_wp().unwrap_or(0), profile.r_plus().unwrap_or(0));
    let (t, d) = crate::classify::irreducible_quadratic(f).ok_or(OrbitsError::Unsupported(f.name()))?;
    let ext = QuadExtension::new(f.clone(), t.clone(), d.clone()).map_err(|_| OrbitsError::Unsupported(f.name()))?;
    let hf = hermitian_class_count(&ext)?;
    let r_n = norm_class_count(&ext)?;
    use OrbitLabel::*;
    let perp = |l: OrbitLabel<F::Elem>| PerpOf(Box::new(l));
    let p_l = LineP1 { t: t.clone(), d: d.clone() };
    let mut rows: Vec<(OrbitLabel<F::Elem>, &'static str, usize)> = vec![
        (PointOnQ, "6", 6),
        (perp(PointOffQ), "3", 3),
    ];
    rows.push(if char2 {
        (PointOffQ, "4+|R+|+|R_wp|", 4 + r_plus + r_wp)
    } else {
        (PointOffQ, "3+|R_*|", 3 + r_star)
    });
    rows.extend([
        (LineE, "7", 7),
        (LineT, "6", 6),
        (perp(LineT), "5", 5),
        (LineS, "5", 5),
        (perp(LineS), "5", 5),
        (PlaneJF, "4", 4),
        (PlaneET, "6", 6),
        (PlaneES, "8", 8),
    ]);
    rows.push(if char2 {
        (PlaneTS, "4+|R_*|+|R_wp|", 4 + r_star + r_wp)
    } else {
        (PlaneTS, "4+|R_*|", 4 + r_star)
    });
    rows.extend([
        (perp(p_l.clone()), "3", 3),
        (p_l, "2+HF", 2 + hf),
        (PlaneP3 { t, d }, "4+|R_N|", 4 + r_n),
    ]);
    let mut out = Vec::new();
    for (label, formula, expected) in rows {
        let gens = sigma_generators(f, &label)?;
        let counts = omega_counts(f, &representative(f, &label), &gens.matrices)?;
        out.push(TableRow { kernel: label.tag(f), formula, expected, counts, pass: counts.omega == expected });
    }
    let mut invariants = vec![("|R_*|", r_star), ("HF", hf), ("|R_N|", r_n)];
    if char2 {
        invariants.extend([("|R_wp|", r_wp), ("|R+|", r_plus)]);
    }
    Ok(TableReport { field: f.name(), rows: out, invariants })
}

/// All k-dimensional subspaces of Kⁿ, one per reduced echelon form.
pub fn grassmannian<F: Field>(f: &F, n: usize, k: usize) -> Result<Vec<Subspace<F>>, OrbitsError> {
    let elems = f.elements().ok_or(OrbitsError::Infinite)?;
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // Free entries: row r, column c > pivots[r], c not a pivot.
        let cells: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0usize; cells.len()];
        loop {
            let mut rows = vec![vec![f.zero(); n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = f.one();
            }
            for (&(r, c), &dg) in cells.iter().zip(&digits) {
                rows[r][c] = elems[dg].clone();
            }
            out.push(Subspace::new(f, n, rows));
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Orbits of the group generated by 4×4 matrices on a set of subspaces of
/// Λ²(K⁴) closed under the action; returns the orbit index of each subspace.
pub fn subspace_orbits<F: Field>(f: &F, gens: &[Matrix<F>], spaces: &[Subspace<F>]) -> Vec<usize> {
    let comps: Vec<Matrix<F>> = gens.iter().map(|g| compound(f, g)).collect();
    let pos: std::collections::HashMap<&Subspace<F>, usize> =
        spaces.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut orbit = vec![usize::MAX; spaces.len()];
    let mut next = 0;
    for start in 0..spaces.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for c in &comps {
                let image = Subspace::new(f, 6, spaces[i].basis.iter().map(|x| c.mul_vec(f, x)).collect());
                let j = pos[&image];
                if orbit[j] == usize::MAX {
                    orbit[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    orbit
}

/// Hermitian forms equivalent under the module's decision procedure, used to
/// cross-check [`hermitian_class_count`].
pub fn hermitian_classes_by_invariants<F: Field>(ext: &QuadExtension<F>) -> Option<usize> {
    let f = &ext.base;
    let ls = ext.elements()?;
    let ks = f.elements()?;
    let mut reps: Vec<HermitianForm<F>> = Vec::new();
    for a in &ks {
        for c in &ks {
            for b in &ls {
                let gram: L2<F::Elem> =
                    [[ext.from_base(a.clone()), b.clone()], [ext.conj(b), ext.from_base(c.clone())]];
                let h = HermitianForm::new(ext.clone(), gram).ok()?;
                if h.rank() == 0 {
                    continue;
                }
                let mut known = false;
                for r in &reps {
                    if crate::forms::hermitian_equivalent(r, &h)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    reps.push(h);
                }
            }
        }
    }
    Some(reps.len())
}
