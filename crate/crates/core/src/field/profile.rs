//! Per-field invariant data: square classes R_*, the cosets R_℘ of
//! ℘ = {x + x²} and the orbit representatives R₊ of K^□× on K/K^□.

use std::collections::HashSet;

use super::{units, Field, FieldError};

/// A set of representatives: listed for finite fields, a marker otherwise.
/// Infinite sets are never enumerated; membership questions go through the
/// profile's predicates instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSet<E> {
    Finite(Vec<E>),
    Infinite,
}

impl<E> RepSet<E> {
    pub fn len(&self) -> Option<usize> {
        match self {
            RepSet::Finite(v) => Some(v.len()),
            RepSet::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, RepSet::Finite(v) if v.is_empty())
    }
}

#[derive(Clone, Debug)]
pub struct FieldProfile<F: Field> {
    pub field: F,
    pub characteristic: u64,
    pub is_perfect: bool,
    pub is_finite: bool,
    pub square_classes: RepSet<F::Elem>,
    /// Characteristic 2 only.
    pub wp_cosets: Option<RepSet<F::Elem>>,
    /// Characteristic 2 only.
    pub rplus: Option<RepSet<F::Elem>>,
}

impl<F: Field> FieldProfile<F> {
    /// Build the profile; over finite fields every representative set is
    /// checked exhaustively to tile its quotient.
    pub fn new(field: F) -> Self {
        let characteristic = field.characteristic();
        let is_finite = field.is_finite();
        let char2 = characteristic == 2;
        let square_classes = match units(&field) {
            Some(us) => {
                let mut reps: Vec<F::Elem> = Vec::new();
                for x in &us {
                    let r = field.square_class_rep(x).expect("finite square class");
                    if !reps.contains(&r) {
                        reps.push(r);
                    }
                }
                RepSet::Finite(reps)
            }
            None => RepSet::Infinite,
        };
        let wp_cosets = char2.then(|| match field.elements() {
            Some(all) => {
                let mut reps: Vec<F::Elem> = Vec::new();
                for x in &all {
                    let r = field.wp_rep(x).expect("finite wp coset");
                    if !reps.contains(&r) {
                        reps.push(r);
                    }
                }
                RepSet::Finite(reps)
            }
            None => RepSet::Infinite,
        });
        // For a perfect field K^□ = K, so K/K^□ is a single point.
        let rplus = char2.then(|| {
            if field.is_perfect() {
                RepSet::Finite(vec![field.zero()])
            } else {
                RepSet::Infinite
            }
        });
        let is_perfect = field.is_perfect();
        let profile = FieldProfile {
            field,
            characteristic,
            is_perfect,
            is_finite,
            square_classes,
            wp_cosets,
            rplus,
        };
        if is_finite {
            profile.check_tiling();
        }
        profile
    }

    /// Exhaustive tiling checks of the listed representative sets.
    fn check_tiling(&self) {
        let f = &self.field;
        let all = f.elements().expect("finite");
        let us: Vec<F::Elem> = all.iter().filter(|x| !f.is_zero(x)).cloned().collect();
        let squares: HashSet<F::Elem> = us.iter().map(|x| f.square(x)).collect();
        if let RepSet::Finite(reps) = &self.square_classes {
            for x in &us {
                let hits = reps
                    .iter()
                    .filter(|r| squares.contains(&f.div(x, r)))
                    .count();
                assert_eq!(hits, 1, "square classes do not tile K^×");
            }
        }
        if let Some(RepSet::Finite(reps)) = &self.wp_cosets {
            let wp: HashSet<F::Elem> = all.iter().map(|x| f.add(x, &f.square(x))).collect();
            for x in &all {
                let hits = reps.iter().filter(|r| wp.contains(&f.sub(x, r))).count();
                assert_eq!(hits, 1, "℘-cosets do not tile K");
            }
        }
        if let Some(RepSet::Finite(reps)) = &self.rplus {
            // Orbits of nonzero squares acting by multiplication on the
            // cosets of the additive subgroup of squares.
            let sq_all: HashSet<F::Elem> = all.iter().map(|x| f.square(x)).collect();
            let coset_of = |x: &F::Elem| -> Vec<F::Elem> {
                let mut c: Vec<F::Elem> = sq_all.iter().map(|s| f.add(x, s)).collect();
                c.sort_by_key(|e| f.index_of(e));
                c
            };
            let mut seen: Vec<Vec<F::Elem>> = Vec::new();
            let mut orbit_count = 0;
            for x in &all {
                let c = coset_of(x);
                if seen.contains(&c) {
                    continue;
                }
                orbit_count += 1;
                for s in &squares {
                    let img = coset_of(&f.mul(s, x));
                    if !seen.contains(&img) {
                        seen.push(img);
                    }
                }
            }
            assert_eq!(orbit_count, reps.len(), "R₊ does not match the orbit count");
        }
    }

    pub fn same_square_class(&self, x: &F::Elem, y: &F::Elem) -> bool {
        let f = &self.field;
        if f.is_zero(x) || f.is_zero(y) {
            return f.is_zero(x) && f.is_zero(y);
        }
        f.is_square(&f.div(x, y))
    }

    /// Canonical representative of `x + ℘`.
    pub fn wp_coset(&self, x: &F::Elem) -> Result<Option<F::Elem>, FieldError> {
        self.require_char2()?;
        Ok(self.field.wp_rep(x))
    }

    /// Whether `x − y ∈ ℘`; `None` when undecided.
    pub fn same_wp_coset(&self, x: &F::Elem, y: &F::Elem) -> Result<Option<bool>, FieldError> {
        self.require_char2()?;
        Ok(self.field.in_wp(&self.field.sub(x, y)))
    }

    fn require_char2(&self) -> Result<(), FieldError> {
        if self.characteristic != 2 {
            return Err(FieldError::Unsupported(format!(
                "℘-cosets need characteristic 2, {} has characteristic {}",
                self.field.name(),
                self.characteristic
            )));
        }
        Ok(())
    }

    pub fn r_star(&self) -> Option<usize> {
        self.square_classes.len()
    }

    pub fn r_wp(&self) -> Option<usize> {
        self.wp_cosets.as_ref().and_then(|r| r.len())
    }

    pub fn r_plus(&self) -> Option<usize> {
        self.rplus.as_ref().and_then(|r| r.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, FunctionField, Gf, Rationals};

    #[test]
    fn gf3_square_classes() {
        let p = FieldProfile::new(FiniteField::prime(3).unwrap());
        assert_eq!(p.square_classes, RepSet::Finite(vec![Gf(1), Gf(2)]));
        assert!(p.wp_cosets.is_none());
    }

    #[test]
    fn gf2_wp_cosets() {
        let p = FieldProfile::new(FiniteField::prime(2).unwrap());
        assert_eq!(p.wp_cosets, Some(RepSet::Finite(vec![Gf(0), Gf(1)])));
        assert_eq!(p.r_star(), Some(1));
        assert_eq!(p.r_plus(), Some(1));
        assert_eq!(p.same_wp_coset(&Gf(1), &Gf(0)).unwrap(), Some(false));
    }

    #[test]
    fn gf4_invariants() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let p = FieldProfile::new(f.clone());
        assert_eq!(p.r_star(), Some(1));
        assert_eq!(p.r_wp(), Some(2));
        assert_eq!(p.same_wp_coset(&Gf(1), &Gf(0)).unwrap(), Some(true));
        let a = f.parse("x").unwrap();
        let shift = f.add(&a, &f.square(&a));
        let b = f.parse("x+1").unwrap();
        assert_eq!(p.same_wp_coset(&b, &f.add(&b, &shift)).unwrap(), Some(true));
    }

    #[test]
    fn odd_fields_have_two_square_classes() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let prof = FieldProfile::new(FiniteField::new(p, k, None).unwrap());
            assert_eq!(prof.r_star(), Some(2));
        }
        for k in 1..=4 {
            let prof = FieldProfile::new(FiniteField::new(2, k, None).unwrap());
            assert_eq!((prof.r_star(), prof.r_wp(), prof.r_plus()), (Some(1), Some(2), Some(1)));
        }
    }

    #[test]
    fn infinite_fields_use_markers() {
        let p = FieldProfile::new(Rationals);
        assert_eq!(p.square_classes, RepSet::Infinite);
        assert!(p.wp_coset(&Rationals.one()).is_err());
        let p = FieldProfile::new(FunctionField::new(2).unwrap());
        assert_eq!(p.rplus, Some(RepSet::Infinite));
        assert_eq!(p.wp_cosets, Some(RepSet::Infinite));
    }
}
