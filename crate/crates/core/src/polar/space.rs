//! The polar space of isotropic or singular points of a form.

use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::PointSet;
use crate::field::{Elem, Field};
use crate::forms::{self, Form, FormError};
use crate::linalg::{self, Subspace, Vector};

use super::geometry::{Geometry, GeometryError};

pub const DEFAULT_POINT_CAP: usize = 1000;
pub const POINT_CAP_ENV: &str = "POLARIS_POINT_CAP";

/// Projective points enumerated before giving up, independent of the point cap.
const AMBIENT_POINT_LIMIT: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolarError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("form is degenerate: radical has dimension {0}")]
    Degenerate(usize),
    #[error("isotropic vectors do not span the ambient space (form is not trace-valued)")]
    NotTraceValued,
    #[error("polar rank {0} is below 2")]
    RankTooSmall(usize),
    #[error("{count} points exceed the point cap {cap}")]
    TooManyPoints { count: usize, cap: usize },
    #[error("ambient projective space has {0} points, too many to enumerate")]
    AmbientTooLarge(u64),
    #[error("vector {0:?} is not a point of the space")]
    UnknownPoint(Vector),
}

/// The cap from `POLARIS_POINT_CAP`, else the default.
pub fn point_cap_from_env() -> usize {
    std::env::var(POINT_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_POINT_CAP)
}

#[derive(Debug, Clone)]
pub struct PolarSpace {
    form: Form,
    field: Arc<Field>,
    points: Vec<Vector>,
    keys: Vec<u64>,
    geometry: Geometry,
    rank: usize,
}

impl Deref for PolarSpace {
    type Target = Geometry;

    fn deref(&self) -> &Geometry {
        &self.geometry
    }
}

impl PolarSpace {
    pub fn build(form: impl Into<Form>) -> Result<PolarSpace, PolarError> {
        PolarSpace::build_with_cap(form, point_cap_from_env())
    }

    pub fn build_with_cap(form: impl Into<Form>, cap: usize) -> Result<PolarSpace, PolarError> {
        let form = form.into();
        let field = form.field().clone();
        let d = form.dim();
        let rad = form.radical();
        if !rad.is_zero() {
            return Err(PolarError::Degenerate(rad.dim()));
        }
        if let Form::Sesquilinear(f) = &form {
            if !forms::trace_valued_check(f)? {
                return Err(PolarError::NotTraceValued);
            }
        }
        let ambient = linalg::projective_point_count(field.order() as u64, d);
        if ambient > AMBIENT_POINT_LIMIT {
            return Err(PolarError::AmbientTooLarge(ambient));
        }
        let mut points = Vec::new();
        for v in linalg::projective_points(&field, d) {
            if form.is_singular_vector(&v) {
                points.push(v);
                if points.len() > cap {
                    let total = linalg::projective_points(&field, d).filter(|v| form.is_singular_vector(v)).count();
                    return Err(PolarError::TooManyPoints { count: total, cap });
                }
            }
        }
        let q = field.order();
        let keys: Vec<u64> = points.iter().map(|v| linalg::vector_key(q, v)).collect();
        let lines = enumerate_lines(&form, &field, &points, &keys);
        let geometry = Geometry::new(points.len(), lines)?;
        let mut space = PolarSpace { form, field, points, keys, geometry, rank: 0 };
        space.rank = space.geometry.rank(&space.geometry.all_points());
        if space.rank < 2 {
            return Err(PolarError::RankTooSmall(space.rank));
        }
        let witt = forms::witt_index(&space.form).or_else(|e| match e {
            FormError::TooLarge(_) => Ok(space.rank),
            e => Err(e),
        })?;
        if witt != space.rank {
            return Err(GeometryError::Invariant(format!("chain rank {} differs from witt index {witt}", space.rank)).into());
        }
        space.check_invariants()?;
        Ok(space)
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vector {
        &self.points[i]
    }

    /// Witt index of the form.
    pub fn polar_rank(&self) -> usize {
        self.rank
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[Elem]) -> Result<usize, PolarError> {
        let n = linalg::normalize(&self.field, v).ok_or_else(|| PolarError::UnknownPoint(v.to_vec()))?;
        let key = linalg::vector_key(self.field.order(), &n);
        self.keys.binary_search(&key).map_err(|_| PolarError::UnknownPoint(v.to_vec()))
    }

    /// Vector span of the representatives of `s`.
    pub fn vector_span(&self, s: &PointSet) -> Subspace {
        let mut span = Subspace::zero(self.ambient_dim());
        for p in s.iter() {
            span.insert(&self.field, &self.points[p]);
        }
        span
    }

    /// Lines have `q+1` points, collinearity agrees with the form, one-or-all holds,
    /// and no point is collinear with everything.
    pub fn check_invariants(&self) -> Result<(), PolarError> {
        let q = self.field.order() as usize;
        self.geometry.check_polar_axioms(q + 1)?;
        for a in 0..self.points.len() {
            for b in 0..self.points.len() {
                let by_form = self.form.pairing(&self.points[a], &self.points[b]) == 0;
                if by_form != self.collinear(a, b) {
                    return Err(GeometryError::Invariant(format!("form and line structure disagree on ({a},{b})")).into());
                }
            }
        }
        Ok(())
    }
}

/// Each pair of orthogonal points spans a totally singular line, whose points are
/// collected by normalizing `a + t b` and `b`.
fn enumerate_lines(form: &Form, field: &Field, points: &[Vector], keys: &[u64]) -> Vec<Vec<usize>> {
    let n = points.len();
    let q = field.order();
    let mut seen = vec![false; n * n];
    let mut lines = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if seen[a * n + b] || form.pairing(&points[a], &points[b]) != 0 {
                continue;
            }
            let mut line = vec![b];
            for t in field.elements() {
                let mut v = points[a].clone();
                linalg::add_scaled(field, &mut v, &points[b], t);
                let v = linalg::normalize(field, &v).expect("independent points");
                let key = linalg::vector_key(q, &v);
                let idx = keys.binary_search(&key).expect("span of orthogonal singular points is totally singular");
                line.push(idx);
            }
            line.sort_unstable();
            for &x in &line {
                for &y in &line {
                    seen[x * n + y] = true;
                }
            }
            lines.push(line);
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{QuadraticForm, SesquilinearForm};

    fn field(p: u32, k: u32) -> Arc<Field> {
        Arc::new(Field::new(p, k).unwrap())
    }

    /// Independent oracle: 2-subspaces spanned by orthogonal vectors on which the form vanishes.
    fn brute_counts(form: &Form) -> (usize, usize) {
        let f = form.field().clone();
        let d = form.dim();
        let pts: Vec<Vector> = linalg::projective_points(&f, d).filter(|v| form.is_singular_vector(v)).collect();
        let mut planes = std::collections::HashSet::new();
        for u in linalg::projective_points(&f, d) {
            for v in linalg::projective_points(&f, d) {
                let s = Subspace::span(&f, d, &[u.clone(), v.clone()]);
                let isotropic_pair = form.pairing(&u, &v) == 0 && form.pairing(&v, &u) == 0;
                if s.dim() == 2 && isotropic_pair && s.elements(&f).all(|w| form.is_singular_vector(&w)) {
                    planes.insert(s);
                }
            }
        }
        (pts.len(), planes.len())
    }

    #[test]
    fn counts_match_brute_force() {
        let w32: Form = SesquilinearForm::standard_alternating(field(2, 1), 4).unwrap().into();
        let q42: Form = QuadraticForm::from_terms(field(2, 1), 5, &[(0, 0, 1), (1, 2, 1), (3, 4, 1)]).unwrap().into();
        let h34: Form = SesquilinearForm::standard_hermitian(field(2, 2), 4).unwrap().into();
        for (form, points, lines) in [(w32, 15, 15), (q42, 15, 15), (h34, 45, 27)] {
            assert_eq!(brute_counts(&form), (points, lines));
            let s = PolarSpace::build(form).unwrap();
            assert_eq!((s.num_points(), s.lines().len()), (points, lines));
            assert_eq!(s.polar_rank(), 2);
        }
    }

    #[test]
    fn points_are_normalized_and_sorted() {
        let s = PolarSpace::build(SesquilinearForm::standard_hermitian(field(2, 2), 4).unwrap()).unwrap();
        for w in s.points().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, v) in s.points().iter().enumerate() {
            assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
            assert_eq!(s.index_of(&linalg::scale(s.field(), v, 3)).unwrap(), i);
        }
    }

    #[test]
    fn build_errors() {
        let f2 = field(2, 1);
        let degenerate = QuadraticForm::from_terms(f2.clone(), 3, &[(0, 1, 1)]).unwrap();
        assert_eq!(PolarSpace::build(degenerate).unwrap_err(), PolarError::Degenerate(1));
        // x0 x1 on a plane in odd characteristic: two points, rank 1
        let conic = QuadraticForm::from_terms(field(3, 1), 3, &[(0, 0, 1), (1, 2, 1)]).unwrap();
        assert_eq!(PolarSpace::build(conic).unwrap_err(), PolarError::RankTooSmall(1));
        let h = SesquilinearForm::standard_hermitian(field(2, 2), 5).unwrap();
        assert_eq!(PolarSpace::build_with_cap(h, 100).unwrap_err(), PolarError::TooManyPoints { count: 165, cap: 100 });
    }

    #[test]
    fn w32_perp_of_point_has_seven_points() {
        let s = PolarSpace::build(SesquilinearForm::standard_alternating(field(2, 1), 4).unwrap()).unwrap();
        for p in 0..15 {
            assert_eq!(s.point_perp(p).len(), 7);
        }
    }
}
