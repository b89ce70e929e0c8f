//! Projective embeddings of polar spaces and the "arises from" predicate.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::PointSet;
use crate::field::{Elem, Field};
use crate::forms::{Form, FormError, FormKind, QuadraticForm, SesquilinearForm};
use crate::linalg::{self, Subspace, Vector};
use crate::polar::{GeometryError, PolarError, PolarSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("embedding is tagged {0}, a universal embedding is required")]
    NotUniversal(Universality),
    #[error("source form must be quadratic")]
    NotQuadratic,
    #[error("source form must be alternating in characteristic 2")]
    NotSymplecticChar2,
    #[error("quotient kernel must be nonzero")]
    ZeroKernel,
    #[error("kernel is not contained in rad(f_Q)")]
    KernelNotInRadical,
    #[error("kernel meets the image or a secant line: points {0} and {1}")]
    KernelMeetsSecant(usize, usize),
    #[error("subspace has non-degenerate rank {0}, at least 2 is required")]
    RankTooSmall(usize),
    #[error("embedding axiom violated: {0}")]
    Axiom(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universality {
    Universal,
    Quotient,
    Unknown,
}

impl fmt::Display for Universality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Universality::Universal => "universal",
            Universality::Quotient => "quotient",
            Universality::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arising {
    Arises,
    /// `witness` lies in `preimage` but not in the subspace.
    Fails { witness: usize, preimage: PointSet },
}

impl Arising {
    pub fn arises(&self) -> bool {
        matches!(self, Arising::Arises)
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    field: Arc<Field>,
    ambient: usize,
    vectors: Vec<Vector>,
    kernel: Subspace,
    tag: Universality,
}

/// Inclusion of the points into `PG(V)`, tagged by form kind and characteristic.
pub fn natural_embedding(space: &PolarSpace) -> Embedding {
    let field = space.field().clone();
    let odd = field.characteristic() != 2;
    let tag = match space.form() {
        // Q+(3,q) grids: exotic embeddings exist, so no universality claim
        Form::Quadratic(q) if q.dim() == 4 && space.polar_rank() == 2 => Universality::Unknown,
        Form::Quadratic(_) => Universality::Universal,
        Form::Sesquilinear(f) => match f.kind() {
            FormKind::Hermitian | FormKind::Twisted | FormKind::Symmetric => Universality::Universal,
            FormKind::Alternating if odd => Universality::Universal,
            FormKind::Alternating => Universality::Quotient,
        },
    };
    Embedding {
        ambient: space.ambient_dim(),
        vectors: space.points().to_vec(),
        kernel: Subspace::zero(space.ambient_dim()),
        field,
        tag,
    }
}

impl Embedding {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, p: usize) -> &Vector {
        &self.vectors[p]
    }

    /// Zero for natural embeddings; the projection kernel (in the source space) for quotients.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn tag(&self) -> Universality {
        self.tag
    }

    pub fn require_universal(&self) -> Result<(), EmbedError> {
        match self.tag {
            Universality::Universal => Ok(()),
            t => Err(EmbedError::NotUniversal(t)),
        }
    }

    pub fn projective_span(&self, s: &PointSet) -> Subspace {
        let mut span = Subspace::zero(self.ambient);
        for p in s.iter() {
            span.insert(&self.field, &self.vectors[p]);
            if span.dim() == self.ambient {
                break;
            }
        }
        span
    }

    pub fn preimage(&self, w: &Subspace) -> PointSet {
        let n = self.vectors.len();
        if w.dim() == self.ambient {
            return PointSet::full(n);
        }
        PointSet::from_indices(n, (0..n).filter(|&p| w.contains(&self.field, &self.vectors[p])))
    }

    /// Whether `s` equals the preimage of its projective span.
    pub fn arises_from(&self, space: &PolarSpace, s: &PointSet) -> Result<Arising, EmbedError> {
        space.check_subspace(s)?;
        Ok(self.arising_unchecked(s))
    }

    /// [`Embedding::arises_from`] without the subspace test.
    pub fn arising_unchecked(&self, s: &PointSet) -> Arising {
        let pre = self.preimage(&self.projective_span(s));
        match pre.first_not_in(s) {
            None => Arising::Arises,
            Some(witness) => Arising::Fails { witness, preimage: pre },
        }
    }

    /// Injective on points, maps lines onto full projective lines, spans the ambient space.
    pub fn check_axioms(&self, space: &PolarSpace) -> Result<(), EmbedError> {
        let f = &*self.field;
        let q = f.order();
        let mut keys: Vec<u64> = self.vectors.iter().map(|v| linalg::vector_key(q, &linalg::normalize(f, v).unwrap_or_default())).collect();
        if self.vectors.iter().any(|v| v.iter().all(|&x| x == 0)) {
            return Err(EmbedError::Axiom("a point maps to the zero vector".into()));
        }
        keys.sort_unstable();
        keys.dedup();
        if keys.len() != self.vectors.len() {
            return Err(EmbedError::Axiom("embedding is not injective".into()));
        }
        for (li, line) in space.lines().iter().enumerate() {
            let span = Subspace::span(f, self.ambient, line.iter().map(|&p| &self.vectors[p]));
            // q+1 distinct points inside a 2-space are all of its points
            if span.dim() != 2 {
                return Err(EmbedError::Axiom(format!("line {li} spans dimension {}", span.dim())));
            }
        }
        if self.projective_span(&space.all_points()).dim() != self.ambient {
            return Err(EmbedError::Axiom("image does not span the ambient space".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct QuotientEmbedding {
    pub embedding: Embedding,
    /// The alternating form induced by `f_Q` on `V/X`.
    pub form: SesquilinearForm,
    /// `{Q(x) : x in X}`, sorted.
    pub r_values: Vec<Elem>,
}

/// Coordinates of `v + X` in `V/X`: reduce by `X` and drop its pivot columns.
fn quotient_coordinates(field: &Field, x: &Subspace, v: &[Elem]) -> Vector {
    let r = x.reduce(field, v);
    r.iter().enumerate().filter(|(c, _)| !x.pivots().contains(c)).map(|(_, &e)| e).collect()
}

pub fn quotient_embedding(space: &PolarSpace, emb: &Embedding, x: &Subspace) -> Result<QuotientEmbedding, EmbedError> {
    emb.require_universal()?;
    let Form::Quadratic(q) = space.form() else {
        return Err(EmbedError::NotQuadratic);
    };
    let field = space.field().clone();
    let f = &*field;
    if x.is_zero() {
        return Err(EmbedError::ZeroKernel);
    }
    let fq = q.polarize();
    let rad_fq = fq.radical();
    if !x.is_subspace_of(f, &rad_fq) {
        return Err(EmbedError::KernelNotInRadical);
    }
    let mut r_values: Vec<Elem> = x.elements(f).map(|v| q.eval_unchecked(&v)).collect();
    r_values.sort_unstable();
    r_values.dedup();
    if r_values.len() != f.order() as usize || *x != rad_fq {
        return Err(EmbedError::Axiom("over a finite field the kernel must be all of rad(f_Q) with Q-values all of K".into()));
    }

    let vectors: Vec<Vector> = emb
        .vectors()
        .iter()
        .map(|v| linalg::normalize(f, &quotient_coordinates(f, x, v)).unwrap_or_else(|| vec![0; emb.ambient_dim() - x.dim()]))
        .collect();
    let mut seen = std::collections::HashMap::new();
    for (i, v) in vectors.iter().enumerate() {
        if v.iter().all(|&e| e == 0) {
            return Err(EmbedError::KernelMeetsSecant(i, i));
        }
        if let Some(&j) = seen.get(v) {
            return Err(EmbedError::KernelMeetsSecant(j, i));
        }
        seen.insert(v.clone(), i);
    }

    let keep: Vec<usize> = (0..q.dim()).filter(|c| !x.pivots().contains(c)).collect();
    let gram: Vec<Vector> = keep
        .iter()
        .map(|&j| keep.iter().map(|&k| fq.eval_unchecked(&linalg::unit(q.dim(), j), &linalg::unit(q.dim(), k))).collect())
        .collect();
    let form = SesquilinearForm::new(field.clone(), fq.pair(), gram, FormKind::Alternating)?;
    if !form.is_nondegenerate() {
        return Err(EmbedError::Axiom("induced form on V/X is degenerate".into()));
    }
    let embedding = Embedding { field, ambient: keep.len(), vectors, kernel: x.clone(), tag: Universality::Quotient };
    embedding.check_axioms(space)?;
    Ok(QuotientEmbedding { embedding, form, r_values })
}

/// The parabolic quadric whose nucleus quotient recovers a char-2 symplectic space.
#[derive(Debug, Clone)]
pub struct Hull {
    pub quadric: PolarSpace,
    pub universal: Embedding,
    pub quotient: QuotientEmbedding,
    /// Quadric point index to symplectic point index.
    pub to_symplectic: Vec<usize>,
    pub to_quadric: Vec<usize>,
}

impl Hull {
    pub fn transport_to_quadric(&self, s: &PointSet) -> PointSet {
        PointSet::from_indices(self.to_symplectic.len(), s.iter().map(|p| self.to_quadric[p]))
    }

    pub fn transport_to_symplectic(&self, s: &PointSet) -> PointSet {
        PointSet::from_indices(self.to_quadric.len(), s.iter().map(|p| self.to_symplectic[p]))
    }
}

/// `Q(x) = x0^2 + x1 x2 + x3 x4 + ...` on dimension `2n+1`.
pub fn parabolic_quadric(field: Arc<Field>, n: usize) -> Result<QuadraticForm, FormError> {
    let mut terms = vec![(0, 0, 1)];
    for i in 1..=n {
        terms.push((2 * i - 1, 2 * i, 1));
    }
    QuadraticForm::from_terms(field, 2 * n + 1, &terms)
}

/// Basis `u_1, v_1, ..., u_n, v_n` with `f(u_i, v_i) = 1` and all other pairings zero.
fn symplectic_basis(f: &SesquilinearForm) -> Result<Vec<Vector>, EmbedError> {
    let field = &**f.field();
    let d = f.dim();
    let mut rest: Vec<Vector> = (0..d).map(|i| linalg::unit(d, i)).collect();
    let mut basis = Vec::with_capacity(d);
    while !rest.is_empty() {
        let u = rest.remove(0);
        let pos = rest.iter().position(|w| f.eval_unchecked(&u, w) != 0).ok_or_else(|| EmbedError::Axiom("form is degenerate".into()))?;
        let w = rest.remove(pos);
        let v = linalg::scale(field, &w, field.inv(f.eval_unchecked(&u, &w)).map_err(FormError::from)?);
        for w in &mut rest {
            let a = f.eval_unchecked(&v, w);
            let b = f.eval_unchecked(&u, w);
            let mut next = w.clone();
            linalg::add_scaled(field, &mut next, &u, a);
            linalg::add_scaled(field, &mut next, &v, field.neg(b));
            *w = next;
        }
        basis.push(u);
        basis.push(v);
    }
    Ok(basis)
}

pub fn hull_of_symplectic_char2(space: &PolarSpace) -> Result<Hull, EmbedError> {
    let form = match space.form() {
        Form::Sesquilinear(f) if f.kind() == FormKind::Alternating && space.field().characteristic() == 2 => f,
        _ => return Err(EmbedError::NotSymplecticChar2),
    };
    let field = space.field().clone();
    let n = space.polar_rank();
    let quadric = PolarSpace::build(parabolic_quadric(field.clone(), n)?)?;
    let universal = natural_embedding(&quadric);
    let Form::Quadratic(qf) = quadric.form() else { unreachable!() };
    let nucleus = qf.polarize().radical();
    let quotient = quotient_embedding(&quadric, &universal, &nucleus)?;

    let basis = symplectic_basis(form)?;
    let d = form.dim();
    let to_symplectic: Vec<usize> = quotient
        .embedding
        .vectors()
        .iter()
        .map(|c| {
            let mut v = vec![0; d];
            for (ci, b) in c.iter().zip(&basis) {
                linalg::add_scaled(&field, &mut v, b, *ci);
            }
            space.index_of(&v)
        })
        .collect::<Result<_, _>>()?;
    let mut to_quadric = vec![usize::MAX; space.num_points()];
    for (j, &i) in to_symplectic.iter().enumerate() {
        if to_quadric[i] != usize::MAX {
            return Err(EmbedError::Axiom(format!("symplectic point {i} hit twice")));
        }
        to_quadric[i] = j;
    }
    if to_symplectic.len() != space.num_points() {
        return Err(EmbedError::Axiom("point counts differ".into()));
    }
    for a in 0..quadric.num_points() {
        for b in 0..quadric.num_points() {
            if quadric.collinear(a, b) != space.collinear(to_symplectic[a], to_symplectic[b]) {
                return Err(EmbedError::Axiom(format!("collinearity of quadric points {a}, {b} not preserved")));
            }
        }
    }
    Ok(Hull { quadric, universal, quotient, to_symplectic, to_quadric })
}

/// A subset `Y` of `x` with the same closure and no redundant point.
pub fn minimal_generating_subset(space: &PolarSpace, emb: &Embedding, x: &PointSet) -> Result<PointSet, EmbedError> {
    emb.require_universal()?;
    let target = space.closure(x);
    let rank_nd = space.profile(&target)?.rank_nd;
    if rank_nd < 2 {
        return Err(EmbedError::RankTooSmall(rank_nd));
    }
    let mut span = Subspace::zero(emb.ambient_dim());
    let mut y = space.empty_set();
    for p in x.iter() {
        if span.insert(emb.field(), emb.vector(p)) {
            y.insert(p);
        }
    }
    if space.closure(&y) != target {
        y = x.clone();
        for p in x.iter() {
            y.remove(p);
            if space.closure(&y) != target {
                y.insert(p);
            }
        }
    }
    for p in y.iter() {
        let mut smaller = y.clone();
        smaller.remove(p);
        if space.closure(&smaller) == target {
            return Err(EmbedError::Axiom(format!("point {p} is redundant in the generating set")));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{find_partial_frame, frame_span};

    fn f2() -> Arc<Field> {
        Arc::new(Field::new(2, 1).unwrap())
    }

    fn q42() -> PolarSpace {
        PolarSpace::build(parabolic_quadric(f2(), 2).unwrap()).unwrap()
    }

    fn w32() -> PolarSpace {
        PolarSpace::build(SesquilinearForm::standard_alternating(f2(), 4).unwrap()).unwrap()
    }

    fn hyperplane_x0(space: &PolarSpace) -> Subspace {
        let d = space.ambient_dim();
        Subspace::span(space.field(), d, &(1..d).map(|i| linalg::unit(d, i)).collect::<Vec<_>>())
    }

    #[test]
    fn tags() {
        assert_eq!(natural_embedding(&q42()).tag(), Universality::Universal);
        assert_eq!(natural_embedding(&w32()).tag(), Universality::Quotient);
        let f3 = Arc::new(Field::new(3, 1).unwrap());
        let sp43 = PolarSpace::build(SesquilinearForm::standard_alternating(f3, 4).unwrap()).unwrap();
        assert_eq!(natural_embedding(&sp43).tag(), Universality::Universal);
        let grid = PolarSpace::build(QuadraticForm::from_terms(f2(), 4, &[(0, 1, 1), (2, 3, 1)]).unwrap()).unwrap();
        assert_eq!(natural_embedding(&grid).tag(), Universality::Unknown);
    }

    #[test]
    fn grid_is_hyperbolic_section_of_q42() {
        let s = q42();
        let e = natural_embedding(&s);
        e.check_axioms(&s).unwrap();
        let grid = e.preimage(&hyperplane_x0(&s));
        assert_eq!(grid.len(), 9);
        assert!(s.is_subspace(&grid) && !s.is_singular(&grid));
        assert_eq!(e.projective_span(&grid).dim(), 4);
        assert_eq!(e.arises_from(&s, &grid).unwrap(), Arising::Arises);
        assert!(s.is_hyperplane(&grid).unwrap());
        assert!(s.is_maximal_subspace(&grid).unwrap());
        let line = s.set_of(s.lines()[0].as_slice()).unwrap();
        assert_eq!(e.projective_span(&line).dim(), 2);
        assert!(!s.is_hyperplane(&line).unwrap());
    }

    #[test]
    fn grid_fails_under_symplectic_embedding() {
        let s = w32();
        let e = natural_embedding(&s);
        let frame = find_partial_frame(&s, &s.all_points(), 2).unwrap();
        let grid = frame_span(&s, &frame).unwrap();
        assert_eq!(e.projective_span(&frame.points(&s)).dim(), 4);
        match e.arises_from(&s, &grid).unwrap() {
            Arising::Fails { witness, preimage } => {
                assert!(preimage.is_full());
                assert!(!grid.contains(witness));
            }
            Arising::Arises => panic!("grid must not arise from the symplectic embedding"),
        }
    }

    #[test]
    fn arising_is_projectively_well_defined() {
        let f4 = Arc::new(Field::new(2, 2).unwrap());
        let s = PolarSpace::build(SesquilinearForm::standard_hermitian(f4.clone(), 4).unwrap()).unwrap();
        let e = natural_embedding(&s);
        let mut scaled = e.clone();
        for (i, v) in scaled.vectors.iter_mut().enumerate() {
            *v = linalg::scale(&f4, v, 1 + (i % 3) as Elem);
        }
        let sets = [s.set_of(&[0, 1]).unwrap(), s.closure(&s.set_of(&[0]).unwrap()), s.point_perp(5).clone()];
        for x in sets {
            let x = s.closure(&x);
            assert_eq!(e.arises_from(&s, &x).unwrap().arises(), scaled.arises_from(&s, &x).unwrap().arises());
        }
    }

    #[test]
    fn quotient_of_q42_is_w32() {
        let q = q42();
        let e = natural_embedding(&q);
        let Form::Quadratic(qf) = q.form() else { unreachable!() };
        let nucleus = qf.polarize().radical();
        assert_eq!(nucleus.basis(), &[linalg::unit(5, 0)]);
        let quo = quotient_embedding(&q, &e, &nucleus).unwrap();
        assert_eq!(quo.embedding.ambient_dim(), 4);
        assert_eq!(quo.r_values, vec![0, 1]);
        assert_eq!(quo.form, SesquilinearForm::standard_alternating(f2(), 4).unwrap());
        assert_eq!(quotient_embedding(&q, &e, &Subspace::zero(5)).unwrap_err(), EmbedError::ZeroKernel);
        let off = Subspace::span(q.field(), 5, &[linalg::unit(5, 1)]);
        assert_eq!(quotient_embedding(&q, &e, &off).unwrap_err(), EmbedError::KernelNotInRadical);
    }

    #[test]
    fn hulls() {
        let w = w32();
        let h = hull_of_symplectic_char2(&w).unwrap();
        assert_eq!(h.quadric.num_points(), 15);
        assert_eq!(h.universal.tag(), Universality::Universal);
        let w52 = PolarSpace::build(SesquilinearForm::standard_alternating(f2(), 6).unwrap()).unwrap();
        let h = hull_of_symplectic_char2(&w52).unwrap();
        assert_eq!(h.quadric.num_points(), 63);
        let f3 = Arc::new(Field::new(3, 1).unwrap());
        let sp43 = PolarSpace::build(SesquilinearForm::standard_alternating(f3, 4).unwrap()).unwrap();
        assert_eq!(hull_of_symplectic_char2(&sp43).unwrap_err(), EmbedError::NotSymplecticChar2);
    }

    #[test]
    fn minimal_generating_sets() {
        let s = q42();
        let e = natural_embedding(&s);
        let y = minimal_generating_subset(&s, &e, &s.all_points()).unwrap();
        assert_eq!(y.len(), 5);
        assert!(s.closure(&y).is_full());
        let line = s.set_of(s.lines()[0].as_slice()).unwrap();
        assert_eq!(minimal_generating_subset(&s, &e, &line).unwrap_err(), EmbedError::RankTooSmall(0));
        let frame = find_partial_frame(&s, &s.all_points(), 2).unwrap();
        let pts = frame.points(&s);
        assert_eq!(minimal_generating_subset(&s, &e, &pts).unwrap(), pts);
    }
}
