//! Reflexive sesquilinear forms, quadratic forms, and the scalar subgroups
//! attached to an admissible pair.
//!
//! A sesquilinear form is stored by its Gram matrix `G` with
//! `f(x, y) = sum_ij x_i^sigma G_ij y_j`. A quadratic form is stored by an
//! upper-triangular matrix `U` with `Q(x) = sum_{i<=j} x_i U_ij x_j`, which keeps
//! characteristic-2 data unambiguous.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Automorphism, Elem, Field, FieldError};
use crate::linalg::{self, nullspace, Subspace, Vector};

/// Above this many ambient vectors, enumeration-based checks refuse to run.
pub const ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("epsilon^sigma * epsilon = {product}, expected 1")]
    EpsilonNotUnitary { product: Elem },
    #[error("sigma is not an involution: t = {witness} maps to {image} under sigma^2")]
    NotInvolution { witness: Elem, image: Elem },
    #[error("pair (sigma={sigma}, epsilon={epsilon}) does not permit a {kind} form")]
    KindMismatch { kind: FormKind, sigma: Automorphism, epsilon: Elem },
    #[error("gram matrix must be {dim}x{dim}")]
    BadShape { dim: usize },
    #[error("gram entry ({j},{i}) = {found} but reflexivity requires {expected}")]
    NotReflexive { i: usize, j: usize, found: Elem, expected: Elem },
    #[error("alternating form has nonzero diagonal entry at {0}")]
    AlternatingDiagonal(usize),
    #[error("quadratic matrix has nonzero entry below the diagonal at ({i},{j})")]
    BelowDiagonal { i: usize, j: usize },
    #[error("vector has length {got}, form has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is degenerate (radical of dimension {0})")]
    Degenerate(usize),
    #[error("ambient space too large to enumerate ({0} vectors)")]
    TooLarge(u64),
    #[error("forms live on different fields or dimensions")]
    Incompatible,
    #[error("g = {kappa} f but g's pair differs from the transformed pair (sigma, {expected_epsilon})")]
    PairMismatch { kappa: Elem, expected_epsilon: Elem },
    #[error("witt index mismatch: greedy found {greedy}, exhaustive search found {exhaustive}")]
    WittMismatch { greedy: usize, exhaustive: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Alternating,
    Symmetric,
    Hermitian,
    /// `sigma != id` with `epsilon != 1`; only produced by scaling a hermitian form.
    Twisted,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormKind::Alternating => "alternating",
            FormKind::Symmetric => "symmetric",
            FormKind::Hermitian => "hermitian",
            FormKind::Twisted => "twisted",
        };
        f.write_str(s)
    }
}

/// `(sigma, epsilon)` with `epsilon^sigma = epsilon^-1` and `sigma^2 = id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    sigma: Automorphism,
    epsilon: Elem,
}

impl AdmissiblePair {
    pub fn sigma(&self) -> Automorphism {
        self.sigma
    }

    pub fn epsilon(&self) -> Elem {
        self.epsilon
    }

    pub fn permits(&self, field: &Field, kind: FormKind) -> bool {
        match kind {
            FormKind::Alternating => self.sigma.is_identity() && self.epsilon == field.neg(1),
            FormKind::Symmetric => self.sigma.is_identity() && self.epsilon == 1,
            FormKind::Hermitian => !self.sigma.is_identity() && self.epsilon == 1,
            FormKind::Twisted => !self.sigma.is_identity() && self.epsilon != 1,
        }
    }

    /// Kinds of form this pair can carry.
    pub fn families(&self, field: &Field) -> Vec<FormKind> {
        [FormKind::Alternating, FormKind::Symmetric, FormKind::Hermitian, FormKind::Twisted]
            .into_iter()
            .filter(|&k| self.permits(field, k))
            .collect()
    }
}

pub fn validate_admissible_pair(field: &Field, sigma: Automorphism, epsilon: Elem) -> Result<AdmissiblePair, FormError> {
    if sigma.exponent() >= field.degree() {
        return Err(FieldError::InvalidAutomorphism { m: sigma.exponent(), k: field.degree() }.into());
    }
    field.check(epsilon as u32)?;
    if epsilon == 0 {
        return Err(FormError::ZeroEpsilon);
    }
    let product = field.mul(field.apply(sigma, epsilon), epsilon);
    if product != 1 {
        return Err(FormError::EpsilonNotUnitary { product });
    }
    let twice = sigma.then(sigma, field.degree());
    if let Some(t) = field.elements().find(|&t| field.apply(twice, t) != t) {
        return Err(FormError::NotInvolution { witness: t, image: field.apply(twice, t) });
    }
    Ok(AdmissiblePair { sigma, epsilon })
}

fn check_len(dim: usize, v: &[Elem]) -> Result<(), FormError> {
    if v.len() == dim {
        Ok(())
    } else {
        Err(FormError::DimensionMismatch { expected: dim, got: v.len() })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SesquilinearForm {
    field: Arc<Field>,
    pair: AdmissiblePair,
    gram: Vec<Vector>,
    kind: FormKind,
}

impl fmt::Debug for SesquilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} form on {:?}^{} {:?}", self.kind, self.field, self.dim(), self.gram)
    }
}

impl SesquilinearForm {
    #[allow(clippy::needless_range_loop)]
    pub fn new(field: Arc<Field>, pair: AdmissiblePair, gram: Vec<Vector>, kind: FormKind) -> Result<Self, FormError> {
        let d = gram.len();
        if gram.iter().any(|r| r.len() != d) {
            return Err(FormError::BadShape { dim: d });
        }
        for row in &gram {
            for &x in row {
                field.check(x as u32)?;
            }
        }
        if !pair.permits(&field, kind) {
            return Err(FormError::KindMismatch { kind, sigma: pair.sigma, epsilon: pair.epsilon });
        }
        for i in 0..d {
            for j in 0..d {
                let expected = field.mul(field.apply(pair.sigma, gram[i][j]), pair.epsilon);
                if gram[j][i] != expected {
                    return Err(FormError::NotReflexive { i, j, found: gram[j][i], expected });
                }
            }
        }
        if kind == FormKind::Alternating {
            if let Some(i) = (0..d).find(|&i| gram[i][i] != 0) {
                return Err(FormError::AlternatingDiagonal(i));
            }
        }
        Ok(SesquilinearForm { field, pair, gram, kind })
    }

    /// `sum_i x_i^sigma y_i` on `dim` coordinates.
    pub fn standard_hermitian(field: Arc<Field>, dim: usize) -> Result<Self, FormError> {
        let sigma = field.automorphism(field.degree() / 2)?;
        let pair = validate_admissible_pair(&field, sigma, 1)?;
        let gram = (0..dim).map(|i| linalg::unit(dim, i)).collect();
        SesquilinearForm::new(field, pair, gram, FormKind::Hermitian)
    }

    /// Hyperbolic pairs on coordinates `(0,1), (2,3), ...`.
    pub fn standard_alternating(field: Arc<Field>, dim: usize) -> Result<Self, FormError> {
        let pair = validate_admissible_pair(&field, Automorphism::IDENTITY, field.neg(1))?;
        let mut gram = vec![vec![0; dim]; dim];
        for i in (0..dim.saturating_sub(1)).step_by(2) {
            gram[i][i + 1] = 1;
            gram[i + 1][i] = field.neg(1);
        }
        SesquilinearForm::new(field, pair, gram, FormKind::Alternating)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn pair(&self) -> AdmissiblePair {
        self.pair
    }

    pub fn gram(&self) -> &[Vector] {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// `f(x, x) = 0` for every `x`.
    pub fn is_alternating(&self) -> bool {
        let f = &self.field;
        self.pair.sigma.is_identity() && self.pair.epsilon == f.neg(1) && (0..self.dim()).all(|i| self.gram[i][i] == 0)
    }

    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Result<Elem, FormError> {
        check_len(self.dim(), x)?;
        check_len(self.dim(), y)?;
        Ok(self.eval_unchecked(x, y))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &*self.field;
        let mut acc = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram[i];
            let mut inner = 0;
            for (j, &yj) in y.iter().enumerate() {
                inner = f.add(inner, f.mul(row[j], yj));
            }
            acc = f.add(acc, f.mul(f.apply(self.pair.sigma, xi), inner));
        }
        acc
    }

    /// Entrywise `kappa * G`, a `(sigma, kappa kappa^-sigma epsilon)`-form.
    pub fn scaled(&self, kappa: Elem) -> Result<Self, FormError> {
        let f = &*self.field;
        let epsilon = transformed_epsilon(f, self.pair, kappa)?;
        let pair = AdmissiblePair { sigma: self.pair.sigma, epsilon };
        let gram = self.gram.iter().map(|r| linalg::scale(f, r, kappa)).collect();
        let kind = if self.kind == FormKind::Alternating {
            FormKind::Alternating
        } else if pair.sigma.is_identity() {
            if pair.permits(f, FormKind::Symmetric) {
                FormKind::Symmetric
            } else {
                FormKind::Alternating
            }
        } else if epsilon == 1 {
            FormKind::Hermitian
        } else {
            FormKind::Twisted
        };
        SesquilinearForm::new(self.field.clone(), pair, gram, kind)
    }

    pub fn radical(&self) -> Subspace {
        radical_of_form(self)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_zero()
    }
}

fn transformed_epsilon(f: &Field, pair: AdmissiblePair, kappa: Elem) -> Result<Elem, FormError> {
    let k_sigma_inv = f.inv(f.apply(pair.sigma, kappa))?;
    Ok(f.mul(f.mul(kappa, k_sigma_inv), pair.epsilon))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Arc<Field>,
    upper: Vec<Vector>,
    polar_gram: Vec<Vector>,
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quadratic form on {:?}^{} {:?}", self.field, self.dim(), self.upper)
    }
}

impl QuadraticForm {
    pub fn new(field: Arc<Field>, upper: Vec<Vector>) -> Result<Self, FormError> {
        let d = upper.len();
        if upper.iter().any(|r| r.len() != d) {
            return Err(FormError::BadShape { dim: d });
        }
        for (i, row) in upper.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                field.check(x as u32)?;
                if j < i && x != 0 {
                    return Err(FormError::BelowDiagonal { i, j });
                }
            }
        }
        let mut polar_gram = vec![vec![0; d]; d];
        for i in 0..d {
            for j in 0..d {
                polar_gram[i][j] = field.add(upper[i][j], upper[j][i]);
            }
        }
        Ok(QuadraticForm { field, upper, polar_gram })
    }

    /// Builds `U` from `(i, j, coefficient)` terms; `i <= j` is required.
    pub fn from_terms(field: Arc<Field>, dim: usize, terms: &[(usize, usize, Elem)]) -> Result<Self, FormError> {
        let mut upper = vec![vec![0; dim]; dim];
        for &(i, j, c) in terms {
            let (i, j) = (i.min(j), i.max(j));
            upper[i][j] = field.add(upper[i][j], c);
        }
        QuadraticForm::new(field, upper)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.upper.len()
    }

    pub fn upper(&self) -> &[Vector] {
        &self.upper
    }

    pub fn eval(&self, x: &[Elem]) -> Result<Elem, FormError> {
        check_len(self.dim(), x)?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub fn eval_unchecked(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        let mut acc = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.upper[i];
            let mut inner = 0;
            for j in i..x.len() {
                inner = f.add(inner, f.mul(row[j], x[j]));
            }
            acc = f.add(acc, f.mul(xi, inner));
        }
        acc
    }

    /// `f_Q(x, y) = Q(x+y) - Q(x) - Q(y)`, computed from the gram `U + U^T`.
    #[inline]
    pub fn polar_unchecked(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &*self.field;
        let mut acc = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.polar_gram[i];
            let mut inner = 0;
            for (j, &yj) in y.iter().enumerate() {
                inner = f.add(inner, f.mul(row[j], yj));
            }
            acc = f.add(acc, f.mul(xi, inner));
        }
        acc
    }

    pub fn polarize(&self) -> SesquilinearForm {
        let f = &*self.field;
        let (kind, eps) = if f.characteristic() == 2 { (FormKind::Alternating, 1) } else { (FormKind::Symmetric, 1) };
        let pair = AdmissiblePair { sigma: Automorphism::IDENTITY, epsilon: eps };
        SesquilinearForm::new(self.field.clone(), pair, self.polar_gram.clone(), kind).expect("U + U^T is reflexive symmetric")
    }

    pub fn radical(&self) -> Subspace {
        radical_of_quadratic(self)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_zero()
    }
}

/// Either kind of form that defines a polar space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    Sesquilinear(SesquilinearForm),
    Quadratic(QuadraticForm),
}

impl From<SesquilinearForm> for Form {
    fn from(f: SesquilinearForm) -> Self {
        Form::Sesquilinear(f)
    }
}

impl From<QuadraticForm> for Form {
    fn from(q: QuadraticForm) -> Self {
        Form::Quadratic(q)
    }
}

impl Form {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            Form::Sesquilinear(f) => f.field(),
            Form::Quadratic(q) => q.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Form::Sesquilinear(f) => f.dim(),
            Form::Quadratic(q) => q.dim(),
        }
    }

    /// Isotropic (sesquilinear) or singular (quadratic) vector test.
    #[inline]
    pub fn is_singular_vector(&self, v: &[Elem]) -> bool {
        match self {
            Form::Sesquilinear(f) => f.eval_unchecked(v, v) == 0,
            Form::Quadratic(q) => q.eval_unchecked(v) == 0,
        }
    }

    /// `f(u, v)` or `f_Q(u, v)`: zero iff two singular points are collinear.
    #[inline]
    pub fn pairing(&self, u: &[Elem], v: &[Elem]) -> Elem {
        match self {
            Form::Sesquilinear(f) => f.eval_unchecked(u, v),
            Form::Quadratic(q) => q.polar_unchecked(u, v),
        }
    }

    /// `rad(f)` for sesquilinear forms, `rad(Q)` for quadratic ones.
    pub fn radical(&self) -> Subspace {
        match self {
            Form::Sesquilinear(f) => f.radical(),
            Form::Quadratic(q) => q.radical(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Form::Sesquilinear(f) => match f.kind() {
                FormKind::Alternating => "alternating",
                FormKind::Symmetric => "symmetric",
                FormKind::Hermitian => "hermitian",
                FormKind::Twisted => "twisted",
            },
            Form::Quadratic(_) => "quadratic",
        }
    }
}

/// Vectors `v` with `f(v, x) = 0` for all `x`.
pub fn radical_of_form(f: &SesquilinearForm) -> Subspace {
    let field = &**f.field();
    let d = f.dim();
    // sum_i v_i^sigma G_ij = 0 for all j: solve G^T w = 0 with w = v^sigma, then v = w^sigma
    let transposed: Vec<Vector> = (0..d).map(|j| (0..d).map(|i| f.gram()[i][j]).collect()).collect();
    let w = nullspace(field, &transposed, d);
    let sigma = f.pair().sigma();
    let images: Vec<Vector> = w.basis().iter().map(|b| b.iter().map(|&x| field.apply(sigma, x)).collect()).collect();
    Subspace::span(field, d, &images)
}

/// `rad(Q) = Q^-1(0) ∩ rad(f_Q)`.
pub fn radical_of_quadratic(q: &QuadraticForm) -> Subspace {
    let field = &**q.field();
    let d = q.dim();
    let rad_f = radical_of_form(&q.polarize());
    if field.characteristic() != 2 || rad_f.is_zero() {
        // odd characteristic: Q(v) = f_Q(v, v) / 2 vanishes on rad(f_Q)
        return rad_f;
    }
    // On rad(f_Q), Q(sum c_i r_i) = sum c_i^2 Q(r_i) = (sum c_i sqrt(Q(r_i)))^2: the kernel of a linear functional.
    let functional: Vector = rad_f.basis().iter().map(|r| field.sqrt_char2(q.eval_unchecked(r)).unwrap()).collect();
    let kernel = nullspace(field, &[functional], rad_f.dim());
    let vectors: Vec<Vector> = kernel
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![0; d];
            for (ci, r) in c.iter().zip(rad_f.basis()) {
                linalg::add_scaled(field, &mut v, r, *ci);
            }
            v
        })
        .collect();
    Subspace::span(field, d, &vectors)
}

/// `K_{sigma,eps} = {t - t^sigma eps}` and `K^{sigma,eps} = {t : t + t^sigma eps = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarGroup {
    pub pair: AdmissiblePair,
    pub k_se: Vec<Elem>,
    pub k_upper: Vec<Elem>,
}

impl ScalarGroup {
    pub fn contains(&self, t: Elem) -> bool {
        self.k_se.binary_search(&t).is_ok()
    }
}

pub fn scalar_group(pair: AdmissiblePair, field: &Field) -> ScalarGroup {
    let s = pair.sigma;
    let e = pair.epsilon;
    let mut k_se: Vec<Elem> = field.elements().map(|t| field.sub(t, field.mul(field.apply(s, t), e))).collect();
    k_se.sort_unstable();
    k_se.dedup();
    let k_upper: Vec<Elem> = field.elements().filter(|&t| field.add(t, field.mul(field.apply(s, t), e)) == 0).collect();
    for set in [&k_se, &k_upper] {
        for &t in set.iter() {
            for x in field.elements() {
                let img = field.mul(field.mul(field.apply(s, x), t), x);
                assert!(set.binary_search(&img).is_ok(), "scalar subgroup not closed under t -> s^sigma t s");
            }
        }
    }
    ScalarGroup { pair, k_se, k_upper }
}

/// The scalar `kappa` with `G_g = kappa G_f`, if any.
pub fn proportional_check(f: &SesquilinearForm, g: &SesquilinearForm) -> Result<Option<Elem>, FormError> {
    if f.field() != g.field() || f.dim() != g.dim() {
        return Err(FormError::Incompatible);
    }
    let field = &**f.field();
    let d = f.dim();
    let Some((i0, j0)) = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| f.gram()[i][j] != 0) else {
        return Ok(g.gram().iter().flatten().all(|&x| x == 0).then_some(1));
    };
    let kappa = field.div(g.gram()[i0][j0], f.gram()[i0][j0])?;
    if kappa == 0 {
        return Ok(None);
    }
    for i in 0..d {
        for j in 0..d {
            if g.gram()[i][j] != field.mul(kappa, f.gram()[i][j]) {
                return Ok(None);
            }
        }
    }
    let expected_epsilon = transformed_epsilon(field, f.pair(), kappa)?;
    if g.pair().sigma() != f.pair().sigma() || g.pair().epsilon() != expected_epsilon {
        return Err(FormError::PairMismatch { kappa, expected_epsilon });
    }
    Ok(Some(kappa))
}

fn ambient_size(field: &Field, dim: usize) -> u64 {
    (field.order() as u64).saturating_pow(dim as u32)
}

/// Whether the isotropic vectors of `f` span the whole ambient space.
pub fn trace_valued_check(f: &SesquilinearForm) -> Result<bool, FormError> {
    let field = &**f.field();
    let d = f.dim();
    if f.is_alternating() {
        return Ok(true);
    }
    if f.pair().sigma().is_identity() && field.characteristic() == 2 {
        // v -> f(v,v) = (sum v_i sqrt(G_ii))^2 is the square of a linear functional
        return Ok((0..d).all(|i| f.gram()[i][i] == 0));
    }
    let size = ambient_size(field, d);
    if size > ENUMERATION_CAP {
        return Err(FormError::TooLarge(size));
    }
    let mut span = Subspace::zero(d);
    for v in linalg::projective_points(field, d) {
        if f.eval_unchecked(&v, &v) == 0 {
            span.insert(field, &v);
            if span.dim() == d {
                return Ok(true);
            }
        }
    }
    Ok(span.dim() == d)
}

/// A `(sigma, eps)`-quadratic form with values in `K / K_{sigma,eps}`, used to
/// compare hermitian pseudoquadratic forms with their sesquilinearization.
#[derive(Debug, Clone)]
pub struct PseudoQuadraticForm {
    field: Arc<Field>,
    pair: AdmissiblePair,
    upper: Vec<Vector>,
    scalars: ScalarGroup,
}

impl PseudoQuadraticForm {
    pub fn new(field: Arc<Field>, pair: AdmissiblePair, upper: Vec<Vector>) -> Result<Self, FormError> {
        let d = upper.len();
        for (i, row) in upper.iter().enumerate() {
            if row.len() != d {
                return Err(FormError::BadShape { dim: d });
            }
            if let Some(j) = (0..i).find(|&j| row[j] != 0) {
                return Err(FormError::BelowDiagonal { i, j });
            }
        }
        let scalars = scalar_group(pair, &field);
        Ok(PseudoQuadraticForm { field, pair, upper, scalars })
    }

    /// Representative of `Q(x)` before reduction modulo `K_{sigma,eps}`.
    pub fn raw_value(&self, x: &[Elem]) -> Elem {
        let f = &*self.field;
        let mut acc = 0;
        for i in 0..x.len() {
            for j in i..x.len() {
                acc = f.add(acc, f.mul(f.mul(f.apply(self.pair.sigma, x[i]), self.upper[i][j]), x[j]));
            }
        }
        acc
    }

    pub fn is_singular(&self, x: &[Elem]) -> bool {
        self.scalars.contains(self.raw_value(x))
    }

    /// `f_Q` with gram `G_ij = U_ij + U_ji^sigma eps`.
    #[allow(clippy::needless_range_loop)]
    pub fn sesquilinearization(&self, kind: FormKind) -> Result<SesquilinearForm, FormError> {
        let f = &*self.field;
        let d = self.upper.len();
        let mut gram = vec![vec![0; d]; d];
        for i in 0..d {
            for j in 0..d {
                gram[i][j] = f.add(self.upper[i][j], f.mul(f.apply(self.pair.sigma, self.upper[j][i]), self.pair.epsilon));
            }
        }
        SesquilinearForm::new(self.field.clone(), self.pair, gram, kind)
    }
}

/// Dimension of a totally singular subspace grown greedily in lexicographic order.
fn witt_index_greedy(form: &Form) -> Result<usize, FormError> {
    let field = &**form.field();
    let d = form.dim();
    let mut w = Subspace::zero(d);
    loop {
        // W^perp: vectors v with pairing(b, v) = 0 for all basis vectors b of W
        let rows: Vec<Vector> = w
            .basis()
            .iter()
            .map(|b| (0..d).map(|j| form.pairing(b, &linalg::unit(d, j))).collect())
            .collect();
        let perp = nullspace(field, &rows, d);
        let space = ambient_size(field, perp.dim());
        if space > ENUMERATION_CAP * 16 {
            return Err(FormError::TooLarge(space));
        }
        let found = perp
            .elements(field)
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .find(|v| form.is_singular_vector(v) && !w.contains(field, v));
        match found {
            Some(v) => {
                w.insert(field, &v);
            }
            None => return Ok(w.dim()),
        }
    }
}

/// Maximum dimension of a totally singular subspace by depth-first search over singular points.
pub fn witt_index_exhaustive(form: &Form) -> Result<usize, FormError> {
    let field = &**form.field();
    let d = form.dim();
    let size = ambient_size(field, d);
    if size > ENUMERATION_CAP {
        return Err(FormError::TooLarge(size));
    }
    let points: Vec<Vector> = linalg::projective_points(field, d).filter(|v| form.is_singular_vector(v)).collect();
    let n = points.len();
    let perp: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| form.pairing(&points[i], &points[j]) == 0).collect()).collect();
    let bound = d / 2;

    fn dfs(points: &[Vector], perp: &[Vec<bool>], field: &Field, chosen: &mut Vec<usize>, span: &Subspace, start: usize, bound: usize) -> usize {
        let mut best = chosen.len();
        if best >= bound {
            return best;
        }
        for c in start..points.len() {
            if !chosen.iter().all(|&x| perp[x][c]) || span.contains(field, &points[c]) {
                continue;
            }
            let mut next = span.clone();
            next.insert(field, &points[c]);
            chosen.push(c);
            best = best.max(dfs(points, perp, field, chosen, &next, c + 1, bound));
            chosen.pop();
            if best >= bound {
                break;
            }
        }
        best
    }

    Ok(dfs(&points, &perp, field, &mut Vec::new(), &Subspace::zero(d), 0, bound))
}

/// Witt index of a non-degenerate form: greedy, cross-checked exhaustively in dimension at most 6.
pub fn witt_index(form: &Form) -> Result<usize, FormError> {
    let rad = form.radical();
    if !rad.is_zero() {
        return Err(FormError::Degenerate(rad.dim()));
    }
    let greedy = witt_index_greedy(form)?;
    let field = &**form.field();
    if form.dim() <= 6 && ambient_size(field, form.dim()) <= ENUMERATION_CAP {
        let exhaustive = witt_index_exhaustive(form)?;
        if exhaustive != greedy {
            return Err(FormError::WittMismatch { greedy, exhaustive });
        }
    }
    Ok(greedy)
}
