//! Partial frames `{A, B}`: two singular bases matched so that `a_i ⊥ b_j` iff `i != j`.

use thiserror::Error;

use crate::bits::PointSet;

use super::geometry::GeometryError;
use super::space::PolarSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("frame needs |A| = |B| >= 2, got |A| = {a}, |B| = {b}")]
    BadSize { a: usize, b: usize },
    #[error("point {0} lies in both A and B")]
    NotDisjoint(usize),
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("F1: points {0} and {1} of {2} are not collinear")]
    F1(usize, usize, char),
    #[error("F2: point {a} of A is non-collinear with {count} points of B")]
    F2 { a: usize, count: usize },
    #[error("F2: point {b} of B is the partner of two points of A")]
    F2Partner { b: usize },
    #[error("F3: {0} is not independent (vector rank {1})")]
    F3(char, usize),
    #[error("F4: point {point} of {side}^perp lies in the span of the other side")]
    F4 { side: char, point: usize },
    #[error("frame span is degenerate or has rank {rank}, expected {expected}")]
    Span { rank: usize, expected: usize },
    #[error("rank {k} exceeds polar rank {n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("subspace has non-degenerate rank {rank_nd}, needs at least {k}")]
    RankTooSmall { rank_nd: usize, k: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFrame {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl PartialFrame {
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn points(&self, space: &PolarSpace) -> PointSet {
        PointSet::from_indices(space.num_points(), self.a.iter().chain(&self.b).copied())
    }
}

/// Validates F1 and F2, reorders `B` so `b_i` is the partner of `a_i`, then
/// asserts F3 (vector rank `k` on each side) and F4.
pub fn check_partial_frame(space: &PolarSpace, a: &[usize], b: &[usize]) -> Result<PartialFrame, FrameError> {
    let k = a.len();
    if k < 2 || b.len() != k {
        return Err(FrameError::BadSize { a: k, b: b.len() });
    }
    if let Some(&p) = a.iter().chain(b).find(|&&p| p >= space.num_points()) {
        return Err(FrameError::PointOutOfRange(p));
    }
    if let Some(&p) = a.iter().find(|p| b.contains(p)) {
        return Err(FrameError::NotDisjoint(p));
    }
    if k > space.polar_rank() {
        return Err(FrameError::RankTooLarge { k, n: space.polar_rank() });
    }
    for (side, set) in [('A', a), ('B', b)] {
        for (i, &x) in set.iter().enumerate() {
            if let Some(&y) = set[i + 1..].iter().find(|&&y| !space.collinear(x, y)) {
                return Err(FrameError::F1(x, y, side));
            }
        }
    }
    let mut matched = Vec::with_capacity(k);
    for &x in a {
        let partners: Vec<usize> = b.iter().copied().filter(|&y| !space.collinear(x, y)).collect();
        if partners.len() != 1 {
            return Err(FrameError::F2 { a: x, count: partners.len() });
        }
        if matched.contains(&partners[0]) {
            return Err(FrameError::F2Partner { b: partners[0] });
        }
        matched.push(partners[0]);
    }
    let frame = PartialFrame { a: a.to_vec(), b: matched };

    let n = space.num_points();
    let set_a = PointSet::from_indices(n, a.iter().copied());
    let set_b = PointSet::from_indices(n, b.iter().copied());
    for (side, set) in [('A', &set_a), ('B', &set_b)] {
        let r = space.vector_span(set).dim();
        if r != k {
            return Err(FrameError::F3(side, r));
        }
    }
    for (side, own, other) in [('A', &set_a, &set_b), ('B', &set_b, &set_a)] {
        let bad = space.perp(own).intersection(&space.closure(other));
        if let Some(point) = bad.first() {
            return Err(FrameError::F4 { side, point });
        }
    }
    Ok(frame)
}

/// First pair `(a, b)` in `region` with `a` not collinear with `b`, lowest indices first.
fn first_hyperbolic_pair(space: &PolarSpace, region: &PointSet) -> Option<(usize, usize)> {
    region.iter().find_map(|a| region.first_not_in(space.point_perp(a)).map(|b| (a, b)))
}

/// Grows a frame one hyperbolic pair at a time inside `(A ∪ B)^perp ∩ region`.
fn grow(space: &PolarSpace, frame: &mut PartialFrame, region: &PointSet, k: usize) -> bool {
    while frame.rank() < k {
        let w = space.perp(&frame.points(space)).intersection(region);
        match first_hyperbolic_pair(space, &w) {
            Some((x, y)) => {
                frame.a.push(x);
                frame.b.push(y);
            }
            None => return false,
        }
    }
    true
}

/// Completes a valid partial frame to rank `n`.
pub fn extend_frame(space: &PolarSpace, frame: &PartialFrame) -> Result<PartialFrame, FrameError> {
    let mut f = check_partial_frame(space, frame.a(), frame.b())?;
    let n = space.polar_rank();
    if !grow(space, &mut f, &space.all_points(), n) {
        return Err(GeometryError::Invariant("frame perp contains no hyperbolic pair".into()).into());
    }
    check_partial_frame(space, f.a(), f.b())
}

/// A rank-`k` partial frame inside the subspace `s`, chosen greedily by lowest index.
pub fn find_partial_frame(space: &PolarSpace, s: &PointSet, k: usize) -> Result<PartialFrame, FrameError> {
    let profile = space.profile(s)?;
    if k < 2 || profile.rank_nd < k {
        return Err(FrameError::RankTooSmall { rank_nd: profile.rank_nd, k });
    }
    let mut f = PartialFrame { a: Vec::new(), b: Vec::new() };
    if !grow(space, &mut f, s, k) {
        return Err(GeometryError::Invariant("subspace ran out of hyperbolic pairs".into()).into());
    }
    check_partial_frame(space, f.a(), f.b())
}

/// `closure(A ∪ B)`, asserted non-degenerate of rank `k`.
pub fn frame_span(space: &PolarSpace, frame: &PartialFrame) -> Result<PointSet, FrameError> {
    let span = space.closure(&frame.points(space));
    let p = space.profile(&span)?;
    if !p.is_nondegenerate() || p.rank != frame.rank() {
        return Err(FrameError::Span { rank: p.rank, expected: frame.rank() });
    }
    Ok(span)
}

/// A random partial frame of rank `k`, built like [`extend_frame`] but with
/// uniformly chosen pairs.
pub fn random_partial_frame<R: rand::Rng>(space: &PolarSpace, k: usize, rng: &mut R) -> Result<PartialFrame, FrameError> {
    if k < 2 || k > space.polar_rank() {
        return Err(FrameError::RankTooLarge { k, n: space.polar_rank() });
    }
    let mut f = PartialFrame { a: Vec::new(), b: Vec::new() };
    while f.rank() < k {
        let w = space.perp(&f.points(space));
        let starts: Vec<usize> = w.iter().filter(|&x| w.first_not_in(space.point_perp(x)).is_some()).collect();
        let x = starts[rng.random_range(0..starts.len())];
        let partners = w.difference(space.point_perp(x)).to_vec();
        let y = partners[rng.random_range(0..partners.len())];
        f.a.push(x);
        f.b.push(y);
    }
    check_partial_frame(space, f.a(), f.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::forms::{QuadraticForm, SesquilinearForm};
    use std::sync::Arc;

    fn w32() -> PolarSpace {
        let f = Arc::new(Field::new(2, 1).unwrap());
        PolarSpace::build(SesquilinearForm::standard_alternating(f, 4).unwrap()).unwrap()
    }

    fn q62() -> PolarSpace {
        let f = Arc::new(Field::new(2, 1).unwrap());
        let q = QuadraticForm::from_terms(f, 7, &[(0, 0, 1), (1, 2, 1), (3, 4, 1), (5, 6, 1)]).unwrap();
        PolarSpace::build(q).unwrap()
    }

    #[test]
    fn standard_frame_of_w32() {
        let s = w32();
        let e = |i: usize| s.index_of(&crate::linalg::unit(4, i)).unwrap();
        let f = check_partial_frame(&s, &[e(0), e(2)], &[e(3), e(1)]).unwrap();
        assert_eq!(f.b(), &[e(1), e(3)]);
        assert_eq!(extend_frame(&s, &f).unwrap(), f);
        let span = frame_span(&s, &f).unwrap();
        assert_eq!(span.len(), 9);
        assert!(s.perp(&f.points(&s)).is_empty());
    }

    #[test]
    fn frame_rejections() {
        let s = w32();
        let e = |i: usize| s.index_of(&crate::linalg::unit(4, i)).unwrap();
        assert_eq!(check_partial_frame(&s, &[e(0)], &[e(1)]), Err(FrameError::BadSize { a: 1, b: 1 }));
        assert!(matches!(check_partial_frame(&s, &[e(0), e(1)], &[e(2), e(3)]), Err(FrameError::F1(..))));
        assert_eq!(check_partial_frame(&s, &[e(0), e(2)], &[e(0), e(3)]), Err(FrameError::NotDisjoint(e(0))));
    }

    #[test]
    fn find_frames() {
        let s = w32();
        let f = find_partial_frame(&s, &s.all_points(), 2).unwrap();
        // point 0 = e3 pairs with 1 = e2, then inside their perp 3 = e1 pairs with 7 = e0
        assert_eq!((f.a(), f.b()), (&[0, 3][..], &[1, 7][..]));
        let grid = frame_span(&s, &f).unwrap();
        let g = find_partial_frame(&s, &grid, 2).unwrap();
        assert!(g.points(&s).is_subset(&grid));
        let line = s.closure(&s.set_of(&[0, 3]).unwrap());
        assert_eq!(find_partial_frame(&s, &line, 2), Err(FrameError::RankTooSmall { rank_nd: 0, k: 2 }));
    }

    #[test]
    fn extend_in_q62() {
        let s = q62();
        let f = find_partial_frame(&s, &s.all_points(), 2).unwrap();
        let span = frame_span(&s, &f).unwrap();
        assert!(!span.is_full());
        let g = extend_frame(&s, &f).unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(&g.a()[..2], f.a());
        assert_eq!(&g.b()[..2], f.b());
    }
}
