//! The star of a singular subspace `R`: singular subspaces of rank `rank(R)+1`
//! and `rank(R)+2` containing `R`, as points and lines.

use crate::bits::PointSet;

use super::geometry::{Geometry, GeometryError};
use super::space::PolarSpace;

#[derive(Debug, Clone)]
pub struct StarSpace {
    members: Vec<PointSet>,
    geometry: Geometry,
    rank: usize,
}

impl std::ops::Deref for StarSpace {
    type Target = Geometry;

    fn deref(&self) -> &Geometry {
        &self.geometry
    }
}

impl StarSpace {
    /// The subspace of the parent space that each star point stands for.
    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn polar_rank(&self) -> usize {
        self.rank
    }
}

pub fn star_space(space: &PolarSpace, r: &PointSet) -> Result<StarSpace, GeometryError> {
    space.check_subspace(r)?;
    if !space.is_singular(r) {
        return Err(GeometryError::Invariant("star requires a singular subspace".into()));
    }
    let r_rank = space.rank(r);
    let residual = space.polar_rank() - r_rank;
    if residual < 2 {
        return Err(GeometryError::Invariant(format!("residual rank {residual} is below 2")));
    }
    let mut members: Vec<PointSet> = Vec::new();
    let around = space.perp(r).difference(r);
    let mut covered = space.empty_set();
    for p in around.iter() {
        if covered.contains(p) {
            continue;
        }
        let m = space.closure_extend(r, &[p]);
        covered.union_with(&m);
        members.push(m);
    }
    let outside = |m: &PointSet| m.difference(r).first().expect("member strictly contains R");
    let owner: Vec<usize> = {
        let mut owner = vec![usize::MAX; space.num_points()];
        for (i, m) in members.iter().enumerate() {
            for p in m.difference(r).iter() {
                owner[p] = i;
            }
        }
        owner
    };
    let mut lines = std::collections::BTreeSet::new();
    for (i, x) in members.iter().enumerate() {
        for (j, y) in members.iter().enumerate().skip(i + 1) {
            if !space.collinear(outside(x), outside(y)) {
                continue;
            }
            let plane = space.closure_extend(x, &[outside(y)]);
            let mut line: Vec<usize> = plane.difference(r).iter().map(|p| owner[p]).collect();
            line.sort_unstable();
            line.dedup();
            debug_assert!(line.contains(&j));
            lines.insert(line);
        }
    }
    let geometry = Geometry::new(members.len(), lines.into_iter().collect())?;
    let q = space.field().order() as usize;
    geometry.check_polar_axioms(q + 1)?;
    let rank = geometry.rank(&geometry.all_points());
    if rank != residual {
        return Err(GeometryError::Invariant(format!("star has rank {rank}, expected {residual}")));
    }
    Ok(StarSpace { members, geometry, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::forms::{QuadraticForm, SesquilinearForm};
    use std::sync::Arc;

    #[test]
    fn star_of_point_in_q62_is_gq22() {
        let f = Arc::new(Field::new(2, 1).unwrap());
        let q = QuadraticForm::from_terms(f, 7, &[(0, 0, 1), (1, 2, 1), (3, 4, 1), (5, 6, 1)]).unwrap();
        let s = PolarSpace::build(q).unwrap();
        let r = s.set_of(&[0]).unwrap();
        let star = star_space(&s, &r).unwrap();
        assert_eq!(star.num_points(), s.lines_through(0).len());
        assert_eq!((star.num_points(), star.lines().len(), star.polar_rank()), (15, 15, 2));
        assert!(star.members().iter().all(|m| m.len() == 3 && m.contains(0)));
    }

    #[test]
    fn empty_star_is_the_space() {
        let f = Arc::new(Field::new(2, 1).unwrap());
        let s = PolarSpace::build(SesquilinearForm::standard_alternating(f, 4).unwrap()).unwrap();
        let star = star_space(&s, &s.empty_set()).unwrap();
        assert_eq!(star.lines(), s.lines());
        assert!(star_space(&s, &s.set_of(&[0]).unwrap()).is_err());
    }
}
