//! Point-line geometries given by explicit line lists, with bitset closure.

use thiserror::Error;

use crate::bits::PointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point set is not a subspace: line {line} meets it in {meets} of {size} points")]
    NotSubspace { line: usize, meets: usize, size: usize },
    #[error("subspace is improper (contains every point)")]
    Improper,
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

const NO_LINE: u32 = u32::MAX;

/// Rank data of a subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceProfile {
    pub size: usize,
    pub is_singular: bool,
    pub radical: PointSet,
    pub rank: usize,
    pub radical_rank: usize,
    pub rank_nd: usize,
}

impl SubspaceProfile {
    pub fn is_nondegenerate(&self) -> bool {
        self.radical.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Geometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    line_sets: Vec<PointSet>,
    lines_through: Vec<Vec<usize>>,
    perps: Vec<PointSet>,
    line_of: Vec<u32>,
}

impl Geometry {
    /// Lines must be sorted point tuples; any two distinct points share at most one line.
    pub fn new(num_points: usize, mut lines: Vec<Vec<usize>>) -> Result<Geometry, GeometryError> {
        for l in &mut lines {
            l.sort_unstable();
            if let Some(&p) = l.iter().find(|&&p| p >= num_points) {
                return Err(GeometryError::PointOutOfRange(p));
            }
        }
        lines.sort();
        let line_sets: Vec<PointSet> = lines.iter().map(|l| PointSet::from_indices(num_points, l.iter().copied())).collect();
        let mut lines_through = vec![Vec::new(); num_points];
        let mut line_of = vec![NO_LINE; num_points * num_points];
        let mut perps: Vec<PointSet> = (0..num_points).map(|p| PointSet::from_indices(num_points, [p])).collect();
        for (li, l) in lines.iter().enumerate() {
            for &a in l {
                lines_through[a].push(li);
                for &b in l {
                    if a == b {
                        continue;
                    }
                    let slot = &mut line_of[a * num_points + b];
                    if *slot != NO_LINE {
                        return Err(GeometryError::Invariant(format!("points {a} and {b} lie on two lines")));
                    }
                    *slot = li as u32;
                    perps[a].insert(b);
                }
            }
        }
        Ok(Geometry { num_points, lines, line_sets, lines_through, perps, line_of })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_set(&self, l: usize) -> &PointSet {
        &self.line_sets[l]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    /// The line through two distinct collinear points.
    pub fn line_of(&self, a: usize, b: usize) -> Option<usize> {
        let l = self.line_of[a * self.num_points + b];
        (l != NO_LINE).then_some(l as usize)
    }

    pub fn collinear(&self, a: usize, b: usize) -> bool {
        self.perps[a].contains(b)
    }

    /// `p^perp`, which contains `p`.
    pub fn point_perp(&self, p: usize) -> &PointSet {
        &self.perps[p]
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.num_points)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.num_points)
    }

    pub fn set_of(&self, points: &[usize]) -> Result<PointSet, GeometryError> {
        if let Some(&p) = points.iter().find(|&&p| p >= self.num_points) {
            return Err(GeometryError::PointOutOfRange(p));
        }
        Ok(PointSet::from_indices(self.num_points, points.iter().copied()))
    }

    /// `X^perp`; all points when `X` is empty.
    pub fn perp(&self, x: &PointSet) -> PointSet {
        let mut out = self.all_points();
        for p in x.iter() {
            out.intersect_with(&self.perps[p]);
        }
        out
    }

    pub fn closure(&self, x: &PointSet) -> PointSet {
        let seeds = x.to_vec();
        self.closure_extend(&self.empty_set(), &seeds)
    }

    /// Closure of `closed ∪ extra`, where `closed` is already a subspace.
    pub fn closure_extend(&self, closed: &PointSet, extra: &[usize]) -> PointSet {
        let mut s = closed.clone();
        let mut queue: Vec<usize> = extra.iter().copied().filter(|&p| s.insert(p)).collect();
        while let Some(x) = queue.pop() {
            for &l in &self.lines_through[x] {
                let line = &self.line_sets[l];
                if line.is_subset(&s) || line.intersection_len(&s) < 2 {
                    continue;
                }
                for p in line.difference(&s).iter() {
                    queue.push(p);
                }
                s.union_with(line);
            }
        }
        s
    }

    /// First line meeting `x` in at least two but not all of its points.
    fn broken_line(&self, x: &PointSet) -> Option<(usize, usize)> {
        self.line_sets.iter().enumerate().find_map(|(li, l)| {
            let m = l.intersection_len(x);
            (m >= 2 && m < l.len()).then_some((li, m))
        })
    }

    pub fn is_subspace(&self, x: &PointSet) -> bool {
        self.broken_line(x).is_none()
    }

    pub fn check_subspace(&self, x: &PointSet) -> Result<(), GeometryError> {
        match self.broken_line(x) {
            None => Ok(()),
            Some((line, meets)) => Err(GeometryError::NotSubspace { line, meets, size: self.lines[line].len() }),
        }
    }

    pub fn is_singular(&self, x: &PointSet) -> bool {
        x.is_subset(&self.perp(x))
    }

    pub fn radical(&self, s: &PointSet) -> PointSet {
        self.perp(s).intersection(s)
    }

    /// Length of a maximal chain of singular subspaces inside `s`, grown greedily
    /// by lowest point index. Every step adds a point collinear with the current
    /// singular subspace, which raises its rank by one.
    pub fn rank(&self, s: &PointSet) -> usize {
        let mut m = self.empty_set();
        let mut rank = 0;
        loop {
            let candidates = self.perp(&m).intersection(s);
            match candidates.first_not_in(&m) {
                None => return rank,
                Some(p) => {
                    m = self.closure_extend(&m, &[p]);
                    rank += 1;
                }
            }
        }
    }

    pub fn profile(&self, s: &PointSet) -> Result<SubspaceProfile, GeometryError> {
        self.check_subspace(s)?;
        let radical = self.radical(s);
        let rank = self.rank(s);
        let radical_rank = self.rank(&radical);
        Ok(SubspaceProfile {
            size: s.len(),
            is_singular: radical == *s,
            radical,
            rank,
            radical_rank,
            rank_nd: rank - radical_rank,
        })
    }

    pub fn rank_nd(&self, s: &PointSet) -> Result<usize, GeometryError> {
        Ok(self.profile(s)?.rank_nd)
    }

    fn check_proper_subspace(&self, s: &PointSet) -> Result<(), GeometryError> {
        self.check_subspace(s)?;
        if s.is_full() {
            return Err(GeometryError::Improper);
        }
        Ok(())
    }

    /// A proper subspace meeting every line.
    pub fn is_hyperplane(&self, s: &PointSet) -> Result<bool, GeometryError> {
        self.check_proper_subspace(s)?;
        Ok(self.line_sets.iter().all(|l| !l.is_disjoint(s)))
    }

    /// First line disjoint from `s`.
    pub fn disjoint_line(&self, s: &PointSet) -> Option<usize> {
        self.line_sets.iter().position(|l| l.is_disjoint(s))
    }

    pub fn is_maximal_subspace(&self, s: &PointSet) -> Result<bool, GeometryError> {
        self.check_proper_subspace(s)?;
        Ok(s.complement().iter().all(|p| self.closure_extend(s, &[p]).is_full()))
    }

    pub fn singular_hyperplane(&self, p: usize) -> Result<PointSet, GeometryError> {
        if p >= self.num_points {
            return Err(GeometryError::PointOutOfRange(p));
        }
        let h = self.perps[p].clone();
        if !self.is_hyperplane(&h)? {
            return Err(GeometryError::Invariant(format!("perp of point {p} is not a hyperplane")));
        }
        Ok(h)
    }

    /// Every point is collinear with one or all points of every line it is not on.
    pub fn check_one_or_all(&self) -> Result<(), GeometryError> {
        for p in 0..self.num_points {
            for (li, l) in self.line_sets.iter().enumerate() {
                if l.contains(p) {
                    continue;
                }
                let m = l.intersection_len(&self.perps[p]);
                if m != 1 && m != l.len() {
                    return Err(GeometryError::Invariant(format!("point {p} is collinear with {m} points of line {li}")));
                }
            }
        }
        Ok(())
    }

    /// Points collinear with every point.
    pub fn geometry_radical(&self) -> PointSet {
        self.perp(&self.all_points())
    }

    /// Line sizes, symmetric collinearity, one-or-all, and an empty radical.
    pub fn check_polar_axioms(&self, line_size: usize) -> Result<(), GeometryError> {
        if let Some((li, l)) = self.lines.iter().enumerate().find(|(_, l)| l.len() != line_size) {
            return Err(GeometryError::Invariant(format!("line {li} has {} points, expected {line_size}", l.len())));
        }
        for a in 0..self.num_points {
            if !self.perps[a].contains(a) {
                return Err(GeometryError::Invariant(format!("point {a} not in its own perp")));
            }
            for b in self.perps[a].iter() {
                if !self.perps[b].contains(a) {
                    return Err(GeometryError::Invariant(format!("collinearity not symmetric at ({a},{b})")));
                }
            }
        }
        self.check_one_or_all()?;
        if let Some(p) = self.geometry_radical().first() {
            return Err(GeometryError::Invariant(format!("point {p} is collinear with every point")));
        }
        Ok(())
    }
}
