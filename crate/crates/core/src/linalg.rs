//! Vectors and subspaces of GF(q)^d in reduced row echelon form.
//!
//! Echelon bases use leftmost pivots with unit pivot entries and zeros above
//! and below every pivot, so a subspace has exactly one stored basis.

use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

/// Scales `v` so its leftmost nonzero coordinate is 1. `None` for the zero vector.
pub fn normalize(field: &Field, v: &[Elem]) -> Option<Vector> {
    let lead = v.iter().position(|&x| x != 0)?;
    let s = field.inv(v[lead]).ok()?;
    Some(scale(field, v, s))
}

pub fn scale(field: &Field, v: &[Elem], t: Elem) -> Vector {
    v.iter().map(|&x| field.mul(x, t)).collect()
}

/// `dst += t * src`.
pub fn add_scaled(field: &Field, dst: &mut [Elem], src: &[Elem], t: Elem) {
    if t == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add(*d, field.mul(s, t));
    }
}

pub fn add(field: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Base-q integer with coordinate 0 most significant; orders like the vector itself.
pub fn vector_key(q: u32, v: &[Elem]) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

/// Every vector of GF(q)^dim in lexicographic order of coordinates.
pub fn all_vectors(field: &Field, dim: usize) -> impl Iterator<Item = Vector> + '_ {
    let q = field.order() as u64;
    let total = q.pow(dim as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; dim];
        for i in (0..dim).rev() {
            v[i] = (code % q) as Elem;
            code /= q;
        }
        v
    })
}

/// Normalized representatives of the points of PG(dim-1, q), in lexicographic order.
pub fn projective_points(field: &Field, dim: usize) -> impl Iterator<Item = Vector> + '_ {
    all_vectors(field, dim).filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
}

pub fn projective_point_count(q: u64, dim: usize) -> u64 {
    if dim == 0 {
        0
    } else {
        (q.pow(dim as u32) - 1) / (q - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, rows: (0..ambient).map(|i| unit(ambient, i)).collect(), pivots: (0..ambient).collect() }
    }

    pub fn span<'a, I>(field: &Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(field, v);
            if s.dim() == ambient {
                break;
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residue of `v` after clearing every pivot column.
    pub fn reduce(&self, field: &Field, v: &[Elem]) -> Vector {
        debug_assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let t = r[c];
            if t != 0 {
                add_scaled(field, &mut r, row, field.neg(t));
            }
        }
        r
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        self.reduce(field, v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, field: &Field, v: &[Elem]) -> bool {
        let mut r = self.reduce(field, v);
        let Some(lead) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = field.inv(r[lead]).expect("nonzero pivot");
        r = scale(field, &r, s);
        for row in &mut self.rows {
            let t = row[lead];
            if t != 0 {
                add_scaled(field, row, &r, field.neg(t));
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }

    pub fn join(&self, field: &Field, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(field, r);
        }
        s
    }

    /// All `q^dim` vectors of the subspace, zero first.
    pub fn elements<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vector> + 'a {
        all_vectors(field, self.dim()).map(move |coeffs| {
            let mut v = vec![0; self.ambient];
            for (c, row) in coeffs.iter().zip(&self.rows) {
                add_scaled(field, &mut v, row, *c);
            }
            v
        })
    }

    /// Coordinates of a member with respect to the echelon basis (read off the pivots).
    pub fn coordinates(&self, v: &[Elem]) -> Vector {
        self.pivots.iter().map(|&c| v[c]).collect()
    }
}

pub fn rank<'a, I>(field: &Field, ambient: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a Vector>,
{
    Subspace::span(field, ambient, vectors).dim()
}

/// Right kernel `{x : M x = 0}` of a matrix given by rows of length `cols`.
pub fn nullspace(field: &Field, rows: &[Vector], cols: usize) -> Subspace {
    let echelon = Subspace::span(field, cols, rows);
    let pivots = echelon.pivots();
    let mut kernel = Subspace::zero(cols);
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = unit(cols, free);
        for (row, &pc) in echelon.basis().iter().zip(pivots) {
            x[pc] = field.neg(row[free]);
        }
        kernel.insert(field, &x);
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_and_keys() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(normalize(&f, &[0, 2, 1]), Some(vec![0, 1, 2]));
        assert_eq!(normalize(&f, &[0, 0]), None);
        assert!(vector_key(3, &[0, 1, 2]) < vector_key(3, &[1, 0, 0]));
    }

    #[test]
    fn projective_point_enumeration() {
        let f = Field::new(2, 2).unwrap();
        let pts: Vec<_> = projective_points(&f, 3).collect();
        assert_eq!(pts.len() as u64, projective_point_count(4, 3));
        assert_eq!(pts[0], vec![0, 0, 1]);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn echelon_is_canonical() {
        let f = Field::new(5, 1).unwrap();
        let a = Subspace::span(&f, 3, &[vec![1, 2, 3], vec![2, 0, 1]]);
        let b = Subspace::span(&f, 3, &[vec![3, 2, 4], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        for (row, &c) in a.basis().iter().zip(a.pivots()) {
            assert_eq!(row[c], 1);
        }
    }

    #[test]
    fn nullspace_solves() {
        let f = Field::new(3, 1).unwrap();
        let m = vec![vec![1, 1, 0, 2], vec![0, 1, 1, 1]];
        let k = nullspace(&f, &m, 4);
        assert_eq!(k.dim(), 2);
        for x in k.elements(&f) {
            for row in &m {
                let dot = row.iter().zip(&x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn subspace_elements_count() {
        let f = Field::new(2, 2).unwrap();
        let s = Subspace::span(&f, 4, &[vec![1, 0, 2, 0], vec![0, 1, 0, 3]]);
        assert_eq!(s.elements(&f).count(), 16);
        assert!(s.elements(&f).all(|v| s.contains(&f, &v)));
    }
}
