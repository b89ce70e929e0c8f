//! Brute-force oracles shared by the integration tests. None of them go
//! through the library's geometry, embedding or closure code; they work from
//! the raw spec matrix and field tables only.

#![allow(dead_code)]

use polaris::field::{Elem, Field};
use polaris::shell::catalog::{self, Preset};
use polaris::shell::spec::{SpaceSpec, SpecKind};
use polaris::PolarSpace;

pub fn build(name: &str) -> PolarSpace {
    let p = catalog::preset(name).unwrap_or_else(|| panic!("no preset {name}"));
    PolarSpace::build(p.spec().form().unwrap()).unwrap()
}

/// Raw form evaluation straight from the spec matrix.
pub struct RawForm {
    pub field: Field,
    pub spec: SpaceSpec,
    frob: u64,
}

impl RawForm {
    pub fn new(spec: SpaceSpec) -> RawForm {
        let field = Field::new(spec.p, spec.k).unwrap();
        let frob = (spec.p as u64).pow(spec.sigma);
        RawForm { field, spec, frob }
    }

    pub fn of_preset(p: &Preset) -> RawForm {
        RawForm::new(p.spec())
    }

    pub fn q(&self) -> usize {
        self.field.order() as usize
    }

    fn sum(&self, terms: impl Iterator<Item = Elem>) -> Elem {
        terms.fold(0, |acc, t| self.field.add(acc, t))
    }

    /// `f(x, y)`; for a quadratic spec this is the polar form.
    pub fn pair(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        let d = self.spec.dim;
        let g = &self.spec.rows;
        match self.spec.kind {
            SpecKind::Quadratic => self.sum((0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| {
                let c = f.add(g[i][j], g[j][i]);
                f.mul(c, f.mul(x[i], y[j]))
            })),
            _ => self.sum(
                (0..d)
                    .flat_map(|i| (0..d).map(move |j| (i, j)))
                    .map(|(i, j)| f.mul(f.pow(x[i], self.frob), f.mul(g[i][j], y[j]))),
            ),
        }
    }

    pub fn quad(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let d = self.spec.dim;
        let g = &self.spec.rows;
        self.sum((0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| f.mul(g[i][j], f.mul(x[i], x[j]))))
    }

    pub fn singular(&self, x: &[Elem]) -> bool {
        match self.spec.kind {
            SpecKind::Quadratic => self.quad(x) == 0,
            _ => self.pair(x, x) == 0,
        }
    }

    pub fn perpendicular(&self, x: &[Elem], y: &[Elem]) -> bool {
        self.pair(x, y) == 0
    }
}

/// Projective points: all vectors whose first nonzero coordinate is 1.
pub fn projective_points(q: usize, dim: usize) -> Vec<Vec<Elem>> {
    let total = q.pow(dim as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0 as Elem; dim];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % q) as Elem;
            c /= q;
        }
        if v.iter().find(|&&e| e != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

pub struct BruteForce {
    pub points: Vec<Vec<Elem>>,
    pub lines: usize,
}

/// Singular points, and lines counted as ordered collinear pairs over `(q+1)q`.
pub fn brute_force(raw: &RawForm) -> BruteForce {
    let q = raw.q();
    let points: Vec<Vec<Elem>> = projective_points(q, raw.spec.dim).into_iter().filter(|v| raw.singular(v)).collect();
    let mut pairs = 0usize;
    for (i, u) in points.iter().enumerate() {
        for (j, v) in points.iter().enumerate() {
            if i != j && raw.perpendicular(u, v) {
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs % ((q + 1) * q), 0, "collinear pair count not divisible by (q+1)q");
    BruteForce { points, lines: pairs / ((q + 1) * q) }
}

/// Point bitmasks of the lines of a space with at most 64 points.
pub fn line_masks(space: &PolarSpace) -> Vec<u64> {
    assert!(space.num_points() <= 64);
    space.lines().iter().map(|l| l.iter().fold(0u64, |m, &p| m | 1 << p)).collect()
}

/// A set is a subspace when every line meets it in 0, 1 or all of its points.
pub fn is_subspace_mask(lines: &[u64], s: u64) -> bool {
    lines.iter().all(|&l| {
        let m = (l & s).count_ones();
        m <= 1 || l & s == l
    })
}

/// All subspaces of a space with at most 20 points, by scanning every subset.
pub fn subspace_masks(space: &PolarSpace) -> Vec<u64> {
    let n = space.num_points();
    assert!(n <= 20);
    let lines = line_masks(space);
    (0..1u64 << n).filter(|&s| is_subspace_mask(&lines, s)).collect()
}

/// Pairwise collinearity as adjacency masks (self included).
pub fn collinearity_masks(raw: &RawForm, points: &[Vec<Elem>]) -> Vec<u64> {
    points
        .iter()
        .map(|u| points.iter().enumerate().filter(|(_, v)| raw.perpendicular(u, v)).fold(0u64, |m, (j, _)| m | 1 << j))
        .collect()
}

/// Rank of a list of GF(2) vectors packed as bitmasks.
pub fn gf2_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

pub fn gf2_pack(v: &[Elem]) -> u64 {
    v.iter().enumerate().fold(0, |m, (i, &e)| m | (e as u64 & 1) << i)
}

/// Points of a GF(2) space whose vector lies in the span of the vectors of `s`.
pub fn gf2_preimage(vectors: &[u64], s: u64) -> u64 {
    let members: Vec<u64> = (0..vectors.len()).filter(|&i| s >> i & 1 == 1).map(|i| vectors[i]).collect();
    let r = gf2_rank(members.iter().copied());
    (0..vectors.len())
        .filter(|&i| gf2_rank(members.iter().copied().chain([vectors[i]])) == r)
        .fold(0, |m, i| m | 1 << i)
}

pub fn mask_to_vec(s: u64) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

/// Drops `duration_ms` lines, the only wall-clock content in a record stream.
pub fn strip_timing(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("duration_ms") && !l.trim_start().starts_with("duration_ms")).collect::<Vec<_>>().join("\n")
}

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("polaris".to_string()).chain(args.iter().map(|s| s.to_string())).collect();
    let code = polaris::shell::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
