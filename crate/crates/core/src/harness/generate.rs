//! Seeded random instances.
//!
//! Only `i64`/`u32` ranges are sampled from a ChaCha8 stream, so instances
//! are identical across platforms for the same seed.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discriminant::{certify_psd, SymMatrix};
use crate::geometry::{convex_hull, minkowski_sum, scale, translate, Point, VPolytope};
use crate::rational::{ratio, Rational};

/// Counter-based seed for trial `trial` of a suite with master seed `master`
/// (one splitmix64 step).
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BodyKind {
    RandomHull,
    Segment,
    Zonotope,
    Simplex,
    Box,
    ScaledCopy,
}

impl BodyKind {
    pub fn name(self) -> &'static str {
        match self {
            BodyKind::RandomHull => "random-hull",
            BodyKind::Segment => "segment",
            BodyKind::Zonotope => "zonotope",
            BodyKind::Simplex => "simplex",
            BodyKind::Box => "box",
            BodyKind::ScaledCopy => "scaled-copy",
        }
    }
}

/// A Minkowski sum of segments `[0, g_i]` shifted by `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zonotope {
    pub offset: Point,
    pub generators: Vec<Point>,
}

impl Zonotope {
    pub fn to_polytope(&self) -> VPolytope {
        let mut acc = VPolytope::point(self.offset.clone());
        for g in &self.generators {
            let seg = VPolytope::segment(Point::origin(g.dim()), g.clone()).expect("same dimension");
            acc = minkowski_sum(&acc, &seg).expect("same dimension");
        }
        acc
    }
}

/// Coordinate bound `B` and denominators `q` of the random body model.
pub const COORD_BOUND: i64 = 8;
pub const DENOMINATORS: [i64; 3] = [1, 2, 4];
/// Share of degenerate (lower-dimensional) bodies among `body()` draws, in percent.
pub const DEGENERATE_PERCENT: u32 = 10;

pub struct InstanceGenerator {
    dim: usize,
    rng: ChaCha8Rng,
    last: Option<VPolytope>,
}

impl InstanceGenerator {
    pub fn new(seed: u64, dim: usize) -> Self {
        Self { dim, rng: ChaCha8Rng::seed_from_u64(seed), last: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n as u32) as usize
    }

    pub fn percent(&mut self, p: u32) -> bool {
        self.rng.gen_range(0..100u32) < p
    }

    fn denominator(&mut self) -> i64 {
        DENOMINATORS[self.index(DENOMINATORS.len())]
    }

    fn point_with(&mut self, bound: i64, q: i64) -> Point {
        Point::new((0..self.dim).map(|_| ratio(self.int(-bound, bound), q)).collect())
    }

    fn nonzero_point(&mut self, bound: i64, q: i64) -> Point {
        loop {
            let p = self.point_with(bound, q);
            if !p.is_zero() {
                return p;
            }
        }
    }

    fn remember(&mut self, p: VPolytope) -> VPolytope {
        self.last = Some(p.clone());
        p
    }

    pub fn random_hull(&mut self) -> VPolytope {
        let q = self.denominator();
        let m = 2 * self.dim + 4;
        let pts: Vec<Point> = (0..m).map(|_| self.point_with(COORD_BOUND, q)).collect();
        self.remember(convex_hull(&pts).expect("uniform dimension"))
    }

    pub fn segment(&mut self) -> VPolytope {
        let q = self.denominator();
        let a = self.point_with(COORD_BOUND, q);
        let d = self.nonzero_point(COORD_BOUND / 2, q);
        self.remember(VPolytope::segment(a.clone(), &a + &d).expect("uniform dimension"))
    }

    pub fn zonotope(&mut self) -> Zonotope {
        let q = self.denominator();
        let count = self.dim + self.index(3);
        let generators = (0..count).map(|_| self.nonzero_point(COORD_BOUND / 2, q)).collect();
        let offset = self.point_with(COORD_BOUND / 2, q);
        Zonotope { offset, generators }
    }

    pub fn simplex(&mut self) -> VPolytope {
        let q = self.denominator();
        let pts: Vec<Point> = (0..=self.dim).map(|_| self.point_with(COORD_BOUND, q)).collect();
        self.remember(convex_hull(&pts).expect("uniform dimension"))
    }

    pub fn random_box(&mut self) -> VPolytope {
        let q = self.denominator();
        let sides: Vec<Rational> = (0..self.dim).map(|_| ratio(self.int(1, COORD_BOUND), q)).collect();
        let corner = self.point_with(COORD_BOUND / 2, q);
        let b = translate(&VPolytope::cube_box(&sides), &corner).expect("same dimension");
        self.remember(b)
    }

    /// A scaled translate of the previous body (a fresh hull if there is none).
    pub fn scaled_copy(&mut self) -> VPolytope {
        let Some(base) = self.last.clone() else {
            return self.random_hull();
        };
        let factors = [ratio(1, 2), ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(3, 1)];
        let s = factors[self.index(factors.len())].clone();
        let q = self.denominator();
        let shift = self.point_with(COORD_BOUND / 2, q);
        let p = translate(&scale(&base, &s).expect("positive"), &shift).expect("same dimension");
        self.remember(p)
    }

    /// A hull of points in a random proper affine subspace (dimension >= 1).
    pub fn lower_dimensional(&mut self) -> VPolytope {
        if self.dim <= 1 {
            return self.segment();
        }
        let k = 1 + self.index(self.dim - 1);
        let q = self.denominator();
        let base = self.point_with(COORD_BOUND / 2, q);
        let dirs: Vec<Point> = (0..k).map(|_| self.nonzero_point(2, 1)).collect();
        let pts: Vec<Point> = (0..k + 3)
            .map(|_| {
                let mut p = base.clone();
                for d in &dirs {
                    p = &p + &d.scaled(&ratio(self.int(-3, 3), q));
                }
                p
            })
            .collect();
        self.remember(convex_hull(&pts).expect("uniform dimension"))
    }

    pub fn body_of_kind(&mut self, kind: BodyKind) -> VPolytope {
        match kind {
            BodyKind::RandomHull => self.random_hull(),
            BodyKind::Segment => self.segment(),
            BodyKind::Zonotope => {
                let z = self.zonotope().to_polytope();
                self.remember(z)
            }
            BodyKind::Simplex => self.simplex(),
            BodyKind::Box => self.random_box(),
            BodyKind::ScaledCopy => self.scaled_copy(),
        }
    }

    fn regular_kind(&mut self) -> BodyKind {
        match self.index(20) {
            0..=9 => BodyKind::RandomHull,
            10..=12 => BodyKind::Zonotope,
            13..=14 => BodyKind::Simplex,
            15..=16 => BodyKind::Box,
            _ => BodyKind::ScaledCopy,
        }
    }

    /// Any body; degenerate ones (segments or lower-dimensional hulls) make
    /// up `DEGENERATE_PERCENT` of draws.
    pub fn body(&mut self) -> (BodyKind, VPolytope) {
        if self.percent(DEGENERATE_PERCENT) {
            return if self.percent(50) {
                (BodyKind::Segment, self.segment())
            } else {
                (BodyKind::RandomHull, self.lower_dimensional())
            };
        }
        let kind = self.regular_kind();
        (kind, self.body_of_kind(kind))
    }

    /// A full-dimensional body (redrawn until it is).
    pub fn full_body(&mut self) -> (BodyKind, VPolytope) {
        loop {
            let kind = self.regular_kind();
            let b = self.body_of_kind(kind);
            if b.is_full_dimensional() {
                return (kind, b);
            }
        }
    }

    /// A zonotope, degenerate with probability `DEGENERATE_PERCENT` (fewer
    /// generators than the dimension).
    pub fn zonotope_body(&mut self) -> Zonotope {
        let mut z = self.zonotope();
        if self.percent(DEGENERATE_PERCENT) {
            let keep = 1 + self.index(self.dim.max(2) - 1);
            z.generators.truncate(keep.min(self.dim.saturating_sub(1)).max(1));
        }
        z
    }

    fn small_vector(&mut self) -> Vec<Rational> {
        let q = self.denominator();
        (0..self.dim).map(|_| ratio(self.int(-3, 3), q)).collect()
    }

    /// Sum of `rank` random rank-one terms `v v^T` (rank drawn in `1..=n`
    /// when `None`); always PSD, often singular.
    pub fn psd_matrix(&mut self, rank: Option<usize>) -> SymMatrix {
        let rank = rank.unwrap_or_else(|| 1 + self.index(self.dim));
        let mut m = SymMatrix::zero(self.dim);
        for _ in 0..rank {
            let v = self.small_vector();
            m = m.add(&SymMatrix::outer(&v)).expect("same dimension");
        }
        m
    }

    /// Positive definite: random PSD plus a positive diagonal, re-certified.
    pub fn pd_matrix(&mut self) -> SymMatrix {
        loop {
            let q = self.denominator();
            let diag: Vec<Rational> = (0..self.dim).map(|_| ratio(self.int(1, 4), q)).collect();
            let m = self.psd_matrix(None).add(&SymMatrix::diagonal(&diag)).expect("same dimension");
            if certify_psd(&m).is_pd {
                return m;
            }
        }
    }

    /// Diagonal with non-negative entries (about a fifth of them zero).
    pub fn diagonal_psd(&mut self) -> SymMatrix {
        let q = self.denominator();
        let d: Vec<Rational> =
            (0..self.dim).map(|_| if self.percent(20) { Rational::zero() } else { ratio(self.int(1, 8), q) }).collect();
        SymMatrix::diagonal(&d)
    }

    pub fn diagonal_pd(&mut self) -> SymMatrix {
        let q = self.denominator();
        let d: Vec<Rational> = (0..self.dim).map(|_| ratio(self.int(1, 8), q)).collect();
        SymMatrix::diagonal(&d)
    }

    /// Non-negative rational, zero with the given percentage.
    pub fn nonneg(&mut self, zero_percent: u32) -> Rational {
        if self.percent(zero_percent) {
            return Rational::zero();
        }
        let q = self.denominator();
        ratio(self.int(1, COORD_BOUND), q)
    }

    /// Random exponent set of a Laurent polynomial: `2..=n+3` distinct
    /// vectors with entries in `-1..=3`.
    pub fn exponent_set(&mut self) -> Vec<Vec<i64>> {
        let count = 2 + self.index(self.dim + 2);
        let mut out: Vec<Vec<i64>> = Vec::new();
        while out.len() < count {
            let e: Vec<i64> = (0..self.dim).map(|_| self.int(-1, 3)).collect();
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }
}
