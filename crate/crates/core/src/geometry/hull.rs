//! Exact convex hulls and volumes of integer point sets.
//!
//! Full-dimensional hulls are built by beneath-beyond insertion in quickhull
//! order: facets are kept as oriented hyperplanes together with every
//! inserted point lying on them plus a conflict list of uninserted points
//! beyond them, and a new point replaces its visible facets by cones over
//! the horizon ridges. Ridges are detected exactly (two facets sharing a set of
//! affine dimension d-2), so non-simplicial facets need no special casing.
//! Lower-dimensional inputs are projected injectively onto a coordinate
//! subspace of their affine hull first.

use num_traits::Zero;

use super::int::{affine_basis, dot, hyperplane_normal, make_primitive, Int, IntResult};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFacet<T> {
    /// Primitive outward normal.
    pub normal: Vec<T>,
    pub offset: T,
    /// Indices (into the input) of the hull vertices on this facet, sorted.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct IntHull<T> {
    pub dim: usize,
    pub affine_dim: usize,
    /// Indices into the input of the extreme points, sorted.
    pub vertices: Vec<usize>,
    /// Facets; empty unless `affine_dim == dim`.
    pub facets: Vec<IntFacet<T>>,
}

pub fn hull<T: Int>(points: &[Vec<T>]) -> IntResult<IntHull<T>> {
    let dim = points.first().map_or(0, Vec::len);
    let mut unique: Vec<usize> = (0..points.len()).collect();
    unique.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
    unique.dedup_by(|a, b| points[*a] == points[*b]);

    let (basis_pts, basis) = affine_basis(points, &unique)?;
    let affine_dim = basis_pts.len().saturating_sub(1);

    if affine_dim == dim && dim >= 1 {
        if dim == 1 {
            let lo = unique[0];
            let hi = *unique.last().unwrap();
            let facets = vec![
                IntFacet { normal: vec![T::one().neg()?], offset: points[lo][0].neg()?, vertices: vec![lo] },
                IntFacet { normal: vec![T::one()], offset: points[hi][0].clone(), vertices: vec![hi] },
            ];
            let mut vertices = vec![lo, hi];
            vertices.sort_unstable();
            return Ok(IntHull { dim, affine_dim, vertices, facets });
        }
        let (vertices, facets) = full_hull(points, &unique, &basis_pts)?;
        return Ok(IntHull { dim, affine_dim, vertices, facets });
    }

    let vertices = match affine_dim {
        0 => vec![unique[0]],
        _ => {
            let cols = basis.pivot_columns();
            let projected: Vec<Vec<T>> = unique
                .iter()
                .map(|&i| cols.iter().map(|&c| points[i][c].clone()).collect())
                .collect();
            let sub = hull(&projected)?;
            let mut v: Vec<usize> = sub.vertices.iter().map(|&i| unique[i]).collect();
            v.sort_unstable();
            v
        }
    };
    Ok(IntHull { dim, affine_dim, vertices, facets: Vec::new() })
}

struct FacetRec<T> {
    normal: Vec<T>,
    offset: T,
    points: Vec<usize>,
    /// Uninserted points strictly beyond this facet (each point is kept by at
    /// most one facet).
    outside: Vec<usize>,
}

struct Builder<'a, T: Int> {
    pts: &'a [Vec<T>],
    dim: usize,
    center: Vec<T>,
    center_scale: T,
    slab: Vec<Option<FacetRec<T>>>,
    free: Vec<usize>,
    incident: Vec<Vec<usize>>,
    // Scratch state indexed by slab id, reset lazily through epoch stamps.
    seen: Vec<u32>,
    sides: Vec<i8>,
    counted: Vec<u32>,
    counts: Vec<u32>,
    epoch: u32,
    count_epoch: u32,
    pending: Vec<usize>,
}

impl<'a, T: Int> Builder<'a, T> {
    /// Oriented primitive hyperplane through the given affinely independent points.
    fn plane_through(&self, through: &[usize]) -> IntResult<(Vec<T>, T)> {
        let refs: Vec<&[T]> = through.iter().map(|&i| self.pts[i].as_slice()).collect();
        let mut normal = hyperplane_normal(&refs)?;
        make_primitive(&mut normal)?;
        let mut offset = dot(&normal, &self.pts[through[0]])?;
        let side = dot(&normal, &self.center)?.sub(&self.center_scale.mul(&offset)?)?;
        debug_assert!(!side.is_zero(), "interior reference point on a facet plane");
        if side.signum() > 0 {
            for x in normal.iter_mut() {
                *x = x.neg()?;
            }
            offset = offset.neg()?;
        }
        Ok((normal, offset))
    }

    fn add_facet(&mut self, rec: FacetRec<T>) -> usize {
        let id = match self.free.pop() {
            Some(id) => id,
            None => {
                self.slab.push(None);
                self.seen.push(0);
                self.sides.push(0);
                self.counted.push(0);
                self.counts.push(0);
                self.slab.len() - 1
            }
        };
        for &p in &rec.points {
            self.incident[p].push(id);
        }
        self.slab[id] = Some(rec);
        id
    }

    fn kill_facet(&mut self, id: usize) -> FacetRec<T> {
        let rec = self.slab[id].take().expect("live facet");
        for &p in &rec.points {
            self.incident[p].retain(|&f| f != id);
        }
        self.free.push(id);
        rec
    }

    fn excess(&self, f: &FacetRec<T>, p: usize) -> IntResult<T> {
        dot(&f.normal, &self.pts[p])?.sub(&f.offset)
    }

    /// Hands `q` to the first listed facet that sees it; returns false when
    /// none does (the point is then inside the current hull).
    fn assign(&mut self, q: usize, facets: &[usize]) -> IntResult<bool> {
        for &f in facets {
            let rec = self.slab[f].as_ref().unwrap();
            if self.excess(rec, q)?.signum() > 0 {
                let rec = self.slab[f].as_mut().unwrap();
                if rec.outside.is_empty() {
                    self.pending.push(f);
                }
                rec.outside.push(q);
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Inserts `p`, which lies strictly beyond facet `start`.
    fn insert(&mut self, p: usize, start: usize) -> IntResult<()> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.seen[start] = epoch;
        self.sides[start] = 1;
        let mut visible = vec![start];
        let mut coplanar = Vec::new();
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut touched = Vec::new();

        // The visible region is connected through ridges, so a search over
        // facets sharing at least d-1 points finds all of it.
        let mut next = 0;
        while next < visible.len() {
            let f = visible[next];
            next += 1;
            self.count_epoch += 1;
            touched.clear();
            let frec = self.slab[f].as_ref().unwrap();
            for &v in &frec.points {
                for &g in &self.incident[v] {
                    if g == f {
                        continue;
                    }
                    if self.counted[g] != self.count_epoch {
                        self.counted[g] = self.count_epoch;
                        self.counts[g] = 0;
                        touched.push(g);
                    }
                    self.counts[g] += 1;
                }
            }
            for &g in &touched {
                if (self.counts[g] as usize) + 1 < self.dim {
                    continue;
                }
                if self.seen[g] != epoch {
                    self.seen[g] = epoch;
                    let s = self.excess(self.slab[g].as_ref().unwrap(), p)?.signum();
                    self.sides[g] = s;
                    if s > 0 {
                        visible.push(g);
                    } else if s == 0 {
                        coplanar.push(g);
                    }
                }
                if self.sides[g] < 0 {
                    horizon.push((f, g));
                }
            }
        }

        let mut new_planes: Vec<(Vec<T>, T)> = Vec::new();
        for (f, g) in horizon {
            let ridge = intersect_sorted(
                &self.slab[f].as_ref().unwrap().points,
                &self.slab[g].as_ref().unwrap().points,
            );
            let (basis, _) = affine_basis(self.pts, &ridge)?;
            if basis.len() + 1 != self.dim {
                continue;
            }
            let mut through = basis;
            through.push(p);
            new_planes.push(self.plane_through(&through)?);
        }
        new_planes.sort_unstable();
        new_planes.dedup();

        let mut candidates: Vec<usize> = Vec::new();
        let mut orphans: Vec<usize> = Vec::new();
        for f in visible {
            let rec = self.kill_facet(f);
            candidates.extend(rec.points);
            orphans.extend(rec.outside.into_iter().filter(|&q| q != p));
        }
        candidates.push(p);
        candidates.sort_unstable();
        candidates.dedup();

        for &g in &coplanar {
            let rec = self.slab[g].as_mut().unwrap();
            let pos = rec.points.binary_search(&p).unwrap_or_else(|e| e);
            rec.points.insert(pos, p);
            self.incident[p].push(g);
        }

        // Only facets created or grown here can see a point that saw a
        // removed facet and is still outside.
        let mut receivers = Vec::with_capacity(new_planes.len() + coplanar.len());
        for (normal, offset) in new_planes {
            let mut on = Vec::new();
            for &c in &candidates {
                if dot(&normal, &self.pts[c])? == offset {
                    on.push(c);
                }
            }
            receivers.push(self.add_facet(FacetRec { normal, offset, points: on, outside: Vec::new() }));
        }
        receivers.extend(coplanar);
        for q in orphans {
            self.assign(q, &receivers)?;
        }
        Ok(())
    }

    /// Removes and returns the point of `f`'s outside set farthest from its
    /// plane (in unnormalised distance).
    fn pop_farthest(&mut self, f: usize) -> IntResult<Option<usize>> {
        let Some(rec) = self.slab[f].as_ref() else {
            return Ok(None);
        };
        let mut best: Option<(usize, T)> = None;
        for (k, &q) in rec.outside.iter().enumerate() {
            let e = self.excess(rec, q)?;
            if best.as_ref().map_or(true, |(_, b)| e > *b) {
                best = Some((k, e));
            }
        }
        Ok(best.map(|(k, _)| self.slab[f].as_mut().unwrap().outside.swap_remove(k)))
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn full_hull<T: Int>(
    pts: &[Vec<T>],
    unique: &[usize],
    simplex: &[usize],
) -> IntResult<(Vec<usize>, Vec<IntFacet<T>>)> {
    let dim = pts[simplex[0]].len();
    let mut center = vec![T::zero(); dim];
    for &s in simplex {
        for (c, x) in center.iter_mut().zip(&pts[s]) {
            *c = c.add(x)?;
        }
    }
    let mut b = Builder {
        pts,
        dim,
        center,
        center_scale: T::from_big(&(dim as u64 + 1).into()).expect("small"),
        slab: Vec::new(),
        free: Vec::new(),
        incident: vec![Vec::new(); pts.len()],
        seen: Vec::new(),
        sides: Vec::new(),
        counted: Vec::new(),
        counts: Vec::new(),
        epoch: 0,
        count_epoch: 0,
        pending: Vec::new(),
    };
    let mut initial = Vec::with_capacity(simplex.len());
    for skip in 0..simplex.len() {
        let through: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &s)| s)
            .collect();
        let (normal, offset) = b.plane_through(&through)?;
        let mut on = through;
        on.sort_unstable();
        initial.push(b.add_facet(FacetRec { normal, offset, points: on, outside: Vec::new() }));
    }
    let mut in_simplex = vec![false; pts.len()];
    for &s in simplex {
        in_simplex[s] = true;
    }
    for &p in unique {
        if !in_simplex[p] {
            b.assign(p, &initial)?;
        }
    }
    while let Some(f) = b.pending.pop() {
        if let Some(p) = b.pop_farthest(f)? {
            b.insert(p, f)?;
        }
    }

    // Points lying on facets are extreme iff their incident normals span R^d.
    let mut is_vertex = vec![false; pts.len()];
    for (p, inc) in b.incident.iter().enumerate() {
        if inc.len() < dim {
            continue;
        }
        let mut basis = super::int::EchelonBasis::default();
        for &f in inc {
            basis.insert(&b.slab[f].as_ref().unwrap().normal)?;
            if basis.rank() == dim {
                is_vertex[p] = true;
                break;
            }
        }
    }
    let vertices: Vec<usize> = (0..pts.len()).filter(|&p| is_vertex[p]).collect();
    let mut facets: Vec<IntFacet<T>> = b
        .slab
        .into_iter()
        .flatten()
        .map(|f| IntFacet {
            vertices: f.points.into_iter().filter(|&p| is_vertex[p]).collect(),
            normal: f.normal,
            offset: f.offset,
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.offset.cmp(&b.offset)));
    Ok((vertices, facets))
}

/// Exact d-volume of the hull of integer points (0 when not full-dimensional).
pub fn volume<T: Int>(points: &[Vec<T>]) -> IntResult<Rational> {
    let h = hull(points)?;
    volume_of_hull(points, &h)
}

pub fn volume_of_hull<T: Int>(points: &[Vec<T>], h: &IntHull<T>) -> IntResult<Rational> {
    if h.affine_dim < h.dim || h.dim == 0 {
        return Ok(Rational::zero());
    }
    let d = h.dim;
    if d == 1 {
        let lo = &points[h.vertices[0]][0];
        let hi = &points[h.vertices[1]][0];
        return Ok(Rational::from_integer(hi.sub(lo)?.abs()?.to_big()));
    }
    // Cone decomposition from an apex vertex: each facet contributes
    // height * (d-1)-volume / d. Measuring the facet through its projection
    // along the axis where the normal is largest keeps everything rational:
    // height * area = (offset - n.apex) * proj_area / |n_j|.
    let apex = &points[h.vertices[0]];
    let mut total = Rational::zero();
    for f in &h.facets {
        let height = f.offset.sub(&dot(&f.normal, apex)?)?;
        if height.is_zero() {
            continue;
        }
        let (axis, _) = f
            .normal
            .iter()
            .enumerate()
            .map(|(j, x)| (j, x.abs()))
            .try_fold((0usize, T::zero()), |best, (j, a)| {
                let a = a?;
                Ok::<_, super::int::Overflow>(if a > best.1 { (j, a) } else { best })
            })?;
        let projected: Vec<Vec<T>> = f
            .vertices
            .iter()
            .map(|&v| {
                points[v]
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != axis)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let base = volume(&projected)?;
        let denom = f.normal[axis].abs()?.to_big();
        total += base * height.to_big() / denom;
    }
    Ok(total / Rational::from_integer((d as u64).into()))
}

/// Runs `f` with `i128` arithmetic when the inputs fit, falling back to
/// `BigInt` on overflow.
pub fn with_fallback<R>(
    points: &[Vec<num_bigint::BigInt>],
    f_small: impl FnOnce(&[Vec<i128>]) -> IntResult<R>,
    f_big: impl FnOnce(&[Vec<num_bigint::BigInt>]) -> IntResult<R>,
) -> R {
    let small: Option<Vec<Vec<i128>>> = points
        .iter()
        .map(|p| p.iter().map(<i128 as Int>::from_big).collect())
        .collect();
    if let Some(small) = small {
        if let Ok(r) = f_small(&small) {
            return r;
        }
    }
    f_big(points).expect("BigInt arithmetic cannot overflow")
}
