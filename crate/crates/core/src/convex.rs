//! Exact convex geometry over Q: polyhedral cones and polyhedra in V-form
//! (vertices plus tail cone) with derived, cached H-form.
//!
//! Everything is kept canonical so that structural equality decides set
//! equality: a cone stores a reduced-echelon basis of its lineality space plus
//! its extreme rays reduced modulo that basis, primitive and sorted; a
//! polyhedron stores its true vertex set (redundant input points are dropped)
//! sorted lexicographically.  The single conversion primitive is
//! `enumerate_rays`, an incremental double-description pass that turns an
//! inequality system into that canonical generator form.  Dualizing a cone,
//! canonicalizing generators and enumerating the vertices of an H-form
//! polyhedron (after homogenization) are all instances of it.
//!
//! Scale: ranks up to half a dozen, handfuls of generators.  Correctness and
//! determinism are the design goals, not asymptotics; candidate rays are
//! pruned by an exact algebraic extremality test (active-constraint rank)
//! rather than adjacency bookkeeping.

use crate::error::Error;
use crate::linalg::{primitive_vector, rank_int_rows, IntMatrix};
use crate::{dot_ii, dot_iq, dot_qq, qvec_to_primitive, to_qvec, IVec, Int, QVec, Rat};
use num_traits::{Signed, Zero};
use std::sync::OnceLock;

fn unit_vector(rank: usize, i: usize) -> IVec {
    let mut v = vec![Int::zero(); rank];
    v[i] = Int::from(1);
    v
}

fn primitive_or_zero(v: &[Int]) -> IVec {
    primitive_vector(v).unwrap_or_else(|_| vec![Int::zero(); v.len()])
}

/// Reduced row echelon basis (primitive integer rows, pivot entries positive,
/// ordered by pivot column) of the span of `rows`.  Canonical for the
/// subspace.
fn rref_basis(rank: usize, rows: &[IVec]) -> Vec<IVec> {
    let mut m: Vec<QVec> = rows
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .map(|r| to_qvec(r))
        .collect();
    let mut out: Vec<IVec> = Vec::new();
    let mut used = 0usize;
    for col in 0..rank {
        let Some(p) = (used..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(used, p);
        let inv = m[used][col].recip();
        for x in m[used].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[used].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == used || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        used += 1;
    }
    for row in m.into_iter().take(used) {
        out.push(qvec_to_primitive(&row).expect("pivot row is nonzero"));
    }
    out
}

/// Canonical representative of `r` modulo the span of an echelon basis:
/// pivot coordinates eliminated, then primitive.  The direction of `r` is
/// preserved (all rescalings are positive).
fn reduce_mod_basis(r: &[Int], basis: &[IVec]) -> IVec {
    let mut r = r.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        if r[p].is_zero() {
            continue;
        }
        let (bp, rp) = (b[p].clone(), r[p].clone());
        debug_assert!(bp.is_positive());
        for (x, bx) in r.iter_mut().zip(b) {
            *x = &*x * &bp - &rp * bx;
        }
    }
    primitive_or_zero(&r)
}

fn reduce_qvec_mod_basis(v: &[Rat], basis: &[IVec]) -> QVec {
    let mut v = v.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        if v[p].is_zero() {
            continue;
        }
        let f = &v[p] / Rat::from_integer(b[p].clone());
        for (x, bx) in v.iter_mut().zip(b) {
            *x -= &f * Rat::from_integer(bx.clone());
        }
    }
    v
}

/// Keep exactly the extreme rays: `r` spans a minimal nonzero face iff the
/// inequalities active at `r` have rank `ambient - lin_dim - 1`.
fn filter_extreme(rank: usize, lin: &[IVec], candidates: Vec<IVec>, processed: &[IVec]) -> Vec<IVec> {
    let needed = rank - lin.len() - 1;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for r in candidates {
        let rr = reduce_mod_basis(&r, lin);
        if rr.iter().all(|x| x.is_zero()) || !seen.insert(rr.clone()) {
            continue;
        }
        let active: Vec<IVec> = processed.iter().filter(|a| dot_ii(a, &rr).is_zero()).cloned().collect();
        if rank_int_rows(&active) == needed {
            out.push(rr);
        }
    }
    out
}

/// Canonical generators of `{x : <a, x> >= 0 for all a in ineqs}`: an echelon
/// basis of the lineality space and the extreme rays reduced modulo it,
/// both sorted.  Deterministic and independent of the input order.
pub fn enumerate_rays(rank: usize, ineqs: &[IVec]) -> (Vec<IVec>, Vec<IVec>) {
    let mut lin: Vec<IVec> = (0..rank).map(|i| unit_vector(rank, i)).collect();
    let mut rays: Vec<IVec> = Vec::new();
    let mut processed: Vec<IVec> = Vec::new();
    for a in ineqs {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let a = primitive_or_zero(a);
        if let Some(idx) = lin.iter().position(|b| !dot_ii(&a, b).is_zero()) {
            // The constraint cuts the lineality space: one basis vector leaves
            // it and becomes a ray; everything else is projected into the
            // hyperplane of the constraint.
            let mut b0 = lin.remove(idx);
            let mut d0 = dot_ii(&a, &b0);
            if d0.is_negative() {
                b0 = b0.iter().map(|x| -x).collect();
                d0 = -d0;
            }
            for b in lin.iter_mut() {
                let db = dot_ii(&a, b);
                if !db.is_zero() {
                    let nb: IVec = b.iter().zip(&b0).map(|(x, y)| &d0 * x - &db * y).collect();
                    *b = primitive_or_zero(&nb);
                }
            }
            for r in rays.iter_mut() {
                let dr = dot_ii(&a, r);
                if !dr.is_zero() {
                    let nr: IVec = r.iter().zip(&b0).map(|(x, y)| &d0 * x - &dr * y).collect();
                    *r = primitive_or_zero(&nr);
                }
            }
            rays.push(b0);
            lin = rref_basis(rank, &lin);
        } else {
            let mut keep: Vec<IVec> = Vec::new();
            let mut pos: Vec<(IVec, Int)> = Vec::new();
            let mut neg: Vec<(IVec, Int)> = Vec::new();
            for r in rays.drain(..) {
                let d = dot_ii(&a, &r);
                if d.is_zero() {
                    keep.push(r);
                } else if d.is_positive() {
                    pos.push((r, d));
                } else {
                    neg.push((r, d));
                }
            }
            for (rp, dp) in &pos {
                for (rn, dn) in &neg {
                    // positive combination lying in the hyperplane
                    let c: IVec = rn.iter().zip(rp).map(|(n, p)| dp * n - dn * p).collect();
                    keep.push(primitive_or_zero(&c));
                }
            }
            keep.extend(pos.into_iter().map(|(r, _)| r));
            rays = keep;
        }
        processed.push(a);
        rays = filter_extreme(rank, &lin, rays, &processed);
    }
    rays.sort();
    (lin, rays)
}

/// `lineality` expanded to plus/minus pairs and merged with `rays`, sorted.
fn merged_generators(lineality: &[IVec], rays: &[IVec]) -> Vec<IVec> {
    let mut out: Vec<IVec> = Vec::new();
    for b in lineality {
        out.push(b.clone());
        out.push(b.iter().map(|x| -x).collect());
    }
    out.extend(rays.iter().cloned());
    out.sort();
    out
}

/// Polyhedral cone in canonical V-form.
#[derive(Debug, Clone)]
pub struct Cone {
    rank: usize,
    lineality: Vec<IVec>,
    rays: Vec<IVec>,
    /// Lineality basis and extreme rays of the dual cone; doubles as the
    /// H-form of this cone.  Write-once.
    dual_parts: OnceLock<(Vec<IVec>, Vec<IVec>)>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.lineality == other.lineality && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl Cone {
    /// Cone spanned by `generators`, canonicalized.
    pub fn from_generators<I>(rank: usize, generators: I) -> Cone
    where
        I: IntoIterator<Item = IVec>,
    {
        let gens: Vec<IVec> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), rank, "generator of wrong rank"))
            .filter(|g| !g.iter().all(|x| x.is_zero()))
            .collect();
        let (dlin, drays) = enumerate_rays(rank, &gens);
        let hrep = merged_generators(&dlin, &drays);
        let (lin, rays) = enumerate_rays(rank, &hrep);
        let cone = Cone { rank, lineality: lin, rays, dual_parts: OnceLock::new() };
        let _ = cone.dual_parts.set((dlin, drays));
        cone
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(rank, Vec::<IVec>::new())
    }

    pub fn nonneg_orthant(rank: usize) -> Cone {
        Cone::from_generators(rank, (0..rank).map(|i| unit_vector(rank, i)))
    }

    /// Cone cut out by `<a, x> >= 0` for the given functionals.
    pub fn from_inequalities(rank: usize, ineqs: &[IVec]) -> Cone {
        let (lin, rays) = enumerate_rays(rank, ineqs);
        Cone { rank, lineality: lin, rays, dual_parts: OnceLock::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn extreme_rays(&self) -> &[IVec] {
        &self.rays
    }

    /// Canonical generator list: plus/minus lineality basis plus extreme rays.
    pub fn generators(&self) -> Vec<IVec> {
        merged_generators(&self.lineality, &self.rays)
    }

    fn dual_parts(&self) -> &(Vec<IVec>, Vec<IVec>) {
        self.dual_parts.get_or_init(|| enumerate_rays(self.rank, &self.generators()))
    }

    /// H-form: functionals `h` with `c == {x : <h, x> >= 0 for all h}`.
    /// These are exactly the generators of the dual cone.
    pub fn halfspaces(&self) -> Vec<IVec> {
        let (dlin, drays) = self.dual_parts();
        merged_generators(dlin, drays)
    }

    /// Dual cone `{u : <u, v> >= 0 for all v in self}`.
    pub fn dual(&self) -> Cone {
        let (dlin, drays) = self.dual_parts().clone();
        let dual = Cone { rank: self.rank, lineality: dlin, rays: drays, dual_parts: OnceLock::new() };
        let _ = dual.dual_parts.set((self.lineality.clone(), self.rays.clone()));
        dual
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        assert_eq!(x.len(), self.rank);
        self.halfspaces().iter().all(|h| !dot_ii(h, x).is_negative())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.rank);
        self.halfspaces().iter().all(|h| !dot_iq(h, x).is_negative())
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains_int(g))
    }

    /// Image cone under an integer matrix (columns of `self`'s rank).
    pub fn image(&self, f: &IntMatrix) -> Cone {
        assert_eq!(f.cols(), self.rank, "matrix does not act on this cone");
        Cone::from_generators(f.rows(), self.generators().iter().map(|g| f.apply(g)))
    }
}

/// Value of a support minimum: finite, or unbounded below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportValue {
    Finite(Rat),
    MinusInfinity,
}

impl SupportValue {
    pub fn finite(self) -> Option<Rat> {
        match self {
            SupportValue::Finite(r) => Some(r),
            SupportValue::MinusInfinity => None,
        }
    }
}

/// Polyhedron `conv(vertices) + tail` in canonical V-form.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    rank: usize,
    vertices: Vec<QVec>,
    tail: Cone,
    /// Homogenized H-form rows `(a, c)` meaning `<a, x> + c >= 0`.
    hrep: OnceLock<Vec<IVec>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices && self.tail == other.tail
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    /// Canonicalizing constructor.  `vertices` must be nonempty and match the
    /// tail's rank; redundant points are dropped.
    pub fn new<I>(vertices: I, tail: Cone) -> Result<Polyhedron, Error>
    where
        I: IntoIterator<Item = QVec>,
    {
        let rank = tail.rank();
        let mut verts: Vec<QVec> = Vec::new();
        for v in vertices {
            if v.len() != rank {
                return Err(Error::RankMismatch(format!(
                    "vertex of length {} in a rank-{} polyhedron",
                    v.len(),
                    rank
                )));
            }
            let v = reduce_qvec_mod_basis(&v, tail.lineality());
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        assert!(!verts.is_empty(), "polyhedron needs at least one vertex");
        // Homogenize and take the H-form once; it also certifies extremality.
        let mut hgens: Vec<IVec> = Vec::new();
        for v in &verts {
            let mut h = v.clone();
            h.push(Rat::from_integer(Int::from(1)));
            hgens.push(qvec_to_primitive(&h).expect("homogenized vertex is nonzero"));
        }
        for g in tail.generators() {
            let mut h = g.clone();
            h.push(Int::zero());
            hgens.push(h);
        }
        let (dlin, drays) = enumerate_rays(rank + 1, &hgens);
        let hrep_rows = merged_generators(&dlin, &drays);
        let lin_dim = tail.lineality().len();
        let needed = rank - lin_dim; // == (rank+1) - lin_dim - 1
        let mut kept: Vec<QVec> = Vec::new();
        for v in verts {
            let mut hv = v.clone();
            hv.push(Rat::from_integer(Int::from(1)));
            let active: Vec<IVec> =
                hrep_rows.iter().filter(|row| dot_iq(row, &hv).is_zero()).cloned().collect();
            if rank_int_rows(&active) == needed {
                kept.push(v);
            }
        }
        kept.sort();
        assert!(!kept.is_empty(), "canonicalization must keep a vertex");
        let poly = Polyhedron { rank, vertices: kept, tail, hrep: OnceLock::new() };
        let _ = poly.hrep.set(hrep_rows);
        Ok(poly)
    }

    /// Single rational point with zero tail.
    pub fn point(v: QVec) -> Polyhedron {
        let rank = v.len();
        Polyhedron::new([v], Cone::zero(rank)).expect("a point is always valid")
    }

    /// Rank-1 interval `[lo, hi]` with zero tail; errors when `lo > hi`.
    pub fn interval(lo: Rat, hi: Rat) -> Result<Polyhedron, Error> {
        if lo > hi {
            return Err(Error::EmptyInterval(format!("[{lo}, {hi}] is empty")));
        }
        Polyhedron::new([vec![lo], vec![hi]], Cone::zero(1))
    }

    /// The neutral element of Minkowski addition with tail `tail`: the origin
    /// plus the tail cone.
    pub fn trivial(tail: Cone) -> Polyhedron {
        let rank = tail.rank();
        Polyhedron::new([vec![Rat::zero(); rank]], tail).expect("origin plus tail is always valid")
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// Homogenized H-form rows `(a, c)` with `<a, x> + c >= 0` on the
    /// polyhedron.  Computed at construction and cached.
    pub fn hrep(&self) -> &[IVec] {
        self.hrep.get_or_init(|| {
            let mut hgens: Vec<IVec> = Vec::new();
            for v in &self.vertices {
                let mut h = v.clone();
                h.push(Rat::from_integer(Int::from(1)));
                hgens.push(qvec_to_primitive(&h).expect("homogenized vertex is nonzero"));
            }
            for g in self.tail.generators() {
                let mut h = g.clone();
                h.push(Int::zero());
                hgens.push(h);
            }
            let (dlin, drays) = enumerate_rays(self.rank + 1, &hgens);
            merged_generators(&dlin, &drays)
        })
    }

    /// `min { <u, x> : x in self }`.
    pub fn support_min(&self, u: &[Rat]) -> SupportValue {
        assert_eq!(u.len(), self.rank);
        for g in self.tail.generators() {
            if dot_iq(&g, u).is_negative() {
                return SupportValue::MinusInfinity;
            }
        }
        let mut best: Option<Rat> = None;
        for v in &self.vertices {
            let val = dot_qq(u, v);
            if best.as_ref().map_or(true, |b| val < *b) {
                best = Some(val);
            }
        }
        SupportValue::Finite(best.expect("vertex list is nonempty"))
    }

    /// Minkowski sum; tails must agree.
    pub fn minkowski(&self, other: &Polyhedron) -> Result<Polyhedron, Error> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch("Minkowski sum of different ranks".into()));
        }
        if self.tail != other.tail {
            return Err(Error::TailMismatch("Minkowski sum needs equal tail cones".into()));
        }
        let mut sums: Vec<QVec> = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Polyhedron::new(sums, self.tail.clone())
    }

    /// Whether `inner` is a subset of `self` (tails may differ).
    pub fn contains_poly(&self, inner: &Polyhedron) -> Result<bool, Error> {
        if self.rank != inner.rank {
            return Err(Error::RankMismatch("containment across different ranks".into()));
        }
        for v in inner.vertices() {
            let mut hv = v.clone();
            hv.push(Rat::from_integer(Int::from(1)));
            if self.hrep().iter().any(|row| dot_iq(row, &hv).is_negative()) {
                return Ok(false);
            }
        }
        for g in inner.tail.generators() {
            for row in self.hrep() {
                if dot_ii(&row[..self.rank], &g).is_negative() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.rank);
        let mut hv = x.to_vec();
        hv.push(Rat::from_integer(Int::from(1)));
        self.hrep().iter().all(|row| !dot_iq(row, &hv).is_negative())
    }

    /// Dilation by a positive rational factor (tail unchanged).
    pub fn scale(&self, r: &Rat) -> Polyhedron {
        assert!(r.is_positive(), "scale factor must be positive");
        let verts = self.vertices.iter().map(|v| v.iter().map(|x| x * r).collect());
        Polyhedron::new(verts, self.tail.clone()).expect("scaling preserves validity")
    }

    /// Translation by a rational vector (tail unchanged).
    pub fn translate(&self, t: &[Rat]) -> Polyhedron {
        assert_eq!(t.len(), self.rank);
        let verts = self.vertices.iter().map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect());
        Polyhedron::new(verts, self.tail.clone()).expect("translation preserves validity")
    }

    /// Image `F(self) + target_tail` under an integer matrix.
    pub fn map_through(&self, f: &IntMatrix, target_tail: Cone) -> Result<Polyhedron, Error> {
        if f.cols() != self.rank {
            return Err(Error::RankMismatch("matrix does not act on this polyhedron".into()));
        }
        if f.rows() != target_tail.rank() {
            return Err(Error::RankMismatch("target tail has wrong rank".into()));
        }
        Polyhedron::new(self.vertices.iter().map(|v| f.apply_q(v)), target_tail)
    }

    /// Polyhedron cut out by homogenized rows `(a, c)`, i.e. `<a, x> + c >= 0`.
    /// Returns `None` when the system is infeasible.
    pub fn from_hrep(rank: usize, rows: &[IVec]) -> Option<Polyhedron> {
        let mut ineqs: Vec<IVec> = Vec::new();
        for row in rows {
            assert_eq!(row.len(), rank + 1, "homogenized row of wrong length");
            ineqs.push(row.clone());
        }
        ineqs.push(unit_vector(rank + 1, rank)); // the slice variable is nonnegative
        let (lin, rays) = enumerate_rays(rank + 1, &ineqs);
        let mut verts: Vec<QVec> = Vec::new();
        let mut tail_gens: Vec<IVec> = Vec::new();
        for b in &lin {
            debug_assert!(b[rank].is_zero());
            tail_gens.push(b[..rank].to_vec());
            tail_gens.push(b[..rank].iter().map(|x| -x).collect());
        }
        for r in &rays {
            let t = &r[rank];
            if t.is_zero() {
                tail_gens.push(r[..rank].to_vec());
            } else {
                let tq = Rat::from_integer(t.clone());
                verts.push(r[..rank].iter().map(|x| Rat::from_integer(x.clone()) / &tq).collect());
            }
        }
        if verts.is_empty() {
            return None;
        }
        let tail = Cone::from_generators(rank, tail_gens);
        Some(Polyhedron::new(verts, tail).expect("vertex list is nonempty"))
    }

    /// Minkowski difference: the unique `X` with `X + sub == self`, if it
    /// exists (checked exactly).
    pub fn minkowski_difference(&self, sub: &Polyhedron) -> Option<Polyhedron> {
        if self.rank != sub.rank || self.tail != sub.tail {
            return None;
        }
        // Erosion: shift every halfspace of `self` inward by the support
        // minimum of `sub`, then verify the sum reproduces `self` exactly.
        let mut rows: Vec<IVec> = Vec::new();
        for row in self.hrep() {
            let a = &row[..self.rank];
            let aq = to_qvec(a);
            let m = sub.support_min(&aq).finite()?;
            let mut shifted = to_qvec(row);
            shifted[self.rank] += m;
            rows.push(qvec_to_primitive(&shifted)?);
        }
        let candidate = Polyhedron::from_hrep(self.rank, &rows)?;
        if candidate.tail != self.tail {
            return None;
        }
        match candidate.minkowski(sub) {
            Ok(sum) if sum == *self => Some(candidate),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn qv(v: &[i64]) -> QVec {
        v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = Cone::nonneg_orthant(2);
        assert_eq!(c.dual(), c);
        assert!(c.is_pointed());
        assert_eq!(c.extreme_rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn dual_of_zero_cone_is_everything() {
        let z = Cone::zero(1);
        let d = z.dual();
        assert_eq!(d.lineality(), &[iv(&[1])]);
        assert!(d.extreme_rays().is_empty());
        assert_eq!(d.generators(), vec![iv(&[-1]), iv(&[1])]);
        assert_eq!(d.dual(), z);
    }

    #[test]
    fn dual_of_plane_cone() {
        let c = Cone::from_generators(2, [iv(&[1, 0]), iv(&[1, 2])]);
        let d = c.dual();
        assert_eq!(d.extreme_rays(), &[iv(&[0, 1]), iv(&[2, -1])]);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = Cone::from_generators(2, [iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1])]);
        assert!(!c.is_pointed());
        assert_eq!(c.lineality(), &[iv(&[1, 0])]);
        assert_eq!(c.extreme_rays(), &[iv(&[0, 1])]);
        // a skew generating set canonicalizes to the same cone
        let c2 = Cone::from_generators(2, [iv(&[-1, 0]), iv(&[3, 1]), iv(&[1, 0])]);
        assert_eq!(c, c2);
    }

    #[test]
    fn redundant_generator_dropped() {
        let c = Cone::from_generators(2, [iv(&[1, 0]), iv(&[1, 1]), iv(&[0, 1])]);
        assert_eq!(c.extreme_rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn cone_membership() {
        let c = Cone::from_generators(2, [iv(&[1, 0]), iv(&[1, 2])]);
        assert!(c.contains_int(&iv(&[2, 1])));
        assert!(!c.contains_int(&iv(&[0, -1])));
        assert!(c.contains_int(&iv(&[0, 0])));
    }

    #[test]
    fn interval_canonicalization() {
        // conv{0, 1/2, 1} == [0, 1]
        let p = Polyhedron::new([vec![q(0, 1)], vec![q(1, 2)], vec![q(1, 1)]], Cone::zero(1)).unwrap();
        assert_eq!(p.vertices(), &[vec![q(0, 1)], vec![q(1, 1)]]);
        let i = Polyhedron::interval(q(0, 1), q(1, 1)).unwrap();
        assert_eq!(p, i);
    }

    #[test]
    fn empty_interval_rejected() {
        match Polyhedron::interval(q(1, 1), q(0, 1)) {
            Err(Error::EmptyInterval(_)) => {}
            other => panic!("expected EmptyInterval, got {other:?}"),
        }
    }

    #[test]
    fn vertex_absorbed_by_tail() {
        // conv{0, 1/3} + R>=0 == [0, inf)
        let tail = Cone::from_generators(1, [iv(&[1])]);
        let p = Polyhedron::new([vec![q(0, 1)], vec![q(1, 3)]], tail).unwrap();
        assert_eq!(p.vertices(), &[vec![q(0, 1)]]);
    }

    #[test]
    fn support_min_examples() {
        let p = Polyhedron::interval(q(0, 1), q(1, 6)).unwrap();
        assert_eq!(p.support_min(&[q(6, 1)]), SupportValue::Finite(q(0, 1)));
        assert_eq!(p.support_min(&[q(-6, 1)]), SupportValue::Finite(q(-1, 1)));
        let pt = Polyhedron::point(vec![q(1, 2)]);
        assert_eq!(pt.support_min(&[q(0, 1)]), SupportValue::Finite(q(0, 1)));
        let ray = Polyhedron::new([vec![q(0, 1)]], Cone::from_generators(1, [iv(&[1])])).unwrap();
        assert_eq!(ray.support_min(&[q(-1, 1)]), SupportValue::MinusInfinity);
    }

    #[test]
    fn minkowski_examples() {
        let a = Polyhedron::interval(q(0, 1), q(1, 3)).unwrap();
        let b = Polyhedron::point(vec![q(1, 2)]);
        let s = a.minkowski(&b).unwrap();
        assert_eq!(s, Polyhedron::interval(q(1, 2), q(5, 6)).unwrap());
        // neutral element
        let t = a.minkowski(&Polyhedron::trivial(Cone::zero(1))).unwrap();
        assert_eq!(t, a);
    }

    #[test]
    fn minkowski_tail_mismatch() {
        let a = Polyhedron::interval(q(0, 1), q(1, 3)).unwrap();
        let b = Polyhedron::trivial(Cone::from_generators(1, [iv(&[1])]));
        match a.minkowski(&b) {
            Err(Error::TailMismatch(_)) => {}
            other => panic!("expected TailMismatch, got {other:?}"),
        }
    }

    #[test]
    fn containment_examples() {
        let outer = Polyhedron::interval(q(0, 1), q(1, 2)).unwrap();
        let inner = Polyhedron::interval(q(1, 6), q(1, 3)).unwrap();
        assert!(outer.contains_poly(&inner).unwrap());
        assert!(!inner.contains_poly(&outer).unwrap());
        // unbounded: [0, 1/3] + R>=0 contains [1/6, inf)
        let tail = Cone::from_generators(1, [iv(&[1])]);
        let big = Polyhedron::new([vec![q(0, 1)], vec![q(1, 3)]], tail.clone()).unwrap();
        let small = Polyhedron::new([vec![q(1, 6)]], tail).unwrap();
        assert!(big.contains_poly(&small).unwrap());
        assert!(!small.contains_poly(&big).unwrap());
    }

    #[test]
    fn scale_translate() {
        let p = Polyhedron::interval(q(0, 1), q(1, 3)).unwrap();
        assert_eq!(p.scale(&q(3, 1)), Polyhedron::interval(q(0, 1), q(1, 1)).unwrap());
        assert_eq!(
            p.translate(&[q(-1, 3)]),
            Polyhedron::interval(q(-1, 3), q(0, 1)).unwrap()
        );
    }

    #[test]
    fn hrep_roundtrip_2d() {
        // triangle with a tail ray
        let tail = Cone::from_generators(2, [iv(&[1, 1])]);
        let p = Polyhedron::new([qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])], tail).unwrap();
        let rebuilt = Polyhedron::from_hrep(2, &p.hrep().to_vec()).unwrap();
        assert_eq!(p, rebuilt);
    }

    #[test]
    fn from_hrep_infeasible() {
        // x >= 1 and -x >= 0
        let rows = vec![iv(&[1, -1]), iv(&[-1, 0])];
        assert!(Polyhedron::from_hrep(1, &rows).is_none());
    }

    #[test]
    fn minkowski_difference_intervals() {
        let whole = Polyhedron::interval(q(0, 1), q(1, 2)).unwrap();
        let part = Polyhedron::interval(q(0, 1), q(1, 3)).unwrap();
        let rest = whole.minkowski_difference(&part).unwrap();
        assert_eq!(rest, Polyhedron::interval(q(0, 1), q(1, 6)).unwrap());
        // difference that does not exist: a point minus an interval
        let pt = Polyhedron::point(vec![q(0, 1)]);
        assert!(pt.minkowski_difference(&part).is_none());
    }

    #[test]
    fn map_through_matrix() {
        let p = Polyhedron::interval(q(0, 1), q(1, 6)).unwrap();
        let f = IntMatrix::from_rows(&[&[2]]);
        let image = p.map_through(&f, Cone::zero(1)).unwrap();
        assert_eq!(image, Polyhedron::interval(q(0, 1), q(1, 3)).unwrap());
    }

    #[test]
    fn polyhedron_with_lineality_canonicalizes() {
        // conv{(0,0),(0,1)} + full x-axis: vertices reduce mod the line
        let tail = Cone::from_generators(2, [iv(&[1, 0]), iv(&[-1, 0])]);
        let p = Polyhedron::new([qv(&[3, 0]), qv(&[-2, 1])], tail.clone()).unwrap();
        let p2 = Polyhedron::new([qv(&[0, 0]), qv(&[5, 1])], tail).unwrap();
        assert_eq!(p, p2);
    }
}
