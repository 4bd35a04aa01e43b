//! Exact integer linear algebra: matrices over Z, Smith normal form with
//! unimodular certificates, free cokernel presentations with a rational
//! section, primitive vectors, kernels and integer linear solving.
//!
//! The Smith normal form here is fully deterministic: the pivot is always the
//! nonzero entry of smallest absolute value in the remaining block, ties broken
//! leftmost column first, then topmost row.  Every caller that derives lattice
//! data from the transformation matrices depends on that rule staying fixed.

use crate::error::Error;
use crate::{Int, IVec, QVec, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over Z, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Convenience constructor from machine integers.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Int::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Column vector from machine integers.
    pub fn column(entries: &[i64]) -> Self {
        IntMatrix { rows: entries.len(), cols: 1, data: entries.iter().map(|&x| Int::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> IVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Apply to an integer vector (matrix times column).
    pub fn apply(&self, v: &[Int]) -> IVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix apply");
        (0..self.rows).map(|i| crate::dot_ii(self.row(i), v)).collect()
    }

    /// Apply to a rational vector.
    pub fn apply_q(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix apply");
        (0..self.rows).map(|i| crate::dot_iq(self.row(i), v)).collect()
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_block(&self, lo: usize, hi: usize) -> IntMatrix {
        assert!(lo <= hi && hi <= self.rows);
        IntMatrix { rows: hi - lo, cols: self.cols, data: self.data[lo * self.cols..hi * self.cols].to_vec() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let rows: Vec<IVec> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank_int_rows(&rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &Int) {
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense matrix over Q, row major.  Used for rational sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        QMatrix { rows, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        QMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).flat_map(|i| m.row(i).iter().map(|x| Rat::from_integer(x.clone()))).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Product with an integer matrix on the right.
    pub fn mul_int(&self, other: &IntMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows(), "dimension mismatch in matrix product");
        let mut data = vec![Rat::zero(); self.rows * other.cols()];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.row(i)[k].is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    data[i * other.cols() + j] += &self.row(i)[k] * Rat::from_integer(other[(k, j)].clone());
                }
            }
        }
        QMatrix { rows: self.rows, cols: other.cols(), data }
    }

    /// Apply to a rational vector.
    pub fn apply(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix apply");
        (0..self.rows).map(|i| crate::dot_qq(self.row(i), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.row(i)[j].is_one()
                    } else {
                        self.row(i)[j].is_zero()
                    }
                })
            })
    }
}

/// Smith normal form `U * A * V == D` with `U`, `V` unimodular and `D`
/// diagonal with nonnegative entries satisfying `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries (length `min(rows, cols)`).
    pub fn diagonal(&self) -> IVec {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn find_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    // Smallest absolute value; ties leftmost column, then topmost row.
    let mut best: Option<(Int, usize, usize)> = None;
    for j in k..a.cols() {
        for i in k..a.rows() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((b, _, _)) if *b <= v => {}
                _ => best = Some((v, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Diagonalize from position `start` on, maintaining `U * A_orig * V == A`.
fn diagonalize(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, start: usize) {
    let n = a.rows().min(a.cols());
    for k in start..n {
        loop {
            let Some((pi, pj)) = find_pivot(a, k) else {
                return; // remaining block is zero
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if a[(k, k)].is_negative() {
                a.negate_row(k);
                u.negate_row(k);
            }
            let pivot = a[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..a.rows() {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, k)] / &pivot);
                if !q.is_zero() {
                    a.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                }
                if !a[(i, k)].is_zero() {
                    dirty = true; // remainder left; a smaller pivot now exists
                }
            }
            for j in k + 1..a.cols() {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(k, j)] / &pivot);
                if !q.is_zero() {
                    a.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                }
                if !a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
    }
}

/// Smith normal form with deterministic pivoting (see module docs).
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    diagonalize(&mut d, &mut u, &mut v, 0);
    // Enforce the divisibility chain d_i | d_{i+1}.
    let n = d.rows().min(d.cols());
    'outer: loop {
        for i in 0..n.saturating_sub(1) {
            let di = d[(i, i)].clone();
            let dj = d[(i + 1, i + 1)].clone();
            if di.is_zero() || dj.is_zero() {
                continue;
            }
            if !(&dj % &di).is_zero() {
                // Copy column i+1 onto column i; re-diagonalizing the block
                // replaces d_i by gcd(d_i, d_{i+1}).
                d.col_axpy(i, i + 1, &Int::one());
                v.col_axpy(i, i + 1, &Int::one());
                diagonalize(&mut d, &mut u, &mut v, i);
                continue 'outer;
            }
        }
        break;
    }
    SnfResult { u, d, v }
}

/// Short exact presentation `0 -> Z^k -(F)-> Z^m -(P)-> Z^(m-k) -> 0` of a
/// saturated injection `F`, together with a rational section `s` of `F`
/// (`s * F == id`).  `P` and `s` are deterministic functions of `F` through
/// the fixed Smith pivoting rule.
#[derive(Debug, Clone)]
pub struct ExactSequence {
    pub f: IntMatrix,
    pub p: IntMatrix,
    pub s: QMatrix,
}

impl ExactSequence {
    /// Replace the section by another rational left inverse of `F`.
    /// Returns `RankMismatch` if `s * F != id`.
    pub fn with_section(&self, s: QMatrix) -> Result<ExactSequence, Error> {
        if s.rows() != self.f.cols() || s.cols() != self.f.rows() {
            return Err(Error::RankMismatch("section has wrong shape".into()));
        }
        if !s.mul_int(&self.f).is_identity() {
            return Err(Error::RankMismatch("matrix is not a section of F".into()));
        }
        Ok(ExactSequence { f: self.f.clone(), p: self.p.clone(), s })
    }
}

/// Presentation of the cokernel of an injective saturated map `F: Z^k -> Z^m`.
///
/// Errors: `NotInjective` when `rank F < k`; `TorsionCokernel` when the image
/// is not saturated (some invariant factor exceeds 1).
pub fn cokernel_presentation(f: &IntMatrix) -> Result<ExactSequence, Error> {
    let m = f.rows();
    let k = f.cols();
    if m < k {
        return Err(Error::NotInjective(format!("map Z^{k} -> Z^{m} cannot be injective")));
    }
    let snf = smith_normal_form(f);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    if rank < k {
        return Err(Error::NotInjective(format!("matrix has rank {rank} < {k}")));
    }
    if let Some(bad) = diag.iter().find(|x| !x.is_one()) {
        return Err(Error::TorsionCokernel(format!("invariant factor {bad} exceeds 1")));
    }
    // U*F*V == (I_k; 0), so the last m-k rows of U kill the image of F and
    // V times the first k rows of U is a (here integral) section.
    let p = snf.u.row_block(k, m);
    let s = QMatrix::from_int(&snf.v.mul(&snf.u.row_block(0, k)));
    Ok(ExactSequence { f: f.clone(), p, s })
}

/// Divide by the gcd of the entries; errors on the zero vector.
pub fn primitive_vector(v: &[Int]) -> Result<IVec, Error> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::ZeroVector("primitive vector of the zero vector is undefined".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Rank over Q of a list of integer row vectors (fraction-free elimination).
pub fn rank_int_rows(rows: &[IVec]) -> usize {
    let mut m: Vec<IVec> = rows.iter().filter(|r| !r.iter().all(|x| x.is_zero())).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for j in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][j].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[j].is_zero() {
                continue;
            }
            let a = pivot_row[j].clone();
            let b = row[j].clone();
            for c in 0..cols {
                row[c] = &row[c] * &a - &pivot_row[c] * &b;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Basis of the integer kernel of `A` (saturated lattice), as the columns of
/// `V` beyond the rank in the Smith decomposition.  Deterministic.
pub fn kernel_basis(a: &IntMatrix) -> Vec<IVec> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|j| snf.v.col(j)).collect()
}

/// Solve `A x == b` over the integers.  Returns `None` when no integral
/// solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<IVec> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let n = a.rows().min(a.cols());
    let mut y = vec![Int::zero(); a.cols()];
    for i in 0..a.rows() {
        let d = if i < n { snf.d[(i, i)].clone() } else { Int::zero() };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.apply(&y))
}

/// Hermite normal form of the row lattice: canonical basis with positive
/// pivots in echelon position and the entries above each pivot reduced into
/// `[0, pivot)`.  Zero rows are dropped, so two row lists span the same
/// lattice iff their forms are equal.
pub fn row_hnf(rows: &[IVec]) -> Vec<IVec> {
    let mut m: Vec<IVec> = rows.iter().filter(|r| !r.iter().all(|x| x.is_zero())).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivot = 0;
    for col in 0..ncols {
        if pivot >= m.len() {
            break;
        }
        loop {
            let Some(best) = (pivot..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].abs())
            else {
                break;
            };
            m.swap(pivot, best);
            if m[pivot][col].is_negative() {
                for x in m[pivot].iter_mut() {
                    *x = -&*x;
                }
            }
            let prow = m[pivot].clone();
            let mut cleared = true;
            for i in 0..m.len() {
                if i == pivot || m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&prow[col]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        m[i][j] = &m[i][j] - &q * &prow[j];
                    }
                }
                if i > pivot && !m[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                pivot += 1;
                break;
            }
        }
    }
    m.truncate(pivot);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        // U * A * V == D
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d);
        // unimodularity via integer determinant of the square factors
        assert!(det(&snf.u).abs().is_one(), "U not unimodular");
        assert!(det(&snf.v).abs().is_one(), "V not unimodular");
        // diagonal, nonnegative, divisibility chain
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal entry");
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() && !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility violated: {:?}", diag);
            }
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zero before nonzero in diagonal");
            }
        }
    }

    fn det(m: &IntMatrix) -> Int {
        // Cofactor expansion; only used on small test matrices.
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return Int::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Int::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let mut sub = IntMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    sub[(i - 1, cc)] = m[(i, c)].clone();
                    cc += 1;
                }
            }
            let term = &m[(0, j)] * det(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        check_snf(&a);
        assert_eq!(snf.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        check_snf(&a);
        assert_eq!(snf.diagonal(), vec![Int::one(), Int::one(), Int::one()]);
    }

    #[test]
    fn snf_weight_column() {
        for p in [1i64, 2, 3, 5] {
            let a = IntMatrix::column(&[p, p, -p, 1]);
            let snf = smith_normal_form(&a);
            check_snf(&a);
            assert_eq!(snf.diagonal(), vec![Int::one()]);
        }
    }

    #[test]
    fn snf_rectangular_torsion() {
        let a = IntMatrix::from_rows(&[&[2, 4], &[6, 8], &[10, 12]]);
        check_snf(&a);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn cokernel_weight_column() {
        let f = IntMatrix::column(&[2, 2, -2, 1]);
        let seq = cokernel_presentation(&f).unwrap();
        assert_eq!(seq.p.rows(), 3);
        assert_eq!(seq.p.cols(), 4);
        // P * F == 0
        let pf = seq.p.mul(&f);
        assert!(pf.col(0).iter().all(|x| x.is_zero()));
        // s * F == id
        assert!(seq.s.mul_int(&f).is_identity());
    }

    #[test]
    fn cokernel_identity() {
        let f = IntMatrix::identity(2);
        let seq = cokernel_presentation(&f).unwrap();
        assert_eq!(seq.p.rows(), 0);
        assert!(seq.s.is_identity());
    }

    #[test]
    fn cokernel_torsion_rejected() {
        let f = IntMatrix::column(&[2, 4]);
        match cokernel_presentation(&f) {
            Err(Error::TorsionCokernel(_)) => {}
            other => panic!("expected TorsionCokernel, got {other:?}"),
        }
    }

    #[test]
    fn cokernel_rank_deficient_rejected() {
        let f = IntMatrix::from_rows(&[&[1, 2], &[2, 4], &[3, 6]]);
        match cokernel_presentation(&f) {
            Err(Error::NotInjective(_)) => {}
            other => panic!("expected NotInjective, got {other:?}"),
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_vector(&[Int::from(4), Int::from(-6)]).unwrap();
        assert_eq!(v, vec![Int::from(2), Int::from(-3)]);
        let v = primitive_vector(&[Int::from(0), Int::from(5)]).unwrap();
        assert_eq!(v, vec![Int::from(0), Int::from(1)]);
        match primitive_vector(&[Int::zero(), Int::zero()]) {
            Err(Error::ZeroVector(_)) => {}
            other => panic!("expected ZeroVector, got {other:?}"),
        }
    }

    #[test]
    fn solve_integer_works() {
        // x + 2y = 5, 3y = 3
        let a = IntMatrix::from_rows(&[&[1, 2], &[0, 3]]);
        let b = vec![Int::from(5), Int::from(3)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
        // 2x = 3 has no integer solution
        let a = IntMatrix::from_rows(&[&[2]]);
        assert!(solve_integer(&a, &[Int::from(3)]).is_none());
    }

    #[test]
    fn kernel_basis_saturated() {
        let a = IntMatrix::from_rows(&[&[1, 0, 2]]);
        let basis = kernel_basis(&a);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(crate::dot_ii(a.row(0), v).is_zero());
        }
        // the basis spans a saturated rank-2 sublattice
        let m = IntMatrix::new(2, 3, basis.concat());
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), vec![Int::one(), Int::one()]);
    }

    fn iv(xs: &[i64]) -> IVec {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn row_hnf_canonical() {
        // sign is normalized
        assert_eq!(row_hnf(&[iv(&[-2])]), vec![iv(&[2])]);
        // different bases of one lattice agree
        let a = row_hnf(&[iv(&[2, 1]), iv(&[1, 2])]);
        let b = row_hnf(&[iv(&[3, 3]), iv(&[1, 2])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![iv(&[1, 2]), iv(&[0, 3])]);
        // entries above a pivot are reduced into [0, pivot)
        let c = row_hnf(&[iv(&[1, 5]), iv(&[0, 3])]);
        assert_eq!(c, vec![iv(&[1, 2]), iv(&[0, 3])]);
        // zero and dependent rows are dropped
        let d = row_hnf(&[iv(&[0, 0]), iv(&[2, 4]), iv(&[1, 2])]);
        assert_eq!(d, vec![iv(&[1, 2])]);
    }
}
