//! Dense matrices over Z and Smith normal form with full transformation
//! matrices.
//!
//! Everything downstream (quotient lattices, cohomology groups, induced maps)
//! is built on three primitives: `snf`, `kernel` and `solve`. All arithmetic
//! is arbitrary-precision; intermediate Smith entries can exceed 64 bits even
//! for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_slice(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMat) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { other[(i, j - self.cols)].clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMat) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self[(i, j)].clone() } else { other[(i - self.rows, j)].clone() }
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &self[(r0 + i, c0 + j)] + &block[(i, j)];
                self[(r0 + i, c0 + j)] = v;
            }
        }
    }

    pub fn sub_block(&mut self, r0: usize, c0: usize, block: &IntMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &self[(r0 + i, c0 + j)] - &block[(i, j)];
                self[(r0 + i, c0 + j)] = v;
            }
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "mul_vec: shape mismatch");
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -&self[(i, k)];
            self[(i, k)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -&self[(k, j)];
            self[(k, j)] = v;
        }
    }

    /// Replace rows i, j by (s*ri + t*rj, u*ri + v*rj); the caller keeps
    /// det = sv - tu = 1.
    fn left_elementary(&mut self, comps: [&BigInt; 4], i: usize, j: usize) {
        let [s, t, u, v] = comps;
        for k in 0..self.cols {
            let a = self[(i, k)].clone();
            let b = self[(j, k)].clone();
            self[(i, k)] = s * &a + t * &b;
            self[(j, k)] = u * &a + v * &b;
        }
    }

    /// Replace cols i, j by (s*ci + t*cj, u*ci + v*cj).
    fn right_elementary(&mut self, comps: [&BigInt; 4], i: usize, j: usize) {
        let [s, t, u, v] = comps;
        for k in 0..self.rows {
            let a = self[(k, i)].clone();
            let b = self[(k, j)].clone();
            self[(k, i)] = s * &a + t * &b;
            self[(k, j)] = u * &a + v * &b;
        }
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "matrix product: shape mismatch");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + a * b;
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `p * a * q = d` with all four transforms.
///
/// `d` is diagonal with non-negative entries forming a divisibility chain
/// d1 | d2 | ... followed by zeros; `p`, `q` are unimodular and `pinv`,
/// `qinv` are their exact inverses.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMat,
    pub p: IntMat,
    pub pinv: IntMat,
    pub q: IntMat,
    pub qinv: IntMat,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries d1 | d2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct SnfCalc {
    d: IntMat,
    p: IntMat,
    pinv: IntMat,
    q: IntMat,
    qinv: IntMat,
}

impl SnfCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.pinv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.qinv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.p.negate_row(i);
        self.pinv.negate_col(i);
    }

    /// Left-multiply rows (i, j) by [[s, t], [u, v]] with det 1; the inverse
    /// [[v, -t], [-u, s]] hits `pinv` from the right.
    fn left(&mut self, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt, i: usize, j: usize) {
        debug_assert!((s * v - t * u).is_one());
        self.d.left_elementary([s, t, u, v], i, j);
        self.p.left_elementary([s, t, u, v], i, j);
        self.pinv.right_elementary([v, &-u.clone(), &-t.clone(), s], i, j);
    }

    fn right(&mut self, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt, i: usize, j: usize) {
        debug_assert!((s * v - t * u).is_one());
        self.d.right_elementary([s, t, u, v], i, j);
        self.q.right_elementary([s, t, u, v], i, j);
        self.qinv.left_elementary([v, &-u.clone(), &-t.clone(), s], i, j);
    }

    /// gcd step on rows i, j using column `col`: afterwards d[i][col] = gcd
    /// and d[j][col] = 0.
    fn gcd_rows(&mut self, i: usize, j: usize, col: usize) {
        let x = self.d[(i, col)].clone();
        let y = self.d[(j, col)].clone();
        debug_assert!(!y.is_zero());
        let (g, s, t) = gcd_combination(&x, &y);
        let a = &x / &g;
        let b = &y / &g;
        self.left(&s, &t, &-b, &a, i, j);
    }

    fn gcd_cols(&mut self, i: usize, j: usize, row: usize) {
        let x = self.d[(row, i)].clone();
        let y = self.d[(row, j)].clone();
        debug_assert!(!y.is_zero());
        let (g, s, t) = gcd_combination(&x, &y);
        let a = &x / &g;
        let b = &y / &g;
        self.right(&s, &t, &-b, &a, i, j);
    }
}

/// (g, s, t) with g = gcd(x, y) > 0 and s x + t y = g. When x already
/// divides into g up to sign this degenerates to a plain scaling, which
/// keeps the transforms sparse.
fn gcd_combination(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !x.is_zero() && (y % x).is_zero() {
        let g = x.abs();
        let s = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (g, s, BigInt::zero());
    }
    let e = x.extended_gcd(y);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Smith normal form with full transforms.
pub fn snf(a: &IntMat) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut c = SnfCalc {
        d: a.clone(),
        p: IntMat::identity(m),
        pinv: IntMat::identity(m),
        q: IntMat::identity(n),
        qinv: IntMat::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        // Pivot: entry of minimal absolute value in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if c.d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some(p) if c.d[p].abs() <= c.d[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        c.swap_rows(t, pi);
        c.swap_cols(t, pj);

        // Clear row t and column t; clearing one can refill the other.
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !c.d[(i, t)].is_zero() {
                    c.gcd_rows(t, i, t);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if !c.d[(t, j)].is_zero() {
                    c.gcd_cols(t, j, t);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    let mut rank = t;

    // Enforce the divisibility chain d_i | d_{i+1}.
    loop {
        let mut fixed = true;
        for i in 0..rank.saturating_sub(1) {
            let di = c.d[(i, i)].clone();
            let dj = c.d[(i + 1, i + 1)].clone();
            if (&dj % &di).is_zero() {
                continue;
            }
            fixed = false;
            // Fold d_{i+1} into column i, then redo the 2x2 block.
            let one = BigInt::one();
            let zero = BigInt::zero();
            c.right(&one, &zero, &one, &one, i, i + 1);
            loop {
                let mut clean = true;
                if !c.d[(i + 1, i)].is_zero() {
                    c.gcd_rows(i, i + 1, i);
                    clean = false;
                }
                if !c.d[(i, i + 1)].is_zero() {
                    c.gcd_cols(i, i + 1, i);
                    clean = false;
                }
                if clean {
                    break;
                }
            }
        }
        if fixed {
            break;
        }
    }

    // Positive diagonal.
    for i in 0..rank {
        if c.d[(i, i)].is_negative() {
            c.negate_row(i);
        }
    }
    // A fold can in principle zero an entry out; recount.
    rank = (0..m.min(n)).take_while(|&i| !c.d[(i, i)].is_zero()).count();

    let out = Snf { d: c.d, p: c.p, pinv: c.pinv, q: c.q, qinv: c.qinv, rank };
    debug_assert!(&(&out.p * a) * &out.q == out.d, "snf: p*a*q != d");
    debug_assert!((&out.p * &out.pinv).is_identity(), "snf: p*pinv != id");
    debug_assert!((&out.q * &out.qinv).is_identity(), "snf: q*qinv != id");
    out
}

/// Basis of the integer kernel {x : a x = 0} as matrix columns.
///
/// The kernel of an integer matrix is a saturated sublattice, so this basis
/// spans every integral solution. Tall matrices are first reduced to a row
/// basis: the kernel only depends on the row space.
pub fn kernel(a: &IntMat) -> IntMat {
    if a.rows() > a.cols() {
        return kernel(&row_space_basis(a));
    }
    let s = snf(a);
    let n = a.cols();
    IntMat::from_fn(n, n - s.rank, |i, j| s.q[(i, s.rank + j)].clone())
}

/// Row-echelon reduction keeping only a spanning set of rows (gcd pivoting,
/// no transform tracking). Preserves the row space exactly.
pub fn row_space_basis(a: &IntMat) -> IntMat {
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<BigInt>> = (0..m)
        .map(|i| a.row_slice(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut r = 0;
    for col in 0..n {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            while !rows[i][col].is_zero() {
                let quot = &rows[i][col] / &rows[r][col];
                if !quot.is_zero() {
                    for k in col..n {
                        let v = &rows[i][k] - &quot * &rows[r][k];
                        rows[i][k] = v;
                    }
                }
                if rows[i][col].is_zero() {
                    break;
                }
                rows.swap(r, i);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    if rows.is_empty() {
        // Keep one zero row so downstream shapes stay sane.
        return IntMat::zeros(1, n);
    }
    IntMat::from_fn(rows.len(), n, |i, j| rows[i][j].clone())
}

/// One integral solution of `a x = b`, if any.
pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "solve: shape mismatch");
    let s = snf(a);
    let c = s.p.mul_vec(b);
    let mut w = vec![BigInt::zero(); a.cols()];
    for (j, w_j) in w.iter_mut().enumerate().take(s.rank) {
        let d = &s.d[(j, j)];
        if !(&c[j] % d).is_zero() {
            return None;
        }
        *w_j = &c[j] / d;
    }
    if c.iter().skip(s.rank).any(|x| !x.is_zero()) {
        return None;
    }
    Some(s.q.mul_vec(&w))
}

/// Solve `a x = b` column by column; `b` as a matrix.
pub fn solve_matrix(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    assert_eq!(a.rows(), b.rows(), "solve_matrix: shape mismatch");
    let s = snf(a);
    let mut out = IntMat::zeros(a.cols(), b.cols());
    for col in 0..b.cols() {
        let c = s.p.mul_vec(&b.column(col));
        let mut w = vec![BigInt::zero(); a.cols()];
        for (j, w_j) in w.iter_mut().enumerate().take(s.rank) {
            let d = &s.d[(j, j)];
            if !(&c[j] % d).is_zero() {
                return None;
            }
            *w_j = &c[j] / d;
        }
        if c.iter().skip(s.rank).any(|x| !x.is_zero()) {
            return None;
        }
        let x = s.q.mul_vec(&w);
        for (i, v) in x.into_iter().enumerate() {
            out[(i, col)] = v;
        }
    }
    Some(out)
}

/// Basis of the lattice spanned by the columns of `a`.
pub fn column_lattice_basis(a: &IntMat) -> IntMat {
    let s = snf(a);
    IntMat::from_fn(a.rows(), s.rank, |i, j| &s.pinv[(i, j)] * &s.d[(j, j)])
}

/// True iff `a` is square and invertible over Z (determinant +-1).
pub fn is_unimodular(a: &IntMat) -> bool {
    if !a.is_square() {
        return false;
    }
    let s = snf(a);
    s.rank == a.rows() && s.invariant_factors().iter().all(One::is_one)
}
