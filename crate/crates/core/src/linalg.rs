//! Exact integer linear algebra: dense matrices over `BigInt`, Smith normal
//! form with unimodular transforms, fraction-free determinants, cokernels and
//! solution groups modulo `k`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigser;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row.iter().map(|&x| x.into()));
        }
        Self { rows: rows.len(), cols, entries }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn without_column(&self, col: usize) -> Self {
        assert!(col < self.cols);
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j != col {
                    entries.push(x.clone());
                }
            }
        }
        Self { rows: self.rows, cols: self.cols - 1, entries }
    }

    pub fn without_row(&self, row: usize) -> Self {
        assert!(row < self.rows);
        let entries = (0..self.rows).filter(|&i| i != row).flat_map(|i| self.row(i).iter().cloned()).collect();
        Self { rows: self.rows - 1, cols: self.cols, entries }
    }

    /// Returns the matrix with rows and columns reordered: `out[i][j] = self[rp[i]][cp[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                out[(i, j)] = self[(ri, cj)].clone();
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    /// Product of matrices; panics on a shape mismatch.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<bigser::Big<'_>>> =
            (0..self.rows).map(|i| self.row(i).iter().map(bigser::Big).collect()).collect();
        rows.serialize(s)
    }
}

/// `left * a * right == diag(diagonal)`, with `left` and `right` unimodular.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    /// Length `min(rows, cols)`; non-negative, each entry divides the next,
    /// zeros (if any) at the end.
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Diagonal entry attached to column `j` of the input, with columns past
    /// the row count reading as zero.
    pub fn column_factor(&self, j: usize) -> BigInt {
        self.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn min_abs_nonzero(a: &IntegerMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows {
        for j in from..a.cols {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form by repeated least-magnitude pivoting.
pub fn smith_normal_form(input: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (input.rows, input.cols);
    let mut a = input.clone();
    let mut left = IntegerMatrix::identity(m);
    let mut right = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_abs_nonzero(&a, t) {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..m.min(n)).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { diagonal, left, right }
}

/// Invariant-factor description of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupShape {
    /// Factors greater than one, each dividing the next.
    #[serde(serialize_with = "bigser::vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupShape {
    pub fn trivial() -> Self {
        Self { torsion: Vec::new(), free_rank: 0 }
    }

    /// Normalizes arbitrary diagonal entries (units dropped, zeros free).
    pub fn from_diagonal<'a>(entries: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for d in entries {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        torsion.sort();
        Self { torsion, free_rank }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, or zero when it is infinite.
    pub fn order(&self) -> BigInt {
        if self.is_finite() {
            self.torsion.iter().product()
        } else {
            BigInt::zero()
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }

    /// Number of homomorphisms into `Z_k`.
    pub fn hom_count_mod(&self, k: u64) -> BigInt {
        let k = BigInt::from(k);
        let mut count: BigInt = self.torsion.iter().map(|d| d.gcd(&k)).product();
        for _ in 0..self.free_rank {
            count *= &k;
        }
        count
    }
}

impl fmt::Display for AbelianGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        parts.extend((0..self.free_rank).map(|_| "Z".to_string()));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of a cokernel written in invariant-factor coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    /// Residue modulo each torsion factor, in the order of `AbelianGroupShape::torsion`.
    #[serde(serialize_with = "bigser::vec")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "bigser::vec")]
    pub free: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().chain(&self.free).map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `Z^cols / rowspace(a)` together with the coordinate change that expresses
/// ambient vectors in invariant-factor coordinates.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub shape: AbelianGroupShape,
    snf: SmithDecomposition,
    /// (column of the transformed basis, factor); zero factor means free.
    coords: Vec<(usize, BigInt)>,
}

impl Cokernel {
    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    /// Image of an ambient row vector.
    pub fn project(&self, v: &[BigInt]) -> GroupElement {
        let right = &self.snf.right;
        assert_eq!(v.len(), right.rows(), "vector length does not match the ambient rank");
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (col, factor) in &self.coords {
            let mut x = BigInt::zero();
            for (i, vi) in v.iter().enumerate() {
                if !vi.is_zero() {
                    x += vi * &right[(i, *col)];
                }
            }
            if factor.is_zero() {
                free.push(x);
            } else {
                torsion.push(x.mod_floor(factor));
            }
        }
        GroupElement { torsion, free }
    }

    /// Image of the `j`-th standard basis vector.
    pub fn project_basis(&self, j: usize) -> GroupElement {
        let right = &self.snf.right;
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (col, factor) in &self.coords {
            let x = right[(j, *col)].clone();
            if factor.is_zero() {
                free.push(x);
            } else {
                torsion.push(x.mod_floor(factor));
            }
        }
        GroupElement { torsion, free }
    }
}

/// Cokernel of the row-vector map `v -> v a`.
pub fn cokernel(a: &IntegerMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for j in 0..a.cols() {
        let d = snf.column_factor(j);
        if d.is_zero() {
            free.push((j, d));
        } else if !d.is_one() {
            torsion.push((j, d));
        }
    }
    // the divisibility chain already orders torsion ascending
    let shape = AbelianGroupShape { torsion: torsion.iter().map(|(_, d)| d.clone()).collect(), free_rank: free.len() };
    let coords = torsion.into_iter().chain(free).collect();
    Cokernel { shape, snf, coords }
}

/// Solutions of `a x = 0 (mod k)` for column vectors `x`.
#[derive(Debug, Clone)]
pub struct ModularKernel {
    pub modulus: u64,
    pub count: BigInt,
    /// Generators of the solution group, entries in `[0, k)`. The group is
    /// their direct sum.
    pub generators: Vec<Vec<u64>>,
    /// Additive order of each generator.
    pub orders: Vec<u64>,
}

pub fn nullspace_mod(a: &IntegerMatrix, k: u64) -> Result<ModularKernel, LinalgError> {
    if k < 2 {
        return Err(LinalgError::BadModulus(k));
    }
    let snf = smith_normal_form(a);
    let kb = BigInt::from(k);
    let mut count = BigInt::one();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for j in 0..a.cols() {
        let g = snf.column_factor(j).gcd(&kb);
        if g.is_one() {
            continue;
        }
        count *= &g;
        let scale = &kb / &g;
        let gen = (0..a.cols())
            .map(|i| (&snf.right[(i, j)] * &scale).mod_floor(&kb).to_u64().expect("residue below a u64 modulus"))
            .collect();
        generators.push(gen);
        orders.push(g.to_u64().expect("divisor of a u64 modulus"));
    }
    Ok(ModularKernel { modulus: k, count, generators, orders })
}
