//! Exact linear algebra: Gaussian elimination over any [`FieldSpec`]-backed
//! field, and integer matrices with Smith normal form and saturated kernel
//! bases. Matrices here are small (hundreds of rows); entry growth, not
//! asymptotics, is the concern, so pivots are chosen by minimal absolute
//! value and divisions use balanced remainders.

use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::field::{FieldElement, FieldSpec};
use super::ExactError;

// ---------------------------------------------------------------------------
// matrices over a field

/// A dense matrix with entries in a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn new(
        spec: Arc<FieldSpec>,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<FieldMatrix, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let probe = spec.zero();
        if !entries.iter().all(|e| e.same_spec(&probe)) {
            return Err(ExactError::MixedFieldSpecs);
        }
        Ok(FieldMatrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(spec: Arc<FieldSpec>, rows: Vec<Vec<FieldElement>>) -> Result<FieldMatrix, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::RaggedRows);
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(spec: Arc<FieldSpec>, rows: usize, cols: usize) -> FieldMatrix {
        let entries = vec![spec.zero(); rows * cols];
        FieldMatrix {
            spec,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(spec: Arc<FieldSpec>, n: usize) -> FieldMatrix {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            let one = m.spec.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank together with a basis of the right kernel: vectors `v` with
    /// `M v = 0`. `rank + kernel.len() == cols`.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<FieldElement>>) {
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut kernel = Vec::new();
        for j in 0..self.cols {
            if pivot_set[j].is_some() {
                continue;
            }
            let mut vec_j = vec![self.spec.zero(); self.cols];
            vec_j[j] = self.spec.one();
            for (r, &c) in pivots.iter().enumerate() {
                vec_j[c] = rref[r][j].neg();
            }
            kernel.push(vec_j);
        }
        (rank, kernel)
    }

    /// Reduced row echelon form; returns (rows, pivot column per pivot row).
    fn rref(&self) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
        let mut a: Vec<Vec<FieldElement>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("nonzero field element has an inverse");
            for j in col..self.cols {
                a[row][j] = a[row][j].mul(&inv);
            }
            for i in 0..self.rows {
                if i != row && !a[i][col].is_zero() {
                    let factor = a[i][col].clone();
                    for j in col..self.cols {
                        let delta = factor.mul(&a[row][j]);
                        a[i][j] = a[i][j].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }
}

// ---------------------------------------------------------------------------
// integer matrices

/// A dense matrix over the integers with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// The outcome of a Smith normal form computation: the invariant factors
/// `d_1 | d_2 | ... | d_r` (all positive, ones included) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// The invariant factors greater than 1 (the torsion part).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> IntegerMatrix {
        assert_eq!(entries.len(), rows * cols, "entry storage does not match dimensions");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> IntegerMatrix {
        IntegerMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    /// Smith normal form. Fraction-free: row/column operations over Z with
    /// minimal-absolute-value pivoting and balanced remainders to control
    /// entry growth. Empty matrices are fine and give an empty factor list.
    pub fn smith_normal_form(&self) -> SnfResult {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..m)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let steps = m.min(n);
        let mut diag: Vec<BigInt> = Vec::new();
        for k in 0..steps {
            // locate a minimal nonzero pivot in the trailing submatrix
            let Some((pi, pj)) = min_abs_entry(&a, k) else {
                break;
            };
            a.swap(k, pi);
            swap_cols(&mut a, k, pj);
            loop {
                // clear column k with balanced quotients
                let mut dirty = false;
                for i in k + 1..m {
                    if !a[i][k].is_zero() {
                        let q = balanced_quotient(&a[i][k], &a[k][k]);
                        if !q.is_zero() {
                            for j in k..n {
                                let delta = &q * &a[k][j];
                                a[i][j] -= delta;
                            }
                        }
                        if !a[i][k].is_zero() {
                            a.swap(k, i); // strictly smaller remainder becomes the pivot
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // clear row k
                for j in k + 1..n {
                    if !a[k][j].is_zero() {
                        let q = balanced_quotient(&a[k][j], &a[k][k]);
                        if !q.is_zero() {
                            for i in k..m {
                                let delta = &q * &a[i][k];
                                a[i][j] -= delta;
                            }
                        }
                        if !a[k][j].is_zero() {
                            swap_cols(&mut a, k, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // enforce divisibility of the trailing submatrix by the pivot
                let mut offender = None;
                'scan: for i in k + 1..m {
                    for j in k + 1..n {
                        if !(&a[i][j] % &a[k][k]).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        for j in k..n {
                            let add = a[i][j].clone();
                            a[k][j] += add;
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[k][k].abs());
        }
        let rank = diag.len();
        SnfResult {
            invariant_factors: diag,
            rank,
        }
    }

    /// A basis of the saturated integer kernel `{v : Mv = 0}`, obtained by
    /// unimodular column reduction. The returned vectors span the full
    /// lattice of integer solutions.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..m)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        // u holds the column transform: columns of u track columns of a
        let mut u: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                row[i] = BigInt::one();
                row
            })
            .collect();
        let mut lead = 0usize;
        for r in 0..m {
            if lead == n {
                break;
            }
            loop {
                let Some(jmin) = min_abs_in_row(&a, r, lead) else {
                    break;
                };
                swap_cols(&mut a, lead, jmin);
                swap_cols(&mut u, lead, jmin);
                let mut cleared = true;
                for j in lead + 1..n {
                    if a[r][j].is_zero() {
                        continue;
                    }
                    let q = balanced_quotient(&a[r][j], &a[r][lead]);
                    if !q.is_zero() {
                        for i in 0..m {
                            let delta = &q * &a[i][lead];
                            a[i][j] -= delta;
                        }
                        for i in 0..n {
                            let delta = &q * &u[i][lead];
                            u[i][j] -= delta;
                        }
                    }
                    if !a[r][j].is_zero() {
                        cleared = false;
                    }
                }
                if cleared {
                    lead += 1;
                    break;
                }
            }
        }
        (lead..n).map(|j| (0..n).map(|i| u[i][j].clone()).collect()).collect()
    }

    /// Rank over the rationals (= number of nonzero invariant factors, but
    /// computed directly by column reduction).
    pub fn rank(&self) -> usize {
        self.cols - self.kernel_basis().len()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], j1: usize, j2: usize) {
    if j1 == j2 {
        return;
    }
    for row in a.iter_mut() {
        row.swap(j1, j2);
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((bi, bj)) if a[*bi][*bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_abs_in_row(a: &[Vec<BigInt>], r: usize, from_col: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for j in from_col..a[r].len() {
        if a[r][j].is_zero() {
            continue;
        }
        match best {
            Some(bj) if a[r][bj].abs() <= a[r][j].abs() => {}
            _ => best = Some(j),
        }
    }
    best
}

/// Quotient with a balanced remainder: `a - q*b` has absolute value at most
/// `|b|/2` (rounded toward the truncated quotient on ties).
fn balanced_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        // r and b share a sign exactly when stepping q up shrinks the remainder
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Solves `K · C = V` for integer `C`, where the columns of `K` are a basis
/// of a saturated lattice containing every column of `V`. Returns `None` if
/// some column of `V` is outside the column span; panics if a solution
/// exists but is non-integral (which contradicts saturation).
pub fn solve_in_column_span(k: &IntegerMatrix, v: &IntegerMatrix) -> Option<IntegerMatrix> {
    assert_eq!(k.rows(), v.rows(), "row mismatch between span and targets");
    let m = k.rows();
    let kc = k.cols();
    let vc = v.cols();
    // rational RREF of the augmented matrix [K | V]
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..kc + vc)
                .map(|j| {
                    let e = if j < kc { k.at(i, j) } else { v.at(i, j - kc) };
                    BigRational::from(e.clone())
                })
                .collect()
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..kc {
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            // K has full column rank in intended use; treat as inconsistent
            return None;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for j in col..kc + vc {
            let val = &a[row][j] * &inv;
            a[row][j] = val;
        }
        for i in 0..m {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..kc + vc {
                    let delta = &f * &a[row][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // rows below the pivots must vanish on the V block
    for i in row..m {
        for j in kc..kc + vc {
            if !a[i][j].is_zero() {
                return None;
            }
        }
    }
    let mut c = IntegerMatrix::zero(kc, vc);
    for (i, &pr) in pivot_rows.iter().enumerate() {
        for j in 0..vc {
            let val = &a[pr][kc + j];
            assert!(
                val.denom().is_one(),
                "non-integral coordinates in a saturated lattice"
            );
            c.set(i, j, val.numer().clone());
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::FieldSpec;

    fn snf_factors(entries: &[i64], rows: usize, cols: usize) -> (Vec<i64>, usize) {
        let m = IntegerMatrix::from_i64(rows, cols, entries);
        let r = m.smith_normal_form();
        let fs = r
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        (fs, r.rank)
    }

    #[test]
    fn snf_diagonal_and_zero() {
        assert_eq!(snf_factors(&[2, 0, 0, 2], 2, 2), (vec![2, 2], 2));
        assert_eq!(snf_factors(&[0], 1, 1), (vec![], 0));
        let empty = IntegerMatrix::zero(0, 3);
        assert_eq!(empty.smith_normal_form().invariant_factors, Vec::<BigInt>::new());
    }

    #[test]
    fn snf_hand_reduced_case() {
        // [[2,4],[6,8]]: det -8, entry gcd 2, so factors (2, 4)
        assert_eq!(snf_factors(&[2, 4, 6, 8], 2, 2), (vec![2, 4], 2));
    }

    #[test]
    fn snf_known_4x4() {
        let (fs, rank) = snf_factors(
            &[-6, 111, -36, 6, 5, -672, 210, 74, 0, -255, 81, 24, -7, 255, -81, -10],
            4,
            4,
        );
        assert_eq!(fs, vec![1, 3, 21]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn kernel_annihilates_and_counts() {
        let m = IntegerMatrix::from_i64(2, 4, &[1, 2, 3, 4, 2, 4, 6, 8]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 3);
        for v in &ker {
            for i in 0..2 {
                let dot: BigInt = (0..4).map(|j| m.at(i, j) * &v[j]).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn saturated_kernel_solves_integrally() {
        let m = IntegerMatrix::from_i64(2, 3, &[1, 1, 1, 0, 2, 4]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        let kmat = {
            let mut k = IntegerMatrix::zero(3, 1);
            for i in 0..3 {
                k.set(i, 0, ker[0][i].clone());
            }
            k
        };
        // twice the kernel vector lies in the span with coordinate 2
        let mut v = IntegerMatrix::zero(3, 1);
        for i in 0..3 {
            v.set(i, 0, ker[0][i].clone() * 2);
        }
        let c = solve_in_column_span(&kmat, &v).unwrap();
        assert_eq!(c.at(0, 0), &BigInt::from(2));
    }

    #[test]
    fn field_rank_kernel_over_cyclotomic() {
        // [[1, z], [z^2, z^3]] over Q[z]/Phi_5 has rank 1
        let q5 = FieldSpec::cyclotomic(5);
        let z = q5.generator();
        let m = FieldMatrix::from_rows(
            Arc::clone(&q5),
            vec![
                vec![q5.one(), z.clone()],
                vec![z.pow(2), z.pow(3)],
            ],
        )
        .unwrap();
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // kernel vector annihilates the matrix
        for i in 0..2 {
            let mut acc = q5.zero();
            for j in 0..2 {
                acc = acc.add(&m.at(i, j).mul(&kernel[0][j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn field_rank_trivial_cases() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let id = FieldMatrix::identity(Arc::clone(&f2), 3);
        assert_eq!(id.rank(), 3);
        let z = FieldMatrix::zero(f2, 2, 5);
        let (rank, ker) = z.rank_and_kernel();
        assert_eq!((rank, ker.len()), (0, 5));
    }

    #[test]
    fn mixed_specs_rejected() {
        let q = FieldSpec::rationals();
        let q5 = FieldSpec::cyclotomic(5);
        let err = FieldMatrix::new(Arc::clone(&q), 1, 2, vec![q.one(), q5.one()]);
        assert!(matches!(err, Err(ExactError::MixedFieldSpecs)));
    }
}
