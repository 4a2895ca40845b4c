//! Dense matrices over F_p with exact Gaussian elimination.
//!
//! Row reduction is fully deterministic: scanning columns left to right
//! (or in a caller-supplied order), the pivot is the first row with a
//! nonzero entry in the current column. This makes the reduced form, and
//! everything derived from it (kernels, standard forms, canonical bases),
//! byte-for-byte reproducible.

use crate::error::{Error, Result};
use crate::field::{Prime, Scalar};

/// A `rows x cols` matrix over F_p, row-major. Empty shapes are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    prime: Prime,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, prime: Prime) -> Matrix {
        Matrix {
            rows,
            cols,
            prime,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, prime: Prime) -> Matrix {
        let mut m = Matrix::zeros(n, n, prime);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from signed entries, reducing each mod p.
    pub fn from_signed(prime: Prime, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix literal"
        );
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| prime.reduce_i64(v)))
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            prime,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, prime: Prime, f: impl Fn(usize, usize) -> u64) -> Matrix {
        let mut m = Matrix::zeros(rows, cols, prime);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(prime: Prime, cols: usize, rows: Vec<Vec<u64>>) -> Matrix {
        assert!(rows.iter().all(|r| r.len() == cols));
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| prime.reduce(v)))
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            prime,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn scalar(&self, r: usize, c: usize) -> Scalar {
        Scalar::from_residue(self.get(r, c), self.prime)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = self.prime.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<u64> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.prime, |r, c| self.get(c, r))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.prime, |r, c| {
            self.prime.neg(self.get(r, c))
        })
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.prime.expect_same(rhs.prime)?;
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "matmul: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.prime;
        let mut out = Matrix::zeros(self.rows, rhs.cols, p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = p.add(out.get(r, c), p.mul(a, rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix; `v` has one entry per row of `self`.
    pub fn left_mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.prime;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = p.add(*slot, p.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Matrix times column vector; `v` has one entry per column of `self`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.prime;
        let mut out = vec![0u64; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (c, &x) in v.iter().enumerate() {
                acc = p.add(acc, p.mul(self.get(r, c), x));
            }
            *slot = acc;
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.prime.expect_same(rhs.prime)?;
        if self.rows != rhs.rows {
            return Err(Error::dims("hstack: row counts differ".to_string()));
        }
        Ok(Matrix::from_fn(
            self.rows,
            self.cols + rhs.cols,
            self.prime,
            |r, c| {
                if c < self.cols {
                    self.get(r, c)
                } else {
                    rhs.get(r, c - self.cols)
                }
            },
        ))
    }

    pub fn vstack(&self, bottom: &Matrix) -> Result<Matrix> {
        self.prime.expect_same(bottom.prime)?;
        if self.cols != bottom.cols {
            return Err(Error::dims("vstack: column counts differ".to_string()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(Matrix {
            rows: self.rows + bottom.rows,
            cols: self.cols,
            prime: self.prime,
            data,
        })
    }

    /// Contiguous sub-block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, self.prime, |r, c| {
            self.get(r0 + r, c0 + c)
        })
    }

    /// Moves column `i` to position `perm(i)`; equals right-multiplication
    /// by the matrix of `perm`.
    pub fn permute_cols(&self, perm: &Permutation) -> Matrix {
        assert_eq!(perm.len(), self.cols, "permutation size != column count");
        let mut out = Matrix::zeros(self.rows, self.cols, self.prime);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, perm.apply(c), self.get(r, c));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, by: u64) {
        let p = self.prime;
        for c in 0..self.cols {
            let v = p.mul(self.get(r, c), by);
            self.set(r, c, v);
        }
    }

    /// row[dst] -= factor * row[src]
    fn eliminate(&mut self, dst: usize, src: usize, factor: u64) {
        if factor == 0 {
            return;
        }
        let p = self.prime;
        for c in 0..self.cols {
            let v = p.sub(self.get(dst, c), p.mul(factor, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Reduced row echelon form with columns scanned in the given order.
    ///
    /// Pivot rule: for each column in `order`, the pivot is the first
    /// still-unused row with a nonzero entry there. Returns the reduced
    /// matrix (pivot rows first, in scan order; zero rows keep the shape)
    /// and the pivot columns in scan order.
    pub fn rref_in_order(&self, order: &[usize]) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for &c in order {
            if next_row == m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(next_row, pr);
            let inv = m.prime.inv(m.get(next_row, c)).expect("pivot is nonzero");
            m.scale_row(next_row, inv);
            for r in 0..m.rows {
                if r != next_row {
                    let f = m.get(r, c);
                    m.eliminate(r, next_row, f);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        (m, pivots)
    }

    /// Reduced row echelon form with the natural column order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_in_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Drops all-zero rows.
    pub fn without_zero_rows(&self) -> Matrix {
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| self.row_vec(r))
            .filter(|r| r.iter().any(|&v| v != 0))
            .collect();
        Matrix::from_rows(self.prime, self.cols, rows)
    }

    /// Canonical basis of the right null space `{v : M v = 0}`, returned
    /// as rows. Row count is exactly `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut rows = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.prime.neg(r.get(i, free));
            }
            rows.push(v);
        }
        let raw = Matrix::from_rows(self.prime, self.cols, rows);
        raw.rref().0.without_zero_rows()
    }

    /// Solves `M x = b`. Returns `None` when inconsistent, otherwise a
    /// particular solution together with the kernel basis of `M`.
    pub fn solve(&self, b: &[u64]) -> Result<Option<(Vec<u64>, Matrix)>> {
        if b.len() != self.rows {
            return Err(Error::dims(format!(
                "solve: {} equations, {} right-hand entries",
                self.rows,
                b.len()
            )));
        }
        let bm = Matrix::from_rows(self.prime, b.len(), vec![b.to_vec()]).transpose();
        let aug = self.hstack(&bm)?;
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some((x, self.kernel_basis())))
    }

    /// True when the two row spaces coincide. Requires matching shape.
    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool> {
        self.prime.expect_same(other.prime)?;
        if self.cols != other.cols {
            return Err(Error::dims("row_space_equal: column counts differ".to_string()));
        }
        let a = self.rref().0.without_zero_rows();
        let b = other.rref().0.without_zero_rows();
        Ok(a == b)
    }
}

/// A bijection on `{0, .., n-1}`, stored as the image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Permutation> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `self` then `after`: i -> after(self(i)).
    pub fn then(&self, after: &Permutation) -> Permutation {
        assert_eq!(self.len(), after.len());
        Permutation {
            map: self.map.iter().map(|&v| after.apply(v)).collect(),
        }
    }

    /// The matrix P with `P[i, perm(i)] = 1`, so `M.permute_cols(perm) = M * P`.
    pub fn matrix(&self, prime: Prime) -> Matrix {
        let n = self.map.len();
        let mut m = Matrix::zeros(n, n, prime);
        for (i, &v) in self.map.iter().enumerate() {
            m.set(i, v, 1);
        }
        m
    }
}

// --- text format ---------------------------------------------------------
//
// First line: `p <modulus> <rows> <cols>`, then one line per row of
// space-separated integers. Output is canonical (residues in [0, p));
// input accepts any signed integers and reduces them.

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "p {} {} {}", self.prime, self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn parse_i64(tok: &str) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad integer {tok:?}")))
}

pub(crate) fn parse_usize(tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad count {tok:?}")))
}

pub(crate) fn parse_row(line: &str, cols: usize, prime: Prime) -> Result<Vec<u64>> {
    let vals: Vec<i64> = line
        .split_whitespace()
        .map(parse_i64)
        .collect::<Result<_>>()?;
    if vals.len() != cols {
        return Err(Error::Parse(format!(
            "expected {cols} entries per row, got {}",
            vals.len()
        )));
    }
    Ok(vals.into_iter().map(|v| prime.reduce_i64(v)).collect())
}

impl Matrix {
    /// Parses the text format. `modulus_override` re-interprets the data
    /// under a different prime than the header states.
    pub fn parse(text: &str, modulus_override: Option<u64>) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "p" {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        }
        let stated = parse_i64(toks[1])?;
        if stated < 0 {
            return Err(Error::Parse("negative modulus".into()));
        }
        let p_val = modulus_override.unwrap_or(stated as u64);
        let prime = Prime::new(p_val).map_err(|_| Error::Parse(format!("modulus {p_val} is not an odd prime")))?;
        let rows = parse_usize(toks[2])?;
        let cols = parse_usize(toks[3])?;
        let mut data_rows = Vec::with_capacity(rows);
        for _ in 0..rows {
            if cols == 0 {
                data_rows.push(Vec::new());
                continue;
            }
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("matrix text ends early".into()))?;
            data_rows.push(parse_row(line, cols, prime)?);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after matrix rows".into()));
        }
        Ok(Matrix::from_rows(prime, cols, data_rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    /// Independent row reducer used only as an oracle: repeatedly picks the
    /// lexicographically smallest nonzero row as the next pivot row.
    fn oracle_rref(m: &Matrix) -> Matrix {
        let pr = m.prime();
        let mut rows: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.row_vec(r)).collect();
        let mut done: Vec<Vec<u64>> = Vec::new();
        loop {
            rows.retain(|r| r.iter().any(|&v| v != 0));
            if rows.is_empty() {
                break;
            }
            rows.sort();
            let lead_col = |r: &Vec<u64>| r.iter().position(|&v| v != 0).unwrap();
            let best = rows
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| lead_col(r))
                .map(|(i, _)| i)
                .unwrap();
            let mut piv = rows.remove(best);
            let c = lead_col(&piv);
            let inv = pr.inv(piv[c]).unwrap();
            for v in piv.iter_mut() {
                *v = pr.mul(*v, inv);
            }
            for r in rows.iter_mut().chain(done.iter_mut()) {
                let f = r[c];
                if f != 0 {
                    for (rv, pv) in r.iter_mut().zip(piv.iter()) {
                        *rv = pr.sub(*rv, pr.mul(f, *pv));
                    }
                }
            }
            done.push(piv);
        }
        done.sort_by_key(|r| r.iter().position(|&v| v != 0).unwrap());
        Matrix::from_rows(pr, m.cols(), done)
    }

    #[test]
    fn rref_worked_example() {
        let m = Matrix::from_signed(p(5), &[vec![1, 1, -1, 0], vec![0, 0, 1, -1]]);
        let (r, pivots) = m.rref();
        assert_eq!(
            r,
            Matrix::from_signed(p(5), &[vec![1, 1, 0, 4], vec![0, 0, 1, 4]])
        );
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(oracle_rref(&m), r);
        assert!(m.row_space_equal(&r).unwrap());
    }

    #[test]
    fn rref_of_zero_matrix_keeps_shape() {
        let m = Matrix::zeros(2, 4, p(3));
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert!(pivots.is_empty());
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn kernel_of_chain_parity_check() {
        // x1 + x2 = y1, y1 = y2 over F_5: kernel is spanned by
        // (1,0,1,1) and (0,1,1,1).
        let h = Matrix::from_signed(p(5), &[vec![1, 1, -1, 0], vec![0, 0, 1, -1]]);
        let k = h.kernel_basis();
        assert_eq!(k.rows(), 2);
        assert!(h.matmul(&k.transpose()).unwrap().is_zero());
        let expected = Matrix::from_signed(p(5), &[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]);
        assert!(k.row_space_equal(&expected).unwrap());
    }

    #[test]
    fn kernel_of_zero_row_is_everything() {
        let m = Matrix::zeros(1, 3, p(3));
        let k = m.kernel_basis();
        assert_eq!(k, Matrix::identity(3, p(3)));
    }

    #[test]
    fn solve_single_equation() {
        // x1 + x2 = 0 over F_3.
        let m = Matrix::from_signed(p(3), &[vec![1, 1]]);
        let (x, k) = m.solve(&[0]).unwrap().unwrap();
        assert_eq!(x, vec![0, 0]);
        assert_eq!(k, Matrix::from_signed(p(3), &[vec![1, 2]]));
        // Oracle: enumerate all of F_3^2.
        let mut sols = Vec::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                if (a + b) % 3 == 0 {
                    sols.push(vec![a, b]);
                }
            }
        }
        assert_eq!(sols, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        for s in sols {
            let d: Vec<i64> = s.iter().zip(&x).map(|(&a, &b)| a as i64 - b as i64).collect();
            let dm = Matrix::from_signed(p(3), &[d]);
            assert!(dm.row_space_equal(&k).unwrap() || dm.is_zero());
        }
    }

    #[test]
    fn solve_inconsistent() {
        // x = 0 and x = 1.
        let m = Matrix::from_signed(p(3), &[vec![1], vec![1]]);
        assert_eq!(m.solve(&[0, 1]).unwrap(), None);
    }

    #[test]
    fn permute_cols_convention() {
        let m = Matrix::from_signed(p(5), &[vec![1, 2, 3]]);
        let perm = Permutation::new(vec![2, 0, 1]).unwrap();
        // Column 0 moves to position 2, etc.
        assert_eq!(
            m.permute_cols(&perm),
            Matrix::from_signed(p(5), &[vec![2, 3, 1]])
        );
        assert_eq!(
            m.permute_cols(&perm),
            m.matmul(&perm.matrix(p(5))).unwrap()
        );
        assert_eq!(m.permute_cols(&Permutation::identity(3)), m);
        let inv = perm.inverse();
        assert_eq!(m.permute_cols(&perm).permute_cols(&inv), m);
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
    }

    #[test]
    fn modulus_mismatch_errors() {
        let a = Matrix::identity(2, p(5));
        let b = Matrix::identity(2, p(7));
        assert!(matches!(a.matmul(&b), Err(Error::ModulusMismatch(5, 7))));
        assert!(a.hstack(&b).is_err());
        assert!(a.vstack(&b).is_err());
        assert!(a.row_space_equal(&b).is_err());
    }

    /// All matrices up to 3x3 over F_3: rref is idempotent, preserves the
    /// row space, and the kernel dimensions add up.
    #[test]
    fn rref_exhaustive_small() {
        let pr = p(3);
        for rows in 0..=3usize {
            for cols in 0..=3usize {
                let cells = rows * cols;
                for code in 0..3u64.pow(cells as u32) {
                    let mut c = code;
                    let mut m = Matrix::zeros(rows, cols, pr);
                    for i in 0..rows {
                        for j in 0..cols {
                            m.set(i, j, c % 3);
                            c /= 3;
                        }
                    }
                    let (r, pivots) = m.rref();
                    assert_eq!(r.rref().0, r, "rref not idempotent");
                    assert!(m.row_space_equal(&r).unwrap());
                    assert_eq!(pivots.len(), m.rank());
                    let k = m.kernel_basis();
                    assert_eq!(k.rows(), cols - pivots.len());
                    if k.rows() > 0 {
                        assert!(m.matmul(&k.transpose()).unwrap().is_zero());
                    }
                    assert_eq!(oracle_rref(&m), r.without_zero_rows());
                }
            }
        }
    }

    /// Canonicity: two matrices share a row space iff their reduced forms
    /// agree, pairwise over all 2x3 matrices mod 3.
    #[test]
    fn rref_is_canonical_pairwise() {
        let pr = p(3);
        let all: Vec<Matrix> = (0..3u64.pow(6))
            .map(|code| {
                let mut c = code;
                let mut m = Matrix::zeros(2, 3, pr);
                for i in 0..2 {
                    for j in 0..3 {
                        m.set(i, j, c % 3);
                        c /= 3;
                    }
                }
                m
            })
            .collect();
        let reduced: Vec<Matrix> = all.iter().map(|m| m.rref().0.without_zero_rows()).collect();
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                assert_eq!(
                    all[i].row_space_equal(&all[j]).unwrap(),
                    reduced[i] == reduced[j],
                );
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = Matrix::from_signed(p(5), &[vec![1, -1, 2], vec![0, 3, -4]]);
        let text = m.to_string();
        assert_eq!(text, "p 5 2 3\n1 4 2\n0 3 1\n");
        assert_eq!(Matrix::parse(&text, None).unwrap(), m);
        // Negative entries are accepted on input.
        let parsed = Matrix::parse("p 5 1 2\n-1 6\n", None).unwrap();
        assert_eq!(parsed, Matrix::from_signed(p(5), &[vec![4, 1]]));
        // Empty shapes survive the round trip.
        let e = Matrix::zeros(0, 3, p(3));
        assert_eq!(Matrix::parse(&e.to_string(), None).unwrap(), e);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Matrix::parse("", None).is_err());
        assert!(Matrix::parse("q 5 1 1\n0\n", None).is_err());
        assert!(Matrix::parse("p 4 1 1\n0\n", None).is_err());
        assert!(Matrix::parse("p 5 1 2\n1\n", None).is_err());
        assert!(Matrix::parse("p 5 1 1\n1\n1\n", None).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
            (1..=max, 1..=max, prop::sample::select(vec![3u64, 5, 7])).prop_flat_map(
                |(r, c, q)| {
                    prop::collection::vec(0..q, r * c).prop_map(move |data| {
                        let pr = Prime::new(q).unwrap();
                        let rows: Vec<Vec<u64>> =
                            data.chunks(c).map(|ch| ch.to_vec()).collect();
                        Matrix::from_rows(pr, c, rows)
                    })
                },
            )
        }

        proptest! {
            #[test]
            fn kernel_annihilates(m in arb_matrix(4)) {
                let k = m.kernel_basis();
                prop_assert_eq!(k.rows() + m.rank(), m.cols());
                if k.rows() > 0 {
                    prop_assert!(m.matmul(&k.transpose()).unwrap().is_zero());
                }
            }

            #[test]
            fn transpose_involution(m in arb_matrix(4)) {
                prop_assert_eq!(m.transpose().transpose(), m);
            }

            #[test]
            fn solve_produces_solutions(m in arb_matrix(4), seed in 0u64..1000) {
                // Build a consistent right-hand side from a known x.
                let x: Vec<u64> = (0..m.cols())
                    .map(|i| (seed >> i) % m.prime().value())
                    .collect();
                let b = m.mul_vec(&x);
                let (x0, k) = m.solve(&b).unwrap().expect("consistent by construction");
                prop_assert_eq!(m.mul_vec(&x0), b.clone());
                for r in 0..k.rows() {
                    let shifted: Vec<u64> = x0
                        .iter()
                        .zip(k.row(r))
                        .map(|(&a, &d)| m.prime().add(a, d))
                        .collect();
                    prop_assert_eq!(m.mul_vec(&shifted), b.clone());
                }
            }
        }
    }
}
