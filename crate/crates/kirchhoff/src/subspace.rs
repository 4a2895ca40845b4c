//! Affine subspaces of F_p^n in a canonical form.
//!
//! A subspace is stored as a direction basis in reduced row echelon form
//! plus an offset vector whose pivot coordinates are zeroed. That
//! representative is unique per subspace, so equality of values is
//! equality of point sets. The empty subspace is first class: emptiness
//! is a data point (an inconsistent constraint system), not an error.

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    prime: Prime,
    ambient: usize,
    /// RREF, no zero rows. Meaningless when `consistent` is false.
    basis: Matrix,
    /// Canonical coset representative: zero in every pivot column.
    offset: Vec<u64>,
    consistent: bool,
}

impl AffineSubspace {
    /// Affine span of `offset + rowspace(generators)`, canonicalized.
    pub fn from_generators(generators: Matrix, offset: &[u64]) -> AffineSubspace {
        let prime = generators.prime();
        let ambient = generators.cols();
        assert_eq!(offset.len(), ambient, "offset length != ambient dimension");
        let (r, pivots) = generators.rref();
        let basis = r.without_zero_rows();
        let mut o: Vec<u64> = offset.iter().map(|&v| prime.reduce(v)).collect();
        for (i, &c) in pivots.iter().enumerate() {
            let f = o[c];
            if f == 0 {
                continue;
            }
            for (j, slot) in o.iter_mut().enumerate() {
                *slot = prime.sub(*slot, prime.mul(f, basis.get(i, j)));
            }
        }
        AffineSubspace {
            prime,
            ambient,
            basis,
            offset: o,
            consistent: true,
        }
    }

    /// The linear subspace spanned by the given rows.
    pub fn linear(generators: Matrix) -> AffineSubspace {
        let n = generators.cols();
        AffineSubspace::from_generators(generators, &vec![0; n])
    }

    pub fn point(prime: Prime, offset: &[u64]) -> AffineSubspace {
        AffineSubspace::from_generators(Matrix::zeros(0, offset.len(), prime), offset)
    }

    pub fn full(prime: Prime, ambient: usize) -> AffineSubspace {
        AffineSubspace::linear(Matrix::identity(ambient, prime))
    }

    pub fn empty(prime: Prime, ambient: usize) -> AffineSubspace {
        AffineSubspace {
            prime,
            ambient,
            basis: Matrix::zeros(0, ambient, prime),
            offset: vec![0; ambient],
            consistent: false,
        }
    }

    /// Solution set of `H x = c` (x a column vector).
    pub fn from_parity(h: &Matrix, c: &[u64]) -> Result<AffineSubspace> {
        match h.solve(c)? {
            None => Ok(AffineSubspace::empty(h.prime(), h.cols())),
            Some((x0, k)) => Ok(AffineSubspace::from_generators(k, &x0)),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        !self.consistent
    }

    /// Dimension of the direction space. Zero for both points and the
    /// empty subspace; check `is_empty` to tell them apart.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn offset(&self) -> &[u64] {
        &self.offset
    }

    pub fn is_linear(&self) -> bool {
        self.consistent && self.offset.iter().all(|&v| v == 0)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if !self.consistent || v.len() != self.ambient {
            return false;
        }
        let p = self.prime;
        let mut d: Vec<u64> = v
            .iter()
            .zip(&self.offset)
            .map(|(&a, &b)| p.sub(p.reduce(a), b))
            .collect();
        // The basis is in reduced form, so one elimination sweep decides
        // membership in the direction space.
        for i in 0..self.basis.rows() {
            let c = (0..self.ambient)
                .find(|&j| self.basis.get(i, j) != 0)
                .expect("no zero rows in canonical basis");
            let f = d[c];
            if f == 0 {
                continue;
            }
            for (j, slot) in d.iter_mut().enumerate() {
                *slot = p.sub(*slot, p.mul(f, self.basis.get(i, j)));
            }
        }
        d.iter().all(|&x| x == 0)
    }

    /// Constraint system `(H, c)` with the subspace equal to
    /// `{x : H x = c}`. The empty subspace yields the unsatisfiable
    /// `0 x = 1`.
    pub fn constraints(&self) -> (Matrix, Vec<u64>) {
        if !self.consistent {
            return (Matrix::zeros(1, self.ambient, self.prime), vec![1]);
        }
        let h = self.basis.kernel_basis();
        let c = h.mul_vec(&self.offset);
        (h, c)
    }

    /// Parity check of the direction space: rows annihilating every basis
    /// vector. For the empty subspace this is the direction of nothing;
    /// prefer `constraints`.
    pub fn parity_check(&self) -> Matrix {
        self.basis.kernel_basis()
    }

    /// Image under `x -> x T` (T maps ambient() rows to T.cols()).
    pub fn transform(&self, t: &Matrix) -> Result<AffineSubspace> {
        self.prime.expect_same(t.prime())?;
        if t.rows() != self.ambient {
            return Err(Error::dims(format!(
                "transform: ambient {} but matrix has {} rows",
                self.ambient,
                t.rows()
            )));
        }
        if !self.consistent {
            return Ok(AffineSubspace::empty(self.prime, t.cols()));
        }
        let basis = self.basis.matmul(t)?;
        let offset = t.left_mul_vec(&self.offset);
        Ok(AffineSubspace::from_generators(basis, &offset))
    }

    /// Every member, in lexicographic coefficient order. Exponential in
    /// `dim`; intended for oracles and small examples.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        if !self.consistent {
            return Vec::new();
        }
        let p = self.prime.value();
        let d = self.basis.rows();
        let count = (p as usize).pow(d as u32);
        let mut out = Vec::with_capacity(count);
        for code in 0..count {
            let mut c = code;
            let mut v = self.offset.clone();
            for i in 0..d {
                let t = (c % p as usize) as u64;
                c /= p as usize;
                if t != 0 {
                    for (j, slot) in v.iter_mut().enumerate() {
                        *slot = self.prime.add(*slot, self.prime.mul(t, self.basis.get(i, j)));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}
