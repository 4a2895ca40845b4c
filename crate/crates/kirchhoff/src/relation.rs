//! Linear and affine relations between tuples of field values.
//!
//! A relation from m wires to n wires is an affine subspace of F_p^(m+n),
//! stored canonically; members are row vectors (x | y) with x the input
//! tuple and y the output tuple. Composition is relational: (x, z) is in
//! the composite when some middle tuple y satisfies both factors. Linear
//! maps embed as their graphs, and the embedding turns matrix product
//! into relational composition.

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{self, Matrix, Permutation};
use crate::subspace::AffineSubspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    dom: usize,
    cod: usize,
    space: AffineSubspace,
}

impl Relation {
    pub fn from_subspace(dom: usize, cod: usize, space: AffineSubspace) -> Result<Relation> {
        if space.ambient() != dom + cod {
            return Err(Error::dims(format!(
                "relation {dom} -> {cod} needs ambient {}, got {}",
                dom + cod,
                space.ambient()
            )));
        }
        Ok(Relation { dom, cod, space })
    }

    /// Row space of `g` as a linear relation.
    pub fn from_generator(dom: usize, cod: usize, g: Matrix) -> Result<Relation> {
        Relation::from_subspace(dom, cod, AffineSubspace::linear(g))
    }

    pub fn from_generator_offset(
        dom: usize,
        cod: usize,
        g: Matrix,
        offset: &[u64],
    ) -> Result<Relation> {
        Relation::from_subspace(dom, cod, AffineSubspace::from_generators(g, offset))
    }

    /// Kernel of `h` as a linear relation.
    pub fn from_parity_check(dom: usize, cod: usize, h: &Matrix) -> Result<Relation> {
        Relation::from_generator(dom, cod, h.kernel_basis())
    }

    /// Solution set of `h x = c`.
    pub fn from_constraints(dom: usize, cod: usize, h: &Matrix, c: &[u64]) -> Result<Relation> {
        Relation::from_subspace(dom, cod, AffineSubspace::from_parity(h, c)?)
    }

    /// Graph of the linear map `x -> x M`, a relation with `M.rows()`
    /// inputs and `M.cols()` outputs.
    pub fn graph_of(m: &Matrix) -> Relation {
        let g = Matrix::identity(m.rows(), m.prime())
            .hstack(m)
            .expect("row counts match by construction");
        Relation {
            dom: m.rows(),
            cod: m.cols(),
            space: AffineSubspace::linear(g),
        }
    }

    pub fn identity(prime: Prime, n: usize) -> Relation {
        Relation::graph_of(&Matrix::identity(n, prime))
    }

    pub fn empty(prime: Prime, dom: usize, cod: usize) -> Relation {
        Relation {
            dom,
            cod,
            space: AffineSubspace::empty(prime, dom + cod),
        }
    }

    pub fn full(prime: Prime, dom: usize, cod: usize) -> Relation {
        Relation {
            dom,
            cod,
            space: AffineSubspace::full(prime, dom + cod),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn prime(&self) -> Prime {
        self.space.prime()
    }

    pub fn space(&self) -> &AffineSubspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.space.is_linear()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.space.contains(v)
    }

    pub fn members(&self) -> Vec<Vec<u64>> {
        self.space.elements()
    }

    /// Canonical generator matrix (basis of the relation). Requires a
    /// linear relation; affine callers use `space()` directly.
    pub fn generator(&self) -> Result<Matrix> {
        if !self.is_linear() {
            return Err(Error::AffineInput);
        }
        Ok(self.space.basis().clone())
    }

    /// Canonical parity-check matrix: the relation is its kernel.
    pub fn parity_check(&self) -> Result<Matrix> {
        if !self.is_linear() {
            return Err(Error::AffineInput);
        }
        Ok(self.space.parity_check())
    }

    /// Relational composite: first through `self`, then through `other`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.prime().expect_same(other.prime())?;
        if self.cod != other.dom {
            return Err(Error::dims(format!(
                "compose: {} outputs glued to {} inputs",
                self.cod, other.dom
            )));
        }
        let p = self.prime();
        let (m, k, n) = (self.dom, self.cod, other.cod);
        if self.is_empty() || other.is_empty() {
            return Ok(Relation::empty(p, m, n));
        }
        let b1 = self.space.basis();
        let b2 = other.space.basis();
        let o1 = self.space.offset();
        let o2 = other.space.offset();
        let (k1, k2) = (b1.rows(), b2.rows());
        // Equalize the middle coordinates: coefficients (t1, t2) of the
        // two bases must satisfy t1 B1_mid - t2 B2_mid = o2_mid - o1_mid.
        let sys = b1
            .block(0, k1, m, m + k)
            .transpose()
            .hstack(&b2.block(0, k2, 0, k).transpose().neg())?;
        let rhs: Vec<u64> = (0..k).map(|i| p.sub(o2[i], o1[m + i])).collect();
        let Some((t0, ker)) = sys.solve(&rhs)? else {
            return Ok(Relation::empty(p, m, n));
        };
        // Project agreeing coefficient pairs onto the outer coordinates.
        let top = b1.block(0, k1, 0, m).hstack(&Matrix::zeros(k1, n, p))?;
        let bot = Matrix::zeros(k2, m, p).hstack(&b2.block(0, k2, k, k + n))?;
        let outer = top.vstack(&bot)?;
        let basis = ker.matmul(&outer)?;
        let shift = outer.left_mul_vec(&t0);
        let offset: Vec<u64> = o1[0..m]
            .iter()
            .chain(&o2[k..k + n])
            .zip(&shift)
            .map(|(&a, &b)| p.add(a, b))
            .collect();
        Relation::from_subspace(m, n, AffineSubspace::from_generators(basis, &offset))
    }

    /// Side-by-side juxtaposition: inputs and outputs concatenate.
    pub fn tensor(&self, other: &Relation) -> Result<Relation> {
        self.prime().expect_same(other.prime())?;
        let p = self.prime();
        let (m1, n1, m2, n2) = (self.dom, self.cod, other.dom, other.cod);
        let (dom, cod) = (m1 + m2, n1 + n2);
        if self.is_empty() || other.is_empty() {
            return Ok(Relation::empty(p, dom, cod));
        }
        // Coordinate embeddings of each factor into the joint layout
        // (x1 | x2 | y1 | y2).
        let place = |m: usize, n: usize, x_at: usize, y_at: usize| {
            Matrix::from_fn(m + n, dom + cod, p, |r, c| {
                let target = if r < m { x_at + r } else { y_at + (r - m) };
                u64::from(c == target)
            })
        };
        let t1 = place(m1, n1, 0, dom);
        let t2 = place(m2, n2, m1, dom + n1);
        let basis = self
            .space
            .basis()
            .matmul(&t1)?
            .vstack(&other.space.basis().matmul(&t2)?)?;
        let mut offset = t1.left_mul_vec(self.space.offset());
        for (a, b) in offset.iter_mut().zip(t2.left_mul_vec(other.space.offset())) {
            *a = p.add(*a, b);
        }
        Relation::from_subspace(dom, cod, AffineSubspace::from_generators(basis, &offset))
    }

    /// The same member set read backwards: (y, x) for each (x, y).
    pub fn converse(&self) -> Relation {
        let p = self.prime();
        if self.is_empty() {
            return Relation::empty(p, self.cod, self.dom);
        }
        let swap = Matrix::from_fn(self.dom + self.cod, self.dom + self.cod, p, |r, c| {
            let target = if r < self.dom { self.cod + r } else { r - self.dom };
            u64::from(c == target)
        });
        let space = self.space.transform(&swap).expect("square transform");
        Relation {
            dom: self.cod,
            cod: self.dom,
            space,
        }
    }

    /// All (x', y') pairing to zero with every member: x.x' - y.y' = 0.
    pub fn orthogonal_complement(&self) -> Result<Relation> {
        if !self.is_linear() {
            return Err(Error::AffineInput);
        }
        let p = self.prime();
        let sign = Matrix::from_fn(self.dom + self.cod, self.dom + self.cod, p, |r, c| {
            if r != c {
                0
            } else if r < self.dom {
                1
            } else {
                p.neg(1)
            }
        });
        let gd = self.space.basis().matmul(&sign)?;
        Relation::from_generator(self.dom, self.cod, gd.kernel_basis())
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subrelation(&self, other: &Relation) -> Result<bool> {
        self.prime().expect_same(other.prime())?;
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::dims("is_subrelation: boundary mismatch".to_string()));
        }
        if self.is_empty() {
            return Ok(true);
        }
        let (h, c) = other.space.constraints();
        if h.mul_vec(self.space.offset()) != c {
            return Ok(false);
        }
        Ok(h.matmul(&self.space.basis().transpose())?.is_zero())
    }

    /// Whether the all-ones tuple maps to the all-ones tuple.
    pub fn is_quasi_stochastic(&self) -> bool {
        self.contains(&vec![1; self.dom + self.cod])
    }

    /// The relation whose members are ((x, x), ()) for x of length n.
    pub fn cup(prime: Prime, n: usize) -> Relation {
        let g = Matrix::identity(n, prime)
            .hstack(&Matrix::identity(n, prime))
            .expect("same row count");
        Relation {
            dom: 2 * n,
            cod: 0,
            space: AffineSubspace::linear(g),
        }
    }

    /// The relation whose members are ((), (x, x)).
    pub fn cap(prime: Prime, n: usize) -> Relation {
        Relation::cup(prime, n).converse()
    }

    /// Bends all inputs down: the state 0 -> dom + cod with the same
    /// member tuples. Inverse of `from_state`.
    pub fn to_state(&self) -> Relation {
        Relation {
            dom: 0,
            cod: self.dom + self.cod,
            space: self.space.clone(),
        }
    }

    /// Reads a state 0 -> m + n back as a relation m -> n.
    pub fn from_state(state: &Relation, dom: usize, cod: usize) -> Result<Relation> {
        if state.dom != 0 || state.cod != dom + cod {
            return Err(Error::dims(format!(
                "from_state: want a state 0 -> {}, got {} -> {}",
                dom + cod,
                state.dom,
                state.cod
            )));
        }
        Ok(Relation {
            dom,
            cod,
            space: state.space.clone(),
        })
    }

    /// Standard presentation (A, sigma): the parity check becomes
    /// (1 | A) after pulling the permuted columns back, see `StandardForm`.
    pub fn standard_form(&self) -> Result<StandardForm> {
        if !self.is_linear() {
            return Err(Error::AffineInput);
        }
        let h = self.space.parity_check();
        let (hr, pivots) = h.rref();
        let n = self.dom + self.cod;
        let nonpivots: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let r = pivots.len();
        let p = self.prime();
        let a = Matrix::from_fn(r, n - r, p, |i, j| hr.get(i, nonpivots[j]));
        let images: Vec<usize> = pivots.iter().chain(&nonpivots).copied().collect();
        Ok(StandardForm {
            prime: p,
            total: n,
            a,
            sigma: Permutation::new(images).expect("pivot split is a bijection"),
        })
    }
}

/// Every row sums to one.
pub fn matrix_is_quasi_stochastic(m: &Matrix) -> bool {
    let p = m.prime();
    (0..m.rows()).all(|r| {
        let mut acc = 0u64;
        for c in 0..m.cols() {
            acc = p.add(acc, m.get(r, c));
        }
        acc == 1
    })
}

/// A linear relation presented as constraints `(1 | A)` on permuted
/// coordinates: `parity_check() = (1 | A) P` and `generator() = (-Aᵀ | 1) P`
/// where P is the matrix of `sigma`, which sends the standard position of
/// each column to its original wire index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    prime: Prime,
    total: usize,
    pub a: Matrix,
    pub sigma: Permutation,
}

impl StandardForm {
    /// Number of independent constraints (rows of A).
    pub fn rank(&self) -> usize {
        self.a.rows()
    }

    /// Dimension of the relation (columns of A).
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn parity_check(&self) -> Matrix {
        Matrix::identity(self.a.rows(), self.prime)
            .hstack(&self.a)
            .expect("same row count")
            .permute_cols(&self.sigma)
    }

    pub fn generator(&self) -> Matrix {
        self.a
            .transpose()
            .neg()
            .hstack(&Matrix::identity(self.a.cols(), self.prime))
            .expect("same row count")
            .permute_cols(&self.sigma)
    }
}

// --- text format ----------------------------------------------------------
//
// Header: `rel p <modulus> dom <m> cod <n>` with an optional trailing
// `offset v1 .. vN` (omitted for linear relations) or the single token
// `empty`. Remaining lines are generator rows; non-canonical input is
// accepted and canonicalized.

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "rel p {} dom {} cod {}", self.prime(), self.dom, self.cod)?;
        if self.is_empty() {
            return writeln!(f, " empty");
        }
        if !self.is_linear() {
            write!(f, " offset")?;
            for v in self.space.offset() {
                write!(f, " {v}")?;
            }
        }
        writeln!(f)?;
        let b = self.space.basis();
        for r in 0..b.rows() {
            let line: Vec<String> = b.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) struct RelHeader {
    pub prime: Prime,
    pub dom: usize,
    pub cod: usize,
    pub offset: Option<Vec<u64>>,
    pub empty: bool,
}

pub(crate) fn parse_rel_header(
    line: &str,
    tag: &str,
    coords_per_wire: usize,
    modulus_override: Option<u64>,
) -> Result<RelHeader> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 7 || toks[0] != tag || toks[1] != "p" || toks[3] != "dom" || toks[5] != "cod" {
        return Err(Error::Parse(format!("bad {tag} header {line:?}")));
    }
    let stated = matrix::parse_i64(toks[2])?;
    if stated < 0 {
        return Err(Error::Parse("negative modulus".into()));
    }
    let p_val = modulus_override.unwrap_or(stated as u64);
    let prime = Prime::new(p_val)
        .map_err(|_| Error::Parse(format!("modulus {p_val} is not an odd prime")))?;
    let dom = matrix::parse_usize(toks[4])?;
    let cod = matrix::parse_usize(toks[6])?;
    let n = (dom + cod) * coords_per_wire;
    let rest = &toks[7..];
    let (offset, empty) = match rest.first() {
        None => (None, false),
        Some(&"empty") if rest.len() == 1 => (None, true),
        Some(&"offset") => {
            if rest.len() != n + 1 {
                return Err(Error::Parse(format!(
                    "offset needs {n} entries, got {}",
                    rest.len() - 1
                )));
            }
            let vals: Vec<u64> = rest[1..]
                .iter()
                .map(|t| matrix::parse_i64(t).map(|v| prime.reduce_i64(v)))
                .collect::<Result<_>>()?;
            (Some(vals), false)
        }
        Some(other) => {
            return Err(Error::Parse(format!("unexpected header token {other:?}")));
        }
    };
    Ok(RelHeader {
        prime,
        dom,
        cod,
        offset,
        empty,
    })
}

impl Relation {
    pub fn parse(text: &str, modulus_override: Option<u64>) -> Result<Relation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header_line = lines
            .next()
            .ok_or_else(|| Error::Parse("empty relation text".into()))?;
        let h = parse_rel_header(header_line, "rel", 1, modulus_override)?;
        let n = h.dom + h.cod;
        if h.empty {
            if lines.next().is_some() {
                return Err(Error::Parse("rows after empty marker".into()));
            }
            return Ok(Relation::empty(h.prime, h.dom, h.cod));
        }
        let rows: Vec<Vec<u64>> = lines
            .map(|l| matrix::parse_row(l, n, h.prime))
            .collect::<Result<_>>()?;
        let g = Matrix::from_rows(h.prime, n, rows);
        let offset = h.offset.unwrap_or_else(|| vec![0; n]);
        Relation::from_generator_offset(h.dom, h.cod, g, &offset)
    }
}
