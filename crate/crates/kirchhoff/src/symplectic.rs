//! Relations on doubled wires: each wire carries a position coordinate q
//! (voltage) and a momentum coordinate p (current).
//!
//! A relation m -> n is stored as an affine subspace of F_p^(2N), N = m+n,
//! with columns ordered (q_1 .. q_N, p_1 .. p_N); wires 0..m are inputs.
//! The stored vector for a member ((q_in, p_in), (q_out, p_out)) is
//! (q_in, q_out, p_in, -p_out): output momenta are negated, the usual
//! orientation twist that bending a wire applies to its current. Under
//! this convention the state of the identity wire is Lagrangian and the
//! conserved-current results take their standard shape.

use crate::error::{Error, Result};
use crate::field::{Prime, Scalar};
use crate::matrix::{self, Matrix, Permutation};
use crate::relation::{parse_rel_header, Relation};
use crate::subspace::AffineSubspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticRelation {
    dom: usize,
    cod: usize,
    state: AffineSubspace,
}

/// The block form [[0, 1], [-1, 0]] defining the symplectic pairing
/// u J vᵀ on 2n coordinates.
pub fn symplectic_form_matrix(prime: Prime, n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, prime, |r, c| {
        if r < n && c == n + r {
            1
        } else if r >= n && c == r - n {
            prime.neg(1)
        } else {
            0
        }
    })
}

/// All vectors pairing symplectically to zero with every member of `u`.
pub fn symplectic_dual(u: &AffineSubspace) -> Result<AffineSubspace> {
    if !u.is_linear() {
        return Err(Error::AffineInput);
    }
    if !u.ambient().is_multiple_of(2) {
        return Err(Error::dims("symplectic dual needs an even ambient".to_string()));
    }
    let j = symplectic_form_matrix(u.prime(), u.ambient() / 2);
    let gj = u.basis().matmul(&j)?;
    Ok(AffineSubspace::linear(gj.kernel_basis()))
}

/// Diagonal sign matrix translating member coordinates to stored
/// coordinates (and back): negates the output momentum block.
fn output_momentum_flip(dom: usize, cod: usize, prime: Prime) -> Matrix {
    let n = dom + cod;
    Matrix::from_fn(2 * n, 2 * n, prime, |r, c| {
        if r != c {
            0
        } else if r >= n + dom {
            prime.neg(1)
        } else {
            1
        }
    })
}

/// Column permutation from member layout (q_in, q_out, p_in, p_out) to
/// the boundary-grouped layout ((q_in, p_in), (q_out, p_out)) used when
/// treating the doubled relation as a plain relation on 2m -> 2n.
fn member_to_boundary_perm(dom: usize, cod: usize) -> Permutation {
    let n = dom + cod;
    let mut images = vec![0usize; 2 * n];
    for i in 0..dom {
        images[i] = i;
        images[n + i] = dom + i;
    }
    for j in 0..cod {
        images[dom + j] = 2 * dom + j;
        images[n + dom + j] = 2 * dom + cod + j;
    }
    Permutation::new(images).expect("layout shuffle is a bijection")
}

impl SymplecticRelation {
    /// Wraps a subspace already in stored coordinates.
    pub fn from_stored(dom: usize, cod: usize, state: AffineSubspace) -> Result<SymplecticRelation> {
        if state.ambient() != 2 * (dom + cod) {
            return Err(Error::dims(format!(
                "doubled relation {dom} -> {cod} needs ambient {}, got {}",
                2 * (dom + cod),
                state.ambient()
            )));
        }
        Ok(SymplecticRelation { dom, cod, state })
    }

    /// Builds from a subspace in member coordinates (q_in, q_out, p_in,
    /// p_out).
    pub fn from_member_space(
        dom: usize,
        cod: usize,
        member: AffineSubspace,
    ) -> Result<SymplecticRelation> {
        let flip = output_momentum_flip(dom, cod, member.prime());
        SymplecticRelation::from_stored(dom, cod, member.transform(&flip)?)
    }

    /// Builds from generator rows and offset given in member coordinates
    /// (q_in, q_out, p_in, p_out).
    pub fn from_member_rows(
        dom: usize,
        cod: usize,
        rows: Matrix,
        offset: &[u64],
    ) -> Result<SymplecticRelation> {
        SymplecticRelation::from_member_space(dom, cod, AffineSubspace::from_generators(rows, offset))
    }

    /// Graph of a linear member map: (q_in | p_in) T = (q_out | p_out),
    /// with T of shape 2 dom x 2 cod.
    pub fn from_member_map(dom: usize, cod: usize, t: &Matrix) -> Result<SymplecticRelation> {
        if t.rows() != 2 * dom || t.cols() != 2 * cod {
            return Err(Error::dims(format!(
                "member map for {dom} -> {cod} must be {}x{}",
                2 * dom,
                2 * cod
            )));
        }
        let p = t.prime();
        let n = dom + cod;
        let rows = Matrix::from_fn(2 * dom, 2 * n, p, |r, c| {
            // Input block: unit vector; output block: the map's row.
            let from_input = match (r < dom, c) {
                (true, c) if c < dom => u64::from(c == r),
                (false, c) if c >= n && c < n + dom => u64::from(c - n == r - dom),
                _ => 0,
            };
            let from_output = if c >= dom && c < n {
                t.get(r, c - dom)
            } else if c >= n + dom {
                t.get(r, cod + (c - n - dom))
            } else {
                0
            };
            p.add(from_input, from_output)
        });
        SymplecticRelation::from_member_rows(dom, cod, rows, &vec![0; 2 * n])
    }

    pub fn identity(prime: Prime, n: usize) -> SymplecticRelation {
        SymplecticRelation::from_member_map(n, n, &Matrix::identity(2 * n, prime))
            .expect("identity map is square")
    }

    pub fn empty(prime: Prime, dom: usize, cod: usize) -> SymplecticRelation {
        SymplecticRelation {
            dom,
            cod,
            state: AffineSubspace::empty(prime, 2 * (dom + cod)),
        }
    }

    /// The doubled permutation acting as sigma on positions and momenta
    /// alike; always Lagrangian.
    pub fn permutation(prime: Prime, sigma: &Permutation) -> SymplecticRelation {
        lift(&Relation::graph_of(&sigma.matrix(prime))).expect("graphs are linear")
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    /// Total wire count N = dom + cod.
    pub fn wires(&self) -> usize {
        self.dom + self.cod
    }

    pub fn prime(&self) -> Prime {
        self.state.prime()
    }

    /// The stored subspace (output momenta negated).
    pub fn state(&self) -> &AffineSubspace {
        &self.state
    }

    /// The member-coordinate subspace (true output momenta).
    pub fn member_space(&self) -> AffineSubspace {
        let flip = output_momentum_flip(self.dom, self.cod, self.prime());
        self.state.transform(&flip).expect("square transform")
    }

    pub fn is_empty(&self) -> bool {
        self.state.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.state.is_linear()
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// Membership test in member coordinates (q_in, q_out, p_in, p_out).
    pub fn contains_member(&self, v: &[u64]) -> bool {
        if v.len() != 2 * self.wires() {
            return false;
        }
        let p = self.prime();
        let n = self.wires();
        let stored: Vec<u64> = v
            .iter()
            .enumerate()
            .map(|(i, &x)| if i >= n + self.dom { p.neg(p.reduce(x)) } else { p.reduce(x) })
            .collect();
        self.state.contains(&stored)
    }

    /// All members in member coordinates.
    pub fn members(&self) -> Vec<Vec<u64>> {
        self.member_space().elements()
    }

    /// Direction of the stored subspace as a linear space.
    fn direction(&self) -> AffineSubspace {
        AffineSubspace::linear(self.state.basis().clone())
    }

    /// True when the direction space is its own symplectic dual (and the
    /// relation is nonempty). For affine relations this tests the linear
    /// part.
    pub fn is_lagrangian(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let n = self.wires();
        if self.state.dim() != n {
            return false;
        }
        let dir = self.direction();
        symplectic_dual(&dir).map(|d| d == dir).unwrap_or(false)
    }

    /// View as a plain relation 2m -> 2n on member coordinates grouped
    /// ((q_in, p_in), (q_out, p_out)).
    pub fn to_relation(&self) -> Relation {
        let perm = member_to_boundary_perm(self.dom, self.cod);
        let space = self
            .member_space()
            .transform(&perm.matrix(self.prime()))
            .expect("square transform");
        Relation::from_subspace(2 * self.dom, 2 * self.cod, space)
            .expect("ambient matches by construction")
    }

    /// Inverse of `to_relation`.
    pub fn from_relation(r: &Relation, dom: usize, cod: usize) -> Result<SymplecticRelation> {
        if r.dom() != 2 * dom || r.cod() != 2 * cod {
            return Err(Error::dims(format!(
                "expected a relation {} -> {}, got {} -> {}",
                2 * dom,
                2 * cod,
                r.dom(),
                r.cod()
            )));
        }
        let perm = member_to_boundary_perm(dom, cod).inverse();
        let member = r.space().transform(&perm.matrix(r.prime()))?;
        let flip = output_momentum_flip(dom, cod, r.prime());
        SymplecticRelation::from_stored(dom, cod, member.transform(&flip)?)
    }

    pub fn compose(&self, other: &SymplecticRelation) -> Result<SymplecticRelation> {
        let c = self.to_relation().compose(&other.to_relation())?;
        SymplecticRelation::from_relation(&c, self.dom, other.cod)
    }

    pub fn tensor(&self, other: &SymplecticRelation) -> Result<SymplecticRelation> {
        self.prime().expect_same(other.prime())?;
        let p = self.prime();
        let (m1, n1, m2, n2) = (self.dom, self.cod, other.dom, other.cod);
        let (dom, cod) = (m1 + m2, n1 + n2);
        if self.is_empty() || other.is_empty() {
            return Ok(SymplecticRelation::empty(p, dom, cod));
        }
        let total = dom + cod;
        // Wire w of each factor lands at a joint wire index; q and p
        // columns move together, stored signs carry over unchanged.
        let embed = |wires: usize, wire_at: &dyn Fn(usize) -> usize| {
            Matrix::from_fn(2 * wires, 2 * total, p, |r, c| {
                let (wire, grade) = if r < wires { (r, 0) } else { (r - wires, 1) };
                let target = wire_at(wire) + grade * total;
                u64::from(c == target)
            })
        };
        let at1 = move |w: usize| if w < m1 { w } else { dom + (w - m1) };
        let at2 = move |w: usize| if w < m2 { m1 + w } else { dom + n1 + (w - m2) };
        let t1 = embed(m1 + n1, &at1);
        let t2 = embed(m2 + n2, &at2);
        let basis = self
            .state
            .basis()
            .matmul(&t1)?
            .vstack(&other.state.basis().matmul(&t2)?)?;
        let mut offset = t1.left_mul_vec(self.state.offset());
        for (a, b) in offset.iter_mut().zip(t2.left_mul_vec(other.state.offset())) {
            *a = p.add(*a, b);
        }
        SymplecticRelation::from_stored(dom, cod, AffineSubspace::from_generators(basis, &offset))
    }

    /// Member tuples read backwards: ((q', p'), (q, p)) for each member
    /// ((q, p), (q', p')).
    pub fn converse(&self) -> SymplecticRelation {
        let c = self.to_relation().converse();
        SymplecticRelation::from_relation(&c, self.cod, self.dom).expect("shapes match")
    }

    /// Bends all inputs to outputs: the state 0 -> N with the same stored
    /// subspace. Bending reverses the orientation of input currents,
    /// which is exactly the stored sign convention.
    pub fn to_state(&self) -> SymplecticRelation {
        SymplecticRelation {
            dom: 0,
            cod: self.wires(),
            state: self.state.clone(),
        }
    }

    /// Reads a state 0 -> m+n back as a relation m -> n.
    pub fn from_state(state: &SymplecticRelation, dom: usize, cod: usize) -> Result<SymplecticRelation> {
        if state.dom != 0 || state.cod != dom + cod {
            return Err(Error::dims(format!(
                "from_state: want a state 0 -> {}, got {} -> {}",
                dom + cod,
                state.dom,
                state.cod
            )));
        }
        Ok(SymplecticRelation {
            dom,
            cod,
            state: state.state.clone(),
        })
    }

    /// Relabels wires in stored coordinates: wire w becomes wire
    /// `sigma(w)`, carrying its q and p columns along. Boundary sizes are
    /// kept, so permutations mixing inputs and outputs only make sense on
    /// states.
    pub fn permute_wires(&self, sigma: &Permutation) -> Result<SymplecticRelation> {
        let n = self.wires();
        if sigma.len() != n {
            return Err(Error::dims("wire permutation has wrong size".to_string()));
        }
        let mut images = Vec::with_capacity(2 * n);
        images.extend(sigma.images().iter().copied());
        images.extend(sigma.images().iter().map(|&v| n + v));
        let doubled = Permutation::new(images).expect("doubling preserves bijection");
        let state = self.state.transform(&doubled.matrix(self.prime()))?;
        SymplecticRelation::from_stored(self.dom, self.cod, state)
    }

    /// Power fed into the relation at a member, in member coordinates:
    /// sum of q p over inputs minus sum of q' p' over outputs.
    pub fn power_input(&self, member: &[u64]) -> Result<Scalar> {
        if !self.contains_member(member) {
            return Err(Error::NotAMember);
        }
        let p = self.prime();
        let n = self.wires();
        let mut acc = Scalar::zero(p);
        for w in 0..n {
            let term = Scalar::new(member[w] as i64, p) * Scalar::new(member[n + w] as i64, p);
            if w < self.dom {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        Ok(acc)
    }

    /// The power quadratic form on a stored vector: sum over wires of
    /// q_w p_w (stored output momenta already carry the minus sign).
    fn power_form(&self, v: &[u64]) -> u64 {
        let p = self.prime();
        let n = self.wires();
        let mut acc = 0;
        for w in 0..n {
            acc = p.add(acc, p.mul(v[w], v[n + w]));
        }
        acc
    }

    fn power_polar(&self, u: &[u64], v: &[u64]) -> u64 {
        let p = self.prime();
        let n = self.wires();
        let mut acc = 0;
        for w in 0..n {
            acc = p.add(acc, p.add(p.mul(u[w], v[n + w]), p.mul(v[w], u[n + w])));
        }
        acc
    }

    /// True when the power input vanishes on every member. The quadratic
    /// form is checked on the offset, the basis vectors, and all pairings;
    /// over char > 2 this pins the form on the whole coset.
    pub fn is_lossless(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let o = self.state.offset();
        if self.power_form(o) != 0 {
            return false;
        }
        let b = self.state.basis();
        let rows: Vec<Vec<u64>> = (0..b.rows()).map(|r| b.row_vec(r)).collect();
        for (i, bi) in rows.iter().enumerate() {
            if self.power_form(bi) != 0 || self.power_polar(o, bi) != 0 {
                return false;
            }
            for bj in &rows[i + 1..] {
                if self.power_polar(bi, bj) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Standard constraint presentation of the direction space; see
    /// `LagrangianForm`. The deterministic canonical choice scans wires
    /// in their natural order.
    pub fn lagrangian_form(&self) -> Result<LagrangianForm> {
        let n = self.wires();
        let order: Vec<usize> = (0..n).collect();
        self.lagrangian_form_with_order(&order)
    }

    /// Standard form with an alternative wire scan order, yielding a
    /// different but equally valid (Y, A, sigma) presentation.
    pub fn lagrangian_form_with_order(&self, wire_order: &[usize]) -> Result<LagrangianForm> {
        let n = self.wires();
        Permutation::new(wire_order.to_vec())
            .map_err(|_| Error::dims("wire order must be a permutation".to_string()))?;
        if !self.is_lagrangian() {
            return Err(Error::NotLagrangian);
        }
        let p = self.prime();
        let h = self.state.parity_check();
        // Pass 1: pivot on momentum columns first to split the wires into
        // the momentum-pivot class (class 0) and the rest (class 1).
        let mut order1: Vec<usize> = wire_order.iter().map(|&w| n + w).collect();
        order1.extend(wire_order.iter().copied());
        let (_, piv1) = h.rref_in_order(&order1);
        let class0: Vec<usize> = piv1
            .iter()
            .filter(|&&c| c >= n)
            .map(|&c| c - n)
            .collect();
        let class1: Vec<usize> = wire_order
            .iter()
            .copied()
            .filter(|w| !class0.contains(w))
            .collect();
        let (n_p, n_q) = (class0.len(), class1.len());
        // Pass 2: unit blocks on class-0 momenta and class-1 positions;
        // the untouched columns then read off Y, A, and A transposed.
        let mut order2: Vec<usize> = class0.iter().map(|&w| n + w).collect();
        order2.extend(class1.iter().copied());
        order2.extend(class0.iter().copied());
        order2.extend(class1.iter().map(|&w| n + w));
        let (r2, piv2) = h.rref_in_order(&order2);
        assert_eq!(
            piv2,
            order2[..n_p + n_q].to_vec(),
            "pivot structure of a Lagrangian parity check"
        );
        let y = Matrix::from_fn(n_p, n_p, p, |i, j| r2.get(i, class0[j]));
        let a = Matrix::from_fn(n_q, n_p, p, |r, j| p.neg(r2.get(n_p + r, class0[j])));
        // Cross-blocks forced by the symplectic condition.
        debug_assert_eq!(y, y.transpose());
        for i in 0..n_p {
            for (j, &w) in class1.iter().enumerate() {
                debug_assert_eq!(r2.get(i, n + w), a.get(j, i), "upper momentum block");
            }
        }
        for r in 0..n_q {
            for &w in &class1 {
                debug_assert_eq!(r2.get(n_p + r, n + w), 0, "lower momentum block");
            }
        }
        let images: Vec<usize> = class0.iter().chain(&class1).copied().collect();
        Ok(LagrangianForm {
            prime: p,
            y,
            a,
            sigma: Permutation::new(images).expect("class split is a bijection"),
        })
    }
}

/// Pairs a linear relation with its orthogonal complement: positions
/// follow the relation, momenta flow backwards through the complement.
/// The image is always Lagrangian and lossless.
pub fn lift(r: &Relation) -> Result<SymplecticRelation> {
    let g = r.generator()?;
    let h = r.parity_check()?;
    let p = r.prime();
    let n = r.dom() + r.cod();
    let top = g.hstack(&Matrix::zeros(g.rows(), n, p))?;
    let bot = Matrix::zeros(h.rows(), n, p).hstack(&h.neg())?;
    SymplecticRelation::from_stored(r.dom(), r.cod(), AffineSubspace::linear(top.vstack(&bot)?))
}

/// A Lagrangian direction space presented as constraints
/// `H = [[Y, 0, 1, Aᵀ], [-A, 1, 0, 0]]` on permuted doubled columns:
/// class-0 wires (the first n_p standard positions) keep free positions
/// with momenta determined by Y and A; class-1 wires have positions
/// determined by A. `sigma` maps standard positions to wire indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianForm {
    prime: Prime,
    pub y: Matrix,
    pub a: Matrix,
    pub sigma: Permutation,
}

impl LagrangianForm {
    /// Assembles a form from its blocks: Y square and symmetric, A with
    /// one column per class-0 wire, sigma covering all wires.
    pub fn new(y: Matrix, a: Matrix, sigma: Permutation) -> Result<LagrangianForm> {
        y.prime().expect_same(a.prime())?;
        if y.cols() != y.rows() || y != y.transpose() {
            return Err(Error::dims("Y must be square and symmetric".to_string()));
        }
        if a.cols() != y.rows() {
            return Err(Error::dims("A needs one column per class-0 wire".to_string()));
        }
        if sigma.len() != y.rows() + a.rows() {
            return Err(Error::dims("sigma must cover all wires".to_string()));
        }
        let prime = y.prime();
        Ok(LagrangianForm { prime, y, a, sigma })
    }

    /// The state 0 -> wires() cut out by the assembled constraints;
    /// always Lagrangian.
    pub fn state(&self) -> SymplecticRelation {
        let h = self.assemble_parity();
        let space =
            AffineSubspace::from_parity(&h, &vec![0; h.rows()]).expect("homogeneous system");
        SymplecticRelation::from_stored(0, self.wires(), space).expect("ambient matches")
    }

    pub fn n_p(&self) -> usize {
        self.y.rows()
    }

    pub fn n_q(&self) -> usize {
        self.a.rows()
    }

    pub fn wires(&self) -> usize {
        self.n_p() + self.n_q()
    }

    /// The doubled column permutation moving standard layout to wire
    /// layout.
    pub fn doubled_sigma(&self) -> Permutation {
        let n = self.wires();
        let mut images = Vec::with_capacity(2 * n);
        images.extend(self.sigma.images().iter().copied());
        images.extend(self.sigma.images().iter().map(|&v| n + v));
        Permutation::new(images).expect("doubling preserves bijection")
    }

    /// Reassembles the parity-check matrix of the direction space.
    pub fn assemble_parity(&self) -> Matrix {
        let p = self.prime;
        let (n_p, n_q) = (self.n_p(), self.n_q());
        let top = self
            .y
            .hstack(&Matrix::zeros(n_p, n_q, p))
            .and_then(|m| m.hstack(&Matrix::identity(n_p, p)))
            .and_then(|m| m.hstack(&self.a.transpose()))
            .expect("consistent row counts");
        let bot = self
            .a
            .neg()
            .hstack(&Matrix::identity(n_q, p))
            .and_then(|m| m.hstack(&Matrix::zeros(n_q, n_p, p)))
            .and_then(|m| m.hstack(&Matrix::zeros(n_q, n_q, p)))
            .expect("consistent row counts");
        top.vstack(&bot)
            .expect("same column count")
            .permute_cols(&self.doubled_sigma())
    }
}

// --- text format ----------------------------------------------------------
//
// Same shape as the relation format with tag `sympl`: rows and offset are
// stored coordinates over 2(dom+cod) columns.

impl std::fmt::Display for SymplecticRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sympl p {} dom {} cod {}",
            self.prime(),
            self.dom,
            self.cod
        )?;
        if self.is_empty() {
            return writeln!(f, " empty");
        }
        if !self.is_linear() {
            write!(f, " offset")?;
            for v in self.state.offset() {
                write!(f, " {v}")?;
            }
        }
        writeln!(f)?;
        let b = self.state.basis();
        for r in 0..b.rows() {
            let line: Vec<String> = b.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl SymplecticRelation {
    pub fn parse(text: &str, modulus_override: Option<u64>) -> Result<SymplecticRelation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header_line = lines
            .next()
            .ok_or_else(|| Error::Parse("empty doubled-relation text".into()))?;
        let h = parse_rel_header(header_line, "sympl", 2, modulus_override)?;
        let n = 2 * (h.dom + h.cod);
        if h.empty {
            if lines.next().is_some() {
                return Err(Error::Parse("rows after empty marker".into()));
            }
            return Ok(SymplecticRelation::empty(h.prime, h.dom, h.cod));
        }
        let rows: Vec<Vec<u64>> = lines
            .map(|l| matrix::parse_row(l, n, h.prime))
            .collect::<Result<_>>()?;
        let g = Matrix::from_rows(h.prime, n, rows);
        let offset = h.offset.unwrap_or_else(|| vec![0; n]);
        SymplecticRelation::from_stored(
            h.dom,
            h.cod,
            AffineSubspace::from_generators(g, &offset),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    /// Resistor with conductance y: p1 = p2 = y (q2 - q1), built from
    /// member rows.
    fn resistor(pr: Prime, y: i64) -> SymplecticRelation {
        let rows = Matrix::from_signed(pr, &[vec![1, 0, -y, -y], vec![0, 1, y, y]]);
        SymplecticRelation::from_member_rows(1, 1, rows, &[0, 0, 0, 0]).unwrap()
    }

    #[test]
    fn identity_stored_form() {
        let id = SymplecticRelation::identity(p(5), 1);
        let expected = AffineSubspace::linear(Matrix::from_signed(
            p(5),
            &[vec![1, 1, 0, 0], vec![0, 0, 1, -1]],
        ));
        assert_eq!(id.state(), &expected);
        assert!(id.is_lagrangian());
        assert!(id.contains_member(&[3, 3, 2, 2]));
        assert!(!id.contains_member(&[3, 3, 2, 3]));
    }

    #[test]
    fn symplectic_form_basics() {
        let pr = p(5);
        let j = symplectic_form_matrix(pr, 1);
        assert_eq!(j, Matrix::from_signed(pr, &[vec![0, 1], vec![4, 0]]));
        let j3 = symplectic_form_matrix(pr, 3);
        let neg_id = Matrix::identity(6, pr).neg();
        assert_eq!(j3.matmul(&j3).unwrap(), neg_id);
        assert_eq!(j3.transpose(), j3.neg());
    }

    #[test]
    fn dual_examples() {
        let pr = p(3);
        // The q-axis at one wire is its own dual.
        let q_axis = AffineSubspace::linear(Matrix::from_signed(pr, &[vec![1, 0]]));
        assert_eq!(symplectic_dual(&q_axis).unwrap(), q_axis);
        // Dual of everything is nothing and vice versa.
        let full = AffineSubspace::full(pr, 4);
        let zero = AffineSubspace::linear(Matrix::zeros(0, 4, pr));
        assert_eq!(symplectic_dual(&full).unwrap(), zero);
        assert_eq!(symplectic_dual(&zero).unwrap(), full);
        // Always an involution on F_3^4.
        for rows in 0..=2usize {
            for code in 0..3u64.pow(4 * rows as u32) {
                let mut c = code;
                let mut g = Matrix::zeros(rows, 4, pr);
                for r in 0..rows {
                    for col in 0..4 {
                        g.set(r, col, c % 3);
                        c /= 3;
                    }
                }
                let u = AffineSubspace::linear(g);
                let dd = symplectic_dual(&symplectic_dual(&u).unwrap()).unwrap();
                assert_eq!(dd, u);
                assert_eq!(symplectic_dual(&u).unwrap().dim() + u.dim(), 4);
            }
        }
    }

    #[test]
    fn lagrangian_checks() {
        let pr = p(5);
        assert!(SymplecticRelation::identity(pr, 1).is_lagrangian());
        assert!(resistor(pr, 2).is_lagrangian());
        // The full space has the wrong dimension.
        let full = SymplecticRelation::from_stored(1, 1, AffineSubspace::full(pr, 4)).unwrap();
        assert!(!full.is_lagrangian());
        // A line pinned entirely to positions with mismatched pairing.
        let skew = SymplecticRelation::from_stored(
            0,
            1,
            AffineSubspace::linear(Matrix::from_signed(pr, &[vec![1, 2]])),
        )
        .unwrap();
        assert!(skew.is_lagrangian());
        assert!(!SymplecticRelation::empty(pr, 1, 1).is_lagrangian());
    }

    #[test]
    fn lift_of_identity_and_fanout() {
        let pr = p(3);
        assert_eq!(
            lift(&Relation::identity(pr, 1)).unwrap(),
            SymplecticRelation::identity(pr, 1)
        );
        // Graph of the 2 -> 1 sum map: q' = q1 + q2, momenta copy back.
        let sum = Relation::graph_of(&Matrix::from_signed(pr, &[vec![1], vec![1]]));
        let l = lift(&sum).unwrap();
        assert!(l.is_lagrangian());
        assert!(l.is_lossless());
        for v in l.members() {
            // Member layout: (q1, q2, q', p1, p2, p').
            assert_eq!(v[2], pr.add(v[0], v[1]));
            assert_eq!(v[3], v[5]);
            assert_eq!(v[4], v[5]);
        }
        assert_eq!(l.members().len(), 27);
    }

    #[test]
    fn compose_and_tensor_through_lift() {
        let pr = p(5);
        let a = Matrix::from_signed(pr, &[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_signed(pr, &[vec![3, 0], vec![1, 1]]);
        let la = lift(&Relation::graph_of(&a)).unwrap();
        let lb = lift(&Relation::graph_of(&b)).unwrap();
        let composed = la.compose(&lb).unwrap();
        let direct = lift(&Relation::graph_of(&a.matmul(&b).unwrap())).unwrap();
        assert_eq!(composed, direct);
        assert!(composed.is_lagrangian());
        let t = la.tensor(&lb).unwrap();
        assert_eq!(t.dom(), 4);
        assert!(t.is_lagrangian());
        let block = Matrix::from_fn(4, 4, pr, |r, c| {
            if r < 2 && c < 2 {
                a.get(r, c)
            } else if r >= 2 && c >= 2 {
                b.get(r - 2, c - 2)
            } else {
                0
            }
        });
        assert_eq!(t, lift(&Relation::graph_of(&block)).unwrap());
    }

    #[test]
    fn converse_is_an_involution_and_flips_members() {
        let pr = p(5);
        let r = resistor(pr, 2);
        let c = r.converse();
        assert_eq!(c.converse(), r);
        for v in r.members() {
            // (q1, q2, p1, p2) -> (q2, q1, p2, p1).
            assert!(c.contains_member(&[v[1], v[0], v[3], v[2]]));
        }
        let id2 = SymplecticRelation::identity(pr, 2);
        assert_eq!(id2.converse(), id2);
    }

    #[test]
    fn state_round_trip() {
        let pr = p(5);
        let r = resistor(pr, 3);
        let s = r.to_state();
        assert_eq!(s.dom(), 0);
        assert_eq!(s.cod(), 2);
        assert_eq!(s.state(), r.state());
        assert_eq!(SymplecticRelation::from_state(&s, 1, 1).unwrap(), r);
        assert_eq!(r.is_lagrangian(), s.is_lagrangian());
        // The identity's state members pair opposite currents.
        let id_state = SymplecticRelation::identity(pr, 1).to_state();
        for v in id_state.members() {
            assert_eq!(v[0], v[1]);
            assert_eq!(v[2], pr.neg(v[3]));
        }
    }

    #[test]
    fn wire_permutation_relation() {
        let pr = p(5);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let s = SymplecticRelation::permutation(pr, &swap);
        assert!(s.is_lagrangian());
        assert_eq!(
            s.compose(&s).unwrap(),
            SymplecticRelation::identity(pr, 2)
        );
        assert_eq!(
            SymplecticRelation::permutation(pr, &Permutation::identity(2)),
            SymplecticRelation::identity(pr, 2)
        );
        for v in s.members() {
            // (q1, q2, q3, q4, p1, p2, p3, p4): outputs swap inputs.
            assert_eq!(v[2], v[1]);
            assert_eq!(v[3], v[0]);
            assert_eq!(v[6], v[5]);
            assert_eq!(v[7], v[4]);
        }
    }

    #[test]
    fn power_of_resistor_members() {
        let pr = p(5);
        let r = resistor(pr, 1);
        // q1 = 0, q2 = 1 forces p1 = p2 = 1; power = 0*1 - 1*1 = -1.
        let p_val = r.power_input(&[0, 1, 1, 1]).unwrap();
        assert_eq!(p_val.value(), 4);
        assert_eq!(r.power_input(&[1, 1, 0, 0]).unwrap().value(), 0);
        assert!(matches!(
            r.power_input(&[0, 1, 1, 2]),
            Err(Error::NotAMember)
        ));
        assert!(!r.is_lossless());
        // The open circuit wastes nothing.
        assert!(resistor(pr, 0).is_lossless());
    }

    #[test]
    fn lossless_matches_member_enumeration() {
        let pr = p(3);
        let candidates = vec![
            resistor(pr, 1),
            resistor(pr, 0),
            SymplecticRelation::identity(pr, 1),
            lift(&Relation::graph_of(&Matrix::from_signed(pr, &[vec![1], vec![1]]))).unwrap(),
            SymplecticRelation::from_member_rows(
                1,
                1,
                Matrix::from_signed(pr, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]),
                &[0, 1, 0, 0],
            )
            .unwrap(),
        ];
        for r in candidates {
            let all_zero = r
                .members()
                .iter()
                .all(|v| r.power_input(v).unwrap().value() == 0);
            assert_eq!(r.is_lossless(), all_zero);
        }
    }

    #[test]
    fn standard_form_of_the_identity_wire() {
        let id = SymplecticRelation::identity(p(5), 1);
        let form = id.lagrangian_form().unwrap();
        assert_eq!(form.n_p(), 1);
        assert_eq!(form.n_q(), 1);
        assert_eq!(form.y, Matrix::from_signed(p(5), &[vec![0]]));
        assert_eq!(form.a, Matrix::from_signed(p(5), &[vec![1]]));
        assert_eq!(form.sigma.images(), &[0, 1]);
        let h = form.assemble_parity();
        assert!(h
            .row_space_equal(&id.state().parity_check())
            .unwrap());
    }

    #[test]
    fn standard_form_of_a_pure_admittance_state() {
        let pr = p(7);
        // H = (Y | 1) with the three-conductance mesh values.
        let y = Matrix::from_signed(
            pr,
            &[vec![4, -1, -3], vec![-1, 3, -2], vec![-3, -2, 5]],
        );
        let h = y.hstack(&Matrix::identity(3, pr)).unwrap();
        let state = SymplecticRelation::from_stored(
            0,
            3,
            AffineSubspace::linear(h.kernel_basis()),
        )
        .unwrap();
        assert!(state.is_lagrangian());
        let form = state.lagrangian_form().unwrap();
        assert_eq!(form.n_q(), 0);
        assert_eq!(form.sigma.images(), &[0, 1, 2]);
        assert_eq!(form.y, Matrix::from_signed(pr, &[vec![4, 6, 4], vec![6, 3, 5], vec![4, 5, 5]]));
        assert!(form
            .assemble_parity()
            .row_space_equal(&state.state().parity_check())
            .unwrap());
    }

    #[test]
    fn standard_form_with_alternative_orders() {
        let pr = p(5);
        let r = resistor(pr, 2).to_state();
        let canonical = r.lagrangian_form().unwrap();
        assert_eq!(canonical.n_q(), 0);
        for order in [vec![0usize, 1], vec![1, 0]] {
            let form = r.lagrangian_form_with_order(&order).unwrap();
            assert!(form
                .assemble_parity()
                .row_space_equal(&r.state().parity_check())
                .unwrap());
            assert_eq!(form.y, form.y.transpose());
        }
        assert!(matches!(
            SymplecticRelation::empty(pr, 1, 1).lagrangian_form(),
            Err(Error::NotLagrangian)
        ));
    }

    #[test]
    fn member_map_round_trip() {
        let pr = p(5);
        // (q, p) -> (q, q y + p) with y = 3 on one wire in and out.
        let t = Matrix::from_signed(pr, &[vec![1, 3], vec![0, 1]]);
        let r = SymplecticRelation::from_member_map(1, 1, &t).unwrap();
        for v in r.members() {
            assert_eq!(v[1], v[0]);
            assert_eq!(v[3], pr.add(pr.mul(3, v[0]), v[2]));
        }
        assert!(r.is_lagrangian());
    }

    #[test]
    fn text_round_trips() {
        let pr = p(5);
        let r = resistor(pr, 2);
        let text = r.to_string();
        assert!(Relation::parse(&text, None).is_err());
        assert_eq!(SymplecticRelation::parse(&text, None).unwrap(), r);
        let e = SymplecticRelation::empty(pr, 0, 2);
        assert_eq!(e.to_string(), "sympl p 5 dom 0 cod 2 empty\n");
        assert_eq!(SymplecticRelation::parse(&e.to_string(), None).unwrap(), e);
        // Affine example: the voltage source q2 = q1 + 2, p2 = p1.
        let vs = SymplecticRelation::from_member_rows(
            1,
            1,
            Matrix::from_signed(pr, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]),
            &[0, 2, 0, 0],
        )
        .unwrap();
        assert_eq!(SymplecticRelation::parse(&vs.to_string(), None).unwrap(), vs);
        assert!(vs.to_string().contains("offset"));
    }
}
