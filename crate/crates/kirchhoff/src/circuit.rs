//! Electrical generators and netlists. A netlist wires generator
//! instances (spiders, resistors, current dividers, sources, structural
//! wires) port to port and exposes an ordered boundary; evaluation
//! assembles every generator's member constraints over per-port
//! variables, glues wired ports, and projects the solution set onto the
//! boundary. The semantics is relational, so cyclic wiring is fine.

use std::collections::BTreeMap;

use crate::classify::{classify, Classification};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::{self, Matrix, Permutation};
use crate::subspace::AffineSubspace;
use crate::symplectic::SymplecticRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// 0 -> 1 spider: q free, p = 0.
    Unit,
    /// 1 -> 0 spider: q free, p = 0.
    Counit,
    /// 2 -> 1 spider: equal positions, momenta add.
    Monoid,
    /// 1 -> 2 spider: equal positions, momentum splits.
    Comonoid,
    /// Conductance y: p1 = p2 = y (q2 - q1). y = 0 is the open circuit.
    Resistor(u64),
    /// 2 -> 1 current divider: q3 = (1-w) q1 + w q2, p1 = (1-w) p3,
    /// p2 = w p3. Requires w outside {0, 1}.
    DividerIn(u64),
    /// 1 -> 2 divider, the converse of `DividerIn(w)`.
    DividerOut(u64),
    /// q2 = q1 + V, p2 = p1.
    VoltageSource(u64),
    /// p2 = p1 + I with both positions free.
    CurrentSource(u64),
    /// 2 -> 0 bend: q1 = q2, p1 + p2 = 0.
    Cup,
    /// 0 -> 2 bend: q1 = q2, p1 + p2 = 0.
    Cap,
    Id,
    Swap,
}

impl GeneratorKind {
    pub fn arity(&self) -> (usize, usize) {
        match self {
            GeneratorKind::Unit => (0, 1),
            GeneratorKind::Counit => (1, 0),
            GeneratorKind::Monoid => (2, 1),
            GeneratorKind::Comonoid => (1, 2),
            GeneratorKind::Resistor(_) => (1, 1),
            GeneratorKind::DividerIn(_) => (2, 1),
            GeneratorKind::DividerOut(_) => (1, 2),
            GeneratorKind::VoltageSource(_) => (1, 1),
            GeneratorKind::CurrentSource(_) => (1, 1),
            GeneratorKind::Cup => (2, 0),
            GeneratorKind::Cap => (0, 2),
            GeneratorKind::Id => (1, 1),
            GeneratorKind::Swap => (2, 2),
        }
    }

    pub fn ports(&self) -> usize {
        let (m, n) = self.arity();
        m + n
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Unit => "unit",
            GeneratorKind::Counit => "counit",
            GeneratorKind::Monoid => "monoid",
            GeneratorKind::Comonoid => "comonoid",
            GeneratorKind::Resistor(_) => "resistor",
            GeneratorKind::DividerIn(_) => "divider_in",
            GeneratorKind::DividerOut(_) => "divider_out",
            GeneratorKind::VoltageSource(_) => "vsource",
            GeneratorKind::CurrentSource(_) => "isource",
            GeneratorKind::Cup => "cup",
            GeneratorKind::Cap => "cap",
            GeneratorKind::Id => "id",
            GeneratorKind::Swap => "swap",
        }
    }

    pub fn param(&self) -> Option<u64> {
        match *self {
            GeneratorKind::Resistor(v)
            | GeneratorKind::DividerIn(v)
            | GeneratorKind::DividerOut(v)
            | GeneratorKind::VoltageSource(v)
            | GeneratorKind::CurrentSource(v) => Some(v),
            _ => None,
        }
    }

    /// Same kind with the parameter reduced mod p.
    fn reduced(&self, p: Prime) -> GeneratorKind {
        match *self {
            GeneratorKind::Resistor(v) => GeneratorKind::Resistor(p.reduce(v)),
            GeneratorKind::DividerIn(v) => GeneratorKind::DividerIn(p.reduce(v)),
            GeneratorKind::DividerOut(v) => GeneratorKind::DividerOut(p.reduce(v)),
            GeneratorKind::VoltageSource(v) => GeneratorKind::VoltageSource(p.reduce(v)),
            GeneratorKind::CurrentSource(v) => GeneratorKind::CurrentSource(p.reduce(v)),
            other => other,
        }
    }

    fn from_parts(name: &str, param: Option<u64>) -> Result<GeneratorKind> {
        let needs_param = matches!(
            name,
            "resistor" | "divider_in" | "divider_out" | "vsource" | "isource"
        );
        if needs_param != param.is_some() {
            return Err(Error::Parse(format!(
                "generator {name} {} a parameter",
                if needs_param { "needs" } else { "does not take" }
            )));
        }
        Ok(match (name, param) {
            ("unit", _) => GeneratorKind::Unit,
            ("counit", _) => GeneratorKind::Counit,
            ("monoid", _) => GeneratorKind::Monoid,
            ("comonoid", _) => GeneratorKind::Comonoid,
            ("resistor", Some(v)) => GeneratorKind::Resistor(v),
            ("divider_in", Some(v)) => GeneratorKind::DividerIn(v),
            ("divider_out", Some(v)) => GeneratorKind::DividerOut(v),
            ("vsource", Some(v)) => GeneratorKind::VoltageSource(v),
            ("isource", Some(v)) => GeneratorKind::CurrentSource(v),
            ("cup", _) => GeneratorKind::Cup,
            ("cap", _) => GeneratorKind::Cap,
            ("id", _) => GeneratorKind::Id,
            ("swap", _) => GeneratorKind::Swap,
            _ => return Err(Error::Parse(format!("unknown generator kind {name:?}"))),
        })
    }
}

/// The defining relation of one generator.
pub fn generator_relation(kind: &GeneratorKind, prime: Prime) -> Result<SymplecticRelation> {
    let p = prime;
    let rows = |dom: usize, cod: usize, data: &[Vec<i64>]| -> Result<SymplecticRelation> {
        SymplecticRelation::from_member_rows(
            dom,
            cod,
            Matrix::from_signed(p, data),
            &vec![0; 2 * (dom + cod)],
        )
    };
    match kind.reduced(p) {
        GeneratorKind::Unit => rows(0, 1, &[vec![1, 0]]),
        GeneratorKind::Counit => rows(1, 0, &[vec![1, 0]]),
        GeneratorKind::Monoid => rows(
            2,
            1,
            &[
                vec![1, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 1],
                vec![0, 0, 0, 0, 1, 1],
            ],
        ),
        GeneratorKind::Comonoid => rows(
            1,
            2,
            &[
                vec![1, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 1, 0],
                vec![0, 0, 0, 1, 0, 1],
            ],
        ),
        GeneratorKind::Resistor(y) => {
            let y = y as i64;
            rows(1, 1, &[vec![1, 0, -y, -y], vec![0, 1, y, y]])
        }
        GeneratorKind::DividerIn(w) => {
            if w == 0 || w == 1 {
                return Err(Error::InvalidDividerWeight);
            }
            let w = w as i64;
            rows(
                2,
                1,
                &[
                    vec![1, 0, 1 - w, 0, 0, 0],
                    vec![0, 1, w, 0, 0, 0],
                    vec![0, 0, 0, 1 - w, w, 1],
                ],
            )
        }
        GeneratorKind::DividerOut(w) => {
            Ok(generator_relation(&GeneratorKind::DividerIn(w), p)?.converse())
        }
        GeneratorKind::VoltageSource(v) => SymplecticRelation::from_member_rows(
            1,
            1,
            Matrix::from_signed(p, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]),
            &[0, v, 0, 0],
        ),
        GeneratorKind::CurrentSource(i) => SymplecticRelation::from_member_rows(
            1,
            1,
            Matrix::from_signed(
                p,
                &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]],
            ),
            &[0, 0, 0, i],
        ),
        GeneratorKind::Cup => rows(2, 0, &[vec![1, 1, 0, 0], vec![0, 0, 1, -1]]),
        GeneratorKind::Cap => rows(0, 2, &[vec![1, 1, 0, 0], vec![0, 0, 1, -1]]),
        GeneratorKind::Id => Ok(SymplecticRelation::identity(p, 1)),
        GeneratorKind::Swap => Ok(SymplecticRelation::permutation(
            p,
            &Permutation::new(vec![1, 0]).expect("swap is a bijection"),
        )),
    }
}

/// The divider relation together with its classification; the weight must
/// avoid {0, 1}.
pub fn divider_relation_check(
    prime: Prime,
    w: u64,
) -> Result<(SymplecticRelation, Classification)> {
    let r = generator_relation(&GeneratorKind::DividerIn(w), prime)?;
    let c = classify(&r);
    Ok((r, c))
}

/// The relation on n doubled wires that leaves positions alone and adds
/// y (q_i - q_j) to wire i's momentum and y (q_j - q_i) to wire j's: the
/// effect of a resistor bridged across through-wires i and j.
pub fn horizontal_resistor(
    prime: Prime,
    y: u64,
    i: usize,
    j: usize,
    n: usize,
) -> Result<SymplecticRelation> {
    if i == j || i >= n || j >= n {
        return Err(Error::dims(format!(
            "horizontal resistor needs two distinct wires below {n}, got {i} and {j}"
        )));
    }
    let yv = prime.reduce(y);
    let t = Matrix::from_fn(2 * n, 2 * n, prime, |r, c| {
        if r == c {
            1
        } else if r < n && c >= n {
            let b = c - n;
            if (r, b) == (i, i) || (r, b) == (j, j) {
                yv
            } else if (r, b) == (i, j) || (r, b) == (j, i) {
                prime.neg(yv)
            } else {
                0
            }
        } else {
            0
        }
    });
    SymplecticRelation::from_member_map(n, n, &t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub gen: usize,
    pub port: usize,
}

impl PortRef {
    pub fn new(gen: usize, port: usize) -> PortRef {
        PortRef { gen, port }
    }
}

impl std::fmt::Display for PortRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g{}.{}", self.gen, self.port)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    prime: Prime,
    gens: Vec<GeneratorKind>,
    wires: Vec<(PortRef, PortRef)>,
    inputs: Vec<PortRef>,
    outputs: Vec<PortRef>,
}

pub struct NetlistBuilder {
    net: Netlist,
}

impl NetlistBuilder {
    pub fn new(prime: Prime) -> NetlistBuilder {
        NetlistBuilder {
            net: Netlist {
                prime,
                gens: Vec::new(),
                wires: Vec::new(),
                inputs: Vec::new(),
                outputs: Vec::new(),
            },
        }
    }

    /// Adds a generator instance and returns its id.
    pub fn add(&mut self, kind: GeneratorKind) -> usize {
        self.net.gens.push(kind.reduced(self.net.prime));
        self.net.gens.len() - 1
    }

    pub fn wire(&mut self, a: PortRef, b: PortRef) {
        self.net.wires.push((a, b));
    }

    pub fn input(&mut self, p: PortRef) {
        self.net.inputs.push(p);
    }

    pub fn output(&mut self, p: PortRef) {
        self.net.outputs.push(p);
    }

    /// A junction spider: one generator tree with `legs` open ports, all
    /// sharing a position, leg currents summing to zero.
    pub fn junction(&mut self, legs: usize) -> Vec<PortRef> {
        assert!(legs >= 1, "a junction needs at least one leg");
        let unit = self.add(GeneratorKind::Unit);
        let mut free = PortRef::new(unit, 0);
        let mut out = Vec::with_capacity(legs);
        for _ in 1..legs {
            let c = self.add(GeneratorKind::Comonoid);
            self.wire(free, PortRef::new(c, 0));
            out.push(PortRef::new(c, 1));
            free = PortRef::new(c, 2);
        }
        out.push(free);
        out
    }

    pub fn finish(self) -> Result<Netlist> {
        self.net.validate()?;
        Ok(self.net)
    }
}

impl Netlist {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> &[GeneratorKind] {
        &self.gens
    }

    pub fn wires(&self) -> &[(PortRef, PortRef)] {
        &self.wires
    }

    pub fn inputs(&self) -> &[PortRef] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[PortRef] {
        &self.outputs
    }

    fn port_exists(&self, p: PortRef) -> bool {
        p.gen < self.gens.len() && p.port < self.gens[p.gen].ports()
    }

    /// Whether the port is on the output side of its generator.
    fn is_out_port(&self, p: PortRef) -> bool {
        p.port >= self.gens[p.gen].arity().0
    }

    /// Every generator port must be used exactly once, by a wire end or
    /// one boundary slot; divider weights must be invertible.
    pub fn validate(&self) -> Result<()> {
        for kind in &self.gens {
            if let GeneratorKind::DividerIn(w) | GeneratorKind::DividerOut(w) = kind.reduced(self.prime) {
                if w == 0 || w == 1 {
                    return Err(Error::InvalidDividerWeight);
                }
            }
        }
        let mut usage: BTreeMap<PortRef, usize> = BTreeMap::new();
        let ends = self
            .wires
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.inputs.iter().copied())
            .chain(self.outputs.iter().copied());
        for p in ends {
            if !self.port_exists(p) {
                return Err(Error::Netlist(format!("unknown port {p}")));
            }
            *usage.entry(p).or_insert(0) += 1;
        }
        for (gid, kind) in self.gens.iter().enumerate() {
            for port in 0..kind.ports() {
                let p = PortRef::new(gid, port);
                match usage.get(&p).copied().unwrap_or(0) {
                    0 => return Err(Error::Netlist(format!("dangling port {p}"))),
                    1 => {}
                    _ => return Err(Error::Netlist(format!("port {p} used more than once"))),
                }
            }
        }
        Ok(())
    }

    /// Solves the assembled constraint system and projects onto the
    /// boundary. An over-constrained netlist gives the empty relation.
    pub fn eval(&self) -> Result<SymplecticRelation> {
        self.validate()?;
        let p = self.prime;
        let mut port_base = Vec::with_capacity(self.gens.len());
        let mut total = 0usize;
        for kind in &self.gens {
            port_base.push(total);
            total += kind.ports();
        }
        let vars = 2 * total;
        let pid = |pr: PortRef| port_base[pr.gen] + pr.port;
        let mut h_rows: Vec<Vec<u64>> = Vec::new();
        let mut rhs: Vec<u64> = Vec::new();
        for (gid, kind) in self.gens.iter().enumerate() {
            let rel = generator_relation(kind, p)?;
            let (hg, cg) = rel.member_space().constraints();
            let ports = kind.ports();
            for (r, &c) in cg.iter().enumerate() {
                let mut row = vec![0u64; vars];
                for k in 0..2 * ports {
                    let v = hg.get(r, k);
                    if v != 0 {
                        let port = port_base[gid] + k % ports;
                        let col = if k < ports { port } else { total + port };
                        row[col] = v;
                    }
                }
                h_rows.push(row);
                rhs.push(c);
            }
        }
        for &(a, b) in &self.wires {
            // Positions agree; currents match head to tail, so two ports
            // of the same kind see opposite signs.
            let mut qrow = vec![0u64; vars];
            qrow[pid(a)] = 1;
            qrow[pid(b)] = p.add(qrow[pid(b)], p.neg(1));
            h_rows.push(qrow);
            rhs.push(0);
            let sign = if self.is_out_port(a) == self.is_out_port(b) {
                1
            } else {
                p.neg(1)
            };
            let mut prow = vec![0u64; vars];
            prow[total + pid(a)] = 1;
            prow[total + pid(b)] = p.add(prow[total + pid(b)], sign);
            h_rows.push(prow);
            rhs.push(0);
        }
        let h = Matrix::from_rows(p, vars, h_rows);
        let sol = AffineSubspace::from_parity(&h, &rhs)?;
        let (nin, nout) = (self.inputs.len(), self.outputs.len());
        let nglob = nin + nout;
        let mut t = Matrix::zeros(vars, 2 * nglob, p);
        let mut place = |pr: PortRef, wire: usize, outward: bool| {
            t.set(pid(pr), wire, 1);
            // Boundary currents are oriented into the netlist on input
            // wires and out of it on output wires; a port of the other
            // kind contributes with a flipped sign.
            let sign = if self.is_out_port(pr) == outward {
                1
            } else {
                p.neg(1)
            };
            t.set(total + pid(pr), nglob + wire, sign);
        };
        for (i, &pr) in self.inputs.iter().enumerate() {
            place(pr, i, false);
        }
        for (j, &pr) in self.outputs.iter().enumerate() {
            place(pr, nin + j, true);
        }
        let member = sol.transform(&t)?;
        SymplecticRelation::from_member_space(nin, nout, member)
    }
}

/// A weighted graph of conductances: nodes joined by resistors, one
/// boundary wire per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshSpec {
    nodes: usize,
    prime: Prime,
    conductances: BTreeMap<(usize, usize), u64>,
}

impl MeshSpec {
    pub fn new(nodes: usize, prime: Prime) -> MeshSpec {
        MeshSpec {
            nodes,
            prime,
            conductances: BTreeMap::new(),
        }
    }

    /// Sets the conductance between two distinct nodes; zero removes the
    /// edge.
    pub fn with_edge(mut self, i: usize, j: usize, y: u64) -> Result<MeshSpec> {
        if i == j || i >= self.nodes || j >= self.nodes {
            return Err(Error::dims(format!(
                "mesh edge needs two distinct nodes below {}, got {i} and {j}",
                self.nodes
            )));
        }
        let key = (i.min(j), i.max(j));
        let y = self.prime.reduce(y);
        if y == 0 {
            self.conductances.remove(&key);
        } else {
            self.conductances.insert(key, y);
        }
        Ok(self)
    }

    /// Mesh matching an admittance matrix: edge conductances are the
    /// negated off-diagonal entries. Y must be symmetric with zero row
    /// sums.
    pub fn from_admittance(y: &Matrix) -> Result<MeshSpec> {
        crate::classify::state_from_admittance(y)?;
        let n = y.rows();
        let mut mesh = MeshSpec::new(n, y.prime());
        for i in 0..n {
            for j in i + 1..n {
                mesh = mesh.with_edge(i, j, y.prime().neg(y.get(i, j)))?;
            }
        }
        Ok(mesh)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn conductances(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.conductances
    }

    /// Off-diagonal entries are negated conductances; the diagonal makes
    /// the row sums vanish.
    pub fn admittance(&self) -> Matrix {
        let p = self.prime;
        let mut y = Matrix::zeros(self.nodes, self.nodes, p);
        for (&(i, j), &c) in &self.conductances {
            y.set(i, j, p.neg(c));
            y.set(j, i, p.neg(c));
            y.set(i, i, p.add(y.get(i, i), c));
            y.set(j, j, p.add(y.get(j, j), c));
        }
        y
    }

    /// One junction per node (boundary leg first), one resistor per
    /// edge.
    pub fn netlist(&self) -> Netlist {
        let degrees: Vec<usize> = (0..self.nodes)
            .map(|v| {
                self.conductances
                    .keys()
                    .filter(|&&(i, j)| i == v || j == v)
                    .count()
            })
            .collect();
        let mut b = NetlistBuilder::new(self.prime);
        let junctions = build_mesh(&mut b, &degrees, &self.conductances);
        for node in &junctions {
            b.output(node.boundary_leg());
        }
        b.finish().expect("mesh wiring is closed")
    }
}

/// Junction legs not yet claimed: leg 0 is reserved for the boundary,
/// the rest hand out in order.
pub(crate) struct JunctionLegs {
    legs: Vec<PortRef>,
    next: usize,
}

impl JunctionLegs {
    pub(crate) fn boundary_leg(&self) -> PortRef {
        self.legs[0]
    }

    pub(crate) fn take_leg(&mut self) -> PortRef {
        let leg = self.legs[self.next];
        self.next += 1;
        leg
    }
}

/// Builds junctions sized by `extra_legs[v]`, then wires one resistor
/// per conductance entry. Leg 0 of each junction stays free for the
/// boundary; unclaimed legs beyond the mesh are for the caller.
pub(crate) fn build_mesh(
    b: &mut NetlistBuilder,
    extra_legs: &[usize],
    conductances: &BTreeMap<(usize, usize), u64>,
) -> Vec<JunctionLegs> {
    let mut junctions: Vec<JunctionLegs> = extra_legs
        .iter()
        .map(|&extra| JunctionLegs {
            legs: b.junction(1 + extra),
            next: 1,
        })
        .collect();
    for (&(i, j), &y) in conductances {
        let r = b.add(GeneratorKind::Resistor(y));
        let leg_i = junctions[i].take_leg();
        let leg_j = junctions[j].take_leg();
        b.wire(leg_i, PortRef::new(r, 0));
        b.wire(PortRef::new(r, 1), leg_j);
    }
    junctions
}

// --- text format ----------------------------------------------------------

impl std::fmt::Display for Netlist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "netlist p {}", self.prime)?;
        for (gid, kind) in self.gens.iter().enumerate() {
            match kind.param() {
                Some(v) => writeln!(f, "g{gid} {} {v}", kind.name())?,
                None => writeln!(f, "g{gid} {}", kind.name())?,
            }
        }
        for &(a, b) in &self.wires {
            writeln!(f, "w {a} {b}")?;
        }
        for &p in &self.inputs {
            writeln!(f, "in {p}")?;
        }
        for &p in &self.outputs {
            writeln!(f, "out {p}")?;
        }
        Ok(())
    }
}

fn parse_port(tok: &str) -> Result<PortRef> {
    let rest = tok
        .strip_prefix('g')
        .ok_or_else(|| Error::Parse(format!("bad port reference {tok:?}")))?;
    let (gen, port) = rest
        .split_once('.')
        .ok_or_else(|| Error::Parse(format!("bad port reference {tok:?}")))?;
    Ok(PortRef::new(
        matrix::parse_usize(gen)?,
        matrix::parse_usize(port)?,
    ))
}

impl Netlist {
    /// Parses the line format written by `Display`. Structure is not
    /// validated here; `eval` checks port usage.
    pub fn parse(text: &str, modulus_override: Option<u64>) -> Result<Netlist> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty netlist text".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "netlist" || toks[1] != "p" {
            return Err(Error::Parse(format!("bad netlist header {header:?}")));
        }
        let stated = matrix::parse_i64(toks[2])?;
        if stated < 0 {
            return Err(Error::Parse("negative modulus".into()));
        }
        let prime = Prime::new(modulus_override.unwrap_or(stated as u64))?;
        let mut net = Netlist {
            prime,
            gens: Vec::new(),
            wires: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        };
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                t if t.starts_with('g') => {
                    if toks.len() < 2 || toks.len() > 3 {
                        return Err(Error::Parse(format!("bad generator line {line:?}")));
                    }
                    let id = matrix::parse_usize(&t[1..])?;
                    if id != net.gens.len() {
                        return Err(Error::Parse(format!(
                            "generator ids must be sequential, got {t}"
                        )));
                    }
                    let param = match toks.get(2) {
                        Some(v) => Some(prime.reduce_i64(matrix::parse_i64(v)?)),
                        None => None,
                    };
                    net.gens
                        .push(GeneratorKind::from_parts(toks[1], param)?.reduced(prime));
                }
                "w" => {
                    if toks.len() != 3 {
                        return Err(Error::Parse(format!("bad wire line {line:?}")));
                    }
                    net.wires.push((parse_port(toks[1])?, parse_port(toks[2])?));
                }
                "in" | "out" => {
                    if toks.len() != 2 {
                        return Err(Error::Parse(format!("bad boundary line {line:?}")));
                    }
                    let p = parse_port(toks[1])?;
                    if toks[0] == "in" {
                        net.inputs.push(p);
                    } else {
                        net.outputs.push(p);
                    }
                }
                _ => return Err(Error::Parse(format!("bad netlist line {line:?}"))),
            }
        }
        Ok(net)
    }
}
