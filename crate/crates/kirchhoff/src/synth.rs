//! Synthesis of netlists from states: the inverse direction of
//! `Netlist::eval`. Graph states become resistor meshes, linear
//! conservative states add current-divider trees for the dependent
//! positions, and affine ones add sources on the boundary wires.

use crate::circuit::{build_mesh, GeneratorKind, MeshSpec, Netlist, NetlistBuilder, PortRef};
use crate::classify::is_kirchhoff;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::matrix::Matrix;
use crate::subspace::AffineSubspace;
use crate::symplectic::SymplecticRelation;

/// Resistor mesh whose evaluation is the graph state of `y`: one node
/// per wire, edge conductances read off the negated off-diagonal.
pub fn synth_graph_state(y: &Matrix) -> Result<Netlist> {
    Ok(MeshSpec::from_admittance(y)?.netlist())
}

/// Netlist of resistors, spiders and current dividers whose evaluation
/// is the given linear conservative state. Positions in the standard
/// form's first class each get a junction; the mesh realizes the
/// admittance block, and each dependent position hangs a divider tree
/// off the junctions its row touches.
pub fn synth_kirchhoff(s: &SymplecticRelation) -> Result<Netlist> {
    if s.dom() != 0 {
        return Err(Error::dims(format!(
            "synthesis needs a state with no inputs, got {} inputs",
            s.dom()
        )));
    }
    if !s.is_linear() {
        return Err(Error::AffineInput);
    }
    if !is_kirchhoff(s) {
        return Err(Error::NotKirchhoff);
    }
    let form = s.lagrangian_form()?;
    let p = form.y.prime();
    let n = form.wires();
    let n_p = form.n_p();
    let images = form.sigma.images();
    let class0 = &images[..n_p];
    let class1 = &images[n_p..];
    // Conservation makes Y a mesh admittance and every row of A sum to 1.
    let mesh = MeshSpec::from_admittance(&form.y)?;
    let branches: Vec<Vec<(usize, u64)>> = (0..form.n_q())
        .map(|r| {
            (0..n_p)
                .filter(|&j| form.a.get(r, j) != 0)
                .map(|j| (j, form.a.get(r, j)))
                .collect()
        })
        .collect();
    let mut extra_legs = vec![0usize; n_p];
    for &(i, j) in mesh.conductances().keys() {
        extra_legs[i] += 1;
        extra_legs[j] += 1;
    }
    for row in &branches {
        for &(j, _) in row {
            extra_legs[j] += 1;
        }
    }
    let mut b = NetlistBuilder::new(p);
    let mut junctions = build_mesh(&mut b, &extra_legs, mesh.conductances());
    let mut bout: Vec<Option<PortRef>> = vec![None; n];
    for (j, junction) in junctions.iter().enumerate() {
        bout[class0[j]] = Some(junction.boundary_leg());
    }
    // Mesh legs were consumed by build_mesh; the remaining legs feed the
    // divider trees.
    for (r, row) in branches.iter().enumerate() {
        let root = divider_tree(&mut b, &mut junctions, row, p)?;
        bout[class1[r]] = Some(root);
    }
    for port in bout {
        b.output(port.expect("every wire sits in exactly one class"));
    }
    b.finish()
}

/// Combines weighted branch ports into one port carrying their weighted
/// mean position and splitting its current by weight. Pairs are merged
/// greedily at the first spot where the combined weight is invertible;
/// one always exists because the weights are nonzero and sum to 1.
fn divider_tree(
    b: &mut NetlistBuilder,
    junctions: &mut [crate::circuit::JunctionLegs],
    row: &[(usize, u64)],
    p: Prime,
) -> Result<PortRef> {
    let mut items: Vec<(PortRef, u64)> = row
        .iter()
        .map(|&(j, w)| (junctions[j].take_leg(), w))
        .collect();
    while items.len() > 1 {
        let (a, bidx) = first_invertible_pair(&items, p)?;
        let (pa, wa) = items[a];
        let (pb, wb) = items.remove(bidx);
        let wsum = p.add(wa, wb);
        let d = b.add(GeneratorKind::DividerIn(p.mul(wb, p.inv(wsum)?)));
        b.wire(pa, PortRef::new(d, 0));
        b.wire(pb, PortRef::new(d, 1));
        items[a] = (PortRef::new(d, 2), wsum);
    }
    Ok(items[0].0)
}

fn first_invertible_pair(items: &[(PortRef, u64)], p: Prime) -> Result<(usize, usize)> {
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if p.add(items[i].1, items[j].1) != 0 {
                return Ok((i, j));
            }
        }
    }
    // With two items the weights sum to 1; with more, pairwise-zero sums
    // would force every weight to vanish.
    Err(Error::NotKirchhoff)
}

/// Synthesis for affine conservative states: the linear part goes
/// through `synth_kirchhoff`, then each boundary wire picks up a series
/// voltage source for its position offset and a tapped current source
/// for its momentum offset.
pub fn synth_affine(s: &SymplecticRelation) -> Result<Netlist> {
    if s.dom() != 0 {
        return Err(Error::dims(format!(
            "synthesis needs a state with no inputs, got {} inputs",
            s.dom()
        )));
    }
    if !is_kirchhoff(s) {
        return Err(Error::NotKirchhoff);
    }
    let p = s.prime();
    let n = s.cod();
    let member = s.member_space();
    let offset = member.offset().to_vec();
    let direction =
        SymplecticRelation::from_member_space(0, n, AffineSubspace::from_generators(
            member.basis().clone(),
            &vec![0; 2 * n],
        ))?;
    let linear_net = synth_kirchhoff(&direction)?;
    let mut b = NetlistBuilder::new(p);
    for kind in linear_net.generators() {
        b.add(*kind);
    }
    for &(x, y) in linear_net.wires() {
        b.wire(x, y);
    }
    for (w, &port) in linear_net.outputs().iter().enumerate() {
        let mut prev = port;
        let v = offset[w];
        let i = offset[n + w];
        if v != 0 {
            let vs = b.add(GeneratorKind::VoltageSource(v));
            b.wire(prev, PortRef::new(vs, 0));
            prev = PortRef::new(vs, 1);
        }
        if i != 0 {
            // A series current source would free the positions; instead a
            // tap drains -I into a pinned branch, which raises the
            // through current by I.
            let tap = b.add(GeneratorKind::Comonoid);
            let src = b.add(GeneratorKind::CurrentSource(i));
            let pin = b.add(GeneratorKind::Counit);
            b.wire(prev, PortRef::new(tap, 0));
            b.wire(PortRef::new(tap, 2), PortRef::new(src, 0));
            b.wire(PortRef::new(src, 1), PortRef::new(pin, 0));
            prev = PortRef::new(tap, 1);
        }
        b.output(prev);
    }
    b.finish()
}
