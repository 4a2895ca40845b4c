//! Predicates sorting doubled relations into the conservation hierarchy:
//! current conservation, Kirchhoff relations, deterministic relations,
//! and graph states with their canonical admittance matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::relation::matrix_is_quasi_stochastic;
use crate::subspace::AffineSubspace;
use crate::symplectic::SymplecticRelation;

/// Net current into the relation vanishes on every member: the sum of all
/// stored momentum coordinates is zero on the offset and on each basis
/// vector. Vacuously true for the empty relation.
pub fn satisfies_kcl(r: &SymplecticRelation) -> bool {
    if r.is_empty() {
        return true;
    }
    let p = r.prime();
    let n = r.wires();
    let net = |v: &[u64]| (n..2 * n).fold(0, |acc, i| p.add(acc, v[i]));
    if net(r.state().offset()) != 0 {
        return false;
    }
    let b = r.state().basis();
    (0..b.rows()).all(|i| net(&b.row_vec(i)) == 0)
}

/// The member set is unchanged by adding one to every position
/// coordinate (a global potential shift).
pub fn is_translation_invariant(r: &SymplecticRelation) -> bool {
    if r.is_empty() {
        return true;
    }
    let n = r.wires();
    let mut shift = vec![0u64; 2 * n];
    for s in shift.iter_mut().take(n) {
        *s = 1;
    }
    AffineSubspace::linear(r.state().basis().clone()).contains(&shift)
}

/// Lagrangian and current-conserving.
pub fn is_kirchhoff(r: &SymplecticRelation) -> bool {
    r.is_lagrangian() && satisfies_kcl(r)
}

/// Each row of a deterministic coupling matrix selects exactly one
/// class-0 wire with coefficient one.
pub fn matrix_is_deterministic(a: &Matrix) -> bool {
    (0..a.rows()).all(|r| {
        let row = a.row(r);
        row.iter().filter(|&&v| v != 0).count() == 1 && row.iter().all(|&v| v == 0 || v == 1)
    })
}

/// A Kirchhoff relation is deterministic when every class-1 position is a
/// copy of a single class-0 position.
pub fn is_deterministic(r: &SymplecticRelation) -> Result<bool> {
    if !is_kirchhoff(r) {
        return Err(Error::NotKirchhoff);
    }
    Ok(matrix_is_deterministic(&r.lagrangian_form()?.a))
}

/// Groups the wires of a deterministic relation: each class holds one
/// class-0 wire together with the class-1 wires copying its position.
/// Classes are sorted by their smallest wire index.
pub fn position_partition(r: &SymplecticRelation) -> Result<Vec<Vec<usize>>> {
    if !is_deterministic(r)? {
        return Err(Error::NotDeterministic);
    }
    let form = r.lagrangian_form()?;
    let wires = form.sigma.images();
    let (n_p, n_q) = (form.n_p(), form.n_q());
    let mut classes: Vec<Vec<usize>> = (0..n_p).map(|j| vec![wires[j]]).collect();
    for row in 0..n_q {
        let j = (0..n_p).find(|&j| form.a.get(row, j) != 0).expect("deterministic row");
        classes[j].push(wires[n_p + row]);
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    classes.sort_unstable();
    Ok(classes)
}

/// Linear Kirchhoff relation whose positions are all free: the constraint
/// matrix reduces to (Y | 1) for a symmetric admittance Y with zero row
/// sums.
pub fn is_graph_state(r: &SymplecticRelation) -> bool {
    r.is_linear()
        && is_kirchhoff(r)
        && r.lagrangian_form().map(|f| f.n_q() == 0).unwrap_or(false)
}

/// The admittance matrix of a graph state, read off the canonical
/// standard form. Bit-stable: equal states yield equal matrices.
pub fn canonical_admittance(r: &SymplecticRelation) -> Result<Matrix> {
    if !is_graph_state(r) {
        return Err(Error::NotGraphState);
    }
    Ok(r.lagrangian_form()?.y)
}

/// The graph state with constraint p = -q Y. Y must be symmetric with
/// zero row sums.
pub fn state_from_admittance(y: &Matrix) -> Result<SymplecticRelation> {
    let n = y.rows();
    let p = y.prime();
    if y.cols() != n || *y != y.transpose() {
        return Err(Error::InvalidAdmittance);
    }
    for r in 0..n {
        if y.row(r).iter().fold(0, |acc, &v| p.add(acc, v)) != 0 {
            return Err(Error::InvalidAdmittance);
        }
    }
    let basis = Matrix::identity(n, p).hstack(&y.neg())?;
    SymplecticRelation::from_stored(0, n, AffineSubspace::linear(basis))
}

/// Summary of every predicate, with the partition and admittance filled
/// in when they apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kirchhoff: bool,
    pub deterministic: bool,
    pub lossless: bool,
    pub graph_state: bool,
    pub partition: Option<Vec<Vec<usize>>>,
    pub admittance: Option<Matrix>,
}

pub fn classify(r: &SymplecticRelation) -> Classification {
    let kirchhoff = is_kirchhoff(r);
    let deterministic = kirchhoff && is_deterministic(r).unwrap_or(false);
    let graph_state = is_graph_state(r);
    Classification {
        kirchhoff,
        deterministic,
        lossless: r.is_lossless(),
        graph_state,
        partition: if deterministic {
            position_partition(r).ok()
        } else {
            None
        },
        admittance: if graph_state {
            canonical_admittance(r).ok()
        } else {
            None
        },
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "kirchhoff={}", self.kirchhoff)?;
        writeln!(f, "deterministic={}", self.deterministic)?;
        writeln!(f, "lossless={}", self.lossless)?;
        writeln!(f, "graph_state={}", self.graph_state)?;
        if let Some(partition) = &self.partition {
            write!(f, "partition=")?;
            for class in partition {
                let inner: Vec<String> = class.iter().map(|w| w.to_string()).collect();
                write!(f, "{{{}}}", inner.join(","))?;
            }
            writeln!(f)?;
        }
        if let Some(y) = &self.admittance {
            writeln!(f, "admittance:")?;
            write!(f, "{y}")?;
        }
        Ok(())
    }
}

/// Row sums of the coupling matrix are all one and the admittance rows
/// sum to zero; equivalent to the Kirchhoff property for Lagrangian
/// relations.
pub fn form_is_kirchhoff(y: &Matrix, a: &Matrix) -> bool {
    let p = y.prime();
    let zero_row_sums = (0..y.rows())
        .all(|r| y.row(r).iter().fold(0, |acc, &v| p.add(acc, v)) == 0);
    zero_row_sums && matrix_is_quasi_stochastic(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::matrix::Permutation;
    use crate::symplectic::LagrangianForm;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn resistor(pr: Prime, y: i64) -> SymplecticRelation {
        let rows = Matrix::from_signed(pr, &[vec![1, 0, -y, -y], vec![0, 1, y, y]]);
        SymplecticRelation::from_member_rows(1, 1, rows, &[0, 0, 0, 0]).unwrap()
    }

    fn state_from_form(y: Matrix, a: Matrix, sigma: Permutation) -> SymplecticRelation {
        LagrangianForm::new(y, a, sigma).unwrap().state()
    }

    #[test]
    fn current_source_breaks_conservation() {
        let pr = p(5);
        let rows = Matrix::from_signed(
            pr,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]],
        );
        let src = SymplecticRelation::from_member_rows(1, 1, rows.clone(), &[0, 0, 0, 1]).unwrap();
        assert!(!satisfies_kcl(&src));
        assert!(!is_kirchhoff(&src));
        // Zero injected current restores conservation but the state is
        // still too big to be Lagrangian.
        let idle = SymplecticRelation::from_member_rows(1, 1, rows, &[0, 0, 0, 0]).unwrap();
        assert!(satisfies_kcl(&idle));
        assert!(!idle.is_lagrangian());
        assert!(!is_kirchhoff(&idle));
    }

    #[test]
    fn voltage_source_is_kirchhoff_but_lossy() {
        let pr = p(5);
        let rows = Matrix::from_signed(pr, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let vs = SymplecticRelation::from_member_rows(1, 1, rows, &[0, 2, 0, 0]).unwrap();
        let c = classify(&vs);
        assert!(c.kirchhoff);
        assert!(c.deterministic);
        assert!(!c.lossless);
        assert!(!c.graph_state);
        assert_eq!(c.partition, Some(vec![vec![0, 1]]));
        assert_eq!(c.admittance, None);
    }

    #[test]
    fn resistor_is_a_deterministic_graph_state()  {
        let pr = p(5);
        let c = classify(&resistor(pr, 1));
        assert!(c.kirchhoff);
        assert!(c.deterministic);
        assert!(!c.lossless);
        assert!(c.graph_state);
        assert_eq!(c.partition, Some(vec![vec![0], vec![1]]));
        assert_eq!(
            c.admittance,
            Some(Matrix::from_signed(pr, &[vec![1, -1], vec![-1, 1]]))
        );
        // The open circuit is lossless and has zero admittance.
        let open = classify(&resistor(pr, 0));
        assert!(open.lossless);
        assert_eq!(open.admittance, Some(Matrix::zeros(2, 2, pr)));
    }

    #[test]
    fn translation_invariance_matches_conservation_on_lagrangians() {
        let pr = p(3);
        let candidates = vec![
            resistor(pr, 1).to_state(),
            SymplecticRelation::identity(pr, 1).to_state(),
            state_from_form(
                Matrix::from_signed(pr, &[vec![1]]),
                Matrix::from_signed(pr, &[vec![1], vec![2]]),
                Permutation::identity(3),
            ),
            state_from_form(
                Matrix::zeros(1, 1, pr),
                Matrix::from_signed(pr, &[vec![1], vec![1]]),
                Permutation::new(vec![2, 0, 1]).unwrap(),
            ),
        ];
        for r in candidates {
            assert!(r.is_lagrangian());
            assert_eq!(satisfies_kcl(&r), is_translation_invariant(&r));
        }
    }

    #[test]
    fn partition_groups_copied_positions() {
        let pr = p(7);
        let r = state_from_form(
            Matrix::zeros(3, 3, pr),
            Matrix::from_signed(pr, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]),
            Permutation::identity(6),
        );
        assert!(is_kirchhoff(&r));
        assert!(is_deterministic(&r).unwrap());
        assert_eq!(
            position_partition(&r).unwrap(),
            vec![vec![0], vec![1, 3], vec![2, 4, 5]]
        );
        // A weighted copy is Kirchhoff but no longer deterministic.
        let weighted = state_from_form(
            Matrix::zeros(2, 2, pr),
            Matrix::from_signed(pr, &[vec![3, 5]]),
            Permutation::identity(3),
        );
        assert!(is_kirchhoff(&weighted));
        assert!(!is_deterministic(&weighted).unwrap());
        assert!(matches!(
            position_partition(&weighted),
            Err(Error::NotDeterministic)
        ));
    }

    #[test]
    fn admittance_round_trip_and_validation() {
        let pr = p(7);
        let y = Matrix::from_signed(
            pr,
            &[vec![3, -1, -2], vec![-1, 1, 0], vec![-2, 0, 2]],
        );
        let state = state_from_admittance(&y).unwrap();
        assert!(is_graph_state(&state));
        assert_eq!(canonical_admittance(&state).unwrap(), y);
        // Symmetry and zero row sums are both required.
        let asym = Matrix::from_signed(pr, &[vec![0, 1], vec![2, 0]]);
        assert!(matches!(
            state_from_admittance(&asym),
            Err(Error::InvalidAdmittance)
        ));
        let bad_sums = Matrix::from_signed(pr, &[vec![1, 1], vec![1, 1]]);
        assert!(matches!(
            state_from_admittance(&bad_sums),
            Err(Error::InvalidAdmittance)
        ));
        // Nonzero row sums also disqualify a state built directly.
        let h = Matrix::from_signed(pr, &[vec![1, 0, 1, 0], vec![0, 0, 0, 1]]);
        let skew = SymplecticRelation::from_stored(
            0,
            2,
            AffineSubspace::linear(h.kernel_basis()),
        )
        .unwrap();
        assert!(skew.is_lagrangian());
        assert!(!is_graph_state(&skew));
        assert!(matches!(
            canonical_admittance(&skew),
            Err(Error::NotGraphState)
        ));
    }

    #[test]
    fn form_condition_matches_predicates() {
        let pr = p(5);
        let cases = vec![
            (Matrix::from_signed(pr, &[vec![1, -1], vec![-1, 1]]), Matrix::zeros(0, 2, pr)),
            (Matrix::zeros(1, 1, pr), Matrix::from_signed(pr, &[vec![1], vec![1]])),
            (Matrix::from_signed(pr, &[vec![1]]), Matrix::zeros(0, 1, pr)),
            (Matrix::zeros(1, 1, pr), Matrix::from_signed(pr, &[vec![3]])),
        ];
        for (y, a) in cases {
            let sigma = Permutation::identity(y.rows() + a.rows());
            let r = state_from_form(y.clone(), a.clone(), sigma);
            assert_eq!(is_kirchhoff(&r), form_is_kirchhoff(&y, &a));
        }
    }

    #[test]
    fn empty_relation_reports_honestly() {
        let pr = p(5);
        let e = SymplecticRelation::empty(pr, 1, 1);
        assert!(satisfies_kcl(&e));
        assert!(is_translation_invariant(&e));
        let c = classify(&e);
        assert!(!c.kirchhoff);
        assert!(!c.deterministic);
        assert!(c.lossless);
        assert!(!c.graph_state);
        assert!(matches!(is_deterministic(&e), Err(Error::NotKirchhoff)));
    }

    #[test]
    fn classification_display() {
        let pr = p(5);
        let text = classify(&resistor(pr, 1)).to_string();
        assert!(text.contains("kirchhoff=true"));
        assert!(text.contains("deterministic=true"));
        assert!(text.contains("lossless=false"));
        assert!(text.contains("graph_state=true"));
        assert!(text.contains("partition={0}{1}"));
        assert!(text.contains("admittance:\np 5 2 2\n1 4\n4 1"));
    }
}
