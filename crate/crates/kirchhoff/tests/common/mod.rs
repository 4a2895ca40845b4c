//! Corpus builders and brute-force oracles shared by the integration
//! suites. Oracles work by full enumeration through the public API so
//! they stay independent of the library's elimination pipelines.

use std::collections::HashSet;

use kirchhoff::{
    AffineSubspace, LagrangianForm, Matrix, Permutation, Prime, Relation, SymplecticRelation,
};
use rand::rngs::StdRng;
use rand::Rng;

pub fn p(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

/// Every two-dimensional linear subspace of F_3^4, presented as a state
/// on two wires. There are exactly 130.
pub fn all_plane_states_f3() -> Vec<SymplecticRelation> {
    let pr = p(3);
    let vecs: Vec<Vec<u64>> = (0..81u32)
        .map(|k| {
            let mut k = k;
            let mut v = vec![0u64; 4];
            for slot in v.iter_mut() {
                *slot = (k % 3) as u64;
                k /= 3;
            }
            v
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in &vecs {
        for b in &vecs {
            let space = AffineSubspace::from_generators(
                Matrix::from_rows(pr, 4, vec![a.clone(), b.clone()]),
                &[0, 0, 0, 0],
            );
            if space.dim() != 2 || !seen.insert(space.clone()) {
                continue;
            }
            out.push(SymplecticRelation::from_stored(0, 2, space).unwrap());
        }
    }
    assert_eq!(out.len(), 130);
    out
}

pub fn random_matrix(rows: usize, cols: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    let data: Vec<Vec<u64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..pr.value())).collect())
        .collect();
    Matrix::from_rows(pr, cols, data)
}

pub fn random_symmetric(n: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    let mut y = Matrix::zeros(n, n, pr);
    for i in 0..n {
        y.set(i, i, rng.gen_range(0..pr.value()));
        for j in i + 1..n {
            let v = rng.gen_range(0..pr.value());
            y.set(i, j, v);
            y.set(j, i, v);
        }
    }
    y
}

/// Symmetric with zero row sums: the diagonal soaks up the off-diagonal
/// sums.
pub fn random_admittance(n: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    let mut y = random_symmetric(n, pr, rng);
    for i in 0..n {
        let off = (0..n)
            .filter(|&j| j != i)
            .fold(0, |acc, j| pr.add(acc, y.get(i, j)));
        y.set(i, i, pr.neg(off));
    }
    y
}

pub fn random_permutation(n: usize, rng: &mut StdRng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(images).unwrap()
}

/// Random Lagrangian state on `wires` wires: a uniformly messy standard
/// form (symmetric block, arbitrary dependency block, shuffled wires)
/// reassembled into a state.
pub fn random_lagrangian_state(wires: usize, pr: Prime, rng: &mut StdRng) -> SymplecticRelation {
    let n_p = rng.gen_range(0..=wires);
    let n_q = wires - n_p;
    let y = random_symmetric(n_p, pr, rng);
    let a = random_matrix(n_q, n_p, pr, rng);
    let sigma = random_permutation(wires, rng);
    LagrangianForm::new(y, a, sigma).unwrap().state()
}

/// Random conservative state: zero-row-sum symmetric block and a
/// dependency block whose rows sum to 1.
pub fn random_kirchhoff_state(
    n_p: usize,
    n_q: usize,
    pr: Prime,
    rng: &mut StdRng,
) -> SymplecticRelation {
    assert!(n_p >= 1 || n_q == 0);
    let y = random_admittance(n_p, pr, rng);
    let a = random_quasi_stochastic(n_q, n_p, pr, rng);
    let sigma = random_permutation(n_p + n_q, rng);
    LagrangianForm::new(y, a, sigma).unwrap().state()
}

pub fn random_quasi_stochastic(rows: usize, cols: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    assert!(cols >= 1 || rows == 0);
    let mut a = Matrix::zeros(rows, cols, pr);
    for r in 0..rows {
        let mut sum = 0u64;
        for j in 0..cols - 1 {
            let v = rng.gen_range(0..pr.value());
            a.set(r, j, v);
            sum = pr.add(sum, v);
        }
        a.set(r, cols - 1, pr.sub(1, sum));
    }
    a
}

/// One nonzero entry per row, equal to 1.
pub fn random_deterministic(rows: usize, cols: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    assert!(cols >= 1 || rows == 0);
    let mut a = Matrix::zeros(rows, cols, pr);
    for r in 0..rows {
        a.set(r, rng.gen_range(0..cols), 1);
    }
    a
}

/// Random affine or linear relation with `k` generators drawn uniformly.
pub fn random_relation(
    dom: usize,
    cod: usize,
    pr: Prime,
    affine: bool,
    rng: &mut StdRng,
) -> Relation {
    let ambient = dom + cod;
    let k = rng.gen_range(0..=ambient);
    let rows = random_matrix(k, ambient, pr, rng);
    let offset: Vec<u64> = if affine {
        (0..ambient).map(|_| rng.gen_range(0..pr.value())).collect()
    } else {
        vec![0; ambient]
    };
    Relation::from_subspace(dom, cod, AffineSubspace::from_generators(rows, &offset)).unwrap()
}

/// Relational composition by full member enumeration: join on the
/// middle boundary, sorted and deduplicated.
pub fn brute_compose(r1: &Relation, r2: &Relation) -> Vec<Vec<u64>> {
    let a = r1.dom();
    let b = r1.cod();
    assert_eq!(b, r2.dom());
    let mut out: Vec<Vec<u64>> = Vec::new();
    for m1 in r1.members() {
        for m2 in r2.members() {
            if m1[a..] == m2[..b] {
                let mut v = m1[..a].to_vec();
                v.extend_from_slice(&m2[b..]);
                out.push(v);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn sorted_members(r: &Relation) -> Vec<Vec<u64>> {
    let mut m = r.members();
    m.sort();
    m
}

/// Random invertible matrix by rejection.
pub fn random_invertible(n: usize, pr: Prime, rng: &mut StdRng) -> Matrix {
    loop {
        let t = random_matrix(n, n, pr, rng);
        if t.rank() == n {
            return t;
        }
    }
}
