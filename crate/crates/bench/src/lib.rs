//! Fixtures shared by the benchmarks.

use mild_core::mildness::{raag_bipartite_check, HomogeneousPoly, RaagVerdict};
use mild_core::presentation::raag_presentation;
use mild_core::{FpMatrix, Graph, GroupElement, Prime, Presentation};

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// RAAG presentation of the n-cycle.
pub fn cycle_presentation(n: usize, p: u64) -> Presentation {
    raag_presentation(&Graph::cycle(n).unwrap(), prime(p)).unwrap()
}

/// A long element: the product of nested commutators `[[x_i, x_{i+1}], x_{i+2}]`.
pub fn long_element(d: usize) -> GroupElement {
    let x = GroupElement::generator;
    (0..d).fold(GroupElement::identity(), |acc, i| {
        let inner = GroupElement::commutator(&x(i), &x((i + 1) % d));
        acc.mul(&GroupElement::commutator(&inner, &x((i + 2) % d)))
    })
}

/// A dense pseudo-random matrix; a fixed LCG keeps runs comparable.
pub fn dense_matrix(p: u64, rows: usize, cols: usize) -> FpMatrix {
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                    ((state >> 33) % p) as i64
                })
                .collect()
        })
        .collect();
    FpMatrix::from_rows(prime(p), &data).unwrap()
}

/// Initial forms certified for the even n-cycle.
pub fn cycle_forms(n: usize) -> Vec<HomogeneousPoly> {
    match raag_bipartite_check(&Graph::cycle(n).unwrap(), prime(2)).unwrap() {
        RaagVerdict::MildCertified { certificate, .. } => certificate.initial_forms,
        RaagVerdict::Inapplicable { .. } => panic!("odd cycle"),
    }
}
