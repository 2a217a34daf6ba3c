//! The resolution side: cohomology of the minimal resolution over one singular
//! point, with exceptional curves indexed by nontrivial irreducible characters.

use crate::algebra::{Element, GradedAlgebra, POINT_LABEL, UNIT_LABEL};
use crate::chartab::McKayGraph;
use crate::cyclo::CycNum;
use crate::dynkin::Adjacency;
use crate::error::{Error, Result};

pub fn curve_label(rho: usize) -> String {
    format!("E_{rho}")
}

/// Build the local ring from the adjacency of the finite diagram. `vertices`
/// gives the irrep index of each row of `adjacency` and is used for labels.
pub fn resolution_algebra_from_adjacency(
    name: impl Into<String>,
    vertices: &[usize],
    adjacency: &Adjacency,
) -> Result<GradedAlgebra> {
    let k = vertices.len();
    let mut basis = vec![(UNIT_LABEL.to_string(), 0u8)];
    basis.extend(vertices.iter().map(|&v| (curve_label(v), 1u8)));
    basis.push((POINT_LABEL.to_string(), 2));
    let mut algebra = GradedAlgebra::new(name, basis);
    let point = k + 1;
    let single = |i: usize, c: i64| -> Element {
        if c == 0 {
            Element::new()
        } else {
            Element::from([(i, CycNum::from_int(c))])
        }
    };
    for i in 0..algebra.dim() {
        algebra.set_product(0, i, single(i, 1));
    }
    for a in 0..k {
        for b in a..k {
            let coefficient = if a == b {
                -2
            } else {
                let m = adjacency[a][b];
                if !(0..=1).contains(&m) {
                    return Err(Error::AdjacencyTooLarge {
                        a: vertices[a],
                        b: vertices[b],
                        mult: m,
                    });
                }
                m
            };
            algebra.set_product(a + 1, b + 1, single(point, coefficient));
        }
    }
    Ok(algebra)
}

/// `E_ρ · E_ρ = −2[pt]`, `E_ρ · E_σ = a_{ρσ}[pt]`, degree 2 kills degree ≥ 1.
pub fn local_resolution_algebra(graph: &McKayGraph) -> Result<GradedAlgebra> {
    let vertices: Vec<usize> = (0..graph.dims.len())
        .filter(|&v| v != graph.trivial_vertex)
        .collect();
    resolution_algebra_from_adjacency(
        format!("resolution({})", graph.finite_label()),
        &vertices,
        &graph.finite_adjacency(),
    )
}
