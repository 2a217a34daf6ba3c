//! Finite-dimensional graded commutative algebras given by structure constants
//! on a labelled basis, with degrees 0, 1 and 2.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::linalg::CycMatrix;

/// Sparse vector in basis coordinates.
pub type Element = BTreeMap<usize, CycNum>;

pub const UNIT_LABEL: &str = "1";
pub const POINT_LABEL: &str = "[pt]";

/// Which algebra axiom failed, and on which basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    name: String,
    labels: Vec<String>,
    degrees: Vec<u8>,
    /// `products[i * dim + j]` is `b_i · b_j`.
    products: Vec<Element>,
}

pub(crate) fn add_scaled(acc: &mut Element, x: &Element, s: &CycNum) {
    for (&k, v) in x {
        let term = v * s;
        let slot = acc.entry(k).or_default();
        *slot = &*slot + &term;
        if slot.is_zero() {
            acc.remove(&k);
        }
    }
}

impl GradedAlgebra {
    /// Empty multiplication on the given basis; fill it with [`Self::set_product`].
    pub fn new(name: impl Into<String>, basis: Vec<(String, u8)>) -> Self {
        let dim = basis.len();
        let (labels, degrees) = basis.into_iter().unzip();
        GradedAlgebra {
            name: name.into(),
            labels,
            degrees,
            products: vec![Element::new(); dim * dim],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.degrees[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_of_degree(&self, d: u8) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn unit(&self) -> usize {
        self.index_of(UNIT_LABEL).expect("algebra has a unit label")
    }

    pub fn point(&self) -> usize {
        self.index_of(POINT_LABEL).expect("algebra has a point label")
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::from([(i, CycNum::one())])
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.products[i * self.dim() + j]
    }

    /// Set `b_i · b_j` and `b_j · b_i`.
    pub fn set_product(&mut self, i: usize, j: usize, value: Element) {
        let dim = self.dim();
        let value: Element = value.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.products[j * dim + i] = value.clone();
        self.products[i * dim + j] = value;
    }

    /// Set only `b_i · b_j`.
    pub fn set_product_one_sided(&mut self, i: usize, j: usize, value: Element) {
        let dim = self.dim();
        self.products[i * dim + j] = value.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::new();
        for (&i, x) in a {
            for (&j, y) in b {
                let p = self.product(i, j);
                if !p.is_empty() {
                    add_scaled(&mut out, p, &(x * y));
                }
            }
        }
        out
    }

    /// Multiply a vector by a basis element on the right.
    fn mul_basis_right(&self, a: &Element, k: usize) -> Element {
        let mut out = Element::new();
        for (&w, x) in a {
            let p = self.product(w, k);
            if !p.is_empty() {
                add_scaled(&mut out, p, x);
            }
        }
        out
    }

    pub fn check_unital(&self) -> std::result::Result<(), AxiomViolation> {
        let u = self.unit();
        for i in 0..self.dim() {
            let e = self.basis_element(i);
            if *self.product(u, i) != e || *self.product(i, u) != e {
                return Err(self.violation("unit", &[u, i]));
            }
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> std::result::Result<(), AxiomViolation> {
        for i in 0..self.dim() {
            for j in 0..i {
                if self.product(i, j) != self.product(j, i) {
                    return Err(self.violation("commutativity", &[i, j]));
                }
            }
        }
        Ok(())
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` over all basis triples.
    pub fn check_associative(&self) -> std::result::Result<(), AxiomViolation> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let left = self.product(i, j);
                for k in 0..dim {
                    let lhs = self.mul_basis_right(left, k);
                    let jk = self.product(j, k);
                    let mut rhs = Element::new();
                    for (&w, x) in jk {
                        let p = self.product(i, w);
                        if !p.is_empty() {
                            add_scaled(&mut rhs, p, x);
                        }
                    }
                    if lhs != rhs {
                        return Err(self.violation("associativity", &[i, j, k]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Products of degrees `d₁, d₂` lie in degree `d₁ + d₂` (and vanish above 2).
    pub fn check_graded(&self) -> std::result::Result<(), AxiomViolation> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let target = self.degrees[i] + self.degrees[j];
                if self.product(i, j).keys().any(|&k| self.degrees[k] != target) {
                    return Err(self.violation("grading", &[i, j]));
                }
            }
        }
        Ok(())
    }

    /// Unit, commutativity, grading and associativity, in that order.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        self.check_unital()?;
        self.check_commutative()?;
        self.check_graded()?;
        self.check_associative()
    }

    fn violation(&self, axiom: &'static str, idx: &[usize]) -> AxiomViolation {
        AxiomViolation {
            axiom,
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Coefficient of `[pt]` in `b_i · b_j`, over the degree-1 basis.
    pub fn gram_matrix(&self) -> CycMatrix {
        let pt = self.point();
        let deg1 = self.basis_of_degree(1);
        CycMatrix::from_fn(deg1.len(), deg1.len(), |r, c| {
            self.product(deg1[r], deg1[c])
                .get(&pt)
                .cloned()
                .unwrap_or_default()
        })
    }

    pub fn element_to_json(&self, e: &Element) -> Value {
        let map: BTreeMap<&str, &CycNum> = e.iter().map(|(&k, v)| (self.label(k), v)).collect();
        serde_json::to_value(map).expect("serializable element")
    }

    /// `label -> label -> label -> coefficient` for all nonzero products; rational
    /// coefficients are rendered as `"p/q"` strings.
    pub fn structure_constants_json(&self) -> Value {
        let mut outer = serde_json::Map::new();
        for i in 0..self.dim() {
            let mut middle = serde_json::Map::new();
            for j in 0..self.dim() {
                let p = self.product(i, j);
                if p.is_empty() {
                    continue;
                }
                let inner: serde_json::Map<String, Value> = p
                    .iter()
                    .map(|(&k, v)| {
                        let value = match v.to_rational() {
                            Some(q) => Value::String(q.to_string()),
                            None => serde_json::to_value(v).expect("serializable"),
                        };
                        (self.labels[k].clone(), value)
                    })
                    .collect();
                middle.insert(self.labels[j].clone(), Value::Object(inner));
            }
            outer.insert(self.labels[i].clone(), Value::Object(middle));
        }
        json!({
            "algebra": self.name,
            "basis": self.labels.iter().zip(&self.degrees)
                .map(|(l, d)| json!({"label": l, "degree": d}))
                .collect::<Vec<_>>(),
            "products": outer,
        })
    }
}

/// The subalgebra of invariants under a group acting by permutations of the basis.
///
/// `action[h][i]` is the image of basis index `i` under the `h`-th group element.
/// The invariant basis is one orbit sum per orbit, ordered by smallest member;
/// `name_orbit` labels an orbit (singleton orbits keep their label when it
/// returns `None`).
pub fn invariant_subalgebra(
    algebra: &GradedAlgebra,
    action: &[Vec<usize>],
    name: impl Into<String>,
    mut name_orbit: impl FnMut(&[usize]) -> Option<String>,
) -> Result<(GradedAlgebra, Vec<Vec<usize>>)> {
    let dim = algebra.dim();
    let mut orbit_of = vec![usize::MAX; dim];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..dim {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = action.iter().map(|perm| perm[i]).collect();
        members.push(i);
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if orbit_of[m] != usize::MAX {
                return Err(Error::Inconsistent("basis action does not form orbits".into()));
            }
            orbit_of[m] = orbits.len();
        }
        if members.iter().any(|&m| algebra.degree(m) != algebra.degree(i)) {
            return Err(Error::Inconsistent("group action does not preserve degree".into()));
        }
        orbits.push(members);
    }
    let basis = orbits
        .iter()
        .map(|o| {
            let label = name_orbit(o).unwrap_or_else(|| algebra.label(o[0]).to_string());
            (label, algebra.degree(o[0]))
        })
        .collect();
    let mut inv = GradedAlgebra::new(name, basis);
    let sums: Vec<Element> = orbits
        .iter()
        .map(|o| o.iter().map(|&m| (m, CycNum::one())).collect())
        .collect();
    for a in 0..orbits.len() {
        for b in a..orbits.len() {
            let full = algebra.mul(&sums[a], &sums[b]);
            let mut value = Element::new();
            for (&k, coef) in &full {
                let o = orbit_of[k];
                if orbits[o].iter().any(|m| full.get(m) != Some(coef)) {
                    return Err(Error::Inconsistent(format!(
                        "product of invariants {} · {} is not invariant",
                        inv.label(a),
                        inv.label(b)
                    )));
                }
                value.insert(o, coef.clone());
            }
            inv.set_product(a, b, value);
        }
    }
    Ok((inv, orbits))
}
