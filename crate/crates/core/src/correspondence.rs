//! The correspondence matrix between the resolution ring and the invariant
//! orbifold ring over one singular point, and its exact verification.
//!
//! All checks use the scaled map `Ψ = √|G| · Φ`, whose entries
//! `s(g) · χ_ρ(g)` lie in `ℚ(ζ_{2e})`. The unscaled `Φ` is only built on request.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::ade::AdeLabel;
use crate::algebra::{add_scaled, Element, GradedAlgebra};
use crate::chartab::{character_table, mckay_graph, CharacterTable, McKayGraph};
use crate::cyclo::{integer_sqrt_embed, CycNum};
use crate::error::{Error, Result};
use crate::groups::{build_binary_polyhedral, conjugacy_structure, ConjugacyStructure, FiniteGroup};
use crate::linalg::{complex_mul, CycMatrix};
use crate::orbifold::{class_label, invariant_orbifold_algebra, local_orbifold_algebra, sector_label};
use crate::resolution::{curve_label, local_resolution_algebra};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// `ζ_{2r}^k − ζ_{2r}^{−k}` where `trace = ζ_r^k + ζ_r^{−k}`, `0 < k ≤ r/2`.
pub fn branch_sqrt_from_trace(trace: &CycNum, order: u32) -> Result<CycNum> {
    if order <= 1 {
        return Err(Error::Inconsistent(
            "the branch square root is undefined at the identity".into(),
        ));
    }
    let k = (1..=order / 2)
        .find(|&k| {
            let k = i64::from(k);
            CycNum::zeta(order, k) + CycNum::zeta(order, -k) == *trace
        })
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "trace {trace} is not ζ^k + ζ^-k for a root of unity of order {order}"
            ))
        })?;
    let k = i64::from(k);
    Ok(CycNum::zeta(2 * order, k) - CycNum::zeta(2 * order, -k))
}

/// The branch `s(g)` of `√(χ_ρ₀(g) − 2)` on a nonidentity class.
pub fn branch_sqrt(table: &CharacterTable, class: usize) -> Result<CycNum> {
    let natural = table.natural_character.as_ref().ok_or(Error::NoMatrixRep)?;
    if class == 0 {
        return Err(Error::Inconsistent(
            "the branch square root is undefined at the identity class".into(),
        ));
    }
    branch_sqrt_from_trace(&natural[class], table.class_orders[class])
}

/// Determinant of the character table with the trivial row and identity column removed.
pub fn char_minor_determinant(table: &CharacterTable) -> CycNum {
    let minor = table.minor();
    if minor.is_empty() {
        return CycNum::one();
    }
    CycMatrix::from_rows(minor).det()
}

/// `√q` for a positive rational, exact in `ℚ` when possible.
fn sqrt_rational(q: &BigRational) -> CycNum {
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return CycNum::from_rational(&BigRational::new(rn, rd));
    }
    let product = (n * d).to_u64().expect("square root argument fits in u64");
    integer_sqrt_embed(product).scale(&BigRational::new(BigInt::one(), d.clone()))
}

/// `Ψ` on the degree-1 blocks, rows indexed by nonidentity classes and columns
/// by nontrivial irreps.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceMap {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: CycMatrix,
    /// `Ψ = √scale · Φ`.
    pub scale: u64,
    pub branch: Vec<CycNum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_unscaled: Option<CycMatrix>,
}

impl CorrespondenceMap {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Fill in `Φ = Ψ / √|G|`.
    pub fn materialize_unscaled(&mut self) -> Result<&CycMatrix> {
        let root = integer_sqrt_embed(self.scale).inv()?;
        Ok(self.exact_unscaled.insert(self.matrix.scale(&root)))
    }
}

/// `M_{[g],ρ} = s(g) · χ_ρ(g)` for nonidentity classes and nontrivial irreps.
pub fn phi_local(table: &CharacterTable) -> Result<CorrespondenceMap> {
    let k = table.num_classes();
    let branch = (1..k)
        .map(|c| branch_sqrt(table, c))
        .collect::<Result<Vec<_>>>()?;
    let matrix = CycMatrix::from_fn(k - 1, k - 1, |c, rho| &branch[c] * &table.rows[rho + 1][c + 1]);
    Ok(CorrespondenceMap {
        row_labels: (1..k).map(class_label).collect(),
        col_labels: (1..k).map(curve_label).collect(),
        matrix,
        scale: table.order as u64,
        branch,
        exact_unscaled: None,
    })
}

/// Values attached to a failing identity, keyed by basis label or entry name.
pub type Values = BTreeMap<String, CycNum>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub expected: Values,
    pub actual: Values,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: true,
            witness: None,
            detail: None,
        }
    }

    pub fn failed(name: &str, witness: Option<Witness>, detail: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: false,
            witness,
            detail,
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// Floating-point re-evaluation of the exact identities.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub identities: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
    /// Per-check wall time in milliseconds.
    pub timings_ms: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            pass: true,
            checks: Vec::new(),
            diagnostic: None,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// Run `f`, record its wall time under `name`, and push its result.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> CheckResult) {
        let watch = Stopwatch::start();
        let check = f();
        self.timings_ms.insert(name.to_string(), watch.elapsed_ms());
        self.push(check);
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Wall-clock timer that reads zero where no clock is available.
pub struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub fn elapsed_ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64() * 1e3
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}

fn labelled(algebra: &GradedAlgebra, e: &Element) -> Values {
    e.iter()
        .map(|(&k, v)| (algebra.label(k).to_string(), v.clone()))
        .collect()
}

/// Check `Ψ(u)Ψ(v) = Σ_w c^w_{uv} √(n_u n_v / n_w) Ψ(w)` for every pair of
/// source basis elements, where `Ψ(b) = √n_b · Φ(b)`. This is exactly
/// multiplicativity of `Φ`.
pub fn check_multiplicativity(
    source: &GradedAlgebra,
    target: &GradedAlgebra,
    images: &[Element],
    norms: &[u64],
) -> CheckResult {
    let name = "multiplicativity";
    for u in 0..source.dim() {
        for v in u..source.dim() {
            let actual = target.mul(&images[u], &images[v]);
            let mut expected = Element::new();
            for (&w, c) in source.product(u, v) {
                let ratio = BigRational::new(
                    BigInt::from(norms[u]) * BigInt::from(norms[v]),
                    BigInt::from(norms[w]),
                );
                add_scaled(&mut expected, &images[w], &(c * &sqrt_rational(&ratio)));
            }
            if actual != expected {
                return CheckResult::failed(
                    name,
                    Some(Witness {
                        left: source.label(u).to_string(),
                        right: source.label(v).to_string(),
                        expected: labelled(target, &expected),
                        actual: labelled(target, &actual),
                    }),
                    None,
                );
            }
        }
    }
    CheckResult::passed(name)
}

/// Everything needed to verify the correspondence over one singular point.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub label: Option<AdeLabel>,
    pub group: FiniteGroup,
    pub conj: ConjugacyStructure,
    pub table: CharacterTable,
    pub graph: McKayGraph,
    pub resolution: GradedAlgebra,
    /// Orbifold algebra before taking invariants.
    pub orbifold_full: GradedAlgebra,
    pub orbifold: GradedAlgebra,
    pub map: CorrespondenceMap,
}

impl LocalModel {
    pub fn build(group: FiniteGroup, seed: u64) -> Result<Self> {
        let conj = conjugacy_structure(&group);
        let table = character_table(&group, &conj, seed)?;
        let graph = mckay_graph(&table)?;
        let resolution = local_resolution_algebra(&graph)?;
        let orbifold_full = local_orbifold_algebra(&group)?;
        let orbifold = invariant_orbifold_algebra(&group, &conj, &orbifold_full)?;
        let map = phi_local(&table)?;
        Ok(LocalModel {
            label: None,
            group,
            conj,
            table,
            graph,
            resolution,
            orbifold_full,
            orbifold,
            map,
        })
    }

    pub fn from_label(label: AdeLabel, seed: u64) -> Result<Self> {
        let mut model = Self::build(build_binary_polyhedral(label)?, seed)?;
        model.label = Some(label);
        Ok(model)
    }

    pub fn name(&self) -> String {
        self.label
            .map_or_else(|| self.group.name().to_string(), |l| l.to_string())
    }

    /// Recompute the invariant orbifold algebra after editing `orbifold_full`.
    pub fn retake_invariants(&mut self) -> Result<()> {
        self.orbifold = invariant_orbifold_algebra(&self.group, &self.conj, &self.orbifold_full)?;
        Ok(())
    }

    /// Replace `e_x · e_{x⁻¹} = [pt]` by `coefficient · [pt]` for every conjugate
    /// `x` of `g` (a single constant when `g` is central), then retake invariants.
    pub fn tamper_orbifold(&mut self, g: usize, coefficient: i64) -> Result<()> {
        let pt = self.orbifold_full.point();
        let class = self.conj.class_of[g];
        for &x in &self.conj.classes[class] {
            let (i, j) = (x, self.group.inv(x));
            debug_assert_eq!(self.orbifold_full.label(i), sector_label(x));
            self.orbifold_full
                .set_product(i, j, Element::from([(pt, CycNum::from_int(coefficient))]));
        }
        self.retake_invariants()
    }

    /// Replace `E_a · E_b` by `coefficient · [pt]` in the resolution algebra.
    pub fn tamper_resolution(&mut self, a: usize, b: usize, coefficient: i64) -> Result<()> {
        let pt = self.resolution.point();
        let index = |r| {
            self.resolution
                .index_of(&curve_label(r))
                .ok_or_else(|| Error::Inconsistent(format!("no exceptional curve for irrep {r}")))
        };
        let (i, j) = (index(a)?, index(b)?);
        self.resolution
            .set_product(i, j, Element::from([(pt, CycNum::from_int(coefficient))]));
        Ok(())
    }

    /// Images `Ψ(b)` of the resolution basis in invariant orbifold coordinates,
    /// with the per-element norm `n_b` (`Ψ(b) = √n_b · Φ(b)`).
    pub fn images(&self) -> Result<(Vec<Element>, Vec<u64>)> {
        let res = &self.resolution;
        let orb = &self.orbifold;
        let rows: Vec<usize> = self
            .map
            .row_labels
            .iter()
            .map(|l| {
                orb.index_of(l)
                    .ok_or_else(|| Error::Inconsistent(format!("orbifold basis lacks {l}")))
            })
            .collect::<Result<_>>()?;
        let mut images = Vec::with_capacity(res.dim());
        let mut norms = Vec::with_capacity(res.dim());
        for b in 0..res.dim() {
            let label = res.label(b);
            if b == res.unit() {
                images.push(orb.basis_element(orb.unit()));
                norms.push(1);
            } else if b == res.point() {
                images.push(orb.basis_element(orb.point()));
                norms.push(1);
            } else {
                let col = self
                    .map
                    .col_labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::Inconsistent(format!("Ψ has no column {label}")))?;
                let image: Element = rows
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| !self.map.matrix[(*r, col)].is_zero())
                    .map(|(r, &i)| (i, self.map.matrix[(r, col)].clone()))
                    .collect();
                images.push(image);
                norms.push(self.map.scale);
            }
        }
        Ok((images, norms))
    }

    fn check_axioms(&self) -> CheckResult {
        let name = "algebra-axioms";
        for algebra in [&self.resolution, &self.orbifold_full, &self.orbifold] {
            if let Err(v) = algebra.check_axioms() {
                return CheckResult::failed(
                    name,
                    None,
                    Some(format!("{}: {} fails on {:?}", algebra.name(), v.axiom, v.labels)),
                );
            }
        }
        CheckResult::passed(name)
    }

    fn check_multiplicativity(&self) -> CheckResult {
        match self.images() {
            Ok((images, norms)) => {
                check_multiplicativity(&self.resolution, &self.orbifold, &images, &norms)
            }
            Err(e) => CheckResult::failed("multiplicativity", None, Some(e.to_string())),
        }
    }

    fn check_additive(&self) -> CheckResult {
        let name = "additive-rank";
        let m = &self.map.matrix;
        let expected = self.conj.len() - 1;
        let res_dim = self.resolution.basis_of_degree(1).len();
        let orb_dim = self.orbifold.basis_of_degree(1).len();
        if !m.is_square() || m.rows() != expected || res_dim != expected || orb_dim != expected {
            return CheckResult::failed(
                name,
                None,
                Some(format!(
                    "block sizes {}x{}, resolution {res_dim}, orbifold {orb_dim}, classes − 1 = {expected}",
                    m.rows(),
                    m.cols()
                )),
            );
        }
        let det = m.det();
        let rank = m.rank();
        if det.is_zero() || rank != expected {
            return CheckResult::failed(
                name,
                Some(Witness {
                    left: "det".into(),
                    right: "M".into(),
                    expected: Values::new(),
                    actual: Values::from([("det".to_string(), det)]),
                }),
                Some(format!("rank {rank} of {expected}")),
            );
        }
        CheckResult::passed(name).with_detail(format!("rank {rank}"))
    }

    /// `Mᵀ P M = |G| · (−C)`, compared through the labels of both bases.
    fn check_isometry(&self) -> CheckResult {
        let name = "isometry";
        let (lhs, rhs) = match self.isometry_sides() {
            Ok(sides) => sides,
            Err(e) => return CheckResult::failed(name, None, Some(e.to_string())),
        };
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                if lhs[(r, c)] != rhs[(r, c)] {
                    let key = format!("{}·{}", self.map.col_labels[r], self.map.col_labels[c]);
                    return CheckResult::failed(
                        name,
                        Some(Witness {
                            left: self.map.col_labels[r].clone(),
                            right: self.map.col_labels[c].clone(),
                            expected: Values::from([(key.clone(), rhs[(r, c)].clone())]),
                            actual: Values::from([(key, lhs[(r, c)].clone())]),
                        }),
                        None,
                    );
                }
            }
        }
        CheckResult::passed(name)
    }

    /// `(Mᵀ P M, |G| · gram(resolution))` in the column order of `M`.
    fn isometry_sides(&self) -> Result<(CycMatrix, CycMatrix)> {
        let orb_deg1 = self.orbifold.basis_of_degree(1);
        let res_deg1 = self.resolution.basis_of_degree(1);
        let position = |deg1: &[usize], algebra: &GradedAlgebra, label: &str| {
            deg1.iter()
                .position(|&i| algebra.label(i) == label)
                .ok_or_else(|| Error::Inconsistent(format!("degree-1 basis lacks {label}")))
        };
        let row_pos = self
            .map
            .row_labels
            .iter()
            .map(|l| position(&orb_deg1, &self.orbifold, l))
            .collect::<Result<Vec<_>>>()?;
        let col_pos = self
            .map
            .col_labels
            .iter()
            .map(|l| position(&res_deg1, &self.resolution, l))
            .collect::<Result<Vec<_>>>()?;
        let p_full = self.orbifold.gram_matrix();
        let c_full = self.resolution.gram_matrix();
        let p = CycMatrix::from_fn(row_pos.len(), row_pos.len(), |a, b| {
            p_full[(row_pos[a], row_pos[b])].clone()
        });
        let scale = CycNum::from_int(self.map.scale as i64);
        let rhs = CycMatrix::from_fn(col_pos.len(), col_pos.len(), |a, b| {
            &c_full[(col_pos[a], col_pos[b])] * &scale
        });
        let m = &self.map.matrix;
        Ok((m.transpose().mul(&p).mul(m), rhs))
    }

    /// Entries recomputed per element from its own matrix, compared across
    /// every conjugate and against the class row of `M`.
    fn check_equivariance(&self) -> CheckResult {
        let name = "equivariance";
        let Some(mats) = self.group.matrices() else {
            return CheckResult::failed(name, None, Some(Error::NoMatrixRep.to_string()));
        };
        let n = self.group.order();
        let k = self.conj.len();
        let mut entries: Vec<Vec<CycNum>> = vec![Vec::new(); n];
        for x in 1..n {
            let s = match branch_sqrt_from_trace(&mats[x].trace(), self.group.element_order(x)) {
                Ok(s) => s,
                Err(e) => return CheckResult::failed(name, None, Some(e.to_string())),
            };
            let class = self.conj.class_of[x];
            entries[x] = (1..k).map(|rho| &s * &self.table.rows[rho][class]).collect();
            if let Some(rho) = (0..k - 1).find(|&rho| entries[x][rho] != self.map.matrix[(class - 1, rho)]) {
                let key = format!("Ψ[{}, {}]", sector_label(x), self.map.col_labels[rho]);
                return CheckResult::failed(
                    name,
                    Some(Witness {
                        left: sector_label(x),
                        right: self.map.row_labels[class - 1].clone(),
                        expected: Values::from([(key.clone(), self.map.matrix[(class - 1, rho)].clone())]),
                        actual: Values::from([(key, entries[x][rho].clone())]),
                    }),
                    None,
                );
            }
        }
        for h in 0..n {
            for x in 1..n {
                let y = self.group.conjugate(h, x);
                if let Some(rho) = (0..k - 1).find(|&rho| entries[y][rho] != entries[x][rho]) {
                    let col = &self.map.col_labels[rho];
                    return CheckResult::failed(
                        name,
                        Some(Witness {
                            left: sector_label(x),
                            right: sector_label(y),
                            expected: Values::from([(format!("Ψ[{}, {col}]", sector_label(x)), entries[x][rho].clone())]),
                            actual: Values::from([(format!("Ψ[{}, {col}]", sector_label(y)), entries[y][rho].clone())]),
                        }),
                        Some(format!("conjugating element {h}")),
                    );
                }
            }
        }
        CheckResult::passed(name)
    }

    fn check_minor(&self) -> CheckResult {
        let det = char_minor_determinant(&self.table);
        if det.is_zero() {
            CheckResult::failed("minor-determinant", None, Some("character minor is singular".into()))
        } else {
            CheckResult::passed("minor-determinant").with_detail(format!("det = {det}"))
        }
    }

    fn float_diagnostic(&self) -> Diagnostic {
        let mut identities = 0;
        let mut max_error: f64 = 0.0;
        let mut record = |a: Complex64, b: Complex64| {
            identities += 1;
            max_error = max_error.max((a - b).norm());
        };
        // branch squares
        if let Some(natural) = &self.table.natural_character {
            for (c, s) in self.map.branch.iter().enumerate() {
                let s = s.to_complex();
                record(s * s, natural[c + 1].to_complex() - 2.0);
            }
        }
        // isometry
        if let Ok((_, rhs)) = self.isometry_sides() {
            let m = self.map.matrix.to_complex();
            let mt = self.map.matrix.transpose().to_complex();
            let orb_deg1 = self.orbifold.basis_of_degree(1);
            let p_full = self.orbifold.gram_matrix();
            let row_pos: Vec<usize> = self
                .map
                .row_labels
                .iter()
                .filter_map(|l| orb_deg1.iter().position(|&i| self.orbifold.label(i) == l))
                .collect();
            if row_pos.len() == m.len() {
                let p = CycMatrix::from_fn(row_pos.len(), row_pos.len(), |a, b| {
                    p_full[(row_pos[a], row_pos[b])].clone()
                })
                .to_complex();
                let lhs = complex_mul(&complex_mul(&mt, &p), &m);
                let rhs = rhs.to_complex();
                for (lr, rr) in lhs.iter().zip(&rhs) {
                    for (a, b) in lr.iter().zip(rr) {
                        record(*a, *b);
                    }
                }
            }
        }
        // entries of Ψ against floating evaluation of s(g) χ_ρ(g)
        for c in 0..self.map.dim() {
            let s = self.map.branch[c].to_complex();
            for rho in 0..self.map.dim() {
                record(
                    self.map.matrix[(c, rho)].to_complex(),
                    s * self.table.rows[rho + 1][c + 1].to_complex(),
                );
            }
        }
        Diagnostic {
            identities,
            max_error,
            tolerance: FLOAT_TOLERANCE,
            pass: max_error <= FLOAT_TOLERANCE,
        }
    }
}

/// Run every local check. Failures are reported, never raised.
pub fn verify_local(model: &LocalModel) -> VerificationReport {
    let mut report = VerificationReport::new(model.name());
    report.run("equivariance", || model.check_equivariance());
    report.run("multiplicativity", || model.check_multiplicativity());
    report.run("additive-rank", || model.check_additive());
    report.run("isometry", || model.check_isometry());
    report.run("minor-determinant", || model.check_minor());
    report.run("algebra-axioms", || model.check_axioms());
    let watch = Stopwatch::start();
    report.diagnostic = Some(model.float_diagnostic());
    report.timings_ms.insert("float-diagnostic".into(), watch.elapsed_ms());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::DEFAULT_SEED;
    use crate::groups::catalog;

    fn model(label: AdeLabel) -> LocalModel {
        LocalModel::from_label(label, DEFAULT_SEED).unwrap()
    }

    #[test]
    fn branch_examples() {
        let z2 = model(AdeLabel::A(1));
        let s = branch_sqrt(&z2.table, 1).unwrap();
        assert_eq!(s, CycNum::zeta(4, 1) - CycNum::zeta(4, -1));
        assert_eq!(&s * &s, CycNum::from_int(-4));
        assert!(branch_sqrt(&z2.table, 0).is_err());

        let z3 = model(AdeLabel::A(2));
        let s6 = CycNum::zeta(6, 1) - CycNum::zeta(6, -1);
        assert_eq!(branch_sqrt(&z3.table, 1).unwrap(), s6);
        assert_eq!(branch_sqrt(&z3.table, 2).unwrap(), s6);
        assert_eq!(&s6 * &s6, CycNum::from_int(-3));
    }

    #[test]
    fn branch_coherence() {
        for label in [AdeLabel::D(6), AdeLabel::E8, AdeLabel::A(7)] {
            let m = model(label);
            let natural = m.table.natural_character.as_ref().unwrap();
            for c in 1..m.conj.len() {
                let inv = m.conj.class_inverse[c];
                let s = branch_sqrt(&m.table, c).unwrap();
                assert_eq!(s, branch_sqrt(&m.table, inv).unwrap());
                assert_eq!(&s * &s, &natural[c] - &CycNum::from_int(2));
                let e = 2 * m.group.exponent();
                assert_eq!(e % s.reduced().conductor(), 0);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let mut z2 = model(AdeLabel::A(1));
        let two_i = CycNum::zeta(4, 1) - CycNum::zeta(4, -1);
        assert_eq!(z2.map.matrix[(0, 0)], -two_i);
        let unscaled = z2.map.materialize_unscaled().unwrap().clone();
        assert_eq!(unscaled[(0, 0)], -(CycNum::zeta(8, 1) + CycNum::zeta(8, 3)));

        let z3 = model(AdeLabel::A(2));
        let s = CycNum::zeta(6, 1) - CycNum::zeta(6, -1);
        let z = |k| CycNum::zeta(3, k);
        let expected = CycMatrix::from_rows(vec![
            vec![&s * &z(1), &s * &z(2)],
            vec![&s * &z(2), &s * &z(1)],
        ]);
        assert_eq!(z3.map.matrix, expected);
        assert!(!z3.map.col_labels.contains(&curve_label(0)));
    }

    #[test]
    fn scaling_coherence() {
        let mut m = model(AdeLabel::D(4));
        let phi = m.map.materialize_unscaled().unwrap().clone();
        let root = integer_sqrt_embed(8);
        assert_eq!(phi.scale(&root), m.map.matrix);
    }

    #[test]
    fn minor_examples() {
        assert_eq!(char_minor_determinant(&model(AdeLabel::A(1)).table), CycNum::from_int(-1));
        let z3 = model(AdeLabel::A(2));
        let z = |k| CycNum::zeta(3, k);
        assert_eq!(char_minor_determinant(&z3.table), z(2) - z(1));
        let s3 = catalog::symmetric(3);
        let cs = conjugacy_structure(&s3);
        let t = character_table(&s3, &cs, DEFAULT_SEED).unwrap();
        assert!(!char_minor_determinant(&t).is_zero());
    }

    #[test]
    fn local_reports_pass() {
        for label in [AdeLabel::A(1), AdeLabel::A(4), AdeLabel::D(5), AdeLabel::E6] {
            let report = verify_local(&model(label));
            assert!(report.pass, "{label}: {:?}", report.first_failure());
            assert!(report.diagnostic.as_ref().unwrap().pass);
        }
    }

    #[test]
    fn z2_hand_values() {
        let m = model(AdeLabel::A(1));
        let (images, _) = m.images().unwrap();
        let e = m.resolution.index_of("E_1").unwrap();
        let square = m.orbifold.mul(&images[e], &images[e]);
        assert_eq!(square, Element::from([(m.orbifold.point(), CycNum::from_int(-4))]));
    }

    #[test]
    fn tampered_orbifold_fails() {
        let mut m = model(AdeLabel::A(3));
        m.tamper_orbifold(1, 2).unwrap();
        let report = verify_local(&m);
        assert!(!report.pass);
        let w = report.check("multiplicativity").unwrap().witness.clone().unwrap();
        assert_eq!((w.left.as_str(), w.right.as_str()), ("E_1", "E_1"));
        assert_ne!(w.expected, w.actual);
    }

    #[test]
    fn tampered_resolution_fails() {
        let mut m = model(AdeLabel::D(4));
        m.tamper_resolution(1, 2, 1).unwrap();
        let report = verify_local(&m);
        let check = report.check("multiplicativity").unwrap();
        assert!(!check.pass);
        let w = check.witness.as_ref().unwrap();
        assert_eq!((w.left.as_str(), w.right.as_str()), ("E_1", "E_2"));
    }
}
