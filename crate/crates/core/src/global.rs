//! Synthetic proper surfaces with isolated Du Val points: the global resolution
//! ring, the global orbifold ring and the blockwise correspondence between them.
//!
//! Every point class is identified with the single class `[pt]`, so what is
//! checked is the cohomological realization of the global statement.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ade::AdeLabel;
use crate::algebra::{Element, GradedAlgebra, POINT_LABEL, UNIT_LABEL};
use crate::correspondence::{
    check_multiplicativity, verify_local, CheckResult, LocalModel, Values, VerificationReport,
    Witness,
};
use crate::cyclo::{integer_sqrt_embed, CycNum};
use crate::error::{Error, Result};
use crate::parallel;

pub const REALIZATION: &str = "cohomological: every point class is identified with [pt]";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub id: String,
    #[serde(rename = "type")]
    pub label: AdeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceModel {
    pub name: String,
    pub picard_rank: usize,
    pub intersection_matrix: Vec<Vec<i64>>,
    pub points: Vec<SingularPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    #[serde(default)]
    name: Option<String>,
    picard_rank: usize,
    intersection_matrix: Vec<Vec<i64>>,
    #[serde(default)]
    points: Vec<RawPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    id: String,
    #[serde(rename = "type")]
    label: String,
}

impl SurfaceModel {
    /// Validated constructor; errors name the offending field.
    pub fn new(
        name: impl Into<String>,
        intersection_matrix: Vec<Vec<i64>>,
        points: Vec<(String, AdeLabel)>,
    ) -> Result<Self> {
        let model = SurfaceModel {
            name: name.into(),
            picard_rank: intersection_matrix.len(),
            intersection_matrix,
            points: points
                .into_iter()
                .map(|(id, label)| SingularPoint { id, label })
                .collect(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.picard_rank;
        let q = &self.intersection_matrix;
        if q.len() != b {
            return Err(Error::config(
                "intersection_matrix",
                format!("expected {b} rows for picard_rank {b}, found {}", q.len()),
            ));
        }
        if let Some(r) = q.iter().position(|row| row.len() != b) {
            return Err(Error::config(
                format!("intersection_matrix[{r}]"),
                format!("expected {b} entries, found {}", q[r].len()),
            ));
        }
        for i in 0..b {
            for j in 0..i {
                if q[i][j] != q[j][i] {
                    return Err(Error::config(
                        format!("intersection_matrix[{i}][{j}]"),
                        "intersection matrix not symmetric",
                    ));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for (k, p) in self.points.iter().enumerate() {
            if p.id.is_empty() || p.id.contains(':') {
                return Err(Error::config(
                    format!("points[{k}].id"),
                    "point ids must be nonempty and must not contain ':'",
                ));
            }
            if !seen.insert(p.id.as_str()) {
                return Err(Error::config(
                    format!("points[{k}].id"),
                    format!("duplicate point id {:?}", p.id),
                ));
            }
        }
        Ok(())
    }

    pub fn expected_dim(&self) -> usize {
        2 + self.picard_rank
            + self
                .points
                .iter()
                .map(|p| p.label.rank())
                .sum::<usize>()
    }
}

/// Parse and validate a surface description:
/// `{"picard_rank": b, "intersection_matrix": [[..]], "points": [{"id": .., "type": ..}]}`.
pub fn parse_surface(json: &str) -> Result<SurfaceModel> {
    let raw: RawSurface = serde_json::from_str(json)?;
    let points = raw
        .points
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let label = p
                .label
                .parse::<AdeLabel>()
                .map_err(|e| Error::config(format!("points[{k}].type"), e.to_string()))?;
            Ok(SingularPoint { id: p.id, label })
        })
        .collect::<Result<Vec<_>>>()?;
    let model = SurfaceModel {
        name: raw.name.unwrap_or_else(|| "surface".into()),
        picard_rank: raw.picard_rank,
        intersection_matrix: raw.intersection_matrix,
        points,
    };
    model.validate()?;
    Ok(model)
}

pub fn divisor_label(i: usize) -> String {
    format!("D_{}", i + 1)
}

pub fn point_label(point: &str, local: &str) -> String {
    format!("{point}:{local}")
}

/// Both global rings, the local models behind each point, and `Ψ_global`.
#[derive(Clone, Debug)]
pub struct GlobalModel {
    pub surface: SurfaceModel,
    pub locals: Vec<LocalModel>,
    pub resolution: GradedAlgebra,
    pub orbifold: GradedAlgebra,
    /// `Ψ_global(b)` for each resolution basis element, in orbifold coordinates.
    pub images: Vec<Element>,
    /// `n_b` with `Ψ_global(b) = √n_b · Φ_global(b)`.
    pub norms: Vec<u64>,
}

/// Glue `h(X)` (unit, divisors with pairing `Q`, `[pt]`) to one local block per
/// point, whose degree-1 products land in the shared `[pt]`.
fn glue(
    name: String,
    surface: &SurfaceModel,
    blocks: &[&GradedAlgebra],
) -> (GradedAlgebra, Vec<Vec<usize>>) {
    let b = surface.picard_rank;
    let mut basis = vec![(UNIT_LABEL.to_string(), 0u8)];
    basis.extend((0..b).map(|i| (divisor_label(i), 1u8)));
    // local index -> global index, per block
    let mut embeddings = Vec::with_capacity(blocks.len());
    let mut next = 1 + b;
    for (point, block) in surface.points.iter().zip(blocks) {
        let deg1 = block.basis_of_degree(1);
        let mut map = vec![usize::MAX; block.dim()];
        for &i in &deg1 {
            basis.push((point_label(&point.id, block.label(i)), 1));
            map[i] = next;
            next += 1;
        }
        embeddings.push(map);
    }
    let point = next;
    basis.push((POINT_LABEL.to_string(), 2));
    let mut algebra = GradedAlgebra::new(name, basis);
    for i in 0..algebra.dim() {
        algebra.set_product(0, i, algebra.basis_element(i));
    }
    for i in 0..b {
        for j in i..b {
            let q = surface.intersection_matrix[i][j];
            let value = if q == 0 {
                Element::new()
            } else {
                Element::from([(point, CycNum::from_int(q))])
            };
            algebra.set_product(1 + i, 1 + j, value);
        }
    }
    for (block, map) in blocks.iter().zip(&mut embeddings) {
        map[block.unit()] = 0;
        map[block.point()] = point;
        for i in block.basis_of_degree(1) {
            for j in block.basis_of_degree(1) {
                let value: Element = block
                    .product(i, j)
                    .iter()
                    .map(|(&k, v)| (map[k], v.clone()))
                    .collect();
                algebra.set_product_one_sided(map[i], map[j], value);
            }
        }
    }
    (algebra, embeddings)
}

pub fn assemble_global(surface: &SurfaceModel, seed: u64) -> Result<GlobalModel> {
    surface.validate()?;
    let labels: Vec<AdeLabel> = surface.points.iter().map(|p| p.label).collect();
    let locals = parallel::map(&labels, |&l| LocalModel::from_label(l, seed))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    assemble_from_locals(surface, locals)
}

/// Assemble from already-built local models (one per point, in order).
pub fn assemble_from_locals(surface: &SurfaceModel, locals: Vec<LocalModel>) -> Result<GlobalModel> {
    if locals.len() != surface.points.len() {
        return Err(Error::Inconsistent(format!(
            "{} local models for {} points",
            locals.len(),
            surface.points.len()
        )));
    }
    let res_blocks: Vec<&GradedAlgebra> = locals.iter().map(|m| &m.resolution).collect();
    let orb_blocks: Vec<&GradedAlgebra> = locals.iter().map(|m| &m.orbifold).collect();
    let (resolution, res_maps) = glue(format!("resolution({})", surface.name), surface, &res_blocks);
    let (orbifold, orb_maps) = glue(format!("orbifold({})", surface.name), surface, &orb_blocks);

    let mut images = vec![Element::new(); resolution.dim()];
    let mut norms = vec![1u64; resolution.dim()];
    for i in 0..=surface.picard_rank {
        images[i] = orbifold.basis_element(i);
    }
    images[resolution.point()] = orbifold.basis_element(orbifold.point());
    for ((local, res_map), orb_map) in locals.iter().zip(&res_maps).zip(&orb_maps) {
        let (local_images, local_norms) = local.images()?;
        for i in local.resolution.basis_of_degree(1) {
            let g = res_map[i];
            images[g] = local_images[i]
                .iter()
                .map(|(&k, v)| (orb_map[k], v.clone()))
                .collect();
            norms[g] = local_norms[i];
        }
    }
    Ok(GlobalModel {
        surface: surface.clone(),
        locals,
        resolution,
        orbifold,
        images,
        norms,
    })
}

impl GlobalModel {
    /// Set `D_i · D_j = value · [pt]` on the orbifold side only.
    pub fn tamper_orbifold_intersection(&mut self, i: usize, j: usize, value: i64) {
        let pt = self.orbifold.point();
        self.orbifold
            .set_product(1 + i, 1 + j, Element::from([(pt, CycNum::from_int(value))]));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub id: String,
    #[serde(rename = "type")]
    pub label: AdeLabel,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalReport {
    pub surface: String,
    pub realization: &'static str,
    pub pass: bool,
    pub dims: [usize; 2],
    pub global: VerificationReport,
    pub points: Vec<PointReport>,
}

fn check_dimensions(model: &GlobalModel) -> CheckResult {
    let (y, orb) = (model.resolution.dim(), model.orbifold.dim());
    let expected = model.surface.expected_dim();
    if y == orb && y == expected {
        CheckResult::passed("dimension")
    } else {
        CheckResult::failed(
            "dimension",
            None,
            Some(format!("resolution {y}, orbifold {orb}, expected {expected}")),
        )
    }
}

/// `Ψ_global` sends the unit to the unit, `[pt]` to `[pt]`, and degree to degree.
fn check_unit_and_grading(model: &GlobalModel) -> CheckResult {
    let name = "unit-and-grading";
    let (src, tgt) = (&model.resolution, &model.orbifold);
    if model.images[src.unit()] != tgt.basis_element(tgt.unit())
        || model.images[src.point()] != tgt.basis_element(tgt.point())
    {
        return CheckResult::failed(name, None, Some("unit or point class not preserved".into()));
    }
    for b in 0..src.dim() {
        if model.images[b].keys().any(|&k| tgt.degree(k) != src.degree(b)) {
            return CheckResult::failed(
                name,
                None,
                Some(format!("image of {} is not homogeneous of degree {}", src.label(b), src.degree(b))),
            );
        }
    }
    CheckResult::passed(name)
}

/// `Ψ_global` is block diagonal: identity on `h(X)`, `Ψ_x` per point.
fn check_bijectivity(model: &GlobalModel) -> CheckResult {
    let name = "bijectivity";
    for (point, local) in model.surface.points.iter().zip(&model.locals) {
        if local.map.matrix.det().is_zero() {
            return CheckResult::failed(name, None, Some(format!("block {} is singular", point.id)));
        }
    }
    CheckResult::passed(name)
}

/// `⟨Ψu, Ψv⟩ = √(n_u n_v) · ⟨u, v⟩` over all degree-1 pairs.
fn check_pairing(model: &GlobalModel) -> CheckResult {
    let name = "isometry";
    let (src, tgt) = (&model.resolution, &model.orbifold);
    let src_pt = src.point();
    let tgt_pt = tgt.point();
    let deg1 = src.basis_of_degree(1);
    for (a, &u) in deg1.iter().enumerate() {
        for &v in &deg1[a..] {
            let actual = tgt
                .mul(&model.images[u], &model.images[v])
                .remove(&tgt_pt)
                .unwrap_or_default();
            let pairing = src.product(u, v).get(&src_pt).cloned().unwrap_or_default();
            let (nu, nv) = (model.norms[u], model.norms[v]);
            let expected = if pairing.is_zero() {
                pairing
            } else if nu == nv {
                pairing.scale_int(nu as i64)
            } else {
                &pairing * &integer_sqrt_embed(nu * nv)
            };
            if actual != expected {
                let key = format!("{}·{}", src.label(u), src.label(v));
                return CheckResult::failed(
                    name,
                    Some(Witness {
                        left: src.label(u).to_string(),
                        right: src.label(v).to_string(),
                        expected: Values::from([(key.clone(), expected)]),
                        actual: Values::from([(key, actual)]),
                    }),
                    None,
                );
            }
        }
    }
    CheckResult::passed(name)
}

fn check_axioms(model: &GlobalModel) -> CheckResult {
    for algebra in [&model.resolution, &model.orbifold] {
        if let Err(v) = algebra.check_axioms() {
            return CheckResult::failed(
                "algebra-axioms",
                None,
                Some(format!("{}: {} fails on {:?}", algebra.name(), v.axiom, v.labels)),
            );
        }
    }
    CheckResult::passed("algebra-axioms")
}

/// Global checks on the glued rings plus one local report per point.
pub fn verify_global(model: &GlobalModel) -> GlobalReport {
    let mut global = VerificationReport::new(model.surface.name.clone());
    global.run("dimension", || check_dimensions(model));
    global.run("unit-and-grading", || check_unit_and_grading(model));
    global.run("multiplicativity", || {
        check_multiplicativity(&model.resolution, &model.orbifold, &model.images, &model.norms)
    });
    global.run("bijectivity", || check_bijectivity(model));
    global.run("isometry", || check_pairing(model));
    global.run("algebra-axioms", || check_axioms(model));
    let points: Vec<PointReport> = parallel::map(
        &model.surface.points.iter().zip(&model.locals).collect::<Vec<_>>(),
        |(p, local)| PointReport {
            id: p.id.clone(),
            label: p.label,
            report: verify_local(local),
        },
    );
    let pass = global.pass && points.iter().all(|p| p.report.pass);
    GlobalReport {
        surface: model.surface.name.clone(),
        realization: REALIZATION,
        pass,
        dims: [model.resolution.dim(), model.orbifold.dim()],
        global,
        points,
    }
}
