//! The standard verification corpus: every ADE group in the suite plus a few
//! non-SL₂ groups for the character-minor check, run independently per group.

use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::ade::AdeLabel;
use crate::chartab::{character_table, CharacterTable};
use crate::correspondence::{
    char_minor_determinant, verify_local, CheckResult, LocalModel, Stopwatch, VerificationReport,
};
use crate::cyclo::CycNum;
use crate::dynkin::{cartan_matrix, classify_finite_ade, is_affine_null_vector};
use crate::error::Result;
use crate::groups::{catalog, conjugacy_structure, FiniteGroup};
use crate::linalg::CycMatrix;
use crate::orbifold::{element_ages, obstruction_data};
use crate::parallel;

/// Brute-force age and obstruction anchors over all elements and ordered pairs:
/// `age(g) = 1` for `g ≠ id`, and `c_{g,h} = 1` iff `g = h⁻¹` or `g = id` or `h = id`.
pub fn age_obstruction_anchor(group: &FiniteGroup) -> Result<CheckResult> {
    const NAME: &str = "age-obstruction";
    let ages = element_ages(group)?;
    for (g, a) in ages.iter().enumerate() {
        let expected = i64::from(g != 0);
        if *a != BigRational::from_integer(expected.into()) {
            return Ok(CheckResult::failed(NAME, None, Some(format!("age of element {g} is {a}"))));
        }
    }
    let data = obstruction_data(group)?;
    let n = group.order();
    for g in 0..n {
        for h in 0..n {
            let expected = u8::from(g == 0 || h == 0 || group.mul(g, h) == 0);
            let entry = data.get(g, h);
            if entry.class != expected {
                let detail = format!(
                    "c({g}, {h}) = {} with rank {}, expected {expected}",
                    entry.class, entry.rank
                );
                return Ok(CheckResult::failed(NAME, None, Some(detail)));
            }
        }
    }
    Ok(CheckResult::passed(NAME))
}

#[derive(Clone, Debug, Serialize)]
pub struct McKaySummary {
    pub affine: AdeLabel,
    pub finite: AdeLabel,
    pub adjacency: Vec<Vec<i64>>,
    pub dims: Vec<i64>,
    pub null_vector: bool,
    /// Resolution Gram matrix is `−2` plus the finite adjacency, that diagram
    /// classifies as the expected type, and the determinants of Gram and
    /// `−Cartan` agree.
    pub gram_is_negative_cartan: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<AdeLabel>,
    pub prime: u64,
    pub degrees: Vec<u64>,
    pub table: Vec<Vec<CycNum>>,
    pub minor_determinant: CycNum,
    pub minor_nonzero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mckay: Option<McKaySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchors: Option<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<VerificationReport>,
    pub pass: bool,
    pub timings_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub pass: bool,
    pub entries: Vec<CorpusEntry>,
}

impl CorpusReport {
    /// JSON with the seed and every timing removed, for reproducibility checks.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable report");
        strip_volatile(&mut v);
        serde_json::to_string_pretty(&v).expect("serializable value")
    }
}

/// Remove `seed` and `timings_ms` keys at every depth.
pub fn strip_volatile(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("seed");
            map.remove("timings_ms");
            map.values_mut().for_each(strip_volatile);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}

fn table_fields(table: &CharacterTable) -> (Vec<Vec<CycNum>>, CycNum) {
    let rows = table
        .rows
        .iter()
        .map(|r| r.iter().map(CycNum::reduced).collect())
        .collect();
    (rows, char_minor_determinant(table))
}

/// Full local treatment of one ADE group.
pub fn ade_entry(label: AdeLabel, seed: u64) -> Result<CorpusEntry> {
    let watch = Stopwatch::start();
    let model = LocalModel::from_label(label, seed)?;
    let (table, minor) = table_fields(&model.table);
    let graph = &model.graph;
    let cartan = cartan_matrix(graph.finite_label());
    let gram = model.resolution.gram_matrix();
    let finite_adj = graph.finite_adjacency();
    let neg_cartan =
        CycMatrix::from_fn(cartan.len(), cartan.len(), |r, c| CycNum::from_int(-cartan[r][c]));
    let gram_matches = (0..gram.rows()).all(|r| {
        (0..gram.cols()).all(|c| {
            let expected = if r == c { -2 } else { finite_adj[r][c] };
            gram[(r, c)] == CycNum::from_int(expected)
        })
    }) && classify_finite_ade(&finite_adj)? == graph.finite_label()
        && neg_cartan.det() == gram.det();
    let mckay = McKaySummary {
        affine: graph.affine_label(),
        finite: graph.finite_label(),
        adjacency: graph.adjacency.clone(),
        dims: graph.dims.clone(),
        null_vector: is_affine_null_vector(&graph.adjacency, &graph.dims),
        gram_is_negative_cartan: gram_matches,
    };
    let anchors = age_obstruction_anchor(&model.group)?;
    let local = verify_local(&model);
    let pass = local.pass
        && !minor.is_zero()
        && mckay.affine == label
        && mckay.finite == label
        && mckay.null_vector
        && mckay.gram_is_negative_cartan
        && anchors.pass;
    Ok(CorpusEntry {
        group: label.to_string(),
        order: model.group.order(),
        classes: model.conj.len(),
        label: Some(label),
        prime: model.table.prime,
        degrees: model.table.degrees.clone(),
        table,
        minor_nonzero: !minor.is_zero(),
        minor_determinant: minor,
        mckay: Some(mckay),
        anchors: Some(anchors),
        local: Some(local),
        pass,
        timings_ms: watch.elapsed_ms(),
    })
}

/// Character table and minor determinant only, for any finite group.
pub fn group_entry(group: &FiniteGroup, seed: u64) -> Result<CorpusEntry> {
    let watch = Stopwatch::start();
    let conj = conjugacy_structure(group);
    let t = character_table(group, &conj, seed)?;
    let (table, minor) = table_fields(&t);
    Ok(CorpusEntry {
        group: group.name().to_string(),
        order: group.order(),
        classes: conj.len(),
        label: None,
        prime: t.prime,
        degrees: t.degrees.clone(),
        table,
        minor_nonzero: !minor.is_zero(),
        pass: !minor.is_zero(),
        minor_determinant: minor,
        mckay: None,
        anchors: None,
        local: None,
        timings_ms: watch.elapsed_ms(),
    })
}

enum Job {
    Ade(AdeLabel),
    Extra(FiniteGroup),
}

/// The ADE suite followed by the extra groups, in a fixed order.
pub fn run_corpus(seed: u64) -> Result<CorpusReport> {
    let mut jobs: Vec<Job> = AdeLabel::standard_suite().into_iter().map(Job::Ade).collect();
    jobs.extend(catalog::extra_groups().into_iter().map(Job::Extra));
    let entries = parallel::map(&jobs, |job| match job {
        Job::Ade(label) => ade_entry(*label, seed),
        Job::Extra(group) => group_entry(group, seed),
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(CorpusReport {
        seed,
        pass: entries.iter().all(|e| e.pass),
        entries,
    })
}
