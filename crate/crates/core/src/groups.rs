//! Fully enumerated finite groups: the ADE subgroups of SL₂(ℂ) built from matrix
//! generators, and arbitrary groups ingested from Cayley tables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ade::AdeLabel;
use crate::cyclo::{integer_sqrt_embed, CycNum};
use crate::error::{Error, Result};

/// Largest order for which associativity is checked over all triples without a
/// randomized pre-pass.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Closure of matrix generators is abandoned past this many elements.
const MAX_CLOSURE: usize = 5000;

/// A 2×2 matrix over a cyclotomic field, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2(pub [[CycNum; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [CycNum::one(), CycNum::zero()],
            [CycNum::zero(), CycNum::one()],
        ])
    }

    pub fn diag(a: CycNum, d: CycNum) -> Self {
        Mat2([[a, CycNum::zero()], [CycNum::zero(), d]])
    }

    /// Image of the quaternion `a + b·i + c·j + d·k` in SU(2).
    pub fn quaternion(a: &CycNum, b: &CycNum, c: &CycNum, d: &CycNum) -> Self {
        let i = CycNum::zeta(4, 1);
        Mat2([
            [a + &(b * &i), c + &(d * &i)],
            [&(d * &i) - c, a - &(b * &i)],
        ])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        let entry = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn det(&self) -> CycNum {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn trace(&self) -> CycNum {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn conductor(&self) -> u32 {
        self.0
            .iter()
            .flatten()
            .fold(1u32, |acc, e| acc.lcm(&e.conductor()))
    }

    pub fn lift(&self, conductor: u32) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].lift(conductor), m[0][1].lift(conductor)],
            [m[1][0].lift(conductor), m[1][1].lift(conductor)],
        ])
    }

    fn key(&self) -> Vec<(u32, Vec<BigInt>, BigInt)> {
        self.0.iter().flatten().map(CycNum::fingerprint).collect()
    }
}

/// A finite group stored by its full multiplication table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    element_order: Vec<u32>,
    matrices: Option<Vec<Mat2>>,
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_order[a]
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse[h])
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.element_order
            .iter()
            .fold(1u32, |acc, &o| acc.lcm(&o))
    }

    pub fn matrices(&self) -> Option<&[Mat2]> {
        self.matrices.as_deref()
    }

    pub fn matrix(&self, a: usize) -> Option<&Mat2> {
        self.matrices.as_ref().map(|m| &m[a])
    }

    /// Drop the matrix representation, keeping only the abstract group.
    pub fn forget_matrices(mut self) -> Self {
        self.matrices = None;
        self
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    fn from_validated_table(name: String, order: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("validated table has inverses");
        }
        let element_order = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = table[x * order + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup {
            name,
            order,
            table,
            inverse,
            element_order,
            matrices: None,
        }
    }
}

/// Generators over a cyclotomic field for the ADE subgroup of SL₂(ℂ), with the
/// conductor all entries are lifted to.
fn ade_generators(label: AdeLabel) -> (u32, Vec<Mat2>) {
    let half = BigRational::new(1.into(), 2.into());
    let half_cyc = CycNum::from_rational(&half);
    match label {
        AdeLabel::A(n) => {
            let r = n + 1;
            (r, vec![Mat2::diag(CycNum::zeta(r, 1), CycNum::zeta(r, -1))])
        }
        AdeLabel::D(n) => {
            let m = n - 2;
            let rotation = Mat2::diag(CycNum::zeta(2 * m, 1), CycNum::zeta(2 * m, -1));
            let swap = Mat2([
                [CycNum::zero(), CycNum::one()],
                [CycNum::from_int(-1), CycNum::zero()],
            ]);
            (2 * m, vec![rotation, swap])
        }
        AdeLabel::E6 | AdeLabel::E7 => {
            // (1 + i + j + k)/2, of order 6
            let face = Mat2::quaternion(&half_cyc, &half_cyc, &half_cyc, &half_cyc);
            let second = if label == AdeLabel::E6 {
                Mat2::diag(CycNum::zeta(4, 1), CycNum::zeta(4, -1))
            } else {
                // (1 + i)/√2
                Mat2::diag(CycNum::zeta(8, 1), CycNum::zeta(8, -1))
            };
            (8, vec![second, face])
        }
        AdeLabel::E8 => {
            let sqrt5 = integer_sqrt_embed(5);
            let golden = (&sqrt5 + &CycNum::one()).scale(&half);
            let golden_inv = (&sqrt5 - &CycNum::one()).scale(&half);
            let face = Mat2::quaternion(&half_cyc, &half_cyc, &half_cyc, &half_cyc);
            // (φ + φ⁻¹ i + j)/2
            let icosian = Mat2::quaternion(
                &golden.scale(&half),
                &golden_inv.scale(&half),
                &half_cyc,
                &CycNum::zero(),
            );
            (20, vec![face, icosian])
        }
    }
}

/// The finite subgroup of SL₂(ℂ) of the given ADE type, enumerated by
/// breadth-first closure from its standard generators.
pub fn build_binary_polyhedral(label: AdeLabel) -> Result<FiniteGroup> {
    let (conductor, gens) = ade_generators(label);
    let group = group_from_matrices_at(conductor, &gens)?.with_name(label.to_string());
    if group.order() != label.group_order() {
        return Err(Error::Inconsistent(format!(
            "{label}: generators closed to {} elements, expected {}",
            group.order(),
            label.group_order()
        )));
    }
    Ok(group)
}

/// Closure of a set of 2×2 matrix generators of determinant 1.
pub fn group_from_matrices(gens: &[Mat2]) -> Result<FiniteGroup> {
    let conductor = gens
        .iter()
        .fold(1u32, |acc, g| acc.lcm(&g.conductor()))
        .lcm(&4);
    group_from_matrices_at(conductor, gens)
}

fn group_from_matrices_at(conductor: u32, gens: &[Mat2]) -> Result<FiniteGroup> {
    let gens: Vec<Mat2> = gens.iter().map(|g| g.lift(conductor)).collect();
    for (i, g) in gens.iter().enumerate() {
        if !g.det().is_one() {
            return Err(Error::InvalidGenerator(format!(
                "generator {i} has determinant {}",
                g.det()
            )));
        }
    }
    let mut elements = vec![Mat2::identity().lift(conductor)];
    let mut index: HashMap<_, usize> = HashMap::new();
    index.insert(elements[0].key(), 0);
    let mut next = 0;
    while next < elements.len() {
        for g in &gens {
            let y = elements[next].mul(g);
            let key = y.key();
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                if elements.len() >= MAX_CLOSURE {
                    return Err(Error::InvalidGenerator(format!(
                        "closure exceeds {MAX_CLOSURE} elements"
                    )));
                }
                slot.insert(elements.len());
                elements.push(y);
            }
        }
        next += 1;
    }
    let order = elements.len();
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            let key = elements[a].mul(&elements[b]).key();
            let c = *index
                .get(&key)
                .ok_or_else(|| Error::Inconsistent("matrix closure is not closed".into()))?;
            table[a * order + b] = c as u32;
        }
    }
    let mut group = FiniteGroup::from_validated_table(String::from("matrix group"), order, table);
    group.matrices = Some(elements);
    Ok(group)
}

/// Validate a Cayley table and build the group it describes.
///
/// If the identity is not at index 0 it is swapped there.
pub fn group_from_cayley(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidTable("empty table".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("row {i} has out-of-range entry {bad}")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
        .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
    for (i, row) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTable(format!(
                    "row {i} repeats {v} (element not invertible)"
                )));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in rows {
            if std::mem::replace(&mut seen[row[c]], true) {
                return Err(Error::InvalidTable(format!(
                    "column {c} repeats {} (element not invertible)",
                    row[c]
                )));
            }
        }
    }
    let relabel = |x: usize| {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
        }
    }
    check_associative(n, &table)?;
    Ok(FiniteGroup::from_validated_table(
        format!("group of order {n}"),
        n,
        table,
    ))
}

fn check_associative(n: usize, table: &[u32]) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b] as usize;
    if n > EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..1_000_000 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(Error::NotAssociative { a, b, c });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = m(a, b);
            for c in 0..n {
                if m(ab, c) != m(a, m(b, c)) {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// Conjugacy classes with deterministic ordering: class 0 is the identity, the
/// rest sorted by their smallest element index, which is also the representative.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    generators: Option<Vec<Mat2>>,
}

/// Read a group from `{"cayley": [[..]]}` or `{"generators": [matrix, ..]}`,
/// with an optional `"name"`. Matrix entries use the [`CycNum`] serialization.
pub fn parse_group(json: &str) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(json)?;
    let group = match (file.cayley, file.generators) {
        (Some(rows), None) => group_from_cayley(&rows)?,
        (None, Some(gens)) if !gens.is_empty() => group_from_matrices(&gens)?,
        (None, Some(_)) => return Err(Error::config("generators", "at least one generator is required")),
        _ => {
            return Err(Error::Parse(
                "expected exactly one of \"cayley\" or \"generators\"".into(),
            ))
        }
    };
    Ok(match file.name {
        Some(name) => group.with_name(name),
        None => group,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyStructure {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub class_inverse: Vec<usize>,
    pub representatives: Vec<usize>,
    pub exponent: u32,
}

impl ConjugacyStructure {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class of `rep^k` where `rep` represents `class`.
    pub fn power_class(&self, group: &FiniteGroup, class: usize, k: u32) -> usize {
        self.class_of[group.pow(self.representatives[class], k)]
    }
}

pub fn conjugacy_structure(group: &FiniteGroup) -> ConjugacyStructure {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut members: Vec<usize> = (0..n).map(|h| group.conjugate(h, g)).collect();
        members.sort_unstable();
        members.dedup();
        for &x in &members {
            class_of[x] = idx;
        }
        classes.push(members);
    }
    let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let class_inverse = representatives
        .iter()
        .map(|&r| class_of[group.inv(r)])
        .collect();
    ConjugacyStructure {
        classes,
        class_of,
        class_inverse,
        representatives,
        exponent: group.exponent(),
    }
}

/// Small permutation groups and other named groups used as test material.
pub mod catalog {
    use std::collections::HashMap;

    use super::{build_binary_polyhedral, group_from_cayley, FiniteGroup};
    use crate::ade::AdeLabel;
    use crate::error::{Error, Result};

    type Perm = Vec<usize>;

    fn compose(p: &Perm, q: &Perm) -> Perm {
        // apply p, then q
        p.iter().map(|&x| q[x]).collect()
    }

    fn cycle(n: usize, points: &[usize]) -> Perm {
        let mut p: Perm = (0..n).collect();
        for (i, &x) in points.iter().enumerate() {
            p[x] = points[(i + 1) % points.len()];
        }
        p
    }

    /// Group generated by permutations of `0..degree`, as a Cayley table.
    pub fn permutation_group(degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
        let mut elements: Vec<Perm> = vec![(0..degree).collect()];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut next = 0;
        while next < elements.len() {
            for g in gens {
                let y = compose(&elements[next], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            next += 1;
        }
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        group_from_cayley(&rows)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let all: Vec<usize> = (0..n).collect();
        permutation_group(n, &[cycle(n, &all)])
            .expect("cyclic group")
            .with_name(format!("Z{n}"))
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let all: Vec<usize> = (0..n).collect();
        permutation_group(n, &[cycle(n, &[0, 1]), cycle(n, &all)])
            .expect("symmetric group")
            .with_name(format!("S{n}"))
    }

    pub fn alternating(n: usize) -> FiniteGroup {
        let gens: Vec<Perm> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
        permutation_group(n, &gens)
            .expect("alternating group")
            .with_name(format!("Alt{n}"))
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let all: Vec<usize> = (0..n).collect();
        let reflection: Perm = (0..n).map(|i| (n - i) % n).collect();
        permutation_group(n, &[cycle(n, &all), reflection])
            .expect("dihedral group")
            .with_name(format!("Dih{}", 2 * n))
    }

    pub fn quaternion8() -> FiniteGroup {
        build_binary_polyhedral(AdeLabel::D(4))
            .expect("binary dihedral D4")
            .forget_matrices()
            .with_name("Q8")
    }

    /// Groups beyond the ADE families used to exercise the character-table minor.
    pub fn extra_groups() -> Vec<FiniteGroup> {
        vec![
            symmetric(3),
            symmetric(4),
            alternating(4),
            dihedral(4),
            quaternion8(),
            cyclic(6),
        ]
    }

    /// Look up a catalog group by name (`S3`, `S4`, `Alt4`, `Dih8`, `Q8`, `Z6`, …).
    pub fn named(name: &str) -> Result<FiniteGroup> {
        let lower = name.to_ascii_lowercase();
        let num = |prefix: &str| -> Option<usize> {
            lower.strip_prefix(prefix).and_then(|s| s.parse().ok())
        };
        if lower == "q8" {
            return Ok(quaternion8());
        }
        if let Some(n) = num("alt").filter(|&n| (3..=6).contains(&n)) {
            return Ok(alternating(n));
        }
        if let Some(n) = num("dih").filter(|&n| n >= 4 && n % 2 == 0 && n <= 200) {
            return Ok(dihedral(n / 2));
        }
        if let Some(n) = num("s").filter(|&n| (1..=6).contains(&n)) {
            return Ok(symmetric(n));
        }
        if let Some(n) = num("z").filter(|&n| (1..=500).contains(&n)) {
            return Ok(cyclic(n));
        }
        Err(Error::UnknownLabel(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_class_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for x in 0..n {
            if seen[x] {
                continue;
            }
            count += 1;
            for h in 0..n {
                // h⁻¹ x h, the other conjugation convention
                let y = g.mul(g.mul(g.inv(h), x), h);
                seen[y] = true;
            }
        }
        count
    }

    #[test]
    fn ade_orders_and_group_laws() {
        for label in AdeLabel::standard_suite() {
            let g = build_binary_polyhedral(label).unwrap();
            assert_eq!(g.order(), label.group_order(), "{label}");
            let mats = g.matrices().unwrap();
            assert_eq!(mats[0], Mat2::identity());
            for (a, m) in mats.iter().enumerate() {
                assert!(m.det().is_one(), "{label}: det of element {a}");
                assert!(m.trace().is_real(), "{label}: trace of element {a}");
                let is_two = m.trace() == CycNum::from_int(2);
                assert_eq!(is_two, a == 0, "{label}: trace 2 iff identity");
                assert_eq!(g.order() as u32 % g.element_order(a), 0);
            }
            // homomorphism, sampled along a stride to keep the test light
            for a in (0..g.order()).step_by(7) {
                for b in (0..g.order()).step_by(5) {
                    assert_eq!(mats[a].mul(&mats[b]), mats[g.mul(a, b)]);
                }
            }
            assert_eq!(g.order() as u32 % g.exponent(), 0);
        }
    }

    #[test]
    fn a1_is_plus_minus_identity() {
        let g = build_binary_polyhedral(AdeLabel::A(1)).unwrap();
        assert_eq!(g.order(), 2);
        let minus = Mat2::diag(CycNum::from_int(-1), CycNum::from_int(-1));
        assert_eq!(g.matrix(1).unwrap(), &minus);
    }

    #[test]
    fn generator_determinants() {
        for label in [AdeLabel::E6, AdeLabel::E7, AdeLabel::E8, AdeLabel::D(5)] {
            let (_, gens) = ade_generators(label);
            for g in gens {
                assert!(g.det().is_one(), "{label}");
            }
        }
    }

    #[test]
    fn bad_generator_rejected() {
        let m = Mat2::diag(CycNum::from_int(2), CycNum::from_int(1));
        assert!(matches!(
            group_from_matrices(&[m]),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn cayley_z2_and_errors() {
        let g = group_from_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);

        // Latin square with identity 0 that is not associative
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match group_from_cayley(&bad) {
            Err(Error::NotAssociative { a, b, c }) => {
                let m = |x: usize, y: usize| bad[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
        assert!(matches!(
            group_from_cayley(&[vec![1, 1], vec![1, 1]]),
            Err(Error::InvalidTable(_))
        ));
        assert!(matches!(
            group_from_cayley(&[vec![0, 1], vec![1]]),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn identity_is_moved_to_front() {
        // Z/3 with identity labelled 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = group_from_cayley(&rows).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn conjugacy_examples() {
        let z5 = catalog::cyclic(5);
        assert_eq!(conjugacy_structure(&z5).len(), 5);

        let s3 = catalog::symmetric(3);
        assert_eq!(conjugacy_structure(&s3).len(), 3);
        assert_eq!(brute_force_class_count(&s3), 3);

        let d4 = build_binary_polyhedral(AdeLabel::D(4)).unwrap();
        let cs = conjugacy_structure(&d4);
        let mut sizes = cs.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(brute_force_class_count(&d4), 5);

        let e8 = build_binary_polyhedral(AdeLabel::E8).unwrap();
        assert_eq!(conjugacy_structure(&e8).len(), 9);
        assert_eq!(brute_force_class_count(&e8), 9);
    }

    #[test]
    fn conjugacy_invariants() {
        let groups: Vec<FiniteGroup> = AdeLabel::standard_suite()
            .into_iter()
            .map(|l| build_binary_polyhedral(l).unwrap())
            .chain(catalog::extra_groups())
            .collect();
        for g in &groups {
            let cs = conjugacy_structure(g);
            assert_eq!(cs.classes[0], vec![0]);
            assert_eq!(cs.sizes().iter().sum::<usize>(), g.order());
            for c in 0..cs.len() {
                assert_eq!(cs.class_inverse[cs.class_inverse[c]], c);
                assert_eq!(cs.size(c), cs.size(cs.class_inverse[c]));
                assert_eq!(cs.representatives[c], cs.classes[c][0]);
            }
            assert!(cs.representatives.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(cs.len(), brute_force_class_count(g), "{}", g.name());
        }
    }

    #[test]
    fn catalog_orders() {
        assert_eq!(catalog::symmetric(4).order(), 24);
        assert_eq!(catalog::alternating(4).order(), 12);
        assert_eq!(catalog::dihedral(4).order(), 8);
        assert_eq!(catalog::quaternion8().order(), 8);
        assert_eq!(catalog::cyclic(6).order(), 6);
        assert_eq!(catalog::named("S4").unwrap().order(), 24);
        assert_eq!(catalog::named("Dih8").unwrap().order(), 8);
        assert!(catalog::named("nope").is_err());
    }

    #[test]
    fn group_files() {
        let z3 = parse_group(r#"{"name": "Z3", "cayley": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        assert_eq!((z3.name(), z3.order()), ("Z3", 3));
        let gen = serde_json::to_string(&Mat2::diag(CycNum::zeta(5, 1), CycNum::zeta(5, 4))).unwrap();
        let z5 = parse_group(&format!(r#"{{"generators": [{gen}]}}"#)).unwrap();
        assert_eq!(z5.order(), 5);
        assert!(z5.matrices().is_some());
        assert!(matches!(parse_group("{}"), Err(Error::Parse(_))));
        let scaled = serde_json::to_string(&Mat2::diag(CycNum::from_int(2), CycNum::one())).unwrap();
        assert!(matches!(
            parse_group(&format!(r#"{{"generators": [{scaled}]}}"#)),
            Err(Error::InvalidGenerator(_))
        ));
    }
}
