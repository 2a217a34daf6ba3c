//! The orbifold side over a single fixed point: ages, obstruction classes, the
//! orbifold algebra of `[ℂ²/G]` before invariants, and its invariant subalgebra.
//!
//! Every twisted sector of a nonidentity element is the isolated fixed point,
//! so the obstruction bundle lives on a point and its top Chern class is 1 in
//! rank 0 and 0 otherwise. The smooth sector is modelled locally by `{1, [pt]}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{invariant_subalgebra, Element, GradedAlgebra, POINT_LABEL, UNIT_LABEL};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::groups::{ConjugacyStructure, FiniteGroup, Mat2};
use crate::linalg::CycMatrix;

/// Age of a matrix of finite order `r`: `Σ_j a_j / r` over its eigenvalues
/// `exp(2πi a_j / r)` with `0 ≤ a_j < r`.
pub fn age_of_matrix(m: &Mat2, order: u32) -> Result<BigRational> {
    let trace = m.trace();
    let det = m.det();
    // characteristic polynomial x² − t x + d at ζ_r^j
    let roots: Vec<u32> = (0..order)
        .filter(|&j| {
            let z = CycNum::zeta(order, i64::from(j));
            (&(&z * &z) - &(&trace * &z) + det.clone()).is_zero()
        })
        .collect();
    let weights: Vec<u32> = match roots.as_slice() {
        [a, b] => vec![*a, *b],
        // double eigenvalue
        [a] => vec![*a, *a],
        _ => {
            return Err(Error::Inconsistent(format!(
                "matrix of order {order} has eigenvalues outside the {order}-th roots of unity"
            )))
        }
    };
    let sum: u32 = weights.iter().sum();
    Ok(BigRational::new(sum.into(), order.into()))
}

/// Age of every element of a matrix group.
pub fn element_ages(group: &FiniteGroup) -> Result<Vec<BigRational>> {
    let mats = group.matrices().ok_or(Error::NoMatrixRep)?;
    (0..group.order())
        .map(|g| age_of_matrix(&mats[g], group.element_order(g)))
        .collect()
}

/// Age of a conjugacy class (the age of its representative).
pub fn age(group: &FiniteGroup, conj: &ConjugacyStructure, class: usize) -> Result<BigRational> {
    let mats = group.matrices().ok_or(Error::NoMatrixRep)?;
    let g = conj.representatives[class];
    age_of_matrix(&mats[g], group.element_order(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionEntry {
    pub rank: u32,
    /// Top Chern class of the obstruction bundle over the (point) fixed locus.
    pub class: u8,
}

/// Ranks and classes of the obstruction bundles `F_{g,h}` for all ordered pairs.
#[derive(Clone, Debug)]
pub struct ObstructionData {
    order: usize,
    entries: Vec<ObstructionEntry>,
}

impl ObstructionData {
    pub fn get(&self, g: usize, h: usize) -> ObstructionEntry {
        self.entries[g * self.order + h]
    }
}

fn fixed_dimension(mats: &[Mat2], elements: &[usize]) -> usize {
    let mut rows = Vec::new();
    for &g in elements {
        let m = &mats[g].0;
        rows.push(vec![&m[0][0] - &CycNum::one(), m[0][1].clone()]);
        rows.push(vec![m[1][0].clone(), &m[1][1] - &CycNum::one()]);
    }
    2 - CycMatrix::from_rows(rows).rank()
}

/// `rank F_{g,h} = dim (ℂ²)^{⟨g,h⟩} − 2 + age(g) + age(h) + age((gh)⁻¹)`.
pub fn obstruction_class(
    group: &FiniteGroup,
    ages: &[BigRational],
    g: usize,
    h: usize,
) -> Result<ObstructionEntry> {
    let mats = group.matrices().ok_or(Error::NoMatrixRep)?;
    let gh_inv = group.inv(group.mul(g, h));
    let fixed = if g == 0 && h == 0 {
        2
    } else if g == 0 || h == 0 {
        fixed_dimension(mats, &[g.max(h)])
    } else {
        fixed_dimension(mats, &[g, h])
    };
    let total = BigRational::from_integer(BigInt::from(fixed as i64 - 2))
        + &ages[g]
        + &ages[h]
        + &ages[gh_inv];
    if !total.is_integer() || total < BigRational::zero() {
        return Err(Error::Inconsistent(format!(
            "obstruction rank for ({g}, {h}) is {total}"
        )));
    }
    let rank = total.to_integer().to_u32().expect("small rank");
    Ok(ObstructionEntry {
        rank,
        class: u8::from(rank == 0),
    })
}

pub fn obstruction_data(group: &FiniteGroup) -> Result<ObstructionData> {
    let ages = element_ages(group)?;
    let n = group.order();
    let mut entries = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            entries.push(obstruction_class(group, &ages, g, h)?);
        }
    }
    Ok(ObstructionData { order: n, entries })
}

pub fn sector_label(g: usize) -> String {
    format!("e_{g}")
}

pub fn class_label(c: usize) -> String {
    format!("f_[{c}]")
}

/// The orbifold algebra `h(ℂ², G)` localised at the fixed point, before invariants.
///
/// Basis: `1`, `e_g` for each `g ≠ id` (degree `age(g)`), `[pt]`. A product of a
/// class on sector `g` and one on sector `h` is restricted to the common fixed
/// locus, multiplied by `c_{g,h}`, and pushed into sector `gh`.
pub fn local_orbifold_algebra(group: &FiniteGroup) -> Result<GradedAlgebra> {
    let ages = element_ages(group)?;
    let obstruction = obstruction_data(group)?;
    let n = group.order();
    let mut basis = vec![(UNIT_LABEL.to_string(), 0u8)];
    for (g, age) in ages.iter().enumerate().skip(1) {
        let degree = age
            .to_integer()
            .to_u8()
            .filter(|_| age.is_integer())
            .ok_or_else(|| Error::Inconsistent(format!("age of element {g} is {age}")))?;
        basis.push((sector_label(g), degree));
    }
    basis.push((POINT_LABEL.to_string(), 2));
    let mut algebra = GradedAlgebra::new(format!("orbifold({})", group.name()), basis);
    let unit = 0;
    let point = n;
    // basis index -> (sector element, carries the point class)
    let describe = |i: usize| -> (usize, bool) {
        match i {
            0 => (0, false),
            i if i == point => (0, true),
            g => (g, false),
        }
    };
    let index_in_sector = |sector: usize, is_point: bool| -> usize {
        match (sector, is_point) {
            (0, false) => unit,
            (0, true) => point,
            (g, _) => g,
        }
    };
    for i in 0..=n {
        for j in i..=n {
            let (g, pi) = describe(i);
            let (h, pj) = describe(j);
            let c = obstruction.get(g, h).class;
            let gh = group.mul(g, h);
            let value = if g == 0 && h == 0 {
                // small diagonal on the smooth sector
                match (pi, pj) {
                    (false, false) => Some(index_in_sector(0, false)),
                    (true, false) | (false, true) => Some(index_in_sector(0, true)),
                    (true, true) => None,
                }
            } else if pi || pj || c == 0 {
                // the point class restricts to zero on the fixed point
                None
            } else if gh == 0 {
                // push-forward of the fixed point into the smooth sector
                Some(index_in_sector(0, true))
            } else {
                Some(index_in_sector(gh, false))
            };
            let mut product = Element::new();
            if let Some(k) = value {
                let target_degree = algebra.degree(i) + algebra.degree(j);
                if algebra.degree(k) == target_degree {
                    product.insert(k, CycNum::one());
                }
            }
            algebra.set_product(i, j, product);
        }
    }
    Ok(algebra)
}

/// Conjugation action `e_g ↦ e_{hgh⁻¹}` on the pre-invariant basis.
pub fn conjugation_action(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    (0..n)
        .map(|h| {
            let mut perm: Vec<usize> = vec![0];
            perm.extend((1..n).map(|g| group.conjugate(h, g)));
            perm.push(n);
            perm
        })
        .collect()
}

/// `G`-invariant part of the local orbifold algebra, with basis
/// `f_[c] = Σ_{g ∈ c} e_g` over nonidentity classes `c`.
pub fn invariant_orbifold_algebra(
    group: &FiniteGroup,
    conj: &ConjugacyStructure,
    full: &GradedAlgebra,
) -> Result<GradedAlgebra> {
    let action = conjugation_action(group);
    let (algebra, orbits) = invariant_subalgebra(
        full,
        &action,
        format!("orbifold({})^G", group.name()),
        |orbit| {
            let first = orbit[0];
            (first != 0 && first != group.order()).then(|| class_label(conj.class_of[first]))
        },
    )?;
    // orbits of the sector labels must be exactly the nonidentity classes
    let ok = orbits.len() == conj.len() + 1
        && orbits[1..orbits.len() - 1]
            .iter()
            .zip(&conj.classes[1..])
            .all(|(o, c)| o == c);
    if !ok {
        return Err(Error::Inconsistent(
            "invariant basis does not match conjugacy classes".into(),
        ));
    }
    Ok(algebra)
}

/// Expected `⟨f_[g], f_[h]⟩ = |[g]| · δ_{[h] = [g⁻¹]}`, as a Gram matrix.
pub fn expected_invariant_gram(conj: &ConjugacyStructure) -> CycMatrix {
    let k = conj.len() - 1;
    CycMatrix::from_fn(k, k, |r, c| {
        if conj.class_inverse[r + 1] == c + 1 {
            CycNum::from_int(conj.size(r + 1) as i64)
        } else {
            CycNum::zero()
        }
    })
}

/// `gcd`-free helper used by tests: the rational `age` as `(num, den)`.
pub fn age_parts(a: &BigRational) -> (i64, i64) {
    let g = a.numer().gcd(a.denom());
    (
        (a.numer() / &g).to_i64().unwrap_or(0),
        (a.denom() / &g).to_i64().unwrap_or(1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::AdeLabel;
    use crate::groups::{build_binary_polyhedral, conjugacy_structure};

    fn group(label: AdeLabel) -> FiniteGroup {
        build_binary_polyhedral(label).unwrap()
    }

    #[test]
    fn ages() {
        let g = group(AdeLabel::A(2));
        let ages = element_ages(&g).unwrap();
        assert_eq!(age_parts(&ages[0]), (0, 1));
        // diag(ζ₃, ζ₃²): 1/3 + 2/3
        assert_eq!(age_parts(&ages[1]), (1, 1));
        for label in [AdeLabel::D(5), AdeLabel::E7] {
            let ages = element_ages(&group(label)).unwrap();
            assert!(ages[1..].iter().all(|a| age_parts(a) == (1, 1)), "{label}");
        }
        let cs = conjugacy_structure(&g);
        assert_eq!(age_parts(&age(&g, &cs, 0).unwrap()), (0, 1));
    }

    #[test]
    fn age_of_non_sl2_matrix() {
        // diag(ζ₄, 1): weight 1/4 + 0
        let m = Mat2::diag(CycNum::zeta(4, 1), CycNum::one());
        assert_eq!(age_parts(&age_of_matrix(&m, 4).unwrap()), (1, 4));
    }

    #[test]
    fn obstruction_examples() {
        let g = group(AdeLabel::D(4));
        let data = obstruction_data(&g).unwrap();
        for x in 1..g.order() {
            let e = data.get(x, g.inv(x));
            assert_eq!((e.rank, e.class), (0, 1));
            let u = data.get(0, x);
            assert_eq!((u.rank, u.class), (0, 1));
            for y in 1..g.order() {
                if g.mul(x, y) != 0 {
                    assert_eq!(data.get(x, y), ObstructionEntry { rank: 1, class: 0 });
                }
            }
        }
        assert_eq!(data.get(0, 0), ObstructionEntry { rank: 0, class: 1 });
    }

    #[test]
    fn orbifold_products() {
        let g = group(AdeLabel::A(3));
        let a = local_orbifold_algebra(&g).unwrap();
        a.check_axioms().unwrap();
        let pt = a.point();
        for x in 1..g.order() {
            let ex = a.index_of(&sector_label(x)).unwrap();
            let einv = a.index_of(&sector_label(g.inv(x))).unwrap();
            assert_eq!(*a.product(ex, einv), a.basis_element(pt));
            assert_eq!(*a.product(a.unit(), ex), a.basis_element(ex));
            for y in 1..g.order() {
                if y != g.inv(x) {
                    let ey = a.index_of(&sector_label(y)).unwrap();
                    assert!(a.product(ex, ey).is_empty());
                }
            }
        }
    }

    #[test]
    fn invariant_examples() {
        let z2 = group(AdeLabel::A(1));
        let cs = conjugacy_structure(&z2);
        let full = local_orbifold_algebra(&z2).unwrap();
        let inv = invariant_orbifold_algebra(&z2, &cs, &full).unwrap();
        assert_eq!(inv.dim(), 3);

        let z3 = group(AdeLabel::A(2));
        let cs = conjugacy_structure(&z3);
        let inv = invariant_orbifold_algebra(&z3, &cs, &local_orbifold_algebra(&z3).unwrap()).unwrap();
        let f1 = inv.index_of("f_[1]").unwrap();
        let f2 = inv.index_of("f_[2]").unwrap();
        assert_eq!(*inv.product(f1, f2), inv.basis_element(inv.point()));

        let q8 = group(AdeLabel::D(4));
        let cs = conjugacy_structure(&q8);
        let inv = invariant_orbifold_algebra(&q8, &cs, &local_orbifold_algebra(&q8).unwrap()).unwrap();
        assert_eq!(inv.basis_of_degree(1).len(), 4);
        inv.check_axioms().unwrap();
        assert_eq!(inv.gram_matrix(), expected_invariant_gram(&cs));
        assert!(!inv.gram_matrix().det().is_zero());
    }
}
