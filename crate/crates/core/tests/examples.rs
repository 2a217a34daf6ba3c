//! Worked examples, each checked against an independent computation first.

use std::collections::HashSet;

use mckay_core::ade::AdeLabel;
use mckay_core::chartab::{character_table, class_multiplication_tensor, DEFAULT_SEED};
use mckay_core::correspondence::{char_minor_determinant, verify_local, LocalModel};
use mckay_core::global::{assemble_global, parse_surface};
use mckay_core::groups::{build_binary_polyhedral, catalog, conjugacy_structure, group_from_cayley};
use mckay_core::orbifold::{element_ages, obstruction_data};
use mckay_core::{integer_sqrt_embed, CycNum, Error, FiniteGroup};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9
}

fn z(n: u32, k: i64) -> CycNum {
    CycNum::zeta(n, k)
}

/// Closure of the generators as floating 2×2 matrices, deduplicated after rounding.
fn float_closure_order(group: &FiniteGroup) -> usize {
    type M = [[Complex64; 2]; 2];
    let mats = group.matrices().unwrap();
    let gens: Vec<M> = mats[1..]
        .iter()
        .take(4)
        .map(|m| {
            let c = |r: usize, s: usize| m.0[r][s].to_complex();
            [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]]
        })
        .collect();
    let key = |m: &M| -> Vec<i64> {
        m.iter()
            .flatten()
            .flat_map(|c| [(c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64])
            .collect()
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<M> = vec![[[one, zero], [zero, one]]];
    seen.insert(key(&frontier[0]));
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let mut p = [[zero; 2]; 2];
            for r in 0..2 {
                for s in 0..2 {
                    p[r][s] = m[r][0] * g[0][s] + m[r][1] * g[1][s];
                }
            }
            if seen.insert(key(&p)) {
                frontier.push(p);
            }
        }
    }
    seen.len()
}

/// Conjugacy classes by brute force over the Cayley table.
fn brute_force_class_sizes(group: &FiniteGroup) -> Vec<usize> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut sizes = Vec::new();
    for g in 0..n {
        if assigned[g] {
            continue;
        }
        let orbit: HashSet<usize> = (0..n).map(|h| group.mul(group.mul(h, g), group.inv(h))).collect();
        for &x in &orbit {
            assigned[x] = true;
        }
        sizes.push(orbit.len());
    }
    sizes
}

#[test]
fn cyclotomic_examples() {
    let w = z(3, 1) - z(3, 2);
    let oracle = {
        let c = w.to_complex();
        c * c
    };
    assert!(close(oracle, Complex64::new(-3.0, 0.0)));
    assert_eq!(&w * &w, CycNum::from_int(-3));

    let d = z(4, 1) - z(4, -1);
    assert!(close(d.to_complex() * d.to_complex(), Complex64::new(-4.0, 0.0)));
    assert_eq!((&d * &d).to_rational(), Some(BigRational::from_integer(BigInt::from(-4))));
    assert_eq!((z(3, 1) + z(3, 2)).to_rational(), Some(BigRational::from_integer(BigInt::from(-1))));
    assert_eq!(z(5, 1).to_rational(), None);

    let five = z(5, 1) - z(5, 2) - z(5, 3) + z(5, 4);
    assert!(close(five.to_complex(), Complex64::new(5f64.sqrt(), 0.0)));
    assert_eq!(integer_sqrt_embed(5), five);
    assert_eq!(integer_sqrt_embed(2), z(8, 1) + z(8, -1));
    assert_eq!(z(5, 1).conj(), z(5, 4));
    assert!(matches!(
        CycNum::canonicalize(0, []),
        Err(Error::ZeroConductor)
    ));
}

#[test]
fn group_orders_match_float_closure() {
    for (label, order) in [(AdeLabel::A(1), 2), (AdeLabel::D(4), 8), (AdeLabel::E6, 24), (AdeLabel::E8, 120)] {
        let g = build_binary_polyhedral(label).unwrap();
        assert_eq!(float_closure_order(&g), order, "{label}");
        assert_eq!(g.order(), order);
    }
}

#[test]
fn class_counts_match_brute_force() {
    let q8 = build_binary_polyhedral(AdeLabel::D(4)).unwrap();
    let mut sizes = brute_force_class_sizes(&q8);
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let mut frozen = conjugacy_structure(&q8).sizes();
    frozen.sort_unstable();
    assert_eq!(frozen, sizes);

    let e8 = build_binary_polyhedral(AdeLabel::E8).unwrap();
    assert_eq!(brute_force_class_sizes(&e8).len(), 9);
    assert_eq!(conjugacy_structure(&e8).len(), 9);

    let s3 = catalog::symmetric(3);
    let ingested = group_from_cayley(&s3.cayley_rows()).unwrap();
    assert_eq!(brute_force_class_sizes(&ingested).len(), 3);
    assert_eq!(conjugacy_structure(&ingested).len(), 3);
}

#[test]
fn cayley_rejections() {
    let z2 = group_from_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(z2.order(), 2);
    // Latin square that is not associative
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
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn class_tensor_examples() {
    let z2 = catalog::cyclic(2);
    let a = class_multiplication_tensor(&z2, &conjugacy_structure(&z2));
    assert_eq!(a[1][1][0], 1);
}

#[test]
fn character_table_examples() {
    let z3 = build_binary_polyhedral(AdeLabel::A(2)).unwrap();
    let t = character_table(&z3, &conjugacy_structure(&z3), DEFAULT_SEED).unwrap();
    // discrete Fourier characters χ_j(g^k) = ζ₃^{jk}, then sorted
    let fourier: Vec<Vec<CycNum>> = (0..3).map(|j| (0..3).map(|k| z(3, j * k)).collect()).collect();
    for row in &t.rows {
        assert!(fourier.contains(row));
    }
    assert_eq!(t.rows, vec![fourier[0].clone(), fourier[1].clone(), fourier[2].clone()]);

    let e6 = build_binary_polyhedral(AdeLabel::E6).unwrap();
    let t = character_table(&e6, &conjugacy_structure(&e6), DEFAULT_SEED).unwrap();
    assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), 24);
    assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
}

#[test]
fn orbifold_examples() {
    let z3 = build_binary_polyhedral(AdeLabel::A(2)).unwrap();
    let ages = element_ages(&z3).unwrap();
    // weights of diag(ζ₃, ζ₃²): 1/3 + 2/3
    let third = BigRational::new(1.into(), 3.into());
    assert_eq!(ages[1], &third + &(&third + &third));
    let d5 = build_binary_polyhedral(AdeLabel::D(5)).unwrap();
    let data = obstruction_data(&d5).unwrap();
    for g in 1..d5.order() {
        assert_eq!(data.get(g, d5.inv(g)).rank, 0);
        assert_eq!(data.get(0, g).class, 1);
    }
}

#[test]
fn correspondence_examples() {
    let mut z2 = LocalModel::from_label(AdeLabel::A(1), DEFAULT_SEED).unwrap();
    let oracle = Complex64::new(0.0, -(2f64.sqrt()));
    let phi = z2.map.materialize_unscaled().unwrap()[(0, 0)].clone();
    assert!(close(phi.to_complex(), oracle));
    assert_eq!(phi, -(z(8, 1) + z(8, 3)));
    assert!(verify_local(&z2).pass);

    let t = &LocalModel::from_label(AdeLabel::A(2), DEFAULT_SEED).unwrap().table;
    let m = t.minor();
    let expansion = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    assert_eq!(expansion, z(3, 2) - z(3, 1));
    assert_eq!(char_minor_determinant(t), expansion);
}

#[test]
fn global_examples() {
    let one = parse_surface(r#"{"picard_rank": 1, "intersection_matrix": [[1]], "points": [{"id": "p", "type": "A1"}]}"#)
        .unwrap();
    let m = assemble_global(&one, DEFAULT_SEED).unwrap();
    assert_eq!(m.resolution.dim(), 2 + 1 + 1);
    let three = parse_surface(
        r#"{"picard_rank": 2, "intersection_matrix": [[0,1],[1,0]],
            "points": [{"id": "p", "type": "A2"}, {"id": "q", "type": "D4"}, {"id": "r", "type": "E8"}]}"#,
    )
    .unwrap();
    // irreps minus the trivial one: 3−1, 5−1, 9−1
    let counted = 2 + 2 + (2 + 4 + 8);
    let m = assemble_global(&three, DEFAULT_SEED).unwrap();
    assert_eq!(m.resolution.dim(), counted);
    assert_eq!(m.orbifold.dim(), counted);
    let e = m.resolution.index_of("p:E_1").unwrap();
    let f = m.resolution.index_of("r:E_3").unwrap();
    assert!(m.resolution.product(e, f).is_empty());
}
