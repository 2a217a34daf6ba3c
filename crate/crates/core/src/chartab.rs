//! Exact character tables by the class-algebra eigenvector method (Burnside,
//! with Dixon's modular lifting), and the McKay graph of the natural
//! two-dimensional representation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ade::AdeLabel;
use crate::cyclo::CycNum;
use crate::dynkin::{classify_affine_ade, Adjacency, AffineClassification};
use crate::error::{Error, Result};
use crate::groups::{ConjugacyStructure, FiniteGroup};

/// Random linear combinations tried before giving up on splitting the class algebra.
const MAX_SPLIT_ROUNDS: usize = 200;

/// Default seed for the random splitting combinations.
pub const DEFAULT_SEED: u64 = 0x6d_636b_6179;

/// `a[i][j][k] = #{(x, y) ∈ C_i × C_j : x·y = z}` for a fixed `z ∈ C_k`.
pub fn class_multiplication_tensor(
    group: &FiniteGroup,
    conj: &ConjugacyStructure,
) -> Vec<Vec<Vec<u64>>> {
    let k = conj.len();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (kc, &z) in conj.representatives.iter().enumerate() {
        for x in 0..group.order() {
            let y = group.mul(group.inv(x), z);
            a[conj.class_of[x]][conj.class_of[y]][kc] += 1;
        }
    }
    a
}

/// Irreducible characters of a finite group, one row per irrep and one column
/// per conjugacy class.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub exponent: u32,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<u32>,
    pub class_inverse: Vec<usize>,
    pub rows: Vec<Vec<CycNum>>,
    pub degrees: Vec<u64>,
    /// Trace of the defining 2×2 matrices, when the group came with them.
    pub natural_character: Option<Vec<CycNum>>,
    /// Prime used for the modular eigenvector computation.
    pub prime: u64,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// `(1/|G|) Σ_c |C_c| a(c) conj(b(c))` for arbitrary class functions.
    pub fn inner_product(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        let sum: CycNum = (0..self.num_classes())
            .map(|c| (&a[c] * &b[c].conj()).scale_int(self.class_sizes[c] as i64))
            .sum();
        sum.scale(&BigRational::new(1.into(), BigInt::from(self.order)))
    }

    fn certify_multiplicity(&self, value: CycNum, what: impl FnOnce() -> String) -> Result<u64> {
        value
            .to_integer()
            .filter(|v| !v.is_negative())
            .and_then(|v| v.to_u64())
            .ok_or_else(|| {
                Error::Inconsistent(format!("{} = {value} is not a nonnegative integer", what()))
            })
    }

    /// `⟨χ_i ⊗ χ_j, χ_k⟩`, certified to be a nonnegative integer.
    pub fn tensor_multiplicity(&self, i: usize, j: usize, k: usize) -> Result<u64> {
        let product: Vec<CycNum> = self.rows[i]
            .iter()
            .zip(&self.rows[j])
            .map(|(a, b)| a * b)
            .collect();
        let value = self.inner_product(&product, &self.rows[k]);
        self.certify_multiplicity(value, || format!("<chi_{i} (x) chi_{j}, chi_{k}>"))
    }

    /// `⟨χ_i ⊗ ψ, χ_k⟩` for a character `ψ` given by its class values.
    pub fn tensor_multiplicity_with(&self, i: usize, psi: &[CycNum], k: usize) -> Result<u64> {
        let product: Vec<CycNum> = self.rows[i].iter().zip(psi).map(|(a, b)| a * b).collect();
        let value = self.inner_product(&product, &self.rows[k]);
        self.certify_multiplicity(value, || format!("<chi_{i} (x) psi, chi_{k}>"))
    }

    /// Both orthogonality relations and `Σ degrees² = |G|`, in exact arithmetic.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let k = self.num_classes();
        if self.rows.len() != k {
            return Err(Error::Inconsistent(format!(
                "{} characters for {k} classes",
                self.rows.len()
            )));
        }
        let order = self.order as i64;
        for i in 0..k {
            for j in 0..k {
                let ip = self.inner_product(&self.rows[i], &self.rows[j]);
                let expected = CycNum::from_int(i64::from(i == j));
                if ip != expected {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails for ({i}, {j}): {ip}"
                    )));
                }
            }
        }
        for c in 0..k {
            for d in 0..k {
                let s: CycNum = self.rows.iter().map(|row| &row[c] * &row[d].conj()).sum();
                let expected = if c == d {
                    CycNum::from_int(order / self.class_sizes[c] as i64)
                } else {
                    CycNum::zero()
                };
                if s != expected {
                    return Err(Error::Inconsistent(format!(
                        "column orthogonality fails for ({c}, {d}): {s}"
                    )));
                }
            }
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return Err(Error::Inconsistent(format!(
                "sum of squared degrees {sum_sq} != {}",
                self.order
            )));
        }
        Ok(())
    }

    /// The minor with the trivial row and identity column removed.
    pub fn minor(&self) -> Vec<Vec<CycNum>> {
        self.rows[1..].iter().map(|row| row[1..].to_vec()).collect()
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√|G|`.
pub fn dixon_prime(exponent: u32, order: usize) -> u64 {
    let e = u64::from(exponent);
    let mut p = e + 1;
    loop {
        if is_prime(p) && (p as u128) * (p as u128) > 4 * order as u128 {
            return p;
        }
        p += e;
    }
}

fn primitive_root(p: u64) -> u64 {
    let factors: Vec<u64> = crate::cyclo::factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Basis vectors (rows) of a subspace of `F_p^n`.
type Space = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..ncols {
                    let sub = f * rows[r][k] % p;
                    rows[i][k] = (rows[i][k] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Null space of a square matrix over `F_p`, as row vectors.
fn null_space(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

fn apply(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (a, b)| (acc + a * b % p) % p)
        })
        .collect()
}

/// Split an invariant subspace into eigenspaces of `op`.
fn split_space(space: &Space, op: &[Vec<u64>], p: u64) -> Result<Vec<Space>> {
    let mut basis = space.clone();
    let pivots = rref(&mut basis, p);
    let d = basis.len();
    // matrix of op restricted to the space, in the echelon basis
    let images: Vec<Vec<u64>> = basis.iter().map(|v| apply(op, v, p)).collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|a| (0..d).map(|b| images[b][pivots[a]]).collect())
        .collect();
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                    .collect()
            })
            .collect();
        let kernel = null_space(&shifted, p);
        if kernel.is_empty() {
            continue;
        }
        total += kernel.len();
        let piece: Space = kernel
            .iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (b, &coef) in y.iter().enumerate() {
                    if coef != 0 {
                        for (slot, &x) in v.iter_mut().zip(&basis[b]) {
                            *slot = (*slot + coef * x) % p;
                        }
                    }
                }
                v
            })
            .collect();
        pieces.push(piece);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::CharacterTable(format!(
            "class algebra is not diagonalizable mod {p}"
        )));
    }
    Ok(pieces)
}

/// Exact character table of `group`.
///
/// The random combinations used to split the class algebra are drawn from `seed`;
/// the returned table does not depend on it.
pub fn character_table(
    group: &FiniteGroup,
    conj: &ConjugacyStructure,
    seed: u64,
) -> Result<CharacterTable> {
    let k = conj.len();
    let order = group.order();
    let exponent = conj.exponent;
    let p = dixon_prime(exponent, order);
    let tensor = class_multiplication_tensor(group, conj);
    // B_j w = ω_j w, with (B_j)_{il} = a_{ijl}
    let ops: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| (0..k).map(|l| tensor[i][j][l] % p).collect())
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Space = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    let mut rounds = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        rounds += 1;
        if rounds > MAX_SPLIT_ROUNDS {
            return Err(Error::CharacterTable(format!(
                "eigenspaces failed to split after {MAX_SPLIT_ROUNDS} random combinations"
            )));
        }
        let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let combo: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|l| {
                        (1..k).fold(0u64, |acc, j| (acc + coeffs[j] * ops[j][i][l]) % p)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::with_capacity(k);
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split_space(&space, &combo, p)?);
            }
        }
        spaces = next;
    }

    let zeta_e = pow_mod(primitive_root(p), (p - 1) / u64::from(exponent), p);
    let sizes = conj.sizes();
    let class_orders: Vec<u32> = conj
        .representatives
        .iter()
        .map(|&r| group.element_order(r))
        .collect();
    // power maps: class of rep^l, l < order of rep
    let powers: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            (0..class_orders[c])
                .map(|l| conj.power_class(group, c, l))
                .collect()
        })
        .collect();
    let max_degree = (order as f64).sqrt().floor() as u64 + 1;

    let mut rows: Vec<(u64, Vec<CycNum>)> = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::CharacterTable("eigenvector vanishes at identity".into()));
        }
        let norm = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * norm % p).collect();
        for (j, op) in ops.iter().enumerate() {
            let image = apply(op, &w, p);
            if image.iter().zip(&w).any(|(a, b)| *a != b * w[j] % p) {
                return Err(Error::CharacterTable(
                    "vector is not a simultaneous eigenvector".into(),
                ));
            }
        }
        // Σ ω_i ω_{i*} / |C_i| = |G| / χ(1)²
        let s = (0..k).fold(0u64, |acc, i| {
            let term = w[i] * w[conj.class_inverse[i]] % p * inv_mod(sizes[i] as u64 % p, p) % p;
            (acc + term) % p
        });
        if s == 0 {
            return Err(Error::CharacterTable("degenerate central character".into()));
        }
        let deg_sq = (order as u64 % p) * inv_mod(s, p) % p;
        let degree = (1..=max_degree)
            .find(|d| d * d % p == deg_sq)
            .ok_or_else(|| Error::CharacterTable("no integer degree matches".into()))?;
        let values_mod_p: Vec<u64> = (0..k)
            .map(|i| w[i] * degree % p * inv_mod(sizes[i] as u64 % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let o = class_orders[c];
            let zeta_o = pow_mod(zeta_e, u64::from(exponent / o), p);
            let inv_o = inv_mod(u64::from(o) % p, p);
            let mut terms = Vec::new();
            for j in 0..o {
                let m = (0..o).fold(0u64, |acc, l| {
                    let root = pow_mod(zeta_o, (p - 1) - (u64::from(j) * u64::from(l)) % (p - 1), p);
                    (acc + values_mod_p[powers[c][l as usize]] * root) % p
                }) * inv_o
                    % p;
                if m > degree {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                if m > 0 {
                    terms.push((i64::from(j), BigRational::from_integer(BigInt::from(m))));
                }
            }
            let value = CycNum::canonicalize(o, terms)?.lift(exponent);
            row.push(value);
        }
        rows.push((degree, row));
    }

    sort_rows(&mut rows)?;
    let natural_character = group.matrices().map(|mats| {
        conj.representatives
            .iter()
            .map(|&r| mats[r].trace().reduced().lift(exponent))
            .collect()
    });
    let table = CharacterTable {
        group: group.name().to_string(),
        order,
        exponent,
        class_sizes: sizes,
        class_orders,
        class_inverse: conj.class_inverse.clone(),
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        rows: rows.into_iter().map(|(_, r)| r).collect(),
        natural_character,
        prime: p,
    };
    table.verify_orthogonality()?;
    Ok(table)
}

/// Trivial character first, then by degree, first nonreal column (real rows
/// first), and the coordinate order of [`CycNum::canonical_cmp`].
fn sort_rows(rows: &mut [(u64, Vec<CycNum>)]) -> Result<()> {
    let one = CycNum::one();
    let trivial = rows
        .iter()
        .position(|(_, r)| r.iter().all(|v| *v == one))
        .ok_or_else(|| Error::CharacterTable("trivial character missing".into()))?;
    rows.swap(0, trivial);
    let first_nonreal = |r: &[CycNum]| r.iter().position(|v| !v.is_real());
    rows[1..].sort_by(|(da, ra), (db, rb)| {
        da.cmp(db)
            .then_with(|| match (first_nonreal(ra), first_nonreal(rb)) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => x.cmp(&y),
            })
            .then_with(|| {
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| x.canonical_cmp(y))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
    });
    Ok(())
}

/// The McKay graph on irreducible characters for the natural representation.
#[derive(Clone, Debug, Serialize)]
pub struct McKayGraph {
    pub adjacency: Adjacency,
    pub dims: Vec<i64>,
    pub trivial_vertex: usize,
    pub classification: AffineClassification,
}

impl McKayGraph {
    pub fn affine_label(&self) -> AdeLabel {
        self.classification.affine
    }

    pub fn finite_label(&self) -> AdeLabel {
        self.classification.finite
    }

    /// Adjacency restricted to nontrivial irreps, in table order.
    pub fn finite_adjacency(&self) -> Adjacency {
        let keep: Vec<usize> = (0..self.dims.len())
            .filter(|&v| v != self.trivial_vertex)
            .collect();
        keep.iter()
            .map(|&i| keep.iter().map(|&j| self.adjacency[i][j]).collect())
            .collect()
    }

    /// Graphviz rendering: vertices labelled by irrep degree, trivial vertex boxed.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        out.push_str(&format!(
            "  label=\"McKay graph: affine {}\";\n",
            self.affine_label()
        ));
        for (v, d) in self.dims.iter().enumerate() {
            if v == self.trivial_vertex {
                out.push_str(&format!(
                    "  v{v} [label=\"{d}\", shape=box, trivial=true];\n"
                ));
            } else {
                out.push_str(&format!("  v{v} [label=\"{d}\"];\n"));
            }
        }
        for i in 0..self.dims.len() {
            for j in i + 1..self.dims.len() {
                for _ in 0..self.adjacency[i][j] {
                    out.push_str(&format!("  v{i} -- v{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn mckay_graph(table: &CharacterTable) -> Result<McKayGraph> {
    let natural = table.natural_character.as_ref().ok_or(Error::NoMatrixRep)?;
    let k = table.num_classes();
    let mut adjacency = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            adjacency[i][j] = table.tensor_multiplicity_with(i, natural, j)? as i64;
        }
    }
    let dims: Vec<i64> = table.degrees.iter().map(|&d| d as i64).collect();
    let classification = classify_affine_ade(&adjacency, &dims, 0)?;
    Ok(McKayGraph {
        adjacency,
        dims,
        trivial_vertex: 0,
        classification,
    })
}
