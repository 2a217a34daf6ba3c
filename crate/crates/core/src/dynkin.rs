//! Simply-laced Dynkin diagrams, finite and affine, and recognition of a
//! weighted graph as one of them.

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::ade::AdeLabel;
use crate::error::{Error, Result};

pub type Adjacency = Vec<Vec<i64>>;

fn empty(n: usize) -> Adjacency {
    vec![vec![0; n]; n]
}

fn join(adj: &mut Adjacency, a: usize, b: usize) {
    adj[a][b] += 1;
    adj[b][a] += 1;
}

/// Finite diagram: vertices `0..rank`.
pub fn finite_diagram(label: AdeLabel) -> Adjacency {
    let n = label.rank();
    let mut adj = empty(n);
    match label {
        AdeLabel::A(_) => {
            for i in 1..n {
                join(&mut adj, i - 1, i);
            }
        }
        AdeLabel::D(_) => {
            // path 0..n-2, with n-1 attached to n-3
            for i in 1..n - 1 {
                join(&mut adj, i - 1, i);
            }
            join(&mut adj, n - 3, n - 1);
        }
        AdeLabel::E6 | AdeLabel::E7 | AdeLabel::E8 => {
            // path 0..n-1 with the extra vertex n-1 attached to vertex 2
            for i in 1..n - 1 {
                join(&mut adj, i - 1, i);
            }
            join(&mut adj, 2, n - 1);
        }
    }
    adj
}

/// Affine diagram with its null vector (marks). Vertex 0 is the extending vertex.
pub fn affine_diagram(label: AdeLabel) -> (Adjacency, Vec<i64>) {
    match label {
        AdeLabel::A(1) => (vec![vec![0, 2], vec![2, 0]], vec![1, 1]),
        AdeLabel::A(n) => {
            let k = n as usize + 1;
            let mut adj = empty(k);
            for i in 0..k {
                join(&mut adj, i, (i + 1) % k);
            }
            (adj, vec![1; k])
        }
        AdeLabel::D(n) => {
            // 0,1 leaves on chain start; chain 2..=n-2; leaves n-1, n on chain end
            let n = n as usize;
            let mut adj = empty(n + 1);
            let mut marks = vec![2; n + 1];
            join(&mut adj, 0, 2);
            join(&mut adj, 1, 2);
            for i in 3..=n - 2 {
                join(&mut adj, i - 1, i);
            }
            join(&mut adj, n - 2, n - 1);
            join(&mut adj, n - 2, n);
            for leaf in [0, 1, n - 1, n] {
                marks[leaf] = 1;
            }
            (adj, marks)
        }
        AdeLabel::E6 => star(3, &[&[2, 1], &[2, 1], &[2, 1]]),
        AdeLabel::E7 => star(4, &[&[3, 2, 1], &[3, 2, 1], &[2]]),
        AdeLabel::E8 => star(6, &[&[5, 4, 3, 2, 1], &[4, 2], &[3]]),
    }
}

/// A branch vertex with arms; the first arm's end becomes vertex 0.
fn star(center_mark: i64, arms: &[&[i64]]) -> (Adjacency, Vec<i64>) {
    let total = 1 + arms.iter().map(|a| a.len()).sum::<usize>();
    let mut adj = empty(total);
    let mut marks = vec![0; total];
    // number vertices so that the tip of the first arm is 0
    let first = arms[0];
    let center = first.len();
    marks[center] = center_mark;
    for (i, &m) in first.iter().enumerate() {
        let v = first.len() - 1 - i;
        marks[v] = m;
    }
    for v in 0..center {
        join(&mut adj, v, v + 1);
    }
    let mut next = center + 1;
    for arm in &arms[1..] {
        let mut prev = center;
        for &m in arm.iter() {
            marks[next] = m;
            join(&mut adj, prev, next);
            prev = next;
            next += 1;
        }
    }
    (adj, marks)
}

/// `2·Id − adjacency` of the finite diagram.
pub fn cartan_matrix(label: AdeLabel) -> Adjacency {
    let mut c = finite_diagram(label);
    for (i, row) in c.iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v = -*v;
        }
        row[i] += 2;
    }
    c
}

fn to_graph(adj: &Adjacency, weights: &[i64]) -> UnGraph<i64, i64> {
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = weights.iter().map(|&w| g.add_node(w)).collect();
    for i in 0..adj.len() {
        for j in i + 1..adj.len() {
            if adj[i][j] != 0 {
                g.add_edge(nodes[i], nodes[j], adj[i][j]);
            }
        }
    }
    g
}

fn same_shape(a: &Adjacency, wa: &[i64], b: &Adjacency, wb: &[i64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut da: Vec<i64> = a.iter().map(|r| r.iter().sum()).collect();
    let mut db: Vec<i64> = b.iter().map(|r| r.iter().sum()).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    is_isomorphic_matching(&to_graph(a, wa), &to_graph(b, wb), |x, y| x == y, |x, y| x == y)
}

fn check_shape(adj: &Adjacency) -> Result<()> {
    let n = adj.len();
    if n == 0 {
        return Err(Error::NotAffineAde("empty graph".into()));
    }
    if adj.iter().any(|r| r.len() != n) {
        return Err(Error::NotAffineAde("adjacency matrix is not square".into()));
    }
    for i in 0..n {
        if adj[i][i] != 0 {
            return Err(Error::NotAffineAde(format!("loop at vertex {i}")));
        }
        for j in 0..n {
            if adj[i][j] != adj[j][i] || adj[i][j] < 0 {
                return Err(Error::NotAffineAde(format!(
                    "adjacency not symmetric nonnegative at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

fn is_connected(adj: &Adjacency) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v][w] != 0 && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Recognize a connected finite simply-laced Dynkin diagram.
pub fn classify_finite_ade(adj: &Adjacency) -> Result<AdeLabel> {
    check_shape(adj)?;
    if !is_connected(adj) {
        return Err(Error::NotAffineAde("finite diagram is disconnected".into()));
    }
    let n = adj.len() as u32;
    let ones = vec![0; adj.len()];
    candidates(n)
        .into_iter()
        .find(|&label| same_shape(adj, &ones, &finite_diagram(label), &ones))
        .ok_or_else(|| Error::NotAffineAde("finite diagram does not match A, D or E".into()))
}

fn candidates(rank: u32) -> Vec<AdeLabel> {
    let mut out = Vec::new();
    if rank >= 1 {
        out.push(AdeLabel::A(rank));
    }
    if rank >= 4 {
        out.push(AdeLabel::D(rank));
    }
    match rank {
        6 => out.push(AdeLabel::E6),
        7 => out.push(AdeLabel::E7),
        8 => out.push(AdeLabel::E8),
        _ => {}
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineClassification {
    /// Type of the affine diagram (`A(n)` means affine Ã_n).
    pub affine: AdeLabel,
    /// Type of the diagram left after deleting the distinguished vertex.
    pub finite: AdeLabel,
}

/// Match a weighted graph against the affine diagrams Ã_n, D̃_n, Ẽ₆, Ẽ₇, Ẽ₈,
/// requiring `dims` to equal the diagram's null vector, and classify the finite
/// diagram obtained by deleting `trivial`.
pub fn classify_affine_ade(
    adj: &Adjacency,
    dims: &[i64],
    trivial: usize,
) -> Result<AffineClassification> {
    check_shape(adj)?;
    if dims.len() != adj.len() || trivial >= adj.len() {
        return Err(Error::NotAffineAde("dimension vector does not fit the graph".into()));
    }
    if !is_connected(adj) {
        return Err(Error::NotAffineAde("graph is disconnected".into()));
    }
    let rank = adj.len() as u32 - 1;
    let affine = candidates(rank)
        .into_iter()
        .find(|&label| {
            let (ref_adj, marks) = affine_diagram(label);
            same_shape(adj, dims, &ref_adj, &marks)
        })
        .ok_or_else(|| {
            Error::NotAffineAde(format!(
                "no affine diagram with {} vertices matches",
                adj.len()
            ))
        })?;
    let keep: Vec<usize> = (0..adj.len()).filter(|&v| v != trivial).collect();
    let reduced: Adjacency = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| adj[i][j]).collect())
        .collect();
    let finite = classify_finite_ade(&reduced)?;
    if finite != affine {
        return Err(Error::NotAffineAde(format!(
            "deleting vertex {trivial} of affine {affine} leaves {finite}"
        )));
    }
    Ok(AffineClassification { affine, finite })
}

/// `adjacency · dims == 2 · dims`.
pub fn is_affine_null_vector(adj: &Adjacency, dims: &[i64]) -> bool {
    adj.iter()
        .zip(dims)
        .all(|(row, &d)| row.iter().zip(dims).map(|(a, x)| a * x).sum::<i64>() == 2 * d)
}
