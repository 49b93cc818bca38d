//! Exhaustive lists of small digraphs.

use crate::digraph::Digraph;
use crate::label::VertexLabel;

/// Ordered pairs `(i, j)`, `i != j`, of `0..n`; bit `k` of a mask is the
/// edge `pairs[k]`.
fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// The digraph on vertices `0..n` with the edges selected by `mask`.
pub fn from_mask(n: usize, mask: u64) -> Digraph {
    let pairs = ordered_pairs(n);
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &(i, j))| (VertexLabel::index(i), VertexLabel::index(j)));
    Digraph::new((0..n).map(VertexLabel::index), edges).expect("loop-free by construction")
}

/// One digraph per isomorphism class on exactly `n` vertices, `n <= 5`,
/// each the least mask of its class, in mask order.
pub fn digraphs_up_to_iso(n: usize) -> Vec<Digraph> {
    assert!(n <= 5, "census is limited to 5 vertices");
    let pairs = ordered_pairs(n);
    let slot: Vec<Vec<usize>> = {
        let mut s = vec![vec![0; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            s[i][j] = k;
        }
        s
    };
    let perms = permutations(n);
    // Precomputed bit moves per permutation.
    let moves: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| slot[p[i]][p[j]]).collect())
        .collect();
    let total = 1u64 << pairs.len();
    let mut seen = vec![false; total as usize];
    let mut out = Vec::new();
    for mask in 0..total {
        if seen[mask as usize] {
            continue;
        }
        out.push(from_mask(n, mask));
        for mv in &moves {
            let image = mv
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(0u64, |acc, (_, &t)| acc | 1 << t);
            seen[image as usize] = true;
        }
    }
    out
}
