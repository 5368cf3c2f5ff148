//! Shortest strings from each check to the code boundary.

use std::collections::VecDeque;

use crate::codes::{PauliOperator, StabilizerCode};
use crate::gf2::{BitMatrix, BitVec};

/// For each check (syndrome order) an operator flagging exactly that check:
/// a Z string to the boundary for X checks, an X string for Z checks.
/// Paths come from a breadth-first search with neighbours visited in qubit
/// order, so the result is deterministic.
pub fn boundary_strings(code: &StabilizerCode) -> Vec<PauliOperator> {
    let mut out: Vec<PauliOperator> = strings_to_boundary(code.x_checks())
        .into_iter()
        .map(PauliOperator::z_type)
        .collect();
    out.extend(
        strings_to_boundary(code.z_checks())
            .into_iter()
            .map(PauliOperator::x_type),
    );
    out
}

/// Qubit supports, one per row of `h`, whose product with `h` is that row's
/// unit vector. Each qubit is an edge between the (at most two) checks it
/// touches; qubits touching one check lead to a virtual boundary node.
fn strings_to_boundary(h: &BitMatrix) -> Vec<BitVec> {
    let (m, n) = (h.rows(), h.cols());
    let boundary = m;
    let cols = h.transpose();
    // adjacency: node -> (neighbour, qubit), sorted by qubit
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + 1];
    for q in 0..n {
        let touching: Vec<usize> = cols.row(q).iter_ones().collect();
        match touching.as_slice() {
            [a] => {
                adj[*a].push((boundary, q));
                adj[boundary].push((*a, q));
            }
            [a, b] => {
                adj[*a].push((*b, q));
                adj[*b].push((*a, q));
            }
            _ => {}
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m + 1];
    let mut seen = vec![false; m + 1];
    seen[boundary] = true;
    let mut queue = VecDeque::from([boundary]);
    while let Some(u) = queue.pop_front() {
        for &(v, q) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, q));
                queue.push_back(v);
            }
        }
    }
    (0..m)
        .map(|i| {
            let mut v = BitVec::zeros(n);
            let mut node = i;
            while node != boundary {
                let (up, q) = parent[node].expect("every check reaches the boundary");
                v.toggle(q);
                node = up;
            }
            v
        })
        .collect()
}
