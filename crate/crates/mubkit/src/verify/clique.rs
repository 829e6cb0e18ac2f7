//! Exact maximum clique by branch and bound with a greedy coloring
//! bound. Family sizes here are at most a few dozen nodes, so no
//! approximation is needed.

/// Returns (size, members) of a maximum clique of the symmetric
/// adjacency matrix. Ties resolve deterministically to the
/// lexicographically first witness found by the search order.
pub fn max_clique(adj: &[Vec<bool>]) -> (usize, Vec<usize>) {
    let n = adj.len();
    if n == 0 {
        return (0, vec![]);
    }
    let mut best: Vec<usize> = vec![];
    let mut current: Vec<usize> = vec![];
    let candidates: Vec<usize> = (0..n).collect();
    expand(adj, &candidates, &mut current, &mut best);
    (best.len(), best)
}

fn expand(adj: &[Vec<bool>], candidates: &[usize], current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // greedy coloring of the candidate set; color count bounds the
    // largest clique inside it
    let (order, colors) = color_sort(adj, candidates);
    for idx in (0..order.len()).rev() {
        if current.len() + colors[idx] <= best.len() {
            return;
        }
        let v = order[idx];
        current.push(v);
        let next: Vec<usize> = order[..idx]
            .iter()
            .copied()
            .filter(|&u| adj[v][u])
            .collect();
        expand(adj, &next, current, best);
        current.pop();
    }
}

/// Sorts candidates into color classes; returns vertices in class order
/// together with each vertex's class number (1-based).
fn color_sort(adj: &[Vec<bool>], candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = vec![];
    for &v in candidates {
        let mut placed = false;
        for class in classes.iter_mut() {
            if class.iter().all(|&u| !adj[v][u]) {
                class.push(v);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![v]);
        }
    }
    let mut order = vec![];
    let mut colors = vec![];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            order.push(v);
            colors.push(ci + 1);
        }
    }
    (order, colors)
}
