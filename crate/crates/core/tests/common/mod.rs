//! Oracles shared by the integration suites. Everything here recomputes
//! results from first principles, independent of the solver paths it is
//! used to check.

// each test target uses its own slice of these oracles
#![allow(dead_code)]

use tropica::semifield::Semifield;
use tropica::semimodule::Matrix;
use tropica::RMax;

/// Exhaustive simple-cycle enumeration: the best mean weight over all
/// simple cycles, in carrier units. `None` for an acyclic matrix.
pub fn cycle_mean_by_enumeration(a: &Matrix<RMax>) -> Option<f64> {
    let n = a.rows();
    let mut best: Option<f64> = None;

    fn dfs(
        a: &Matrix<RMax>,
        start: usize,
        current: usize,
        visited: &mut Vec<bool>,
        weight: f64,
        length: usize,
        best: &mut Option<f64>,
    ) {
        let n = a.rows();
        for next in 0..n {
            let w = match a.get(current, next).value() {
                Some(w) => w,
                None => continue,
            };
            if next == start {
                let mean = (weight + w) / (length + 1) as f64;
                *best = Some(best.map_or(mean, |b: f64| b.max(mean)));
            } else if next > start && !visited[next] {
                visited[next] = true;
                dfs(a, start, next, visited, weight + w, length + 1, best);
                visited[next] = false;
            }
        }
    }

    // canonical start: the least node of each cycle
    for start in 0..n {
        let mut visited = vec![false; n];
        visited[start] = true;
        dfs(a, start, start, &mut visited, 0.0, 0, &mut best);
    }
    best
}

/// Strong connectivity of the support digraph, by forward and backward
/// reachability from node 0.
pub fn is_strongly_connected<K: Semifield>(a: &Matrix<K>) -> bool {
    let n = a.rows();
    let reach = |reverse: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let edge = if reverse { a.get(v, u) } else { a.get(u, v) };
                if !edge.is_zero() && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(false) && reach(true)
}

/// Truncated power sum `I ⊕ A ⊕ ... ⊕ A^(n-1)`, the defining series of the
/// Kleene star at matrix dimension n.
pub fn star_by_power_sum<K: Semifield>(a: &Matrix<K>) -> Matrix<K> {
    let n = a.rows();
    let mut sum = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for _ in 1..n {
        power = power.matmul(a).expect("square");
        sum = sum.oplus(&power).expect("same shape");
    }
    sum
}

/// Cyclicity of the critical graph: the lcm over critical components of
/// the gcd of critical cycle lengths. Orbits become exactly arithmetic
/// with this period once the transient has passed, so a trailing-window
/// growth estimate telescopes exactly only when the window is a multiple
/// of it. `None` for an acyclic matrix.
pub fn critical_cyclicity(a: &Matrix<RMax>) -> Option<usize> {
    use tropica::spectral::{kleene_plus, max_cycle_mean};

    let rho = max_cycle_mean(a).ok()?;
    rho.value()?;
    let b = a.scale(rho.inv().expect("nonzero"));
    let plus = kleene_plus(&b).expect("normalized matrix has star");
    let n = a.rows();

    // an edge is critical when some cycle of mean rho runs through it
    let mut critical = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            let w = b.get(u, v);
            if w.is_zero() {
                continue;
            }
            let closes = if u == v {
                w.approx_eq(RMax::one())
            } else {
                !plus.get(v, u).is_zero() && w.otimes(plus.get(v, u)).approx_eq(RMax::one())
            };
            if closes {
                critical[u].push(v);
            }
        }
    }

    let mut overall = 1usize;
    for comp in sccs(&critical) {
        // gcd of cycle lengths inside the component, via BFS levels
        let mut level = vec![None::<i64>; n];
        let root = comp[0];
        level[root] = Some(0);
        let mut queue = vec![root];
        let mut g: i64 = 0;
        while let Some(u) = queue.pop() {
            for &v in &critical[u] {
                if !comp.contains(&v) {
                    continue;
                }
                match level[v] {
                    None => {
                        level[v] = Some(level[u].unwrap() + 1);
                        queue.push(v);
                    }
                    Some(lv) => g = gcd(g, (level[u].unwrap() + 1 - lv).abs()),
                }
            }
        }
        if g > 0 {
            overall = lcm(overall, g as usize);
        }
    }
    Some(overall)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as i64, b as i64) as usize * b
}

// Kosaraju's components over a plain adjacency list.
fn sccs(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // iterative post-order
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            radj[v].push(u);
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &u in order.iter().rev() {
        if comp_of[u] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut comp = vec![];
        let mut stack = vec![u];
        comp_of[u] = id;
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &radj[x] {
                if comp_of[y] == usize::MAX {
                    comp_of[y] = id;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}
