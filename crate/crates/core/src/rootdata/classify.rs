use super::system::coroot_pairing;
use super::Series;
use crate::linalg::{self, QVector};

/// Cartan matrix `A_ij = <alpha_i, alpha_j^vee>` of a list of simple roots.
pub fn cartan_matrix(simple: &[QVector]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| linalg::to_i64(&coroot_pairing(a, b)).expect("simple roots have integral Cartan entries"))
                .collect()
        })
        .collect()
}

/// Connected components of a simple system, identified by Cartan type.
///
/// Components are reported in order of their smallest node index. `B2` and
/// `C2` are both reported as `B2`; `D3` is reported as `A3`.
pub fn classify(simple: &[QVector]) -> Vec<(Series, usize)> {
    let a = cartan_matrix(simple);
    let n = simple.len();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut nodes = Vec::new();
        comp[start] = id;
        while let Some(i) = stack.pop() {
            nodes.push(i);
            for j in 0..n {
                if a[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        components.push(nodes);
    }
    components
        .into_iter()
        .map(|nodes| {
            let r = nodes.len();
            let lengths: Vec<_> = nodes.iter().map(|&i| linalg::dot(&simple[i], &simple[i])).collect();
            let max = lengths.iter().max().unwrap();
            let short = lengths.iter().filter(|l| *l != max).count();
            let branch = nodes.iter().any(|&i| nodes.iter().filter(|&&j| j != i && a[i][j] != 0).count() >= 3);
            let series = if short == 0 {
                if branch {
                    Series::D
                } else {
                    Series::A
                }
            } else if short == 1 {
                Series::B
            } else if r - short == 1 && r > 2 {
                Series::C
            } else {
                Series::B
            };
            (series, r)
        })
        .collect()
}

pub fn weyl_group_order(series: Series, rank: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match series {
        Series::A => fact(rank + 1),
        Series::B | Series::C => (1u64 << rank) * fact(rank),
        Series::D => (1u64 << (rank - 1)) * fact(rank),
    }
}
