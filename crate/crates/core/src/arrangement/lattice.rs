//! Isomorphism of line-point incidence structures.
//!
//! Joint colour refinement on the two bipartite incidence graphs, followed by
//! individualization and backtracking until the colouring is discrete; the
//! resulting bijection is then checked edge by edge.

use std::collections::{BTreeMap, HashSet};

use super::{intersection_points, Arrangement, IncidenceData};
use crate::Result;

struct Graph {
    adj: Vec<Vec<usize>>,
    edges: HashSet<(usize, usize)>,
}

impl Graph {
    fn from_incidence(inc: &IncidenceData) -> Self {
        let d = inc.d;
        let n = d + inc.points.len();
        let mut adj = vec![Vec::new(); n];
        let mut edges = HashSet::new();
        for (k, p) in inc.points.iter().enumerate() {
            for &l in &p.lines {
                adj[l].push(d + k);
                adj[d + k].push(l);
                edges.insert((l, d + k));
            }
        }
        Graph { adj, edges }
    }

    fn initial_colors(&self, d: usize) -> Vec<usize> {
        (0..self.adj.len()).map(|v| usize::from(v >= d)).collect()
    }
}

/// Refines both colourings with a shared palette until stable.
fn refine(ga: &Graph, ca: &mut Vec<usize>, gb: &Graph, cb: &mut Vec<usize>) {
    let classes = |ca: &[usize], cb: &[usize]| {
        ca.iter().chain(cb).collect::<HashSet<_>>().len()
    };
    let mut count = classes(ca, cb);
    loop {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.adj[v].iter().map(|&u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..ca.len()).map(|v| sig(ga, ca, v)).collect();
        let sb: Vec<_> = (0..cb.len()).map(|v| sig(gb, cb, v)).collect();
        let palette: BTreeMap<_, usize> = sa
            .iter()
            .chain(&sb)
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        *ca = sa.iter().map(|s| palette[s]).collect();
        *cb = sb.iter().map(|s| palette[s]).collect();
        let next = palette.len();
        if next == count {
            return;
        }
        count = next;
    }
}

fn histogram(c: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(ga: &Graph, mut ca: Vec<usize>, gb: &Graph, mut cb: Vec<usize>) -> bool {
    refine(ga, &mut ca, gb, &mut cb);
    let ha = histogram(&ca);
    if ha != histogram(&cb) {
        return false;
    }
    let target = ha.iter().filter(|(_, &n)| n > 1).min_by_key(|(&c, &n)| (n, c)).map(|(&c, _)| c);
    let Some(color) = target else {
        let mut image = vec![0; cb.len()];
        for (w, &c) in cb.iter().enumerate() {
            image[c] = w;
        }
        let f: Vec<usize> = ca.iter().map(|&c| image[c]).collect();
        return ga.edges.iter().all(|&(u, v)| gb.edges.contains(&(f[u], f[v])));
    };
    let fresh = ca.iter().chain(&cb).max().copied().unwrap_or(0) + 1;
    let v = ca.iter().position(|&c| c == color).expect("class is nonempty");
    for w in (0..cb.len()).filter(|&w| cb[w] == color) {
        let mut ca2 = ca.clone();
        let mut cb2 = cb.clone();
        ca2[v] = fresh;
        cb2[w] = fresh;
        if search(ga, ca2, gb, cb2) {
            return true;
        }
    }
    false
}

/// Whether two line arrangements have isomorphic intersection lattices,
/// decided on their line-point incidence structures.
pub fn same_lattice(a: &Arrangement, b: &Arrangement) -> Result<bool> {
    let ia = intersection_points(a)?;
    let ib = intersection_points(b)?;
    Ok(same_incidence(&ia, &ib))
}

pub(crate) fn same_incidence(ia: &IncidenceData, ib: &IncidenceData) -> bool {
    if ia.d != ib.d || ia.n != ib.n {
        return false;
    }
    let ga = Graph::from_incidence(ia);
    let gb = Graph::from_incidence(ib);
    let ca = ga.initial_colors(ia.d);
    let cb = gb.initial_colors(ib.d);
    search(&ga, ca, &gb, cb)
}

/// Whether the maps `j -> n_j` coincide.
pub fn weak_combinatorics_equal(a: &Arrangement, b: &Arrangement) -> Result<bool> {
    Ok(intersection_points(a)?.n == intersection_points(b)?.n)
}
