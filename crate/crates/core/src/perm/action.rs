//! Permutation groups acting on graphs: automorphism checks, vertex and arc
//! transitivity, local actions, and the transitive-subgroup factorization.

use std::collections::VecDeque;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{Perm, PermGroup};

pub fn is_automorphism(g: &Graph, s: &Perm) -> Result<bool> {
    if s.degree() != g.order() {
        return Err(Error::DegreeMismatch { expected: g.order(), got: s.degree() });
    }
    Ok(g.edges().all(|(u, v)| g.has_edge(s.apply(u), s.apply(v))))
}

/// Fails with the 1-based index of the first generator that is not an automorphism.
pub fn check_automorphisms(g: &Graph, group: &PermGroup) -> Result<()> {
    if group.degree() != g.order() {
        return Err(Error::DegreeMismatch { expected: g.order(), got: group.degree() });
    }
    for (k, s) in group.generators().iter().enumerate() {
        if !is_automorphism(g, s)? {
            return Err(Error::NotAutomorphism(k + 1));
        }
    }
    Ok(())
}

pub fn is_vertex_transitive(g: &Graph, group: &PermGroup) -> Result<bool> {
    check_automorphisms(g, group)?;
    Ok(group.is_transitive())
}

/// Size of the orbit of the first arc (0, first neighbour of 0) under the
/// induced action on arcs.
pub fn arc_orbit_size(g: &Graph, group: &PermGroup) -> Result<usize> {
    check_automorphisms(g, group)?;
    let n = g.order();
    if n == 0 || g.degree(0) == 0 {
        return Ok(0);
    }
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0);
    for v in 0..n {
        offset.push(offset[v] + g.degree(v));
    }
    let arc_id = |u: usize, w: usize| offset[u] + g.neighbors(u).binary_search(&w).expect("image of an arc is an arc");
    let mut seen = vec![false; offset[n]];
    let start = (0, g.neighbors(0)[0]);
    seen[arc_id(start.0, start.1)] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some((u, w)) = queue.pop_front() {
        for s in group.generators() {
            let (x, y) = (s.apply(u), s.apply(w));
            let id = arc_id(x, y);
            if !seen[id] {
                seen[id] = true;
                count += 1;
                queue.push_back((x, y));
            }
        }
    }
    Ok(count)
}

pub fn is_arc_transitive(g: &Graph, group: &PermGroup) -> Result<bool> {
    let arcs = 2 * g.edge_count();
    Ok(arcs > 0 && arc_orbit_size(g, group)? == arcs)
}

/// The group induced by a vertex stabilizer on the neighbourhood of the vertex.
#[derive(Clone, Debug)]
pub struct LocalAction {
    /// Neighbours of the vertex; point `k` of `group` is `neighbors[k]`.
    pub neighbors: Vec<usize>,
    pub group: PermGroup,
    pub orbit_count: usize,
}

pub fn local_action(g: &Graph, group: &PermGroup, v: usize, caps: &Caps) -> Result<LocalAction> {
    check_automorphisms(g, group)?;
    let stab = group.stabilizer(v, caps)?;
    let neighbors = g.neighbors(v).to_vec();
    let d = neighbors.len();
    let restricted = stab
        .generators()
        .iter()
        .map(|s| {
            Perm::from_fn(d, |k| {
                neighbors.binary_search(&s.apply(neighbors[k])).expect("stabilizer fixes the neighbourhood")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let local = PermGroup::new(d, restricted)?;
    let orbit_count = local.orbit_count();
    Ok(LocalAction { neighbors, group: local, orbit_count })
}

/// Certifies G = G_v · H for a transitive subgroup H of G: H is transitive,
/// H ≤ G, and |G| = |G_v| · n.
pub fn frattini_decomposition_check(group: &PermGroup, sub: &PermGroup, v: usize, caps: &Caps) -> Result<bool> {
    if sub.degree() != group.degree() {
        return Err(Error::DegreeMismatch { expected: group.degree(), got: sub.degree() });
    }
    if sub.orbit(&[v]).len() != group.degree() {
        return Err(Error::NotTransitive);
    }
    if !group.contains_group(sub, caps)? {
        return Ok(false);
    }
    let stab = group.stabilizer(v, caps)?;
    Ok(group.order(caps)? == stab.order(caps)? * group.degree() as u128)
}
