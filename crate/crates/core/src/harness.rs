//! Runs the bound argument for vertex-transitive pairs on a concrete finite
//! instance: connection generators g_β, the subgroup H they generate, the
//! factorization G = G_α H, and the resulting size bound.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::format::{parse_edge_list_lines, parse_perm_lines, write_edge_list, write_perms};
use crate::graph::Graph;
use crate::perm::{check_automorphisms, frattini_decomposition_check, Perm, PermGroup};

#[derive(Clone, Debug)]
pub struct VTInstance {
    pub graph: Graph,
    pub group: PermGroup,
    pub base_vertex: usize,
}

impl VTInstance {
    /// Checks that every generator is an automorphism and that the group is
    /// transitive on the vertices.
    pub fn new(graph: Graph, group: PermGroup, base_vertex: usize) -> Result<Self> {
        check_automorphisms(&graph, &group)?;
        if base_vertex >= graph.order() {
            return Err(Error::InvalidGraph(format!("base vertex {base_vertex} out of range")));
        }
        if !group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(VTInstance { graph, group, base_vertex })
    }

    /// Edge list, a blank line, then one generator per line.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let first = lines.iter().position(|(_, l)| !l.trim().is_empty()).unwrap_or(lines.len());
        let split = lines[first..].iter().position(|(_, l)| l.trim().is_empty()).map_or(lines.len(), |k| first + k);
        let graph = parse_edge_list_lines(lines[..split].iter().copied())?;
        let perms = parse_perm_lines(lines[split..].iter().copied())?;
        if let Some(p) = perms.first() {
            if p.degree() != graph.order() {
                let line = lines[split..].iter().find(|(_, l)| !l.trim().is_empty()).map_or(split, |(n, _)| *n);
                return Err(Error::Parse {
                    line,
                    msg: format!("generator degree {} differs from vertex count {}", p.degree(), graph.order()),
                });
            }
        }
        let group = PermGroup::new(graph.order(), perms)?;
        VTInstance::new(graph, group, 0)
    }

    pub fn to_text(&self) -> String {
        format!("{}\n{}", write_edge_list(&self.graph), write_perms(self.group.generators()))
    }
}

/// One g_β per neighbour β of the base vertex α, read off the transversal of
/// a chain based at α. `second_choice` builds that chain from the generators
/// in reverse order, which yields different representatives in general.
pub fn connection_generators(inst: &VTInstance, second_choice: bool, caps: &Caps) -> Result<Vec<Perm>> {
    let alpha = inst.base_vertex;
    let chain = inst.group.chain_based_at(alpha, second_choice, caps)?;
    inst.graph
        .neighbors(alpha)
        .iter()
        .map(|&beta| {
            let g = chain.transversal_element(beta).ok_or(Error::NotTransitive)?;
            debug_assert_eq!(g.apply(alpha), beta);
            Ok(g.clone())
        })
        .collect()
}

/// H = ⟨g_β⟩ and whether it is transitive.
pub fn verify_connection_subgroup(inst: &VTInstance, gens: &[Perm]) -> Result<(PermGroup, bool)> {
    let h = PermGroup::new(inst.graph.order(), gens.to_vec())?;
    let transitive = h.is_transitive();
    Ok((h, transitive))
}

/// Whether the strong generators of G_α together with the g_β generate G.
pub fn verify_generation(inst: &VTInstance, gens: &[Perm], caps: &Caps) -> Result<bool> {
    let stab = inst.group.stabilizer(inst.base_vertex, caps)?;
    let all: Vec<Perm> = stab.generators().iter().chain(gens).cloned().collect();
    let generated = PermGroup::new(inst.graph.order(), all)?;
    Ok(generated.order(caps)? == inst.group.order(caps)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub vertices: usize,
    /// Valency of the graph, equal to the number of connection generators.
    pub d: usize,
    /// Exponent of G.
    pub e: u64,
    pub h_exponent: u64,
    pub connection_gens: Vec<Perm>,
    pub h_order: u128,
    pub g_order: u128,
    pub g_alpha_order: u128,
    /// |H ∩ G_α|, computed as the stabilizer of α in H.
    pub h_alpha_order: u128,
    pub h_transitive: bool,
    pub connection_images_ok: bool,
    pub h_in_g: bool,
    pub lagrange_ok: bool,
    pub decomposition_ok: bool,
    pub vertex_bound_ok: bool,
    /// |G| <= |H| * (|V| - 1)!
    pub size_bound_ok: bool,
    pub generation_ok: bool,
    /// |G| = |H| * |G_α|, which holds exactly when H ∩ G_α is trivial.
    pub product_equality: bool,
    pub exponent_divides: bool,
    /// Every boolean above agrees when the connection generators are re-chosen.
    pub choice_independent: bool,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

struct Checks {
    gens: Vec<Perm>,
    h: PermGroup,
    h_transitive: bool,
    decomposition_ok: bool,
    generation_ok: bool,
}

fn run_checks(inst: &VTInstance, second_choice: bool, caps: &Caps) -> Result<Checks> {
    let gens = connection_generators(inst, second_choice, caps)?;
    let (h, h_transitive) = verify_connection_subgroup(inst, &gens)?;
    let decomposition_ok = match frattini_decomposition_check(&inst.group, &h, inst.base_vertex, caps) {
        Err(Error::NotTransitive) => false,
        other => other?,
    };
    let generation_ok = verify_generation(inst, &gens, caps)?;
    Ok(Checks { gens, h, h_transitive, decomposition_ok, generation_ok })
}

pub fn bound_report(inst: &VTInstance, caps: &Caps) -> Result<BoundReport> {
    let alpha = inst.base_vertex;
    let n = inst.graph.order();
    let g = &inst.group;
    let first = run_checks(inst, false, caps)?;
    let second = run_checks(inst, true, caps)?;

    let g_order = g.order(caps)?;
    let g_alpha_order = g.stabilizer(alpha, caps)?.order(caps)?;
    let h_order = first.h.order(caps)?;
    let h_alpha_order = first.h.stabilizer(alpha, caps)?.order(caps)?;
    let e = g.exponent(caps)?;
    let h_exponent = first.h.exponent(caps)?;

    let connection_images_ok = first.gens.iter().zip(inst.graph.neighbors(alpha)).all(|(s, &b)| s.apply(alpha) == b);
    let h_in_g = g.contains_group(&first.h, caps)?;
    let lagrange_ok = g_order % h_order == 0 && g_order % g_alpha_order == 0 && h_order % h_alpha_order == 0;
    let vertex_bound_ok = n as u128 <= h_order;
    let size_bound_ok = BigUint::from(g_order) <= BigUint::from(h_order) * factorial(n.saturating_sub(1));
    let second_size_ok =
        BigUint::from(g_order) <= BigUint::from(second.h.order(caps)?) * factorial(n.saturating_sub(1));
    let second_vertex_ok = n as u128 <= second.h.order(caps)?;
    let choice_independent = first.h_transitive == second.h_transitive
        && first.decomposition_ok == second.decomposition_ok
        && first.generation_ok == second.generation_ok
        && vertex_bound_ok == second_vertex_ok
        && size_bound_ok == second_size_ok;

    Ok(BoundReport {
        vertices: n,
        d: first.gens.len(),
        e,
        h_exponent,
        h_order,
        g_order,
        g_alpha_order,
        h_alpha_order,
        h_transitive: first.h_transitive,
        connection_images_ok,
        h_in_g,
        lagrange_ok,
        decomposition_ok: first.decomposition_ok,
        vertex_bound_ok,
        size_bound_ok,
        generation_ok: first.generation_ok,
        product_equality: g_order == h_order * g_alpha_order,
        exponent_divides: e % h_exponent == 0,
        choice_independent,
        connection_gens: first.gens,
    })
}

impl BoundReport {
    /// Decomposition, size bound and generation all hold.
    pub fn passes(&self) -> bool {
        self.decomposition_ok && self.size_bound_ok && self.generation_ok
    }

    /// Every recorded boolean is true except possibly the equality flag.
    pub fn all_checks_hold(&self) -> bool {
        self.passes()
            && self.h_transitive
            && self.connection_images_ok
            && self.h_in_g
            && self.lagrange_ok
            && self.vertex_bound_ok
            && self.exponent_divides
            && self.choice_independent
    }

    /// `key value` lines in a fixed order, then one `connection_gen` line per
    /// neighbour: the neighbour followed by the generator's images.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k} {v}").unwrap();
        kv("vertices", &self.vertices);
        kv("d", &self.d);
        kv("e", &self.e);
        kv("h_exponent", &self.h_exponent);
        kv("h_order", &self.h_order);
        kv("g_order", &self.g_order);
        kv("g_alpha_order", &self.g_alpha_order);
        kv("h_alpha_order", &self.h_alpha_order);
        kv("h_transitive", &self.h_transitive);
        kv("connection_images_ok", &self.connection_images_ok);
        kv("h_in_g", &self.h_in_g);
        kv("lagrange_ok", &self.lagrange_ok);
        kv("decomposition_ok", &self.decomposition_ok);
        kv("vertex_bound_ok", &self.vertex_bound_ok);
        kv("size_bound_ok", &self.size_bound_ok);
        kv("generation_ok", &self.generation_ok);
        kv("product_equality", &self.product_equality);
        kv("exponent_divides", &self.exponent_divides);
        kv("choice_independent", &self.choice_independent);
        kv("status", &if self.passes() { "pass" } else { "fail" });
        for g in &self.connection_gens {
            let images: Vec<String> = g.images().iter().map(u32::to_string).collect();
            writeln!(out, "connection_gen {}", images.join(" ")).unwrap();
        }
        out
    }
}
