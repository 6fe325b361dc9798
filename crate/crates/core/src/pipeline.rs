//! The pair (Γ_h, G_h) as explicit vertex permutations, and the claim
//! checklist run against it.
//!
//! Vertex (x, c) of Γ_h, with x ∈ H and c ∈ Z_p, has index `index(x)*p + c`.

use std::fmt;
use std::time::Instant;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field_linalg::is_prime;
use crate::graph::{build_family_graph, wreath_index, FamilyGraph, Graph};
use crate::group_algebra::{
    action_matrix, expected_section_dims, gamma_chain, index_lower_bound, min_generators_local, AbelianH, Basis,
    Generator, GroupAlgebraElement, HElem, Outer,
};
use crate::perm::{arc_orbit_size, check_automorphisms, is_arc_transitive, local_action, Perm, PermGroup};

#[derive(Clone, Copy, Debug)]
pub struct ConstructionParams {
    pub p: u32,
    pub h: u32,
    pub caps: Caps,
}

impl ConstructionParams {
    pub fn new(p: u32, h: u32) -> Result<Self> {
        Self::with_caps(p, h, Caps::default())
    }

    pub fn with_caps(p: u32, h: u32, caps: Caps) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 {
            return Err(Error::NotPrimePower { q: 1, p });
        }
        Ok(ConstructionParams { p, h, caps })
    }

    pub fn q(&self) -> usize {
        (self.p as usize).pow(self.h)
    }

    /// (2, 1): the connection set collapses to {a, b}.
    pub fn is_degenerate(&self) -> bool {
        self.p == 2 && self.h == 1
    }

    /// Whether h >= 2, the range in which the family is usually stated.
    pub fn in_stated_family(&self) -> bool {
        self.h >= 2
    }
}

/// An element of H or one of the outer automorphisms φ, ψ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupAction {
    Translate(HElem),
    Outer(Outer),
}

#[derive(Clone, Debug)]
pub struct Bundle {
    pub params: ConstructionParams,
    pub group: AbelianH,
    pub family: FamilyGraph,
    /// The e-basis of γ_{q-1}, i.e. e_xy with x + y >= q - 1.
    pub module_elements: Vec<GroupAlgebraElement>,
    pub module_gens: Vec<Perm>,
    /// Translations by a and b.
    pub translation_gens: [Perm; 2],
    /// φ and ψ.
    pub outer_gens: [Perm; 2],
    pub small_group: PermGroup,
    pub big_group: PermGroup,
}

/// Vertex index of (x, c).
pub fn vertex_index(group: AbelianH, x: HElem, c: usize, p: usize) -> usize {
    wreath_index(group.index(x), c, p)
}

/// (x, c) ↦ (x, c + λ_x) for v = Σ λ_x x in γ_{q-1}.
pub fn module_vertex_action(v: &GroupAlgebraElement) -> Result<Perm> {
    let group = v.group();
    let p = group.p() as usize;
    if !v.in_gamma(group.q() - 1) {
        return Err(Error::NotInModule);
    }
    Perm::from_fn(group.order() * p, |k| {
        let (x, c) = (k / p, k % p);
        wreath_index(x, (c + v.coeffs()[x] as usize) % p, p)
    })
}

/// (x, c) ↦ (x·g, c) for g ∈ H, or (x^s, c) for s ∈ {φ, ψ}.
pub fn group_vertex_action(group: AbelianH, s: GroupAction) -> Perm {
    let p = group.p() as usize;
    Perm::from_fn(group.order() * p, |k| {
        let (x, c) = (group.elem(k / p), k % p);
        let y = match s {
            GroupAction::Translate(g) => group.mul(x, g),
            GroupAction::Outer(o) => group.apply_outer(x, o),
        };
        vertex_index(group, y, c, p)
    })
    .expect("translations and outer automorphisms permute H")
}

impl Bundle {
    /// Builds every permutation without computing any stabilizer chain.
    pub fn assemble(params: ConstructionParams) -> Result<Self> {
        let group = AbelianH::new(params.p, params.h)?;
        let q = group.q();
        params.caps.check_points(group.order() * params.p as usize)?;
        params.caps.check_algebra_dim(group.order())?;
        let family = build_family_graph(params.p, params.h)?;

        let module_elements: Vec<GroupAlgebraElement> = (0..q)
            .flat_map(|x| (0..q).map(move |y| (x, y)))
            .filter(|&(x, y)| x + y + 1 >= q)
            .map(|(x, y)| GroupAlgebraElement::e(group, x, y))
            .collect();
        let module_gens = module_elements.iter().map(module_vertex_action).collect::<Result<Vec<_>>>()?;
        let translation_gens =
            [Generator::A, Generator::B].map(|g| group_vertex_action(group, GroupAction::Translate(group.gen(g))));
        let outer_gens = [Outer::Phi, Outer::Psi].map(|o| group_vertex_action(group, GroupAction::Outer(o)));

        let n = family.graph.order();
        let small: Vec<Perm> = module_gens.iter().chain(&translation_gens).cloned().collect();
        let big: Vec<Perm> = small.iter().chain(&outer_gens).cloned().collect();
        Ok(Bundle {
            params,
            group,
            family,
            module_elements,
            module_gens,
            translation_gens,
            outer_gens,
            small_group: PermGroup::new(n, small)?,
            big_group: PermGroup::new(n, big)?,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.family.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.family.graph.order()
    }

    pub fn valency(&self) -> usize {
        self.family.graph.valency().expect("family graphs are regular")
    }

    pub fn module_dim(&self) -> usize {
        self.module_elements.len()
    }

    /// |⟨φ, ψ⟩| as it acts on the vertices: 4, or 2 when ψ is trivial.
    pub fn outer_factor(&self) -> u128 {
        if self.outer_gens[1].is_identity() {
            2
        } else {
            4
        }
    }

    pub fn expected_small_order(&self) -> u128 {
        (self.params.p as u128).pow(self.module_dim() as u32) * self.group.order() as u128
    }

    pub fn expected_big_order(&self) -> u128 {
        self.outer_factor() * self.expected_small_order()
    }
}

/// Checks perm(s)⁻¹·perm(v)·perm(s) = perm(v·s) for every module generator v
/// and every s ∈ {a, b, φ, ψ}.
pub fn semidirect_consistency(bundle: &Bundle) -> Result<bool> {
    let group = bundle.group;
    for (v, pv) in bundle.module_elements.iter().zip(&bundle.module_gens) {
        for (k, g) in [Generator::A, Generator::B].into_iter().enumerate() {
            let moved = module_vertex_action(&v.mul_elem(group.gen(g)))?;
            if pv.conjugate(&bundle.translation_gens[k]) != moved {
                return Ok(false);
            }
        }
        for (k, o) in [Outer::Phi, Outer::Psi].into_iter().enumerate() {
            let moved = module_vertex_action(&v.apply_outer(o))?;
            if pv.conjugate(&bundle.outer_gens[k]) != moved {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Assembles the bundle and asserts automorphism checks, both order formulas
/// and semidirect consistency.
pub fn build_bundle(params: ConstructionParams) -> Result<Bundle> {
    let bundle = Bundle::assemble(params)?;
    let caps = &params.caps;
    check_automorphisms(bundle.graph(), &bundle.big_group)?;
    if !semidirect_consistency(&bundle)? {
        return Err(Error::Invariant("permutation model does not realize the semidirect product".into()));
    }
    let small = bundle.small_group.order(caps)?;
    if small != bundle.expected_small_order() {
        return Err(Error::Invariant(format!("|small group| = {small}, expected {}", bundle.expected_small_order())));
    }
    let big = bundle.big_group.order(caps)?;
    if big != bundle.expected_big_order() {
        return Err(Error::Invariant(format!("|big group| = {big}, expected {}", bundle.expected_big_order())));
    }
    Ok(bundle)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
    /// Value printed without a pass/fail verdict.
    Reported,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Skipped => "skipped",
            ClaimStatus::Reported => "reported",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClaimEntry {
    pub id: &'static str,
    pub expected: String,
    pub computed: String,
    pub status: ClaimStatus,
    pub elapsed_ms: u128,
    /// Error text for skipped or errored claims; not part of the certificate.
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub p: u32,
    pub h: u32,
    pub n: Option<usize>,
    pub valency: Option<usize>,
    pub order: Option<u128>,
    pub degenerate: bool,
    pub in_stated_family: bool,
    pub claims: Vec<ClaimEntry>,
}

pub const CLAIM_IDS: [&str; 9] = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9"];

impl ClaimReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimEntry> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn any_failed(&self) -> bool {
        self.claims.iter().any(|c| c.status == ClaimStatus::Fail)
    }

    pub fn any_skipped(&self) -> bool {
        self.claims.iter().any(|c| c.status == ClaimStatus::Skipped)
    }

    /// Header line followed by one line per claim:
    /// `claim_id expected computed status elapsed_ms`.
    pub fn to_certificate(&self, timing: bool) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "skipped".into());
        let mut out = format!(
            "# p={} h={} n={} valency={} order={} family={}{}\n",
            self.p,
            self.h,
            opt(self.n.map(|v| v.to_string())),
            opt(self.valency.map(|v| v.to_string())),
            opt(self.order.map(|v| v.to_string())),
            if self.in_stated_family { "stated" } else { "outside_stated_family" },
            if self.degenerate { " degenerate" } else { "" },
        );
        for c in &self.claims {
            let ms = if timing { c.elapsed_ms } else { 0 };
            out.push_str(&format!("{} {} {} {} {}\n", c.id, c.expected, c.computed, c.status, ms));
        }
        out
    }
}

struct Outcome {
    expected: String,
    computed: String,
    status: ClaimStatus,
}

fn verdict(expected: impl ToString, computed: impl ToString, ok: bool) -> Outcome {
    Outcome {
        expected: expected.to_string(),
        computed: computed.to_string(),
        status: if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
    }
}

fn run_claim(id: &'static str, expected: String, f: impl FnOnce() -> Result<Outcome>) -> ClaimEntry {
    let start = Instant::now();
    let result = f();
    let elapsed_ms = start.elapsed().as_millis();
    match result {
        Ok(o) => {
            ClaimEntry { id, expected: o.expected, computed: o.computed, status: o.status, elapsed_ms, detail: None }
        }
        Err(e) => ClaimEntry {
            id,
            expected,
            computed: if e.is_cap() { "skipped".into() } else { "error".into() },
            status: if e.is_cap() { ClaimStatus::Skipped } else { ClaimStatus::Fail },
            elapsed_ms,
            detail: Some(e.to_string()),
        },
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn expected_values(params: &ConstructionParams) -> [String; 9] {
    let p = params.p as usize;
    let q = params.q();
    let degenerate = params.is_degenerate();
    let local = if degenerate { 2 } else { 4 };
    let valency = if degenerate { 2 * p } else { 4 * p };
    let n = p * q * q;
    let bound = index_lower_bound(q, 4) + 3;
    [
        valency.to_string(),
        "connected".into(),
        "vertex_transitive".into(),
        format!("not_arc_transitive,local_orbits={local}"),
        format!("arc_orbit={}", n * valency),
        q.to_string(),
        (q + 2).to_string(),
        format!(">={bound}"),
        join(&expected_section_dims(q)),
    ]
}

/// Runs claims C1 to C9. A cap firing inside a claim marks only that claim
/// skipped; invalid parameters are the only hard error.
pub fn verify_theorem1(params: ConstructionParams) -> Result<ClaimReport> {
    let expected = expected_values(&params);
    let mut report = ClaimReport {
        p: params.p,
        h: params.h,
        n: None,
        valency: None,
        order: None,
        degenerate: params.is_degenerate(),
        in_stated_family: params.in_stated_family(),
        claims: Vec::with_capacity(9),
    };
    let start = Instant::now();
    let bundle = match Bundle::assemble(params) {
        Ok(b) => b,
        Err(e) if e.is_cap() => {
            let elapsed_ms = start.elapsed().as_millis();
            report.claims = CLAIM_IDS
                .iter()
                .zip(expected)
                .map(|(&id, expected)| ClaimEntry {
                    id,
                    expected,
                    computed: "skipped".into(),
                    status: ClaimStatus::Skipped,
                    elapsed_ms,
                    detail: Some(e.to_string()),
                })
                .collect();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.n = Some(bundle.vertex_count());
    report.valency = Some(bundle.valency());

    let caps = &params.caps;
    let p = params.p;
    let q = params.q();
    let group = bundle.group;
    let graph = bundle.graph();
    let [e1, e2, e3, e4, e5, e6, e7, e8, e9] = expected;

    report.claims.push(run_claim("C1", e1.clone(), || {
        let v = graph.valency()?;
        Ok(verdict(&e1, v, e1 == v.to_string()))
    }));
    report.claims.push(run_claim("C2", e2.clone(), || {
        let c = graph.is_connected();
        Ok(verdict(&e2, if c { "connected" } else { "disconnected" }, c))
    }));
    report.claims.push(run_claim("C3", e3.clone(), || {
        check_automorphisms(graph, &bundle.small_group)?;
        let t = bundle.small_group.is_transitive();
        Ok(verdict(&e3, if t { "vertex_transitive" } else { "intransitive" }, t))
    }));
    report.claims.push(run_claim("C4", e4.clone(), || {
        let arc = is_arc_transitive(graph, &bundle.small_group)?;
        let local = local_action(graph, &bundle.small_group, 0, caps)?;
        let computed =
            format!("{},local_orbits={}", if arc { "arc_transitive" } else { "not_arc_transitive" }, local.orbit_count);
        Ok(verdict(&e4, &computed, e4 == computed))
    }));
    report.claims.push(run_claim("C5", e5.clone(), || {
        let size = arc_orbit_size(graph, &bundle.big_group)?;
        let computed = format!("arc_orbit={size}");
        Ok(verdict(&e5, &computed, size == 2 * graph.edge_count() && e5 == computed))
    }));
    report.claims.push(run_claim("C6", e6.clone(), || {
        let chain = gamma_chain(group, caps)?;
        let actions = [action_matrix(group, Generator::A, Basis::E)?, action_matrix(group, Generator::B, Basis::E)?];
        let d = min_generators_local(chain.get(q - 1), &actions)?;
        Ok(verdict(&e6, d, d == q))
    }));
    report.claims.push(run_claim("C7", e7.clone(), || {
        let d = bundle.small_group.frattini_rank(p, caps)?;
        Ok(verdict(&e7, d, d == q + 2))
    }));
    report.claims.push(run_claim("C8", e8.clone(), || {
        let bound = index_lower_bound(q, 4) + 3;
        if p != 2 {
            return Ok(Outcome {
                expected: e8.clone(),
                computed: format!("lower_bound={bound},not_directly_computed"),
                status: ClaimStatus::Reported,
            });
        }
        let d = bundle.big_group.frattini_rank(p, caps)?;
        if !params.in_stated_family() {
            return Ok(Outcome { expected: e8.clone(), computed: d.to_string(), status: ClaimStatus::Reported });
        }
        Ok(verdict(&e8, d, d >= bound))
    }));
    report.claims.push(run_claim("C9", e9.clone(), || {
        let chain = gamma_chain(group, caps)?;
        let dims = chain.section_dims()?;
        Ok(verdict(&e9, join(&dims), join(&dims) == e9))
    }));

    report.order = bundle.big_group.order(caps).ok();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(p: u32, h: u32) -> Bundle {
        Bundle::assemble(ConstructionParams::new(p, h).unwrap()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(ConstructionParams::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(ConstructionParams::new(2, 0).is_err());
        assert!(ConstructionParams::new(2, 1).unwrap().is_degenerate());
        assert!(!ConstructionParams::new(3, 1).unwrap().in_stated_family());
    }

    #[test]
    fn zero_module_element_is_identity() {
        let g = AbelianH::new(2, 2).unwrap();
        assert!(module_vertex_action(&GroupAlgebraElement::zero(g)).unwrap().is_identity());
    }

    #[test]
    fn e11_shifts_every_copy_when_q_is_2() {
        let g = AbelianH::new(2, 1).unwrap();
        let e11 = GroupAlgebraElement::e(g, 1, 1);
        assert_eq!(e11.coeffs(), &[1, 1, 1, 1]);
        let perm = module_vertex_action(&e11).unwrap();
        assert_eq!(perm.images(), &[1, 0, 3, 2, 5, 4, 7, 6]);
    }

    #[test]
    fn module_membership_is_checked() {
        let g = AbelianH::new(2, 2).unwrap();
        let outside = GroupAlgebraElement::e(g, 1, 1);
        assert_eq!(module_vertex_action(&outside), Err(Error::NotInModule));
    }

    #[test]
    fn group_actions() {
        let g = AbelianH::new(2, 2).unwrap();
        assert!(group_vertex_action(g, GroupAction::Translate(g.identity())).is_identity());
        let phi = group_vertex_action(g, GroupAction::Outer(Outer::Phi));
        assert!(phi.compose(&phi).is_identity());
        let a = group_vertex_action(g, GroupAction::Translate(g.gen(Generator::A)));
        assert_eq!(a.order(), 4);
    }

    #[test]
    fn every_generator_is_an_automorphism() {
        for (p, h) in [(2, 1), (2, 2), (3, 1)] {
            let b = bundle(p, h);
            check_automorphisms(b.graph(), &b.big_group).unwrap();
        }
    }

    #[test]
    fn conjugation_matches_algebra() {
        for (p, h) in [(2, 1), (2, 2), (3, 1)] {
            assert!(semidirect_consistency(&bundle(p, h)).unwrap());
        }
    }

    #[test]
    fn wrong_conjugation_convention_is_detected() {
        // Conjugating by a⁻¹ instead of a gives perm(v·a⁻¹); for e_11 over F_3
        // that is e_11 - e_21 rather than e_11 + e_21.
        let b = bundle(3, 1);
        let g = b.group;
        let v = GroupAlgebraElement::e(g, 1, 1);
        let pv = module_vertex_action(&v).unwrap();
        let wrong = pv.conjugate(&b.translation_gens[0].inverse());
        assert_ne!(wrong, module_vertex_action(&v.mul_elem(g.gen(Generator::A))).unwrap());
        assert_eq!(wrong, module_vertex_action(&v.mul_elem(g.inv(g.gen(Generator::A)))).unwrap());
    }

    #[test]
    fn bundle_orders() {
        let b = build_bundle(ConstructionParams::new(2, 2).unwrap()).unwrap();
        assert_eq!(b.vertex_count(), 32);
        assert_eq!(b.big_group.order(&Caps::default()).unwrap(), 1 << 16);
        let b = build_bundle(ConstructionParams::new(3, 1).unwrap()).unwrap();
        assert_eq!(b.vertex_count(), 27);
        assert_eq!(b.big_group.order(&Caps::default()).unwrap(), 26244);
        let b = build_bundle(ConstructionParams::new(2, 1).unwrap()).unwrap();
        assert!(b.family.degenerate);
        assert_eq!(b.valency(), 4);
        assert_eq!(b.big_group.order(&Caps::default()).unwrap(), 64);
    }

    #[test]
    fn assemble_respects_point_cap() {
        let params = ConstructionParams::new(2, 9).unwrap();
        assert!(Bundle::assemble(params).unwrap_err().is_cap());
        let report = verify_theorem1(params).unwrap();
        assert_eq!(report.claims.len(), 9);
        assert!(report.claims.iter().all(|c| c.status == ClaimStatus::Skipped));
    }
}
