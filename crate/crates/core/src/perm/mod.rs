//! Permutation groups given by generators, with a lazily built stabilizer
//! chain for order and membership queries.

mod action;
mod chain;
mod permutation;

use std::collections::VecDeque;
use std::sync::OnceLock;

pub use action::{
    arc_orbit_size, check_automorphisms, frattini_decomposition_check, is_arc_transitive, is_automorphism,
    is_vertex_transitive, local_action, LocalAction,
};
pub use chain::StabChain;
pub(crate) use permutation::lcm;
pub use permutation::Perm;

use crate::caps::{CapError, Caps};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), chain }
    }
}

impl PermGroup {
    /// The group generated by `generators`; identities are dropped.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    fn with_chain(degree: usize, generators: Vec<Perm>, chain: StabChain) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup { degree, generators, chain: cell }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self, caps: &Caps) -> Result<&StabChain, CapError> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        caps.check_points(self.degree)?;
        let built = StabChain::build(self.degree, &self.generators, &[], caps)?;
        let _ = self.chain.set(built);
        Ok(self.chain.get().expect("chain was just initialised"))
    }

    pub fn order(&self, caps: &Caps) -> Result<u128, CapError> {
        Ok(self.chain(caps)?.order())
    }

    pub fn contains(&self, g: &Perm, caps: &Caps) -> Result<bool, CapError> {
        Ok(g.degree() == self.degree && self.chain(caps)?.contains(g))
    }

    /// Whether every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PermGroup, caps: &Caps) -> Result<bool, CapError> {
        for g in &other.generators {
            if !self.contains(g, caps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closure of `points` under the generators, sorted.
    pub fn orbit(&self, points: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &x in points {
            if !seen[x] {
                seen[x] = true;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.degree).filter(|&x| seen[x]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(&[0]).len() == self.degree
    }

    /// Number of orbits on all points.
    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.degree];
        let mut count = 0;
        for x in 0..self.degree {
            if !seen[x] {
                count += 1;
                for y in self.orbit(&[x]) {
                    seen[y] = true;
                }
            }
        }
        count
    }

    /// Point stabilizer of `v`, with its chain already attached.
    pub fn stabilizer(&self, v: usize, caps: &Caps) -> Result<PermGroup, CapError> {
        caps.check_points(self.degree)?;
        let chain = StabChain::build(self.degree, &self.generators, &[v], caps)?;
        let gens = chain.strong_generators(1).to_vec();
        Ok(PermGroup::with_chain(self.degree, gens, chain.drop_first()))
    }

    /// A chain with `v` as first base point, for transversal lookups.
    pub fn chain_based_at(&self, v: usize, generators_reversed: bool, caps: &Caps) -> Result<StabChain, CapError> {
        caps.check_points(self.degree)?;
        let mut gens = self.generators.clone();
        if generators_reversed {
            gens.reverse();
        }
        StabChain::build(self.degree, &gens, &[v], caps)
    }

    /// All elements, in chain enumeration order.
    pub fn elements(&self, caps: &Caps) -> Result<Vec<Perm>, CapError> {
        let chain = self.chain(caps)?;
        if chain.order() > caps.exponent_cap {
            return Err(CapError::Exponent(caps.exponent_cap));
        }
        let mut out = Vec::with_capacity(chain.order() as usize);
        chain.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Least common multiple of all element orders, by full enumeration.
    pub fn exponent(&self, caps: &Caps) -> Result<u64, CapError> {
        let chain = self.chain(caps)?;
        if chain.order() > caps.exponent_cap {
            return Err(CapError::Exponent(caps.exponent_cap));
        }
        let mut e = 1u64;
        chain.for_each_element(|g| e = lcm(e, g.order()));
        Ok(e)
    }

    /// The smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Perm], caps: &Caps) -> Result<PermGroup> {
        caps.check_points(self.degree)?;
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain = StabChain::build(self.degree, &[], &[], caps)?;
        let mut queue: VecDeque<Perm> = VecDeque::new();
        let admit = |g: Perm, gens: &mut Vec<Perm>, chain: &mut StabChain, queue: &mut VecDeque<Perm>| {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree, got: g.degree() });
            }
            if !chain.contains(&g) {
                gens.push(g.clone());
                chain.insert(&g, caps)?;
                queue.push_back(g);
            }
            Ok(())
        };
        for s in seeds {
            admit(s.clone(), &mut gens, &mut chain, &mut queue)?;
        }
        while let Some(n) = queue.pop_front() {
            for g in &self.generators {
                admit(n.conjugate(g), &mut gens, &mut chain, &mut queue)?;
            }
        }
        Ok(PermGroup::with_chain(self.degree, gens, chain))
    }

    /// Rank of G/Φ(G) for a p-group G, i.e. its minimal number of generators.
    ///
    /// Φ(G) is taken as the normal closure of the p-th powers and pairwise
    /// commutators of the generators.
    pub fn frattini_rank(&self, p: u32, caps: &Caps) -> Result<usize> {
        let order = self.order(caps)?;
        let log = exact_log(order, p).ok_or(Error::NotPGroup)?;
        if log == 0 {
            return Ok(0);
        }
        let gens = &self.generators;
        let mut seeds: Vec<Perm> = gens.iter().map(|g| g.pow(p as u64)).collect();
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                seeds.push(g.commutator(h));
            }
        }
        let phi = self.normal_closure(&seeds, caps)?;
        // G/Φ must be elementary abelian: generators commute and have order p modulo Φ.
        let phi_chain = phi.chain(caps)?;
        if !seeds.iter().all(|s| phi_chain.contains(s)) {
            return Err(Error::Invariant("G/Φ(G) is not elementary abelian".into()));
        }
        let phi_log = exact_log(phi_chain.order(), p).ok_or(Error::NotPGroup)?;
        Ok(log - phi_log)
    }
}

/// `k` with `n = p^k`.
pub fn exact_log(mut n: u128, p: u32) -> Option<usize> {
    let p = p as u128;
    if n == 0 || p < 2 {
        return None;
    }
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Perm {
        Perm::from_fn(n, |x| (x + 1) % n).unwrap()
    }

    fn reflection(n: usize) -> Perm {
        Perm::from_fn(n, |x| (n - x) % n).unwrap()
    }

    fn dihedral(n: usize) -> PermGroup {
        PermGroup::new(n, vec![cycle(n), reflection(n)]).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        PermGroup::new(n, vec![t, cycle(n)]).unwrap()
    }

    // Closure of the generators by brute force.
    fn enumerate(g: &PermGroup) -> std::collections::BTreeSet<Perm> {
        let mut set = std::collections::BTreeSet::from([Perm::identity(g.degree())]);
        let mut frontier = vec![Perm::identity(g.degree())];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = x.compose(s);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orbits() {
        let caps = Caps::default();
        assert_eq!(PermGroup::trivial(4).orbit(&[2]), vec![2]);
        assert_eq!(PermGroup::new(5, vec![cycle(5)]).unwrap().orbit(&[0]), vec![0, 1, 2, 3, 4]);
        assert_eq!(PermGroup::new(5, vec![cycle(5)]).unwrap().order(&caps).unwrap(), 5);
    }

    #[test]
    fn small_orders() {
        let caps = Caps::default();
        assert_eq!(dihedral(5).order(&caps).unwrap(), 10);
        assert_eq!(symmetric(5).order(&caps).unwrap(), 120);
        assert_eq!(symmetric(8).order(&caps).unwrap(), 40320);
        assert_eq!(PermGroup::trivial(3).order(&caps).unwrap(), 1);
    }

    #[test]
    fn orders_agree_with_enumeration() {
        let caps = Caps::default();
        let a4 = PermGroup::new(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(), Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap()],
        )
        .unwrap();
        for g in [dihedral(6), symmetric(5), a4, dihedral(7)] {
            assert_eq!(g.order(&caps).unwrap(), enumerate(&g).len() as u128);
            let elems: std::collections::BTreeSet<Perm> = g.elements(&caps).unwrap().into_iter().collect();
            assert_eq!(elems, enumerate(&g));
        }
    }

    #[test]
    fn stabilizers() {
        let caps = Caps::default();
        let c5 = PermGroup::new(5, vec![cycle(5)]).unwrap();
        assert_eq!(c5.stabilizer(0, &caps).unwrap().order(&caps).unwrap(), 1);
        let d5 = dihedral(5);
        let st = d5.stabilizer(0, &caps).unwrap();
        assert_eq!(st.order(&caps).unwrap(), 2);
        assert!(st.generators().iter().all(|g| g.apply(0) == 0));
        let s6 = symmetric(6);
        for v in 0..6 {
            let st = s6.stabilizer(v, &caps).unwrap();
            assert_eq!(s6.orbit(&[v]).len() as u128 * st.order(&caps).unwrap(), 720);
        }
    }

    #[test]
    fn membership() {
        let caps = Caps::default();
        let c5 = PermGroup::new(5, vec![cycle(5)]).unwrap();
        assert!(!c5.contains(&reflection(5), &caps).unwrap());
        assert!(c5.contains(&cycle(5).pow(3), &caps).unwrap());
        assert!(dihedral(5).contains(&reflection(5).compose(&cycle(5)), &caps).unwrap());
    }

    #[test]
    fn order_cap_names_the_cap() {
        let caps = Caps { order_cap: 100, ..Caps::default() };
        assert_eq!(symmetric(6).order(&caps), Err(CapError::Order(100)));
    }

    #[test]
    fn exponent_small_groups() {
        let caps = Caps::default();
        let v4 = PermGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(v4.exponent(&caps).unwrap(), 2);
        assert_eq!(dihedral(5).exponent(&caps).unwrap(), 10);
        let s3 = PermGroup::new(
            3,
            vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()],
        )
        .unwrap();
        assert_eq!(s3.exponent(&caps).unwrap(), 6);
        let capped = Caps { exponent_cap: 5, ..Caps::default() };
        assert_eq!(s3.exponent(&capped), Err(CapError::Exponent(5)));
    }

    #[test]
    fn normal_closures() {
        let caps = Caps::default();
        // Centre of D8 acting on a square: the half-turn.
        let d4 = dihedral(4);
        let half_turn = cycle(4).pow(2);
        let n = d4.normal_closure(std::slice::from_ref(&half_turn), &caps).unwrap();
        assert_eq!(n.order(&caps).unwrap(), 2);
        assert!(n.contains(&half_turn, &caps).unwrap());

        // The conjugates of a transposition generate all of S4; compare with brute force.
        let s4 = symmetric(4);
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let n = s4.normal_closure(std::slice::from_ref(&t), &caps).unwrap();
        let all = enumerate(&s4);
        let conj: Vec<Perm> = all.iter().map(|g| t.conjugate(g)).collect();
        let brute = enumerate(&PermGroup::new(4, conj).unwrap());
        assert_eq!(n.order(&caps).unwrap(), brute.len() as u128);
        assert_eq!(brute.len(), 24);

        // A 3-cycle in S4 closes to A4.
        let c = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(s4.normal_closure(&[c], &caps).unwrap().order(&caps).unwrap(), 12);
    }

    #[test]
    fn frattini_rank_small() {
        let caps = Caps::default();
        let e8 = PermGroup::new(
            6,
            vec![
                Perm::from_cycles(6, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(6, &[&[2, 3]]).unwrap(),
                Perm::from_cycles(6, &[&[4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(e8.frattini_rank(2, &caps).unwrap(), 3);
        assert_eq!(PermGroup::new(4, vec![cycle(4)]).unwrap().frattini_rank(2, &caps).unwrap(), 1);
        assert_eq!(dihedral(4).frattini_rank(2, &caps).unwrap(), 2);
        assert_eq!(dihedral(5).frattini_rank(2, &caps), Err(Error::NotPGroup));
    }

    #[test]
    fn order_is_independent_of_generator_order() {
        let caps = Caps::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let base = symmetric(7);
        let mut gens = base.generators().to_vec();
        gens.push(cycle(7).pow(3));
        gens.push(Perm::from_cycles(7, &[&[1, 4], &[2, 6]]).unwrap());
        for _ in 0..4 {
            gens.shuffle(&mut rng);
            assert_eq!(PermGroup::new(7, gens.clone()).unwrap().order(&caps).unwrap(), 5040);
        }
    }

    #[test]
    fn sifting_soundness() {
        let caps = Caps::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for g in [dihedral(9), symmetric(6)] {
            let chain = g.chain(&caps).unwrap();
            for s in g.generators() {
                assert!(chain.sift(s, 0).0.is_identity());
            }
            for _ in 0..20 {
                let mut x = Perm::identity(g.degree());
                for _ in 0..rng.gen_range(1..12) {
                    x = x.compose(g.generators().choose(&mut rng).unwrap());
                }
                assert!(chain.contains(&x));
            }
        }
    }
}
