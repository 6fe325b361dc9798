//! Deterministic incremental Schreier-Sims.
//!
//! Level `i` stores a base point, the strong generators fixing the earlier
//! base points, and an explicit transversal for the orbit of the base point.
//! Every Schreier generator is sifted exactly once; non-trivial residues are
//! added as new strong generators at every level they belong to.

use crate::caps::{CapError, Caps};
use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x] = (u, u⁻¹)` with `base^u = x`.
    transversal: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Perm::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Builder<'a> {
    chain: StabChain,
    caps: &'a Caps,
    steps: u64,
}

impl StabChain {
    /// Builds a chain whose base starts with `prefix`; further base points are
    /// the first point moved by each new residue.
    pub fn build(degree: usize, gens: &[Perm], prefix: &[usize], caps: &Caps) -> Result<Self, CapError> {
        let chain = StabChain { degree, levels: prefix.iter().map(|&b| Level::new(b, degree)).collect() };
        let mut builder = Builder { chain, caps, steps: 0 };
        for g in gens {
            builder.insert(0, g.clone())?;
        }
        Ok(builder.chain)
    }

    /// Adds `g` to the group; returns whether the group grew.
    pub fn insert(&mut self, g: &Perm, caps: &Caps) -> Result<bool, CapError> {
        if self.contains(g) {
            return Ok(false);
        }
        let chain = std::mem::replace(self, StabChain { degree: self.degree, levels: Vec::new() });
        let mut builder = Builder { chain, caps, steps: 0 };
        let result = builder.insert(0, g.clone());
        *self = builder.chain;
        result.map(|()| true)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    /// Residue of `g` and the level at which sifting stopped.
    pub fn sift(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            match &level.transversal[h.apply(level.base)] {
                None => return (h, i),
                Some((_, u_inv)) => h = h.compose(u_inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Orbit of the first base point, in discovery order.
    pub fn base_orbit(&self) -> &[usize] {
        self.levels.first().map_or(&[], |l| &l.orbit)
    }

    /// An element mapping the first base point to `x`, if one exists.
    pub fn transversal_element(&self, x: usize) -> Option<&Perm> {
        self.levels.first()?.transversal[x].as_ref().map(|(u, _)| u)
    }

    /// Strong generators of the stabilizer of the first `k` base points.
    pub fn strong_generators(&self, k: usize) -> &[Perm] {
        self.levels.get(k).map_or(&[], |l| &l.gens)
    }

    /// The chain for the stabilizer of the first base point.
    pub fn drop_first(&self) -> StabChain {
        StabChain { degree: self.degree, levels: self.levels.iter().skip(1).cloned().collect() }
    }

    /// Visits every group element exactly once.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        fn rec(levels: &[Level], acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for &x in &last.orbit {
                        let (u, _) = last.transversal[x].as_ref().expect("orbit point has a representative");
                        rec(rest, &acc.compose(u), f);
                    }
                }
            }
        }
        rec(&self.levels, &Perm::identity(self.degree), &mut f);
    }
}

impl Builder<'_> {
    fn insert(&mut self, start: usize, g: Perm) -> Result<(), CapError> {
        let (h, j) = self.chain.sift(&g, start);
        if h.is_identity() {
            return Ok(());
        }
        if j == self.chain.levels.len() {
            let base = h.first_moved_point().expect("non-identity residue moves a point");
            self.chain.levels.push(Level::new(base, self.chain.degree));
        }
        for i in (start..=j).rev() {
            self.add_generator(i, h.clone())?;
        }
        Ok(())
    }

    fn add_generator(&mut self, i: usize, g: Perm) -> Result<(), CapError> {
        let level = &mut self.chain.levels[i];
        level.gens.push(g);
        let new_gen = level.gens.len() - 1;
        let old_points = level.orbit.len();
        for k in 0..old_points {
            self.schreier_step(i, k, new_gen)?;
        }
        let mut k = old_points;
        while k < self.chain.levels[i].orbit.len() {
            for s in 0..self.chain.levels[i].gens.len() {
                self.schreier_step(i, k, s)?;
            }
            k += 1;
        }
        Ok(())
    }

    fn schreier_step(&mut self, i: usize, k: usize, s: usize) -> Result<(), CapError> {
        self.steps += 1;
        if self.steps.is_multiple_of(256) {
            self.caps.check_time()?;
        }
        let level = &mut self.chain.levels[i];
        let x = level.orbit[k];
        let g = &level.gens[s];
        let y = g.apply(x);
        let (u_x, _) = level.transversal[x].as_ref().expect("orbit point has a representative");
        let ux_g = u_x.compose(g);
        match &level.transversal[y] {
            None => {
                let inv = ux_g.inverse();
                level.transversal[y] = Some((ux_g, inv));
                level.orbit.push(y);
                self.caps.check_order(self.chain.order())?;
                Ok(())
            }
            Some((_, u_y_inv)) => {
                let schreier = ux_g.compose(u_y_inv);
                if schreier.is_identity() {
                    return Ok(());
                }
                self.insert(i + 1, schreier)
            }
        }
    }
}
