//! Permutation groups with an ordered generator list and a stabilizer chain
//! (deterministic Schreier–Sims).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::Word;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// Orbit position of each point, or `NOT_IN_ORBIT`.
    position: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    /// Number of generators whose Schreier generator at each orbit position
    /// is known to sift.
    checked: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut position = vec![NOT_IN_ORBIT; degree];
        position[base_point] = 0;
        Self {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point as u32],
            position,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k] as usize;
            for g in &self.generators {
                let gamma = g.image(beta);
                if self.position[gamma] == NOT_IN_ORBIT {
                    self.position[gamma] = self.orbit.len() as u32;
                    self.orbit.push(gamma as u32);
                    let rep = self.reps[k].then(g);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base_point) == l.base_point) {
                let b = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for level in chain.levels.iter_mut() {
                level.generators.push(g.clone());
                if g.image(level.base_point) != level.base_point {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.extend_orbit();
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            match self.find_failing_schreier_generator(iu) {
                None => i -= 1,
                Some((residue, depth)) => {
                    if depth == self.levels.len() {
                        let b = residue.smallest_moved_point().expect("non-identity");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in iu + 1..=depth {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].extend_orbit();
                    }
                    i = depth as isize;
                }
            }
        }
    }

    fn find_failing_schreier_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            while self.levels[i].checked[k] < self.levels[i].generators.len() {
                let level = &self.levels[i];
                let s = &level.generators[level.checked[k]];
                let beta = level.orbit[k] as usize;
                let image = s.image(beta);
                let target = level.position[image] as usize;
                let mut h = level.reps[k].then(s);
                h.then_assign(&level.reps_inv[target]);
                self.levels[i].checked[k] += 1;
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = self.strip(h, i + 1);
                if depth < self.levels.len() || !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
            k += 1;
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it went all the way through).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base_point);
            let k = level.position[beta];
            if k == NOT_IN_ORBIT {
                return (g, l);
            }
            g.then_assign(&level.reps_inv[k as usize]);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, depth) = self.strip(g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    /// Calls `f` on every element, as products of transversal elements.
    fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        let depth = self.levels.len();
        if depth == 0 {
            f(&Permutation::identity(self.degree));
            return;
        }
        // partial[l] = reps at levels l..depth-1 multiplied deepest first.
        let mut idx = vec![0usize; depth];
        let mut partial: Vec<Permutation> = vec![Permutation::identity(self.degree); depth + 1];
        for l in (0..depth).rev() {
            partial[l] = partial[l + 1].then(&self.levels[l].reps[0]);
        }
        loop {
            f(&partial[0]);
            let mut l = 0;
            loop {
                idx[l] += 1;
                if idx[l] < self.levels[l].orbit.len() {
                    break;
                }
                idx[l] = 0;
                l += 1;
                if l == depth {
                    return;
                }
            }
            for m in (0..=l).rev() {
                partial[m] = partial[m + 1].then(&self.levels[m].reps[idx[m]]);
            }
        }
    }
}

/// A permutation group with an ordered generator list (position `i` holds
/// the `i`-th distinguished generator) and its stabilizer chain.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
    order: BigUint,
}

impl GeneratedGroup {
    pub fn close_and_order(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let chain = StabilizerChain::new(degree, &generators);
        let order = chain.order();
        Ok(Self {
            degree,
            generators,
            chain,
            order,
        })
    }

    /// Infers the degree from the first generator.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators.first().map(|g| g.degree()).unwrap_or(0);
        Self::close_and_order(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::close_and_order(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.chain.contains(x))
    }

    /// Evaluates `w` in the ordered generators.
    pub fn evaluate(&self, w: &Word) -> Result<Permutation> {
        w.check(self.generators.len())?;
        let mut p = Permutation::identity(self.degree);
        for l in w.letters() {
            let g = &self.generators[l.generator];
            if l.inverse {
                p.then_assign(&g.inverse());
            } else {
                p.then_assign(g);
            }
        }
        Ok(p)
    }

    pub fn subgroup(&self, words: &[Word]) -> Result<GeneratedGroup> {
        let gens = words
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>>>()?;
        Self::close_and_order(self.degree, gens)
    }

    /// Subgroup generated by the ordered generators with the given indices.
    pub fn generator_subgroup(&self, indices: impl IntoIterator<Item = usize>) -> GeneratedGroup {
        let gens = indices
            .into_iter()
            .map(|i| self.generators[i].clone())
            .collect();
        Self::close_and_order(self.degree, gens).expect("same degree")
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        match self.order.to_usize() {
            Some(n) if n <= cap => Ok(()),
            _ => Err(Error::CapExceeded {
                order: self.order.to_string(),
                cap,
            }),
        }
    }

    /// All elements, sorted by their images of the base points.
    pub fn element_list(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.check_cap(cap)?;
        let base = self.chain.base();
        let mut keyed = Vec::new();
        self.chain.for_each_element(|g| {
            let key: Vec<usize> = base.iter().map(|&b| g.image(b)).collect();
            keyed.push((key, g.clone()));
        });
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(keyed.into_iter().map(|(_, g)| g).collect())
    }

    /// `a ∩ b`, by running through the smaller group and testing membership
    /// in the larger.
    pub fn intersection(&self, other: &GeneratedGroup, cap: usize) -> Result<GeneratedGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let (small, large) = if self.order <= other.order {
            (self, other)
        } else {
            (other, self)
        };
        small.check_cap(cap)?;
        let mut found: Vec<Permutation> = Vec::new();
        let mut current = StabilizerChain::new(self.degree, &[]);
        small.chain.for_each_element(|g| {
            if !g.is_identity() && large.chain.contains(g) && !current.contains(g) {
                found.push(g.clone());
                current = StabilizerChain::new(self.degree, &found);
            }
        });
        Self::close_and_order(self.degree, found)
    }

    /// The mix: generator `i` is `self.generators[i]` beside
    /// `other.generators[i]`, acting on the disjoint union of the domains.
    pub fn diagonal_mix(&self, other: &GeneratedGroup) -> Result<GeneratedGroup> {
        if self.generators.len() != other.generators.len() {
            return Err(Error::RankMismatch(
                self.generators.len() + 1,
                other.generators.len() + 1,
            ));
        }
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| a.juxtapose(b))
            .collect();
        Self::close_and_order(self.degree + other.degree, gens)
    }

    /// Restriction of every generator to the invariant block `start..start+len`.
    pub fn project(&self, start: usize, len: usize) -> Result<GeneratedGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict(start, len))
            .collect();
        Self::close_and_order(len, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    /// Breadth-first closure, used as an independent order oracle.
    fn brute_force_closure(d: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(d);
        let mut frontier = vec![id.clone()];
        seen.insert(id);
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn a4_on_four_points() {
        let gens = vec![perm(4, &[&[1, 2, 3]]), perm(4, &[&[2, 3, 4]])];
        assert_eq!(brute_force_closure(4, &gens).len(), 12);
        let g = GeneratedGroup::close_and_order(4, gens).unwrap();
        assert_eq!(*g.order(), BigUint::from(12u32));
    }

    #[test]
    fn trivial_group() {
        let g = GeneratedGroup::close_and_order(5, vec![]).unwrap();
        assert_eq!(*g.order(), BigUint::one());
        assert!(g.contains(&Permutation::identity(5)).unwrap());
        assert_eq!(g.element_list(10).unwrap(), vec![Permutation::identity(5)]);
    }

    #[test]
    fn degree_mismatch() {
        let r = GeneratedGroup::close_and_order(4, vec![perm(3, &[&[1, 2]])]);
        assert_eq!(r.unwrap_err(), Error::DegreeMismatch(4, 3));
        let g = GeneratedGroup::trivial(3);
        assert!(g.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn membership() {
        let g = GeneratedGroup::close_and_order(3, vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        assert!(!g.contains(&perm(3, &[&[1, 2]])).unwrap());
        assert!(g.contains(&Permutation::identity(3)).unwrap());
        for x in g.generators() {
            assert!(g.contains(x).unwrap());
        }
        assert_eq!(g.element_list(3).unwrap().len(), 3);
        assert!(g.element_list(2).is_err());
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=8usize {
            let cycle: Vec<usize> = (1..=n).collect();
            let gens = vec![perm(n, &[&[1, 2]]), perm(n, &[&cycle])];
            let g = GeneratedGroup::close_and_order(n, gens).unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(*g.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn element_list_is_sorted_and_distinct() {
        let gens = vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[2, 5], &[3, 4]])];
        let g = GeneratedGroup::close_and_order(5, gens).unwrap();
        let els = g.element_list(100).unwrap();
        assert_eq!(els.len(), 10);
        let set: HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), 10);
        let base = g.chain().base();
        let keys: Vec<Vec<usize>> = els
            .iter()
            .map(|x| base.iter().map(|&b| x.image(b)).collect())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn intersections() {
        let a = GeneratedGroup::close_and_order(4, vec![perm(4, &[&[1, 2]])]).unwrap();
        let b = GeneratedGroup::close_and_order(4, vec![perm(4, &[&[3, 4]])]).unwrap();
        assert_eq!(*a.intersection(&b, 100).unwrap().order(), BigUint::one());
        let s4 = GeneratedGroup::close_and_order(
            4,
            vec![perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])],
        )
        .unwrap();
        let a4 = GeneratedGroup::close_and_order(
            4,
            vec![perm(4, &[&[1, 2, 3]]), perm(4, &[&[2, 3, 4]])],
        )
        .unwrap();
        assert_eq!(*s4.intersection(&s4, 100).unwrap().order(), BigUint::from(24u32));
        let d8 = GeneratedGroup::close_and_order(
            4,
            vec![perm(4, &[&[1, 2, 3, 4]]), perm(4, &[&[1, 3]])],
        )
        .unwrap();
        // D8 ∩ A4 is the Klein four-group.
        assert_eq!(*d8.intersection(&a4, 100).unwrap().order(), BigUint::from(4u32));
        assert!(s4.intersection(&a4, 3).is_err());
    }

    #[test]
    fn diagonal_mix_of_cyclic_groups() {
        let a = GeneratedGroup::close_and_order(3, vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        let b = GeneratedGroup::close_and_order(2, vec![perm(2, &[&[1, 2]])]).unwrap();
        let m = a.diagonal_mix(&b).unwrap();
        assert_eq!(*m.order(), BigUint::from(6u32));
        assert_eq!(*m.project(0, 3).unwrap().order(), BigUint::from(3u32));
        assert_eq!(*m.project(3, 2).unwrap().order(), BigUint::from(2u32));
        let mm = a.diagonal_mix(&a).unwrap();
        assert_eq!(mm.order(), a.order());
        let two = GeneratedGroup::close_and_order(2, vec![perm(2, &[&[1, 2]]), perm(2, &[])]).unwrap();
        assert_eq!(a.diagonal_mix(&two).unwrap_err(), Error::RankMismatch(2, 3));
    }

    #[test]
    fn subgroup_from_words() {
        let s4 = GeneratedGroup::close_and_order(
            4,
            vec![perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])],
        )
        .unwrap();
        let h = s4.subgroup(&[Word::generator(1)]).unwrap();
        assert_eq!(*h.order(), BigUint::from(4u32));
        assert!(s4.subgroup(&[Word::generator(2)]).is_err());
        assert_eq!(*s4.subgroup(&[]).unwrap().order(), BigUint::one());
    }
}
