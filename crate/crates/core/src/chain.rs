//! Stabilizer chains built from Schreier generators.
//!
//! The chain gives a group-order computation (product of orbit lengths along
//! the chain) that shares no code with breadth-first element enumeration, so
//! the two serve as independent cross-checks. Generator sets are carried
//! verbatim from Schreier's lemma at every level; no sifting heuristics are
//! applied, which keeps the construction exactly correct at the cost of
//! larger generator lists than a tuned implementation would keep.

use crate::perm::{FiniteAction, Permutation};
use std::collections::HashMap;

struct Level {
    base: usize,
    orbit: Vec<usize>,
    transversal: HashMap<usize, Permutation>,
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(action: &FiniteAction) -> Self {
        let degree = action.degree();
        let mut levels = Vec::new();
        let mut gens: Vec<Permutation> = action
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        dedup(&mut gens);
        while !gens.is_empty() {
            let base = (0..degree)
                .find(|&p| gens.iter().any(|g| g.apply(p) != p))
                .expect("nonidentity generator moves some point");
            let level = explore(base, &gens, degree);
            let mut next: Vec<Permutation> = Vec::new();
            for &beta in &level.orbit {
                let u_beta = &level.transversal[&beta];
                for g in &gens {
                    let target = g.apply(beta);
                    let u_target = &level.transversal[&target];
                    let schreier = u_target.inverse().compose(g).compose(u_beta);
                    if !schreier.is_identity() {
                        next.push(schreier);
                    }
                }
            }
            dedup(&mut next);
            levels.push(level);
            gens = next;
        }
        StabilizerChain { degree, levels }
    }

    /// Group order as the product of orbit lengths along the chain.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership by sifting through the transversals.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let mut residue = p.clone();
        for level in &self.levels {
            let beta = residue.apply(level.base);
            match level.transversal.get(&beta) {
                Some(u) => residue = u.inverse().compose(&residue),
                None => return false,
            }
        }
        residue.is_identity()
    }
}

fn explore(base: usize, gens: &[Permutation], _degree: usize) -> Level {
    let mut orbit = vec![base];
    let mut transversal = HashMap::new();
    transversal.insert(base, Permutation::identity(gens[0].degree()));
    let mut i = 0;
    while i < orbit.len() {
        let beta = orbit[i];
        let u_beta = transversal[&beta].clone();
        for g in gens {
            let target = g.apply(beta);
            if !transversal.contains_key(&target) {
                transversal.insert(target, g.compose(&u_beta));
                orbit.push(target);
            }
        }
        i += 1;
    }
    Level {
        base,
        orbit,
        transversal,
    }
}

fn dedup(gens: &mut Vec<Permutation>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| seen.insert(g.clone()));
}
