use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{smith_normal_form, FiniteAbelianGroup, GroupElement, SmithPresentation};

/// Invariant-factor structure of a finite abelian group given concretely as a
/// set of elements with a multiplication rule, with discrete logarithms for
/// every element.
///
/// Generators are chosen greedily in the supplied element order, so the
/// presentation is deterministic.
#[derive(Debug, Clone)]
pub struct AbstractGroup<T> {
    presentation: SmithPresentation,
    generators: Vec<T>,
    reps: HashMap<T, Vec<BigInt>>,
}

impl<T: Clone + Eq + Hash> AbstractGroup<T> {
    pub fn analyze(elements: &[T], identity: &T, op: impl Fn(&T, &T) -> T) -> Self {
        let mut generators: Vec<T> = Vec::new();
        // one word over the generators for every element reached so far
        let mut reps: HashMap<T, Vec<BigInt>> = HashMap::new();
        reps.insert(identity.clone(), Vec::new());

        for x in elements {
            if reps.contains_key(x) {
                continue;
            }
            generators.push(x.clone());
            let j = generators.len() - 1;
            // close the span under multiplication by the new generator
            let mut frontier: Vec<T> = reps.keys().cloned().collect();
            while let Some(y) = frontier.pop() {
                let mut w = reps[&y].clone();
                w.resize(generators.len(), BigInt::zero());
                let z = op(&y, x);
                if !reps.contains_key(&z) {
                    let mut wz = w.clone();
                    wz[j] += 1;
                    reps.insert(z.clone(), wz);
                    frontier.push(z);
                }
            }
        }
        let k = generators.len();
        for w in reps.values_mut() {
            w.resize(k, BigInt::zero());
        }
        assert_eq!(reps.len(), elements.len(), "multiplication does not close");

        // relation lattice: rep(x) + e_j - rep(x * g_j) for all x, j
        let mut relations: Vec<Vec<BigInt>> = Vec::new();
        for (x, w) in &reps {
            for (j, g) in generators.iter().enumerate() {
                let z = op(x, g);
                let wz = &reps[&z];
                let mut rel = vec![BigInt::zero(); k];
                for i in 0..k {
                    rel[i] = &w[i] - &wz[i];
                }
                rel[j] += 1;
                if rel.iter().any(|c| !c.is_zero()) {
                    relations.push(rel);
                }
            }
        }
        let presentation = smith_normal_form(&relations, k);
        assert_eq!(
            presentation.group().order(),
            Some(BigInt::from(elements.len())),
            "presentation order disagrees with element count"
        );
        AbstractGroup {
            presentation,
            generators,
            reps,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.presentation.group()
    }

    /// Discrete log of a concrete element in invariant coordinates.
    pub fn dlog(&self, x: &T) -> Option<GroupElement> {
        let w = self.reps.get(x)?;
        Some(self.presentation.project(w))
    }

    /// A word over the concrete generators realizing an invariant-coordinate
    /// element: pairs (generator, exponent).
    pub fn word_for(&self, e: &GroupElement) -> Vec<(T, BigInt)> {
        let coords = self.presentation.lift(e);
        self.generators
            .iter()
            .cloned()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    pub fn presentation(&self) -> &SmithPresentation {
        &self.presentation
    }
}
