//! Seeded random battery of composable span pairs.

use orbifill_core::cyclotomic::Rational;
use orbifill_core::span::{composition_check, extend_homomorphism, PointOrbifoldSpan, SpanError, TableGroup};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Small groups by name: trivial, cyclic, dihedral, dicyclic, products of
/// two cyclic groups and S3, A4, S4, all of order at most `max_order`.
pub fn library(max_order: usize) -> Vec<(String, TableGroup)> {
    let mut out = vec![("trivial".to_string(), TableGroup::trivial())];
    for m in 2..=max_order {
        out.push((format!("cyclic:{m}"), TableGroup::cyclic(m)));
    }
    for m in 2..=max_order / 2 {
        out.push((format!("dihedral:{m}"), TableGroup::dihedral(m)));
    }
    for m in 2..=max_order / 4 {
        out.push((format!("dicyclic:{m}"), TableGroup::dicyclic(m)));
    }
    for a in 2..=max_order {
        for b in a..=max_order / a {
            out.push((format!("cyclic:{a}xcyclic:{b}"), TableGroup::cyclic(a).product(&TableGroup::cyclic(b))));
        }
    }
    for (name, order, g) in [
        ("alternating:4", 12, TableGroup::alternating4 as fn() -> TableGroup),
        ("symmetric:4", 24, TableGroup::symmetric4),
    ] {
        if order <= max_order {
            out.push((name.to_string(), g()));
        }
    }
    out
}

/// Looks up `cyclic:m`, `dihedral:m` (order 2m), `dicyclic:m` (order 4m),
/// `quaternion`, `symmetric:3`, `alternating:4`, `symmetric:4`, `trivial`,
/// or a product `A x B` of any of these.
pub fn library_group(name: &str) -> Option<TableGroup> {
    if let Some((a, b)) = name.split_once('x') {
        if let (Some(a), Some(b)) = (library_group(a.trim()), library_group(b.trim())) {
            return Some(a.product(&b));
        }
    }
    let (kind, arg) = match name.trim().split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim().parse::<usize>().ok()?)),
        None => (name.trim(), None),
    };
    match (kind, arg) {
        ("trivial", None) => Some(TableGroup::trivial()),
        ("quaternion", None) => Some(TableGroup::quaternion()),
        ("cyclic", Some(m)) if m >= 1 => Some(TableGroup::cyclic(m)),
        ("dihedral", Some(m)) if m >= 1 => Some(TableGroup::dihedral(m)),
        ("dicyclic", Some(m)) if m >= 1 => Some(TableGroup::dicyclic(m)),
        ("symmetric", Some(3)) => Some(TableGroup::symmetric3()),
        ("symmetric", Some(4)) => Some(TableGroup::symmetric4()),
        ("alternating", Some(4)) => Some(TableGroup::alternating4()),
        _ => None,
    }
}

const HOM_ATTEMPTS: usize = 32;

/// A random homomorphism `src → dst` from random generator images; the
/// trivial map when no attempt extends.
pub fn random_homomorphism(rng: &mut impl Rng, src: &TableGroup, dst: &TableGroup) -> Vec<usize> {
    let gens = src.generators();
    for _ in 0..HOM_ATTEMPTS {
        let images: Vec<usize> = gens.iter().map(|_| rng.random_range(0..dst.order())).collect();
        if let Some(map) = extend_homomorphism(src, dst, &gens, &images) {
            return map;
        }
    }
    vec![0; src.order()]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub index: u64,
    /// Names of G₁, H₁, H₂, G₂, H₃.
    pub groups: [String; 5],
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
    pub orbits: usize,
}

#[derive(Debug, Clone)]
pub struct BatteryOutcome {
    pub trials: Vec<Trial>,
}

impl BatteryOutcome {
    pub fn all_equal(&self) -> bool {
        self.trials.iter().all(|t| t.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Trial> {
        self.trials.iter().filter(|t| !t.equal)
    }
}

/// Trial `i` draws from its own ChaCha stream `i` under `seed`, so any trial
/// can be replayed alone.
pub fn run_trial(seed: u64, index: u64, lib: &[(String, TableGroup)]) -> Result<Trial, SpanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut pick = || lib.choose(&mut rng).expect("nonempty library").clone();
    let picks = [pick(), pick(), pick(), pick(), pick()];
    let [g1, h1, h2, g2, h3] = picks.clone().map(|(_, g)| g);
    let s1 = random_homomorphism(&mut rng, &g1, &h1);
    let t1 = random_homomorphism(&mut rng, &g1, &h2);
    let s2 = random_homomorphism(&mut rng, &g2, &h2);
    let t2 = random_homomorphism(&mut rng, &g2, &h3);
    let span1 = PointOrbifoldSpan::new(h1, g1, h2.clone(), s1, t1)?;
    let span2 = PointOrbifoldSpan::new(h2, g2, h3, s2, t2)?;
    let c = composition_check(&span1, &span2)?;
    Ok(Trial {
        index,
        groups: picks.map(|(n, _)| n),
        lhs: c.lhs,
        rhs: c.rhs,
        equal: c.equal,
        orbits: c.decomposition.orbits.len(),
    })
}

pub fn run(trials: u64, seed: u64, max_order: usize) -> Result<BatteryOutcome, SpanError> {
    let lib = library(max_order.max(1));
    let trials = (0..trials).map(|i| run_trial(seed, i, &lib)).collect::<Result<_, _>>()?;
    Ok(BatteryOutcome { trials })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_respects_the_cap() {
        let lib = library(24);
        assert!(lib.iter().all(|(_, g)| g.order() <= 24));
        assert!(lib.iter().any(|(n, _)| n == "symmetric:4"));
        assert!(library(7).iter().all(|(_, g)| g.order() <= 7));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(library_group("dihedral:4").unwrap().order(), 8);
        assert_eq!(library_group("dicyclic:2").unwrap().order(), 8);
        assert_eq!(library_group("cyclic:2xcyclic:3").unwrap().order(), 6);
        assert_eq!(library_group("quaternion").unwrap().order(), 8);
        assert!(library_group("cyclic:x").is_none());
        assert!(library_group("klein").is_none());
        for (n, g) in library(12) {
            assert_eq!(library_group(&n).unwrap().order(), g.order(), "{n}");
        }
    }

    #[test]
    fn trials_replay() {
        let lib = library(12);
        let a = run(20, 7, 12).unwrap();
        assert!(a.all_equal());
        assert_eq!(run_trial(7, 13, &lib).unwrap(), a.trials[13]);
        let b = run(20, 8, 12).unwrap();
        assert_ne!(a.trials, b.trials);
    }
}
