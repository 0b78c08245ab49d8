//! Ages, twisted sectors and the Chen-Ruan cohomology of ℂⁿ/G for isolated
//! quotient singularities, plus the additive Chen-Ruan ranks of an exact
//! orbifold filling.
//!
//! For an isolated singularity every twisted sector is a point, so the
//! orbifold cup product reduces to counting pairs `(h₁, h₂)` with
//! `h₁ ∈ (g₁)`, `h₂ ∈ (g₂)`, `h₁h₂ ≠ Id` and `age(h₁) + age(h₂) = age(h₁h₂)`,
//! each weighted by `|C(h₁h₂)| / |C(h₁) ∩ C(h₂)|`. Whether pairs related by
//! simultaneous conjugation are counted once or separately is a convention;
//! both are implemented.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cyclotomic::Rational;
use crate::floer::CoefficientRing;
use crate::group::{FiniteUnitaryGroup, GroupError, IsolatedCheck};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChenRuanError {
    #[error("not an isolated singularity: element {witness} fixes a nonzero vector")]
    NonIsolated { witness: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub(crate) fn require_isolated(group: &FiniteUnitaryGroup) -> Result<(), ChenRuanError> {
    match group.is_isolated_singularity() {
        IsolatedCheck::Isolated => Ok(()),
        IsolatedCheck::NotIsolated { witness } => Err(ChenRuanError::NonIsolated { witness }),
    }
}

/// `age(g) = Σ m_i / o(g)` over the eigenvalues `e^{2πi m_i/o(g)}`.
pub fn age(group: &FiniteUnitaryGroup, element: usize) -> Result<Rational, GroupError> {
    Ok(group.eigen_multiplicities(element)?.age())
}

/// Parity of a rational degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    /// The denominator is even, so no ℤ/2 grading is induced.
    Indeterminate,
}

impl Parity {
    pub fn of(degree: &Rational) -> Parity {
        if degree.denom() % 2u32 == Zero::zero() {
            Parity::Indeterminate
        } else if degree.numer() % 2u32 == Zero::zero() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSector {
    /// Index into `group.classes()`.
    pub class: usize,
    pub label: String,
    pub age: Rational,
    /// `2 · age`.
    pub degree: Rational,
    pub centralizer_order: usize,
}

impl TwistedSector {
    pub fn parity(&self) -> Parity {
        Parity::of(&self.degree)
    }
}

/// One sector per conjugacy class, untwisted first, then by ascending degree.
pub fn twisted_sectors(group: &FiniteUnitaryGroup) -> Result<Vec<TwistedSector>, ChenRuanError> {
    require_isolated(group)?;
    Ok(sectors_unchecked(group))
}

fn sectors_unchecked(group: &FiniteUnitaryGroup) -> Vec<TwistedSector> {
    // classes are already sorted by age, then size, then representative
    group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| TwistedSector {
            class: i,
            label: c.label.clone(),
            age: c.age.clone(),
            degree: &c.age * Rational::from_integer(2.into()),
            centralizer_order: c.centralizer_order(),
        })
        .collect()
}

/// Summation domain for the cup-product structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Convention {
    /// Sum over every pair in the defining pair set.
    FullPairSum,
    /// Sum over one representative per simultaneous-conjugation orbit.
    OrbitRepresentativeSum,
}

impl Convention {
    /// The convention that passes the associativity sweep on the standard
    /// test battery (see the acceptance suite, which re-derives this).
    pub const DEFAULT: Convention = Convention::OrbitRepresentativeSum;

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::FullPairSum => "full-pair-sum",
            Convention::OrbitRepresentativeSum => "orbit-representative-sum",
        }
    }

    pub fn parse(s: &str) -> Option<Convention> {
        match s {
            "full-pair-sum" | "full" => Some(Convention::FullPairSum),
            "orbit-representative-sum" | "orbit" => Some(Convention::OrbitRepresentativeSum),
            _ => None,
        }
    }
}

/// Sparse linear combination of sectors: `(sector, coefficient)` sorted by
/// sector with no zero coefficients.
pub type SectorCombination = Vec<(usize, Rational)>;

/// `H*_CR(ℂⁿ/G)` as a graded ring with exact structure constants.
#[derive(Debug, Clone)]
pub struct CrRing {
    dimension: usize,
    convention: Convention,
    sectors: Vec<TwistedSector>,
    products: BTreeMap<(usize, usize), SectorCombination>,
}

impl CrRing {
    pub fn new(group: &FiniteUnitaryGroup, convention: Convention) -> Result<Self, ChenRuanError> {
        require_isolated(group)?;
        let sectors = sectors_unchecked(group);
        let order = group.order();
        let mut acc: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut visited = vec![false; order * order];
        for h1 in 1..order {
            for h2 in 1..order {
                let k = group.multiply(h1, h2);
                if k == 0 || group.age_of(h1) + group.age_of(h2) != *group.age_of(k) {
                    continue;
                }
                let (i, j, c) = (group.class_of(h1), group.class_of(h2), group.class_of(k));
                if sectors[c].degree != &sectors[i].degree + &sectors[j].degree {
                    return Err(ChenRuanError::InternalInconsistency(alloc::format!(
                        "degree additivity fails for sectors {i}, {j} -> {c}"
                    )));
                }
                if convention == Convention::OrbitRepresentativeSum {
                    if visited[h1 * order + h2] {
                        continue;
                    }
                    for g in 0..order {
                        let gi = group.inverse(g);
                        let a = group.multiply(group.multiply(g, h1), gi);
                        let b = group.multiply(group.multiply(g, h2), gi);
                        visited[a * order + b] = true;
                    }
                }
                let weight = Rational::new(
                    group.classes()[c].centralizer_order().into(),
                    group.centralizer_intersection(h1, h2).into(),
                );
                *acc.entry((i, j, c)).or_insert_with(Rational::zero) += weight;
            }
        }
        let mut products: BTreeMap<(usize, usize), SectorCombination> = BTreeMap::new();
        for ((i, j, c), w) in acc {
            if !w.is_zero() {
                products.entry((i, j)).or_default().push((c, w));
            }
        }
        Ok(CrRing { dimension: group.dimension(), convention, sectors, products })
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn sectors(&self) -> &[TwistedSector] {
        &self.sectors
    }

    pub fn rank(&self) -> usize {
        self.sectors.len()
    }

    /// `[i] ∪ [j]` on basis sectors. Sector 0 is the unit.
    pub fn cup(&self, i: usize, j: usize) -> SectorCombination {
        if i == 0 {
            return vec![(j, Rational::one())];
        }
        if j == 0 {
            return vec![(i, Rational::one())];
        }
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Product of two dense coefficient vectors of length `rank()`.
    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rank()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.cup(i, j) {
                    out[k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rank()];
        v[i] = Rational::one();
        v
    }

    /// Sector triples where `([a]∪[b])∪[c] ≠ [a]∪([b]∪[c])`.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                let ab = self.multiply(&self.basis(a), &self.basis(b));
                for c in 0..r {
                    let bc = self.multiply(&self.basis(b), &self.basis(c));
                    if self.multiply(&ab, &self.basis(c)) != self.multiply(&self.basis(a), &bc) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Sector pairs where `[a]∪[b] ≠ [b]∪[a]`.
    pub fn commutativity_failures(&self) -> Vec<(usize, usize)> {
        let r = self.rank();
        (0..r)
            .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
            .filter(|&(a, b)| self.cup(a, b) != self.cup(b, a))
            .collect()
    }
}

/// One line of the pairing check: sector `sector` against the sector of
/// inverse elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingEntry {
    pub sector: usize,
    pub inverse_sector: usize,
    pub degree: Rational,
    pub complementary_degree: Rational,
    /// `age(g) + age(g⁻¹)`; must equal n for nontrivial classes.
    pub age_sum: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub dimension: usize,
    pub entries: Vec<PairingEntry>,
}

impl PairingReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Checks `age(g) + age(g⁻¹) = n` for every nontrivial class and pairs each
/// sector with the inverse-class sector in degree `2n − degree`.
pub fn cr_pairing_check(group: &FiniteUnitaryGroup, ring: &CrRing) -> PairingReport {
    let n = Rational::from_integer(ring.dimension().into());
    let two_n = &n * Rational::from_integer(2.into());
    let entries = ring
        .sectors()
        .iter()
        .enumerate()
        .map(|(s, sec)| {
            let inv = group.inverse_class(sec.class);
            let inv_sector = ring.sectors().iter().position(|t| t.class == inv).expect("every class has a sector");
            let age_sum = &sec.age + &ring.sectors()[inv_sector].age;
            let complementary_degree = &two_n - &sec.degree;
            let ok = if s == 0 {
                inv_sector == 0
            } else {
                age_sum == n && ring.sectors()[inv_sector].degree == complementary_degree
            };
            PairingEntry {
                sector: s,
                inverse_sector: inv_sector,
                degree: sec.degree.clone(),
                complementary_degree,
                age_sum,
                ok,
            }
        })
        .collect();
    PairingReport { dimension: ring.dimension(), entries }
}

/// Input to the additive Chen-Ruan computation for an exact orbifold filling.
#[derive(Debug, Clone)]
pub struct FillingCrProfile<'a> {
    /// Free ranks of `H^k(W; R)` of the underlying space, indexed by k.
    pub betti: Vec<u64>,
    pub singularities: Vec<&'a FiniteUnitaryGroup>,
    pub coefficient: CoefficientRing,
    /// Torsion description of the underlying space, copied through unchanged.
    pub torsion_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRanks {
    pub ranks: BTreeMap<Rational, u64>,
    pub coefficient: CoefficientRing,
    pub torsion_note: Option<String>,
}

impl GradedRanks {
    pub fn total(&self) -> u64 {
        self.ranks.values().sum()
    }
}

/// `H*(W; R)` plus one rank-one summand in degree `2·age(g)` for every
/// nontrivial class of every singularity.
pub fn cr_of_filling(profile: &FillingCrProfile<'_>) -> Result<GradedRanks, ChenRuanError> {
    let mut ranks: BTreeMap<Rational, u64> = BTreeMap::new();
    for (k, &b) in profile.betti.iter().enumerate() {
        if b > 0 {
            *ranks.entry(Rational::from_integer(k.into())).or_insert(0) += b;
        }
    }
    for g in &profile.singularities {
        for sector in twisted_sectors(g)?.into_iter().skip(1) {
            *ranks.entry(sector.degree).or_insert(0) += 1;
        }
    }
    Ok(GradedRanks { ranks, coefficient: profile.coefficient, torsion_note: profile.torsion_note.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn degrees(g: &FiniteUnitaryGroup) -> Vec<Rational> {
        twisted_sectors(g).unwrap().into_iter().map(|s| s.degree).collect()
    }

    #[test]
    fn ages() {
        let g = catalog::antipodal(5).enumerate(10).unwrap();
        assert_eq!(age(&g, 0).unwrap(), q(0, 1));
        assert_eq!(age(&g, 1).unwrap(), q(5, 2));
        for k in 2..=8 {
            let g = catalog::a_type(k).enumerate(10).unwrap();
            assert_eq!(age(&g, g.generator_indices()[0]).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn sector_degrees() {
        for n in 2..=4 {
            let g = catalog::antipodal(n).enumerate(10).unwrap();
            assert_eq!(degrees(&g), [q(0, 1), q(n as i64, 1)]);
        }
        let g = catalog::scalar_cyclic(3, 2).enumerate(10).unwrap();
        assert_eq!(degrees(&g), [q(0, 1), q(4, 3), q(8, 3)]);
        let g = catalog::quaternion().enumerate(10).unwrap();
        assert_eq!(degrees(&g), [q(0, 1), q(2, 1), q(2, 1), q(2, 1), q(2, 1)]);
    }

    #[test]
    fn non_isolated_is_rejected() {
        let g = catalog::diagonal_cyclic(2, &[1, 0]).enumerate(10).unwrap();
        let w = g.generator_indices()[0];
        assert_eq!(twisted_sectors(&g).unwrap_err(), ChenRuanError::NonIsolated { witness: w });
        assert!(CrRing::new(&g, Convention::DEFAULT).is_err());
    }

    #[test]
    fn cup_examples() {
        let g = catalog::scalar_cyclic(3, 2).enumerate(10).unwrap();
        for conv in [Convention::FullPairSum, Convention::OrbitRepresentativeSum] {
            let r = CrRing::new(&g, conv).unwrap();
            for x in 0..r.rank() {
                assert_eq!(r.cup(0, x), [(x, q(1, 1))]);
            }
            assert_eq!(r.cup(1, 1), [(2, q(1, 1))]);
            // τ·τ² = Id is excluded
            assert!(r.cup(1, 2).is_empty());
        }
        let qg = catalog::quaternion().enumerate(10).unwrap();
        for conv in [Convention::FullPairSum, Convention::OrbitRepresentativeSum] {
            let r = CrRing::new(&qg, conv).unwrap();
            for i in 1..r.rank() {
                for j in 1..r.rank() {
                    assert!(r.cup(i, j).is_empty(), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn parity() {
        assert_eq!(Parity::of(&q(4, 3)), Parity::Even);
        assert_eq!(Parity::of(&q(3, 1)), Parity::Odd);
        assert_eq!(Parity::of(&q(3, 2)), Parity::Indeterminate);
    }

    #[test]
    fn pairing() {
        let g = catalog::scalar_cyclic(3, 2).enumerate(10).unwrap();
        let r = CrRing::new(&g, Convention::DEFAULT).unwrap();
        let rep = cr_pairing_check(&g, &r);
        assert!(rep.all_pass());
        assert_eq!(rep.entries[1].age_sum, q(2, 1));
        assert_eq!(rep.entries[1].inverse_sector, 2);
    }

    #[test]
    fn filling_ranks() {
        let z2 = catalog::antipodal(3).enumerate(10).unwrap();
        let p = FillingCrProfile {
            betti: vec![1],
            singularities: vec![&z2],
            coefficient: CoefficientRing::Rationals,
            torsion_note: None,
        };
        let r = cr_of_filling(&p).unwrap();
        assert_eq!(r.total(), 2);
        assert_eq!(r.ranks.keys().cloned().collect::<Vec<_>>(), [q(0, 1), q(3, 1)]);
        let two = FillingCrProfile { singularities: vec![&z2, &z2], ..p.clone() };
        assert_eq!(cr_of_filling(&two).unwrap().total(), 3);
        let none = FillingCrProfile { betti: vec![1, 0, 2], singularities: vec![], ..p };
        let r = cr_of_filling(&none).unwrap();
        assert_eq!(r.ranks.len(), 2);
        assert_eq!(r.ranks[&q(2, 1)], 2);
    }
}
