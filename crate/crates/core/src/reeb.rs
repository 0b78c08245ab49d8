//! Reeb orbit families of the standard contact form on S²ⁿ⁻¹/G, their
//! Conley-Zehnder indices, and the discrepancy test for terminality.
//!
//! Periods are measured in units of 2π, so the simple orbit of the round
//! sphere has period 1. An element g with eigenvalue ζ_o^m of multiplicity
//! d contributes a family of dimension `2d − 1` at every period `m/o + k`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::chen_ruan::{require_isolated, ChenRuanError};
use crate::cyclotomic::Rational;
use crate::group::FiniteUnitaryGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReebError {
    #[error("not an isolated singularity: element {witness} fixes a nonzero vector")]
    NonIsolated { witness: usize },
    #[error("slope {slope} lies on the period spectrum of class {class}")]
    SlopeOnSpectrum { class: String, slope: Rational },
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(Rational),
    #[error("Morse index {index} exceeds {max} = dim B")]
    MorseIndexOutOfRange { index: u32, max: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl From<ChenRuanError> for ReebError {
    fn from(e: ChenRuanError) -> Self {
        match e {
            ChenRuanError::NonIsolated { witness } => ReebError::NonIsolated { witness },
            other => ReebError::InternalInconsistency(alloc::format!("{other}")),
        }
    }
}

/// A strictly positive period in units of 2π.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodValue(Rational);

impl PeriodValue {
    pub fn new(value: Rational) -> Result<Self, ReebError> {
        if value.is_positive() {
            Ok(PeriodValue(value))
        } else {
            Err(ReebError::NonPositivePeriod(value))
        }
    }

    pub fn integer(k: u32) -> Result<Self, ReebError> {
        Self::new(Rational::from_integer(k.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Result<Self, ReebError> {
        if q == 0 {
            return Err(ReebError::NonPositivePeriod(Rational::zero()));
        }
        Self::new(Rational::new(p.into(), q.into()))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for PeriodValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for PeriodValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q: Rational = s.trim().parse().map_err(|_| alloc::format!("not a rational number: {s:?}"))?;
        PeriodValue::new(q).map_err(|e| alloc::format!("{e}"))
    }
}

/// Nonzero `(m, multiplicity)` pairs and element order for class `class`.
fn spectrum(group: &FiniteUnitaryGroup, class: usize) -> (u32, Vec<(u32, u32)>) {
    let e = group.class_eigen(class);
    (e.order, e.nonzero().collect())
}

/// Periods `l < bound` of class `class`, each with its fixed dimension and
/// `Σ_{l' < l} dim V_{g,l'}`.
fn periods_with_prior(
    group: &FiniteUnitaryGroup,
    class: usize,
    bound: &PeriodValue,
) -> Result<Vec<(PeriodValue, u32, u64)>, ReebError> {
    let (o, spec) = spectrum(group, class);
    let n = group.dimension() as u64;
    let mult0 = spec.iter().find(|(m, _)| *m == 0).map_or(0, |&(_, d)| d as u64);
    let mut out = Vec::new();
    let mut k: u64 = 0;
    while Rational::from_integer(k.into()) <= *bound.value() {
        let mut below: u64 = 0;
        for &(m, d) in &spec {
            if m == 0 && k == 0 {
                below += d as u64;
                continue;
            }
            let l = Rational::new((k * o as u64 + m as u64).into(), o.into());
            if l == *bound.value() {
                return Err(ReebError::SlopeOnSpectrum { class: group.classes()[class].label.clone(), slope: l });
            }
            if l < *bound.value() {
                out.push((PeriodValue(l), d, k * n + below - mult0));
            }
            below += d as u64;
        }
        k += 1;
    }
    Ok(out)
}

/// Admissible periods below `bound` with their fixed dimensions, ascending.
pub fn admissible_periods(
    group: &FiniteUnitaryGroup,
    class: usize,
    bound: &PeriodValue,
) -> Result<Vec<(PeriodValue, u32)>, ReebError> {
    Ok(periods_with_prior(group, class, bound)?.into_iter().map(|(l, d, _)| (l, d)).collect())
}

/// `n − 2·age + 2·prior + fixed_dim`.
pub fn cz_family(dimension: usize, age: &Rational, prior: u64, fixed_dim: u32) -> Rational {
    let two = Rational::from_integer(2.into());
    Rational::from_integer(dimension.into()) - &two * age
        + Rational::from_integer((2 * prior + fixed_dim as u64).into())
}

/// The Morse-Bott family `B_{(g),l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFamily {
    pub class: usize,
    pub homotopy_class: String,
    pub period: PeriodValue,
    pub fixed_dim: u32,
    /// `Σ_{l' < l} dim_ℂ V_{g,l'}`.
    pub prior_dim: u64,
    pub age: Rational,
    pub dimension: usize,
    pub cz_index: Rational,
}

impl OrbitFamily {
    /// Real dimension of the family, `2·fixed_dim − 1`.
    pub fn family_dim(&self) -> u32 {
        2 * self.fixed_dim - 1
    }

    /// The two-cell profile `{0, dim B}`.
    pub fn default_profile(&self) -> Vec<u32> {
        if self.family_dim() == 0 {
            alloc::vec![0]
        } else {
            alloc::vec![0, self.family_dim()]
        }
    }
}

/// All families with period below `bound`, by class then period.
pub fn families(group: &FiniteUnitaryGroup, bound: &PeriodValue) -> Result<Vec<OrbitFamily>, ReebError> {
    require_isolated(group)?;
    let mut out = Vec::new();
    for (c, class) in group.classes().iter().enumerate() {
        for (period, fixed_dim, prior_dim) in periods_with_prior(group, c, bound)? {
            let cz_index = cz_family(group.dimension(), &class.age, prior_dim, fixed_dim);
            out.push(OrbitFamily {
                class: c,
                homotopy_class: class.label.clone(),
                period,
                fixed_dim,
                prior_dim,
                age: class.age.clone(),
                dimension: group.dimension(),
                cz_index,
            });
        }
    }
    // spectrum check for every class happens above, even for classes with no
    // family below the bound
    Ok(out)
}

/// A critical point of the auxiliary Morse function on a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseCell {
    family: OrbitFamily,
    morse_index: u32,
}

impl MorseCell {
    pub fn new(family: OrbitFamily, morse_index: u32) -> Result<Self, ReebError> {
        let max = family.family_dim();
        if morse_index > max {
            return Err(ReebError::MorseIndexOutOfRange { index: morse_index, max });
        }
        Ok(MorseCell { family, morse_index })
    }

    pub fn family(&self) -> &OrbitFamily {
        &self.family
    }

    pub fn morse_index(&self) -> u32 {
        self.morse_index
    }
}

/// `(μ_CZ, n − μ_CZ)` of the generator perturbed from `cell`.
pub fn cz_generator(cell: &MorseCell) -> (Rational, Rational) {
    let f = &cell.family;
    let mu = Rational::from_integer(f.dimension.into()) - Rational::from_integer(2.into()) * &f.age
        + Rational::from_integer((2 * f.prior_dim + 1 + cell.morse_index as u64).into());
    let degree = Rational::from_integer(f.dimension.into()) - &mu;
    (mu, degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Terminal,
    CanonicalNotTerminal,
    Neither,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Terminal => "terminal",
            Verdict::CanonicalNotTerminal => "canonical-not-terminal",
            Verdict::Neither => "neither",
        }
    }
}

/// `min_g (2n − 2·age(g) − 2)` with its verdict. The identity contributes
/// `2n − 2`, which only matters for the trivial group.
pub fn mclean_discrepancy(group: &FiniteUnitaryGroup) -> Result<(Rational, Verdict), ReebError> {
    require_isolated(group)?;
    let two = Rational::from_integer(2.into());
    let base = Rational::from_integer((2 * group.dimension()).into()) - &two;
    let max_age = group.classes().iter().map(|c| c.age.clone()).max().unwrap_or_else(Rational::zero);
    let d = base - &two * max_age;
    let verdict = if d.is_positive() {
        Verdict::Terminal
    } else if d.is_zero() {
        Verdict::CanonicalNotTerminal
    } else {
        Verdict::Neither
    };
    Ok((d, verdict))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopComponent {
    pub class: usize,
    pub label: String,
    pub contractible: bool,
}

/// Components of the free loop space of ℂⁿ/G, one per conjugacy class.
pub fn loop_components(group: &FiniteUnitaryGroup) -> Vec<LoopComponent> {
    group
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| LoopComponent { class: i, label: c.label.clone(), contractible: c.representative == 0 })
        .collect()
}

/// Sum of fixed dimensions over the unit window `(w, w + 1]` of periods.
pub fn window_dimension(group: &FiniteUnitaryGroup, class: usize, window: u32) -> Result<u64, ReebError> {
    let lo = Rational::from_integer(window.into());
    let hi = &lo + Rational::one();
    let o = group.class_eigen(class).order;
    // half a spectral gap past the window edge, so never on the spectrum
    let bound = PeriodValue::new(&hi + Rational::new(1.into(), (2 * o).into()))?;
    Ok(periods_with_prior(group, class, &bound)?
        .into_iter()
        .filter(|(l, _, _)| *l.value() > lo && *l.value() <= hi)
        .map(|(_, d, _)| d as u64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(n: i64, d: i64) -> PeriodValue {
        PeriodValue::ratio(n, d).unwrap()
    }

    #[test]
    fn periods() {
        for n in 1..=4 {
            let g = catalog::antipodal(n).enumerate(10).unwrap();
            let got = admissible_periods(&g, 1, &p(2, 1)).unwrap();
            assert_eq!(got, [(p(1, 2), n as u32), (p(3, 2), n as u32)]);
            let id = admissible_periods(&g, 0, &p(5, 2)).unwrap();
            assert_eq!(id, [(p(1, 1), n as u32), (p(2, 1), n as u32)]);
        }
        let g = catalog::scalar_cyclic(3, 2).enumerate(10).unwrap();
        assert_eq!(admissible_periods(&g, 1, &p(1, 1)).unwrap(), [(p(1, 3), 2)]);
    }

    #[test]
    fn slope_on_spectrum() {
        let g = catalog::antipodal(2).enumerate(10).unwrap();
        assert!(matches!(admissible_periods(&g, 1, &p(3, 2)), Err(ReebError::SlopeOnSpectrum { .. })));
        assert!(matches!(families(&g, &p(1, 1)), Err(ReebError::SlopeOnSpectrum { .. })));
        assert!(PeriodValue::ratio(0, 1).is_err());
    }

    #[test]
    fn cz_examples() {
        for n in 2..=5 {
            let g = catalog::antipodal(n).enumerate(10).unwrap();
            let fam = families(&g, &p(7, 4)).unwrap();
            let find = |c: usize, l: PeriodValue| fam.iter().find(|f| f.class == c && f.period == l).unwrap();
            let n_r = q(n as i64, 1);
            assert_eq!(find(0, p(1, 1)).cz_index, &n_r * q(2, 1));
            assert_eq!(find(1, p(1, 2)).cz_index, n_r);
            assert_eq!(find(1, p(3, 2)).cz_index, &n_r * q(3, 1));

            let gamma0 = MorseCell::new(find(0, p(1, 1)).clone(), 0).unwrap();
            assert_eq!(cz_generator(&gamma0), (&n_r + q(1, 1), q(-1, 1)));
            let top = MorseCell::new(find(0, p(1, 1)).clone(), 2 * n as u32 - 1).unwrap();
            assert_eq!(cz_generator(&top), (&n_r * q(3, 1), &n_r * q(-2, 1)));
            let half = MorseCell::new(find(1, p(1, 2)).clone(), 0).unwrap();
            assert_eq!(cz_generator(&half), (q(1, 1), &n_r - q(1, 1)));
            assert!(MorseCell::new(find(0, p(1, 1)).clone(), 2 * n as u32).is_err());
        }
    }

    #[test]
    fn discrepancy() {
        let d = |g: crate::group::GroupPresentation| mclean_discrepancy(&g.enumerate(100).unwrap()).unwrap();
        assert_eq!(d(catalog::antipodal(2)), (q(0, 1), Verdict::CanonicalNotTerminal));
        assert_eq!(d(catalog::antipodal(3)), (q(1, 1), Verdict::Terminal));
        assert_eq!(d(catalog::trivial(2)), (q(2, 1), Verdict::Terminal));
        assert_eq!(d(catalog::scalar_cyclic(3, 1)), (q(-4, 3), Verdict::Neither));
        for k in 2..=8 {
            assert_eq!(d(catalog::a_type(k)), (q(0, 1), Verdict::CanonicalNotTerminal));
        }
    }

    #[test]
    fn components() {
        let count = |g: crate::group::GroupPresentation| loop_components(&g.enumerate(100).unwrap()).len();
        assert_eq!(count(catalog::antipodal(3)), 2);
        assert_eq!(count(catalog::quaternion()), 5);
        assert_eq!(count(catalog::trivial(2)), 1);
        let g = catalog::quaternion().enumerate(10).unwrap();
        let c = loop_components(&g);
        assert!(c[0].contractible && c.iter().skip(1).all(|x| !x.contractible));
    }

    #[test]
    fn windows_account_for_all_eigenvalues() {
        let g = catalog::diagonal_cyclic(7, &[1, 2, 4]).enumerate(10).unwrap();
        for c in 0..g.classes().len() {
            for w in 0..3 {
                assert_eq!(window_dimension(&g, c, w).unwrap(), 3, "class {c} window {w}");
            }
        }
    }
}
