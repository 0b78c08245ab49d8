//! Generator-level bookkeeping for the symplectic cochain complex of ℂⁿ/G
//! at a fixed slope: constant orbits at the singularity, Morse cells on the
//! Reeb orbit families, and the sparse set of known differential entries.
//!
//! Actions are idealized: constants carry 0 and a cell on a family of
//! period l carries `−l`, in units of 2π.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;

use crate::chen_ruan::{require_isolated, CrRing};
use crate::cyclotomic::Rational;
use crate::group::FiniteUnitaryGroup;
use crate::reeb::{self, cz_generator, MorseCell, PeriodValue, ReebError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FloerError {
    #[error("not an isolated singularity: element {witness} fixes a nonzero vector")]
    NonIsolated { witness: usize },
    #[error("slope {slope} lies on the period spectrum of class {class}")]
    SlopeOnSpectrum { class: String, slope: Rational },
    #[error("cell profile names no family below the slope: class {class}, period {period}")]
    UnknownFamily { class: String, period: Rational },
    #[error("differential entry {entry} references generator {generator}, ledger has {len}")]
    UnknownGenerator { entry: usize, generator: usize, len: usize },
    #[error("differential entry {entry} violates rule {rule}")]
    InvariantViolation { entry: usize, rule: LedgerRule },
    #[error("{0}")]
    Reeb(ReebError),
}

impl From<ReebError> for FloerError {
    fn from(e: ReebError) -> Self {
        match e {
            ReebError::NonIsolated { witness } => FloerError::NonIsolated { witness },
            ReebError::SlopeOnSpectrum { class, slope } => FloerError::SlopeOnSpectrum { class, slope },
            other => FloerError::Reeb(other),
        }
    }
}

impl From<crate::chen_ruan::ChenRuanError> for FloerError {
    fn from(e: crate::chen_ruan::ChenRuanError) -> Self {
        ReebError::from(e).into()
    }
}

/// Coefficient ring R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoefficientRing {
    Rationals,
    Integers,
    /// ℤ/m with m ≥ 2.
    IntegersMod(u64),
}

impl CoefficientRing {
    pub fn integers_mod(m: u64) -> Option<Self> {
        (m >= 2).then_some(CoefficientRing::IntegersMod(m))
    }

    /// Whether the integer `k` is a unit in this ring.
    pub fn is_unit(self, k: u64) -> bool {
        match self {
            CoefficientRing::Rationals => k != 0,
            CoefficientRing::Integers => k == 1,
            CoefficientRing::IntegersMod(m) => k.gcd(&m) == 1,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => f.write_str("Q"),
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = String;

    /// Accepts `Q`, `Z`, `Z/m` and `mod:m` (case-insensitive letters).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "q" | "rationals" => return Ok(CoefficientRing::Rationals),
            "z" | "integers" => return Ok(CoefficientRing::Integers),
            _ => {}
        }
        let digits = t
            .strip_prefix("Z/")
            .or_else(|| t.strip_prefix("z/"))
            .or_else(|| t.strip_prefix("mod:"))
            .ok_or_else(|| format!("unknown coefficient ring {t:?}; expected Q, Z, Z/m or mod:m"))?;
        let m: u64 = digits.parse().map_err(|_| format!("bad modulus in {t:?}"))?;
        CoefficientRing::integers_mod(m).ok_or_else(|| format!("modulus must be at least 2, got {m}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The minimum of the admissible function, at the singular point.
    ConstantUntwisted,
    /// `(0, (g))` for a nontrivial class.
    ConstantTwisted,
    NonconstantCell {
        period: PeriodValue,
        fixed_dim: u32,
        morse_index: u32,
        cz_index: Rational,
    },
}

impl GeneratorKind {
    pub fn tag(&self) -> &'static str {
        match self {
            GeneratorKind::ConstantUntwisted => "constant-untwisted",
            GeneratorKind::ConstantTwisted => "constant-twisted",
            GeneratorKind::NonconstantCell { .. } => "nonconstant-cell",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloerGenerator {
    pub kind: GeneratorKind,
    /// Index into `group.classes()`.
    pub class: usize,
    pub homotopy_class: String,
    pub degree: Rational,
    pub action: Rational,
    pub isotropy_order: usize,
}

impl FloerGenerator {
    fn sort_key(&self) -> (usize, &Rational, &Rational, u32) {
        let idx = match &self.kind {
            GeneratorKind::NonconstantCell { morse_index, .. } => *morse_index,
            _ => 0,
        };
        (self.class, &self.action, &self.degree, idx)
    }
}

/// Per-family Morse index lists, keyed by `(class index, period)`.
pub type CellProfiles = BTreeMap<(usize, PeriodValue), Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorLedger {
    pub dimension: usize,
    pub group_order: usize,
    pub slope: PeriodValue,
    pub generators: Vec<FloerGenerator>,
}

impl GeneratorLedger {
    /// Index of the untwisted constant.
    pub fn unit(&self) -> usize {
        self.generators
            .iter()
            .position(|g| g.kind == GeneratorKind::ConstantUntwisted)
            .expect("every ledger has an untwisted constant")
    }

    /// Index of γ₀, the minimum cell of the period-1 identity family.
    pub fn gamma0(&self) -> Option<usize> {
        self.generators.iter().position(|g| {
            g.class == 0
                && matches!(&g.kind, GeneratorKind::NonconstantCell { period, morse_index: 0, .. }
                    if *period.value() == Rational::from_integer(1.into()))
        })
    }
}

/// Assembles the generators at `slope`. Families absent from `profiles` get
/// the two-cell default profile.
pub fn build_ledger(
    group: &FiniteUnitaryGroup,
    slope: &PeriodValue,
    profiles: &CellProfiles,
) -> Result<GeneratorLedger, FloerError> {
    require_isolated(group)?;
    let families = reeb::families(group, slope)?;
    for (class, period) in profiles.keys() {
        if !families.iter().any(|f| f.class == *class && f.period == *period) {
            return Err(FloerError::UnknownFamily {
                class: group.classes().get(*class).map_or_else(|| format!("#{class}"), |c| c.label.clone()),
                period: period.value().clone(),
            });
        }
    }
    let mut generators = Vec::new();
    for (c, class) in group.classes().iter().enumerate() {
        let kind = if c == 0 { GeneratorKind::ConstantUntwisted } else { GeneratorKind::ConstantTwisted };
        generators.push(FloerGenerator {
            kind,
            class: c,
            homotopy_class: class.label.clone(),
            degree: &class.age * Rational::from_integer(2.into()),
            action: Rational::zero(),
            isotropy_order: class.centralizer_order(),
        });
    }
    for fam in families {
        let mut indices =
            profiles.get(&(fam.class, fam.period.clone())).cloned().unwrap_or_else(|| fam.default_profile());
        indices.sort_unstable();
        indices.dedup();
        for idx in indices {
            let cell = MorseCell::new(fam.clone(), idx)?;
            let (mu, degree) = cz_generator(&cell);
            generators.push(FloerGenerator {
                kind: GeneratorKind::NonconstantCell {
                    period: fam.period.clone(),
                    fixed_dim: fam.fixed_dim,
                    morse_index: idx,
                    cz_index: mu,
                },
                class: fam.class,
                homotopy_class: fam.homotopy_class.clone(),
                degree,
                action: -fam.period.value().clone(),
                isotropy_order: group.classes()[fam.class].centralizer_order(),
            });
        }
    }
    generators.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(GeneratorLedger { dimension: group.dimension(), group_order: group.order(), slope: slope.clone(), generators })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// Proved count, emitted by [`known_differentials`].
    Established,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Established => "established",
            Provenance::UserSupplied => "user-supplied",
        }
    }
}

/// `⟨δ source, target⟩ = coefficient`, with generators given as ledger indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialEntry {
    pub source: usize,
    pub target: usize,
    pub coefficient: i64,
    pub provenance: Provenance,
}

/// The single proved entry `δ(γ₀) = |G|·(0,(Id))`, present once the slope
/// exceeds 1. All other entries are unknown, not zero.
pub fn known_differentials(ledger: &GeneratorLedger) -> Vec<DifferentialEntry> {
    ledger
        .gamma0()
        .map(|g0| DifferentialEntry {
            source: g0,
            target: ledger.unit(),
            coefficient: ledger.group_order as i64,
            provenance: Provenance::Established,
        })
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LedgerRule {
    HomotopyClass,
    ActionIncreases,
    DegreeStep,
}

impl LedgerRule {
    pub fn as_str(self) -> &'static str {
        match self {
            LedgerRule::HomotopyClass => "homotopy class must be preserved",
            LedgerRule::ActionIncreases => "action must increase",
            LedgerRule::DegreeStep => "degree must rise by one",
        }
    }
}

impl fmt::Display for LedgerRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerReport {
    pub entries_checked: usize,
    /// Generator counts by degree within each homotopy class.
    pub ranks: BTreeMap<String, BTreeMap<Rational, u64>>,
}

/// Checks class preservation, action increase and the degree step, in that
/// order, on every entry.
pub fn check_ledger(ledger: &GeneratorLedger, entries: &[DifferentialEntry]) -> Result<LedgerReport, FloerError> {
    let len = ledger.generators.len();
    for (i, e) in entries.iter().enumerate() {
        for generator in [e.source, e.target] {
            if generator >= len {
                return Err(FloerError::UnknownGenerator { entry: i, generator, len });
            }
        }
        let (s, t) = (&ledger.generators[e.source], &ledger.generators[e.target]);
        let rule = if s.class != t.class {
            Some(LedgerRule::HomotopyClass)
        } else if t.action <= s.action {
            Some(LedgerRule::ActionIncreases)
        } else if t.degree != &s.degree + Rational::from_integer(1.into()) {
            Some(LedgerRule::DegreeStep)
        } else {
            None
        };
        if let Some(rule) = rule {
            return Err(FloerError::InvariantViolation { entry: i, rule });
        }
    }
    let mut ranks: BTreeMap<String, BTreeMap<Rational, u64>> = BTreeMap::new();
    for g in &ledger.generators {
        *ranks.entry(g.homotopy_class.clone()).or_default().entry(g.degree.clone()).or_insert(0) += 1;
    }
    Ok(LedgerReport { entries_checked: entries.len(), ranks })
}

/// Whether SH*(ℂⁿ/G; R) vanishes, i.e. whether |G| is a unit in R.
pub fn sh_vanishing(group: &FiniteUnitaryGroup, ring: CoefficientRing) -> Result<bool, FloerError> {
    require_isolated(group)?;
    Ok(ring.is_unit(group.order() as u64))
}

/// Chen-Ruan ranks against the ledger's constant generators, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBookkeeping {
    pub cr_ranks: BTreeMap<Rational, u64>,
    pub constant_ranks: BTreeMap<Rational, u64>,
    pub matches: bool,
}

pub fn rank_bookkeeping(ledger: &GeneratorLedger, ring: &CrRing) -> RankBookkeeping {
    let mut cr_ranks = BTreeMap::new();
    for s in ring.sectors() {
        *cr_ranks.entry(s.degree.clone()).or_insert(0) += 1;
    }
    let mut constant_ranks = BTreeMap::new();
    for g in ledger.generators.iter().filter(|g| !matches!(g.kind, GeneratorKind::NonconstantCell { .. })) {
        *constant_ranks.entry(g.degree.clone()).or_insert(0) += 1;
    }
    let matches = cr_ranks == constant_ranks;
    RankBookkeeping { cr_ranks, constant_ranks, matches }
}
