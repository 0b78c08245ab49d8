//! Divisibility and uniqueness restrictions on the isotropy groups of exact
//! orbifold fillings of selected contact manifolds.
//!
//! A [`ConstraintSet`] is a conjunction of statements "`|stab_p|` divides D"
//! for every orbifold point p of any exact filling.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::group::FiniteUnitaryGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("invalid boundary descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("constraints not applicable: {0}")]
    NotApplicable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryDescriptor {
    /// L(k; 1, …, 1) = S²ⁿ⁻¹/(ℤ/k).
    LensSpace { k: u32, n: u32 },
    /// The link of z₀ᵏ + z₁² + … + z_n² = 0.
    Brieskorn { k: u32, n: u32 },
    /// Boundary of V × 𝔻 for a Liouville domain V of dimension 2n − 2.
    SubcriticalBoundary { n: u32 },
    /// A manifold declared by the caller to lie in the dilation closure set.
    DilationClosure { n: u32 },
}

impl BoundaryDescriptor {
    pub fn lens(k: u32, n: u32) -> Result<Self, ConstraintError> {
        Self::LensSpace { k, n }.validated()
    }

    pub fn brieskorn(k: u32, n: u32) -> Result<Self, ConstraintError> {
        Self::Brieskorn { k, n }.validated()
    }

    pub fn subcritical(n: u32) -> Result<Self, ConstraintError> {
        Self::SubcriticalBoundary { n }.validated()
    }

    pub fn dilation(n: u32) -> Result<Self, ConstraintError> {
        Self::DilationClosure { n }.validated()
    }

    pub fn validated(self) -> Result<Self, ConstraintError> {
        let bad = |m: String| Err(ConstraintError::InvalidDescriptor(m));
        match self {
            Self::LensSpace { k, n } | Self::Brieskorn { k, n } => {
                if k < 2 || n < 2 {
                    return bad(format!("need k >= 2 and n >= 2, got k={k}, n={n}"));
                }
            }
            Self::SubcriticalBoundary { n } | Self::DilationClosure { n } => {
                if n < 1 {
                    return bad(format!("need n >= 1, got n={n}"));
                }
            }
        }
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        match *self {
            Self::LensSpace { n, .. }
            | Self::Brieskorn { n, .. }
            | Self::SubcriticalBoundary { n }
            | Self::DilationClosure { n } => n,
        }
    }

    /// Real dimension `2n − 1` of the contact manifold.
    pub fn dimension(&self) -> u32 {
        2 * self.n() - 1
    }
}

impl fmt::Display for BoundaryDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LensSpace { k, n } => write!(f, "lens:{k},{n}"),
            Self::Brieskorn { k, n } => write!(f, "brieskorn:{k},{n}"),
            Self::SubcriticalBoundary { n } => write!(f, "subcritical:{n}"),
            Self::DilationClosure { n } => write!(f, "dilation:{n}"),
        }
    }
}

impl FromStr for BoundaryDescriptor {
    type Err = ConstraintError;

    /// `lens:k,n`, `brieskorn:k,n`, `subcritical:n` or `dilation:n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| ConstraintError::InvalidDescriptor(m);
        let (kind, args) = s.trim().split_once(':').ok_or_else(|| bad(format!("expected kind:args, got {s:?}")))?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|a| a.trim().parse::<u32>().map_err(|_| bad(format!("bad integer {a:?} in {s:?}"))))
            .collect::<Result<_, _>>()?;
        match (kind.trim(), nums.as_slice()) {
            ("lens", &[k, n]) => Self::lens(k, n),
            ("brieskorn", &[k, n]) => Self::brieskorn(k, n),
            ("subcritical", &[n]) => Self::subcritical(n),
            ("dilation", &[n]) => Self::dilation(n),
            _ => Err(bad(format!(
                "unknown descriptor {s:?}; expected lens:k,n, brieskorn:k,n, subcritical:n or dilation:n"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub value: BigUint,
    /// Short label of the rule that produced this divisor.
    pub rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniqueness {
    pub count: u32,
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    pub boundary: BoundaryDescriptor,
    pub divisors: Vec<Divisor>,
    pub uniqueness: Option<Uniqueness>,
    pub applicable: bool,
    pub reason: Option<String>,
}

impl ConstraintSet {
    /// gcd of all divisors, or `None` when not applicable.
    pub fn effective_bound(&self) -> Option<BigUint> {
        if !self.applicable {
            return None;
        }
        self.divisors.iter().map(|d| d.value.clone()).reduce(|a, b| a.gcd(&b))
    }
}

pub fn factorial(k: u32) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn is_power_of_two(n: u32) -> bool {
    n.is_power_of_two()
}

/// No square of a prime divides `k`. Zero is not squarefree.
pub fn is_squarefree(k: u64) -> bool {
    if k == 0 {
        return false;
    }
    let mut m = k;
    let mut p = 2u64;
    while p <= m / p {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub fn constraint_for_boundary(b: BoundaryDescriptor) -> ConstraintSet {
    let mut set = ConstraintSet { boundary: b, divisors: Vec::new(), uniqueness: None, applicable: true, reason: None };
    let push = |set: &mut ConstraintSet, value: BigUint, rule| set.divisors.push(Divisor { value, rule });
    match b {
        BoundaryDescriptor::SubcriticalBoundary { .. } => push(&mut set, BigUint::one(), "subcritical-product"),
        BoundaryDescriptor::DilationClosure { .. } => push(&mut set, BigUint::one(), "dilation-closure"),
        BoundaryDescriptor::Brieskorn { k, n } => {
            if k >= n {
                set.applicable = false;
                set.reason = Some("theorem hypothesis k < n fails".into());
            } else {
                push(&mut set, factorial(k), "brieskorn-factorial");
                // k < (n+1)/2, or 2k = n+1 with k squarefree
                if 2 * k < n + 1 || (2 * k == n + 1 && is_squarefree(k as u64)) {
                    push(&mut set, factorial(k - 1), "brieskorn-reduced-factorial");
                }
            }
        }
        BoundaryDescriptor::LensSpace { k, n } => {
            push(&mut set, factorial(k), "lens-factorial");
            if k < n {
                push(&mut set, BigUint::from(k).pow(n), "lens-power");
            }
            if k == 2 && !is_power_of_two(n) {
                set.uniqueness = Some(Uniqueness { count: 1, model: format!("C^{n}/(Z/2)") });
            }
        }
    }
    set
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub group_order: BigUint,
    /// Divisors that `|G|` fails to divide.
    pub violated: Vec<Divisor>,
    pub explanation: String,
}

/// Whether a point with isotropy of order `order` may appear in an exact
/// filling of `b`.
pub fn admissible_order(order: &BigUint, b: BoundaryDescriptor) -> Result<Admissibility, ConstraintError> {
    let set = constraint_for_boundary(b);
    if !set.applicable {
        return Err(ConstraintError::NotApplicable(set.reason.unwrap_or_default()));
    }
    let violated: Vec<Divisor> = set.divisors.iter().filter(|d| !(&d.value % order).is_zero()).cloned().collect();
    let bound = set.effective_bound().expect("applicable sets are nonempty");
    let explanation = match violated.first() {
        None => format!("|G| = {order} divides the effective bound {bound}"),
        Some(d) => format!("|G| = {order} does not divide {} ({}); effective bound {bound}", d.value, d.rule),
    };
    Ok(Admissibility { admissible: violated.is_empty(), group_order: order.clone(), violated, explanation })
}

pub fn admissible(group: &FiniteUnitaryGroup, b: BoundaryDescriptor) -> Result<Admissibility, ConstraintError> {
    admissible_order(&BigUint::from(group.order()), b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpReport {
    pub n: u32,
    pub uniqueness: bool,
    pub statement: String,
}

/// What is known about exact orbifold fillings of ℝP^{2n−1}.
pub fn rp_report(n: u32) -> Result<RpReport, ConstraintError> {
    if n < 2 {
        return Err(ConstraintError::InvalidDescriptor(format!("need n >= 2, got {n}")));
    }
    let dim = 2 * n - 1;
    let uniqueness = !is_power_of_two(n);
    let statement = if uniqueness {
        format!("every exact orbifold filling of RP^{dim} has exactly one singularity, modeled on C^{n}/(Z/2)")
    } else {
        format!("no conclusion: n = {n} is a power of two")
    };
    Ok(RpReport { n, uniqueness, statement })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(b: &str) -> BigUint {
        constraint_for_boundary(b.parse().unwrap()).effective_bound().unwrap()
    }

    #[test]
    fn examples() {
        let b = constraint_for_boundary("brieskorn:2,3".parse().unwrap());
        let vals: Vec<_> = b.divisors.iter().map(|d| d.value.clone()).collect();
        assert_eq!(vals, [BigUint::from(2u32), BigUint::from(1u32)]);
        assert_eq!(bound("brieskorn:2,3"), BigUint::one());

        let l = constraint_for_boundary("lens:2,3".parse().unwrap());
        let vals: Vec<_> = l.divisors.iter().map(|d| d.value.clone()).collect();
        assert_eq!(vals, [BigUint::from(2u32), BigUint::from(8u32)]);
        assert_eq!(l.effective_bound(), Some(BigUint::from(2u32)));
        assert_eq!(l.uniqueness.as_ref().unwrap().count, 1);

        let l = constraint_for_boundary("lens:3,2".parse().unwrap());
        assert_eq!(l.divisors.len(), 1);
        assert_eq!(l.divisors[0].value, BigUint::from(6u32));
        assert!(l.uniqueness.is_none());
        assert!(constraint_for_boundary("lens:2,4".parse().unwrap()).uniqueness.is_none());

        assert_eq!(bound("subcritical:3"), BigUint::one());
        assert_eq!(bound("dilation:2"), BigUint::one());
    }

    #[test]
    fn brieskorn_cases() {
        // 2k = n + 1 with k = 4 not squarefree: only k!
        assert_eq!(constraint_for_boundary(BoundaryDescriptor::brieskorn(4, 7).unwrap()).divisors.len(), 1);
        // k < (n+1)/2
        assert_eq!(bound("brieskorn:3,8"), BigUint::from(2u32));
        // k >= n
        let b = constraint_for_boundary(BoundaryDescriptor::brieskorn(3, 3).unwrap());
        assert!(!b.applicable);
        assert_eq!(b.reason.as_deref(), Some("theorem hypothesis k < n fails"));
        assert_eq!(b.effective_bound(), None);
    }

    #[test]
    fn admissibility() {
        let lens = BoundaryDescriptor::lens(2, 3).unwrap();
        assert!(admissible_order(&2u32.into(), lens).unwrap().admissible);
        assert!(!admissible_order(&3u32.into(), lens).unwrap().admissible);
        let br = BoundaryDescriptor::brieskorn(2, 3).unwrap();
        assert!(!admissible_order(&4u32.into(), br).unwrap().admissible);
        assert!(matches!(
            admissible_order(&1u32.into(), BoundaryDescriptor::brieskorn(5, 3).unwrap()),
            Err(ConstraintError::NotApplicable(_))
        ));
    }

    #[test]
    fn parsing() {
        assert_eq!("lens:2,3".parse(), Ok(BoundaryDescriptor::LensSpace { k: 2, n: 3 }));
        assert!("lens:1,3".parse::<BoundaryDescriptor>().is_err());
        assert!("lens:2".parse::<BoundaryDescriptor>().is_err());
        assert!("torus:2".parse::<BoundaryDescriptor>().is_err());
        assert_eq!(BoundaryDescriptor::subcritical(3).unwrap().to_string(), "subcritical:3");
        assert_eq!(BoundaryDescriptor::lens(2, 3).unwrap().dimension(), 5);
    }

    #[test]
    fn rp() {
        assert!(rp_report(3).unwrap().uniqueness);
        assert!(!rp_report(4).unwrap().uniqueness);
        assert!(!rp_report(2).unwrap().uniqueness);
        assert!(rp_report(1).is_err());
    }

    #[test]
    fn squarefree_small() {
        let sf: Vec<u64> = (1..=20).filter(|&k| is_squarefree(k)).collect();
        assert_eq!(sf, [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]);
        assert!(!is_squarefree(0));
    }
}
