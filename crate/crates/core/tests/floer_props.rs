use num_integer::Integer;
use orbifill_core::chen_ruan::twisted_sectors;
use orbifill_core::cyclotomic::Rational;
use orbifill_core::floer::{
    build_ledger, check_ledger, known_differentials, sh_vanishing, CellProfiles, CoefficientRing, DifferentialEntry,
    FloerError, GeneratorKind, LedgerRule, Provenance,
};
use orbifill_core::group::catalog;
use orbifill_core::reeb::{cz_generator, MorseCell, PeriodValue};
use proptest::prelude::*;

fn slope() -> PeriodValue {
    PeriodValue::ratio(1001, 1000).unwrap()
}

#[test]
fn constants_match_sectors_and_gamma0() {
    for p in catalog::isolated_battery(48) {
        let g = p.enumerate(48).unwrap();
        let l = build_ledger(&g, &slope(), &CellProfiles::new()).unwrap();
        let mut constants: Vec<_> = l
            .generators
            .iter()
            .filter(|x| !matches!(x.kind, GeneratorKind::NonconstantCell { .. }))
            .map(|x| (x.class, x.degree.clone()))
            .collect();
        constants.sort();
        let sectors: Vec<_> = twisted_sectors(&g).unwrap().into_iter().map(|s| (s.class, s.degree)).collect();
        assert_eq!(constants, sectors);
        assert_eq!(l.generators.iter().filter(|x| x.kind == GeneratorKind::ConstantUntwisted).count(), 1);

        let known = known_differentials(&l);
        assert_eq!(known.len(), 1);
        assert_eq!(known[0].coefficient, g.order() as i64);
        assert_eq!(known[0].provenance, Provenance::Established);
        assert_eq!(l.generators[known[0].source].degree, Rational::from_integer((-1).into()));
        check_ledger(&l, &known).unwrap();
    }
}

#[test]
fn minimum_cells_agree_with_reeb() {
    for p in catalog::isolated_battery(24) {
        let g = p.enumerate(24).unwrap();
        let s = PeriodValue::ratio(5 * 24 + 1, 2 * 24).unwrap();
        let l = build_ledger(&g, &s, &CellProfiles::new()).unwrap();
        for f in orbifill_core::reeb::families(&g, &s).unwrap() {
            let want = cz_generator(&MorseCell::new(f.clone(), 0).unwrap()).1;
            let n = Rational::from_integer(g.dimension().into());
            let two = Rational::from_integer(2.into());
            let one = Rational::from_integer(1.into());
            let independent = &n - (&n - &two * &f.age + &two * Rational::from_integer(f.prior_dim.into()) + one);
            assert_eq!(want, independent);
            assert!(l.generators.iter().any(|x| x.class == f.class
                && matches!(&x.kind, GeneratorKind::NonconstantCell { period, morse_index: 0, .. } if *period == f.period)
                && x.degree == want));
        }
    }
}

#[test]
fn vanishing_is_gcd_exhaustive() {
    let groups: Vec<_> = catalog::isolated_battery(48).iter().map(|p| p.enumerate(48).unwrap()).collect();
    for g in &groups {
        assert!(sh_vanishing(g, CoefficientRing::Rationals).unwrap());
        assert_eq!(sh_vanishing(g, CoefficientRing::Integers).unwrap(), g.order() == 1);
        for m in 2..=30u64 {
            let want = (g.order() as u64).gcd(&m) == 1;
            assert_eq!(sh_vanishing(g, CoefficientRing::IntegersMod(m)).unwrap(), want);
        }
    }
    for order in 1..=48u64 {
        for m in 2..=30u64 {
            assert_eq!(CoefficientRing::IntegersMod(m).is_unit(order), order.gcd(&m) == 1);
        }
    }
}

proptest! {
    #[test]
    fn cross_class_entries_are_rejected(gi in 0usize..8, a in 0usize..64, b in 0usize..64, coeff in -5i64..5) {
        let battery = catalog::isolated_battery(24);
        let g = battery[gi % battery.len()].enumerate(24).unwrap();
        let l = build_ledger(&g, &PeriodValue::ratio(201, 100).unwrap(), &CellProfiles::new()).unwrap();
        let (a, b) = (a % l.generators.len(), b % l.generators.len());
        let e = DifferentialEntry { source: a, target: b, coefficient: coeff, provenance: Provenance::UserSupplied };
        let res = check_ledger(&l, &[e]);
        if l.generators[a].class != l.generators[b].class {
            prop_assert_eq!(res, Err(FloerError::InvariantViolation { entry: 0, rule: LedgerRule::HomotopyClass }));
        } else if let Ok(report) = res {
            prop_assert!(l.generators[b].action > l.generators[a].action);
            prop_assert_eq!(&l.generators[b].degree - &l.generators[a].degree, Rational::from_integer(1.into()));
            prop_assert_eq!(report.entries_checked, 1);
        }
    }
}
