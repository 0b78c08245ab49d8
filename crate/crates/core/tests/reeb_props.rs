use orbifill_core::cyclotomic::Rational;
use orbifill_core::group::catalog;
use orbifill_core::reeb::{cz_generator, families, loop_components, window_dimension, MorseCell, PeriodValue};

fn battery() -> Vec<orbifill_core::group::FiniteUnitaryGroup> {
    catalog::isolated_battery(48).iter().map(|p| p.enumerate(48).unwrap()).collect()
}

/// A slope just above 4 that avoids every period of order dividing `o`.
fn slope_above_four(g: &orbifill_core::group::FiniteUnitaryGroup) -> PeriodValue {
    let o = g.classes().iter().map(|c| c.order as i64).max().unwrap();
    PeriodValue::ratio(8 * o + 1, 2 * o).unwrap()
}

#[test]
fn cz_periodicity() {
    for g in battery() {
        let n = Rational::from_integer(g.dimension().into());
        let two_n = &n + &n;
        let fam = families(&g, &slope_above_four(&g)).unwrap();
        let three = Rational::from_integer(3.into());
        for f in fam.iter().filter(|f| *f.period.value() < three) {
            let next = fam
                .iter()
                .find(|h| {
                    h.class == f.class && *h.period.value() == f.period.value() + Rational::from_integer(1.into())
                })
                .expect("period shifted by one is admissible");
            assert_eq!(&next.cz_index - &f.cz_index, two_n, "{} class {}", g.name(), f.homotopy_class);
        }
    }
}

#[test]
fn windows_and_generator_shift() {
    for g in battery() {
        for c in 0..g.classes().len() {
            for w in 0..3 {
                assert_eq!(window_dimension(&g, c, w).unwrap(), g.dimension() as u64);
            }
        }
        for f in families(&g, &slope_above_four(&g)).unwrap() {
            assert_eq!(f.homotopy_class, g.classes()[f.class].label);
            let cell = MorseCell::new(f.clone(), 0).unwrap();
            let (mu, _) = cz_generator(&cell);
            assert_eq!(mu - &f.cz_index, Rational::from_integer((1 - f.fixed_dim as i64).into()));
        }
        assert_eq!(loop_components(&g).len(), g.classes().len());
    }
}

#[test]
fn gamma0_degree_is_minus_one() {
    for g in battery() {
        let fam = families(&g, &PeriodValue::ratio(1001, 1000).unwrap());
        // slopes near 1 can hit short periods of high-order elements; those are
        // fine as long as the slope is off the spectrum
        let fam = fam.unwrap();
        let f = fam.iter().find(|f| f.class == 0).unwrap();
        let (_, degree) = cz_generator(&MorseCell::new(f.clone(), 0).unwrap());
        assert_eq!(degree, Rational::from_integer((-1).into()), "{}", g.name());
    }
}
