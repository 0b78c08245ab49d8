//! Acceptance criteria 1-10, one PASS/FAIL line each, with runtime limits.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use orbifill::battery;
use orbifill_core::chen_ruan::{Convention, CrRing};
use orbifill_core::constraints::{constraint_for_boundary, BoundaryDescriptor};
use orbifill_core::cyclotomic::{cyclotomic_polynomial, divisors, CyclotomicNumber, Rational};
use orbifill_core::floer::{
    build_ledger, check_ledger, known_differentials, sh_vanishing, CellProfiles, CoefficientRing, Provenance,
};
use orbifill_core::group::catalog::{a_type, antipodal, isolated_battery, scalar_cyclic};
use orbifill_core::group::FiniteUnitaryGroup;
use orbifill_core::reeb::{families, mclean_discrepancy, PeriodValue, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn battery_groups(max_order: usize) -> Vec<FiniteUnitaryGroup> {
    isolated_battery(max_order).iter().map(|p| p.enumerate(max_order).unwrap()).collect()
}

/// A slope just above `k`, off every period spectrum of `g`.
fn slope_above(g: &FiniteUnitaryGroup, k: i64) -> PeriodValue {
    PeriodValue::new(q(k, 1) + q(1, 2 * g.order() as i64)).unwrap()
}

fn c1_antipodal_rank() -> Outcome {
    for n in 2..=6 {
        let g = antipodal(n).enumerate(10).unwrap();
        let ring = CrRing::new(&g, Convention::DEFAULT).unwrap();
        let degrees: Vec<Rational> = ring.sectors().iter().map(|s| s.degree.clone()).collect();
        ensure(ring.rank() == 2, || format!("n={n}: rank {}", ring.rank()))?;
        ensure(degrees == [q(0, 1), q(n as i64, 1)], || format!("n={n}: degrees {degrees:?}"))?;
    }
    Ok("rank 2 in degrees {0, n} for n = 2..6".into())
}

fn c2_age_duality() -> Outcome {
    let groups = battery_groups(48);
    let mut classes = 0;
    for g in &groups {
        let n = g.dimension() as i64;
        for (c, class) in g.classes().iter().enumerate().skip(1) {
            let dual = &g.classes()[g.inverse_class(c)];
            ensure(&class.age + &dual.age == q(n, 1), || {
                format!("{}: class {} age {} + {} != {n}", g.name(), class.label, class.age, dual.age)
            })?;
            classes += 1;
        }
    }
    Ok(format!("{classes} nontrivial classes over {} groups", groups.len()))
}

fn c3_cz_periodicity() -> Outcome {
    let groups = battery_groups(48);
    let mut pairs = 0;
    for g in &groups {
        let two_n = q(2 * g.dimension() as i64, 1);
        let fams = families(g, &slope_above(g, 4)).unwrap();
        for f in fams.iter().filter(|f| *f.period.value() < q(3, 1)) {
            let next = f.period.value() + q(1, 1);
            let g2 = fams
                .iter()
                .find(|h| h.class == f.class && *h.period.value() == next)
                .ok_or_else(|| format!("{}: no family at period {next}", g.name()))?;
            ensure(&g2.cz_index - &f.cz_index == two_n, || {
                format!("{}: class {} at {}: cz {} then {}", g.name(), f.class, f.period, f.cz_index, g2.cz_index)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} consecutive family pairs over {} groups", groups.len()))
}

fn c4_gamma0() -> Outcome {
    let presentations = isolated_battery(48);
    let mut slowest = Duration::ZERO;
    for p in &presentations {
        let start = Instant::now();
        let g = p.enumerate(48).unwrap();
        let ledger = build_ledger(&g, &slope_above(&g, 1), &CellProfiles::new()).map_err(|e| e.to_string())?;
        let g0 = ledger.gamma0().ok_or_else(|| format!("{}: no γ₀", g.name()))?;
        ensure(ledger.generators[g0].degree == q(-1, 1), || {
            format!("{}: γ₀ degree {}", g.name(), ledger.generators[g0].degree)
        })?;
        let entries = known_differentials(&ledger);
        let expected = (g0, ledger.unit(), g.order() as i64, Provenance::Established);
        ensure(
            entries.len() == 1
                && (entries[0].source, entries[0].target, entries[0].coefficient, entries[0].provenance) == expected,
            || format!("{}: entries {entries:?}", g.name()),
        )?;
        check_ledger(&ledger, &entries).map_err(|e| format!("{}: {e}", g.name()))?;
        slowest = slowest.max(start.elapsed());
        ensure(start.elapsed() < Duration::from_secs(1), || format!("{} took {:?}", g.name(), start.elapsed()))?;
    }
    Ok(format!(
        "γ₀ in degree -1 and δ(γ₀) = |G|·unit for {} groups, slowest {:.3}s",
        presentations.len(),
        slowest.as_secs_f64()
    ))
}

fn c5_composition() -> Outcome {
    let out = battery::run(1000, 2024, 24).map_err(|e| e.to_string())?;
    let bad: Vec<u64> = out.failures().map(|t| t.index).collect();
    ensure(bad.is_empty(), || format!("trials {bad:?} differ"))?;
    let middles: std::collections::BTreeSet<&str> =
        out.trials.iter().flat_map(|t| [t.groups[0].as_str(), t.groups[3].as_str()]).collect();
    Ok(format!("1000 span pairs (seed 2024) equal, {} distinct middle groups", middles.len()))
}

fn c6_vanishing() -> Outcome {
    let mut groups = battery_groups(48);
    groups.extend((1..=48).map(|k| scalar_cyclic(k, 1).enumerate(48).unwrap()));
    let mut cases = 0;
    for g in &groups {
        let order = g.order() as u64;
        for m in 2..=30u64 {
            let ring = CoefficientRing::integers_mod(m).unwrap();
            let coprime = num_integer::gcd(order, m) == 1;
            ensure(sh_vanishing(g, ring).unwrap() == coprime, || format!("|G|={order}, Z/{m}"))?;
            cases += 1;
        }
        ensure(sh_vanishing(g, CoefficientRing::Rationals).unwrap(), || format!("|G|={order}, Q"))?;
    }
    let z2 = antipodal(2).enumerate(2).unwrap();
    ensure(sh_vanishing(&z2, CoefficientRing::Rationals).unwrap(), || "(2, Q) does not vanish".into())?;
    ensure(!sh_vanishing(&z2, CoefficientRing::IntegersMod(2)).unwrap(), || "(2, Z/2) vanishes".into())?;
    Ok(format!("{cases} (group, Z/m) cases agree with gcd(|G|, m) = 1"))
}

fn c7_constraints() -> Outcome {
    let bound = |b: BoundaryDescriptor| constraint_for_boundary(b).effective_bound().map(|x| x.to_string());
    let brieskorn = bound(BoundaryDescriptor::brieskorn(2, 3).unwrap());
    ensure(brieskorn.as_deref() == Some("1"), || format!("brieskorn:2,3 bound {brieskorn:?}"))?;
    let lens = constraint_for_boundary(BoundaryDescriptor::lens(2, 3).unwrap());
    let lens_bound = lens.effective_bound().map(|x| x.to_string());
    ensure(lens_bound.as_deref() == Some("2"), || format!("lens:2,3 bound {lens_bound:?}"))?;
    let u = lens.uniqueness.as_ref().ok_or("lens:2,3 has no uniqueness record")?;
    ensure(u.count == 1 && u.model == "C^3/(Z/2)", || format!("uniqueness {u:?}"))?;
    for n in 2..=6 {
        let b = bound(BoundaryDescriptor::subcritical(n).unwrap());
        ensure(b.as_deref() == Some("1"), || format!("subcritical:{n} bound {b:?}"))?;
    }
    Ok("brieskorn:2,3 -> 1, lens:2,3 -> 2 with one C^3/(Z/2) point, subcritical -> 1".into())
}

fn c8_mclean() -> Outcome {
    let d = |g: FiniteUnitaryGroup| mclean_discrepancy(&g).unwrap();
    let c2 = d(antipodal(2).enumerate(2).unwrap());
    ensure(c2 == (q(0, 1), Verdict::CanonicalNotTerminal), || format!("C^2/(Z/2): {c2:?}"))?;
    let c3 = d(antipodal(3).enumerate(2).unwrap());
    ensure(c3 == (q(1, 1), Verdict::Terminal), || format!("C^3/(Z/2): {c3:?}"))?;
    for k in 2..=8 {
        let a = d(a_type(k).enumerate(8).unwrap());
        ensure(a.0 == q(0, 1), || format!("A_{}: {a:?}", k - 1))?;
    }
    Ok("C^2/(Z/2) canonical (0), C^3/(Z/2) terminal (1), A_1..A_7 discrepancy 0".into())
}

fn c9_associativity() -> Outcome {
    let groups = battery_groups(24);
    let conventions = [Convention::OrbitRepresentativeSum, Convention::FullPairSum];
    let mut passes_all = [true; 2];
    let mut counterexample = None;
    for g in &groups {
        let mut any = false;
        for (i, &c) in conventions.iter().enumerate() {
            let fails = CrRing::new(g, c).unwrap().associativity_failures().len();
            any |= fails == 0;
            if fails > 0 {
                passes_all[i] = false;
                counterexample.get_or_insert_with(|| format!("{} fails on {} ({fails} triples)", c.as_str(), g.name()));
            }
        }
        ensure(any, || format!("{}: no convention is associative", g.name()))?;
    }
    let named: Vec<&str> = conventions.iter().zip(passes_all).filter(|(_, ok)| *ok).map(|(c, _)| c.as_str()).collect();
    ensure(named.contains(&Convention::DEFAULT.as_str()), || format!("default not among {named:?}"))?;
    Ok(format!(
        "{} passes all {} groups; {}",
        named.join(", "),
        groups.len(),
        counterexample.unwrap_or_else(|| "no counterexample".into())
    ))
}

fn random_element(rng: &mut ChaCha8Rng, n: u32) -> CyclotomicNumber {
    let terms: Vec<(Rational, i64)> = (0..rng.random_range(0..=6))
        .map(|_| (q(rng.random_range(-9..=9), rng.random_range(1..=5)), rng.random_range(0..2 * n as i64)))
        .collect();
    CyclotomicNumber::make(n, &terms).unwrap()
}

fn c10_cyclotomic() -> Outcome {
    for n in 1..=60u32 {
        let mut prod = vec![BigInt::from(1)];
        for d in divisors(n) {
            let phi = cyclotomic_polynomial(d).unwrap();
            let mut next = vec![BigInt::from(0); prod.len() + phi.coefficients().len() - 1];
            for (i, a) in prod.iter().enumerate() {
                for (j, b) in phi.coefficients().iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            prod = next;
        }
        let mut expected = vec![BigInt::from(0); n as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[n as usize] = BigInt::from(1);
        ensure(prod == expected, || format!("product of Φ_d over d | {n} is not x^{n} - 1"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let mut inverted = 0;
    for case in 0..10_000 {
        let n = rng.random_range(1..=60u32);
        let (a, b, c) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
        let one = CyclotomicNumber::one(n).unwrap();
        let zero = CyclotomicNumber::zero(n).unwrap();
        let fail = |what: &str| format!("case {case} (N={n}): {what} for a={a}, b={b}, c={c}");
        ensure(&a + &b == &b + &a && &a * &b == &b * &a, || fail("commutativity"))?;
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || fail("additive associativity"))?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || fail("multiplicative associativity"))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || fail("distributivity"))?;
        ensure(&a + &zero == a && &a * &one == a && (&a + &(-&a)).is_zero(), || fail("identities"))?;
        if a.is_zero() {
            ensure(a.inv().is_err(), || fail("zero is invertible"))?;
        } else {
            ensure((&a * &a.inv().unwrap()).is_one(), || fail("a·a⁻¹ ≠ 1"))?;
            inverted += 1;
        }
        ensure(a.conjugate().conjugate() == a, || fail("conjugation is not an involution"))?;
        ensure((&a * &b).conjugate() == &a.conjugate() * &b.conjugate(), || fail("conjugation is not multiplicative"))?;
        let phi = cyclotomic_polynomial(n).unwrap();
        let terms: Vec<(Rational, i64)> =
            phi.coefficients().iter().enumerate().map(|(i, k)| (Rational::from_integer(k.clone()), i as i64)).collect();
        ensure(a.same_field(&terms).is_zero(), || fail("Φ_N(ζ_N) ≠ 0"))?;
    }
    Ok(format!("Φ products for N ≤ 60 and 10000 random cases ({inverted} inverses), all exact"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Chen-Ruan rank of C^n/(Z/2)", Duration::from_secs(1), c1_antipodal_rank),
        (2, "age duality", Duration::from_secs(10), c2_age_duality),
        (3, "CZ periodicity", Duration::from_secs(5), c3_cz_periodicity),
        // 1 s per group is enforced inside
        (4, "γ₀ grading and unit differential", Duration::MAX, c4_gamma0),
        (5, "span composition identity", Duration::from_secs(30), c5_composition),
        (6, "vanishing predicate", Duration::from_secs(1), c6_vanishing),
        (7, "constraint table", Duration::from_secs(1), c7_constraints),
        (8, "McLean criterion", Duration::from_secs(1), c8_mclean),
        (9, "cup-product associativity sweep", Duration::from_secs(60), c9_associativity),
        (10, "cyclotomic kernel", Duration::from_secs(30), c10_cyclotomic),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(Ok(detail)) if elapsed <= limit => Ok(detail),
            Ok(Ok(detail)) => Err(format!("{detail}; over the {:?} limit", limit)),
            Ok(Err(e)) => Err(e),
            Err(_) => Err("panicked".into()),
        };
        match verdict {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} [{:.3}s]", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {e} [{:.3}s]", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
