use num_bigint::BigUint;
use num_integer::Integer;
use orbifill_core::constraints::{admissible_order, constraint_for_boundary, is_squarefree, BoundaryDescriptor};

#[test]
fn squarefree_matches_sieve() {
    const N: usize = 1_000_000;
    let mut spf = vec![0u32; N + 1];
    for i in 2..=N {
        if spf[i] == 0 {
            for j in (i..=N).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    for k in 1..=N {
        let mut m = k;
        let mut oracle = true;
        while m > 1 {
            let p = spf[m] as usize;
            m /= p;
            if m % p == 0 {
                oracle = false;
                break;
            }
        }
        assert_eq!(is_squarefree(k as u64), oracle, "k = {k}");
    }
}

#[test]
fn refinement_never_raises_the_bound() {
    for n in 3..=12u32 {
        for k in 2..n {
            let set = constraint_for_boundary(BoundaryDescriptor::brieskorn(k, n).unwrap());
            let coarse = set.divisors[0].value.clone();
            let bound = set.effective_bound().unwrap();
            assert!(bound <= coarse);
            assert!(coarse.is_multiple_of(&bound));
        }
    }
}

#[test]
fn trivial_group_is_always_admissible() {
    let one = BigUint::from(1u32);
    for k in 2..=8 {
        for n in 2..=8 {
            for b in [BoundaryDescriptor::lens(k, n).unwrap(), BoundaryDescriptor::brieskorn(k, n).unwrap()] {
                if constraint_for_boundary(b).applicable {
                    assert!(admissible_order(&one, b).unwrap().admissible);
                }
            }
        }
    }
    for n in 1..=8 {
        assert!(admissible_order(&one, BoundaryDescriptor::subcritical(n).unwrap()).unwrap().admissible);
        assert!(admissible_order(&one, BoundaryDescriptor::dilation(n).unwrap()).unwrap().admissible);
    }
}
