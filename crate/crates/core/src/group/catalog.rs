//! Presentations of standard finite subgroups of U(n).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{GroupPresentation, UnitaryMatrix};
use crate::cyclotomic::{CyclotomicNumber, Rational};

fn build(name: &str, dimension: usize, conductor: u32, gens: Vec<UnitaryMatrix>) -> GroupPresentation {
    GroupPresentation::new(name, dimension, conductor, gens).expect("catalog generators are unitary")
}

fn entry(conductor: u32, terms: &[(i64, i64, i64)]) -> CyclotomicNumber {
    let t: Vec<(Rational, i64)> = terms.iter().map(|&(n, d, e)| (Rational::new(n.into(), d.into()), e)).collect();
    CyclotomicNumber::make(conductor, &t).expect("positive conductor")
}

pub fn trivial(dimension: usize) -> GroupPresentation {
    build("trivial", dimension, 1, Vec::new())
}

/// ⟨−I⟩ acting on ℂⁿ.
pub fn antipodal(n: usize) -> GroupPresentation {
    build(&format!("antipodal-{n}"), n, 2, vec![UnitaryMatrix::diagonal_roots(2, &vec![1; n])])
}

/// ⟨ζ_k · I⟩ on ℂⁿ, whose link is the lens space L(k; 1, …, 1).
pub fn scalar_cyclic(k: u32, n: usize) -> GroupPresentation {
    build(&format!("lens-{k}-{n}"), n, k, vec![UnitaryMatrix::diagonal_roots(k, &vec![1; n])])
}

/// ⟨diag(ζ_k^{w_1}, …, ζ_k^{w_n})⟩.
pub fn diagonal_cyclic(k: u32, weights: &[i64]) -> GroupPresentation {
    let w: Vec<_> = weights.iter().map(ToString::to_string).collect();
    build(&format!("cyclic-{k}({})", w.join(",")), weights.len(), k, vec![UnitaryMatrix::diagonal_roots(k, weights)])
}

/// The A_{k−1} surface singularity group ⟨diag(ζ_k, ζ_k^{k−1})⟩.
pub fn a_type(k: u32) -> GroupPresentation {
    let mut p = diagonal_cyclic(k, &[1, k as i64 - 1]);
    p.name = format!("A{}", k - 1);
    p
}

/// The quaternion group ⟨[[i, 0], [0, −i]], [[0, 1], [−1, 0]]⟩ ⊂ SU(2).
pub fn quaternion() -> GroupPresentation {
    let mut p = binary_dihedral(2);
    p.name = "quaternion".into();
    p
}

/// Binary dihedral group of order 4m in SU(2).
pub fn binary_dihedral(m: u32) -> GroupPresentation {
    let c = (2 * m).lcm(&2);
    let rot = UnitaryMatrix::diagonal_roots(c, &[1, -1]);
    let flip = UnitaryMatrix::from_rows(
        c,
        vec![vec![entry(c, &[]), entry(c, &[(1, 1, 0)])], vec![entry(c, &[(-1, 1, 0)]), entry(c, &[])]],
    )
    .expect("same conductor");
    build(&format!("binary-dihedral-{}", 4 * m), 2, c, vec![rot, flip])
}

/// Binary tetrahedral group (order 24) in SU(2), entries in ℚ(i).
pub fn binary_tetrahedral() -> GroupPresentation {
    build("binary-tetrahedral", 2, 4, tetrahedral_generators(4))
}

fn tetrahedral_generators(c: u32) -> Vec<UnitaryMatrix> {
    let i = (c / 4) as i64;
    let rot = UnitaryMatrix::diagonal_roots(c, &[i, -i]);
    let flip = UnitaryMatrix::from_rows(
        c,
        vec![vec![entry(c, &[]), entry(c, &[(1, 1, 0)])], vec![entry(c, &[(-1, 1, 0)]), entry(c, &[])]],
    )
    .expect("same conductor");
    // (1 + i + j + k) / 2
    let face = UnitaryMatrix::from_rows(
        c,
        vec![
            vec![entry(c, &[(1, 2, 0), (1, 2, i)]), entry(c, &[(1, 2, 0), (1, 2, i)])],
            vec![entry(c, &[(-1, 2, 0), (1, 2, i)]), entry(c, &[(1, 2, 0), (-1, 2, i)])],
        ],
    )
    .expect("same conductor");
    vec![rot, flip, face]
}

/// Binary octahedral group (order 48) in SU(2), entries in ℚ(ζ₈).
pub fn binary_octahedral() -> GroupPresentation {
    let mut gens = tetrahedral_generators(8);
    gens.push(UnitaryMatrix::diagonal_roots(8, &[1, -1]));
    build("binary-octahedral", 2, 8, gens)
}

/// `⟨G, ζ_k·I⟩`, the group generated by `p` and the scalar `ζ_k`.
pub fn with_scalar(p: &GroupPresentation, k: u32) -> GroupPresentation {
    let c = p.conductor().lcm(&k);
    let mut gens = p.generators().to_vec();
    gens.push(UnitaryMatrix::diagonal_roots(k, &vec![1; p.dimension()]));
    build(&format!("{}*z{k}", p.name()), p.dimension(), c, gens)
}

/// Isolated test groups of order at most `max_order`, covering cyclic
/// families in dimensions 1–4, the quaternion and binary dihedral groups,
/// the binary polyhedral groups and a few of their scalar extensions.
pub fn isolated_battery(max_order: usize) -> Vec<GroupPresentation> {
    let mut out: Vec<(GroupPresentation, usize)> = vec![(trivial(2), 1)];
    for n in 1..=4 {
        out.push((antipodal(n), 2));
    }
    for k in 3..=8 {
        out.push((scalar_cyclic(k, 2), k as usize));
    }
    for k in 2..=8 {
        out.push((a_type(k), k as usize));
    }
    out.push((scalar_cyclic(6, 1), 6));
    out.push((scalar_cyclic(3, 3), 3));
    out.push((diagonal_cyclic(5, &[1, 2]), 5));
    out.push((diagonal_cyclic(7, &[1, 2, 4]), 7));
    out.push((diagonal_cyclic(9, &[1, 4, 7]), 9));
    out.push((diagonal_cyclic(12, &[1, 5, 7, 11]), 12));
    for m in 3..=12 {
        out.push((binary_dihedral(m), 4 * m as usize));
    }
    out.push((quaternion(), 8));
    out.push((binary_tetrahedral(), 24));
    out.push((binary_octahedral(), 48));
    // nonabelian groups outside SU(2), where twisted products are nonzero
    out.push((with_scalar(&quaternion(), 3), 24));
    out.push((with_scalar(&quaternion(), 5), 40));
    out.push((with_scalar(&binary_dihedral(4), 3), 48));
    out.into_iter().filter(|(_, o)| *o <= max_order).map(|(p, _)| p).collect()
}
