//! Spans of point orbifolds `•/H₁ ←s— •/G —t→ •/H₂`, the pull-push weight
//! `t_* s^*(1) = |H₂|/|G|`, and the fiber product of two composable spans.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::Rational;
use crate::group::FiniteUnitaryGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpanError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("map {map} is not a homomorphism: {detail}")]
    NotHomomorphism { map: String, detail: String },
    #[error("middle groups differ: right group of the first span is not the left group of the second")]
    MiddleMismatch,
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl TableGroup {
    /// Validates closure, identity at 0, inverses and associativity.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, SpanError> {
        let bad = |m: String| Err(SpanError::InvalidTable(m));
        let order = rows.len();
        if order == 0 {
            return bad("empty table".into());
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != order {
                return bad(format!("row {i} has {} entries, expected {order}", r.len()));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= order) {
                return bad(format!("row {i} contains out-of-range element {x}"));
            }
            table.extend_from_slice(r);
        }
        for a in 0..order {
            if table[a] != a || table[a * order] != a {
                return bad(format!("element 0 is not an identity (fails at {a})"));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| table[a * order + b] == 0 && table[b * order + a] == 0) {
                Some(b) => inverse[a] = b,
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(TableGroup { order, table, inverse })
    }

    /// Trusted conversion; the enumerated group is already a group.
    pub fn from_unitary(group: &FiniteUnitaryGroup) -> Self {
        let table: Vec<usize> = group.table_rows().flat_map(|r| r.iter().copied()).collect();
        let inverse = (0..group.order()).map(|a| group.inverse(a)).collect();
        TableGroup { order: group.order(), table, inverse }
    }

    /// Table of `elements` under `mul`; the first element must be the identity.
    fn from_closure<T: Clone + Ord>(elements: Vec<T>, mul: impl Fn(&T, &T) -> T) -> Self {
        let index: BTreeMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(index[&mul(a, b)]);
            }
        }
        let inverse =
            (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("finite group")).collect();
        TableGroup { order, table, inverse }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(m: usize) -> Self {
        let m = m.max(1);
        Self::from_closure((0..m).collect(), |a, b| (a + b) % m)
    }

    /// Dihedral group of order 2m: pairs (k, f) meaning r^k s^f.
    pub fn dihedral(m: usize) -> Self {
        let els: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..m).map(move |k| (k, f))).collect();
        Self::from_closure(els, move |&(k1, f1), &(k2, f2)| {
            let k = if f1 == 0 { k1 + k2 } else { k1 + m - k2 };
            (k % m, f1 ^ f2)
        })
    }

    /// Dicyclic group of order 4m (m = 2 gives the quaternion group).
    pub fn dicyclic(m: usize) -> Self {
        let n = 2 * m;
        let els: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |k| (k, f))).collect();
        Self::from_closure(els, move |&(k1, f1), &(k2, f2)| match (f1, f2) {
            (0, _) => ((k1 + k2) % n, f2),
            (_, 0) => ((k1 + n - k2) % n, 1),
            _ => ((k1 + n - k2 + m) % n, 0),
        })
    }

    pub fn quaternion() -> Self {
        Self::dicyclic(2)
    }

    /// Closure of permutations of `0..degree` (the identity is added first).
    pub fn permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let mut els = vec![id.clone()];
        let mut seen = BTreeSet::new();
        seen.insert(id);
        let mut i = 0;
        while i < els.len() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|x| g[els[i][x]]).collect();
                if seen.insert(p.clone()) {
                    els.push(p);
                }
            }
            i += 1;
        }
        Self::from_closure(els, |a: &Vec<usize>, b: &Vec<usize>| (0..a.len()).map(|x| a[b[x]]).collect())
    }

    pub fn symmetric3() -> Self {
        Self::permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn alternating4() -> Self {
        Self::permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    pub fn symmetric4() -> Self {
        Self::permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
    }

    /// Direct product; element (a, b) has index `a·|other| + b`.
    pub fn product(&self, other: &TableGroup) -> Self {
        let (m, n) = (self.order, other.order);
        let mut table = Vec::with_capacity(m * n * m * n);
        for a1 in 0..m {
            for b1 in 0..n {
                for a2 in 0..m {
                    for b2 in 0..n {
                        table.push(self.multiply(a1, a2) * n + other.multiply(b1, b2));
                    }
                }
            }
        }
        let inverse = (0..m * n).map(|x| self.inverse(x / n) * n + other.inverse(x % n)).collect();
        TableGroup { order: m * n, table, inverse }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order)
    }

    /// Subgroup on the listed elements (which must be closed), reindexed in
    /// the given order. Returns the group and the inclusion map.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(Self, Vec<usize>), SpanError> {
        let order = elements.len();
        if elements.first() != Some(&0) {
            return Err(SpanError::InvalidTable("subgroup must list the identity first".into()));
        }
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.order || pos[e] != usize::MAX {
                return Err(SpanError::InvalidTable(format!("bad or repeated subgroup element {e}")));
            }
            pos[e] = i;
        }
        // associativity is inherited, so closure and inverses suffice
        let mut table = Vec::with_capacity(order * order);
        for &a in elements {
            for &b in elements {
                let ab = pos[self.multiply(a, b)];
                if ab == usize::MAX {
                    return Err(SpanError::InvalidTable(format!("subset not closed at {a}·{b}")));
                }
                table.push(ab);
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for &a in elements {
            match pos[self.inverse(a)] {
                usize::MAX => return Err(SpanError::InvalidTable(format!("subset lacks the inverse of {a}"))),
                i => inverse.push(i),
            }
        }
        Ok((TableGroup { order, table, inverse }, elements.to_vec()))
    }

    /// A generating set built greedily from the elements in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut span = vec![0];
        for a in 1..self.order {
            if member[a] {
                continue;
            }
            gens.push(a);
            // re-close
            let mut i = 0;
            span.push(a);
            member[a] = true;
            while i < span.len() {
                for &g in &gens {
                    let x = self.multiply(span[i], g);
                    if !member[x] {
                        member[x] = true;
                        span.push(x);
                    }
                }
                i += 1;
            }
        }
        gens
    }
}

/// Checks that `map: src → dst` preserves products (hence the identity).
pub fn check_homomorphism(name: &str, src: &TableGroup, dst: &TableGroup, map: &[usize]) -> Result<(), SpanError> {
    let err = |detail: String| Err(SpanError::NotHomomorphism { map: name.into(), detail });
    if map.len() != src.order() {
        return err(format!("has {} images for a group of order {}", map.len(), src.order()));
    }
    if let Some((i, &x)) = map.iter().enumerate().find(|(_, &x)| x >= dst.order()) {
        return err(format!("image {x} of element {i} is out of range"));
    }
    for a in 0..src.order() {
        for b in 0..src.order() {
            if map[src.multiply(a, b)] != dst.multiply(map[a], map[b]) {
                return err(format!("f({a}·{b}) ≠ f({a})·f({b})"));
            }
        }
    }
    Ok(())
}

/// Extends generator images to a homomorphism, if one exists.
pub fn extend_homomorphism(
    src: &TableGroup,
    dst: &TableGroup,
    generators: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        for (&g, &h) in generators.iter().zip(images) {
            let x = src.multiply(a, g);
            let y = dst.multiply(map[a], h);
            if map[x] == usize::MAX {
                map[x] = y;
                queue.push(x);
            } else if map[x] != y {
                return None;
            }
        }
        i += 1;
    }
    if queue.len() != src.order() {
        return None;
    }
    check_homomorphism("extension", src, dst, &map).ok().map(|_| map)
}

/// `•/H₁ ←s— •/G —t→ •/H₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointOrbifoldSpan {
    left: TableGroup,
    middle: TableGroup,
    right: TableGroup,
    s: Vec<usize>,
    t: Vec<usize>,
}

impl PointOrbifoldSpan {
    pub fn new(
        left: TableGroup,
        middle: TableGroup,
        right: TableGroup,
        s: Vec<usize>,
        t: Vec<usize>,
    ) -> Result<Self, SpanError> {
        check_homomorphism("s", &middle, &left, &s)?;
        check_homomorphism("t", &middle, &right, &t)?;
        Ok(PointOrbifoldSpan { left, middle, right, s, t })
    }

    /// `H ←id— H —id→ H`.
    pub fn identity(h: TableGroup) -> Self {
        let id: Vec<usize> = (0..h.order()).collect();
        PointOrbifoldSpan { left: h.clone(), middle: h.clone(), right: h, s: id.clone(), t: id }
    }

    pub fn left(&self) -> &TableGroup {
        &self.left
    }

    pub fn middle(&self) -> &TableGroup {
        &self.middle
    }

    pub fn right(&self) -> &TableGroup {
        &self.right
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }
}

/// `t_* s^*(1) = |H₂| / |G|`.
pub fn pushpull(span: &PointOrbifoldSpan) -> Rational {
    Rational::new(span.right.order().into(), span.middle.order().into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Smallest element of H₂ in the orbit.
    pub representative: usize,
    pub size: usize,
    pub stabilizer_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<OrbitRecord>,
    pub acting_order: usize,
    pub set_size: usize,
}

impl OrbitDecomposition {
    /// Σ sizes = |H₂| and size · |stab| = |G₁||G₂| for every orbit.
    pub fn orbit_stabilizer_holds(&self) -> bool {
        self.orbits.iter().map(|o| o.size).sum::<usize>() == self.set_size
            && self.orbits.iter().all(|o| o.size * o.stabilizer_order == self.acting_order)
    }
}

/// The action groupoid `(G₁ × G₂) ⋉ H₂` with `(g₁, g₂)·h = s₂(g₂)·h·t₁(g₁)⁻¹`,
/// split into orbits, and one composite span `•/H₁ ← •/stab → •/H₃` per orbit.
pub fn fiber_product(
    span1: &PointOrbifoldSpan,
    span2: &PointOrbifoldSpan,
) -> Result<(OrbitDecomposition, Vec<PointOrbifoldSpan>), SpanError> {
    if span1.right != span2.left {
        return Err(SpanError::MiddleMismatch);
    }
    let (g1, g2, h2) = (&span1.middle, &span2.middle, &span1.right);
    let act = |a: usize, b: usize, h: usize| h2.multiply(h2.multiply(span2.s[b], h), h2.inverse(span1.t[a]));
    let product = g1.product(g2);
    let n2 = g2.order();
    let mut seen = vec![false; h2.order()];
    let mut orbits = Vec::new();
    let mut composites = Vec::new();
    for h in 0..h2.order() {
        if seen[h] {
            continue;
        }
        let mut stab = Vec::new();
        for x in 0..product.order() {
            let y = act(x / n2, x % n2, h);
            seen[y] = true;
            if y == h {
                stab.push(x);
            }
        }
        let size = product.order() / stab.len();
        orbits.push(OrbitRecord { representative: h, size, stabilizer_order: stab.len() });
        let (sub, incl) = product.subgroup(&stab)?;
        let s3 = incl.iter().map(|&x| span1.s[x / n2]).collect();
        let t3 = incl.iter().map(|&x| span2.t[x % n2]).collect();
        composites.push(PointOrbifoldSpan::new(span1.left.clone(), sub, span2.right.clone(), s3, t3)?);
    }
    let dec = OrbitDecomposition { orbits, acting_order: product.order(), set_size: h2.order() };
    Ok((dec, composites))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
    pub decomposition: OrbitDecomposition,
}

/// `|H₂||H₃|/(|G₁||G₂|)` against the sum of pull-push weights of the fiber
/// product components.
pub fn composition_check(span1: &PointOrbifoldSpan, span2: &PointOrbifoldSpan) -> Result<CompositionCheck, SpanError> {
    let (decomposition, composites) = fiber_product(span1, span2)?;
    let lhs = pushpull(span1) * pushpull(span2);
    let rhs = composites.iter().map(pushpull).fold(Rational::from_integer(0.into()), |a, b| a + b);
    let equal = lhs == rhs;
    Ok(CompositionCheck { lhs, rhs, equal, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn span(
        left: TableGroup,
        middle: TableGroup,
        right: TableGroup,
        s: Vec<usize>,
        t: Vec<usize>,
    ) -> PointOrbifoldSpan {
        PointOrbifoldSpan::new(left, middle, right, s, t).unwrap()
    }

    #[test]
    fn library_orders_and_validity() {
        let cases = [
            (TableGroup::cyclic(7), 7),
            (TableGroup::dihedral(5), 10),
            (TableGroup::quaternion(), 8),
            (TableGroup::dicyclic(3), 12),
            (TableGroup::symmetric3(), 6),
            (TableGroup::alternating4(), 12),
            (TableGroup::symmetric4(), 24),
            (TableGroup::cyclic(2).product(&TableGroup::cyclic(3)), 6),
        ];
        for (g, n) in cases {
            assert_eq!(g.order(), n);
            let rows: Vec<Vec<usize>> = g.rows().map(|r| r.to_vec()).collect();
            assert_eq!(TableGroup::new(rows).unwrap(), g);
        }
        // the quaternion group has a unique involution
        let q8 = TableGroup::quaternion();
        assert_eq!((1..8).filter(|&a| q8.multiply(a, a) == 0).count(), 1);
    }

    #[test]
    fn bad_tables() {
        assert!(TableGroup::new(vec![]).is_err());
        assert!(TableGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(TableGroup::new(vec![vec![0, 1], vec![1]]).is_err());
        assert!(TableGroup::new(vec![vec![0, 2], vec![1, 0]]).is_err());
        // a Latin square that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(TableGroup::new(rows).is_err());
    }

    #[test]
    fn subgroups() {
        let z6 = TableGroup::cyclic(6);
        let (z3, incl) = z6.subgroup(&[0, 4, 2]).unwrap();
        assert_eq!(z3.order(), 3);
        assert_eq!(incl, vec![0, 4, 2]);
        assert_eq!(z3.multiply(1, 1), 2);
        assert_eq!(z3.inverse(1), 2);
        assert!(z6.subgroup(&[2, 0, 4]).is_err());
        assert!(z6.subgroup(&[0, 1]).is_err());
        assert!(z6.subgroup(&[0, 3, 3]).is_err());
        assert!(z6.subgroup(&[0, 9]).is_err());
    }

    #[test]
    fn homomorphisms() {
        let z4 = TableGroup::cyclic(4);
        let z2 = TableGroup::cyclic(2);
        assert!(check_homomorphism("f", &z4, &z2, &[0, 1, 0, 1]).is_ok());
        assert!(check_homomorphism("f", &z2, &z4, &[0, 1]).is_err());
        assert_eq!(extend_homomorphism(&z4, &z2, &[1], &[1]), Some(vec![0, 1, 0, 1]));
        assert_eq!(extend_homomorphism(&z2, &z4, &[1], &[1]), None);
        let s4 = TableGroup::symmetric4();
        assert!(s4.generators().len() <= 3);
    }

    #[test]
    fn pushpull_examples() {
        let z2 = TableGroup::cyclic(2);
        assert_eq!(pushpull(&PointOrbifoldSpan::identity(z2.clone())), q(1, 1));
        let t = TableGroup::trivial();
        assert_eq!(pushpull(&span(t.clone(), t.clone(), TableGroup::cyclic(5), vec![0], vec![0])), q(5, 1));
        let z4 = TableGroup::cyclic(4);
        assert_eq!(pushpull(&span(t, z4.clone(), z2, vec![0; 4], vec![0, 1, 0, 1])), q(1, 2));
    }

    #[test]
    fn fiber_product_examples() {
        let z2 = TableGroup::cyclic(2);
        let id = PointOrbifoldSpan::identity(z2.clone());
        let (dec, comps) = fiber_product(&id, &id).unwrap();
        assert_eq!(dec.orbits, [OrbitRecord { representative: 0, size: 2, stabilizer_order: 2 }]);
        assert_eq!(comps.len(), 1);
        let c = composition_check(&id, &id).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (q(1, 1), q(1, 1), true));

        let triv = span(z2.clone(), z2.clone(), z2.clone(), vec![0, 1], vec![0, 0]);
        let triv2 = span(z2.clone(), z2.clone(), z2.clone(), vec![0, 0], vec![0, 1]);
        let (dec, _) = fiber_product(&triv, &triv2).unwrap();
        assert_eq!(dec.orbits.len(), 2);
        assert!(dec.orbits.iter().all(|o| o.stabilizer_order == 4 && o.size == 1));
        let c = composition_check(&triv, &triv2).unwrap();
        assert_eq!((c.lhs, c.rhs), (q(1, 1), q(1, 1)));

        let t = TableGroup::trivial();
        let z3 = TableGroup::cyclic(3);
        let a = span(z2.clone(), z2.clone(), t.clone(), vec![0, 1], vec![0, 0]);
        let b = span(t.clone(), z3.clone(), z3.clone(), vec![0; 3], vec![0, 1, 2]);
        let (dec, _) = fiber_product(&a, &b).unwrap();
        assert_eq!(dec.orbits, [OrbitRecord { representative: 0, size: 1, stabilizer_order: 6 }]);

        let all = PointOrbifoldSpan::identity(t);
        assert!(composition_check(&all, &all).unwrap().equal);

        assert_eq!(fiber_product(&id, &b), Err(SpanError::MiddleMismatch));
    }

    #[test]
    fn nonabelian_middle() {
        let q8 = TableGroup::quaternion();
        let z4 = TableGroup::cyclic(4);
        // element 4 is x, of order 4
        let incl = extend_homomorphism(&z4, &q8, &[1], &[4]).unwrap();
        let s1 = span(TableGroup::trivial(), z4.clone(), q8.clone(), vec![0; 4], incl.clone());
        let s2 = span(q8.clone(), z4.clone(), TableGroup::trivial(), incl, vec![0; 4]);
        let c = composition_check(&s1, &s2).unwrap();
        assert!(c.equal && c.decomposition.orbit_stabilizer_holds());
        assert_eq!(c.lhs, q(1, 2));
    }
}
