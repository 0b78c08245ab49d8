//! Finite subgroups of U(n) with cyclotomic entries: closure enumeration,
//! conjugacy classes, centralizers and exact eigenvalue multiplicities.

pub mod catalog;
mod matrix;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{parse_literal, CyclotomicNumber, Rational};

pub use matrix::UnitaryMatrix;

/// Closure cap used when the caller does not supply one.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("parse error at {locus}: {message}")]
    Parse { locus: String, message: String },
    #[error("generator {generator} is not unitary: entry ({row}, {col}) of M*M differs from the identity")]
    NotUnitary { generator: usize, row: usize, col: usize },
    #[error("group closure exceeds {max_order} elements")]
    GroupTooLarge { max_order: usize },
    #[error("invalid element table: {0}")]
    InvalidTable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

fn parse_err(locus: impl Into<String>, message: impl Into<String>) -> GroupError {
    GroupError::Parse { locus: locus.into(), message: message.into() }
}

/// Validated generators of a finite unitary group, before enumeration.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    name: String,
    dimension: usize,
    conductor: u32,
    generators: Vec<UnitaryMatrix>,
}

impl GroupPresentation {
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        conductor: u32,
        generators: Vec<UnitaryMatrix>,
    ) -> Result<Self, GroupError> {
        if dimension == 0 {
            return Err(parse_err("dimension", "must be a positive integer"));
        }
        if conductor == 0 {
            return Err(parse_err("conductor", "must be a positive integer"));
        }
        let mut lifted = Vec::with_capacity(generators.len());
        for (g, m) in generators.into_iter().enumerate() {
            if m.dimension() != dimension {
                return Err(parse_err(
                    format!("generators[{g}]"),
                    format!("expected a {dimension}x{dimension} matrix"),
                ));
            }
            let m = if m.conductor() == conductor {
                m
            } else {
                let rows = m.rows().map(<[CyclotomicNumber]>::to_vec).collect();
                UnitaryMatrix::from_rows(conductor, rows)
                    .map_err(|e| parse_err(format!("generators[{g}]"), e.to_string()))?
            };
            if let Some((row, col)) = m.unitarity_defect() {
                return Err(GroupError::NotUnitary { generator: g, row, col });
            }
            lifted.push(m);
        }
        Ok(GroupPresentation { name: name.into(), dimension, conductor, generators: lifted })
    }

    /// Builds a presentation from literal strings (one per matrix entry),
    /// reporting the offending `generators[g][i][j]` locus on failure.
    pub fn from_literals<S: AsRef<str>>(
        name: impl Into<String>,
        dimension: usize,
        conductor: u32,
        generators: &[Vec<Vec<S>>],
    ) -> Result<Self, GroupError> {
        if dimension == 0 {
            return Err(parse_err("dimension", "must be a positive integer"));
        }
        if conductor == 0 {
            return Err(parse_err("conductor", "must be a positive integer"));
        }
        let mut mats = Vec::with_capacity(generators.len());
        for (g, rows) in generators.iter().enumerate() {
            if rows.len() != dimension {
                return Err(parse_err(
                    format!("generators[{g}]"),
                    format!("expected {dimension} rows, found {}", rows.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(dimension);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != dimension {
                    return Err(parse_err(
                        format!("generators[{g}][{i}]"),
                        format!("expected {dimension} entries, found {}", row.len()),
                    ));
                }
                let mut out = Vec::with_capacity(dimension);
                for (j, lit) in row.iter().enumerate() {
                    let v = parse_literal(lit.as_ref(), conductor)
                        .map_err(|e| parse_err(format!("generators[{g}][{i}][{j}]"), e.to_string()))?;
                    out.push(v);
                }
                parsed.push(out);
            }
            mats.push(UnitaryMatrix::from_rows(conductor, parsed).expect("entries already at conductor"));
        }
        Self::new(name, dimension, conductor, mats)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[UnitaryMatrix] {
        &self.generators
    }

    /// Breadth-first closure under right multiplication by the generators.
    ///
    /// Each new element is recorded as `parent · generator`, which lets the
    /// full multiplication table be filled from the generator columns
    /// without any further matrix products.
    pub fn enumerate(&self, max_order: usize) -> Result<FiniteUnitaryGroup, GroupError> {
        let ngen = self.generators.len();
        let mut elements = vec![UnitaryMatrix::identity(self.dimension, self.conductor)];
        let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        index.insert(elements[0].canonical_key(), 0);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < elements.len() {
            let mut col = Vec::with_capacity(ngen);
            for (gi, gen) in self.generators.iter().enumerate() {
                let p = elements[next].mul(gen);
                let key = p.canonical_key();
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= max_order {
                            return Err(GroupError::GroupTooLarge { max_order });
                        }
                        let i = elements.len();
                        index.insert(key, i);
                        elements.push(p);
                        parent.push(Some((next, gi)));
                        i
                    }
                };
                col.push(idx);
            }
            right.push(col);
            next += 1;
        }
        let table = fill_table(&right, &parent);
        let generators = self.generators.iter().map(|g| index[&g.canonical_key()]).collect();
        FiniteUnitaryGroup::assemble(self, elements, table, generators)
    }
}

/// A conjugacy class with its centralizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Vec<usize>,
    /// Order of the representative.
    pub order: u32,
    pub label: String,
    pub age: Rational,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn centralizer_order(&self) -> usize {
        self.centralizer.len()
    }
}

/// Multiplicities of the eigenvalues ζ_o^m of an element of order o.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub element: usize,
    pub order: u32,
    /// Indexed by the exponent m in `0..order`.
    pub multiplicities: Vec<u32>,
}

impl EigenData {
    pub fn multiplicity(&self, m: u32) -> u32 {
        self.multiplicities[m as usize]
    }

    /// Σ_m multiplicity(m) · m / o.
    pub fn age(&self) -> Rational {
        let num: u64 = self.multiplicities.iter().enumerate().map(|(m, &k)| m as u64 * k as u64).sum();
        Rational::new(num.into(), self.order.into())
    }

    /// Nonzero `(m, multiplicity)` pairs in ascending m.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.multiplicities.iter().enumerate().filter(|(_, &k)| k > 0).map(|(m, &k)| (m as u32, k))
    }
}

/// Outcome of the isolated-singularity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsolatedCheck {
    Isolated,
    /// A non-identity element fixing a nonzero vector.
    NotIsolated {
        witness: usize,
    },
}

impl IsolatedCheck {
    pub fn is_isolated(self) -> bool {
        matches!(self, IsolatedCheck::Isolated)
    }
}

/// A fully enumerated finite subgroup of U(n). Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteUnitaryGroup {
    name: String,
    dimension: usize,
    conductor: u32,
    generators: Vec<usize>,
    elements: Vec<UnitaryMatrix>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    element_class: Vec<usize>,
    class_eigen: Vec<EigenData>,
}

impl FiniteUnitaryGroup {
    /// Rebuilds a group from previously enumerated elements and table (for
    /// example from a cache), checking that the table is a group table with
    /// the identity at index 0.
    pub fn from_parts(
        presentation: &GroupPresentation,
        elements: Vec<UnitaryMatrix>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let order = elements.len();
        if order == 0 || !elements[0].is_identity() {
            return Err(GroupError::InvalidTable("element 0 must be the identity".into()));
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(GroupError::InvalidTable("table must be square of side |G|".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if e.dimension() != presentation.dimension() || e.conductor() != presentation.conductor() {
                return Err(GroupError::InvalidTable(format!("element {i} has the wrong shape")));
            }
        }
        let mut seen = vec![false; order];
        for (i, row) in table.iter().enumerate() {
            if row[0] != i || table[0][i] != i {
                return Err(GroupError::InvalidTable(format!("identity law fails at {i}")));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for &x in row {
                if x >= order || core::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("row {i} is not a permutation")));
                }
            }
        }
        let mut index = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.canonical_key(), i).is_some() {
                return Err(GroupError::InvalidTable(format!("element {i} is duplicated")));
            }
        }
        let mut generators = Vec::new();
        for g in presentation.generators() {
            match index.get(&g.canonical_key()) {
                Some(&i) => generators.push(i),
                None => return Err(GroupError::InvalidTable("a generator is missing".into())),
            }
        }
        // generator columns are checked against actual products; the rest of
        // the table must agree with the one they determine
        let mut right = Vec::with_capacity(order);
        for (x, e) in elements.iter().enumerate() {
            let mut col = Vec::with_capacity(generators.len());
            for (gi, g) in presentation.generators().iter().enumerate() {
                let idx = *index.get(&e.mul(g).canonical_key()).ok_or_else(|| {
                    GroupError::InvalidTable(format!("element {x} times generator {gi} is not listed"))
                })?;
                if table[x][generators[gi]] != idx {
                    return Err(GroupError::InvalidTable(format!("entry ({x}, {}) is wrong", generators[gi])));
                }
                col.push(idx);
            }
            right.push(col);
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; order];
        let mut reached = vec![false; order];
        reached[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (gi, &y) in right[x].iter().enumerate() {
                if !reached[y] {
                    reached[y] = true;
                    parent[y] = Some((x, gi));
                    queue.push(y);
                }
            }
        }
        if queue.len() != order {
            return Err(GroupError::InvalidTable("elements are not generated by the generators".into()));
        }
        let flat = fill_table(&right, &parent);
        for (i, row) in table.iter().enumerate() {
            if let Some(j) = (0..order).find(|&j| row[j] != flat[i * order + j]) {
                return Err(GroupError::InvalidTable(format!("entry ({i}, {j}) is wrong")));
            }
        }
        Self::assemble(presentation, elements, flat, generators)
    }

    fn assemble(
        presentation: &GroupPresentation,
        elements: Vec<UnitaryMatrix>,
        table: Vec<usize>,
        generators: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let order = elements.len();
        let inverse: Vec<usize> = (0..order)
            .map(|i| (0..order).find(|&j| table[i * order + j] == 0).expect("group table has inverses"))
            .collect();
        let orders = (0..order)
            .map(|i| {
                let (mut p, mut k) = (i, 1u32);
                while p != 0 {
                    p = table[p * order + i];
                    k += 1;
                }
                k
            })
            .collect();
        let mut group = FiniteUnitaryGroup {
            name: presentation.name.clone(),
            dimension: presentation.dimension,
            conductor: presentation.conductor,
            generators,
            elements,
            table,
            inverse,
            orders,
            classes: Vec::new(),
            element_class: Vec::new(),
            class_eigen: Vec::new(),
        };
        group.compute_classes()?;
        Ok(group)
    }

    fn compute_classes(&mut self) -> Result<(), GroupError> {
        let order = self.order();
        let mut assigned = vec![false; order];
        let mut raw: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for x in 0..order {
            if assigned[x] {
                continue;
            }
            let mut members = Vec::new();
            let mut centralizer = Vec::new();
            for g in 0..order {
                let c = self.multiply(self.multiply(g, x), self.inverse[g]);
                if !assigned[c] {
                    assigned[c] = true;
                    members.push(c);
                }
                if c == x {
                    centralizer.push(g);
                }
            }
            members.sort_unstable();
            raw.push((members, centralizer));
        }
        let mut keyed = Vec::with_capacity(raw.len());
        let mut by_subgroup = BTreeMap::new();
        for (members, centralizer) in raw {
            let rep = members[0];
            let eigen = self.eigen_via_subgroup(rep, &mut by_subgroup)?;
            let age = eigen.age();
            let key = self.elements[rep].canonical_key();
            keyed.push((age, members.len(), key, members, centralizer, eigen));
        }
        keyed.sort_by(|a, b| (&a.0, a.1, &a.2).cmp(&(&b.0, b.1, &b.2)));

        let mut per_order: BTreeMap<u32, usize> = BTreeMap::new();
        let mut element_class = vec![0; order];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut class_eigen = Vec::with_capacity(keyed.len());
        for (ci, (age, _, _, members, centralizer, eigen)) in keyed.into_iter().enumerate() {
            for &m in &members {
                element_class[m] = ci;
            }
            let rep = members[0];
            let o = self.orders[rep];
            let count = per_order.entry(o).or_insert(0);
            let label = class_label(o, *count);
            *count += 1;
            classes.push(ConjugacyClass { representative: rep, members, centralizer, order: o, label, age });
            class_eigen.push(eigen);
        }
        self.classes = classes;
        self.element_class = element_class;
        self.class_eigen = class_eigen;
        Ok(())
    }

    /// Multiplicities of `x` from those of the lowest-index generator `c` of
    /// ⟨x⟩: if `x = c^j` then ζ^m for `c` becomes ζ^{mj} for `x`.
    fn eigen_via_subgroup(&self, x: usize, cache: &mut BTreeMap<usize, EigenData>) -> Result<EigenData, GroupError> {
        let o = self.orders[x];
        let mut p = 0;
        let mut best = (x, 1u32);
        for j in 1..o {
            p = self.multiply(p, x);
            if p < best.0 && j.gcd(&o) == 1 {
                best = (p, j);
            }
        }
        let (c, j0) = best;
        let base = match cache.entry(c) {
            alloc::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            alloc::collections::btree_map::Entry::Vacant(e) => e.insert(self.eigen_multiplicities(c)?),
        };
        let j1 = (1..=o).find(|j| (j * j0) % o == 1 % o).expect("unit modulo the order");
        let mut multiplicities = vec![0; o as usize];
        for (m, &k) in base.multiplicities.iter().enumerate() {
            multiplicities[(m as u64 * j1 as u64 % o as u64) as usize] = k;
        }
        Ok(EigenData { element: x, order: o, multiplicities })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnitaryMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &UnitaryMatrix {
        &self.elements[i]
    }

    /// Element indices of the presentation's generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    /// Rows of the multiplication table.
    pub fn table_rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order())
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.element_class[element]
    }

    /// Eigen data of the representative of class `c`.
    pub fn class_eigen(&self, c: usize) -> &EigenData {
        &self.class_eigen[c]
    }

    /// Age of the conjugacy class containing `element`.
    pub fn age_of(&self, element: usize) -> &Rational {
        &self.classes[self.element_class[element]].age
    }

    /// Order of `C(a) ∩ C(b)`.
    pub fn centralizer_intersection(&self, a: usize, b: usize) -> usize {
        (0..self.order())
            .filter(|&h| self.multiply(h, a) == self.multiply(a, h) && self.multiply(h, b) == self.multiply(b, h))
            .count()
    }

    /// Eigenvalue multiplicities by the character formula
    /// `mult(m) = (1/o) Σ_k ζ_o^{-mk} tr(g^k)`, evaluated exactly in ℚ(ζ_L)
    /// with `L = lcm(N, o)`.
    pub fn eigen_multiplicities(&self, element: usize) -> Result<EigenData, GroupError> {
        let o = self.orders[element];
        let n = self.conductor;
        let l = n.lcm(&o);
        let (scale_n, scale_o) = ((l / n) as i64, (l / o) as i64);
        let mut traces = Vec::with_capacity(o as usize);
        let mut p = 0;
        for _ in 0..o {
            traces.push(self.elements[p].trace());
            p = self.multiply(p, element);
        }
        let field = CyclotomicNumber::zero(l).expect("positive conductor");
        // integer numerators of every trace over one denominator, times o
        let den = traces.iter().flat_map(|t| t.coefficients()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<(usize, BigInt, i64)> = traces
            .iter()
            .enumerate()
            .flat_map(|(k, t)| {
                let den = &den;
                t.coefficients()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(e, c)| (k, c.numer() * (den / c.denom()), e as i64 * scale_n))
            })
            .collect();
        let den_o = &den * BigInt::from(o);
        let mut multiplicities = Vec::with_capacity(o as usize);
        for m in 0..o as i64 {
            let terms = scaled.iter().map(|(k, c, e)| (c, e - (m * *k as i64 % o as i64) * scale_o));
            let v = field.same_field_integral(&den_o, terms);
            let q = v.as_rational().ok_or_else(|| {
                GroupError::InternalInconsistency(format!(
                    "multiplicity of exponent {m} for element {element} is irrational"
                ))
            })?;
            if !q.is_integer() || q.is_negative() {
                return Err(GroupError::InternalInconsistency(format!(
                    "multiplicity of exponent {m} for element {element} is {q}"
                )));
            }
            multiplicities.push(q.to_integer().to_u32().expect("multiplicity bounded by dimension"));
        }
        let total: u32 = multiplicities.iter().sum();
        if total as usize != self.dimension {
            return Err(GroupError::InternalInconsistency(format!(
                "multiplicities of element {element} sum to {total}, not {}",
                self.dimension
            )));
        }
        Ok(EigenData { element, order: o, multiplicities })
    }

    /// No non-identity element has eigenvalue 1. The witness is the
    /// lowest-index offending element.
    pub fn is_isolated_singularity(&self) -> IsolatedCheck {
        self.classes
            .iter()
            .zip(&self.class_eigen)
            .filter(|(c, e)| c.representative != 0 && e.multiplicity(0) > 0)
            .map(|(c, _)| c.representative)
            .min()
            .map_or(IsolatedCheck::Isolated, |witness| IsolatedCheck::NotIsolated { witness })
    }

    /// Index of the class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.element_class[self.inverse[self.classes[c].representative]]
    }
}

/// Full multiplication table from right multiplication by generators and a
/// spanning tree `j = parent(j) · generator`.
fn fill_table(right: &[Vec<usize>], parent: &[Option<(usize, usize)>]) -> Vec<usize> {
    let order = right.len();
    let mut table = vec![0usize; order * order];
    for i in 0..order {
        table[i * order] = i;
    }
    for j in 1..order {
        let (p, g) = parent[j].expect("non-identity elements have a parent");
        for i in 0..order {
            table[i * order + j] = right[table[i * order + p]][g];
        }
    }
    table
}

fn class_label(order: u32, k: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if k < LETTERS.len() {
        format!("{order}{}", LETTERS[k] as char)
    } else {
        format!("{order}_{k}")
    }
}
