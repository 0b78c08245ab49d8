use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclotomic::{CyclotomicError, CyclotomicNumber};

/// Square matrix with entries in a single cyclotomic field ℚ(ζ_N).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitaryMatrix {
    dimension: usize,
    conductor: u32,
    entries: Vec<CyclotomicNumber>,
}

impl UnitaryMatrix {
    /// Builds a matrix from row-major entries, lifting each entry to conductor `n`.
    pub fn from_rows(conductor: u32, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self, CyclotomicError> {
        let dimension = rows.len();
        let mut entries = Vec::with_capacity(dimension * dimension);
        for row in rows {
            assert_eq!(row.len(), dimension, "matrix must be square");
            for e in row {
                entries.push(e.lift(conductor)?);
            }
        }
        Ok(UnitaryMatrix { dimension, conductor, entries })
    }

    pub fn identity(dimension: usize, conductor: u32) -> Self {
        let zero = CyclotomicNumber::zero(conductor).expect("positive conductor");
        let one = CyclotomicNumber::one(conductor).expect("positive conductor");
        let entries = (0..dimension * dimension)
            .map(|k| if k / dimension == k % dimension { one.clone() } else { zero.clone() })
            .collect();
        UnitaryMatrix { dimension, conductor, entries }
    }

    /// Diagonal matrix `diag(ζ_N^{e_1}, …, ζ_N^{e_n})`.
    pub fn diagonal_roots(conductor: u32, exponents: &[i64]) -> Self {
        let mut m = Self::identity(exponents.len(), conductor);
        for (i, &e) in exponents.iter().enumerate() {
            m.entries[i * exponents.len() + i] = CyclotomicNumber::zeta(conductor, e).expect("positive conductor");
        }
        m
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn entry(&self, row: usize, col: usize) -> &CyclotomicNumber {
        &self.entries[row * self.dimension + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CyclotomicNumber]> {
        self.entries.chunks(self.dimension)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dimension;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicNumber::zero(self.conductor).expect("positive conductor");
                for k in 0..n {
                    let a = self.entry(i, k);
                    let b = rhs.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        UnitaryMatrix { dimension: n, conductor: self.conductor, entries }
    }

    pub fn conjugate_transpose(&self) -> Self {
        let n = self.dimension;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(j, i).conjugate());
            }
        }
        UnitaryMatrix { dimension: n, conductor: self.conductor, entries }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.conductor).expect("positive conductor");
        for i in 0..self.dimension {
            acc = &acc + self.entry(i, i);
        }
        acc
    }

    /// First `(row, col)` where `M^* M` differs from the identity.
    pub fn unitarity_defect(&self) -> Option<(usize, usize)> {
        let g = self.conjugate_transpose().mul(self);
        for i in 0..self.dimension {
            for j in 0..self.dimension {
                let e = g.entry(i, j);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() }))
    }

    /// Byte string that identifies the matrix exactly; entries are reduced
    /// at the matrix conductor so equal matrices share a key.
    pub fn canonical_key(&self) -> Vec<u8> {
        use core::fmt::Write;
        let mut s = String::new();
        for e in &self.entries {
            for c in e.coefficients() {
                write!(s, "{c},").unwrap();
            }
            s.push(';');
        }
        s.into_bytes()
    }

    /// Row-major literal strings, as they appear in group documents.
    pub fn to_literals(&self) -> Vec<Vec<String>> {
        self.rows().map(|row| row.iter().map(CyclotomicNumber::to_literal).collect()).collect()
    }
}
