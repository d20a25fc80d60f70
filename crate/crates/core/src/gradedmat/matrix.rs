use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gradedmat::Coeff;
use crate::qring::LaurentPoly;

/// Row count above which products are split across threads.
const PAR_THRESHOLD: usize = 64;

/// Sparse square matrix on a Z2-graded basis.
///
/// Multiplication is ordinary matrix multiplication; grading signs only enter
/// through the tensor operations in this module.
#[derive(Clone)]
pub struct GradedMatrix<C = LaurentPoly> {
    gradings: Vec<u8>,
    rows: Vec<BTreeMap<usize, C>>,
    parity: Option<u8>,
}

/// Equality of spaces and entries; the declared parity is not compared.
impl<C: Coeff> PartialEq for GradedMatrix<C> {
    fn eq(&self, other: &Self) -> bool {
        self.gradings == other.gradings && self.rows == other.rows
    }
}

/// An entry where two matrices disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryDiff<C> {
    pub row: usize,
    pub col: usize,
    pub lhs: C,
    pub rhs: C,
}

impl<C: Coeff> GradedMatrix<C> {
    pub fn zero(gradings: Vec<u8>) -> Self {
        let n = gradings.len();
        GradedMatrix {
            gradings,
            rows: vec![BTreeMap::new(); n],
            parity: None,
        }
    }

    pub fn identity(gradings: Vec<u8>) -> Self {
        let n = gradings.len();
        Self::diagonal(gradings, vec![C::one(); n])
    }

    pub fn diagonal(gradings: Vec<u8>, diag: Vec<C>) -> Self {
        let mut m = Self::zero(gradings);
        for (i, c) in diag.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// `E^r_c`: 1 at `(r, c)`, zero elsewhere.
    pub fn elementary(gradings: Vec<u8>, r: usize, c: usize) -> Self {
        let mut m = Self::zero(gradings);
        m.set(r, c, C::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn gradings(&self) -> &[u8] {
        &self.gradings
    }

    pub fn parity(&self) -> Option<u8> {
        self.parity
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&C> {
        self.rows[r].get(&c)
    }

    pub fn entry(&self, r: usize, c: usize) -> C {
        self.get(r, c).cloned().unwrap_or_else(C::zero)
    }

    /// Stores `v` at `(r, c)`, removing the entry when `v` is zero.
    pub fn set(&mut self, r: usize, c: usize, v: C) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &C) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(x) => {
                *x = x.plus(v);
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Parity shared by every stored entry, `None` if mixed. The zero matrix
    /// reports the declared parity, or even.
    pub fn homogeneous_parity(&self) -> Option<u8> {
        let mut p = None;
        for (r, c, _) in self.entries() {
            let e = (self.gradings[r] + self.gradings[c]) % 2;
            match p {
                None => p = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        p.or(self.parity).or(Some(0))
    }

    /// Declares the matrix homogeneous of parity `p`, checking every entry.
    pub fn with_parity(mut self, p: u8) -> Result<Self> {
        for (r, c, _) in self.entries() {
            if (self.gradings[r] + self.gradings[c]) % 2 != p % 2 {
                return Err(Error::InvalidInput(format!(
                    "entry ({}, {}) breaks declared parity {p}",
                    r + 1,
                    c + 1
                )));
            }
        }
        self.parity = Some(p % 2);
        Ok(self)
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            let mut z = Self::zero(self.gradings.clone());
            z.parity = self.parity;
            return z;
        }
        self.map(|v| v.times(s)).keep_parity(self.parity)
    }

    fn keep_parity(mut self, p: Option<u8>) -> Self {
        self.parity = p;
        self
    }

    /// Entrywise image under a ring map; zero images are dropped.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedMatrix<D> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*c, w))
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            gradings: self.gradings.clone(),
            rows,
            parity: None,
        }
    }

    /// Fallible entrywise map.
    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<GradedMatrix<D>> {
        let mut out = GradedMatrix::zero(self.gradings.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v)?);
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &Self, op: &str) -> Result<()> {
        if self.gradings != other.gradings {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{} (or different gradings)",
                self.dim(),
                self.dim(),
                other.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other, "add")?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v);
        }
        out.parity = match (self.parity, other.parity) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other, "mul")?;
        let row_product = |row: &BTreeMap<usize, C>| {
            let mut acc: BTreeMap<usize, C> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let p = a.times(b);
                    match acc.get_mut(j) {
                        Some(x) => *x = x.plus(&p),
                        None => {
                            acc.insert(*j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc
        };
        let rows: Vec<BTreeMap<usize, C>> = if self.dim() >= PAR_THRESHOLD {
            self.rows.par_iter().map(row_product).collect()
        } else {
            self.rows.iter().map(row_product).collect()
        };
        let parity = match (self.parity, other.parity) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            _ => None,
        };
        Ok(GradedMatrix {
            gradings: self.gradings.clone(),
            rows,
            parity,
        })
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<EntryDiff<C>> {
        for r in 0..self.dim().min(other.dim()) {
            let (a, b) = (&self.rows[r], &other.rows[r]);
            if a == b {
                continue;
            }
            let cols: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            for c in cols {
                let (x, y) = (self.entry(r, c), other.entry(r, c));
                if x != y {
                    return Some(EntryDiff {
                        row: r,
                        col: c,
                        lhs: x,
                        rhs: y,
                    });
                }
            }
        }
        None
    }

    /// Entries as `(row, col, value)` with 1-based positions.
    pub fn to_triples(&self) -> Vec<(usize, usize, C)> {
        self.entries().map(|(r, c, v)| (r + 1, c + 1, v.clone())).collect()
    }

    pub fn from_triples(gradings: Vec<u8>, triples: Vec<(usize, usize, C)>) -> Result<Self> {
        let n = gradings.len();
        let mut m = Self::zero(gradings);
        for (r, c, v) in triples {
            if r == 0 || c == 0 || r > n || c > n {
                return Err(Error::Schema(format!(
                    "entry ({r}, {c}) outside a {n}x{n} matrix (positions are 1-based)"
                )));
            }
            m.add_to(r - 1, c - 1, &v);
        }
        Ok(m)
    }
}

pub fn elementary<C: Coeff>(gradings: &[u8], a: usize, b: usize) -> GradedMatrix<C> {
    GradedMatrix::elementary(gradings.to_vec(), a, b)
}

impl<C: Coeff> Add<&GradedMatrix<C>> for &GradedMatrix<C> {
    type Output = GradedMatrix<C>;
    /// Panics on a dimension mismatch; use `try_add` for untrusted input.
    fn add(self, rhs: &GradedMatrix<C>) -> GradedMatrix<C> {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl<C: Coeff> Sub<&GradedMatrix<C>> for &GradedMatrix<C> {
    type Output = GradedMatrix<C>;
    fn sub(self, rhs: &GradedMatrix<C>) -> GradedMatrix<C> {
        self.try_add(&-rhs).expect("matrix dimensions agree")
    }
}

impl<C: Coeff> Mul<&GradedMatrix<C>> for &GradedMatrix<C> {
    type Output = GradedMatrix<C>;
    /// Panics on a dimension mismatch; use `try_mul` for untrusted input.
    fn mul(self, rhs: &GradedMatrix<C>) -> GradedMatrix<C> {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<C: Coeff> Neg for &GradedMatrix<C> {
    type Output = GradedMatrix<C>;
    fn neg(self) -> GradedMatrix<C> {
        self.map(C::negated).keep_parity(self.parity)
    }
}

impl<C: Coeff> fmt::Debug for GradedMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {}x{} {:?}", self.dim(), self.dim(), self.gradings)?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  ({}, {}) = {v}", r + 1, c + 1)?;
        }
        Ok(())
    }
}
