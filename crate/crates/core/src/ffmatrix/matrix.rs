use crate::error::{Error, Result};
use crate::perm::{ElementBudget, Permutation};

use super::field::{FieldElem, FiniteField};

/// A square matrix over a finite field, acting on row vectors (`x ↦ xM`).
/// Row `i` is the image of the basis vector `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for e in row {
                if !field.contains(e) {
                    return Err(Error::Field(format!(
                        "entry {e} is not an element of a field of order {}",
                        field.order()
                    )));
                }
                entries.push(e);
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<FieldElem>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn mul(&self, other: &Self, field: &FiniteField) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let cell = &mut entries[i * d + j];
                    *cell = field.add(*cell, field.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(Self { dim: d, entries })
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.get(i, j);
            }
        }
        Self { dim: d, entries }
    }

    pub fn scale(&self, c: FieldElem, field: &FiniteField) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| field.mul(c, e)).collect(),
        }
    }

    pub fn determinant(&self, field: &FiniteField) -> FieldElem {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| a[r * d + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
                det = field.neg(det);
            }
            let pv = a[col * d + col];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).expect("nonzero pivot");
            for r in col + 1..d {
                let factor = field.mul(a[r * d + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..d {
                    let sub = field.mul(factor, a[col * d + j]);
                    a[r * d + j] = field.sub(a[r * d + j], sub);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self, field: &FiniteField) -> bool {
        self.determinant(field) != 0
    }

    /// Multiplicative order by repeated multiplication; `None` if singular.
    pub fn order(&self, field: &FiniteField) -> Option<u64> {
        if !self.is_invertible(field) {
            return None;
        }
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            acc = acc.mul(self, field).ok()?;
            k += 1;
        }
        Some(k)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[FieldElem], field: &FiniteField) -> Vec<FieldElem> {
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = field.add(*o, field.mul(x, self.get(i, j)));
            }
        }
        out
    }
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    field: FiniteField,
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(field: FiniteField, gram: Matrix) -> Result<Self> {
        if gram.transpose() != gram {
            return Err(Error::Invalid("Gram matrix is not symmetric".into()));
        }
        Ok(Self { field, gram })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible(&self.field)
    }

    /// `B(x, y) = x F yᵀ`.
    pub fn eval(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        let f = &self.field;
        let xf = self.gram.apply(x, f);
        xf.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// True iff `M F Mᵀ = F`.
    pub fn is_isometry(&self, m: &Matrix) -> Result<bool> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        let f = &self.field;
        Ok(m.mul(&self.gram, f)?.mul(&m.transpose(), f)? == self.gram)
    }

    /// The reflection `x ↦ x − 2·B(x,v)/B(v,v)·v` in the 1-space spanned by `v`.
    pub fn reflection(&self, v: &[FieldElem]) -> Result<Matrix> {
        let f = &self.field;
        if f.characteristic() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let bvv = self.eval(v, v);
        if bvv == 0 {
            return Err(Error::SingularVector(v.to_vec()));
        }
        let two_over = f.div(f.from_int(2), bvv)?;
        let d = self.dim();
        // B(e_i, v) = (F vᵀ)_i
        let fv = self.gram.apply(v, f);
        let mut rows = Vec::with_capacity(d);
        for (i, &bi) in fv.iter().enumerate() {
            let c = f.mul(two_over, bi);
            let row: Vec<FieldElem> = (0..d)
                .map(|j| {
                    let e = u32::from(i == j);
                    f.sub(e, f.mul(c, v[j]))
                })
                .collect();
            rows.push(row);
        }
        Matrix::from_rows(f, rows)
    }
}

/// The nonzero row vectors of `GF(q)^d`, numbered `1..q^d` by their base-`q` code
/// with the first coordinate most significant. This is lexicographic order on
/// coordinate tuples with field elements ordered by their integer encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorDomain {
    field: FiniteField,
    dim: usize,
}

impl VectorDomain {
    pub fn new(field: FiniteField, dim: usize) -> Self {
        Self { field, dim }
    }

    pub fn size(&self) -> u64 {
        (self.field.order() as u64)
            .checked_pow(self.dim as u32)
            .map(|n| n - 1)
            .unwrap_or(u64::MAX)
    }

    pub fn vector(&self, point: usize) -> Vec<FieldElem> {
        let q = self.field.order() as usize;
        let mut out = vec![0; self.dim];
        let mut x = point;
        for slot in out.iter_mut().rev() {
            *slot = (x % q) as FieldElem;
            x /= q;
        }
        out
    }

    pub fn point(&self, v: &[FieldElem]) -> usize {
        let q = self.field.order() as usize;
        v.iter().fold(0, |acc, &c| acc * q + c as usize)
    }

    /// The permutation of the nonzero vectors induced by `x ↦ xM`.
    pub fn permutation(&self, m: &Matrix) -> Result<Permutation> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.dim(),
            });
        }
        if !m.is_invertible(&self.field) {
            return Err(Error::SingularMatrix);
        }
        let n = self.size() as usize;
        let mut images = Vec::with_capacity(n);
        for point in 1..=n {
            let w = m.apply(&self.vector(point), &self.field);
            images.push((self.point(&w) - 1) as u32);
        }
        Ok(Permutation::from_raw(images))
    }
}

/// Converts matrix generators to permutations of the nonzero vectors.
pub fn matrix_rep_to_perm(
    field: &FiniteField,
    dim: usize,
    gens: &[Matrix],
    budget: ElementBudget,
) -> Result<(Vec<Permutation>, VectorDomain)> {
    let domain = VectorDomain::new(field.clone(), dim);
    let size = domain.size();
    if size > budget.max_elements() {
        return Err(Error::DomainTooLarge {
            size,
            cap: budget.max_elements(),
        });
    }
    let perms = gens
        .iter()
        .map(|m| domain.permutation(m))
        .collect::<Result<Vec<_>>>()?;
    Ok((perms, domain))
}
