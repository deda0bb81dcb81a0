//! Dense and sparse exact linear algebra on tensor-product spaces.
//!
//! Tensor indices follow one convention everywhere: the leftmost factor is the
//! most significant digit of the mixed-radix index (see [`TensorIndex`]).

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};

/// Mixed-radix layout of a tensor product of spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorIndex {
    dims: Vec<usize>,
}

impl TensorIndex {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d > 0), "tensor factors must be nonzero");
        TensorIndex { dims }
    }

    /// `w (x) d (x) ... (x) d` with `n` copies of `d`.
    pub fn ambient(w: usize, d: usize, n: usize) -> Self {
        let mut dims = vec![w];
        dims.extend(std::iter::repeat_n(d, n));
        Self::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, &d) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        digits
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycloScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![CycloScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloScalar::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<CycloScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Self {
        Self::from_entries(rows, cols, values.iter().map(|&v| CycloScalar::from_int(v)).collect())
            .expect("value count matches shape")
    }

    pub fn diagonal(values: Vec<CycloScalar>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycloScalar] {
        &self.entries
    }

    /// Least common conductor of all entries.
    pub fn conductor(&self) -> u32 {
        self.entries.iter().fold(1u32, |acc, x| {
            num_integer::Integer::lcm(&acc, &x.conductor())
        })
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &CycloScalar)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, leftmost factor most significant.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ExactMatrix::zeros(rows, cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out.set(i * other.rows + k, j * other.cols + l, a * b);
            }
        }
        out
    }

    pub fn trace(&self) -> Result<CycloScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = CycloScalar::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.nonzeros() {
            out.set(j, i, v.conj());
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for (i, j, v) in self.nonzeros() {
            out.set(j, i, v.clone());
        }
        out
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            }))
    }

    /// First column index where `self` and `other` differ.
    pub fn first_differing_column(&self, other: &ExactMatrix) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square()
            && self
                .dagger()
                .matmul(self)
                .map(|p| p.is_identity())
                .unwrap_or(false)
    }

    pub fn to_sparse(&self) -> SparseOperator {
        assert!(self.is_square(), "sparse operators are square");
        let mut rows = vec![Vec::new(); self.rows];
        for (i, j, v) in self.nonzeros() {
            rows[i].push((j, v.clone()));
        }
        SparseOperator { dim: self.rows, rows }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for (i, j, v) in self.nonzeros() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.nonzeros() {
            out.set(self.rows + i, self.cols + j, v.clone());
        }
        out
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The map `v (x) w -> w (x) v` from `C^d1 (x) C^d2` to `C^d2 (x) C^d1`.
pub fn flip_operator(d1: usize, d2: usize) -> ExactMatrix {
    let n = d1 * d2;
    let mut m = ExactMatrix::zeros(n, n);
    for a in 0..d1 {
        for b in 0..d2 {
            m.set(b * d1 + a, a * d2 + b, CycloScalar::one());
        }
    }
    m
}

/// Square operator stored by rows; each row lists `(column, value)` pairs with
/// strictly increasing columns and no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<Vec<(usize, CycloScalar)>>,
}

impl SparseOperator {
    pub fn identity(dim: usize) -> Self {
        SparseOperator {
            dim,
            rows: (0..dim).map(|i| vec![(i, CycloScalar::one())]).collect(),
        }
    }

    /// Builds from unsorted row lists, merging duplicates and dropping zeros.
    pub fn from_rows(dim: usize, rows: Vec<Vec<(usize, CycloScalar)>>) -> Result<Self> {
        if rows.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} rows for dimension {dim}", rows.len())));
        }
        let mut out = Vec::with_capacity(dim);
        for row in rows {
            let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
            for (j, v) in row {
                if j >= dim {
                    return Err(Error::DimensionMismatch(format!("column {j} out of range {dim}")));
                }
                match acc.get_mut(&j) {
                    Some(x) => *x += &v,
                    None => {
                        acc.insert(j, v);
                    }
                }
            }
            out.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseOperator { dim, rows: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[(usize, CycloScalar)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn matmul(&self, other: &SparseOperator) -> Result<SparseOperator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "sparse product of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                if let [(k, a)] = row.as_slice() {
                    // monomial row: scale the selected row of `other`
                    return other.rows[*k]
                        .iter()
                        .map(|(j, b)| (*j, a * b))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                }
                let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        let p = a * b;
                        match acc.get_mut(j) {
                            Some(x) => *x += &p,
                            None => {
                                acc.insert(*j, p);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseOperator { dim: self.dim, rows })
    }

    pub fn trace(&self) -> CycloScalar {
        let mut t = CycloScalar::zero();
        for (i, row) in self.rows.iter().enumerate() {
            if let Ok(pos) = row.binary_search_by_key(&i, |(j, _)| *j) {
                t += &row[pos].1;
            }
        }
        t
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| matches!(row.as_slice(), [(j, v)] if *j == i && v.is_one()))
    }

    /// Image of the basis vector `e_col` as a sorted `(row, value)` list.
    pub fn column(&self, col: usize) -> Vec<(usize, CycloScalar)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                row.binary_search_by_key(&col, |(j, _)| *j)
                    .ok()
                    .map(|p| (i, row[p].1.clone()))
            })
            .collect()
    }

    /// First basis vector `e_j` on which the two operators disagree.
    pub fn first_differing_column(&self, other: &SparseOperator) -> Option<usize> {
        let mut bad: Option<usize> = None;
        for (ra, rb) in self.rows.iter().zip(&other.rows) {
            if ra == rb {
                continue;
            }
            let mut ia = ra.iter().peekable();
            let mut ib = rb.iter().peekable();
            let col = loop {
                match (ia.peek(), ib.peek()) {
                    (Some((ja, va)), Some((jb, vb))) => {
                        if ja == jb {
                            if va != vb {
                                break Some(*ja);
                            }
                            ia.next();
                            ib.next();
                        } else {
                            break Some(*ja.min(jb));
                        }
                    }
                    (Some((j, _)), None) | (None, Some((j, _))) => break Some(*j),
                    (None, None) => break None,
                }
            };
            if let Some(c) = col {
                bad = Some(bad.map_or(c, |b| b.min(c)));
            }
        }
        bad
    }
}

/// Materializes `1 (x) ... (x) op (x) ... (x) 1` where `op` acts on the
/// consecutive factors `[start, end)` of `layout`.
pub fn amplify(op: &ExactMatrix, layout: &TensorIndex, start: usize, end: usize) -> Result<SparseOperator> {
    let dims = layout.dims();
    if start >= end || end > dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "factor range {start}..{end} in a {}-fold tensor product",
            dims.len()
        )));
    }
    let left: usize = dims[..start].iter().product();
    let mid: usize = dims[start..end].iter().product();
    let right: usize = dims[end..].iter().product();
    if !op.is_square() || op.rows() != mid {
        return Err(Error::DimensionMismatch(format!(
            "operator of size {}x{} on factors of total dimension {mid}",
            op.rows(),
            op.cols()
        )));
    }
    let op_rows: Vec<Vec<(usize, &CycloScalar)>> = (0..mid)
        .map(|a| (0..mid).filter_map(|b| {
            let v = op.get(a, b);
            (!v.is_zero()).then_some((b, v))
        }).collect())
        .collect();
    let mut rows = Vec::with_capacity(left * mid * right);
    for l in 0..left {
        for row in &op_rows {
            for r in 0..right {
                rows.push(
                    row.iter()
                        .map(|(b, v)| ((l * mid + b) * right + r, (*v).clone()))
                        .collect(),
                );
            }
        }
    }
    Ok(SparseOperator {
        dim: left * mid * right,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloScalar as C;

    #[test]
    fn tensor_index_round_trip() {
        let t = TensorIndex::new(vec![2, 3, 4]);
        for i in 0..t.total() {
            assert_eq!(t.encode(&t.decode(i)), i);
        }
        assert_eq!(t.decode(23), vec![1, 2, 3]);
        assert_eq!(t.encode(&[1, 0, 0]), 12);
    }

    #[test]
    fn flips() {
        assert!(flip_operator(1, 1).is_identity());
        let f = flip_operator(2, 2);
        let expect = ExactMatrix::from_ints(4, 4, &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f, expect);
        assert!(f.matmul(&f).unwrap().is_identity());
        assert!(flip_operator(2, 3).matmul(&flip_operator(3, 2)).unwrap().is_identity());
        for d in 2..=5 {
            assert_eq!(flip_operator(d, d).trace().unwrap(), C::from_int(d as i64));
        }
    }

    #[test]
    fn kron_conventions() {
        assert!(ExactMatrix::identity(2).kron(&ExactMatrix::identity(3)).is_identity());
        let z = ExactMatrix::diagonal(vec![C::from_int(1), C::from_int(-1)]);
        let k = z.kron(&ExactMatrix::identity(2));
        assert_eq!(
            k,
            ExactMatrix::diagonal([1, 1, -1, -1].iter().map(|&x| C::from_int(x)).collect())
        );
    }

    #[test]
    fn dagger_of_unitary_diagonal() {
        let d = ExactMatrix::diagonal(vec![C::root_of_unity(3, 1), C::root_of_unity(3, 2)]);
        let e = ExactMatrix::diagonal(vec![C::root_of_unity(3, 2), C::root_of_unity(3, 1)]);
        assert_eq!(d.dagger(), e);
        assert!(d.is_unitary());
    }

    #[test]
    fn amplify_matches_kron() {
        let f = flip_operator(2, 2);
        let layout = TensorIndex::new(vec![2, 2, 2, 2]);
        let a = amplify(&f, &layout, 1, 3).unwrap();
        let expect = ExactMatrix::identity(2).kron(&f).kron(&ExactMatrix::identity(2));
        assert_eq!(a.to_dense(), expect);
        let three = TensorIndex::new(vec![2, 2, 2]);
        let r = amplify(&f, &three, 0, 2).unwrap();
        assert_eq!(r.dim(), 8);
        assert_eq!(r.to_dense(), f.kron(&ExactMatrix::identity(2)));
        assert!(amplify(&ExactMatrix::identity(4), &three, 1, 3).unwrap().is_identity());
        assert!(matches!(amplify(&f, &three, 0, 3), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn matmul_shape_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
        assert!(a.trace().is_err());
        let s = SparseOperator::identity(3);
        assert!(s.matmul(&SparseOperator::identity(4)).is_err());
    }

    #[test]
    fn sparse_column_and_difference() {
        let f = flip_operator(2, 2).to_sparse();
        assert_eq!(f.column(1), vec![(2, C::one())]);
        assert_eq!(f.first_differing_column(&SparseOperator::identity(4)), Some(1));
        assert_eq!(f.first_differing_column(&f), None);
    }
}
