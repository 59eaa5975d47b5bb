//! Matrices and vectors with entries in a ring context.
//!
//! Every entry is kept in normal form, so raw equality of two matrices is
//! equality of ring elements entry by entry. Determinants use exact
//! cofactor expansion and are provided only for the small sizes the rest of
//! the crate needs.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;
use crate::scalar::Scalar;

fn check_same_ctx<S: Scalar>(a: &Arc<RingContext<S>>, b: &Arc<RingContext<S>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::input("ring context mismatch"))
    }
}

#[derive(Clone, Debug)]
pub struct RingVector<S> {
    ctx: Arc<RingContext<S>>,
    entries: Vec<Polynomial<S>>,
}

impl<S: Scalar> PartialEq for RingVector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.entries == other.entries
    }
}

impl<S: Scalar> RingVector<S> {
    pub fn new(ctx: Arc<RingContext<S>>, entries: Vec<Polynomial<S>>) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|p| ctx.reduce(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingVector { ctx, entries })
    }

    pub fn zero(ctx: Arc<RingContext<S>>, len: usize) -> Self {
        let entries = vec![Polynomial::zero(ctx.nvars()); len];
        RingVector { ctx, entries }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(ctx: Arc<RingContext<S>>, len: usize, i: usize) -> Self {
        let mut v = Self::zero(ctx, len);
        v.entries[i] = Polynomial::one(v.ctx.nvars());
        v
    }

    pub fn ctx(&self) -> &Arc<RingContext<S>> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &Polynomial<S> {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Polynomial<S>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.len() != other.len() {
            return Err(Error::input("vector length mismatch"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ctx.nf(&(a + b)))
            .collect();
        Ok(RingVector {
            ctx: self.ctx.clone(),
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingVector {
            ctx: self.ctx.clone(),
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, a: &Polynomial<S>) -> Self {
        RingVector {
            ctx: self.ctx.clone(),
            entries: self.entries.iter().map(|p| self.ctx.nf(&(p * a))).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Result<Polynomial<S>> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.len() != other.len() {
            return Err(Error::input("vector length mismatch"));
        }
        let mut acc = Polynomial::zero(self.ctx.nvars());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = &acc + &(a * b);
        }
        Ok(self.ctx.nf(&acc))
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|p| self.ctx.format(p)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Row-major matrix over a ring context, entries in normal form.
#[derive(Clone, Debug)]
pub struct RingMatrix<S> {
    ctx: Arc<RingContext<S>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<S>>,
}

impl<S: Scalar> PartialEq for RingMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl<S: Scalar> RingMatrix<S> {
    pub fn new(
        ctx: Arc<RingContext<S>>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial<S>>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input("entry count does not match matrix shape"));
        }
        let entries = entries
            .iter()
            .map(|p| ctx.reduce(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix {
            ctx,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        ctx: Arc<RingContext<S>>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial<S>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(ctx, rows, cols, entries)
    }

    pub fn identity(ctx: Arc<RingContext<S>>, n: usize) -> Self {
        let nvars = ctx.nvars();
        let mut entries = vec![Polynomial::zero(nvars); n * n];
        for i in 0..n {
            entries[i * n + i] = Polynomial::one(nvars);
        }
        RingMatrix {
            ctx,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zero(ctx: Arc<RingContext<S>>, rows: usize, cols: usize) -> Self {
        let entries = vec![Polynomial::zero(ctx.nvars()); rows * cols];
        RingMatrix {
            ctx,
            rows,
            cols,
            entries,
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext<S>> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<S> {
        &self.entries[i * self.cols + j]
    }

    /// Copy with one entry replaced (reduced); used by negative controls.
    pub fn with_entry(&self, i: usize, j: usize, p: Polynomial<S>) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries[i * self.cols + j] = self.ctx.reduce(&p)?;
        Ok(RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn row(&self, i: usize) -> RingVector<S> {
        RingVector {
            ctx: self.ctx.clone(),
            entries: (0..self.cols).map(|j| self.entry(i, j).clone()).collect(),
        }
    }

    pub fn col(&self, j: usize) -> RingVector<S> {
        RingVector {
            ctx: self.ctx.clone(),
            entries: (0..self.rows).map(|i| self.entry(i, j).clone()).collect(),
        }
    }

    pub fn from_cols(ctx: Arc<RingContext<S>>, cols: Vec<RingVector<S>>) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::input("no columns"));
        }
        let rows = cols[0].len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::input("ragged columns"));
        }
        Self::from_fn(ctx, rows, cols.len(), |i, j| cols[j].entry(i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Polynomial<S>, &Polynomial<S>) -> Polynomial<S>,
    ) -> Result<Self> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::input("matrix shape mismatch"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ctx.nf(&f(a, b)))
            .collect();
        Ok(RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Self {
        RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, a: &Polynomial<S>) -> Self {
        RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| self.ctx.nf(&(p * a))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same_ctx(&self.ctx, &other.ctx)?;
        if self.cols != other.rows {
            return Err(Error::input("matrix shape mismatch in product"));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.ctx.nvars());
                for l in 0..self.cols {
                    acc = &acc + &(self.entry(i, l) * other.entry(l, j));
                }
                entries.push(self.ctx.nf(&acc));
            }
        }
        Ok(RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &RingVector<S>) -> Result<RingVector<S>> {
        check_same_ctx(&self.ctx, v.ctx())?;
        if self.cols != v.len() {
            return Err(Error::input("matrix/vector shape mismatch"));
        }
        let entries = (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(self.ctx.nvars());
                for j in 0..self.cols {
                    acc = &acc + &(self.entry(i, j) * v.entry(j));
                }
                self.ctx.nf(&acc)
            })
            .collect();
        Ok(RingVector {
            ctx: self.ctx.clone(),
            entries,
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &RingVector<S>) -> Result<RingVector<S>> {
        check_same_ctx(&self.ctx, v.ctx())?;
        if self.rows != v.len() {
            return Err(Error::input("vector/matrix shape mismatch"));
        }
        let entries = (0..self.cols)
            .map(|j| {
                let mut acc = Polynomial::zero(self.ctx.nvars());
                for i in 0..self.rows {
                    acc = &acc + &(v.entry(i) * self.entry(i, j));
                }
                self.ctx.nf(&acc)
            })
            .collect();
        Ok(RingVector {
            ctx: self.ctx.clone(),
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Plain matrix trace (sum of diagonal entries).
    pub fn trace(&self) -> Result<Polynomial<S>> {
        if !self.is_square() {
            return Err(Error::input("trace of a non-square matrix"));
        }
        let mut acc = Polynomial::zero(self.ctx.nvars());
        for i in 0..self.rows {
            acc = &acc + self.entry(i, i);
        }
        Ok(self.ctx.nf(&acc))
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial<S>) -> Polynomial<S>) -> Self {
        RingMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| self.ctx.nf(&f(p))).collect(),
        }
    }

    /// Determinant by cofactor expansion; supported for `n <= 4`.
    pub fn det(&self) -> Result<Polynomial<S>> {
        if !self.is_square() {
            return Err(Error::input("determinant of a non-square matrix"));
        }
        if self.rows > 4 {
            return Err(Error::UnsupportedSize(format!(
                "determinant only implemented for n <= 4, got n = {}",
                self.rows
            )));
        }
        Ok(self
            .ctx
            .nf(&self.det_rec(&(0..self.rows).collect::<Vec<_>>(), 0)))
    }

    fn det_rec(&self, cols: &[usize], row: usize) -> Polynomial<S> {
        if cols.is_empty() {
            return Polynomial::one(self.ctx.nvars());
        }
        let mut acc = Polynomial::zero(self.ctx.nvars());
        for (pos, &j) in cols.iter().enumerate() {
            let e = self.entry(row, j);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let minor = self.det_rec(&rest, row + 1);
            let signed = if pos % 2 == 0 {
                &minor * e
            } else {
                -&(&minor * e)
            };
            acc = &acc + &signed;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ctx.format(self.entry(i, j)))
                    .collect()
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn format(&self) -> String {
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols)
                    .map(|j| self.ctx.format(self.entry(i, j)))
                    .collect();
                format!("[{}]", row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `AB - BA`, entries reduced.
pub fn commutator<S: Scalar>(a: &RingMatrix<S>, b: &RingMatrix<S>) -> Result<RingMatrix<S>> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::input(
            "commutator requires square matrices of equal size",
        ));
    }
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Characteristic-polynomial invariants of a 3x3 matrix, as the triple
/// `(trace, p, det)` with `p` the explicit six-product sum
/// `a11*a22 + a11*a33 + a22*a33 + a21*a12 + a31*a13 + a32*a23`.
pub fn charpoly3<S: Scalar>(
    a: &RingMatrix<S>,
) -> Result<(Polynomial<S>, Polynomial<S>, Polynomial<S>)> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::input("charpoly3 requires a 3x3 matrix"));
    }
    let ctx = a.ctx().clone();
    let tr = a.trace()?;
    let e = |i: usize, j: usize| a.entry(i, j);
    let p = &(&(&(e(0, 0) * e(1, 1)) + &(e(0, 0) * e(2, 2))) + &(e(1, 1) * e(2, 2)))
        + &(&(&(e(1, 0) * e(0, 1)) + &(e(2, 0) * e(0, 2))) + &(e(2, 1) * e(1, 2)));
    let p = ctx.nf(&p);
    let det = a.det()?;
    Ok((tr, p, det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::block_var_names;
    use crate::{Ctx, Matrix, Poly, Vector};

    fn free3() -> std::sync::Arc<Ctx> {
        Ctx::free(block_var_names(3, 1))
    }

    fn m(ctx: &std::sync::Arc<Ctx>, entries: &[&str]) -> Matrix {
        let n = (entries.len() as f64).sqrt() as usize;
        Matrix::new(
            ctx.clone(),
            n,
            n,
            entries.iter().map(|s| ctx.parse(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn commutator_is_alternating_and_traceless() {
        let ctx = free3();
        let a = m(&ctx, &["x1", "x2", "0", "1", "x3", "x1*x2", "0", "0", "x2"]);
        let b = m(&ctx, &["x3", "0", "x1", "x2^2", "1", "0", "x1", "x2", "x3"]);
        assert!(commutator(&a, &a).unwrap().is_zero());
        assert!(commutator(&a, &b).unwrap().trace().unwrap().is_zero());
    }

    #[test]
    fn charpoly3_degenerate_cases() {
        let ctx = free3();
        let id = Matrix::identity(ctx.clone(), 3);
        let (tr, p, det) = charpoly3(&id).unwrap();
        assert_eq!(tr, Poly::from_int(3, 3));
        assert_eq!(p, Poly::from_int(3, 3));
        assert_eq!(det, Poly::one(3));
        let z = Matrix::zero(ctx, 3, 3);
        let (tr, p, det) = charpoly3(&z).unwrap();
        assert!(tr.is_zero() && p.is_zero() && det.is_zero());
    }

    #[test]
    fn det_small_cases() {
        let ctx = free3();
        assert_eq!(
            Matrix::identity(ctx.clone(), 4).det().unwrap(),
            Poly::one(3)
        );
        let d = m(&ctx, &["x1", "0", "0", "0", "x2", "0", "0", "0", "x3"]);
        assert_eq!(d.det().unwrap(), ctx.parse("x1*x2*x3").unwrap());
        let big = Matrix::identity(ctx.clone(), 5);
        assert!(matches!(big.det(), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn det_of_transpose_and_product() {
        let ctx = free3();
        let a = m(&ctx, &["x1", "x2", "1", "0", "x3", "x1", "x2", "0", "1"]);
        let b = m(&ctx, &["1", "x1", "0", "x3", "1", "x2", "0", "0", "x1*x3"]);
        assert_eq!(a.det().unwrap(), a.transpose().det().unwrap());
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab.det().unwrap(),
            ctx.nf(&(&a.det().unwrap() * &b.det().unwrap()))
        );
    }

    #[test]
    fn vector_ops_and_shape_errors() {
        let ctx = free3();
        let v = Vector::new(
            ctx.clone(),
            vec![
                ctx.parse("x1").unwrap(),
                ctx.parse("x2").unwrap(),
                Poly::one(3),
            ],
        )
        .unwrap();
        let w = Vector::unit(ctx.clone(), 3, 0);
        assert_eq!(v.dot(&w).unwrap(), ctx.parse("x1").unwrap());
        let short = Vector::zero(ctx.clone(), 2);
        assert!(v.dot(&short).is_err());
        let a = Matrix::identity(ctx.clone(), 3);
        assert!(a.mul_vec(&short).is_err());
        let other_ctx = Ctx::free(block_var_names(2, 1));
        let foreign = Vector::zero(other_ctx, 3);
        assert!(v.dot(&foreign).is_err());
    }

    #[test]
    fn json_shape() {
        let ctx = free3();
        let a = Matrix::identity(ctx, 2);
        let v = a.to_json();
        assert_eq!(v["rows"], 2);
        assert_eq!(v["cols"], 2);
        assert_eq!(v["entries"][0][0], "1");
        assert_eq!(v["entries"][0][1], "0");
    }
}
