//! Ellipsoid coordinate rings `Q[x1..xk]/(x1^p1 + ... + xk^pk - 1)`, the
//! module of Kaehler differentials presented by the single relation `dH`,
//! its projective basis and fundamental matrix, and the tangent-field
//! algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{RingMatrix, RingVector};
use crate::ring::{block_var_names, RingContext};
use crate::scalar::Scalar;
use crate::{Ctx, Matrix, Poly, Rat, Vector};

/// The coordinate ring of the ellipsoid `x1^p1 + ... + xk^pk = 1`.
#[derive(Clone, Debug)]
pub struct EllipsoidRing {
    exponents: Vec<u32>,
    hpoly: Poly,
    ctx: Arc<Ctx>,
}

impl PartialEq for EllipsoidRing {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents
    }
}

impl EllipsoidRing {
    /// Builds the ring; requires `k >= 2` and every exponent `>= 1`.
    pub fn build(exponents: &[u32]) -> Result<Self> {
        let k = exponents.len();
        if k < 2 {
            return Err(Error::input(format!("need at least 2 variables, got {k}")));
        }
        if exponents.iter().any(|&p| p < 1) {
            return Err(Error::input("every exponent must be at least 1"));
        }
        let mut h = Poly::from_int(k, -1);
        for (i, &p) in exponents.iter().enumerate() {
            h = &h + &Poly::variable(k, i).pow(p);
        }
        let ctx = RingContext::quotient(block_var_names(k, 1), vec![h.clone()])?;
        Ok(EllipsoidRing {
            exponents: exponents.to_vec(),
            hpoly: h,
            ctx,
        })
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn defining_polynomial(&self) -> &Poly {
        &self.hpoly
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }
}

/// The Kaehler module of an ellipsoid ring: rank-`k` presentation with the
/// single relation vector `G`, the fundamental matrix `M` of the canonical
/// splitting, the generator classes `dx_i` and the functional rows of `M`.
#[derive(Clone, Debug)]
pub struct KaehlerModule {
    ring: EllipsoidRing,
    relation: Vector,
    fundamental: Matrix,
}

impl KaehlerModule {
    pub fn build(ring: &EllipsoidRing) -> Self {
        let k = ring.k();
        let ctx = ring.ctx().clone();
        let gi = |i: usize| -> Poly {
            let p = ring.exponents[i];
            Poly::variable(k, i)
                .pow(p - 1)
                .mul_scalar(&Rat::from_int(p as i64))
        };
        let relation =
            RingVector::new(ctx.clone(), (0..k).map(gi).collect()).expect("relation vector");
        let fundamental = RingMatrix::from_fn(ctx.clone(), k, k, |i, j| {
            let pi = ring.exponents[i] as i64;
            let pj = ring.exponents[j] as i64;
            let ratio = Rat::from_int(pi).div_exact(&Rat::from_int(pj));
            let off = (&Poly::variable(k, i).pow(ring.exponents[i] - 1) * &Poly::variable(k, j))
                .mul_scalar(&ratio);
            if i == j {
                &Poly::one(k) - &off
            } else {
                -&off
            }
        })
        .expect("fundamental matrix");
        KaehlerModule {
            ring: ring.clone(),
            relation,
            fundamental,
        }
    }

    pub fn ring(&self) -> &EllipsoidRing {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        self.ring.ctx()
    }

    pub fn rank(&self) -> usize {
        self.ring.k()
    }

    /// The relation vector `G` with `G_i = p_i x_i^{p_i - 1}`.
    pub fn relation(&self) -> &Vector {
        &self.relation
    }

    /// The fundamental matrix `M[i][j] = delta_ij - (p_i/p_j) x_i^{p_i-1} x_j`.
    pub fn fundamental(&self) -> &Matrix {
        &self.fundamental
    }

    /// Canonical lift of the class of `v`: `M v`, reduced. Two lifts
    /// represent the same class exactly when their canonical lifts agree.
    pub fn canonical_rep(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rank() {
            return Err(Error::input("lift length mismatch"));
        }
        self.fundamental.mul_vec(v)
    }

    /// The class of the generator `dx_i`, as its canonical lift.
    pub fn generator(&self, i: usize) -> Vector {
        self.fundamental.col(i)
    }

    pub fn presentation(&self) -> ModulePresentation {
        ModulePresentation {
            ctx: self.ctx().clone(),
            projector: self.fundamental.clone(),
            relation: Some(self.relation.clone()),
        }
    }
}

/// A finitely generated projective module presented as the image of an
/// idempotent projector on a free module; the common ground shared by the
/// Kaehler module and free modules.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ctx: Arc<Ctx>,
    projector: Matrix,
    relation: Option<Vector>,
}

impl ModulePresentation {
    pub fn free(ctx: Arc<Ctx>, rank: usize) -> Self {
        ModulePresentation {
            projector: Matrix::identity(ctx.clone(), rank),
            ctx,
            relation: None,
        }
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.projector.rows()
    }

    pub fn projector(&self) -> &Matrix {
        &self.projector
    }

    pub fn relation(&self) -> Option<&Vector> {
        self.relation.as_ref()
    }

    pub fn is_free(&self) -> bool {
        self.relation.is_none()
    }

    pub fn canonical_rep(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rank() {
            return Err(Error::input("lift length mismatch"));
        }
        self.projector.mul_vec(v)
    }

    /// Equality in the endomorphism algebra of the presented module:
    /// two matrices act identically on classes iff `P (A - B) P = 0`.
    pub fn endo_equal(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        let n = self.rank();
        if a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n {
            return Err(Error::input("endomorphism shape mismatch"));
        }
        let diff = a.sub(b)?;
        let boxed = self.projector.mul(&diff)?.mul(&self.projector)?;
        Ok(boxed.is_zero())
    }
}

/// A derivation `sum_i f_i d/dx_i` of the ambient polynomial ring that is
/// tangent to the ellipsoid (`delta(H) = 0` in the quotient), hence a
/// derivation of the coordinate ring.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentField {
    ctx: Arc<Ctx>,
    coeffs: Vec<Poly>,
    label: String,
}

impl TangentField {
    pub fn new(ring: &EllipsoidRing, coeffs: Vec<Poly>, label: impl Into<String>) -> Result<Self> {
        let ctx = ring.ctx().clone();
        if coeffs.len() != ring.k() {
            return Err(Error::input("coefficient count mismatch"));
        }
        let coeffs: Vec<Poly> = coeffs
            .iter()
            .map(|c| ctx.reduce(c))
            .collect::<Result<Vec<_>>>()?;
        let field = TangentField {
            ctx,
            coeffs,
            label: label.into(),
        };
        let dh = field.apply_ambient(ring.defining_polynomial());
        if !field.ctx.is_zero_mod(&dh) {
            return Err(Error::input("field is not tangent: delta(H) != 0 mod H"));
        }
        Ok(field)
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn apply_ambient(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(self.ctx.nvars());
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(c * &f.derivative(i));
        }
        acc
    }

    /// Applies the derivation and reduces. Well defined on the quotient
    /// because tangency sends the relation ideal into itself.
    pub fn apply(&self, f: &Poly) -> Poly {
        self.ctx.nf(&self.apply_ambient(f))
    }

    pub fn apply_vec(&self, v: &Vector) -> Result<Vector> {
        RingVector::new(
            self.ctx.clone(),
            v.entries().iter().map(|p| self.apply(p)).collect(),
        )
    }

    pub fn apply_matrix(&self, a: &Matrix) -> Matrix {
        a.map_entries(|p| self.apply(p))
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})*d{}", self.ctx.format(c), i + 1))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// The `k(k-1)/2` generating tangent fields
/// `p_j x_j^{p_j-1} d_i - p_i x_i^{p_i-1} d_j` for `i < j`. When all
/// exponents coincide the common constant factor is divided out, so the
/// sphere generators are `x_j d_i - x_i d_j`.
pub fn tangent_generators(ring: &EllipsoidRing) -> Vec<TangentField> {
    let k = ring.k();
    let ctx = ring.ctx();
    let all_equal = ring.exponents().iter().all(|&p| p == ring.exponents()[0]);
    let mut out = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let mut coeffs = vec![Poly::zero(ctx.nvars()); k];
            let term = |idx: usize| -> Poly {
                let p = ring.exponents()[idx];
                let pow = Poly::variable(k, idx).pow(p - 1);
                if all_equal {
                    pow
                } else {
                    pow.mul_scalar(&Rat::from_int(p as i64))
                }
            };
            coeffs[i] = term(j);
            coeffs[j] = -&term(i);
            let label = format!("d{}{}", i + 1, j + 1);
            out.push(TangentField::new(ring, coeffs, label).expect("generator is tangent"));
        }
    }
    out
}

/// Lie bracket of two tangent fields: coefficients `delta(g_i) - eta(f_i)`.
pub fn lie_bracket(delta: &TangentField, eta: &TangentField) -> Result<TangentField> {
    if delta.ctx != eta.ctx {
        return Err(Error::input("tangent fields over different rings"));
    }
    let k = delta.coeffs.len();
    let mut coeffs = Vec::with_capacity(k);
    for i in 0..k {
        coeffs.push(&delta.apply(&eta.coeffs[i]) - &eta.apply(&delta.coeffs[i]));
    }
    let coeffs = coeffs.iter().map(|c| delta.ctx.nf(c)).collect();
    let label = format!("[{}, {}]", delta.label, eta.label);
    Ok(TangentField {
        ctx: delta.ctx.clone(),
        coeffs,
        label,
    })
}
