//! The explicit 4x4 matrix factorization of `f = x^m + y^n + z^2` over the
//! free polynomial ring, with its verification report. The variables are
//! named `x1, x2, x3` for `x, y, z` to match the shared text grammar.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::report::{Check, VerificationReport};
use crate::ring::{block_var_names, RingContext};
use crate::{Ctx, Matrix, Poly};

/// A pair of 4x4 matrices with `phi psi = psi phi = f I` exactly.
#[derive(Clone, Debug)]
pub struct FactorizationPair {
    m: u32,
    n: u32,
    k: u32,
    l: u32,
    ctx: Arc<Ctx>,
    f: Poly,
    phi: Matrix,
    psi: Matrix,
}

impl FactorizationPair {
    /// Builds the pair for `f = x^m + y^n + z^2`; requires `m, n >= 2`,
    /// `0 <= k <= m-1` and `0 <= l <= n-1`. The factorization identity is
    /// verified at construction.
    pub fn build(m: u32, n: u32, k: u32, l: u32) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::input("need m, n >= 2"));
        }
        if k > m - 1 {
            return Err(Error::input(format!("k = {k} out of range 0..={}", m - 1)));
        }
        if l > n - 1 {
            return Err(Error::input(format!("l = {l} out of range 0..={}", n - 1)));
        }
        let ctx = RingContext::free(block_var_names(3, 1));
        let x = |e: u32| Poly::variable(3, 0).pow(e);
        let y = |e: u32| Poly::variable(3, 1).pow(e);
        let z = || Poly::variable(3, 2);
        let zero = || Poly::zero(3);

        let f = &(&x(m) + &y(n)) + &z().pow(2);
        let phi = RingMatrix::new(
            ctx.clone(),
            4,
            4,
            vec![
                x(m - k),
                y(n - l),
                zero(),
                z(),
                y(l),
                -&x(k),
                z(),
                zero(),
                z(),
                zero(),
                -&y(n - l),
                -&x(k),
                zero(),
                z(),
                x(m - k),
                -&y(l),
            ],
        )?;
        let psi = RingMatrix::new(
            ctx.clone(),
            4,
            4,
            vec![
                x(k),
                y(n - l),
                z(),
                zero(),
                y(l),
                -&x(m - k),
                zero(),
                z(),
                zero(),
                z(),
                -&y(l),
                x(k),
                z(),
                zero(),
                -&x(m - k),
                -&y(n - l),
            ],
        )?;

        let pair = FactorizationPair {
            m,
            n,
            k,
            l,
            ctx,
            f,
            phi,
            psi,
        };
        if !pair.identity_holds()? {
            return Err(Error::input(
                "factorization identity failed at construction",
            ));
        }
        Ok(pair)
    }

    pub fn params(&self) -> (u32, u32, u32, u32) {
        (self.m, self.n, self.k, self.l)
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.ctx
    }

    pub fn polynomial(&self) -> &Poly {
        &self.f
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn psi(&self) -> &Matrix {
        &self.psi
    }

    fn scaled_identity(&self) -> Matrix {
        Matrix::identity(self.ctx.clone(), 4).scale(&self.f)
    }

    fn identity_holds(&self) -> Result<bool> {
        let fi = self.scaled_identity();
        Ok(self.phi.mul(&self.psi)? == fi && self.psi.mul(&self.phi)? == fi)
    }
}

/// Verifies `phi psi = psi phi = f I` and the two-periodicity consequence
/// `phi psi phi = f phi`, naming any offending entry.
pub fn verify_factorization(pair: &FactorizationPair) -> Result<VerificationReport> {
    verify_matrices(pair, pair.phi(), pair.psi())
}

/// Verification against explicit candidate matrices; negative controls pass
/// perturbed copies through here.
pub fn verify_matrices(
    pair: &FactorizationPair,
    phi: &Matrix,
    psi: &Matrix,
) -> Result<VerificationReport> {
    let (m, n, k, l) = pair.params();
    let mut report = VerificationReport::new("mcm", 0);
    let fi = pair.scaled_identity();

    let check_product = |name: &str, prod: Matrix| {
        let mut offending = String::new();
        let mut pass = true;
        'outer: for i in 0..4 {
            for j in 0..4 {
                if prod.entry(i, j) != fi.entry(i, j) {
                    pass = false;
                    offending = format!(
                        "entry ({}, {}): got {}, want {}",
                        i + 1,
                        j + 1,
                        pair.ctx().format(prod.entry(i, j)),
                        pair.ctx().format(fi.entry(i, j))
                    );
                    break 'outer;
                }
            }
        }
        Check::bool(
            format!("{name} for (m, n, k, l) = ({m}, {n}, {k}, {l})"),
            pass,
            offending,
        )
    };

    report.push(check_product("phi * psi = f * I", phi.mul(psi)?));
    report.push(check_product("psi * phi = f * I", psi.mul(phi)?));

    let lhs = phi.mul(psi)?.mul(phi)?;
    let rhs = phi.scale(pair.polynomial());
    report.push(Check::bool(
        "two-periodicity: phi * psi * phi = f * phi",
        lhs == rhs,
        "",
    ));
    Ok(report)
}

/// Exhaustive sweep over `(m, n)` in `{2, 3}^2` and all in-range `(k, l)`.
pub fn suite_mcm() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("mcm", 0);
    let mut all = true;
    let mut count = 0usize;
    for m in 2..=3u32 {
        for n in 2..=3u32 {
            for k in 0..m {
                for l in 0..n {
                    let pair = FactorizationPair::build(m, n, k, l)?;
                    let sub = verify_factorization(&pair)?;
                    all &= sub.all_pass();
                    count += 1;
                }
            }
        }
    }
    report.push(Check::bool(
        "factorization identity on the full (m, n) in {2,3}^2 sweep",
        all,
        format!("{count} parameter tuples checked"),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_for_small_parameters() {
        let pair = FactorizationPair::build(2, 2, 1, 1).unwrap();
        assert!(verify_factorization(&pair).unwrap().all_pass());
        let pair = FactorizationPair::build(3, 2, 1, 1).unwrap();
        assert!(verify_factorization(&pair).unwrap().all_pass());
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            FactorizationPair::build(2, 2, 2, 1),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            FactorizationPair::build(1, 2, 0, 0),
            Err(Error::Input(_))
        ));
        assert!(FactorizationPair::build(2, 2, 0, 0).is_ok());
    }

    #[test]
    fn perturbed_entry_fails_with_witness() {
        let pair = FactorizationPair::build(2, 2, 1, 1).unwrap();
        let bad = pair
            .phi()
            .with_entry(0, 0, &pair.phi().entry(0, 0).clone() + &Poly::one(3))
            .unwrap();
        let report = verify_matrices(&pair, &bad, pair.psi()).unwrap();
        assert!(!report.all_pass());
        let text = report.render_text();
        assert!(
            text.contains("entry (1, 1)"),
            "witness names the entry: {text}"
        );
    }

    #[test]
    fn sweep_passes() {
        assert!(suite_mcm().unwrap().all_pass());
    }
}
