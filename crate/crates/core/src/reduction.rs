//! Unitriangular reduction of points of Ω into the section.
//!
//! For `X` with all corner minors nonzero there are `u₁, u₂ ∈ UT(n)` with
//! `u₁ X ∈ S⁻`, `X u₂⁻¹ ∈ S⁺` and `u₁ X u₂⁻¹ ∈ Λ`. Row operations only add
//! multiples of lower rows to higher ones and column operations only add
//! multiples of earlier columns to later ones, so every corner minor is
//! preserved and each anti-diagonal pivot stays nonzero.

use alloc::string::ToString;

use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::quiver::{ArrowId, GroupElement, Model, RepPoint};

fn first_vanishing_minor<F: Scalar>(x: &Matrix<F>) -> Option<usize> {
    (1..=x.n()).find(|&k| x.corner_minor(k).expect("k in range").is_zero())
}

fn require_omega<F: Scalar>(x: &Matrix<F>) -> Result<(), Error> {
    match first_vanishing_minor(x) {
        Some(k) => Err(Error::NotInOmega {
            arrow: "X".to_string(),
            k,
        }),
        None => Ok(()),
    }
}

/// `u` with `u X ∈ S⁻`.
///
/// Column `j` is cleared above its pivot `(j′, j)` using row `j′`, columns
/// left to right.
pub fn reduce_left<F: Scalar>(x: &Matrix<F>) -> Result<Matrix<F>, Error> {
    require_omega(x)?;
    let n = x.n();
    let ctx = x.ctx();
    let mut work = x.clone();
    let mut u = Matrix::identity(n, &ctx);
    for j in 1..=n {
        let pivot_row = n + 1 - j;
        let inv = work.get(pivot_row, j).try_inv().expect("pivot nonzero inside Omega");
        for i in 1..pivot_row {
            if work.get(i, j).is_zero() {
                continue;
            }
            let factor = work.get(i, j).clone() * inv.clone();
            add_row_multiple(&mut work, i, pivot_row, &factor);
            add_row_multiple(&mut u, i, pivot_row, &factor);
        }
    }
    Ok(u)
}

/// `u` with `X u⁻¹ ∈ S⁺`.
///
/// Row `i` is cleared right of its pivot `(i, i′)` using column `i′`, rows
/// bottom to top.
pub fn reduce_right<F: Scalar>(x: &Matrix<F>) -> Result<Matrix<F>, Error> {
    require_omega(x)?;
    let n = x.n();
    let ctx = x.ctx();
    let mut work = x.clone();
    // accumulates u⁻¹
    let mut v = Matrix::identity(n, &ctx);
    for i in (1..=n).rev() {
        let pivot_col = n + 1 - i;
        let inv = work.get(i, pivot_col).try_inv().expect("pivot nonzero inside Omega");
        for j in pivot_col + 1..=n {
            if work.get(i, j).is_zero() {
                continue;
            }
            let factor = work.get(i, j).clone() * inv.clone();
            add_col_multiple(&mut work, j, pivot_col, &factor);
            add_col_multiple(&mut v, j, pivot_col, &factor);
        }
    }
    v.unitriangular_inverse()
}

/// `(u₁, u₂)` with `u₁ X u₂⁻¹ ∈ Λ`: [`reduce_left`] followed by
/// [`reduce_right`] on the lower anti-triangular result.
pub fn reduce_joint<F: Scalar>(x: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>), Error> {
    let u1 = reduce_left(x)?;
    let u2 = reduce_right(&u1.mul(x)?)?;
    Ok((u1, u2))
}

// row `target` −= factor · row `source`
fn add_row_multiple<F: Scalar>(m: &mut Matrix<F>, target: usize, source: usize, factor: &F) {
    for c in 1..=m.n() {
        let v = m.get(target, c).clone() - factor.clone() * m.get(source, c).clone();
        m.set(target, c, v);
    }
}

// column `target` −= factor · column `source`
fn add_col_multiple<F: Scalar>(m: &mut Matrix<F>, target: usize, source: usize, factor: &F) {
    for r in 1..=m.n() {
        let v = m.get(r, target).clone() - factor.clone() * m.get(r, source).clone();
        m.set(r, target, v);
    }
}

/// `g ∈ U_Q` with `g.h ∈ S`, each `g_v` computed from `X_ψ(v)` alone.
pub fn reduce_to_section<F: Scalar>(h: &RepPoint<F>, model: &Model) -> Result<GroupElement<F>, Error> {
    let quiver = &model.quiver;
    for a in quiver.arrow_ids() {
        if let Some(k) = first_vanishing_minor(h.matrix(a)) {
            return Err(Error::NotInOmega {
                arrow: quiver.arrow_name(a).to_string(),
                k,
            });
        }
    }
    let matrices = quiver
        .vertices()
        .map(|v| {
            let alpha: ArrowId = model.psi.of(v);
            let x = h.matrix(alpha);
            let (s, t) = (quiver.source(alpha), quiver.target(alpha));
            if s == t || v == t {
                // loop, or target end (for α = ψ(s) = ψ(t) this is u₁ of the joint reduction)
                reduce_left(x)
            } else if model.psi.of(t) == alpha {
                reduce_joint(x).map(|(_, u2)| u2)
            } else {
                reduce_right(x)
            }
        })
        .collect::<Result<_, _>>()?;
    GroupElement::new(quiver, matrices)
}
