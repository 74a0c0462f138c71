//! Truncated generating functions for the faces of `CRY_n`.
//!
//! `F(t, x)` has `[t^n] F = f^(n)(x)` for `n >= 1`. The five-variable
//! Fishburn series `G(t, v, w, x, y)` specialised at `v = w = x = y`
//! satisfies `[t^n] G(t, x, x, x, x) = x^n * f~^(n)(x)` for `n >= 1`: each
//! matrix entry carries a factor `x`, and a primitive Fishburn matrix of
//! size `n` has `n` more entries than the Betti number of its graph.
//! Consequently
//!
//! ```text
//! sum_{n>=1} f^(n) t^n = ((1+x) t / x) * (1 + G((1+x) t / x, x, x, x, x)).
//! ```

use crate::facecount::{cry_fpoly, cry_primitive_fpoly, FaceCountError};
use crate::laurent::{series_expand_rational, LaurentPoly, TruncatedSeries};

/// `1 / (1 + c t)` up to `t^order`.
fn geometric(c: &LaurentPoly, order: usize) -> TruncatedSeries {
    series_expand_rational(&LaurentPoly::one(), 0, &LaurentPoly::one(), c, order)
        .expect("constant term is one")
}

fn one_plus_x() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, [1, 1])
}

/// `F(t, x)` up to `t^order`:
///
/// ```text
/// 1/(x - x t) + sum_n t^n x^-n prod_{i=1}^{n} ((1+x)^i - 1) / (1 + ((1+x)^i - 1 - x) t / x)
/// ```
pub fn cry_face_series(order: usize) -> TruncatedSeries {
    let x_inv = LaurentPoly::monomial(-1, 1);
    let mut total = TruncatedSeries::from_coeffs(order, std::iter::repeat_n(x_inv, order + 1));
    let base = one_plus_x();
    // Running product over i = 1..n of the numerators and geometric factors.
    let mut running = TruncatedSeries::one(order);
    total = total.add(&running);
    for n in 1..=order {
        let power = base.pow(n as u32);
        let numer = &power - &LaurentPoly::one();
        let linear = (&numer - &LaurentPoly::x())
            .div_x_pow(1)
            .expect("(1+x)^i - 1 - x is divisible by x");
        running = running
            .mul(&geometric(&linear, order))
            .scale(&numer.shift(-1));
        total = total.add(&running.shift_t(n));
    }
    total
}

/// Specialisation of the Fishburn series variables `v, w, x, y`.
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    pub order: usize,
    pub v: LaurentPoly,
    pub w: LaurentPoly,
    pub x: LaurentPoly,
    pub y: LaurentPoly,
}

impl SeriesRequest {
    /// All four variables set to the formal `x`.
    pub fn diagonal(order: usize) -> Self {
        let x = LaurentPoly::x();
        Self {
            order,
            v: x.clone(),
            w: x.clone(),
            x: x.clone(),
            y: x,
        }
    }
}

/// `G(t, v, w, x, y)` up to `t^order`:
///
/// ```text
/// sum_{n>=0} t^(n+1) ((x+1)(y+1)^n - 1) / (1 + t((v+1)(w+1)^n - 1))
///     * prod_{i=0}^{n-1} ((v+1)(w+1)^i - 1) / (1 + t((v+1)(w+1)^i - 1))
/// ```
pub fn jelinek_series(req: &SeriesRequest) -> TruncatedSeries {
    let order = req.order;
    let one = LaurentPoly::one();
    let (v1, w1, x1, y1) = (&req.v + &one, &req.w + &one, &req.x + &one, &req.y + &one);
    let mut total = TruncatedSeries::zero(order);
    // prod_{i<n} (...) as a series, and (w+1)^n, (y+1)^n.
    let mut prefix = TruncatedSeries::one(order);
    let mut w_pow = one.clone();
    let mut y_pow = one.clone();
    for n in 0..order {
        let c = &(&v1 * &w_pow) - &one;
        let head = &(&x1 * &y_pow) - &one;
        let term = prefix
            .mul(&geometric(&c, order))
            .scale(&head)
            .shift_t(n + 1);
        total = total.add(&term);
        prefix = prefix.mul(&geometric(&c, order)).scale(&c);
        w_pow = &w_pow * &w1;
        y_pow = &y_pow * &y1;
    }
    total
}

/// `f~^(n)` for `n = 1..=order`, read off `G(t, x, x, x, x)`.
pub fn primitive_polys_from_jelinek(order: usize) -> Result<Vec<LaurentPoly>, FaceCountError> {
    let g = jelinek_series(&SeriesRequest::diagonal(order));
    (1..=order)
        .map(|n| Ok(g.coeff(n).div_x_pow(n as i64)?))
        .collect()
}

/// `sum_{n>=1} f^(n) t^n` computed from the Fishburn series.
pub fn face_series_from_jelinek(order: usize) -> TruncatedSeries {
    let scale = LaurentPoly::from_coeffs(-1, [1, 1]);
    let g = jelinek_series(&SeriesRequest::diagonal(order)).rescale_t(&scale);
    TruncatedSeries::one(order).add(&g).scale(&scale).shift_t(1)
}

/// Which form of the product identity to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductForm {
    /// `x f^(n) = (1+x)^n f~^(n-1)`.
    Corrected,
    /// `x f^(n) = (1+x)^(n-1) f~^(n)`, false from `n = 3` on.
    Printed,
}

/// Both sides of the product identity at `n >= 2`.
pub fn product_identity_sides(
    n: usize,
    form: ProductForm,
) -> Result<(LaurentPoly, LaurentPoly), FaceCountError> {
    if n < 2 {
        return Err(FaceCountError::OrderTooSmall { n, min: 2 });
    }
    let lhs = cry_fpoly(n)?.shift(1);
    let rhs = match form {
        ProductForm::Corrected => one_plus_x().pow(n as u32) * cry_primitive_fpoly(n - 1)?,
        ProductForm::Printed => one_plus_x().pow(n as u32 - 1) * cry_primitive_fpoly(n)?,
    };
    Ok((lhs, rhs))
}

/// Checks `x f^(n) = (1+x)^n f~^(n-1)` exactly.
pub fn product_identity_check(n: usize) -> Result<bool, FaceCountError> {
    let (lhs, rhs) = product_identity_sides(n, ProductForm::Corrected)?;
    Ok(lhs == rhs)
}
