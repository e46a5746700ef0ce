//! Brute-force reference results in the coefficient domain. Nothing here is
//! counted and nothing here touches the transform code.

use crate::error::{Error, Result};
use crate::matvec::{CoeffMatrix, PolyVector};
use crate::modarith::{add_raw, mul_raw, sub_raw};
use crate::ntt::Polynomial;

/// `a·b mod (x^m + 1)` by the O(m^2) double loop.
pub fn negacyclic_mul_schoolbook(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::Shape { expected: m, found: b.len() });
    }
    let mut out = Polynomial::zero(m).into_coeffs();
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            let p = mul_raw(*x, *y);
            let idx = i + j;
            if idx < m {
                out[idx] = add_raw(out[idx], p);
            } else {
                out[idx - m] = sub_raw(out[idx - m], p);
            }
        }
    }
    Ok(Polynomial::from_coeffs(out))
}

/// `p_i = Σ_j (A^T)_ij · r_j` where `a` already holds `A^T`.
pub fn matvec_schoolbook(a: &CoeffMatrix, r: &PolyVector) -> Result<PolyVector> {
    let k = a.k();
    if r.k() != k {
        return Err(Error::Dimension(format!("matrix has k={k} but vector has k={}", r.k())));
    }
    let rows = (0..k)
        .map(|i| {
            let mut acc = Polynomial::zero(r.entries()[0].len()).into_coeffs();
            for (j, rj) in r.entries().iter().enumerate() {
                let prod = negacyclic_mul_schoolbook(a.entry(i, j), rj)?;
                for (c, p) in acc.iter_mut().zip(prod.coeffs()) {
                    *c = add_raw(*c, *p);
                }
            }
            Ok(Polynomial::from_coeffs(acc))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyVector::new(rows)
}
