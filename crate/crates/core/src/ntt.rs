//! Negacyclic number theoretic transforms of size 64 and 128 over Z_3329.
//!
//! A length-`m` polynomial `f` in `Z_q[y]/(y^m + 1)` maps to the vector of its
//! evaluations at the `m` roots of `y^m + 1`. With `psi` a primitive `2m`-th
//! root of unity the output is stored in bit-reversed order:
//!
//! ```text
//! evals[j] = f(psi^(2 * brv(j) + 1))
//! ```
//!
//! `psi = 17` for `m = 128` and `psi = 17^2 = 289` for `m = 64`. A full
//! 256-point negacyclic transform does not exist for q = 3329, which is why
//! the matrix-vector pipelines split length-256 polynomials into phases first.

use crate::error::{Error, Result};
use crate::modarith::{add_mod, add_raw, inv_mod, mul_mod, mul_raw, pow_mod, sub_mod, OpCounter, Residue};

/// Name of the evaluation ordering, recorded in file headers.
pub const ORDER_NAME: &str = "bitrev";

/// Primitive 256th root of unity modulo 3329.
pub const PSI_128: u16 = 17;

/// Coefficient vector of an element of `Z_q[x]/(x^m + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Residue>,
}

impl Polynomial {
    pub fn from_coeffs(coeffs: Vec<Residue>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Polynomial { coeffs: vec![Residue::ZERO; len] }
    }

    pub fn constant(len: usize, c: Residue) -> Self {
        let mut p = Self::zero(len);
        p.coeffs[0] = c;
        p
    }

    /// `x^degree` in a ring of length `len`.
    pub fn monomial(len: usize, degree: usize) -> Self {
        let mut p = Self::zero(len);
        p.coeffs[degree] = Residue::ONE;
        p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Residue> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Residue::ZERO)
    }

    /// Coefficient-wise sum, counted as `len` additions.
    pub fn add(&self, other: &Polynomial, ctx: &mut OpCounter) -> Result<Polynomial> {
        check_len(other.len(), self.len())?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| add_mod(*a, *b, ctx)).collect();
        Ok(Polynomial { coeffs })
    }
}

/// NTT-domain evaluations of a polynomial, in [`ORDER_NAME`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NttVector {
    evals: Vec<Residue>,
}

impl NttVector {
    pub fn from_evals(evals: Vec<Residue>) -> Self {
        NttVector { evals }
    }

    pub fn zero(len: usize) -> Self {
        NttVector { evals: vec![Residue::ZERO; len] }
    }

    pub fn ones(len: usize) -> Self {
        NttVector { evals: vec![Residue::ONE; len] }
    }

    pub fn len(&self) -> usize {
        self.evals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.evals.is_empty()
    }

    pub fn evals(&self) -> &[Residue] {
        &self.evals
    }

    pub fn into_evals(self) -> Vec<Residue> {
        self.evals
    }

    pub fn is_zero(&self) -> bool {
        self.evals.iter().all(|c| *c == Residue::ZERO)
    }
}

/// Precomputed constants for one transform size. Immutable once built.
#[derive(Clone, Debug)]
pub struct TwiddleTables {
    size: usize,
    log_size: u32,
    psi: Residue,
    // zetas[i] = psi^brv(i); index 0 is unused by the butterflies.
    zetas: Vec<Residue>,
    inv_zetas: Vec<Residue>,
    m_inverse: Residue,
    y_constant: NttVector,
}

fn bit_reverse(x: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    x.reverse_bits() >> (usize::BITS - bits)
}

/// Builds the tables for `m` in {64, 128}. Uncounted.
pub fn build_tables(m: usize) -> Result<TwiddleTables> {
    let psi = match m {
        128 => Residue::new(PSI_128 as u32),
        64 => pow_mod(Residue::new(PSI_128 as u32), 2),
        other => return Err(Error::UnsupportedSize(other)),
    };
    let log_size = m.trailing_zeros();
    let zetas: Vec<Residue> = (0..m).map(|i| pow_mod(psi, bit_reverse(i, log_size) as u64)).collect();
    let inv_zetas = zetas.iter().map(|z| inv_mod(*z)).collect::<Result<Vec<_>>>()?;
    let y_constant =
        NttVector::from_evals((0..m).map(|j| pow_mod(psi, 2 * bit_reverse(j, log_size) as u64 + 1)).collect());
    Ok(TwiddleTables {
        size: m,
        log_size,
        psi,
        zetas,
        inv_zetas,
        m_inverse: inv_mod(Residue::new(m as u32))?,
        y_constant,
    })
}

impl TwiddleTables {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn psi(&self) -> Residue {
        self.psi
    }

    pub fn m_inverse(&self) -> Residue {
        self.m_inverse
    }

    /// `NTT(y)`, the evaluation vector of the monomial `y`.
    pub fn y_constant(&self) -> &NttVector {
        &self.y_constant
    }

    /// Evaluation point for output slot `j`.
    pub fn eval_point(&self, j: usize) -> Residue {
        pow_mod(self.psi, 2 * bit_reverse(j, self.log_size) as u64 + 1)
    }

    /// Overwrites one forward twiddle with a wrong value. Fault-injection hook
    /// for self-test validation only.
    #[doc(hidden)]
    pub fn corrupt_for_testing(&mut self) {
        let idx = self.size / 2 + 1;
        self.zetas[idx] = add_raw(self.zetas[idx], Residue::ONE);
    }
}

/// Both table sizes used by the two- and four-parallel pipelines.
#[derive(Clone, Debug)]
pub struct TableSet {
    pub t128: TwiddleTables,
    pub t64: TwiddleTables,
}

impl TableSet {
    pub fn new() -> Self {
        TableSet {
            t128: build_tables(128).expect("128 is a supported size"),
            t64: build_tables(64).expect("64 is a supported size"),
        }
    }

    /// Tables for phases of length `len`.
    pub fn for_len(&self, len: usize) -> Result<&TwiddleTables> {
        match len {
            128 => Ok(&self.t128),
            64 => Ok(&self.t64),
            other => Err(Error::UnsupportedSize(other)),
        }
    }
}

impl Default for TableSet {
    fn default() -> Self {
        Self::new()
    }
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Shape { expected, found })
    }
}

/// Forward transform. Costs `(m/2)·log2(m)` modmul and `m·log2(m)` modadd.
pub fn ntt_forward(f: &Polynomial, tables: &TwiddleTables, ctx: &mut OpCounter) -> Result<NttVector> {
    check_len(f.len(), tables.size)?;
    let m = tables.size;
    let mut a = f.coeffs.clone();
    let mut k = 1;
    let mut len = m / 2;
    while len >= 1 {
        for start in (0..m).step_by(2 * len) {
            let zeta = tables.zetas[k];
            k += 1;
            for j in start..start + len {
                let t = mul_mod(zeta, a[j + len], ctx);
                a[j + len] = sub_mod(a[j], t, ctx);
                a[j] = add_mod(a[j], t, ctx);
            }
        }
        len /= 2;
    }
    Ok(NttVector { evals: a })
}

/// Inverse transform including the final `m^-1` scaling pass.
pub fn ntt_inverse(v: &NttVector, tables: &TwiddleTables, ctx: &mut OpCounter) -> Result<Polynomial> {
    check_len(v.len(), tables.size)?;
    let m = tables.size;
    let mut a = v.evals.clone();
    let mut k = m - 1;
    let mut len = 1;
    while len < m {
        for start in (0..m).step_by(2 * len).rev() {
            let inv_zeta = tables.inv_zetas[k];
            k -= 1;
            for j in start..start + len {
                let t = a[j];
                a[j] = add_mod(t, a[j + len], ctx);
                let d = sub_mod(t, a[j + len], ctx);
                a[j + len] = mul_mod(inv_zeta, d, ctx);
            }
        }
        len *= 2;
    }
    for c in a.iter_mut() {
        *c = mul_mod(*c, tables.m_inverse, ctx);
    }
    Ok(Polynomial { coeffs: a })
}

/// Direct O(m^2) evaluation at every output point. Uncounted test oracle that
/// shares no butterfly code with [`ntt_forward`].
pub fn ntt_eval_reference(f: &Polynomial, tables: &TwiddleTables) -> Result<NttVector> {
    check_len(f.len(), tables.size)?;
    let evals = (0..tables.size)
        .map(|j| {
            let point = tables.eval_point(j);
            f.coeffs.iter().rev().fold(Residue::ZERO, |acc, c| add_raw(mul_raw(acc, point), *c))
        })
        .collect();
    Ok(NttVector { evals })
}

fn zip_with(u: &NttVector, v: &NttVector, op: impl Fn(Residue, Residue) -> Residue) -> Result<NttVector> {
    check_len(v.len(), u.len())?;
    Ok(NttVector { evals: u.evals.iter().zip(&v.evals).map(|(a, b)| op(*a, *b)).collect() })
}

pub fn pointwise_mul(u: &NttVector, v: &NttVector, ctx: &mut OpCounter) -> Result<NttVector> {
    check_len(v.len(), u.len())?;
    ctx.tick_mul(u.len() as u64);
    zip_with(u, v, mul_raw)
}

pub fn pointwise_add(u: &NttVector, v: &NttVector, ctx: &mut OpCounter) -> Result<NttVector> {
    check_len(v.len(), u.len())?;
    ctx.tick_add(u.len() as u64);
    zip_with(u, v, add_raw)
}

pub fn pointwise_sub(u: &NttVector, v: &NttVector, ctx: &mut OpCounter) -> Result<NttVector> {
    check_len(v.len(), u.len())?;
    ctx.tick_add(u.len() as u64);
    zip_with(u, v, crate::modarith::sub_raw)
}
