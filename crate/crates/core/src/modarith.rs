//! Arithmetic in Z_q for the Kyber prime q = 3329.
//!
//! Every countable operation takes an [`OpCounter`]. One logical modular
//! multiplication is one `modmul` tick and one addition or subtraction is one
//! `modadd` tick, independent of how the reduction is carried out internally.
//! Table construction helpers ([`pow_mod`], [`inv_mod`]) are not counted.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// The Kyber modulus.
pub const Q: u16 = 3329;

const Q32: u32 = Q as u32;

// floor(2^32 / q), used for Barrett reduction of products below q^2.
const BARRETT_FACTOR: u64 = (1u64 << 32) / Q as u64;

/// An element of Z_q held in canonical form `0 <= value < q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(u16);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    /// Reduces an arbitrary integer into Z_q.
    pub fn new(value: u32) -> Self {
        Residue((value % Q32) as u16)
    }

    /// Builds a residue from a value already known to be below q.
    pub fn try_from_canonical(value: u32) -> Option<Self> {
        (value < Q32).then_some(Residue(value as u16))
    }

    pub fn value(self) -> u16 {
        self.0
    }

    fn from_canonical(value: u32) -> Self {
        debug_assert!(value < Q32);
        Residue(value as u16)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Tallies of modular operations recorded through one counting context.
///
/// `y_lane_products` and `y_shift_products` count whole-vector products with
/// the precomputed `NTT(y)` constant. Their element-level multiplications are
/// also included in `modmul`. A lane product realises the delay of one fast
/// filter sub-structure; a shift product realises the outer-level `x^2` step of
/// a nested four-parallel structure when it is not derived from lane products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounter {
    pub modmul: u64,
    pub modadd: u64,
    pub y_lane_products: u64,
    pub y_shift_products: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(modmul, modadd)`.
    pub fn totals(&self) -> (u64, u64) {
        (self.modmul, self.modadd)
    }

    pub fn tick_mul(&mut self, n: u64) {
        self.modmul += n;
    }

    pub fn tick_add(&mut self, n: u64) {
        self.modadd += n;
    }
}

impl Add for OpCounter {
    type Output = OpCounter;

    fn add(mut self, rhs: OpCounter) -> OpCounter {
        self += rhs;
        self
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: OpCounter) {
        self.modmul += rhs.modmul;
        self.modadd += rhs.modadd;
        self.y_lane_products += rhs.y_lane_products;
        self.y_shift_products += rhs.y_shift_products;
    }
}

/// Separate counters for the transform stage (NTT/iNTT) and the NTT-domain
/// matrix-vector stage. Complexity tables are read from `matvec` only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageCounters {
    pub transform: OpCounter,
    pub matvec: OpCounter,
}

impl StageCounters {
    pub fn new() -> Self {
        Self::default()
    }
}

#[inline]
fn reduce_product(x: u32) -> u32 {
    // x < q^2 < 2^24, so the quotient estimate is off by at most one.
    let quot = ((x as u64 * BARRETT_FACTOR) >> 32) as u32;
    let r = x - quot * Q32;
    if r >= Q32 {
        r - Q32
    } else {
        r
    }
}

#[inline]
pub(crate) fn add_raw(a: Residue, b: Residue) -> Residue {
    let s = a.0 as u32 + b.0 as u32;
    Residue::from_canonical(if s >= Q32 { s - Q32 } else { s })
}

#[inline]
pub(crate) fn sub_raw(a: Residue, b: Residue) -> Residue {
    let d = a.0 as u32 + Q32 - b.0 as u32;
    Residue::from_canonical(if d >= Q32 { d - Q32 } else { d })
}

#[inline]
pub(crate) fn mul_raw(a: Residue, b: Residue) -> Residue {
    Residue::from_canonical(reduce_product(a.0 as u32 * b.0 as u32))
}

pub fn add_mod(a: Residue, b: Residue, ctx: &mut OpCounter) -> Residue {
    ctx.modadd += 1;
    add_raw(a, b)
}

pub fn sub_mod(a: Residue, b: Residue, ctx: &mut OpCounter) -> Residue {
    ctx.modadd += 1;
    sub_raw(a, b)
}

pub fn mul_mod(a: Residue, b: Residue, ctx: &mut OpCounter) -> Residue {
    ctx.modmul += 1;
    mul_raw(a, b)
}

/// `a^e mod q` by square-and-multiply. Uncounted.
pub fn pow_mod(a: Residue, mut e: u64) -> Residue {
    let mut base = a;
    let mut acc = Residue::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(acc, base);
        }
        base = mul_raw(base, base);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse via Fermat (q is prime). Uncounted.
pub fn inv_mod(a: Residue) -> Result<Residue> {
    if a == Residue::ZERO {
        return Err(Error::NotInvertible(0));
    }
    Ok(pow_mod(a, Q as u64 - 2))
}
