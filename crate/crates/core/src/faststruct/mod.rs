//! Fast parallel structures for one NTT-domain polynomial product.
//!
//! Each structure splits the product of two polyphase-decomposed operands into
//! lanes: the vector operand `r` is preprocessed into lanes `f`, the matrix
//! operand `a` into lanes `g`, and the lane-wise products `g ∘ f` are summed
//! across a matrix row before a final combination recovers the output phases.
//! The filter delay becomes a pointwise product with `NTT(y)`, where `y = x^L`.
//!
//! | structure | lanes | vector prep | matrix prep |
//! |---|---|---|---|
//! | two-parallel | 3 | 1 `y` product, 2 adds | 1 add |
//! | four-parallel | 9 | 3 `y` products, 15 adds | 7 adds |

use crate::error::{Error, Result};
use crate::modarith::OpCounter;
use crate::ntt::{pointwise_add, pointwise_mul, NttVector, TwiddleTables};
use crate::polyphase::Parallelism;

pub mod four_parallel;
pub mod two_parallel;

pub use four_parallel::{
    combine_lanes_4, combine_lanes_4_direct, preprocess_matrix_entry_4, preprocess_vector_entry_4,
    preprocess_vector_entry_4_unshared,
};
pub use two_parallel::{
    combine_lanes_2, entry_mul_five_2, entry_mul_original_form_2, finish_original_form_2, prepare_original_operand,
    preprocess_matrix_entry_2, preprocess_vector_entry_2, OriginalFormOperand, OriginalPartials,
};

/// The `f` lanes of one vector entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessedVectorEntry {
    parallelism: Parallelism,
    lanes: Vec<NttVector>,
}

/// The `g` lanes of one matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessedMatrixEntry {
    parallelism: Parallelism,
    lanes: Vec<NttVector>,
}

/// Lane-wise products, or their sums across a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaneProducts {
    parallelism: Parallelism,
    lanes: Vec<NttVector>,
}

macro_rules! lane_accessors {
    ($ty:ident) => {
        impl $ty {
            pub fn parallelism(&self) -> Parallelism {
                self.parallelism
            }

            pub fn lanes(&self) -> &[NttVector] {
                &self.lanes
            }
        }
    };
}

lane_accessors!(PreprocessedVectorEntry);
lane_accessors!(PreprocessedMatrixEntry);
lane_accessors!(LaneProducts);

impl LaneProducts {
    /// Wraps precomputed lane sums, e.g. to feed a combine step directly.
    pub fn from_lanes(parallelism: Parallelism, lanes: Vec<NttVector>) -> Result<Self> {
        check_lane_count(parallelism, lanes.len())?;
        Ok(LaneProducts { parallelism, lanes })
    }
}

fn check_lane_count(parallelism: Parallelism, found: usize) -> Result<()> {
    if found == parallelism.lanes() {
        Ok(())
    } else {
        Err(Error::Shape { expected: parallelism.lanes(), found })
    }
}

fn check_parallelism(expected: Parallelism, found: Parallelism) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension(format!("expected L={expected} lanes, found L={found}")))
    }
}

fn check_phases(phases: &[&NttVector], len: usize) -> Result<()> {
    match phases.iter().find(|p| p.len() != len) {
        Some(bad) => Err(Error::Shape { expected: len, found: bad.len() }),
        None => Ok(()),
    }
}

/// What a product with `NTT(y)` stands for, for counter tracing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum YRole {
    /// The delay element of one fast-filter sub-structure.
    Lane,
    /// The outer `x^2` step of a nested structure, realised on its own.
    Shift,
}

pub(crate) fn mul_by_y(v: &NttVector, tables: &TwiddleTables, role: YRole, ctx: &mut OpCounter) -> Result<NttVector> {
    let out = pointwise_mul(tables.y_constant(), v, ctx)?;
    match role {
        YRole::Lane => ctx.y_lane_products += 1,
        YRole::Shift => ctx.y_shift_products += 1,
    }
    Ok(out)
}

/// `β = g ∘ f`, one pointwise product per lane.
pub fn entry_mul_lanes(
    g: &PreprocessedMatrixEntry,
    f: &PreprocessedVectorEntry,
    ctx: &mut OpCounter,
) -> Result<LaneProducts> {
    check_parallelism(g.parallelism, f.parallelism)?;
    let lanes = g.lanes.iter().zip(&f.lanes).map(|(gl, fl)| pointwise_mul(gl, fl, ctx)).collect::<Result<Vec<_>>>()?;
    Ok(LaneProducts { parallelism: g.parallelism, lanes })
}

/// `acc += next`, lane by lane.
pub fn accumulate_lanes(acc: &mut LaneProducts, next: &LaneProducts, ctx: &mut OpCounter) -> Result<()> {
    check_parallelism(acc.parallelism, next.parallelism)?;
    for (a, b) in acc.lanes.iter_mut().zip(&next.lanes) {
        *a = pointwise_add(a, b, ctx)?;
    }
    Ok(())
}
