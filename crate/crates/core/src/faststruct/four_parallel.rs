//! Four-parallel structures, `y = x^4`, phases of length 64.
//!
//! The two-parallel transposed construction is applied twice. The outer level
//! splits the operands into `(r_0, r_2)` and `(r_1, r_3)` with step `x^2`; the
//! inner level applies the same construction again with step `x^4`. Lanes are
//! numbered `3·b + i` for outer block `b` and inner lane `i`.
//!
//! ```text
//! F_0 = [d_3 − r_1 + r_0,       r_1 − r_0,       y·d_3 − r_1 + r_0]
//! F_1 = [r_2 − r_0,             r_0,             y·r_2 − r_0]
//! F_2 = [d_1 − y·r_3 + r_0,     y·r_3 − r_0,     y·d_1 − y·r_3 + r_0]
//!
//! G_0 = [a_0,        a_0 + a_2,                a_2]
//! G_1 = [a_0 + a_1,  a_0 + a_1 + a_2 + a_3,    a_2 + a_3]
//! G_2 = [a_1,        a_1 + a_3,                a_3]
//! ```
//!
//! with `d_3 = r_3 − r_2` and `d_1 = r_1 − r_2`. In the shared variant
//! `y·r_3 = y·d_3 + y·r_2`, so only three `y` products are needed.

use super::{
    check_lane_count, check_parallelism, check_phases, mul_by_y, LaneProducts, PreprocessedMatrixEntry,
    PreprocessedVectorEntry, YRole,
};
use crate::error::{Error, Result};
use crate::modarith::OpCounter;
use crate::ntt::{pointwise_add, pointwise_sub, NttVector, TwiddleTables};
use crate::polyphase::Parallelism;

fn four_phases(phases: &[NttVector], len: usize) -> Result<[&NttVector; 4]> {
    let [p0, p1, p2, p3] = phases else {
        return Err(Error::Shape { expected: 4, found: phases.len() });
    };
    check_phases(&[p0, p1, p2, p3], len)?;
    Ok([p0, p1, p2, p3])
}

struct Lanes<'c> {
    ctx: &'c mut OpCounter,
}

impl Lanes<'_> {
    fn add(&mut self, a: &NttVector, b: &NttVector) -> Result<NttVector> {
        pointwise_add(a, b, self.ctx)
    }

    fn sub(&mut self, a: &NttVector, b: &NttVector) -> Result<NttVector> {
        pointwise_sub(a, b, self.ctx)
    }

    // a − b + c
    fn sub_add(&mut self, a: &NttVector, b: &NttVector, c: &NttVector) -> Result<NttVector> {
        let t = self.sub(a, b)?;
        self.add(&t, c)
    }
}

/// Shared-variant vector lanes: three `y` products and 15 additions.
pub fn preprocess_vector_entry_4(
    phases: &[NttVector],
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<PreprocessedVectorEntry> {
    let [r0, r1, r2, r3] = four_phases(phases, tables.size())?;
    let mut ops = Lanes { ctx };
    let d3 = ops.sub(r3, r2)?;
    let d1 = ops.sub(r1, r2)?;
    let y_d3 = mul_by_y(&d3, tables, YRole::Lane, ops.ctx)?;
    let y_r2 = mul_by_y(r2, tables, YRole::Lane, ops.ctx)?;
    let y_d1 = mul_by_y(&d1, tables, YRole::Lane, ops.ctx)?;
    let y_r3 = ops.add(&y_d3, &y_r2)?;
    let lanes = vec![
        ops.sub_add(&d3, r1, r0)?,
        ops.sub(r1, r0)?,
        ops.sub_add(&y_d3, r1, r0)?,
        ops.sub(r2, r0)?,
        r0.clone(),
        ops.sub(&y_r2, r0)?,
        ops.sub_add(&d1, &y_r3, r0)?,
        ops.sub(&y_r3, r0)?,
        ops.sub_add(&y_d1, &y_r3, r0)?,
    ];
    Ok(PreprocessedVectorEntry { parallelism: Parallelism::Four, lanes })
}

/// Unshared-variant vector lanes: each lane is formed straight from the
/// phases, with its own `y·r_3` product. Four `y` products and 16 additions.
pub fn preprocess_vector_entry_4_unshared(
    phases: &[NttVector],
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<PreprocessedVectorEntry> {
    let [r0, r1, r2, r3] = four_phases(phases, tables.size())?;
    let mut ops = Lanes { ctx };
    let d3 = ops.sub(r3, r2)?;
    let d1 = ops.sub(r1, r2)?;
    let y_d3 = mul_by_y(&d3, tables, YRole::Lane, ops.ctx)?;
    let y_r2 = mul_by_y(r2, tables, YRole::Lane, ops.ctx)?;
    let y_d1 = mul_by_y(&d1, tables, YRole::Lane, ops.ctx)?;
    let y_r3 = mul_by_y(r3, tables, YRole::Shift, ops.ctx)?;

    let t = ops.sub(r3, r2)?;
    let lane0 = ops.sub_add(&t, r1, r0)?;
    let t = ops.sub(r1, r2)?;
    let lane6 = ops.sub_add(&t, &y_r3, r0)?;
    let lanes = vec![
        lane0,
        ops.sub(r1, r0)?,
        ops.sub_add(&y_d3, r1, r0)?,
        ops.sub(r2, r0)?,
        r0.clone(),
        ops.sub(&y_r2, r0)?,
        lane6,
        ops.sub(&y_r3, r0)?,
        ops.sub_add(&y_d1, &y_r3, r0)?,
    ];
    Ok(PreprocessedVectorEntry { parallelism: Parallelism::Four, lanes })
}

/// Matrix lanes, additions only (7 per entry).
pub fn preprocess_matrix_entry_4(phases: &[NttVector], ctx: &mut OpCounter) -> Result<PreprocessedMatrixEntry> {
    let len = phases.first().map_or(0, NttVector::len);
    let [a0, a1, a2, a3] = four_phases(phases, len)?;
    let mut ops = Lanes { ctx };
    let a01 = ops.add(a0, a1)?;
    let a23 = ops.add(a2, a3)?;
    let t = ops.add(a0, a1)?;
    let t = ops.add(&t, a2)?;
    let a0123 = ops.add(&t, a3)?;
    let lanes =
        vec![a0.clone(), ops.add(a0, a2)?, a2.clone(), a01, a0123, a23, a1.clone(), ops.add(a1, a3)?, a3.clone()];
    Ok(PreprocessedMatrixEntry { parallelism: Parallelism::Four, lanes })
}

fn four_lane_sums(sums: &LaneProducts) -> Result<&[NttVector]> {
    check_parallelism(Parallelism::Four, sums.parallelism)?;
    check_lane_count(Parallelism::Four, sums.lanes.len())?;
    Ok(&sums.lanes)
}

/// Nested combine: inner `(E_b, O_b)` per block, then the outer level.
/// Returns the four output phases. 10 additions.
pub fn combine_lanes_4(sums: &LaneProducts, ctx: &mut OpCounter) -> Result<Vec<NttVector>> {
    let l = four_lane_sums(sums)?;
    let mut ops = Lanes { ctx };
    let mut even = Vec::with_capacity(3);
    let mut odd = Vec::with_capacity(3);
    for b in 0..3 {
        even.push(ops.add(&l[3 * b + 1], &l[3 * b + 2])?);
        odd.push(ops.add(&l[3 * b + 1], &l[3 * b])?);
    }
    Ok(vec![
        ops.add(&even[1], &even[2])?,
        ops.add(&even[1], &even[0])?,
        ops.add(&odd[1], &odd[2])?,
        ops.add(&odd[1], &odd[0])?,
    ])
}

/// Each output phase as a flat four-term sum. 12 additions.
pub fn combine_lanes_4_direct(sums: &LaneProducts, ctx: &mut OpCounter) -> Result<Vec<NttVector>> {
    let l = four_lane_sums(sums)?;
    let mut ops = Lanes { ctx };
    let mut sum4 = |w: usize, x: usize, y: usize, z: usize| -> Result<NttVector> {
        let t = ops.add(&l[w], &l[x])?;
        let t = ops.add(&t, &l[y])?;
        ops.add(&t, &l[z])
    };
    Ok(vec![sum4(4, 5, 7, 8)?, sum4(4, 5, 1, 2)?, sum4(4, 3, 7, 6)?, sum4(4, 3, 1, 0)?])
}
