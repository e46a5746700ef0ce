//! Two-parallel structures, `y = x^2`, phases of length 128.
//!
//! For `r = r_e(x^2) + x·r_o(x^2)` and `a = a_e(x^2) + x·a_o(x^2)`:
//!
//! ```text
//! p_e = r_e·a_e + y·r_o·a_o
//! p_o = (r_e + r_o)(a_e + a_o) − r_e·a_e − r_o·a_o
//! ```
//!
//! The transposed form moves the `y` product onto the vector side, where a
//! matrix row can share it. The original form keeps it on the output side and
//! defers it until partial products are summed across the row.

use super::{
    check_lane_count, check_phases, mul_by_y, LaneProducts, PreprocessedMatrixEntry, PreprocessedVectorEntry, YRole,
};
use crate::error::Result;
use crate::modarith::OpCounter;
use crate::ntt::{pointwise_add, pointwise_mul, pointwise_sub, NttVector, TwiddleTables};
use crate::polyphase::Parallelism;

/// Lanes `[r_o − r_e, r_e, y∘r_o − r_e]`.
pub fn preprocess_vector_entry_2(
    r_even: &NttVector,
    r_odd: &NttVector,
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<PreprocessedVectorEntry> {
    check_phases(&[r_even, r_odd], tables.size())?;
    let lane0 = pointwise_sub(r_odd, r_even, ctx)?;
    let y_odd = mul_by_y(r_odd, tables, YRole::Lane, ctx)?;
    let lane2 = pointwise_sub(&y_odd, r_even, ctx)?;
    Ok(PreprocessedVectorEntry { parallelism: Parallelism::Two, lanes: vec![lane0, r_even.clone(), lane2] })
}

/// Lanes `[a_e, a_e + a_o, a_o]`.
pub fn preprocess_matrix_entry_2(
    a_even: &NttVector,
    a_odd: &NttVector,
    ctx: &mut OpCounter,
) -> Result<PreprocessedMatrixEntry> {
    check_phases(&[a_odd], a_even.len())?;
    let sum = pointwise_add(a_even, a_odd, ctx)?;
    Ok(PreprocessedMatrixEntry { parallelism: Parallelism::Two, lanes: vec![a_even.clone(), sum, a_odd.clone()] })
}

/// `(p_e, p_o) = (s_1 + s_2, s_1 + s_0)`.
pub fn combine_lanes_2(sums: &LaneProducts, ctx: &mut OpCounter) -> Result<(NttVector, NttVector)> {
    super::check_parallelism(Parallelism::Two, sums.parallelism)?;
    check_lane_count(Parallelism::Two, sums.lanes.len())?;
    let s = &sums.lanes;
    Ok((pointwise_add(&s[1], &s[2], ctx)?, pointwise_add(&s[1], &s[0], ctx)?))
}

/// One operand of the original form: its phases and their sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginalFormOperand {
    pub even: NttVector,
    pub odd: NttVector,
    pub sum: NttVector,
}

pub fn prepare_original_operand(even: &NttVector, odd: &NttVector, ctx: &mut OpCounter) -> Result<OriginalFormOperand> {
    check_phases(&[odd], even.len())?;
    Ok(OriginalFormOperand { sum: pointwise_add(even, odd, ctx)?, even: even.clone(), odd: odd.clone() })
}

/// Original-form partial products with the `y` product still pending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginalPartials {
    /// `r_e ∘ a_e`
    pub even: NttVector,
    /// `r_o ∘ a_o`, to be multiplied by `y`
    pub odd: NttVector,
    /// `(r_e + r_o) ∘ (a_e + a_o)`
    pub cross: NttVector,
}

impl OriginalPartials {
    pub fn accumulate(&mut self, next: &OriginalPartials, ctx: &mut OpCounter) -> Result<()> {
        self.even = pointwise_add(&self.even, &next.even, ctx)?;
        self.odd = pointwise_add(&self.odd, &next.odd, ctx)?;
        self.cross = pointwise_add(&self.cross, &next.cross, ctx)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero() && self.cross.is_zero()
    }
}

/// Three raw products. No `y` product is applied here.
pub fn entry_mul_original_form_2(
    r: &OriginalFormOperand,
    a: &OriginalFormOperand,
    ctx: &mut OpCounter,
) -> Result<OriginalPartials> {
    Ok(OriginalPartials {
        even: pointwise_mul(&r.even, &a.even, ctx)?,
        odd: pointwise_mul(&r.odd, &a.odd, ctx)?,
        cross: pointwise_mul(&r.sum, &a.sum, ctx)?,
    })
}

/// Applies the deferred `y` product once to row sums and forms `(p_e, p_o)`.
pub fn finish_original_form_2(
    sums: &OriginalPartials,
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<(NttVector, NttVector)> {
    let y_odd = mul_by_y(&sums.odd, tables, YRole::Lane, ctx)?;
    let p_even = pointwise_add(&sums.even, &y_odd, ctx)?;
    let p_odd = pointwise_sub(&pointwise_sub(&sums.cross, &sums.even, ctx)?, &sums.odd, ctx)?;
    Ok((p_even, p_odd))
}

/// Direct four-term expansion with five products per entry.
pub fn entry_mul_five_2(
    r_even: &NttVector,
    r_odd: &NttVector,
    a_even: &NttVector,
    a_odd: &NttVector,
    tables: &TwiddleTables,
    ctx: &mut OpCounter,
) -> Result<(NttVector, NttVector)> {
    check_phases(&[r_even, r_odd, a_even, a_odd], tables.size())?;
    let ee = pointwise_mul(r_even, a_even, ctx)?;
    let oo = pointwise_mul(r_odd, a_odd, ctx)?;
    let y_oo = mul_by_y(&oo, tables, YRole::Lane, ctx)?;
    let eo = pointwise_mul(r_even, a_odd, ctx)?;
    let oe = pointwise_mul(r_odd, a_even, ctx)?;
    Ok((pointwise_add(&ee, &y_oo, ctx)?, pointwise_add(&eo, &oe, ctx)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faststruct::{accumulate_lanes, entry_mul_lanes};
    use crate::matvec::{from_ntt_phases, ntt_phases};
    use crate::ntt::build_tables;
    use crate::oracle::negacyclic_mul_schoolbook;
    use crate::polyphase::decompose;
    use crate::rng::SplitMix64;

    fn neg(v: &NttVector) -> NttVector {
        pointwise_sub(&NttVector::zero(v.len()), v, &mut OpCounter::new()).unwrap()
    }

    #[test]
    fn vector_prep_examples_and_count() {
        let t = build_tables(128).unwrap();
        let z = NttVector::zero(128);
        let mut c = OpCounter::new();
        let f = preprocess_vector_entry_2(&z, &z, &t, &mut c).unwrap();
        assert!(f.lanes().iter().all(NttVector::is_zero));
        assert_eq!(c.totals(), (128, 256));
        assert_eq!(c.y_lane_products, 1);

        let mut rng = SplitMix64::new(8);
        let re = rng.ntt_vector(128);
        let f = preprocess_vector_entry_2(&re, &z, &t, &mut c).unwrap();
        assert_eq!(f.lanes(), &[neg(&re), re.clone(), neg(&re)]);

        let ro = rng.ntt_vector(128);
        let f = preprocess_vector_entry_2(&re, &ro, &t, &mut c).unwrap();
        let lhs = pointwise_add(&f.lanes()[2], &f.lanes()[1], &mut c).unwrap();
        assert_eq!(lhs, pointwise_mul(&ro, t.y_constant(), &mut c).unwrap());
    }

    #[test]
    fn matrix_prep_examples_and_count() {
        let z = NttVector::zero(128);
        let mut c = OpCounter::new();
        let g = preprocess_matrix_entry_2(&z, &z, &mut c).unwrap();
        assert!(g.lanes().iter().all(NttVector::is_zero));
        assert_eq!(c.totals(), (0, 128));

        let mut rng = SplitMix64::new(9);
        let ae = rng.ntt_vector(128);
        let g = preprocess_matrix_entry_2(&ae, &z, &mut c).unwrap();
        assert_eq!(g.lanes(), &[ae.clone(), ae.clone(), z.clone()]);

        let ao = rng.ntt_vector(128);
        let g = preprocess_matrix_entry_2(&ae, &ao, &mut c).unwrap();
        assert_eq!(pointwise_sub(&g.lanes()[1], &g.lanes()[0], &mut c).unwrap(), g.lanes()[2]);
        assert!(preprocess_matrix_entry_2(&ae, &NttVector::zero(64), &mut c).is_err());
    }

    #[test]
    fn combine_examples_and_count() {
        let mut c = OpCounter::new();
        let zero = LaneProducts::from_lanes(Parallelism::Two, vec![NttVector::zero(128); 3]).unwrap();
        let (pe, po) = combine_lanes_2(&zero, &mut c).unwrap();
        assert!(pe.is_zero() && po.is_zero());
        assert_eq!(c.totals(), (0, 256));

        // r_o = 0 and a_o = 0: p_e = r_e∘a_e and p_o = 0.
        let t = build_tables(128).unwrap();
        let mut rng = SplitMix64::new(10);
        let (re, ae, z) = (rng.ntt_vector(128), rng.ntt_vector(128), NttVector::zero(128));
        let f = preprocess_vector_entry_2(&re, &z, &t, &mut c).unwrap();
        let g = preprocess_matrix_entry_2(&ae, &z, &mut c).unwrap();
        let (pe, po) = combine_lanes_2(&entry_mul_lanes(&g, &f, &mut c).unwrap(), &mut c).unwrap();
        assert_eq!(pe, pointwise_mul(&re, &ae, &mut c).unwrap());
        assert!(po.is_zero());
    }

    #[test]
    fn single_entry_paths_match_schoolbook() {
        let t = build_tables(128).unwrap();
        let mut rng = SplitMix64::new(12);
        for _ in 0..20 {
            let r = rng.polynomial(256);
            let a = rng.polynomial(256);
            let expected = negacyclic_mul_schoolbook(&r, &a).unwrap();
            let expected_phases = decompose(&expected, Parallelism::Two).unwrap();
            let mut c = OpCounter::new();
            let rh = ntt_phases(&r, Parallelism::Two, &t, &mut c).unwrap();
            let ah = ntt_phases(&a, Parallelism::Two, &t, &mut c).unwrap();

            let f = preprocess_vector_entry_2(&rh[0], &rh[1], &t, &mut c).unwrap();
            let g = preprocess_matrix_entry_2(&ah[0], &ah[1], &mut c).unwrap();
            let (pe, po) = combine_lanes_2(&entry_mul_lanes(&g, &f, &mut c).unwrap(), &mut c).unwrap();
            let mut tc = OpCounter::new();
            assert_eq!(crate::ntt::ntt_inverse(&pe, &t, &mut tc).unwrap(), expected_phases.phases()[0]);
            assert_eq!(crate::ntt::ntt_inverse(&po, &t, &mut tc).unwrap(), expected_phases.phases()[1]);
            assert_eq!(from_ntt_phases(&[pe.clone(), po.clone()], &t, &mut tc).unwrap(), expected);

            let ro = prepare_original_operand(&rh[0], &rh[1], &mut c).unwrap();
            let ao = prepare_original_operand(&ah[0], &ah[1], &mut c).unwrap();
            let partials = entry_mul_original_form_2(&ro, &ao, &mut c).unwrap();
            assert_eq!(finish_original_form_2(&partials, &t, &mut c).unwrap(), (pe.clone(), po.clone()));

            assert_eq!(entry_mul_five_2(&rh[0], &rh[1], &ah[0], &ah[1], &t, &mut c).unwrap(), (pe, po));
        }
    }

    #[test]
    fn original_form_defers_y_and_matches_transposed_rows() {
        let t = build_tables(128).unwrap();
        let mut rng = SplitMix64::new(13);
        let k = 2;
        let r: Vec<Vec<NttVector>> = (0..k).map(|_| vec![rng.ntt_vector(128), rng.ntt_vector(128)]).collect();
        let a: Vec<Vec<NttVector>> = (0..k).map(|_| vec![rng.ntt_vector(128), rng.ntt_vector(128)]).collect();
        let mut c = OpCounter::new();

        let mut acc_t: Option<LaneProducts> = None;
        let mut acc_o: Option<OriginalPartials> = None;
        for j in 0..k {
            let f = preprocess_vector_entry_2(&r[j][0], &r[j][1], &t, &mut c).unwrap();
            let g = preprocess_matrix_entry_2(&a[j][0], &a[j][1], &mut c).unwrap();
            let beta = entry_mul_lanes(&g, &f, &mut c).unwrap();
            match acc_t.as_mut() {
                Some(acc) => accumulate_lanes(acc, &beta, &mut c).unwrap(),
                None => acc_t = Some(beta),
            }
            let ro = prepare_original_operand(&r[j][0], &r[j][1], &mut c).unwrap();
            let ao = prepare_original_operand(&a[j][0], &a[j][1], &mut c).unwrap();
            let mut pc = OpCounter::new();
            let part = entry_mul_original_form_2(&ro, &ao, &mut pc).unwrap();
            assert_eq!(pc.totals(), (384, 0));
            assert_eq!(pc.y_lane_products, 0);
            match acc_o.as_mut() {
                Some(acc) => acc.accumulate(&part, &mut c).unwrap(),
                None => acc_o = Some(part),
            }
        }
        let transposed = combine_lanes_2(&acc_t.unwrap(), &mut c).unwrap();
        let mut fc = OpCounter::new();
        let original = finish_original_form_2(&acc_o.unwrap(), &t, &mut fc).unwrap();
        assert_eq!(fc.totals(), (128, 384));
        assert_eq!(fc.y_lane_products, 1);
        assert_eq!(original, transposed);
    }

    #[test]
    fn zero_original_operands_give_zero_partials() {
        let z = NttVector::zero(128);
        let mut c = OpCounter::new();
        let op = prepare_original_operand(&z, &z, &mut c).unwrap();
        assert!(entry_mul_original_form_2(&op, &op, &mut c).unwrap().is_zero());
    }

    #[test]
    fn five_mult_counts() {
        let t = build_tables(128).unwrap();
        let z = NttVector::zero(128);
        let mut c = OpCounter::new();
        entry_mul_five_2(&z, &z, &z, &z, &t, &mut c).unwrap();
        assert_eq!(c.totals(), (640, 256));
        assert_eq!(c.y_lane_products, 1);
    }
}
