//! One polynomial product through the fast two-parallel structure.
//!
//! Both operands are split into even and odd phases and transformed with the
//! 128-point NTT. The transposed structure needs three pointwise products plus
//! one product with `NTT(y)` on the vector side. The original form gives the
//! same result with the `NTT(y)` product applied after the three raw products.

use kyber_matvec::faststruct::{
    combine_lanes_2, entry_mul_lanes, entry_mul_original_form_2, finish_original_form_2, prepare_original_operand,
    preprocess_matrix_entry_2, preprocess_vector_entry_2,
};
use kyber_matvec::matvec::{from_ntt_phases, ntt_phases};
use kyber_matvec::{build_tables, negacyclic_mul_schoolbook, OpCounter, Parallelism, SplitMix64};

fn main() {
    let tables = build_tables(128).unwrap();
    let mut rng = SplitMix64::new(7);
    let r = rng.polynomial(256);
    let a = rng.polynomial(256);

    let mut setup = OpCounter::new();
    let r_hat = ntt_phases(&r, Parallelism::Two, &tables, &mut setup).unwrap();
    let a_hat = ntt_phases(&a, Parallelism::Two, &tables, &mut setup).unwrap();

    let mut ctx = OpCounter::new();
    let f = preprocess_vector_entry_2(&r_hat[0], &r_hat[1], &tables, &mut ctx).unwrap();
    let g = preprocess_matrix_entry_2(&a_hat[0], &a_hat[1], &mut ctx).unwrap();
    let beta = entry_mul_lanes(&g, &f, &mut ctx).unwrap();
    let (p_even, p_odd) = combine_lanes_2(&beta, &mut ctx).unwrap();
    println!("transposed: modmul={} modadd={} y products={}", ctx.modmul, ctx.modadd, ctx.y_lane_products);

    let mut ctx = OpCounter::new();
    let r_op = prepare_original_operand(&r_hat[0], &r_hat[1], &mut ctx).unwrap();
    let a_op = prepare_original_operand(&a_hat[0], &a_hat[1], &mut ctx).unwrap();
    let partials = entry_mul_original_form_2(&r_op, &a_op, &mut ctx).unwrap();
    let original = finish_original_form_2(&partials, &tables, &mut ctx).unwrap();
    println!("original:   modmul={} modadd={} y products={}", ctx.modmul, ctx.modadd, ctx.y_lane_products);
    assert_eq!(original, (p_even.clone(), p_odd.clone()));

    let p = from_ntt_phases(&[p_even, p_odd], &tables, &mut setup).unwrap();
    assert_eq!(p, negacyclic_mul_schoolbook(&r, &a).unwrap());
    println!("both forms match the schoolbook product");
}
