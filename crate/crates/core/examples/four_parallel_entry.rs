//! The nested four-parallel structure on one product: nine lane products on
//! 64-point transforms, three of the lanes built with `NTT(y)`, `y = x^4`.

use kyber_matvec::faststruct::{
    combine_lanes_4, entry_mul_lanes, preprocess_matrix_entry_4, preprocess_vector_entry_4,
};
use kyber_matvec::matvec::{from_ntt_phases, ntt_phases};
use kyber_matvec::{build_tables, negacyclic_mul_schoolbook, OpCounter, Parallelism, SplitMix64};

fn main() {
    let tables = build_tables(64).unwrap();
    let mut rng = SplitMix64::new(8);
    let r = rng.polynomial(256);
    let a = rng.polynomial(256);

    let mut setup = OpCounter::new();
    let r_hat = ntt_phases(&r, Parallelism::Four, &tables, &mut setup).unwrap();
    let a_hat = ntt_phases(&a, Parallelism::Four, &tables, &mut setup).unwrap();

    let mut vec_ctx = OpCounter::new();
    let f = preprocess_vector_entry_4(&r_hat, &tables, &mut vec_ctx).unwrap();
    let mut mat_ctx = OpCounter::new();
    let g = preprocess_matrix_entry_4(&a_hat, &mut mat_ctx).unwrap();
    let mut ctx = OpCounter::new();
    let phases = combine_lanes_4(&entry_mul_lanes(&g, &f, &mut ctx).unwrap(), &mut ctx).unwrap();

    println!("vector prep: {:?}, y products {}", vec_ctx.totals(), vec_ctx.y_lane_products);
    println!("matrix prep: {:?}", mat_ctx.totals());
    println!("products and combine: {:?}", ctx.totals());

    let p = from_ntt_phases(&phases, &tables, &mut setup).unwrap();
    assert_eq!(p, negacyclic_mul_schoolbook(&r, &a).unwrap());
    println!("four-parallel product matches schoolbook");
}
