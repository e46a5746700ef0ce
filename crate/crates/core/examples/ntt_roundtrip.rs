//! Forward and inverse negacyclic NTT at both supported sizes, checked against
//! direct evaluation and schoolbook multiplication.

use kyber_matvec::ntt::{ntt_eval_reference, pointwise_mul};
use kyber_matvec::{build_tables, negacyclic_mul_schoolbook, ntt_forward, ntt_inverse, OpCounter, SplitMix64};

fn main() {
    let mut rng = SplitMix64::new(2024);
    for m in [64, 128] {
        let tables = build_tables(m).unwrap();
        let f = rng.polynomial(m);
        let g = rng.polynomial(m);

        let mut ctx = OpCounter::new();
        let f_hat = ntt_forward(&f, &tables, &mut ctx).unwrap();
        println!("m={m} psi={} forward cost modmul={} modadd={}", tables.psi(), ctx.modmul, ctx.modadd);

        assert_eq!(f_hat, ntt_eval_reference(&f, &tables).unwrap());
        assert_eq!(ntt_inverse(&f_hat, &tables, &mut ctx).unwrap(), f);

        let g_hat = ntt_forward(&g, &tables, &mut ctx).unwrap();
        let product = ntt_inverse(&pointwise_mul(&f_hat, &g_hat, &mut ctx).unwrap(), &tables, &mut ctx).unwrap();
        assert_eq!(product, negacyclic_mul_schoolbook(&f, &g).unwrap());
        println!("m={m} round trip, reference evaluation and convolution agree");
    }
}
