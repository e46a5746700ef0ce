//! Runs every matrix-vector pipeline on one seeded instance and compares with
//! the schoolbook result. Pass `k` as the first argument (default 3).

use kyber_matvec::{
    matvec_with_error, random_instance, Algorithm, Parallelism, PolyVector, SplitMix64, StageCounters, TableSet,
};

fn main() {
    let k: usize = std::env::args().nth(1).map_or(3, |s| s.parse().expect("k must be 1..=4"));
    let tables = TableSet::new();
    let inst = random_instance(k, 99).unwrap();
    let expected = Algorithm::Schoolbook.run(&inst.matrix, &inst.vector, &tables, &mut StageCounters::new()).unwrap();

    for alg in Algorithm::COUNTED {
        let mut ctx = StageCounters::new();
        let p = alg.run(&inst.matrix, &inst.vector, &tables, &mut ctx).unwrap();
        println!(
            "{alg:<14} equal={} matvec={:?} transform={:?}",
            p == expected,
            ctx.matvec.totals(),
            ctx.transform.totals()
        );
    }

    let mut rng = SplitMix64::new(5);
    let e1 = PolyVector::new((0..k).map(|_| rng.polynomial(256)).collect()).unwrap();
    let u = matvec_with_error(&inst.matrix, &inst.vector, &e1, Parallelism::Two, &tables, &mut StageCounters::new())
        .unwrap();
    let head: Vec<u16> = u.entries()[0].coeffs()[..4].iter().map(|c| c.value()).collect();
    println!("u = A^T r + e1, first coefficients {head:?}");
}
