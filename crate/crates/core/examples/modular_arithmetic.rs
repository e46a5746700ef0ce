//! Counted arithmetic in Z_3329.

use kyber_matvec::modarith::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
use kyber_matvec::{OpCounter, Residue};

fn main() {
    let mut ctx = OpCounter::new();
    let a = Residue::new(3000);
    let b = Residue::new(400);

    println!("{a} + {b} = {}", add_mod(a, b, &mut ctx));
    println!("{b} - {a} = {}", sub_mod(b, a, &mut ctx));
    println!("{a} * {b} = {}", mul_mod(a, b, &mut ctx));

    let psi = Residue::new(17);
    println!("17^128 = {} (a primitive 256th root of unity)", pow_mod(psi, 128));
    println!("128^-1 = {}", inv_mod(Residue::new(128)).unwrap());

    println!("counted: modmul={} modadd={}", ctx.modmul, ctx.modadd);
}
