use kyber_matvec::{decompose, recompose, Parallelism, Polynomial, Residue};

fn show(p: &Polynomial) -> String {
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() {
    let f = Polynomial::from_coeffs((0..8).map(Residue::new).collect());
    println!("f      = [{}]", show(&f));
    for l in [Parallelism::Two, Parallelism::Four] {
        let split = decompose(&f, l).unwrap();
        for (t, phase) in split.phases().iter().enumerate() {
            println!("L={l} phase {t}: [{}]", show(phase));
        }
        assert_eq!(recompose(&split), f);
    }
}
