//! Writes a seeded instance to text files, reads it back, multiplies it and
//! stores the result. Files go to the directory given as the first argument,
//! or to the system temp directory.

use std::path::PathBuf;

use kyber_matvec::format::{read_matrix, read_vector, write_matrix, write_vector, VectorKind};
use kyber_matvec::{random_instance, Algorithm, StageCounters, TableSet};

fn main() {
    let dir = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("kyber-matvec-demo"), PathBuf::from);
    std::fs::create_dir_all(&dir).unwrap();
    let inst = random_instance(2, 1).unwrap();

    let matrix_path = dir.join("matrix.txt");
    let vector_path = dir.join("vector.txt");
    write_matrix(&matrix_path, &inst.matrix).unwrap();
    write_vector(&vector_path, &inst.vector, VectorKind::Vector).unwrap();

    let matrix = read_matrix(&matrix_path).unwrap();
    let (_, vector) = read_vector(&vector_path).unwrap();
    assert_eq!(matrix, inst.matrix);
    assert_eq!(vector, inst.vector);

    let tables = TableSet::new();
    let p = Algorithm::Proposed4.run(&matrix, &vector, &tables, &mut StageCounters::new()).unwrap();
    let out = dir.join("output.txt");
    write_vector(&out, &p, VectorKind::Output).unwrap();
    println!("wrote {}", out.display());
}
