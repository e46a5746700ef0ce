use kyber_matvec::opreport::{measure_all, reduction_summary};
use kyber_matvec::{latency_model, TableSet};

fn main() {
    let tables = TableSet::new();
    let ks = [1, 2, 3, 4];
    for report in measure_all(&ks, 1, &tables).unwrap() {
        println!("{report} y_lane={} y_shift={}", report.y_lane_products, report.y_shift_products);
    }
    for line in reduction_summary(&ks) {
        println!("{line}");
    }
    for (l, pipe) in [(2, 5), (2, 12), (4, 0)] {
        println!("latency n=256 L={l} N_pipe={pipe}: {} cycles", latency_model(256, l, pipe).unwrap());
    }
}
