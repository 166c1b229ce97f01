use twocst::lab::{check_thresholds, default_tight4, default_tight8, generate};
use twocst::WeightedInstance;

fn main() {
    for w in [&[1u64, 9, 1][..], &[5, 4, 3, 2, 1, 1], &[2, 2, 2, 2, 2, 2, 2]] {
        let r = check_thresholds(&WeightedInstance::from_u64(w).unwrap()).unwrap();
        println!("{w:?}: W={} alpha={} beta={} C_eq={} C_lt={:?}", r.total, r.alpha, r.beta, r.c_eq, r.c_lt);
        for imp in r.implications.iter().filter(|i| i.applicable) {
            println!("    {:<40} {}", imp.name, if imp.holds { "holds" } else { "FAILS" });
        }
    }

    let tight4 = check_thresholds(&generate(&default_tight4()).unwrap()).unwrap();
    println!("tight4: C_eq={} C_lt={:?}", tight4.c_eq, tight4.c_lt);
    let tight8 = check_thresholds(&generate(&default_tight8()).unwrap()).unwrap();
    println!("tight8: C_eq={} C_lt={:?}", tight8.c_eq, tight8.c_lt);
}
