use twocst::lab::{generate, qi_table, GeneratorSpec, QiCell};
use twocst::WeightedInstance;

fn main() {
    let small = WeightedInstance::from_u64(&[1, 10, 1]).unwrap();
    let t = qi_table(&small).unwrap();
    print!("{}", t.to_csv());
    assert_eq!(t.cell(1, 3), QiCell::Red);

    let pattern = generate(&GeneratorSpec::Pattern { cycle: vec![1, 3], n: 48 }).unwrap();
    let t = qi_table(&pattern).unwrap();
    println!("(1,3) x 24: {} red, {} gray", t.red_count(), t.gray_count());

    // One character per cell, rows are i, columns are j.
    for i in 1..=16 {
        let row: String = (1..=16)
            .map(|j| match t.cell(i, j) {
                QiCell::Undefined => ' ',
                QiCell::Gray => '.',
                QiCell::Red => '#',
            })
            .collect();
        println!("{row}");
    }

    let path = std::env::temp_dir().join("twocst-qi-example.pgm");
    std::fs::write(&path, t.to_pgm()).unwrap();
    println!("wrote {}", path.display());
}
