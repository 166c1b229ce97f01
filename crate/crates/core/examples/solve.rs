use twocst::{solve_full, WeightedInstance};

fn main() {
    let inst = WeightedInstance::from_u64(&[10, 1, 2, 3, 1, 3, 1, 11]).unwrap();
    let sol = solve_full(&inst);

    println!("optimal cost: {}", sol.cost);
    println!("root: {}", sol.tree.root_kind());
    for (key, depth) in sol.tree.depths() {
        println!("  key {key} (weight {}) at depth {depth}", inst.weight(key));
    }
    println!("{:?}", sol.table.stats());
    println!();
    println!("{}", sol.tree.to_dot());
}
