use twocst::oracle::{brute_force_cost, brute_force_optimal};
use twocst::{solve_full, WeightedInstance};

fn main() {
    let inst = WeightedInstance::from_u64(&[3, 0, 7, 7, 1, 4, 9, 2]).unwrap();

    let dp = solve_full(&inst).cost;
    let brute = brute_force_cost(&inst).unwrap();
    println!("dynamic program: {dp}");
    println!("brute force:     {brute}");
    assert_eq!(dp, brute);

    // The oracle also answers for any subset of keys.
    let (cost, tree) = brute_force_optimal(&inst, &[1, 3, 4, 7]).unwrap();
    println!("keys 1,3,4,7 alone: cost {cost}, root {}", tree.root_kind());
}
