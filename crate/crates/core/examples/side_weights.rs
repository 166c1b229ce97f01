use twocst::lab::check_side_weight_theorem;
use twocst::{solve_full, WeightedInstance};

fn main() {
    let inst = WeightedInstance::from_u64(&[4, 1, 7, 3, 3, 8, 2, 5, 1, 6]).unwrap();
    let tree = solve_full(&inst).tree;
    let total = inst.total();

    println!("total weight {total}, root side weight {}", tree.side_weight(&inst));
    if let Some((yes, no)) = tree.children() {
        println!("children weigh {} and {}", yes.weight(&inst).unwrap(), no.weight(&inst).unwrap());
    }
    println!("inversions: {:?}", tree.side_weight_inversions(&inst));

    match check_side_weight_theorem(&inst) {
        Ok(()) => println!("every optimal sub-instance tree has large enough side weights"),
        Err(v) => println!("violation: {v:?}"),
    }
}
