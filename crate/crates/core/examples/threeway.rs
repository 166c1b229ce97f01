use twocst::threeway::{solve_3wcst_cubic, solve_3wcst_knuth_yao};
use twocst::{solve_full, WeightedInstance};

fn main() {
    for w in [vec![1u64; 15], vec![10, 1, 2, 3, 1, 3, 1, 11], vec![5, 5]] {
        let inst = WeightedInstance::from_u64(&w).unwrap();
        let cubic = solve_3wcst_cubic(&inst);
        let fast = solve_3wcst_knuth_yao(&inst);
        println!(
            "{w:?}\n  three-way {} (root {}), scans {} vs {}; two-way {}",
            fast.cost,
            fast.root,
            cubic.root_scans,
            fast.root_scans,
            solve_full(&inst).cost
        );
    }
}
