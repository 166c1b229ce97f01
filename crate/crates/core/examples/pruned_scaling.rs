use twocst::lab::{generate, GeneratorSpec};
use twocst::pruned::{hole_depth_bound, solve_bounded_const, solve_bounded_log, solve_pruned};
use twocst::{solve_full, WeightedInstance};

fn main() {
    println!("{:>5} {:>12} {:>12} {:>10}", "n", "subproblems", "cutpoints", "eq-prunes");
    let mut last = None;
    for n in [28, 56, 112] {
        let inst = generate(&GeneratorSpec::hard(n)).unwrap();
        let s = solve_pruned(&inst).stats;
        print!("{n:>5} {:>12} {:>12} {:>10}", s.subproblems_evaluated, s.cutpoints_scanned, s.eq_prunes);
        if let Some(prev) = last {
            print!("   x{:.1}", s.cutpoints_scanned as f64 / prev as f64);
        }
        println!();
        last = Some(s.cutpoints_scanned);
    }

    let small: Vec<u64> = (0..30).map(|k| 1 + (k * 7 % 3)).collect();
    let inst = WeightedInstance::from_u64(&small).unwrap();
    let full = solve_full(&inst).cost;
    let windowed = solve_bounded_const(&inst, 3).unwrap();
    let log = solve_bounded_log(&inst).unwrap();
    println!();
    println!("weights in [1,3], n=30: full {full}, bounded-const {}, bounded-log {}", windowed.cost, log.cost);
    println!("max holes {} (bound {})", log.stats.max_holes, hole_depth_bound(&inst));
}
