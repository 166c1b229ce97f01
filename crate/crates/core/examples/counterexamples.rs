use twocst::dp::DpTable;
use twocst::lab::{check_minimizer_monotonicity, marginal_advantage_check, MonotonicityMode};
use twocst::{CutRange, SubproblemId, WeightedInstance};

fn main() {
    let inst = WeightedInstance::from_u64(&[1, 10, 1]).unwrap();
    let t = DpTable::build(&inst, CutRange::Full);
    let c = |i, j| t.cost_at(SubproblemId::new(i, j, 3)).unwrap();
    println!("[1,10,1]: C12 + C23 = {} > C13 + C22 = {}", c(1, 2) + c(2, 3), c(1, 3) + c(2, 2));

    for (w, mode) in [
        (vec![1, 9, 1, 1, 9, 1], MonotonicityMode::Sandwich),
        (vec![0, 2, 2, 0, 1, 1], MonotonicityMode::Sandwich),
        (vec![12, 10, 3, 9, 8, 2, 6, 7, 5, 1, 11, 13], MonotonicityMode::Diagonal),
    ] {
        let inst = WeightedInstance::from_u64(&w).unwrap();
        let found = check_minimizer_monotonicity(&inst, mode);
        println!("{w:?}: {} {mode:?} violations", found.len());
        if let Some(v) = found.iter().find(|v| v.robust) {
            for p in &v.probes {
                println!("    {:?} minimizers {:?}", p.id, p.minimizers);
            }
        }
    }

    let m = marginal_advantage_check(1).unwrap();
    println!(
        "[11,23,23,13,0]: keys 1-4 (eq {}, lt {:?}), keys 1-5 (eq {}, lt {:?})",
        m.prefix.eq, m.prefix.lt, m.whole.eq, m.whole.lt
    );
}
