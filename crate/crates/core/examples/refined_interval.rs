use twocst::dp::DpTable;
use twocst::pruned::{refined_interval, refined_interval_scan};
use twocst::{CutRange, SubproblemId, WeightedInstance};

fn main() {
    let inst = WeightedInstance::from_u64(&[6, 1, 1, 2, 9, 3, 1, 4, 4, 2]).unwrap();
    let table = DpTable::build(&inst, CutRange::Full);
    for (i, j, h) in [(1, 10, 10), (1, 10, 7), (3, 9, 10), (2, 6, 5)] {
        let id = SubproblemId::new(i, j, h);
        let r = refined_interval(&inst, id).unwrap();
        let scan = refined_interval_scan(&inst, id).unwrap();
        let best = table.minimizers_at(id).unwrap();
        println!(
            "({i},{j},{h}): interval {:?} in {} probes, scan {:?}, minimizers {:?}",
            r.cuts(),
            r.probes,
            scan,
            best.minimizers
        );
    }
}
