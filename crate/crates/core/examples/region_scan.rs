use twocst::lab::region_scan;

fn main() {
    let steps = 10;
    let cells = region_scan(6, steps, 30, 42).unwrap();
    println!("alpha/W beta/W  equal-to root  two equal-to tests first");
    for c in cells {
        println!(
            "{:>4}/{steps} {:>4}/{steps}  {:>6}/{:<6} {:>6}/{}",
            c.alpha_steps, c.beta_steps, c.eq_root, c.instances, c.eq_eq_prefix, c.instances
        );
    }
}
