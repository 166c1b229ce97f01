use twocst::io::{format_instance, parse_instance};
use twocst::solve_full;

fn main() {
    let text = "# weights may be fractions or decimals\n1/3\n0.5\n1\n\n2  # heaviest\n";
    let inst = parse_instance(text).unwrap();
    println!("scaled by {}: {:?}", inst.scale(), inst.weights());
    print!("{}", format_instance(&inst));

    let same = parse_instance("[\"1/3\", 0.5, 1, 2]").unwrap();
    assert_eq!(same.weights(), inst.weights());

    let sol = solve_full(&inst);
    println!("cost {} in units of 1/{}", sol.cost, inst.scale());
    println!("{}", serde_json::to_string(&sol.tree).unwrap());

    match parse_instance("4\n-1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
