use twocst::instance::parse_rational;
use twocst::lab::geometric_scan;

fn main() {
    let gammas: Vec<_> =
        ["1/2", "4/7", "11/20", "3/5", "5/8", "31/50", "7/10"].iter().map(|g| parse_rational(g).unwrap()).collect();
    for row in geometric_scan(25, &gammas).unwrap() {
        println!(
            "gamma {:>6}: root {:<9} chain closed form {}",
            row.gamma,
            row.root.to_string(),
            if row.closed_form_matches { "matches" } else { "differs" }
        );
    }
}
