use twocst::lab::{balanced_pattern_claims, TieBreak};

fn main() {
    for p in 2..=5 {
        let r = balanced_pattern_claims(p).unwrap();
        println!(
            "p={p}: identity {} on {} values of n; minimizer claims: rightmost {}, leftmost {}",
            r.identity_holds(),
            r.identity.len(),
            r.minimizer_claims_hold(TieBreak::Rightmost),
            r.minimizer_claims_hold(TieBreak::Leftmost),
        );
    }
    let r = balanced_pattern_claims(3).unwrap();
    for row in &r.shift {
        println!("  n={}: L_2n in {:?}, L_3n in {:?}", row.n, row.left.minimizers, row.right.minimizers);
    }
}
