//! Graphical statistics of one word, and the selection-sort trace behind sor'.
//!
//!     cargo run --example statistics

use mahonian::stats::{
    graphical_descent_set, graphical_inversions, graphical_major_index, graphical_sorting_index, sort_trace,
};
use mahonian::{Relation, TieRule, Word};

fn main() -> mahonian::Result<()> {
    let natural = Relation::natural_order(7);
    let sigma: Word = "2413576".parse()?;
    println!("classical statistics of {sigma}");
    println!("  inv = {}", graphical_inversions(&natural, &sigma)?);
    println!("  maj = {}", graphical_major_index(&natural, &sigma)?);
    println!("  sor = {}", graphical_sorting_index(&natural, &sigma, TieRule::default())?);

    // only some pairs count as inversions
    let u = Relation::from_edges(4, [(4, 1), (4, 3), (3, 2), (2, 2)])?;
    let w = Word::with_alphabet(vec![1, 4, 3, 1, 2, 3, 1, 2, 3], 4)?;
    println!("\nU = {u}, w = {w}");
    println!("  inv' = {}", graphical_inversions(&u, &w)?);
    println!("  Des' = {:?}", graphical_descent_set(&u, &w)?);
    println!("  maj' = {}", graphical_major_index(&u, &w)?);
    for rule in TieRule::ALL {
        let trace = sort_trace(&u, &w, rule)?;
        let steps: Vec<String> = trace.steps.iter().map(|s| s.contribution.to_string()).collect();
        println!("  sor' ({:>14}) = {} = {}", rule.name(), steps.join(" + "), trace.total());
    }
    Ok(())
}
