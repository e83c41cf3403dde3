//! Longest U-descending chains, peeled off and laid out right to left.
//!
//!     cargo run --example chain_words

use mahonian::stats::{graphical_inversions, graphical_major_index, maximal_chain_word, maximal_chains};
use mahonian::word::rearrangement_class;
use mahonian::{MultiplicityVector, Relation};

fn main() -> mahonian::Result<()> {
    let alpha: MultiplicityVector = "2,1,2".parse()?;
    let relations = [
        ("strict order", Relation::natural_order(3)),
        ("cycle", Relation::from_edges(3, [(3, 2), (2, 1), (1, 3)])?),
        ("loops", Relation::from_edges(3, [(1, 1), (3, 3), (3, 1)])?),
        ("empty", Relation::empty(3)),
    ];
    for (name, u) in relations {
        let chains = maximal_chains(&u, &alpha)?;
        let w = maximal_chain_word(&u, &alpha)?;
        let words: Vec<_> = rearrangement_class(&alpha)?.collect();
        let inv = words.iter().map(|v| graphical_inversions(&u, v)).collect::<mahonian::Result<Vec<_>>>()?;
        let maj = words.iter().map(|v| graphical_major_index(&u, v)).collect::<mahonian::Result<Vec<_>>>()?;
        let (max_inv, max_maj) = (inv.iter().max().unwrap(), maj.iter().max().unwrap());
        println!(
            "{name:>12}: chains {chains:?} -> {w}, maj' {} (max maj' {max_maj}, max inv' {max_inv})",
            graphical_major_index(&u, &w)?
        );
    }
    Ok(())
}
