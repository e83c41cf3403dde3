//! Deciding whether a relation comes from an ordered bipartition, exactly or
//! after toggling loops on letters that occur once.
//!
//!     cargo run --example bipartitions

use mahonian::relation::{
    from_ordered_bipartition, is_essentially_bipartitional, parse_edge_list, satisfies_sor_conditions,
    to_ordered_bipartition,
};
use mahonian::{MultiplicityVector, OrderedBipartition};

fn main() -> mahonian::Result<()> {
    let bp: OrderedBipartition = "{5,4} > _{3}_ > {2,1}".parse()?;
    let u = from_ordered_bipartition(&bp);
    println!("{bp} gives {} pairs; recovered as {}", u.len(), to_ordered_bipartition(&u).unwrap());

    let alpha: MultiplicityVector = "1,2,2".parse()?;
    for text in ["3 2; 3 1; 2 1", "3 2; 3 1; 2 1; 1 1", "1 2; 2 1", "2 2"] {
        let u = parse_edge_list(text, Some(3))?;
        let exact = to_ordered_bipartition(&u).map_or("no".to_string(), |b| b.to_string());
        let essential = match is_essentially_bipartitional(&u, &alpha)? {
            Some(w) => format!("{} (drop loops {:?}, add {:?})", w.bipartition, w.removed_loops, w.added_loops),
            None => "no".into(),
        };
        let sor = satisfies_sor_conditions(&u, &alpha);
        println!("\nU = {u}");
        println!("  bipartitional:            {exact}");
        println!("  essentially, alpha={alpha}: {essential}");
        println!("  sorting conditions:       {}", if sor.holds { "hold".to_string() } else { sor.failures.join("; ") });
    }
    Ok(())
}
