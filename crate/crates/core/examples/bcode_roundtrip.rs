//! Encoding words as b-codes whose parts add up to sor', and back.
//!
//!     cargo run --example bcode_roundtrip

use mahonian::bcode::{bcode_decode, bcode_encode, Layout};
use mahonian::stats::graphical_sorting_index;
use mahonian::word::rearrangement_class;
use mahonian::{MultiplicityVector, OrderedBipartition, TieRule, Word};

fn main() -> mahonian::Result<()> {
    let alpha: MultiplicityVector = "2,1,1,3,1".parse()?;
    let bp: OrderedBipartition = "{5,4} > {3} > {2,1}".parse()?;
    let layout = Layout::new(&bp, &alpha)?;
    let u = layout.relation();

    for text in ["42345411", "11234445", "54443211"] {
        let w: Word = text.parse()?;
        let code = bcode_encode(&w, &bp, &alpha)?;
        let back = bcode_decode(&code, &bp, &alpha)?;
        println!(
            "{w}: partitions {:?}, markers {:?}, parts sum {} = sor' {}, decodes to {back}",
            code.partitions,
            code.markers,
            code.total(),
            graphical_sorting_index(u, &w, TieRule::default())?
        );
    }

    let mut round_trips = 0;
    for w in rearrangement_class(&alpha)? {
        if bcode_decode(&bcode_encode(&w, &bp, &alpha)?, &bp, &alpha)? == w {
            round_trips += 1;
        }
    }
    println!("\n{round_trips} of {} words round-trip", layout.code_count()?);
    Ok(())
}
