//! Closed-form distributions checked against enumeration.
//!
//!     cargo run --example generating_functions

use mahonian::oracle::{distribution, OracleConfig};
use mahonian::qseries::{gf_bipartitional, gf_sorting, q_binomial, q_multinomial};
use mahonian::relation::from_ordered_bipartition;
use mahonian::{MultiplicityVector, OrderedBipartition, StatisticId};

fn main() -> mahonian::Result<()> {
    println!("[6 choose 3]_q = {}", q_binomial(6, 3)?);
    println!("[4; 2,1,1]_q  = {}", q_multinomial(&[2, 1, 1])?);

    let alpha: MultiplicityVector = "2,1,1,3,1".parse()?;
    let bp: OrderedBipartition = "{5,4} > {3} > {2,1}".parse()?;
    let u = from_ordered_bipartition(&bp);
    let cfg = OracleConfig::default();
    println!("\nalpha = {alpha}, blocks {bp}");
    println!("  block product: {}", gf_bipartitional(&alpha, &bp)?);
    println!("  sorting gf:    {}", gf_sorting(&alpha, &bp)?);
    for stat in [StatisticId::InvGraphical, StatisticId::MajGraphical, StatisticId::SorGraphical] {
        println!("  {:>13}: {}", stat.name(), distribution(stat, &alpha, &u, &cfg)?);
    }

    let flagged: OrderedBipartition = "_{3,2}_ > {1}".parse()?;
    let small: MultiplicityVector = "1,1,2".parse()?;
    println!("\nflagged block {flagged}, alpha = {small}");
    println!("  closed form: {}", gf_bipartitional(&small, &flagged)?);
    let u = from_ordered_bipartition(&flagged);
    println!("  enumerated:  {}", distribution(StatisticId::InvGraphical, &small, &u, &cfg)?);
    Ok(())
}
