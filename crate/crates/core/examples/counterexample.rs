//! Two geometric laws that are of the same type under survival scaling but
//! not under binomial thinning.

use same_type::{counterexample_report, ratio};

fn main() -> same_type::Result<()> {
    let r = counterexample_report(&ratio(1, 4), &ratio(1, 2), false)?;
    println!("Q_X            = {}", r.qx_pgf);
    println!("thin(Q_X, 1/2) = {}", r.thinned_x);
    println!("Q_Y            = {}", r.qy_pgf);
    println!("thin(Q_Y, 1/2) = {}", r.thinned_y);
    println!();
    println!("survival scaling holds:  {}", r.scaling_holds);
    println!("Q_X = thin(Q_Y, 1/2):    {}", r.thinning_xy);
    println!("Q_Y = thin(Q_X, 1/2):    {}", r.thinning_yx);
    println!("definitions agree:       {}", r.definitions_agree);
    if let Some(a) = &r.thinning_witness_xy {
        println!("thinning does relate them, at α = {a}");
    }
    Ok(())
}
