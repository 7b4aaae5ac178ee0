//! Moment sequences of mixing laws and the finite-difference test for
//! complete monotonicity.

use same_type::moments::completely_monotone_check_real;
use same_type::{completely_monotone_check, ratio, MixingDistribution, MomentSequence};

fn main() -> same_type::Result<()> {
    let mix = MixingDistribution::parse("1/5:1/3,4/5:2/3")?;
    let seq = MomentSequence::new(mix);
    let prefix = seq.prefix(12);
    let shown: Vec<String> = prefix.iter().take(5).map(|m| m.to_string()).collect();
    println!("m(0..5) = {}", shown.join(", "));
    println!("order 6: {:?}", completely_monotone_check_real(&prefix, 6)?);

    // bumps in a sequence are caught
    let bumped = [ratio(1, 1), ratio(1, 2), ratio(1, 3), ratio(1, 3), ratio(1, 5)];
    println!("bumped:  {:?}", completely_monotone_check(&bumped, 3)?);

    // a prefix too short for the requested order is an error
    println!("short:   {}", completely_monotone_check(&bumped[..2], 3).unwrap_err());
    Ok(())
}
