//! Searching for a scale relating two laws under either notion.

use same_type::type_check::DEFAULT_HORIZON;
use same_type::{check_pair, ratio, DiscreteDist, MixingDistribution, Mode};

fn show(first: &DiscreteDist, second: &DiscreteDist) -> same_type::Result<()> {
    let r = check_pair(first, second, Mode::Exists, None, DEFAULT_HORIZON)?;
    let fmt = |w: &Option<same_type::Real>| w.as_ref().map_or("none".to_string(), |a| a.to_string());
    println!("{} vs {}", r.first, r.second);
    println!("  scaling witness:                   {}", fmt(&r.scaling_witness));
    println!("  thinning witness (first ← second): {}", fmt(&r.thinning_witness_first_from_second));
    println!("  thinning witness (second ← first): {}", fmt(&r.thinning_witness_second_from_first));
    Ok(())
}

fn main() -> same_type::Result<()> {
    let x = DiscreteDist::geometric(ratio(1, 4))?;
    let y = DiscreteDist::geometric(ratio(1, 2))?;
    show(&x, &y)?;

    let m1 = DiscreteDist::mixture(MixingDistribution::parse("1/4:1/2,1/16:1/2")?);
    let m2 = DiscreteDist::mixture(MixingDistribution::parse("1/2:1/2,1/4:1/2")?);
    show(&m1, &m2)
}
