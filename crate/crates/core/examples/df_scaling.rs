//! Survival scaling `G(k) = 1 − m(αk)` for geometric laws and mixtures.
//! Note the d.f. convention `F(k) = P(X < k)`.

use same_type::{ratio, DiscreteDist, MixingDistribution, ScaleParam};

fn main() -> same_type::Result<()> {
    let g = DiscreteDist::geometric(ratio(1, 4))?;
    let y = g.df_scale(&ScaleParam::new(ratio(1, 2))?)?;
    println!("{y}: geometric parameter {}", y.geometric_parameter().unwrap());

    // irrational q^α falls back to f64 and says so
    let z = g.df_scale(&ScaleParam::new(ratio(1, 3))?)?;
    println!("{z}: geometric parameter {}", z.geometric_parameter().unwrap());

    let mix = DiscreteDist::mixture(MixingDistribution::parse("1/4:1/2,9/16:1/2")?);
    let w = mix.df_scale(&ScaleParam::new(ratio(1, 2))?)?;
    println!("\n{w}");
    println!("{:>3} {:>12} {:>12} {:>12}", "k", "P(X≥k)", "F(k)", "P(X=k)");
    for k in 0..6 {
        println!("{k:>3} {:>12} {:>12} {:>12}", w.survival(k).to_string(), w.cdf(k).to_string(), w.pmf(k).to_string());
    }
    Ok(())
}
