//! PGF substitution `s ↦ 1 − α + αs` on exact rational PGFs.

use same_type::{ratio, thinning_alpha, thinning_alpha_geometric, RationalPgf, ScaleParam};

fn main() -> same_type::Result<()> {
    let q = RationalPgf::geometric(&ratio(2, 5))?;
    for a in [ratio(1, 1), ratio(1, 2), ratio(1, 10)] {
        let t = q.thin(&ScaleParam::new(a.clone())?)?;
        let head: Vec<String> = t.series_coefficients(4).iter().map(|c| c.to_string()).collect();
        println!("α = {:<5} {:<10} P(X=0..3) = {}", a.to_string(), t.to_string(), head.join(", "));
    }

    // thinning composes: α then β is αβ
    let half = ScaleParam::new(ratio(1, 2))?;
    let quarter = ScaleParam::new(ratio(1, 4))?;
    assert!(q.thin(&half)?.thin(&half)?.pgf_equal(&q.thin(&quarter)?));

    // a thinning scale exceeding one is rejected
    assert!(q.thin(&ScaleParam::new(ratio(3, 2))?).is_err());

    // recover α from a pair: thinning geometric(q) by α gives
    // geometric(αq / (1 − q + αq))
    let (p, a) = (ratio(2, 5), ratio(3, 7));
    let thinned_p = &a * &p / (ratio(1, 1) - &p + &a * &p);
    let target = q.thin(&ScaleParam::new(a)?)?;
    let closed = thinning_alpha_geometric(&thinned_p, &p)?;
    println!("witness from parameters: {}", closed.unwrap());
    println!("witness by search:       {}", thinning_alpha(&target, &q).unwrap());
    Ok(())
}
