//! Building, serialising and reading back a report document.

use std::collections::BTreeMap;

use same_type::report::{DistributionTable, Results, SCHEMA};
use same_type::{ratio, DiscreteDist, ReportDocument, ScaleParam};

fn main() -> same_type::Result<()> {
    let alpha = ScaleParam::new(ratio(1, 2))?;
    let d = DiscreteDist::geometric(ratio(1, 4))?.df_scale(&alpha)?;
    let inputs = BTreeMap::from([
        ("q".to_string(), "1/4".to_string()),
        ("alpha".to_string(), "1/2".to_string()),
    ]);
    let doc = ReportDocument::new("scale", inputs, Results::Table(DistributionTable::build(&d, Some(&alpha), 4)));
    let json = doc.to_json();
    print!("{json}");

    let back = ReportDocument::from_json(&json).expect("round trip");
    assert_eq!(back, doc);
    eprintln!("schema: {} bytes", SCHEMA.len());
    Ok(())
}
