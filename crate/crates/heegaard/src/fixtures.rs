//! Shipped data files under `data/v1`, generated from the library.

use heegaard_core::cover::{cover_basis, lift_diagram, CyclicHom};
use heegaard_core::diagram::HeegaardDiagram;
use heegaard_core::freegroup::CurveSystem;
use heegaard_core::pretzel::{filling_diagram, pretzel_diagram, pretzel_words, theorem1_pipeline, PretzelParams};

use crate::io::{Result, SystemFile};
use crate::pretzel_cover_diagram;

fn diagram(d: &HeegaardDiagram) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("json");
    s.push('\n');
    s
}

fn system(s: &CurveSystem) -> String {
    let mut t = serde_json::to_string_pretty(&SystemFile::from_system(s)).expect("json");
    t.push('\n');
    t
}

const FAMILIES: &str = "\
Reserved for pretzel families beyond three tangles, such as (3,3,3,3,3)
and (4,3,3,3). No words are generated for them yet; `heegaard components`
already reports their component counts.
";

/// Relative path and contents of every data file.
pub fn fixtures() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (tag, t) in [("3_3_3", "3,3,3"), ("-3_3_3", "-3,3,3"), ("-3_3_-3", "-3,3,-3")] {
        let p = PretzelParams::parse(t)?;
        out.push((format!("systems/pretzel_{tag}.json"), system(&pretzel_words(&p)?)));
        out.push((format!("diagrams/pretzel_{tag}.json"), diagram(&pretzel_diagram(&p)?)));
    }
    let p = PretzelParams::parse("3,3,3")?;
    let filling = filling_diagram(&p, (2, 1))?;
    out.push(("diagrams/filling_3_3_3_slope_2.json".into(), diagram(&filling)));
    let ctx = cover_basis(&filling.basis()?, &CyclicHom::new(3, vec![1, 1, 1])?, 1)?;
    out.push(("diagrams/cover_3_3_3_slope_2.json".into(), diagram(&lift_diagram(&filling, &ctx)?)));
    out.push((
        "diagrams/cover_3_3_3_slope_2_tunnels.json".into(),
        diagram(&pretzel_cover_diagram("3,3,3", Some("2/1"), 3)?),
    ));
    let cert = theorem1_pipeline(&p, (2, 1))?;
    out.push(("systems/h_bar_3_3_3_slope_2.json".into(), system(&cert.h_bar_system)));
    out.push(("systems/c_bar_3_3_3_slope_2.json".into(), system(&cert.c_bar_system)));
    out.push(("families/README.md".into(), FAMILIES.into()));
    Ok(out)
}
