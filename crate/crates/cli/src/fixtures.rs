//! Bundled inputs, printable with `sectorfact fixture NAME`.

use sectorfact_core::minkowski::{DoubleCone, MPoint};
use sectorfact_core::orthogonal::fixtures::{
    cyclic_interval_category, interval_category, interval_reflection, split_monoid,
};
use sectorfact_core::orthogonal::ActionJson;
use sectorfact_core::sectors::equivariance::collapse_example;
use sectorfact_core::sectors::MatrixNet;
use serde::Serialize;
use serde_json::json;

pub const NAMES: &[&str] = &[
    "intcat6",
    "intcat6-reflection",
    "cyclic6",
    "split-monoid",
    "unit",
    "cospan-u1",
    "cospan-u2",
    "cospan-utilde",
    "qubit4",
    "qubit4-diag23",
    "collapse3",
    "qubit4-family",
    "qubit4-unlocalized",
    "collapse-family",
];

fn pretty(v: impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("fixtures serialise");
    s.push('\n');
    s
}

fn cone(t0: i64, x0: i64, t1: i64, x1: i64) -> DoubleCone {
    DoubleCone::new(MPoint::ints(t0, &[x0]), MPoint::ints(t1, &[x1])).expect("fixture cones are valid")
}

pub fn fixture(name: &str) -> Option<String> {
    Some(match name {
        "intcat6" => pretty(interval_category(6, 6).to_json()),
        "intcat6-reflection" => {
            let c = interval_category(6, 6);
            pretty(ActionJson::from_action(&c, &interval_reflection(&c, 6)))
        }
        "cyclic6" => pretty(cyclic_interval_category(6, 5).to_json()),
        "split-monoid" => pretty(split_monoid().to_json()),
        "unit" => pretty(cone(-1, 0, 1, 0)),
        "cospan-u1" => pretty(cone(-1, 0, 1, 0)),
        "cospan-u2" => pretty(cone(-1, 4, 1, 4)),
        "cospan-utilde" => pretty(cone(-4, 2, 4, 2)),
        "qubit4" => pretty(MatrixNet::qubit_chain(4).to_json()),
        "qubit4-diag23" => {
            pretty(MatrixNet::qubit_chain(4).with_diagonal_region("[2,3]").expect("region exists").to_json())
        }
        "collapse3" => pretty(collapse_example().0.to_json()),
        "qubit4-family" => pretty(json!({"sectors": [
            {"name": "x1", "region": "[1,1]", "gates": "XIII"},
            {"name": "z2", "region": "[2,2]", "gates": "IZII"},
            {"name": "h3", "region": "[3,3]", "gates": "IIHI"},
            {"name": "s4", "region": "[4,4]", "gates": "IIIS"},
            {"name": "y3x4", "region": "[3,4]", "gates": "IIYX"},
            {"name": "cz12", "region": "[1,2]", "gates": "IIII", "controlled_z": [[1, 2]]},
        ]})),
        "qubit4-unlocalized" => pretty(json!({"sectors": [
            {"name": "x1", "region": "[1,1]", "gates": "XIII"},
            {"name": "stray", "region": "[1,1]", "gates": "IIXI"},
        ]})),
        "collapse-family" => pretty(json!({"sectors": [
            {"name": "collapse1", "region": "[1,1]", "pin": {"1": 0}},
        ]})),
        _ => return None,
    })
}
