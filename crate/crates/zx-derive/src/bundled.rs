//! The derivation scripts shipped with the crate.

use crate::script::Script;

const SCRIPTS: &[(&str, &str)] = &[
    ("iv_from_zxe", include_str!("../scripts/iv_from_zxe.json")),
    ("zo_from_zxe", include_str!("../scripts/zo_from_zxe.json")),
    ("sup4_from_sup2", include_str!("../scripts/sup4_from_sup2.json")),
    ("thm2_d1_plug", include_str!("../scripts/thm2_d1_plug.json")),
    ("thm2_d2_plug", include_str!("../scripts/thm2_d2_plug.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    SCRIPTS.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_text(name: &str) -> Option<&'static str> {
    SCRIPTS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parse a bundled script; the data files are checked by the test suite.
pub fn bundled(name: &str) -> Option<Script> {
    bundled_text(name).map(|t| Script::from_json(t).expect("bundled scripts parse"))
}
