//! Scripts shipped with the tool.

pub const BUILTIN: [(&str, &str); 5] = [
    ("chains.spec", include_str!("../specs/chains.spec")),
    ("glaisher.spec", include_str!("../specs/glaisher.spec")),
    ("hermite.spec", include_str!("../specs/hermite.spec")),
    ("taylor.spec", include_str!("../specs/taylor.spec")),
    ("transfer.spec", include_str!("../specs/transfer.spec")),
];

/// Source of a shipped script by file name.
pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
