//! Named end-to-end verifications.
//!
//! Each verifier computes the same series along independent routes
//! (operators, class compilation, closed forms, enumeration) and reports
//! every coefficient where they disagree.

mod calculus;
mod glaisher;
mod hermite;
pub mod random;
mod report;
mod transfer;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::class::ClassError;
use crate::operators::OperatorError;
use crate::oracle::{Oracle, OracleError};
use crate::series::{SeriesError, TruncationSpec};

pub use calculus::{
    flow_battery, random_flow_triples, taylor_battery, verify_shift_dilation, verify_taylor, FLOW_RANDOM_CASES,
    TAYLOR_BATTERY,
};
pub use glaisher::{
    closed_form, printed_prefactor_form, unhalved_doubleton_sum, verify_chain_decomposition, verify_glaisher,
    CHAIN_CENSUS_MAX,
};
pub use hermite::{hermite_recurrence, verify_hermite_egf, verify_hermite_monomial};
pub use report::{compare_report, diff, render_table, Erratum, Mismatch, Status, VerificationReport};
pub use transfer::{verify_transfer_rules, TRANSFER_CASES, TRANSFER_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

impl IdentityError {
    /// Whether the failure came from a resource cap rather than a bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, IdentityError::Oracle(OracleError::CapExceeded { .. }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Taylor,
    ShiftDilation,
    HermiteMonomial,
    HermiteEgf,
    Glaisher,
    ChainDecomposition,
    TransferRules,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Taylor,
        Identity::ShiftDilation,
        Identity::HermiteMonomial,
        Identity::HermiteEgf,
        Identity::Glaisher,
        Identity::ChainDecomposition,
        Identity::TransferRules,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Taylor => "taylor",
            Identity::ShiftDilation => "shift-dilation",
            Identity::HermiteMonomial => "hermite-monomial",
            Identity::HermiteEgf => "hermite-egf",
            Identity::Glaisher => "glaisher",
            Identity::ChainDecomposition => "chain-decomposition",
            Identity::TransferRules => "transfer-rules",
        }
    }

    pub fn default_caps(self) -> TruncationSpec {
        let spec = match self {
            Identity::Taylor => "x:8,y:8,t:4",
            Identity::ShiftDilation => "lambda:8",
            Identity::HermiteMonomial => "x:12,y:12",
            Identity::HermiteEgf => "x:8,y:8,t:8",
            Identity::Glaisher => "x:8,y:8,t:4",
            Identity::ChainDecomposition => "t:5",
            Identity::TransferRules => "x:4,y:4,t:5",
        };
        spec.parse().expect("default caps are well formed")
    }

    /// Defaults with every cap in `overrides` replacing the default for that
    /// variable.
    pub fn caps_with(self, overrides: &TruncationSpec) -> TruncationSpec {
        let mut caps = self.default_caps();
        for (var, cap) in overrides.iter() {
            caps.set_cap(var.clone(), cap);
        }
        caps
    }

    pub fn run(self, caps: &TruncationSpec, oracle: &Oracle) -> Result<VerificationReport, IdentityError> {
        match self {
            Identity::Taylor => verify_taylor(caps),
            Identity::ShiftDilation => verify_shift_dilation(caps),
            Identity::HermiteMonomial => verify_hermite_monomial(caps, oracle),
            Identity::HermiteEgf => verify_hermite_egf(caps),
            Identity::Glaisher => verify_glaisher(caps, oracle),
            Identity::ChainDecomposition => verify_chain_decomposition(caps, CHAIN_CENSUS_MAX, oracle),
            Identity::TransferRules => verify_transfer_rules(caps, TRANSFER_CASES, TRANSFER_SEED),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

/// Runs `identities` concurrently, each with its defaults overridden by
/// `overrides`. Results come back sorted by identity name.
pub fn run_all(
    identities: &[Identity],
    overrides: &TruncationSpec,
    oracle: &Oracle,
) -> Vec<(Identity, Result<VerificationReport, IdentityError>)> {
    let mut results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = identities
            .iter()
            .map(|&id| scope.spawn(move || (id, id.run(&id.caps_with(overrides), oracle))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verifier thread panicked"))
            .collect()
    });
    results.sort_by_key(|(id, _)| id.name());
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn overrides_replace_single_caps() {
        let caps = Identity::Glaisher.caps_with(&"t:3".parse().unwrap());
        assert_eq!(caps.to_string(), "t:3,x:8,y:8");
    }
}
