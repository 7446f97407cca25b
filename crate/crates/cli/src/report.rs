//! JSON report documents. Every number is an integer; rationals are strings.

use std::collections::BTreeMap;

use flatrep::conditions::{CheckVerdict, ConditionReport};
use flatrep::obstructions::{BundleProfile, ObstructionReport};
use serde::{Deserialize, Serialize};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub genus0: Option<CheckVerdict>,
    pub selfint: Option<CheckVerdict>,
    pub relators: Option<CheckVerdict>,
    pub sw: Option<CheckVerdict>,
}

impl From<ConditionReport> for Checks {
    fn from(r: ConditionReport) -> Self {
        Checks {
            genus0: Some(r.genus0),
            selfint: Some(r.selfint),
            relators: Some(r.relators),
            sw: Some(r.sw),
        }
    }
}

impl Checks {
    fn all_present_and_passed(&self) -> bool {
        [&self.genus0, &self.selfint, &self.relators, &self.sw]
            .iter()
            .all(|v| v.as_ref().is_some_and(|v| v.passed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub circles: Vec<String>,
    pub genus: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionSummary {
    pub psq: u8,
    pub b2_mod4: u8,
    pub verdict: Verdict,
    pub detail: ObstructionReport,
}

impl From<ObstructionReport> for ObstructionSummary {
    fn from(detail: ObstructionReport) -> Self {
        ObstructionSummary { psq: detail.psq, b2_mod4: detail.b2_mod4, verdict: detail.pass.into(), detail }
    }
}

/// Search results. Also the payload of the results cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub group: String,
    pub dedup: String,
    pub involutions_only_on_hopfs: bool,
    pub all_sw_paths: bool,
    pub raw_solutions: usize,
    pub classes: usize,
    /// Node id to group element, in the `.sld` element syntax.
    pub solutions: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub cached: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Check,
    Search,
    Obstruct,
    Bundle,
    Canon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonSummary {
    pub hopf_order: Vec<String>,
    pub key: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub command: Command,
    pub wellformed: bool,
    pub b1: Option<usize>,
    pub b2: Option<usize>,
    pub components: Vec<ComponentSummary>,
    pub checks: Checks,
    pub obstructions: Option<ObstructionSummary>,
    pub search: Option<SearchSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canon: Option<CanonSummary>,
    pub diagnostics: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: Command) -> Self {
        ReportDocument {
            command,
            wellformed: true,
            b1: None,
            b2: None,
            components: Vec::new(),
            checks: Checks::default(),
            obstructions: None,
            search: None,
            bundle: None,
            canon: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn invalid(command: Command, diagnostic: impl Into<String>) -> Self {
        let mut r = Self::new(command);
        r.wellformed = false;
        r.diagnostics.push(diagnostic.into());
        r
    }

    /// The process exit code, computed from the report alone.
    pub fn exit_code(&self) -> i32 {
        if !self.wellformed {
            return EXIT_INVALID;
        }
        let pass = match self.command {
            Command::Check => self.checks.all_present_and_passed(),
            Command::Search => self.search.as_ref().is_some_and(|s| s.raw_solutions > 0),
            Command::Obstruct => self.obstructions.as_ref().is_some_and(|o| o.verdict == Verdict::Pass),
            Command::Bundle => true,
            Command::Canon => self.canon.as_ref().is_some_and(|c| c.key.is_some()),
        };
        if pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains_float(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Number(n) => n.is_f64(),
            serde_json::Value::Array(a) => a.iter().any(contains_float),
            serde_json::Value::Object(o) => o.values().any(contains_float),
            _ => false,
        }
    }

    #[test]
    fn invalid_reports_exit_two() {
        for c in [Command::Check, Command::Search, Command::Obstruct, Command::Bundle, Command::Canon] {
            assert_eq!(ReportDocument::invalid(c, "x").exit_code(), EXIT_INVALID);
        }
    }

    #[test]
    fn bundle_always_passes() {
        assert_eq!(ReportDocument::new(Command::Bundle).exit_code(), EXIT_PASS);
        assert_eq!(ReportDocument::new(Command::Check).exit_code(), EXIT_FAIL);
    }

    #[test]
    fn bundle_report_has_no_floats() {
        let mut r = ReportDocument::new(Command::Bundle);
        r.bundle = Some(flatrep::obstructions::bundle_profile(1, 3, 0).unwrap());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(!contains_float(&v));
        assert_eq!(v["bundle"]["energy"], "3/4");
    }

    #[test]
    fn schema_keys_present() {
        let v: serde_json::Value =
            serde_json::from_str(&ReportDocument::new(Command::Check).to_json()).unwrap();
        for key in ["wellformed", "b1", "b2", "components", "checks", "obstructions", "search", "diagnostics"]
        {
            assert!(v.get(key).is_some(), "{key}");
        }
        for key in ["genus0", "selfint", "relators", "sw"] {
            assert!(v["checks"].get(key).is_some(), "{key}");
        }
    }
}
