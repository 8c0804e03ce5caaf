use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fragments::{Counterexample, Fragment};

/// Verdicts for every fragment together with basic invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub language: String,
    pub monoid_size: usize,
    pub stability_index: usize,
    pub stable_size: usize,
    pub fo_lt: bool,
    pub fo2_lt: bool,
    pub sigma2_lt: bool,
    pub pi2_lt: bool,
    pub delta2_lt: bool,
    pub fo_mod: bool,
    pub fo2_mod_qda: bool,
    pub sigma2_mod: bool,
    pub pi2_mod: bool,
    pub delta2_mod: bool,
    pub fo2_mod_new: bool,
    pub witnesses: BTreeMap<String, Option<Counterexample>>,
}

impl FragmentReport {
    pub(crate) fn new(
        language: String,
        monoid_size: usize,
        stability_index: usize,
        stable_size: usize,
        verdicts: Vec<(Fragment, Option<Counterexample>)>,
    ) -> Self {
        let mut r = FragmentReport {
            language,
            monoid_size,
            stability_index,
            stable_size,
            fo_lt: false,
            fo2_lt: false,
            sigma2_lt: false,
            pi2_lt: false,
            delta2_lt: false,
            fo_mod: false,
            fo2_mod_qda: false,
            sigma2_mod: false,
            pi2_mod: false,
            delta2_mod: false,
            fo2_mod_new: false,
            witnesses: BTreeMap::new(),
        };
        for (f, w) in verdicts {
            *r.slot(f) = w.is_none();
            r.witnesses.insert(f.id().to_string(), w);
        }
        r
    }

    fn slot(&mut self, f: Fragment) -> &mut bool {
        match f {
            Fragment::FoLt => &mut self.fo_lt,
            Fragment::Fo2Lt => &mut self.fo2_lt,
            Fragment::Sigma2Lt => &mut self.sigma2_lt,
            Fragment::Pi2Lt => &mut self.pi2_lt,
            Fragment::Delta2Lt => &mut self.delta2_lt,
            Fragment::FoMod => &mut self.fo_mod,
            Fragment::Fo2ModQda => &mut self.fo2_mod_qda,
            Fragment::Sigma2Mod => &mut self.sigma2_mod,
            Fragment::Pi2Mod => &mut self.pi2_mod,
            Fragment::Delta2Mod => &mut self.delta2_mod,
            Fragment::Fo2ModNew => &mut self.fo2_mod_new,
        }
    }

    pub fn get(&self, f: Fragment) -> bool {
        match f {
            Fragment::FoLt => self.fo_lt,
            Fragment::Fo2Lt => self.fo2_lt,
            Fragment::Sigma2Lt => self.sigma2_lt,
            Fragment::Pi2Lt => self.pi2_lt,
            Fragment::Delta2Lt => self.delta2_lt,
            Fragment::FoMod => self.fo_mod,
            Fragment::Fo2ModQda => self.fo2_mod_qda,
            Fragment::Sigma2Mod => self.sigma2_mod,
            Fragment::Pi2Mod => self.pi2_mod,
            Fragment::Delta2Mod => self.delta2_mod,
            Fragment::Fo2ModNew => self.fo2_mod_new,
        }
    }

    pub fn witness(&self, f: Fragment) -> Option<&Counterexample> {
        self.witnesses.get(f.id()).and_then(Option::as_ref)
    }

    /// The verdict vector in [`Fragment::ALL`] order.
    pub fn verdicts(&self) -> Vec<bool> {
        Fragment::ALL.iter().map(|&f| self.get(f)).collect()
    }

    pub(crate) fn check_invariants(&self) -> Result<()> {
        let mut broken = Vec::new();
        if self.delta2_lt != (self.sigma2_lt && self.pi2_lt) {
            broken.push("delta2_lt differs from sigma2_lt and pi2_lt");
        }
        if self.delta2_mod != (self.sigma2_mod && self.pi2_mod) {
            broken.push("delta2_mod differs from sigma2_mod and pi2_mod");
        }
        if self.fo2_mod_new != self.delta2_mod {
            broken.push("fo2_mod_new differs from delta2_mod");
        }
        if self.fo2_mod_qda != self.fo2_mod_new {
            broken.push("fo2_mod_qda differs from fo2_mod_new");
        }
        if broken.is_empty() {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "{}: {}",
                self.language,
                broken.join("; ")
            )))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Aligned table with one row per fragment.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if !self.language.is_empty() {
            let _ = writeln!(out, "language: {}", self.language);
        }
        let _ = writeln!(
            out,
            "monoid size: {}  stability index: {}  stable monoid size: {}",
            self.monoid_size, self.stability_index, self.stable_size
        );
        let width = Fragment::ALL
            .iter()
            .map(|f| f.id().len())
            .max()
            .unwrap_or(0);
        let _ = writeln!(
            out,
            "{:<width$}  {:<7}  witness (e, x)",
            "fragment", "verdict"
        );
        for f in Fragment::ALL {
            let verdict = if self.get(f) { "yes" } else { "no" };
            let w = match self.witness(f) {
                Some(c) => format!("({}, {})", c.idempotent, c.element),
                None => "-".to_string(),
            };
            let _ = writeln!(out, "{:<width$}  {:<7}  {}", f.id(), verdict, w);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;
    use crate::fragments::Analysis;

    #[test]
    fn table_lists_every_fragment() {
        let d = parse_regex("(a|b)*aa(a|b)*", None).unwrap();
        let r = Analysis::new(&d, 100).unwrap().report("L2").unwrap();
        let t = r.to_table();
        assert_eq!(t.lines().count(), 3 + Fragment::ALL.len());
        assert!(t.contains("pi2_mod"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["sigma2_lt"], true);
        assert_eq!(json["pi2_mod"], false);
    }

    #[test]
    fn broken_identity_is_internal_error() {
        let d = parse_regex("(a|b)*aa(a|b)*", None).unwrap();
        let mut r = Analysis::new(&d, 100).unwrap().report("L2").unwrap();
        r.fo2_mod_qda = !r.fo2_mod_qda;
        assert!(matches!(r.check_invariants(), Err(Error::Internal(_))));
    }
}
