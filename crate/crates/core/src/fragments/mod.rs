//! Decision procedures for the logical fragments.

mod report;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::monoid::{
    is_aperiodic, local_condition, omega_power, syntactic_morphism, Mode, Morphism, Selector,
};
use crate::stability::StabilityInfo;

pub use report::FragmentReport;
pub use witness::{
    build_mod_witness, build_mod_witness_unchecked, verify_vmod_implication, DecoratedHom,
    ModWitness, VmodCounterexample, WitnessClass,
};

/// The fragments decided by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fragment {
    FoLt,
    Fo2Lt,
    Sigma2Lt,
    Pi2Lt,
    Delta2Lt,
    FoMod,
    Fo2ModQda,
    Sigma2Mod,
    Pi2Mod,
    Delta2Mod,
    Fo2ModNew,
}

impl Fragment {
    pub const ALL: [Fragment; 11] = [
        Fragment::FoLt,
        Fragment::Fo2Lt,
        Fragment::Sigma2Lt,
        Fragment::Pi2Lt,
        Fragment::Delta2Lt,
        Fragment::FoMod,
        Fragment::Fo2ModQda,
        Fragment::Sigma2Mod,
        Fragment::Pi2Mod,
        Fragment::Delta2Mod,
        Fragment::Fo2ModNew,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Fragment::FoLt => "fo_lt",
            Fragment::Fo2Lt => "fo2_lt",
            Fragment::Sigma2Lt => "sigma2_lt",
            Fragment::Pi2Lt => "pi2_lt",
            Fragment::Delta2Lt => "delta2_lt",
            Fragment::FoMod => "fo_mod",
            Fragment::Fo2ModQda => "fo2_mod_qda",
            Fragment::Sigma2Mod => "sigma2_mod",
            Fragment::Pi2Mod => "pi2_mod",
            Fragment::Delta2Mod => "delta2_mod",
            Fragment::Fo2ModNew => "fo2_mod_new",
        }
    }

    /// Conventional logical name, e.g. `Σ2[<,MOD]`.
    pub fn logic(self) -> &'static str {
        match self {
            Fragment::FoLt => "FO[<]",
            Fragment::Fo2Lt => "FO2[<]",
            Fragment::Sigma2Lt => "Σ2[<]",
            Fragment::Pi2Lt => "Π2[<]",
            Fragment::Delta2Lt => "Δ2[<]",
            Fragment::FoMod => "FO[<,MOD]",
            Fragment::Fo2ModQda => "FO2[<,MOD] (QDA)",
            Fragment::Sigma2Mod => "Σ2[<,MOD]",
            Fragment::Pi2Mod => "Π2[<,MOD]",
            Fragment::Delta2Mod => "Δ2[<,MOD]",
            Fragment::Fo2ModNew => "FO2[<,MOD]",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "fo2_mod" {
            return Ok(Fragment::Fo2ModNew);
        }
        Fragment::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownFragment(s.to_string()))
    }
}

/// A counterexample to a fragment criterion, as representative words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The idempotent `e` (for aperiodicity: `x^ω`).
    pub idempotent: String,
    /// The offending element `x`.
    pub element: String,
}

/// The syntactic morphism with its order and stability data, shared by all
/// criteria.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub morphism: Morphism,
    pub info: StabilityInfo,
}

impl Analysis {
    pub fn new(d: &Dfa, cap: usize) -> Result<Self> {
        let morphism = syntactic_morphism(d, cap)?;
        let info = StabilityInfo::new(&morphism);
        Ok(Analysis { morphism, info })
    }

    pub fn from_morphism(morphism: Morphism) -> Self {
        let info = StabilityInfo::new(&morphism);
        Analysis { morphism, info }
    }

    /// The same analysis with another stability index.
    pub fn with_index(&self, s: usize) -> Result<Self> {
        Ok(Analysis {
            morphism: self.morphism.clone(),
            info: StabilityInfo::with_index(&self.morphism, s)?,
        })
    }

    fn labels(&self, e: usize, x: usize) -> Counterexample {
        Counterexample {
            idempotent: self.morphism.repr_text(e),
            element: self.morphism.repr_text(x),
        }
    }

    fn local(&self, mode: Mode, selector: Selector<'_>) -> Result<Option<Counterexample>> {
        Ok(local_condition(self.morphism.monoid(), mode, selector)?.map(|w| self.labels(w.e, w.x)))
    }

    /// Evaluates one criterion; `None` means the language is definable.
    pub fn evaluate(&self, fragment: Fragment) -> Result<Option<Counterexample>> {
        let m = self.morphism.monoid();
        let mes = Selector::Mes(&self.info);
        match fragment {
            Fragment::FoLt => Ok(is_aperiodic(m).map(|x| self.labels(omega_power(m, x), x))),
            Fragment::Fo2Lt => self.local(Mode::Eq, Selector::Me),
            Fragment::Sigma2Lt => self.local(Mode::Leq, Selector::Me),
            Fragment::Pi2Lt => self.local(Mode::Geq, Selector::Me),
            Fragment::Delta2Lt => Ok(self
                .evaluate(Fragment::Sigma2Lt)?
                .or(self.evaluate(Fragment::Pi2Lt)?)),
            Fragment::FoMod => {
                let (s, embed) = self.info.stable_monoid(m);
                Ok(is_aperiodic(&s).map(|x| self.labels(embed[omega_power(&s, x)], embed[x])))
            }
            Fragment::Fo2ModQda => {
                let (s, embed) = self.info.stable_monoid(m);
                let s = s.unordered();
                Ok(local_condition(&s, Mode::Eq, Selector::Me)?
                    .map(|w| self.labels(embed[w.e], embed[w.x])))
            }
            Fragment::Sigma2Mod => self.local(Mode::Leq, mes),
            Fragment::Pi2Mod => self.local(Mode::Geq, mes),
            Fragment::Delta2Mod => Ok(self
                .evaluate(Fragment::Sigma2Mod)?
                .or(self.evaluate(Fragment::Pi2Mod)?)),
            Fragment::Fo2ModNew => self.local(Mode::Eq, mes),
        }
    }

    /// Runs every criterion and checks the identities between them.
    pub fn report(&self, language: impl Into<String>) -> Result<FragmentReport> {
        let mut verdicts = Vec::with_capacity(Fragment::ALL.len());
        for f in Fragment::ALL {
            verdicts.push((f, self.evaluate(f)?));
        }
        let report = FragmentReport::new(
            language.into(),
            self.morphism.monoid().size(),
            self.info.s(),
            self.info.stable_size(),
            verdicts,
        );
        report.check_invariants()?;
        Ok(report)
    }
}

/// Decides one fragment for `L(d)`.
pub fn check_fragment(d: &Dfa, fragment: Fragment) -> Result<(bool, Option<Counterexample>)> {
    let w = Analysis::new(d, crate::DEFAULT_MONOID_CAP)?.evaluate(fragment)?;
    Ok((w.is_none(), w))
}

/// Full report for `L(d)` with the default monoid cap.
pub fn analyze(d: &Dfa) -> Result<FragmentReport> {
    Analysis::new(d, crate::DEFAULT_MONOID_CAP)?.report("")
}
