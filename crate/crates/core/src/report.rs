//! Shared verdict schema for all inequality and structure checkers.
//!
//! Every checker ultimately reduces to "does this exact relation hold on this
//! instance", and batch runners need a uniform record. The JSON rendering
//! contains only deterministic fields; wall-clock time goes into the text
//! rendering only, so fixed-seed runs stay byte-identical in JSON mode.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The relation holds, verified exactly (or within the stated slack).
    Holds,
    /// The relation is false on this instance; a witness is attached.
    Fails,
    /// The hypotheses make the conclusion empty (for instance a bound that is
    /// trivially nonbinding); nothing was actually tested.
    Vacuous,
    /// Neither side could be certified (for instance an enclosure straddles
    /// the comparison point).
    Inconclusive,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fails)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// One checked instance. `lhs`/`rhs` are exact rational strings except where
/// prefixed `approx:` (advisory statistical checks only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub lemma: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl VerdictReport {
    pub fn new(
        lemma: impl Into<String>,
        instance: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        VerdictReport {
            lemma: lemma.into(),
            instance: instance.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            verdict: Verdict::Holds,
            witness: None,
            seed: None,
            note: None,
        }
    }

    pub fn holds(mut self) -> Self {
        self.verdict = Verdict::Holds;
        self
    }

    /// A failing verdict always carries a witness; that is the schema's one
    /// hard invariant.
    pub fn fails(mut self, witness: impl Into<String>) -> Self {
        self.verdict = Verdict::Fails;
        self.witness = Some(witness.into());
        self
    }

    pub fn vacuous(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Vacuous;
        self.note = Some(note.into());
        self
    }

    pub fn inconclusive(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Inconclusive;
        self.note = Some(note.into());
        self
    }

    /// Verdict from an already-evaluated comparison, attaching the witness
    /// only on failure.
    pub fn decided(self, ok: bool, witness_on_fail: impl Into<String>) -> Self {
        if ok {
            self.holds()
        } else {
            self.fails(witness_on_fail)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    /// Deterministic JSON: field order is fixed, optional fields are omitted
    /// when absent, and no timing data is included.
    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("report is always serializable")
    }

    /// Human-readable single line; `elapsed` is appended here and only here.
    pub fn text_line(&self, elapsed: Option<Duration>) -> String {
        let mut line = format!(
            "{} {} {} lhs={} rhs={}",
            self.lemma, self.instance, self.verdict, self.lhs, self.rhs
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness={w}"));
        }
        if let Some(s) = self.seed {
            line.push_str(&format!(" seed={s}"));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!(" note={n:?}"));
        }
        if let Some(e) = elapsed {
            line.push_str(&format!(" elapsed={:.3}s", e.as_secs_f64()));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_deterministic_and_omits_empty_fields() {
        let r = VerdictReport::new("st", "abc123", "3/4", "1").holds();
        assert_eq!(
            r.json(),
            r#"{"lemma":"st","instance":"abc123","lhs":"3/4","rhs":"1","verdict":"holds"}"#
        );
        let r2 = VerdictReport::new("st", "abc123", "3/4", "1")
            .fails("{0, 1}")
            .with_seed(7);
        assert!(r2.json().contains(r#""witness":"{0, 1}""#));
        assert!(r2.json().contains(r#""seed":7"#));
    }

    #[test]
    fn round_trip_through_serde() {
        let r = VerdictReport::new("ker", "deadbeef", "1", "1")
            .vacuous("empty hypothesis")
            .with_seed(42);
        let back: VerdictReport = serde_json::from_str(&r.json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_line_carries_elapsed_but_json_does_not() {
        let r = VerdictReport::new("sp", "x", "0", "1").holds();
        let line = r.text_line(Some(Duration::from_millis(1500)));
        assert!(line.contains("elapsed=1.500s"));
        assert!(!r.json().contains("elapsed"));
        let bare = r.text_line(None);
        assert!(!bare.contains("elapsed"));
    }

    #[test]
    fn failure_attaches_witness() {
        let r = VerdictReport::new("mon", "y", "2", "1").decided(false, "pair (0, 1)");
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.witness.as_deref(), Some("pair (0, 1)"));
        assert!(r.verdict.is_failure());
        let ok = VerdictReport::new("mon", "y", "1", "2").decided(true, "unused");
        assert_eq!(ok.verdict, Verdict::Holds);
        assert!(ok.witness.is_none());
    }
}
