//! Reports: one per evaluated problem, printed for humans and optionally
//! written as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use logfol::Decision;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    InputError,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::InputError => 2,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::InputError => "input error",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Worst verdict of a batch: input errors, then failures, then
    /// inconclusive results dominate.
    pub fn combine(self, other: Verdict) -> Verdict {
        let rank = |v: Verdict| match v {
            Verdict::Holds => 0,
            Verdict::Inconclusive => 1,
            Verdict::Fails => 2,
            Verdict::InputError => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl From<Decision> for Verdict {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Holds => Verdict::Holds,
            Decision::Fails => Verdict::Fails,
            Decision::Inconclusive => Verdict::Inconclusive,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub decision: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, Value>,
    #[serde(default)]
    pub certificates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_us: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub batch: Vec<Report>,
}

impl Report {
    pub fn new(command: impl Into<String>, decision: Verdict) -> Self {
        Report {
            command: command.into(),
            decision,
            order: None,
            witnesses: BTreeMap::new(),
            certificates: Vec::new(),
            error: None,
            elapsed_us: 0,
            batch: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.decision.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        self.render(&mut out, "");
        out
    }

    fn render(&self, out: &mut String, indent: &str) {
        let _ = writeln!(out, "{indent}{}", self.command);
        let _ = writeln!(out, "{indent}  decision: {} (exit {})", self.decision.name(), self.exit_code());
        if let Some(order) = self.order {
            let _ = writeln!(out, "{indent}  order: {order}");
        }
        for (k, v) in &self.witnesses {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{indent}  {k} = {text}");
        }
        for c in &self.certificates {
            let _ = writeln!(out, "{indent}  certificate: {c}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{indent}  error: {e}");
        }
        let _ = writeln!(out, "{indent}  time: {:.3} ms", self.elapsed_us as f64 / 1000.0);
        let inner = format!("{indent}  ");
        for r in &self.batch {
            r.render(out, &inner);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    fn verdict() -> impl Strategy<Value = Verdict> {
        prop_oneof![
            Just(Verdict::Holds),
            Just(Verdict::Fails),
            Just(Verdict::InputError),
            Just(Verdict::Inconclusive)
        ]
    }

    fn value() -> impl Strategy<Value = Value> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(Value::from),
            any::<i64>().prop_map(Value::from),
            "[a-z0-9/ *^+-]{0,12}".prop_map(Value::from),
        ];
        leaf.prop_recursive(2, 12, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..4).prop_map(Value::Array),
                prop::collection::btree_map("[a-z]{1,4}", inner, 0..3)
                    .prop_map(|m| Value::Object(m.into_iter().collect())),
            ]
        })
    }

    fn report() -> impl Strategy<Value = Report> {
        (
            "[a-z -]{1,20}",
            verdict(),
            proptest::option::of(0u32..20),
            prop::collection::btree_map("[a-z_]{1,6}", value(), 0..4),
            prop::collection::vec(".{0,16}", 0..3),
            proptest::option::of(".{0,16}"),
            any::<u64>(),
        )
            .prop_map(|(command, decision, order, witnesses, certificates, error, elapsed_us)| Report {
                command,
                decision,
                order,
                witnesses,
                certificates,
                error,
                elapsed_us,
                batch: Vec::new(),
            })
    }

    proptest! {
        #[test]
        fn json_round_trip(mut r in report(), children in prop::collection::vec(report(), 0..3)) {
            r.batch = children;
            prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        }

        #[test]
        fn exit_code_depends_on_decision_only(a in report(), b in report()) {
            prop_assert_eq!(a.decision == b.decision, a.exit_code() == b.exit_code());
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Holds.exit_code(), 0);
        assert_eq!(Verdict::Fails.exit_code(), 1);
        assert_eq!(Verdict::InputError.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }

    #[test]
    fn combine_prefers_the_worst() {
        assert_eq!(Verdict::Holds.combine(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.combine(Verdict::Fails), Verdict::Fails);
        assert_eq!(Verdict::InputError.combine(Verdict::Fails), Verdict::InputError);
    }

    #[test]
    fn human_lists_witnesses() {
        let mut r = Report::new("cohomology p1 --deg -2", Verdict::Holds);
        r.witnesses.insert("h0".into(), json!(0));
        r.witnesses.insert("h1".into(), json!(1));
        let text = r.human();
        assert!(text.contains("h0 = 0"));
        assert!(text.contains("h1 = 1"));
        assert!(text.contains("decision: holds (exit 0)"));
    }
}
