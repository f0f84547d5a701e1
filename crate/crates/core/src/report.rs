//! Pass/fail records shared by the axiom checkers and the identity suites.

use std::fmt::Write as _;
use std::time::Duration;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// One checked instance of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub relation: String,
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Case {
    /// `relation[label]`, the case column of the report format.
    pub fn id(&self) -> String {
        if self.label.is_empty() {
            self.relation.clone()
        } else {
            format!("{}[{}]", self.relation, self.label)
        }
    }
}

/// Outcome of one checker or suite. Every relation is checked on basis
/// elements only; multilinearity extends the result to the whole space.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub cases: Vec<Case>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteReport { name: name.into(), ..Default::default() }
    }

    pub fn record(
        &mut self,
        relation: &str,
        label: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        pass: bool,
    ) {
        self.cases.push(Case {
            relation: relation.to_string(),
            label: label.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
        });
    }

    /// Records `lhs == rhs`, printing both sides with `show`.
    pub fn compare<T: PartialEq>(
        &mut self,
        relation: &str,
        label: impl Into<String>,
        lhs: &T,
        rhs: &T,
        show: impl Fn(&T) -> String,
    ) -> bool {
        let pass = lhs == rhs;
        self.record(relation, label, show(lhs), show(rhs), pass);
        pass
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
        self.elapsed += other.elapsed;
    }

    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn passed_count(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    /// An empty suite passes vacuously.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Relation names in first-seen order.
    pub fn relations(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.cases {
            if !out.contains(&c.relation.as_str()) {
                out.push(&c.relation);
            }
        }
        out
    }

    /// True when the relation was checked at least once and never failed.
    pub fn relation_passed(&self, relation: &str) -> bool {
        let mut seen = false;
        for c in self.cases.iter().filter(|c| c.relation == relation) {
            seen = true;
            if !c.pass {
                return false;
            }
        }
        seen
    }

    /// `suite<TAB>case<TAB>PASS|FAIL<TAB>lhs<TAB>rhs`, one line per case.
    pub fn lines(&self) -> Vec<String> {
        self.cases
            .iter()
            .map(|c| {
                format!(
                    "{}\t{}\t{}\t{}\t{}",
                    self.name,
                    c.id(),
                    if c.pass { "PASS" } else { "FAIL" },
                    c.lhs,
                    c.rhs
                )
            })
            .collect()
    }
}

/// `1/2`, `-3`, ...
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Prints `sum c_k * label_k` as `2*e[a] - e[b] + 1/2*w[1]`; the empty sum
/// prints as `0`. A label of `""` stands for the scalar 1.
pub fn linear_combination<I>(terms: I) -> String
where
    I: IntoIterator<Item = (Rational, String)>,
{
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&label);
        } else {
            let _ = write!(out, "{}*{}", format_rational(&mag), label);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn combination_formatting() {
        let s = linear_combination(vec![
            (rat(1), "e[a]".to_string()),
            (rat(-2), "e[b]".to_string()),
            (ratio(1, 2), String::new()),
        ]);
        assert_eq!(s, "e[a] - 2*e[b] + 1/2");
        assert_eq!(linear_combination(vec![(rat(-1), "x".to_string())]), "-x");
        assert_eq!(linear_combination(Vec::new()), "0");
    }

    #[test]
    fn report_lines_and_relations() {
        let mut r = SuiteReport::new("demo");
        r.record("assoc", "1,2", "a", "a", true);
        r.record("unit", "", "b", "c", false);
        assert_eq!(r.lines()[0], "demo\tassoc[1,2]\tPASS\ta\ta");
        assert_eq!(r.lines()[1], "demo\tunit\tFAIL\tb\tc");
        assert!(r.relation_passed("assoc"));
        assert!(!r.relation_passed("unit"));
        assert!(!r.relation_passed("missing"));
        assert_eq!(r.relations(), vec!["assoc", "unit"]);
    }
}
