use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// How `computed` is compared against `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BoundKind {
    /// Equal (within the tolerance, for reals).
    Exact,
    /// `computed >= expected`.
    Lower,
    /// `computed <= expected`.
    Upper,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Exact => "exact",
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        })
    }
}

/// A recorded quantity: an exact integer, a float with a tolerance, or a flag.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigInt),
    Real(f64),
    Flag(bool),
}

impl Value {
    pub fn int(v: impl Into<BigInt>) -> Value {
        Value::Int(v.into())
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(v) => v.to_f64(),
            Value::Real(v) => Some(*v),
            Value::Flag(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v:.12}"),
            Value::Flag(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(feature = "serde")]
mod value_serde {
    use super::Value;
    use alloc::string::{String, ToString};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "type", content = "value", rename_all = "lowercase")]
    enum Repr {
        Int(String),
        Real(f64),
        Flag(bool),
    }

    impl Serialize for Value {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self {
                Value::Int(v) => Repr::Int(v.to_string()),
                Value::Real(v) => Repr::Real(*v),
                Value::Flag(v) => Repr::Flag(*v),
            }
            .serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Value {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Value, D::Error> {
            Ok(match Repr::deserialize(d)? {
                Repr::Int(s) => Value::Int(s.parse().map_err(D::Error::custom)?),
                Repr::Real(v) => Value::Real(v),
                Repr::Flag(v) => Value::Flag(v),
            })
        }
    }
}

/// One claim with its expected value or bound and what was computed.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LedgerEntry {
    pub claim_id: String,
    /// Plain-language statement of what is checked.
    pub claim: String,
    pub kind: BoundKind,
    pub expected: Value,
    pub computed: Value,
    /// Absolute tolerance for real-valued comparisons.
    #[cfg_attr(feature = "serde", serde(default))]
    pub tolerance: f64,
}

impl LedgerEntry {
    pub fn new(
        claim_id: impl Into<String>,
        claim: impl Into<String>,
        kind: BoundKind,
        expected: Value,
        computed: Value,
    ) -> LedgerEntry {
        LedgerEntry { claim_id: claim_id.into(), claim: claim.into(), kind, expected, computed, tolerance: 0.0 }
    }

    pub fn exact(claim_id: impl Into<String>, claim: impl Into<String>, expected: Value, computed: Value) -> LedgerEntry {
        LedgerEntry::new(claim_id, claim, BoundKind::Exact, expected, computed)
    }

    pub fn lower(claim_id: impl Into<String>, claim: impl Into<String>, expected: Value, computed: Value) -> LedgerEntry {
        LedgerEntry::new(claim_id, claim, BoundKind::Lower, expected, computed)
    }

    pub fn upper(claim_id: impl Into<String>, claim: impl Into<String>, expected: Value, computed: Value) -> LedgerEntry {
        LedgerEntry::new(claim_id, claim, BoundKind::Upper, expected, computed)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> LedgerEntry {
        self.tolerance = tolerance;
        self
    }

    /// Recomputed from `expected`, `computed`, `kind` and `tolerance` every
    /// time; nothing is cached.
    pub fn passed(&self) -> bool {
        use core::cmp::Ordering::*;
        let ord = match (&self.expected, &self.computed) {
            (Value::Int(e), Value::Int(c)) => Some(c.cmp(e)),
            (Value::Flag(e), Value::Flag(c)) => {
                return self.kind == BoundKind::Exact && e == c;
            }
            (e, c) => match (e.as_f64(), c.as_f64()) {
                (Some(e), Some(c)) if e.is_finite() && c.is_finite() => {
                    let t = self.tolerance;
                    return match self.kind {
                        BoundKind::Exact => (c - e).abs() <= t,
                        BoundKind::Lower => c >= e - t,
                        BoundKind::Upper => c <= e + t,
                    };
                }
                _ => None,
            },
        };
        match (ord, self.kind) {
            (Some(o), BoundKind::Exact) => o == Equal,
            (Some(o), BoundKind::Lower) => o != Less,
            (Some(o), BoundKind::Upper) => o != Greater,
            (None, _) => false,
        }
    }

    fn relation(&self) -> &'static str {
        match self.kind {
            BoundKind::Exact => "==",
            BoundKind::Lower => ">=",
            BoundKind::Upper => "<=",
        }
    }
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: computed {} {} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.claim_id,
            self.computed,
            self.relation(),
            self.expected
        )?;
        if self.tolerance > 0.0 {
            write!(f, " (tol {:e})", self.tolerance)?;
        }
        write!(f, " [{}]", self.claim)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// An ordered list of checked claims.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerdictLedger {
    pub entries: Vec<LedgerEntry>,
}

impl VerdictLedger {
    pub fn new() -> VerdictLedger {
        VerdictLedger::default()
    }

    pub fn push(&mut self, entry: LedgerEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerdictLedger) {
        self.entries.extend(other.entries);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn summary(&self) -> Summary {
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        Summary { passed, failed: self.entries.len() - passed }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(LedgerEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn get(&self, claim_id: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.claim_id == claim_id)
    }

    /// Stable sort on claim id.
    pub fn sort(&mut self) {
        self.entries.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    }

    /// Claim ids of failed entries, joined by ", ".
    pub fn failure_list(&self) -> String {
        let ids: Vec<String> = self.failures().map(|e| e.claim_id.to_string()).collect();
        ids.join(", ")
    }
}

impl fmt::Display for VerdictLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        let s = self.summary();
        write!(f, "{} passed, {} failed", s.passed, s.failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert!(LedgerEntry::exact("a", "", Value::int(29), Value::int(29)).passed());
        assert!(!LedgerEntry::exact("a", "", Value::int(29), Value::int(30)).passed());
        assert!(LedgerEntry::lower("b", "", Value::int(26), Value::int(30)).passed());
        assert!(!LedgerEntry::lower("b", "", Value::int(26), Value::int(25)).passed());
        assert!(LedgerEntry::upper("c", "", Value::int(167), Value::int(167)).passed());
        assert!(!LedgerEntry::upper("c", "", Value::int(167), Value::int(168)).passed());
    }

    #[test]
    fn reals_use_tolerance() {
        let e = LedgerEntry::exact("r", "", Value::Real(1.0), Value::Real(1.0 + 1e-13)).with_tolerance(1e-12);
        assert!(e.passed());
        let e = LedgerEntry::exact("r", "", Value::Real(1.0), Value::Real(1.0 + 1e-11)).with_tolerance(1e-12);
        assert!(!e.passed());
        assert!(!LedgerEntry::lower("n", "", Value::Real(1.0), Value::Real(f64::NAN)).passed());
        assert!(LedgerEntry::lower("m", "", Value::Real(1.5), Value::int(2)).passed());
    }

    #[test]
    fn summary_counts() {
        let mut l = VerdictLedger::new();
        l.push(LedgerEntry::exact("z", "", Value::Flag(true), Value::Flag(true)));
        l.push(LedgerEntry::exact("a", "", Value::Flag(true), Value::Flag(false)));
        assert_eq!(l.summary(), Summary { passed: 1, failed: 1 });
        assert_eq!(l.failure_list(), "a");
        l.sort();
        assert_eq!(l.entries[0].claim_id, "a");
    }
}
