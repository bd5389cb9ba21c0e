//! Channel-strength matrices, the δ calculus, and regime classification.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::Zero;

/// Quantifier convention used by the classifiers: in the regime definitions
/// the indices range over `i, j, k ∈ [K]` with `i ∉ {j, k}`, and `j = k` is
/// admitted. Reported in every [`RegimeReport`].
pub const INDEX_CONVENTION: &str = "i ∉ {j,k}, j = k admitted";

/// The four nested interference regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    Tin,
    Ctin,
    Sls,
    StrictSls,
}

impl Regime {
    pub fn tag(self) -> &'static str {
        match self {
            Regime::Tin => "TIN",
            Regime::Ctin => "CTIN",
            Regime::Sls => "SLS",
            Regime::StrictSls => "strict-SLS",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tin" => Ok(Regime::Tin),
            "ctin" => Ok(Regime::Ctin),
            "sls" => Ok(Regime::Sls),
            "strict-sls" | "strictsls" | "strict_sls" => Ok(Regime::StrictSls),
            _ => Err(Error::InvalidParameter {
                what: "regime",
                reason: format!("unknown tag {s:?}, expected TIN, CTIN, SLS or strict-SLS"),
            }),
        }
    }
}

/// A quantified inequality that fails, pinning a regime exclusion.
///
/// `indices` is the lexicographically smallest offending tuple `(i, j, k)`
/// (written `(i, l, m)` for the TIN regime), `lhs < rhs` is the failed
/// comparison (`lhs ≤ rhs` for a failed strict inequality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeViolation {
    pub regime: Regime,
    pub indices: (usize, usize, usize),
    pub lhs: Rational,
    pub rhs: Rational,
    pub inequality: String,
}

impl fmt::Display for RegimeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.indices;
        write!(f, "{} fails at (i={i},{}={j},{}={k}): {}",
            self.regime.tag(),
            if self.regime == Regime::Tin { "l" } else { "j" },
            if self.regime == Regime::Tin { "m" } else { "k" },
            self.inequality,
        )
    }
}

/// Membership verdicts for all four regimes, with witnesses for the failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeReport {
    pub in_tin: bool,
    pub in_ctin: bool,
    pub in_sls: bool,
    pub in_strict_sls: bool,
    pub violations: Vec<RegimeViolation>,
    pub convention: &'static str,
}

impl RegimeReport {
    pub fn is_in(&self, regime: Regime) -> bool {
        match regime {
            Regime::Tin => self.in_tin,
            Regime::Ctin => self.in_ctin,
            Regime::Sls => self.in_sls,
            Regime::StrictSls => self.in_strict_sls,
        }
    }

    /// First recorded violation for `regime`, if that regime fails.
    pub fn violation(&self, regime: Regime) -> Option<&RegimeViolation> {
        self.violations.iter().find(|v| v.regime == regime)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "in_tin": self.in_tin,
            "in_ctin": self.in_ctin,
            "in_sls": self.in_sls,
            "in_strict_sls": self.in_strict_sls,
            "convention": self.convention,
            "violations": self.violations.iter().map(|v| json!({
                "regime": v.regime.tag(),
                "indices": [v.indices.0, v.indices.1, v.indices.2],
                "lhs": format_rational(&v.lhs),
                "rhs": format_rational(&v.rhs),
                "inequality": v.inequality,
            })).collect::<Vec<_>>(),
        })
    }
}

/// K×K matrix of channel-strength exponents. `alpha(i, j)` is the strength
/// from transmitter `j` to receiver `i`; user indices are 1-based throughout.
///
/// Immutable after construction; all entries are nonnegative rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelMatrix {
    name: Option<String>,
    alpha: Vec<Vec<Rational>>,
}

impl ChannelMatrix {
    pub fn new(alpha: Vec<Vec<Rational>>) -> Result<Self> {
        let k = alpha.len();
        if k == 0 {
            return Err(Error::InvalidNetwork { reason: "empty alpha matrix".to_string() });
        }
        for (r, row) in alpha.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotSquare { row: r + 1, expected: k, found: row.len() });
            }
            for (c, entry) in row.iter().enumerate() {
                if entry < &Rational::zero() {
                    return Err(Error::NegativeEntry { row: r + 1, col: c + 1, value: entry.clone() });
                }
            }
        }
        Ok(ChannelMatrix { name: None, alpha })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Strength from transmitter `j` to receiver `i` (1-based).
    ///
    /// Panics on out-of-range indices; use [`ChannelMatrix::check_user`]
    /// first when the indices come from outside.
    pub fn alpha(&self, i: usize, j: usize) -> &Rational {
        &self.alpha[i - 1][j - 1]
    }

    pub fn check_user(&self, user: usize) -> Result<()> {
        if user == 0 || user > self.k() {
            return Err(Error::IndexOutOfRange { index: user, k: self.k() });
        }
        Ok(())
    }

    /// δ_ij = α_ii − α_ji for i ≠ j, and 0 for i = j.
    pub fn delta(&self, i: usize, j: usize) -> Result<Rational> {
        self.check_user(i)?;
        self.check_user(j)?;
        if i == j {
            Ok(Rational::zero())
        } else {
            Ok(self.alpha(i, i) - self.alpha(j, i))
        }
    }

    /// Evaluates every quantified inequality of the TIN/CTIN/SLS/strict-SLS
    /// definitions exactly. A single-user network belongs to every regime
    /// (all quantified index sets are empty).
    pub fn classify(&self) -> RegimeReport {
        let k = self.k();
        let mut violations = Vec::new();
        let mut in_tin = true;
        let mut in_ctin = true;
        let mut in_sls = true;
        let mut in_strict_sls = true;

        // TIN: α_ii ≥ α_il + α_mi for all i ∉ {l, m}.
        'tin: for i in 1..=k {
            for l in (1..=k).filter(|&l| l != i) {
                for m in (1..=k).filter(|&m| m != i) {
                    let lhs = self.alpha(i, i);
                    let rhs = self.alpha(i, l) + self.alpha(m, i);
                    if *lhs < rhs {
                        in_tin = false;
                        violations.push(RegimeViolation {
                            regime: Regime::Tin,
                            indices: (i, l, m),
                            inequality: format!(
                                "α({i},{i}) = {} < {} = α({i},{l}) + α({m},{i})",
                                format_rational(lhs),
                                format_rational(&rhs)
                            ),
                            lhs: lhs.clone(),
                            rhs,
                        });
                        break 'tin;
                    }
                }
            }
        }

        // CTIN: α_ii ≥ max(α_ij + α_ji, α_ik + α_ji − α_jk) for all i ∉ {j, k}.
        'ctin: for i in 1..=k {
            for j in (1..=k).filter(|&j| j != i) {
                for kk in (1..=k).filter(|&kk| kk != i) {
                    let lhs = self.alpha(i, i);
                    let pair = self.alpha(i, j) + self.alpha(j, i);
                    if *lhs < pair {
                        in_ctin = false;
                        violations.push(RegimeViolation {
                            regime: Regime::Ctin,
                            indices: (i, j, kk),
                            inequality: format!(
                                "α({i},{i}) = {} < {} = α({i},{j}) + α({j},{i})",
                                format_rational(lhs),
                                format_rational(&pair)
                            ),
                            lhs: lhs.clone(),
                            rhs: pair,
                        });
                        break 'ctin;
                    }
                    let mixed = self.alpha(i, kk) + self.alpha(j, i) - self.alpha(j, kk);
                    if *lhs < mixed {
                        in_ctin = false;
                        violations.push(RegimeViolation {
                            regime: Regime::Ctin,
                            indices: (i, j, kk),
                            inequality: format!(
                                "α({i},{i}) = {} < {} = α({i},{kk}) + α({j},{i}) − α({j},{kk})",
                                format_rational(lhs),
                                format_rational(&mixed)
                            ),
                            lhs: lhs.clone(),
                            rhs: mixed,
                        });
                        break 'ctin;
                    }
                }
            }
        }

        // SLS: α_ii ≥ max(α_ij, α_ki, α_ik + α_ji − α_jk), strict-SLS with >.
        let mut sls_done = false;
        let mut strict_done = false;
        'sls: for i in 1..=k {
            for j in (1..=k).filter(|&j| j != i) {
                for kk in (1..=k).filter(|&kk| kk != i) {
                    let lhs = self.alpha(i, i);
                    let terms: [(Rational, String); 3] = [
                        (self.alpha(i, j).clone(), format!("α({i},{j})")),
                        (self.alpha(kk, i).clone(), format!("α({kk},{i})")),
                        (
                            self.alpha(i, kk) + self.alpha(j, i) - self.alpha(j, kk),
                            format!("α({i},{kk}) + α({j},{i}) − α({j},{kk})"),
                        ),
                    ];
                    for (rhs, expr) in terms {
                        if !sls_done && *lhs < rhs {
                            in_sls = false;
                            sls_done = true;
                            violations.push(RegimeViolation {
                                regime: Regime::Sls,
                                indices: (i, j, kk),
                                inequality: format!(
                                    "α({i},{i}) = {} < {} = {expr}",
                                    format_rational(lhs),
                                    format_rational(&rhs)
                                ),
                                lhs: lhs.clone(),
                                rhs: rhs.clone(),
                            });
                        }
                        if !strict_done && *lhs <= rhs {
                            in_strict_sls = false;
                            strict_done = true;
                            violations.push(RegimeViolation {
                                regime: Regime::StrictSls,
                                indices: (i, j, kk),
                                inequality: format!(
                                    "α({i},{i}) = {} ≤ {} = {expr}",
                                    format_rational(lhs),
                                    format_rational(&rhs)
                                ),
                                lhs: lhs.clone(),
                                rhs,
                            });
                        }
                        if sls_done && strict_done {
                            break 'sls;
                        }
                    }
                }
            }
        }

        violations.sort_by_key(|v| v.regime);
        RegimeReport {
            in_tin,
            in_ctin,
            in_sls,
            in_strict_sls,
            violations,
            convention: INDEX_CONVENTION,
        }
    }

    /// Parses the canonical network file: a JSON object with a required
    /// `"alpha"` key holding K arrays of K number-strings, an optional
    /// `"name"`, and an optional `"K"` that must match the dimension.
    /// Bare JSON numbers are rejected to avoid binary-float ambiguity.
    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self> {
        let value: Value = serde_json::from_slice(bytes)?;
        let obj = value.as_object().ok_or_else(|| Error::InvalidNetwork {
            reason: "top level must be a JSON object".to_string(),
        })?;
        let alpha_val = obj.get("alpha").ok_or_else(|| Error::InvalidNetwork {
            reason: "missing required key \"alpha\"".to_string(),
        })?;
        let rows_val = alpha_val.as_array().ok_or_else(|| Error::InvalidNetwork {
            reason: "\"alpha\" must be an array of arrays".to_string(),
        })?;
        let k = rows_val.len();
        let mut rows = Vec::with_capacity(k);
        for (r, row_val) in rows_val.iter().enumerate() {
            let entries = row_val.as_array().ok_or_else(|| Error::InvalidNetwork {
                reason: format!("alpha row {} must be an array", r + 1),
            })?;
            if entries.len() != k {
                return Err(Error::NotSquare { row: r + 1, expected: k, found: entries.len() });
            }
            let mut row = Vec::with_capacity(k);
            for (c, entry) in entries.iter().enumerate() {
                let text = match entry {
                    Value::String(s) => s,
                    Value::Number(_) => return Err(Error::BareNumber { row: r + 1, col: c + 1 }),
                    _ => {
                        return Err(Error::UnparsableNumber {
                            row: r + 1,
                            col: c + 1,
                            text: entry.to_string(),
                            reason: "expected a number string".to_string(),
                        })
                    }
                };
                let value = parse_rational(text).map_err(|reason| Error::UnparsableNumber {
                    row: r + 1,
                    col: c + 1,
                    text: text.clone(),
                    reason,
                })?;
                if value < Rational::zero() {
                    return Err(Error::NegativeEntry { row: r + 1, col: c + 1, value });
                }
                row.push(value);
            }
            rows.push(row);
        }
        let mut matrix = ChannelMatrix::new(rows)?;
        if let Some(k_val) = obj.get("K") {
            let declared = k_val.as_u64().ok_or_else(|| Error::InvalidNetwork {
                reason: "\"K\" must be a positive integer".to_string(),
            })?;
            if declared != k as u64 {
                return Err(Error::InvalidNetwork {
                    reason: format!("declared K = {declared} but alpha is {k}×{k}"),
                });
            }
        }
        if let Some(name_val) = obj.get("name") {
            let name = name_val.as_str().ok_or_else(|| Error::InvalidNetwork {
                reason: "\"name\" must be a string".to_string(),
            })?;
            matrix = matrix.with_name(name);
        }
        Ok(matrix)
    }

    /// Emits the canonical network file format.
    pub fn to_json(&self) -> Value {
        let alpha: Vec<Vec<String>> = self
            .alpha
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        match &self.name {
            Some(name) => json!({"K": self.k(), "alpha": alpha, "name": name}),
            None => json!({"K": self.k(), "alpha": alpha}),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::rational::{int, rat};

    fn matrix(entries: &[&[(i64, i64)]]) -> ChannelMatrix {
        ChannelMatrix::new(
            entries
                .iter()
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn parses_the_halfcross_example() {
        let m = ChannelMatrix::from_json_bytes(br#"{"alpha":[["1","1/2"],["1/2","1"]]}"#).unwrap();
        assert_eq!(m.k(), 2);
        assert_eq!(*m.alpha(1, 2), rat(1, 2));
        assert_eq!(*m.alpha(2, 1), rat(1, 2));
    }

    #[test]
    fn parses_degenerate_single_user() {
        let m = ChannelMatrix::from_json_bytes(br#"{"alpha":[["0"]]}"#).unwrap();
        assert_eq!(m.k(), 1);
        assert_eq!(*m.alpha(1, 1), int(0));
    }

    #[test]
    fn reports_parse_failure_position() {
        let err = ChannelMatrix::from_json_bytes(br#"{"alpha":[["1","0.25"],["x","1"]]}"#)
            .unwrap_err();
        match err {
            Error::UnparsableNumber { row, col, .. } => {
                assert_eq!((row, col), (2, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_bare_numbers_and_bad_shapes() {
        assert!(matches!(
            ChannelMatrix::from_json_bytes(br#"{"alpha":[[1]]}"#),
            Err(Error::BareNumber { row: 1, col: 1 })
        ));
        assert!(matches!(
            ChannelMatrix::from_json_bytes(br#"{"alpha":[["1","2"],["3"]]}"#),
            Err(Error::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            ChannelMatrix::from_json_bytes(br#"{"alpha":[["-1"]]}"#),
            Err(Error::NegativeEntry { row: 1, col: 1, .. })
        ));
        assert!(matches!(
            ChannelMatrix::from_json_bytes(br#"{"K":3,"alpha":[["1"]]}"#),
            Err(Error::InvalidNetwork { .. })
        ));
        assert!(ChannelMatrix::from_json_bytes(b"not json").is_err());
    }

    #[test]
    fn network_json_round_trips() {
        let m = generators::fig1_network();
        let bytes = serde_json::to_vec(&m.to_json()).unwrap();
        let back = ChannelMatrix::from_json_bytes(&bytes).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn delta_of_tree_siblings() {
        let m = generators::tree_network(3, rat(1, 1)).unwrap();
        assert_eq!(m.delta(7, 8).unwrap(), rat(1, 8));
        assert_eq!(m.delta(8, 7).unwrap(), rat(1, 8));
        assert_eq!(m.delta(5, 5).unwrap(), int(0));
    }

    #[test]
    fn delta_of_fig1() {
        let m = generators::fig1_network();
        assert_eq!(m.delta(1, 2).unwrap(), rat(3, 2));
        assert!(matches!(m.delta(0, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(m.delta(1, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn fig1_is_tin() {
        let report = generators::fig1_network().classify();
        assert!(report.in_tin && report.in_ctin && report.in_sls);
        assert!(!report.in_strict_sls, "Fig-1 sits on the TIN boundary");
        assert!(report.violations.iter().all(|v| v.regime == Regime::StrictSls));
    }

    #[test]
    fn cyclic_network_is_ctin_but_not_tin() {
        let m = generators::ctin_cyclic_network(3).unwrap();
        let report = m.classify();
        assert!(!report.in_tin);
        assert!(report.in_ctin);
        let witness = report.violation(Regime::Tin).unwrap();
        assert_eq!(witness.indices, (1, 3, 2));
        assert_eq!(witness.lhs, int(3));
        assert_eq!(witness.rhs, int(4));
    }

    #[test]
    fn all_ones_network_is_sls_but_not_ctin() {
        let m = matrix(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let report = m.classify();
        assert!(report.in_sls);
        assert!(!report.in_ctin);
        assert!(report.violation(Regime::Ctin).is_some());
    }

    #[test]
    fn single_user_belongs_to_every_regime() {
        let m = matrix(&[&[(0, 1)]]);
        let report = m.classify();
        assert!(report.in_tin && report.in_ctin && report.in_sls && report.in_strict_sls);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn classify_is_pure() {
        let bytes = br#"{"alpha":[["2","1/5","1"],["1/2","1","1/2"],["1/10","1/2","3/2"]]}"#;
        let a = ChannelMatrix::from_json_bytes(bytes).unwrap().classify();
        let b = ChannelMatrix::from_json_bytes(bytes).unwrap().classify();
        assert_eq!(a, b);
    }
}
