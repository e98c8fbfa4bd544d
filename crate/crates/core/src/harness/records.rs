//! Line-delimited output records.

use serde::{Deserialize, Serialize};

use crate::audit::{AuditReport, ExceptionalClassSet};
use crate::fraction::ReducedFraction;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodFactor {
    pub p: u64,
    /// Largest power of `p` strictly below `m`.
    pub power: u64,
}

/// Every record the CLI emits; one JSON object per line, tagged by `type`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Residue {
        n: u64,
        k: u64,
        m: u64,
        residue: u64,
    },
    Census {
        n: u64,
        k: u64,
        counts: Vec<u64>,
    },
    Conj1Report {
        #[serde(flatten)]
        report: AuditReport,
    },
    Conj2Report {
        exceptional: ExceptionalClassSet,
        #[serde(flatten)]
        report: AuditReport,
    },
    Conj2Point {
        n: u64,
        p: u64,
        exceptional: bool,
        predicted: ReducedFraction,
        observed: ReducedFraction,
    },
    Frac {
        n: u64,
        m: u64,
        fraction: ReducedFraction,
    },
    Period {
        m: u64,
        frac_period: u64,
        /// Lower index `k = m - 1` of the underlying `C(n-1, k) mod m`.
        k: u64,
        factors: Vec<PeriodFactor>,
    },
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn csv_header(&self) -> Option<String> {
        match self {
            Record::Residue { .. } => Some("n,k,m,residue".into()),
            Record::Census { k, .. } => {
                let cols: Vec<String> = (0..*k).map(|r| format!("r{r}")).collect();
                Some(format!("n,k,{}", cols.join(",")))
            }
            Record::Frac { .. } => Some("n,m,fraction".into()),
            _ => None,
        }
    }

    /// CSV row for the tabular record types; `None` for reports.
    pub fn to_csv(&self) -> Option<String> {
        match self {
            Record::Residue { n, k, m, residue } => Some(format!("{n},{k},{m},{residue}")),
            Record::Census { n, k, counts } => {
                let cols: Vec<String> = counts.iter().map(u64::to_string).collect();
                Some(format!("{n},{k},{}", cols.join(",")))
            }
            Record::Frac { n, m, fraction } => Some(format!("{n},{m},{fraction}")),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{conj1_scan, conj2_exceptional_set, conj2_verify};
    use crate::fraction::frac;

    #[test]
    fn every_record_type_round_trips() {
        let records = vec![
            Record::Residue {
                n: 6,
                k: 4,
                m: 2,
                residue: 3,
            },
            Record::Census {
                n: 0,
                k: 2,
                counts: vec![0, 1],
            },
            Record::Conj1Report {
                report: conj1_scan(0, 20),
            },
            Record::Conj2Report {
                exceptional: conj2_exceptional_set(3).unwrap(),
                report: conj2_verify(3).unwrap(),
            },
            Record::Conj2Point {
                n: 6,
                p: 3,
                exceptional: true,
                predicted: frac(1, 6).unwrap(),
                observed: frac(1, 6).unwrap(),
            },
            Record::Frac {
                n: 4,
                m: 4,
                fraction: frac(1, 4).unwrap(),
            },
            Record::Period {
                m: 6,
                frac_period: 72,
                k: 5,
                factors: vec![PeriodFactor { p: 2, power: 4 }],
            },
        ];
        for r in records {
            let line = r.to_line();
            assert!(!line.contains('\n'));
            let mut back: Record = serde_json::from_str(&line).unwrap();
            // elapsed is not serialized
            if let (Record::Conj1Report { report: a }, Record::Conj1Report { report: b })
            | (Record::Conj2Report { report: a, .. }, Record::Conj2Report { report: b, .. }) =
                (&r, &mut back)
            {
                b.elapsed = a.elapsed;
            }
            assert_eq!(back, r);
        }
    }

    #[test]
    fn fraction_field_is_num_over_den() {
        let line = Record::Frac {
            n: 9,
            m: 6,
            fraction: frac(1, 3).unwrap(),
        }
        .to_line();
        assert_eq!(line, r#"{"type":"frac","n":9,"m":6,"fraction":"1/3"}"#);
    }

    #[test]
    fn csv_rows() {
        let c = Record::Census {
            n: 2,
            k: 3,
            counts: vec![0, 2, 1],
        };
        assert_eq!(c.csv_header().unwrap(), "n,k,r0,r1,r2");
        assert_eq!(c.to_csv().unwrap(), "2,3,0,2,1");
    }
}
