//! Fixed-width text tables.

use std::fmt::Write as _;

use crate::reference::{lookup, REFERENCE_ONLY};
use crate::stats::StatsReport;

const W: usize = 13;

/// Six significant digits in scientific notation.
pub fn sci(v: f64) -> String {
    format!("{v:.5e}")
}

/// Mean/std columns per algorithm; with `reference`, published values for
/// algorithms not implemented here follow, tagged `[ref]`.
pub fn render_summary(report: &StatsReport, reference: bool) -> String {
    let refs: Vec<&str> = if reference {
        REFERENCE_ONLY.iter().copied().filter(|a| report.functions.iter().any(|f| lookup(f, a).is_some())).collect()
    } else {
        Vec::new()
    };
    let mut s = String::new();
    let _ = write!(s, "{:<8}", "fn");
    for a in &report.algorithms {
        let _ = write!(s, " {:>W$} {:>W$}", format!("{a} mean"), format!("{a} std"));
    }
    for a in &refs {
        let _ = write!(s, " {:>W$} {:>W$}", format!("{a}[ref] mean"), format!("{a}[ref] std"));
    }
    s.push('\n');
    for (fi, f) in report.functions.iter().enumerate() {
        let _ = write!(s, "{f:<8}");
        for sm in &report.summaries[fi] {
            let _ = write!(s, " {:>W$} {:>W$}", sci(sm.mean), sci(sm.std));
        }
        for a in &refs {
            match lookup(f, a) {
                Some(e) => {
                    let _ = write!(s, " {:>W$} {:>W$}", sci(e.mean), sci(e.std));
                }
                None => {
                    let _ = write!(s, " {:>W$} {:>W$}", "-", "-");
                }
            }
        }
        s.push('\n');
    }
    s
}

/// Subject-vs-other p-values; empty when there is nothing to compare.
pub fn render_pvalues(report: &StatsReport) -> String {
    let others: Vec<&String> = report.algorithms.iter().filter(|a| **a != report.subject).collect();
    if others.is_empty() || report.comparisons.is_empty() {
        return String::new();
    }
    let mut s = String::new();
    let _ = write!(s, "{:<8}", "fn");
    for o in &others {
        let _ = write!(s, " {:>W$}", format!("{} vs {o}", report.subject));
    }
    s.push('\n');
    for f in &report.functions {
        let _ = write!(s, "{f:<8}");
        for o in &others {
            let cell = report.p_value(f, o).map_or_else(|| "-".to_string(), sci);
            let _ = write!(s, " {cell:>W$}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{comparison_table, ResultGrid};

    #[test]
    fn six_significant_digits() {
        assert_eq!(sci(2.69874e-9), "2.69874e-9");
        assert_eq!(sci(748.5972), "7.48597e2");
    }

    #[test]
    fn reference_columns_are_tagged() {
        let mut g = ResultGrid::new();
        g.entry("leo".into()).or_default().insert("TF1".into(), vec![1.0, 2.0, 3.0]);
        let r = comparison_table(&g, &["leo".into()], &["TF1".into()], "leo").unwrap();
        let plain = render_summary(&r, false);
        assert!(!plain.contains("[ref]"));
        let with = render_summary(&r, true);
        assert!(with.contains("da[ref] mean") && with.contains(&sci(2.85e-18)));
        assert!(render_pvalues(&r).is_empty());
    }
}
