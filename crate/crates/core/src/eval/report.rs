use std::fmt::Write;

use super::experiment::{ExperimentSummary, Stat};
use super::EvalError;

/// `"mean (std)"` with two decimals.
pub fn format_cell(mean: f64, std: f64) -> String {
    format!("{mean:.2} ({std:.2})")
}

fn percent_cell(stat: &Stat) -> String {
    format_cell(100.0 * stat.mean, 100.0 * stat.std)
}

fn render_metric(out: &mut String, summary: &ExperimentSummary, title: &str, metric: fn(&super::SystemSummary) -> &Stat) {
    let header: Vec<String> = std::iter::once("system".to_string())
        .chain(summary.groups.iter().map(|g| g.name.clone()))
        .collect();
    let mut rows = vec![header];
    let systems: Vec<&str> = summary
        .groups
        .first()
        .map(|g| g.systems.iter().map(|s| s.name.as_str()).collect())
        .unwrap_or_default();
    for name in systems {
        let mut row = vec![name.to_string()];
        for g in &summary.groups {
            row.push(
                g.systems
                    .iter()
                    .find(|s| s.name == name)
                    .map(|s| percent_cell(metric(s)))
                    .unwrap_or_else(|| "-".into()),
            );
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let _ = writeln!(out, "{title}");
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, w))| if c == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            let _ = writeln!(out, "|-{}-|", rule.join("-|-"));
        }
    }
}

/// Accuracy and weighted-accuracy tables in percent, systems as rows and outlets as columns.
pub fn render_summary(summary: &ExperimentSummary) -> String {
    let c = &summary.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "## {} labels, subset {}, {} repeats, seed {}{}",
        c.label_space,
        c.subset,
        c.repeats,
        c.seed,
        if c.merge_outlets { ", outlets merged" } else { "" }
    );
    let _ = writeln!(out);
    render_metric(&mut out, summary, "Accuracy (%)", |s| &s.accuracy);
    let _ = writeln!(out);
    render_metric(&mut out, summary, &format!("Weighted accuracy (%), D = {}", summary.max_distance), |s| &s.wacc);
    out
}

/// One section per summary; all summaries must share a label space.
pub fn render_report(summaries: &[ExperimentSummary]) -> Result<String, EvalError> {
    let first = summaries
        .first()
        .ok_or_else(|| EvalError::InvalidConfig("no summaries to report".into()))?;
    if let Some(other) = summaries.iter().find(|s| s.config.label_space != first.config.label_space) {
        return Err(EvalError::IncompatibleSummaries(format!(
            "label spaces differ: {} vs {}",
            first.config.label_space, other.config.label_space
        )));
    }
    Ok(summaries.iter().map(render_summary).collect::<Vec<_>>().join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::experiment::{ExperimentConfig, GroupSummary, LabelSpace, SystemSummary};

    fn summary(label_space: LabelSpace) -> ExperimentSummary {
        let stat = Stat::from_values(vec![0.7458, 0.7888]);
        ExperimentSummary {
            config: ExperimentConfig {
                label_space,
                ..Default::default()
            },
            classes: label_space.classes(),
            max_distance: label_space.classes() - 1,
            groups: ["TG", "WSJ"]
                .iter()
                .map(|name| GroupSummary {
                    name: name.to_string(),
                    examples: 100,
                    splits: vec![],
                    systems: vec![SystemSummary {
                        name: "softmax-ordinal".into(),
                        accuracy: stat.clone(),
                        wacc: stat.clone(),
                        confusion: vec![],
                    }],
                })
                .collect(),
        }
    }

    #[test]
    fn cell_format() {
        assert_eq!(format_cell(76.73, 2.15), "76.73 (2.15)");
        assert_eq!(format_cell(100.0, 0.0), "100.00 (0.00)");
    }

    #[test]
    fn table_layout() {
        let text = render_report(&[summary(LabelSpace::Multiclass)]).unwrap();
        assert!(text.contains("| system          |           TG |          WSJ |"), "{text}");
        assert!(text.contains("| softmax-ordinal | 76.73 (2.15) | 76.73 (2.15) |"), "{text}");
        assert_eq!(text.matches("Accuracy (%)").count(), 1);
        assert!(text.contains("D = 3"));
    }

    #[test]
    fn mixed_label_spaces_refused() {
        assert!(matches!(
            render_report(&[summary(LabelSpace::Multiclass), summary(LabelSpace::Binary)]),
            Err(EvalError::IncompatibleSummaries(_))
        ));
        assert_eq!(render_report(&[summary(LabelSpace::Binary), summary(LabelSpace::Binary)]).unwrap().matches("## ").count(), 2);
    }
}
