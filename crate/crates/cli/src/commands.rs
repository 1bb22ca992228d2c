use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sorder_core::enumeration::{Backend, EnumerationConfig, TreeClassQuery};
use sorder_core::num_bigint::BigInt;
use sorder_core::{
    ascend_steps, cmp_s, first_difference, free_trees_with, last_k, rank_catalog,
    records_from_catalog, theorem_cells, to_graph6, trees_with_bipartition_with, verify_theorem,
    walk_moments, walk_moments_to, write_catalog, Family, Member, MomentSequence, OpKind,
    SOrdering, Tree, VerificationReport,
};

use crate::io::{read_single, read_trees, sink, write_json_line};
use crate::{Command, FamilyArg, Format, GlobalArgs, Outcome};

pub fn run(command: Command, global: &GlobalArgs) -> Result<Outcome> {
    let config = EnumerationConfig {
        cap: global.cap,
        backend: if global.reference {
            Backend::Reference
        } else {
            Backend::Successor
        },
    };
    let mut out = sink(global.out.as_ref())?;
    let outcome = match command {
        Command::Enumerate { n, p, q } => enumerate(&mut out, global.format, &config, n, p.zip(q)),
        Command::Moments { input, max_power } => {
            moments(&mut out, global.format, input.as_deref(), max_power)
        }
        Command::Rank { input, last } => rank(&mut out, global.format, input.as_deref(), last),
        Command::Family { family, p, q, k, l } => {
            build_family(&mut out, global.format, family, p, q, k, l)
        }
        Command::Chain { input } => chain(&mut out, global.format, input.as_deref()),
        Command::Verify {
            p,
            q,
            all_upto,
            summary,
            timing,
        } => {
            let cells = match (all_upto, p.zip(q)) {
                (Some(max_n), _) => theorem_cells(max_n),
                (None, Some(cell)) => vec![cell],
                (None, None) => bail!("verify needs --p and --q, or --all-upto"),
            };
            verify(
                &mut out,
                global.format,
                &config,
                &cells,
                summary.as_deref(),
                timing,
            )
        }
        Command::Compare { a, b } => compare(&mut out, global.format, &a, &b),
    }?;
    out.flush()?;
    Ok(outcome)
}

fn no_graph6(format: Format, what: &str) -> Result<()> {
    if format == Format::Graph6 {
        bail!("graph6 output does not apply to {what}");
    }
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn join_moments(m: &MomentSequence) -> String {
    m.to_decimal_strings().join(" ")
}

#[derive(Serialize)]
struct TreeRow {
    graph6: String,
    n: usize,
    p: usize,
    q: usize,
    canonical_code: String,
}

impl TreeRow {
    fn of(t: &Tree) -> TreeRow {
        let (p, q) = t.bipartition().sizes();
        TreeRow {
            graph6: to_graph6(t),
            n: t.n(),
            p,
            q,
            canonical_code: t.canonical_code().to_string(),
        }
    }
}

fn enumerate(
    out: &mut dyn Write,
    format: Option<Format>,
    config: &EnumerationConfig,
    n: Option<usize>,
    class: Option<(usize, usize)>,
) -> Result<Outcome> {
    let trees = match (n, class) {
        (_, Some((p, q))) => {
            let query = TreeClassQuery::new(p, q)?;
            if n.is_some_and(|n| n != query.n) {
                bail!("--n disagrees with --p + --q");
            }
            trees_with_bipartition_with(&query, config)?
        }
        (Some(n), None) => free_trees_with(n, config)?,
        (None, None) => bail!("enumerate needs --n or --p/--q"),
    };
    match format.unwrap_or(Format::Graph6) {
        Format::Graph6 => {
            for t in &trees {
                writeln!(out, "{}", to_graph6(t))?;
            }
        }
        Format::Json => {
            for t in &trees {
                write_json_line(out, &TreeRow::of(t))?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            for t in &trees {
                w.serialize(TreeRow::of(t))?;
            }
            w.flush()?;
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct MomentRow {
    graph6: String,
    n: usize,
    moments: Vec<String>,
}

fn moments(
    out: &mut dyn Write,
    format: Option<Format>,
    input: Option<&Path>,
    max_power: Option<usize>,
) -> Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    no_graph6(format, "moments")?;
    let trees = read_trees(input)?;
    let rows: Vec<(String, usize, MomentSequence)> = trees
        .iter()
        .map(|t| {
            let m = match max_power {
                Some(k) => walk_moments_to(t, k),
                None => walk_moments(t),
            };
            (to_graph6(t), t.n(), m)
        })
        .collect();
    if format == Format::Json {
        for (graph6, n, m) in rows {
            write_json_line(
                out,
                &MomentRow {
                    graph6,
                    n,
                    moments: m.to_decimal_strings(),
                },
            )?;
        }
    } else {
        let mut w = csv_writer(out);
        w.write_record(["graph6", "n", "moments"])?;
        for (graph6, n, m) in rows {
            w.write_record([graph6, n.to_string(), join_moments(&m)])?;
        }
        w.flush()?;
    }
    Ok(Outcome::Success)
}

fn rank(
    out: &mut dyn Write,
    format: Option<Format>,
    input: Option<&Path>,
    last: Option<usize>,
) -> Result<Outcome> {
    let catalog = rank_catalog(read_trees(input)?)?;
    let mut records = records_from_catalog(&catalog);
    if let Some(k) = last {
        last_k(&catalog, k)?;
        records.drain(..records.len() - k);
    }
    match format.unwrap_or(Format::Json) {
        Format::Json => write_catalog(&mut *out, &records)?,
        Format::Graph6 => {
            for r in &records {
                writeln!(out, "{}", r.graph6)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["rank", "graph6", "moments"])?;
            for r in &records {
                w.write_record([r.rank.to_string(), r.graph6.clone(), r.moments.join(" ")])?;
            }
            w.flush()?;
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct FamilyRow {
    name: String,
    p: usize,
    q: usize,
    k: usize,
    l: usize,
    graph6: String,
}

fn build_family(
    out: &mut dyn Write,
    format: Option<Format>,
    family: FamilyArg,
    p: usize,
    q: usize,
    k: usize,
    l: usize,
) -> Result<Outcome> {
    let family = match family {
        FamilyArg::B => Family::B,
        FamilyArg::D => Family::D,
    };
    let member = Member { family, k, l };
    let tree = member.build(p, q)?;
    if p < 4 {
        eprintln!("note: p = {p} is outside the theorem hypotheses (p >= 4)");
    }
    let row = FamilyRow {
        name: member.to_string(),
        p,
        q,
        k,
        l,
        graph6: to_graph6(&tree),
    };
    match format.unwrap_or(Format::Graph6) {
        Format::Graph6 => writeln!(out, "{}", row.graph6)?,
        Format::Json => write_json_line(out, &row)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.serialize(row)?;
            w.flush()?;
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct SiteRow {
    u: usize,
    v: usize,
    w: usize,
}

#[derive(Serialize)]
struct ChainRow {
    input: usize,
    step: usize,
    operation: Option<&'static str>,
    site: Option<SiteRow>,
    graph6: String,
    s4: String,
    s6: String,
    delta_s4: String,
    delta_s6: String,
}

fn s4_s6(t: &Tree) -> (BigInt, BigInt) {
    let m = walk_moments_to(t, 6);
    (m.values()[4].clone().into(), m.values()[6].clone().into())
}

fn chain(out: &mut dyn Write, format: Option<Format>, input: Option<&Path>) -> Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    let mut csv = (format == Format::Csv).then(Vec::<ChainRow>::new);
    for (index, tree) in read_trees(input)?.iter().enumerate() {
        let steps = match ascend_steps(tree) {
            Ok(steps) => steps,
            Err(e) => {
                eprintln!("input {}: {e}", index + 1);
                return Ok(Outcome::CheckFailed);
            }
        };
        let mut rows = Vec::with_capacity(steps.len() + 1);
        let mut prev = s4_s6(tree);
        let zero = || BigInt::from(0).to_string();
        rows.push(ChainRow {
            input: index + 1,
            step: 0,
            operation: None,
            site: None,
            graph6: to_graph6(tree),
            s4: prev.0.to_string(),
            s6: prev.1.to_string(),
            delta_s4: zero(),
            delta_s6: zero(),
        });
        for (i, step) in steps.iter().enumerate() {
            let cur = s4_s6(&step.tree);
            rows.push(ChainRow {
                input: index + 1,
                step: i + 1,
                operation: Some(match step.kind {
                    OpKind::One => "I",
                    OpKind::Two => "II",
                }),
                site: Some(SiteRow {
                    u: step.site.u,
                    v: step.site.v,
                    w: step.site.w,
                }),
                graph6: to_graph6(&step.tree),
                s4: cur.0.to_string(),
                s6: cur.1.to_string(),
                delta_s4: (&cur.0 - &prev.0).to_string(),
                delta_s6: (&cur.1 - &prev.1).to_string(),
            });
            prev = cur;
        }
        match format {
            Format::Json => {
                for r in &rows {
                    write_json_line(out, r)?;
                }
            }
            Format::Graph6 => {
                if index > 0 {
                    writeln!(out)?;
                }
                for r in &rows {
                    writeln!(out, "{}", r.graph6)?;
                }
            }
            Format::Csv => csv.as_mut().expect("csv rows").extend(rows),
        }
    }
    if let Some(rows) = csv {
        let mut w = csv_writer(out);
        w.write_record([
            "input",
            "step",
            "operation",
            "u",
            "v",
            "w",
            "graph6",
            "s4",
            "s6",
            "delta_s4",
            "delta_s6",
        ])?;
        for r in rows {
            let site = |f: fn(&SiteRow) -> usize| {
                r.site
                    .as_ref()
                    .map(f)
                    .map_or(String::new(), |x| x.to_string())
            };
            w.write_record([
                r.input.to_string(),
                r.step.to_string(),
                r.operation.unwrap_or("").to_string(),
                site(|s| s.u),
                site(|s| s.v),
                site(|s| s.w),
                r.graph6,
                r.s4,
                r.s6,
                r.delta_s4,
                r.delta_s6,
            ])?;
        }
        w.flush()?;
    }
    Ok(Outcome::Success)
}

const SUMMARY_HEADER: [&str; 10] = [
    "p",
    "q",
    "n",
    "case",
    "catalog_size",
    "predicted",
    "actual",
    "matches",
    "strict",
    "passed",
];

fn summary_row(r: &VerificationReport) -> [String; 10] {
    let actual: Vec<String> = r
        .actual_names
        .iter()
        .zip(&r.actual_graph6)
        .map(|(name, g6)| name.clone().unwrap_or_else(|| g6.clone()))
        .collect();
    let matches: String = r
        .position_matches
        .iter()
        .map(|&m| if m { '1' } else { '0' })
        .collect();
    [
        r.p.to_string(),
        r.q.to_string(),
        r.n.to_string(),
        format!("{:?}", r.tag),
        r.catalog_size.to_string(),
        r.predicted.join(" < "),
        actual.join(" < "),
        matches,
        r.strict.to_string(),
        r.passed.to_string(),
    ]
}

fn write_summary(out: &mut dyn Write, reports: &[VerificationReport]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in reports {
        w.write_record(summary_row(r))?;
    }
    w.flush()?;
    Ok(())
}

fn verify(
    out: &mut dyn Write,
    format: Option<Format>,
    config: &EnumerationConfig,
    cells: &[(usize, usize)],
    summary: Option<&Path>,
    timing: bool,
) -> Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    no_graph6(format, "verify")?;
    let mut reports = Vec::with_capacity(cells.len());
    for &(p, q) in cells {
        let mut r =
            verify_theorem(p, q, config).with_context(|| format!("cell (p, q) = ({p}, {q})"))?;
        if !timing {
            r.elapsed_ms = None;
        }
        reports.push(r);
    }
    match format {
        Format::Json => {
            for r in &reports {
                write_json_line(out, r)?;
            }
        }
        _ => write_summary(out, &reports)?,
    }
    if let Some(path) = summary {
        let mut file = sink(Some(&path.to_path_buf()))?;
        write_summary(&mut file, &reports)?;
        file.flush()?;
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("({}, {})", r.p, r.q))
        .collect();
    if failed.is_empty() {
        Ok(Outcome::Success)
    } else {
        eprintln!(
            "{} of {} cell(s) failed: {}",
            failed.len(),
            reports.len(),
            failed.join(" ")
        );
        Ok(Outcome::CheckFailed)
    }
}

#[derive(Serialize)]
struct CompareRow {
    ordering: SOrdering,
    first_difference: Option<usize>,
    /// `S_k(b) - S_k(a)` at the first differing index.
    gap: Option<String>,
}

fn compare(out: &mut dyn Write, format: Option<Format>, a: &Path, b: &Path) -> Result<Outcome> {
    let format = format.unwrap_or(Format::Json);
    no_graph6(format, "compare")?;
    let (ta, tb) = (read_single(a)?, read_single(b)?);
    if ta.n() != tb.n() {
        bail!(
            "trees of different orders ({} and {}) are not comparable",
            ta.n(),
            tb.n()
        );
    }
    let (ma, mb) = (walk_moments(&ta), walk_moments(&tb));
    let ordering = cmp_s(&ma, &mb)?;
    let index = first_difference(&ma, &mb)?;
    let gap = index.map(|k| {
        (BigInt::from(mb.values()[k].clone()) - BigInt::from(ma.values()[k].clone())).to_string()
    });
    let row = CompareRow {
        ordering,
        first_difference: index,
        gap,
    };
    if format == Format::Json {
        write_json_line(out, &row)?;
    } else {
        let mut w = csv_writer(out);
        w.write_record(["ordering", "first_difference", "gap"])?;
        w.write_record([
            format!("{:?}", row.ordering),
            row.first_difference
                .map_or(String::new(), |k| k.to_string()),
            row.gap.unwrap_or_default(),
        ])?;
        w.flush()?;
    }
    Ok(Outcome::Success)
}
