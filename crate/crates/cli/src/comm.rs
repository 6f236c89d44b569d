//! `comm`: closed-form per-node counts, reductions and frontier verdicts.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use admm_split::comm::{efficiency_report, format_tenths, ratio, reduction_tenths, Verdict};
use admm_split::{per_node_elements, Scheme};
use clap::Args;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// A single value `7` or an inclusive range `1..20` (`1..=20` also works).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    fn values(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    fn is_single(&self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("'{s}' is not a count or a range like 1..20"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo == 0 || hi < lo {
            return Err(format!(
                "'{s}' must be a positive count or a non-empty range"
            ));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommArgs {
    /// Number of unknowns N_p.
    #[arg(long)]
    pub np: u64,
    /// Number of measurements N_m.
    #[arg(long)]
    pub nm: u64,
    /// Row divisions M, or a range such as 1..8.
    #[arg(long, default_value = "1")]
    pub m: Span,
    /// Column divisions N, or a range such as 1..20.
    #[arg(long, default_value = "1")]
    pub n: Span,
    /// Also write one CSV row per (M, N) point.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

/// Thousands separators: `45000` becomes `45,000`.
pub fn group_thousands(x: u64) -> String {
    let digits = x.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// All three verdicts at one point; hybrid entries are `None` when the grid
/// does not divide the problem.
struct Point {
    m: u64,
    n: u64,
    consensus: u64,
    sectioning: u64,
    hybrid: Option<u64>,
    sec_vs_con: Verdict,
    hyb_vs_con: Option<Verdict>,
    hyb_vs_sec: Option<Verdict>,
}

fn evaluate(np: u64, nm: u64, m: u64, n: u64) -> CliResult<Point> {
    let consensus = per_node_elements(Scheme::Consensus, np, nm, m, n)?;
    let sectioning = per_node_elements(Scheme::Sectioning, np, nm, m, n)?;
    let r = ratio(np, nm);
    let sec_vs_con = Verdict {
        by_count: sectioning < consensus,
        by_inequality: admm_split::comm::frontier_sectioning_vs_consensus(r, n),
        inequality_lhs: n as f64,
        inequality_rhs: 2.0 * r,
    };
    let (hybrid, hyb_vs_con, hyb_vs_sec) = match efficiency_report(np, nm, m, n) {
        Ok(rep) => (
            Some(rep.hybrid),
            Some(rep.hybrid_vs_consensus),
            Some(rep.hybrid_vs_sectioning),
        ),
        Err(admm_split::Error::Partition(_)) => (None, None, None),
        Err(e) => return Err(e.into()),
    };
    Ok(Point {
        m,
        n,
        consensus,
        sectioning,
        hybrid,
        sec_vs_con,
        hyb_vs_con,
        hyb_vs_sec,
    })
}

fn verdict_line(out: &mut String, label: &str, bound: &str, v: &Verdict) {
    let _ = write!(
        out,
        "{label}: by count {}, by inequality {bound} ({:.4} vs {:.4}) {}",
        yes_no(v.by_count),
        v.inequality_lhs,
        v.inequality_rhs,
        yes_no(v.by_inequality)
    );
    if !v.agrees() {
        out.push_str("  [DISAGREE: the count is authoritative]");
    }
    out.push('\n');
}

fn single_report(np: u64, nm: u64, p: &Point) -> CliResult<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "N_p = {}, N_m = {}, M = {}, N = {}, R = N_p/N_m = {:.4}",
        group_thousands(np),
        group_thousands(nm),
        p.m,
        p.n,
        ratio(np, nm)
    );
    out.push('\n');
    let _ = writeln!(
        out,
        "{:<12}{:>22}{:>12}",
        "method", "elements/node/iter", "reduction"
    );
    for (scheme, count) in [
        (Scheme::Consensus, Some(p.consensus)),
        (Scheme::Sectioning, Some(p.sectioning)),
        (Scheme::Hybrid, p.hybrid),
    ] {
        match count {
            Some(c) => {
                let red = reduction_tenths(scheme, np, nm, p.m, p.n)?;
                let _ = writeln!(
                    out,
                    "{:<12}{:>22}{:>12}",
                    scheme.name(),
                    group_thousands(c),
                    format_tenths(red)
                );
            }
            None => {
                let _ = writeln!(out, "{:<12}{:>22}{:>12}", scheme.name(), "n/a", "n/a");
            }
        }
    }
    if p.hybrid.is_none() {
        out.push_str("hybrid needs M | N_m and N | N_p\n");
    }
    out.push('\n');
    verdict_line(
        &mut out,
        "sectioning beats consensus",
        "1 < N < 2R",
        &p.sec_vs_con,
    );
    if let Some(v) = &p.hyb_vs_con {
        verdict_line(&mut out, "hybrid beats consensus", "N^2/(2M(N-1)) < R", v);
    }
    if let Some(v) = &p.hyb_vs_sec {
        verdict_line(&mut out, "hybrid beats sectioning", "N^2(M-1)/(2M) < R", v);
    }
    if p.n == 1 {
        out.push_str(
            "note: with N = 1 hybrid is consensus-degenerate (same iterates); its count still \
             includes the N_m/M estimated-data broadcast\n",
        );
    }
    if p.m == 1 && p.n > 1 {
        out.push_str(
            "note: with M = 1 hybrid is sectioning-degenerate (same iterates); its count adds \
             the 2 N_p/N exchange with the segment's central node\n",
        );
    }
    Ok(out)
}

fn mark(v: &Verdict) -> String {
    format!(
        "{}{}",
        yes_no(v.by_count),
        if v.agrees() { "" } else { "*" }
    )
}

fn sweep_report(np: u64, nm: u64, points: &[Point]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "N_p = {}, N_m = {}, R = {:.4}, 2R = {:.2}",
        group_thousands(np),
        group_thousands(nm),
        ratio(np, nm),
        2.0 * ratio(np, nm)
    );
    let _ = writeln!(
        out,
        "{:>4}{:>5}{:>14}{:>14}{:>14}{:>9}{:>9}{:>9}",
        "M", "N", "consensus", "sectioning", "hybrid", "sec<con", "hyb<con", "hyb<sec"
    );
    let mut disagreements = 0;
    for p in points {
        let opt = |v: &Option<Verdict>| v.as_ref().map_or("n/a".to_string(), mark);
        disagreements += [Some(p.sec_vs_con), p.hyb_vs_con, p.hyb_vs_sec]
            .iter()
            .flatten()
            .filter(|v| !v.agrees())
            .count();
        let _ = writeln!(
            out,
            "{:>4}{:>5}{:>14}{:>14}{:>14}{:>9}{:>9}{:>9}",
            p.m,
            p.n,
            group_thousands(p.consensus),
            group_thousands(p.sectioning),
            p.hybrid.map_or("n/a".to_string(), group_thousands),
            mark(&p.sec_vs_con),
            opt(&p.hyb_vs_con),
            opt(&p.hyb_vs_sec)
        );
    }
    let _ = writeln!(
        out,
        "verdicts are by exact count; * marks {disagreements} verdict(s) where the closed-form inequality disagrees"
    );
    out
}

#[derive(Serialize)]
struct CsvRow {
    np: u64,
    nm: u64,
    m: u64,
    n: u64,
    consensus: u64,
    sectioning: u64,
    hybrid: Option<u64>,
    sectioning_reduction_pct: f64,
    hybrid_reduction_pct: Option<f64>,
    sectioning_beats_consensus: bool,
    sectioning_beats_consensus_inequality: bool,
    hybrid_beats_consensus: Option<bool>,
    hybrid_beats_consensus_inequality: Option<bool>,
    hybrid_beats_sectioning: Option<bool>,
    hybrid_beats_sectioning_inequality: Option<bool>,
}

fn csv_row(np: u64, nm: u64, p: &Point) -> CliResult<CsvRow> {
    let pct = |s| reduction_tenths(s, np, nm, p.m, p.n).map(|t| t as f64 / 10.0);
    Ok(CsvRow {
        np,
        nm,
        m: p.m,
        n: p.n,
        consensus: p.consensus,
        sectioning: p.sectioning,
        hybrid: p.hybrid,
        sectioning_reduction_pct: pct(Scheme::Sectioning)?,
        hybrid_reduction_pct: p.hybrid.map(|_| pct(Scheme::Hybrid)).transpose()?,
        sectioning_beats_consensus: p.sec_vs_con.by_count,
        sectioning_beats_consensus_inequality: p.sec_vs_con.by_inequality,
        hybrid_beats_consensus: p.hyb_vs_con.map(|v| v.by_count),
        hybrid_beats_consensus_inequality: p.hyb_vs_con.map(|v| v.by_inequality),
        hybrid_beats_sectioning: p.hyb_vs_sec.map(|v| v.by_count),
        hybrid_beats_sectioning_inequality: p.hyb_vs_sec.map(|v| v.by_inequality),
    })
}

pub fn run(args: &CommArgs) -> CliResult<String> {
    if args.np == 0 || args.nm == 0 {
        return Err(CliError::Usage("--np and --nm must be positive".into()));
    }
    let mut points = Vec::new();
    for m in args.m.values() {
        for n in args.n.values() {
            points.push(evaluate(args.np, args.nm, m, n)?);
        }
    }
    if let Some(path) = &args.csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
        for p in &points {
            w.serialize(csv_row(args.np, args.nm, p)?)
                .map_err(|e| CliError::io(path, e))?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    if args.m.is_single() && args.n.is_single() {
        single_report(args.np, args.nm, &points[0])
    } else {
        Ok(sweep_report(args.np, args.nm, &points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thousands() {
        assert_eq!(group_thousands(0), "0");
        assert_eq!(group_thousands(999), "999");
        assert_eq!(group_thousands(1000), "1,000");
        assert_eq!(group_thousands(45_000), "45,000");
        assert_eq!(group_thousands(1_234_567), "1,234,567");
    }

    #[test]
    fn spans() {
        assert_eq!("7".parse::<Span>().unwrap(), Span { lo: 7, hi: 7 });
        assert_eq!("1..20".parse::<Span>().unwrap(), Span { lo: 1, hi: 20 });
        assert_eq!("2..=4".parse::<Span>().unwrap(), Span { lo: 2, hi: 4 });
        assert!("0".parse::<Span>().is_err());
        assert!("5..2".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
    }
}
