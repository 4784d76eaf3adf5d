//! Text and JSON rendering. Decimal approximations are computed from the
//! exact value by integer long division and appear only in text output.

use lelong_core::chainbound::PathBound;
use lelong_core::coneopt::SharpConstantResult;
use lelong_core::invariants::{InvariantReport, OrdStep};
use lelong_core::{Divisor, Rat, ValidGraph};
use num_bigint::BigInt;
use num_traits::Signed;

use crate::report::{to_line, ReportDoc};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Marker for an undefined quantity in text output.
pub const UNDEFINED: &str = "—";

const SIG_DIGITS: u32 = 6;

/// `x` to six significant digits, rounding half away from zero. Fixed
/// notation for magnitudes in `[1e-4, 1e6)`, scientific otherwise.
pub fn approx(x: &Rat) -> String {
    if x.is_zero() {
        return format!("0.{}", "0".repeat(SIG_DIGITS as usize - 1));
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let (p, q) = (x.numer().abs(), x.denom().clone());
    let ten = BigInt::from(10);

    // 10^e <= p/q < 10^(e+1)
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    let below = |e: i64| -> bool {
        // p/q < 10^e
        if e >= 0 {
            p < &q * ten.pow(e as u32)
        } else {
            &p * ten.pow((-e) as u32) < q
        }
    };
    while below(e) {
        e -= 1;
    }
    while !below(e + 1) {
        e += 1;
    }

    // n = round(p/q * 10^(SIG-1-e))
    let shift = SIG_DIGITS as i64 - 1 - e;
    let (a, b) = if shift >= 0 {
        (&p * ten.pow(shift as u32), q)
    } else {
        (p, &q * ten.pow((-shift) as u32))
    };
    let mut n: BigInt = (BigInt::from(2) * a + &b) / (BigInt::from(2) * b);
    if n == ten.pow(SIG_DIGITS) {
        n /= &ten;
        e += 1;
    }
    let digits = n.to_string();
    let body = if (0..SIG_DIGITS as i64).contains(&e) {
        let (int, frac) = digits.split_at(e as usize + 1);
        if frac.is_empty() {
            int.to_owned()
        } else {
            format!("{int}.{frac}")
        }
    } else if (-4..0).contains(&e) {
        format!("0.{}{digits}", "0".repeat((-e - 1) as usize))
    } else {
        format!("{}.{}e{e}", &digits[..1], &digits[1..])
    };
    format!("{sign}{body}")
}

/// `exact (≈approx)`.
pub fn exact_with_approx(x: &Rat) -> String {
    format!("{x} (≈{})", approx(x))
}

fn vector(xs: &[Rat]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", items.join(", "))
}

fn divisor(d: &Divisor) -> String {
    vector(d.coefficients())
}

/// Rows of cells, left-aligned. A row's last cell never widens its column,
/// so long free-text rows leave the numeric columns compact.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter(|r| c + 1 < r.len())
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                let pad = widths[c].saturating_sub(cell.chars().count()) + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn row(label: &str, exact: String, approx_col: Option<String>) -> Vec<String> {
    let mut r = vec![label.to_owned(), exact];
    if let Some(a) = approx_col {
        r.push(a);
    }
    r
}

fn numeric_row(label: &str, x: &Rat) -> Vec<String> {
    row(label, x.to_string(), Some(format!("(≈{})", approx(x))))
}

fn header() -> Vec<String> {
    row("quantity", "exact".into(), Some("approx (6 s.f.)".into()))
}

pub fn render_report(r: &InvariantReport, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", to_line(&ReportDoc::from(r))),
        Format::Text => {
            let ratio = match &r.ratio {
                Some(x) => numeric_row("ratio", x),
                None => row("ratio", UNDEFINED.into(), None),
            };
            table(&[
                header(),
                numeric_row("slope", &r.slope),
                numeric_row("lelong", &r.lelong),
                numeric_row("multiplicity", &r.multiplicity),
                ratio,
                row("in_cone", yes_no(r.in_cone), None),
                row("slack", vector(&r.slack), None),
            ])
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_owned()
}

/// Text rendering of a sharp-constant result. `rays` is `None` when the
/// enumeration was skipped for capacity reasons.
pub fn render_sharp_text(
    g: &ValidGraph,
    res: &SharpConstantResult,
    rays: Option<&[Divisor]>,
) -> String {
    let mut out = format!("c_sharp = {}\n", exact_with_approx(&res.c_sharp));
    if res.c_sharp == Rat::one() {
        out.push_str("note: equality case: ν = mult·s\n");
    }
    let active: Vec<String> = res.active_constraints.iter().map(|c| c.label(g)).collect();
    out.push_str(&table(&[
        header(),
        numeric_row("optimal ν", &res.optimal_value_nu),
        numeric_row("multiplicity", g.multiplicity()),
        row("extremal", divisor(&res.extremal), None),
        row("active", active.join(", "), None),
        row("certified", yes_no(res.verify(g)), None),
    ]));
    match rays {
        Some(rays) => {
            out.push_str(&format!("extreme rays ({}):\n", rays.len()));
            for r in rays {
                out.push_str(&format!("  {}\n", divisor(r)));
            }
        }
        None => out.push_str("extreme rays: skipped (vertex count exceeds capacity)\n"),
    }
    out
}

pub fn render_path_text(p: &PathBound, global: bool) -> String {
    let mut rows = vec![
        header(),
        row("path", p.path.join(" -> "), None),
        row("factors", vector(&p.factors), None),
        numeric_row("product", &p.product),
    ];
    if global {
        rows.push(numeric_row("global constant", &p.product));
    }
    let mut out = table(&rows);
    out.push_str("note: best effective chain (minimum product over simple paths)\n");
    out
}

pub fn render_rays_text(rays: &[Divisor]) -> String {
    let mut out = format!("{} extreme rays\n", rays.len());
    for r in rays {
        out.push_str(&format!("  {}\n", divisor(r)));
    }
    out
}

pub fn render_ord_text(steps: &[OrdStep]) -> String {
    let mut rows = vec![vec![
        "k".to_owned(),
        "ord_k".into(),
        "ord_k/k".into(),
        "(ord_k+1)/k".into(),
    ]];
    for s in steps {
        rows.push(vec![
            s.k.to_string(),
            s.order.to_string(),
            s.lower.to_string(),
            s.upper.to_string(),
        ]);
    }
    table(&rows)
}

/// One row per sample, then a summary with the largest observed ratio.
pub fn render_samples_text(samples: &[(Divisor, InvariantReport)]) -> String {
    let mut rows = vec![vec![
        "#".to_owned(),
        "divisor".into(),
        "slope".into(),
        "lelong".into(),
        "ratio".into(),
    ]];
    for (k, (d, r)) in samples.iter().enumerate() {
        rows.push(vec![
            k.to_string(),
            divisor(d),
            r.slope.to_string(),
            r.lelong.to_string(),
            r.ratio
                .as_ref()
                .map_or_else(|| UNDEFINED.to_owned(), exact_with_approx),
        ]);
    }
    let mut out = table(&rows);
    out.push_str(&format!(
        "max observed ratio = {}\n",
        max_ratio(samples).map_or_else(|| UNDEFINED.to_owned(), |x| exact_with_approx(&x))
    ));
    out
}

pub fn max_ratio(samples: &[(Divisor, InvariantReport)]) -> Option<Rat> {
    samples.iter().filter_map(|(_, r)| r.ratio.clone()).max()
}
