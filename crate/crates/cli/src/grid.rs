//! Coverage grid over `n = s^2` and `m`: which cells have a certified initial
//! degree, and (optionally) whether the oracle agrees.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use fatpoints_core::certify::{best_certified_t, mainthm_parameters};
use fatpoints_core::conjecture::conjectured_alpha;
use fatpoints_core::oracle::{alpha_scan_bound, cell_seed, with_reseeds, FatPointSample};

pub const MIN_S: i64 = 4;
pub const MAX_S: i64 = 7;
pub const MAX_M: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Covered by the square-count theorem.
    TheoremCertified,
    /// The reduction with `d = s - 1`, `r = s(s - 1)` certifies the
    /// conjectured initial degree, which the condition count bounds from
    /// above.
    AlgorithmCertified,
    OracleConfirmed,
    OracleMismatch,
    OutOfRange,
}

impl CellStatus {
    pub const ALL: [CellStatus; 5] = [
        CellStatus::TheoremCertified,
        CellStatus::AlgorithmCertified,
        CellStatus::OracleConfirmed,
        CellStatus::OracleMismatch,
        CellStatus::OutOfRange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::TheoremCertified => "theorem_certified",
            CellStatus::AlgorithmCertified => "algorithm_certified",
            CellStatus::OracleConfirmed => "oracle_confirmed",
            CellStatus::OracleMismatch => "oracle_mismatch",
            CellStatus::OutOfRange => "out_of_range",
        }
    }

    fn color(self) -> &'static str {
        match self {
            CellStatus::TheoremCertified => "#1b9e77",
            CellStatus::AlgorithmCertified => "#7570b3",
            CellStatus::OracleConfirmed => "#66a61e",
            CellStatus::OracleMismatch => "#d95f02",
            CellStatus::OutOfRange => "#d9d9d9",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridCell {
    pub n: i64,
    pub m: i64,
    pub status: CellStatus,
    pub predicted_alpha: Option<i64>,
    pub oracle_alpha: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    pub s_min: i64,
    pub s_max: i64,
    pub m_max: i64,
    pub seed: u64,
    pub prime: u64,
    pub with_oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridError {
    Range(String),
    Compute(fatpoints_core::Error),
}

impl std::fmt::Display for GridError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridError::Range(msg) => f.write_str(msg),
            GridError::Compute(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for GridError {}

impl From<fatpoints_core::Error> for GridError {
    fn from(err: fatpoints_core::Error) -> Self {
        GridError::Compute(err)
    }
}

impl GridConfig {
    fn validate(&self) -> Result<(), GridError> {
        let s_ok = |s: i64| (MIN_S..=MAX_S).contains(&s);
        if !s_ok(self.s_min) || !s_ok(self.s_max) {
            return Err(GridError::Range(format!(
                "s must lie in {MIN_S}..={MAX_S}, got {}..{}",
                self.s_min, self.s_max
            )));
        }
        if !(0..=MAX_M).contains(&self.m_max) {
            return Err(GridError::Range(format!(
                "m-max must lie in 0..={MAX_M}, got {}",
                self.m_max
            )));
        }
        Ok(())
    }

    /// Cells in `(n, m)` order; empty when `s_min > s_max` or `m_max = 0`.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        (self.s_min..=self.s_max)
            .flat_map(|s| (1..=self.m_max).map(move |m| (s * s, m)))
            .collect()
    }
}

/// Status of one cell; reproducible from the core operations alone.
pub fn compute_cell(n: i64, m: i64, config: &GridConfig) -> Result<GridCell, GridError> {
    let s = n.isqrt();
    let theorem = mainthm_parameters(n, m);
    let conjectured = conjectured_alpha(n, m)?;

    let (mut status, predicted_alpha) = if theorem.applicable {
        (CellStatus::TheoremCertified, theorem.predicted_alpha)
    } else {
        let best = best_certified_t(n, m, s - 1, s * (s - 1))?;
        if best.map(|t| t + 1) == Some(conjectured) {
            (CellStatus::AlgorithmCertified, Some(conjectured))
        } else {
            (CellStatus::OutOfRange, Some(conjectured))
        }
    };

    let mut oracle_alpha = None;
    if config.with_oracle {
        let (nu, mu) = (n as usize, m as u32);
        let target = predicted_alpha.unwrap_or(conjectured);
        let outcome = with_reseeds(cell_seed(config.seed, nu, mu, 0), |seed| {
            let alpha = FatPointSample::new(nu, mu, config.prime, seed)?
                .alpha(alpha_scan_bound(nu, mu))?;
            Ok((alpha, i64::from(alpha) == target))
        })?;
        oracle_alpha = Some(outcome.value);
        if !outcome.matched {
            status = CellStatus::OracleMismatch;
        } else if status == CellStatus::OutOfRange {
            status = CellStatus::OracleConfirmed;
        }
    }

    Ok(GridCell {
        n,
        m,
        status,
        predicted_alpha,
        oracle_alpha,
    })
}

/// Evaluates every cell on the rayon pool; output order is `(n, m)`.
pub fn compute_grid(config: &GridConfig) -> Result<Vec<GridCell>, GridError> {
    config.validate()?;
    config
        .cells()
        .into_par_iter()
        .map(|(n, m)| compute_cell(n, m, config))
        .collect()
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(cells: &[GridCell]) -> String {
    let mut out = String::from("n,m,status,predicted_alpha,oracle_alpha\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            c.n,
            c.m,
            c.status.as_str(),
            opt(c.predicted_alpha),
            opt(c.oracle_alpha)
        );
    }
    out
}

const CELL: i64 = 28;
const LEFT: i64 = 60;
const TOP: i64 = 40;

/// Static SVG: one rect per cell (columns `m`, rows `n`) and a legend.
pub fn to_svg(cells: &[GridCell], config: &GridConfig) -> String {
    let rows: Vec<i64> = (config.s_min..=config.s_max).map(|s| s * s).collect();
    let cols = config.m_max.max(0);
    let legend_top = TOP + rows.len() as i64 * CELL + 30;
    let width = (LEFT + cols * CELL + 20).max(320);
    let height = legend_top + CellStatus::ALL.len() as i64 * 20 + 10;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<title>Initial degree coverage for n = s^2 points of multiplicity m</title>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT}" y="20" font-family="sans-serif" font-size="13">multiplicity m (columns) by n = s^2 (rows)</text>"#
    );
    for m in 1..=cols {
        let x = LEFT + (m - 1) * CELL + CELL / 2;
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="10" text-anchor="middle">{m}</text>"#,
            TOP - 4
        );
    }
    for (row, n) in rows.iter().enumerate() {
        let y = TOP + row as i64 * CELL + CELL / 2 + 4;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="end">n={n}</text>"#,
            LEFT - 6
        );
    }
    for c in cells {
        let Some(row) = rows.iter().position(|&n| n == c.n) else {
            continue;
        };
        let x = LEFT + (c.m - 1) * CELL;
        let y = TOP + row as i64 * CELL;
        let _ = writeln!(
            svg,
            r##"<rect x="{x}" y="{y}" width="{w}" height="{w}" fill="{fill}" stroke="#ffffff"><title>n={n} m={m}: {status}</title></rect>"##,
            w = CELL,
            fill = c.status.color(),
            n = c.n,
            m = c.m,
            status = c.status.as_str()
        );
    }
    for (i, status) in CellStatus::ALL.iter().enumerate() {
        let y = legend_top + i as i64 * 20;
        let _ = writeln!(
            svg,
            r#"<rect x="{LEFT}" y="{y}" width="14" height="14" fill="{}"/><text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            status.color(),
            LEFT + 20,
            y + 12,
            status.as_str()
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(s_min: i64, s_max: i64, m_max: i64) -> GridConfig {
        GridConfig {
            s_min,
            s_max,
            m_max,
            seed: 7,
            prime: 65521,
            with_oracle: false,
        }
    }

    fn statuses(cells: &[GridCell]) -> Vec<(i64, &'static str)> {
        cells.iter().map(|c| (c.m, c.status.as_str())).collect()
    }

    #[test]
    fn theorem_cells_for_s4() {
        let cells = compute_grid(&config(4, 4, 5)).unwrap();
        assert_eq!(
            statuses(&cells),
            vec![
                (1, "theorem_certified"),
                (2, "theorem_certified"),
                (3, "out_of_range"),
                (4, "theorem_certified"),
                (5, "theorem_certified"),
            ]
        );
        assert_eq!(cells[1].predicted_alpha, Some(9));
    }

    #[test]
    fn theorem_cells_for_s5() {
        let cells = compute_grid(&config(5, 5, 5)).unwrap();
        assert_eq!(
            statuses(&cells),
            vec![
                (1, "theorem_certified"),
                (2, "theorem_certified"),
                (3, "theorem_certified"),
                (4, "out_of_range"),
                (5, "theorem_certified"),
            ]
        );
    }

    #[test]
    fn empty_ranges() {
        let cells = compute_grid(&config(5, 4, 9)).unwrap();
        assert!(cells.is_empty());
        assert_eq!(to_csv(&cells), "n,m,status,predicted_alpha,oracle_alpha\n");
        assert!(compute_grid(&config(4, 4, 0)).unwrap().is_empty());
    }

    #[test]
    fn range_validation() {
        assert!(compute_grid(&config(3, 4, 5)).is_err());
        assert!(compute_grid(&config(4, 8, 5)).is_err());
        assert!(compute_grid(&config(4, 4, 21)).is_err());
    }

    #[test]
    fn oracle_cells() {
        let cfg = GridConfig {
            with_oracle: true,
            ..config(4, 4, 3)
        };
        let cells = compute_grid(&cfg).unwrap();
        assert_eq!(cells[0].oracle_alpha, Some(5));
        assert_eq!(cells[1].oracle_alpha, Some(9));
        assert_eq!(cells[2].status, CellStatus::OracleConfirmed);
        assert_eq!(cells[2].oracle_alpha, Some(13));
        for c in &cells {
            if c.status == CellStatus::OracleConfirmed {
                assert_eq!(c.oracle_alpha.map(i64::from), c.predicted_alpha);
            }
        }
    }

    #[test]
    fn svg_shape() {
        let cfg = config(4, 5, 3);
        let cells = compute_grid(&cfg).unwrap();
        let svg = to_svg(&cells, &cfg);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<script"));
        // 6 cells + 5 legend swatches
        assert_eq!(svg.matches("<rect").count(), 11);
        for status in CellStatus::ALL {
            assert!(svg.contains(status.as_str()));
        }
    }
}
