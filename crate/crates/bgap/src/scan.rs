//! Evaluation of the gap report on every cell of the grid
//! `{0, 1/G, ..., 1}²`.

use std::time::{Duration, Instant};

use bgap_core::functions::is_convex_samples;
use bgap_core::gap::{gap_report, gap_report_float};
use bgap_core::{FloatGapReport, FunctionSpec, GapReport, Mode, Rational, SampleVector};
use rayon::prelude::*;

use crate::error::CliError;
use crate::report::OutputFormat;
use crate::MAX_N;

/// `|gap4|` at or below this counts as equality in float mode.
pub const FLOAT_EQUALITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub n: usize,
    pub function: FunctionSpec,
    pub grid: usize,
    pub mode: Mode,
    /// Unused by the scan itself; kept so every config names its seed.
    pub seed: u64,
    pub format: OutputFormat,
}

impl ScanConfig {
    pub fn new(n: usize, function: FunctionSpec, grid: usize) -> Self {
        ScanConfig {
            n,
            function,
            grid,
            mode: Mode::Exact,
            seed: 0,
            format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 || self.n > MAX_N as usize {
            return Err(CliError::Usage(format!("--n must lie in 1..={MAX_N}")));
        }
        if self.grid == 0 {
            return Err(CliError::Usage("--grid must be at least 1".into()));
        }
        if self.mode == Mode::Exact && !self.function.is_exact_capable() {
            return Err(bgap_core::Error::UnsupportedExact(self.function.to_string()).into());
        }
        Ok(())
    }

    /// Grid coordinate `i / G`.
    pub fn point(&self, i: usize) -> Rational {
        Rational::from_frac(i as i64, self.grid as i64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellValues {
    Exact(Box<GapReport>),
    Float(FloatGapReport),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
    pub x: Rational,
    pub y: Rational,
    pub values: CellValues,
}

impl Cell {
    pub fn gap4_f64(&self) -> f64 {
        match &self.values {
            CellValues::Exact(r) => r.gap4.to_f64(),
            CellValues::Float(r) => r.gap4,
        }
    }

    pub fn is_equality(&self) -> bool {
        match &self.values {
            CellValues::Exact(r) => r.gap4.is_zero(),
            CellValues::Float(r) => r.gap4.abs() <= FLOAT_EQUALITY_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MinValue {
    Exact(Rational),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinGap4 {
    pub value: MinValue,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub config: ScanConfig,
    /// Ordered by `(x, y)`.
    pub cells: Vec<Cell>,
    pub min_gap4: MinGap4,
    pub convex_input: bool,
    pub equality_cells: usize,
    pub total_cells: usize,
    pub wall_time: Duration,
}

impl ScanResult {
    /// Failed relations, each naming its cell. Always empty in float mode,
    /// where no verdict is claimed.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for cell in &self.cells {
            let CellValues::Exact(rep) = &cell.values else {
                continue;
            };
            for v in rep.violations() {
                out.push(format!("cell (x = {}, y = {}): {v} fails", cell.x, cell.y));
            }
            if cell.i == cell.j && !rep.gap4.is_zero() {
                out.push(format!(
                    "cell (x = {}, y = {}): gap4 = {} on the diagonal",
                    cell.x, cell.y, rep.gap4
                ));
            }
        }
        if let MinValue::Exact(v) = &self.min_gap4.value {
            if self.convex_input && v.is_negative() {
                out.push(format!(
                    "cell (x = {}, y = {}): gap4 = {v} < 0 for convex input",
                    self.config.point(self.min_gap4.i),
                    self.config.point(self.min_gap4.j)
                ));
            }
        }
        out
    }
}

fn evaluate_cell(
    config: &ScanConfig,
    samples: &SampleVector,
    i: usize,
    j: usize,
) -> Result<Cell, bgap_core::Error> {
    let (x, y) = (config.point(i), config.point(j));
    let values = match samples.as_exact() {
        Some(exact) => CellValues::Exact(Box::new(gap_report(config.n, exact, &x, &y)?)),
        None => CellValues::Float(gap_report_float(
            config.n,
            &samples.to_f64_vec(),
            x.to_f64(),
            y.to_f64(),
        )?),
    };
    Ok(Cell { i, j, x, y, values })
}

/// Evaluates the listed cells in parallel and returns them sorted by `(i, j)`.
fn evaluate_cells(
    config: &ScanConfig,
    samples: &SampleVector,
    order: &[(usize, usize)],
) -> Result<Vec<Cell>, bgap_core::Error> {
    let mut cells = order
        .par_iter()
        .map(|&(i, j)| evaluate_cell(config, samples, i, j))
        .collect::<Result<Vec<_>, _>>()?;
    cells.sort_by_key(|c| (c.i, c.j));
    Ok(cells)
}

/// First minimizer in `(x, y)` order, i.e. the lexicographically smallest.
fn minimum(cells: &[Cell]) -> MinGap4 {
    let mut best = &cells[0];
    for cell in &cells[1..] {
        let smaller = match (&cell.values, &best.values) {
            (CellValues::Exact(a), CellValues::Exact(b)) => a.gap4 < b.gap4,
            _ => cell.gap4_f64() < best.gap4_f64(),
        };
        if smaller {
            best = cell;
        }
    }
    let value = match &best.values {
        CellValues::Exact(r) => MinValue::Exact(r.gap4.clone()),
        CellValues::Float(r) => MinValue::Float(r.gap4),
    };
    MinGap4 {
        value,
        i: best.i,
        j: best.j,
    }
}

fn grid_order(grid: usize) -> Vec<(usize, usize)> {
    (0..=grid)
        .flat_map(|i| (0..=grid).map(move |j| (i, j)))
        .collect()
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanResult, CliError> {
    config.validate()?;
    let start = Instant::now();
    let samples = config.function.sample(2 * config.n, config.mode)?;
    let convex_input = is_convex_samples(&samples)?;
    let cells = evaluate_cells(config, &samples, &grid_order(config.grid))?;
    let min_gap4 = minimum(&cells);
    let equality_cells = cells.iter().filter(|c| c.is_equality()).count();
    Ok(ScanResult {
        config: config.clone(),
        total_cells: cells.len(),
        cells,
        min_gap4,
        convex_input,
        equality_cells,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: usize, f: &str, grid: usize) -> ScanConfig {
        ScanConfig::new(n, f.parse().unwrap(), grid)
    }

    #[test]
    fn e2_scan_minimum_sits_on_diagonal() {
        let res = run_scan(&config(2, "e2", 10)).unwrap();
        assert_eq!(res.total_cells, 121);
        assert!(res.convex_input);
        assert!(res.violations().is_empty());
        assert_eq!(res.min_gap4.value, MinValue::Exact(Rational::zero()));
        assert_eq!((res.min_gap4.i, res.min_gap4.j), (0, 0));
        // gap4 vanishes exactly on the diagonal and nowhere else.
        assert_eq!(res.equality_cells, 11);
        for cell in &res.cells {
            assert_eq!(cell.is_equality(), cell.i == cell.j);
        }
    }

    #[test]
    fn hat_scan_is_reported_not_failed() {
        let res = run_scan(&config(2, "hat:1/2", 4)).unwrap();
        assert!(!res.convex_input);
        assert!(res.violations().is_empty());
        let MinValue::Exact(min) = &res.min_gap4.value else { panic!() };
        assert!(min.is_negative());
    }

    #[test]
    fn corner_grid() {
        let res = run_scan(&config(3, "e2", 1)).unwrap();
        assert_eq!(res.total_cells, 4);
        let corner = res.cells.iter().find(|c| c.i == 1 && c.j == 0).unwrap();
        let CellValues::Exact(rep) = &corner.values else { panic!() };
        // B_6(1/2) - a_3 with a_k = (k/6)^2: (1/4 + 1/24) - 1/4.
        assert_eq!(rep.gap4, Rational::from_frac(1, 24));
    }

    #[test]
    fn order_independent() {
        let cfg = config(3, "abs:1/3", 6);
        let samples = cfg.function.sample(6, Mode::Exact).unwrap();
        let mut order = grid_order(6);
        let forward = evaluate_cells(&cfg, &samples, &order).unwrap();
        order.reverse();
        order.rotate_left(17);
        assert_eq!(evaluate_cells(&cfg, &samples, &order).unwrap(), forward);
        assert_eq!(run_scan(&cfg).unwrap().cells, forward);
    }

    #[test]
    fn config_validation() {
        assert_eq!(config(0, "e2", 4).validate().unwrap_err().exit_code(), 2);
        assert_eq!(config(65, "e2", 4).validate().unwrap_err().exit_code(), 2);
        assert_eq!(config(2, "e2", 0).validate().unwrap_err().exit_code(), 2);
        assert_eq!(config(2, "exp", 4).validate().unwrap_err().exit_code(), 2);
        let mut cfg = config(2, "exp", 4);
        cfg.mode = Mode::Float;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn float_scan_tracks_exact_scan() {
        let exact = run_scan(&config(4, "e2", 8)).unwrap();
        let mut cfg = config(4, "e2", 8);
        cfg.mode = Mode::Float;
        let float = run_scan(&cfg).unwrap();
        assert!(float.convex_input);
        assert_eq!(float.equality_cells, 9);
        for (e, f) in exact.cells.iter().zip(&float.cells) {
            assert!((e.gap4_f64() - f.gap4_f64()).abs() <= 1e-12);
        }
    }

    #[test]
    fn tampered_cell_is_flagged() {
        let mut res = run_scan(&config(2, "e2", 2)).unwrap();
        if let CellValues::Exact(rep) = &mut res.cells[1].values {
            rep.identity_residual = Rational::from_frac(1, 3);
        }
        let v = res.violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("x = 0/1, y = 1/2"));
    }
}
