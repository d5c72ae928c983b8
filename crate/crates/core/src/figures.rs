//! Tabulated sweeps behind the four standard plots, and their CSV encoding.
//!
//! | figure | x axis | columns |
//! |--------|--------|---------|
//! | 1 | `C` | `C,E,dE` |
//! | 2 | `C` | `C,relE` |
//! | 3 | `τ/τ_e` | `t_over_te,E,dE` |
//! | 4 | `τ/τ_e` | `t_over_te,relE` |
//!
//! Numbers are written with 12 significant digits; an undefined `δE` is an
//! empty cell.

use std::io::{Read, Write};

use thiserror::Error;

use crate::measures::{Concurrence, EntanglementStats};
use crate::mixed::concurrence_hw;
use crate::thermal::{
    entanglement_temperature, thermal_concurrence, thermal_state, DimerParams, ThermalError,
    ThermalPoint,
};

pub const DEFAULT_POINTS: usize = 201;

/// Dimers whose Hill–Wootters and closed-form concurrences differ by more
/// than this are flagged in [`dimer_table`].
pub const HW_CHECK_TOL: f64 = 1e-9;

const SIGNIFICANT_DIGITS: i32 = 12;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("bad sweep: {0}")]
    BadSpec(String),
    #[error("unknown figure {0} (expected 1, 2, 3 or 4)")]
    UnknownFigure(u8),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad CSV cell {0:?}")]
    BadCell(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Evenly spaced grid `start, …, stop` with `points` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self, FigureError> {
        if !(start.is_finite() && stop.is_finite()) || start >= stop {
            return Err(FigureError::BadSpec(format!(
                "need start < stop, got {start} and {stop}"
            )));
        }
        if points < 2 {
            return Err(FigureError::BadSpec(format!(
                "need at least 2 points, got {points}"
            )));
        }
        Ok(Self {
            start,
            stop,
            points,
        })
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `E` and `ΔE` against `C`.
    PureStats,
    /// `δE` against `C`.
    PureRelative,
    /// `E` and `ΔE` of the dimer against `τ/τ_e`.
    DimerStats,
    /// `δE` of the dimer against `τ/τ_e`.
    DimerRelative,
}

impl Figure {
    pub fn from_number(n: u8) -> Result<Self, FigureError> {
        match n {
            1 => Ok(Self::PureStats),
            2 => Ok(Self::PureRelative),
            3 => Ok(Self::DimerStats),
            4 => Ok(Self::DimerRelative),
            other => Err(FigureError::UnknownFigure(other)),
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Self::PureStats => &["C", "E", "dE"],
            Self::PureRelative => &["C", "relE"],
            Self::DimerStats => &["t_over_te", "E", "dE"],
            Self::DimerRelative => &["t_over_te", "relE"],
        }
    }

    pub fn default_spec(self) -> SweepSpec {
        let (start, stop) = match self {
            Self::PureStats => (0.0, 1.0),
            Self::PureRelative => (0.005, 1.0),
            Self::DimerStats | Self::DimerRelative => (0.01, 1.2),
        };
        SweepSpec {
            start,
            stop,
            points: DEFAULT_POINTS,
        }
    }

    fn check_range(self, spec: &SweepSpec) -> Result<(), FigureError> {
        let ok = match self {
            Self::PureStats => spec.start >= 0.0 && spec.stop <= 1.0,
            Self::PureRelative => spec.start > 0.0 && spec.stop <= 1.0,
            Self::DimerStats | Self::DimerRelative => spec.start > 0.0,
        };
        if ok {
            Ok(())
        } else {
            let range = match self {
                Self::PureStats => "C in [0, 1]",
                Self::PureRelative => "C in (0, 1]",
                _ => "t_over_te > 0",
            };
            Err(FigureError::BadSpec(format!(
                "figure sweeps {range}, got [{}, {}]",
                spec.start, spec.stop
            )))
        }
    }
}

/// Named columns of optional numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FigureError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.map(format_sig).unwrap_or_default()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self, FigureError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(input);
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    if cell.is_empty() {
                        Ok(None)
                    } else {
                        cell.parse()
                            .map(Some)
                            .map_err(|_| FigureError::BadCell(cell.to_string()))
                    }
                })
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }
}

/// `x` with 12 significant digits, shortest form: fixed notation for
/// exponents in `[-5, 12)`, scientific otherwise, trailing zeros dropped.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..SIGNIFICANT_DIGITS).contains(&exp) {
        format!("{}e{exp}", trim_fraction(mantissa))
    } else {
        let decimals = (SIGNIFICANT_DIGITS - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn antiferro_point(t_over_te: f64) -> Result<ThermalPoint, FigureError> {
    let tau_e = entanglement_temperature(-1.0)?;
    Ok(ThermalPoint::at(&DimerParams::new(
        -1.0,
        t_over_te * tau_e,
    )?))
}

/// Data for one figure on the given grid.
pub fn figure_table(fig: Figure, spec: &SweepSpec) -> Result<Table, FigureError> {
    let spec = SweepSpec::new(spec.start, spec.stop, spec.points)?;
    fig.check_range(&spec)?;
    let mut table = Table::new(fig.columns());
    for x in spec.grid() {
        let row = match fig {
            Figure::PureStats | Figure::PureRelative => {
                let s = EntanglementStats::from_concurrence(Concurrence::saturating(x));
                if fig == Figure::PureStats {
                    vec![Some(x), Some(s.e), Some(s.delta_e)]
                } else {
                    vec![Some(x), s.rel.as_option()]
                }
            }
            Figure::DimerStats => {
                let p = antiferro_point(x)?;
                vec![Some(x), Some(p.e), Some(p.delta_e)]
            }
            Figure::DimerRelative => {
                let p = antiferro_point(x)?;
                vec![Some(x), p.rel.as_option()]
            }
        };
        table.rows.push(row);
    }
    Ok(table)
}

pub const DIMER_COLUMNS: [&str; 8] = [
    "tau",
    "t_over_te",
    "C",
    "E",
    "dE",
    "relE",
    "hw_dev",
    "hw_flag",
];

/// Per-temperature dimer report with a Hill–Wootters cross-check:
/// `hw_dev` is the gap between the closed form and the density-matrix route,
/// `hw_flag` is 1 when it exceeds [`HW_CHECK_TOL`].
pub fn dimer_table(j: f64, taus: &[f64]) -> Result<Table, FigureError> {
    let mut table = Table::new(&DIMER_COLUMNS);
    for &tau in taus {
        let p = DimerParams::new(j, tau)?;
        let pt = ThermalPoint::at(&p);
        let hw = concurrence_hw(&thermal_state(&p))
            .expect("thermal states are valid density matrices")
            .concurrence;
        let dev = (hw.value() - thermal_concurrence(&p).value()).abs();
        table.rows.push(vec![
            Some(pt.tau),
            Some(pt.tau_over_te),
            Some(pt.c.value()),
            Some(pt.e),
            Some(pt.delta_e),
            pt.rel.as_option(),
            Some(dev),
            Some(if dev > HW_CHECK_TOL { 1.0 } else { 0.0 }),
        ]);
    }
    Ok(table)
}
