//! Bundled example data: annual civil service pay adjustment rates (percent)
//! for Hong Kong, tax years 2007-2008 through 2024-2025, split into the
//! junior and senior salary bands. Notable features: three pay freezes in the
//! junior band (2009-2010, 2020-2021, 2021-2022) and one outright pay cut of
//! -5.38% for senior staff in 2009-2010.

use crate::ingest::{read_column, Column};

/// The raw bundled CSV: `tax_year,junior,senior`, 18 data rows.
pub const HK_PAY_CSV: &str = include_str!("../data/hk_pay.csv");

/// Junior-band adjustment rates, most recent year first.
pub fn hk_pay_junior() -> Vec<f64> {
    read_column(HK_PAY_CSV, &Column::Name("junior".to_string()))
        .expect("bundled dataset always parses")
}

/// Senior-band adjustment rates, most recent year first.
pub fn hk_pay_senior() -> Vec<f64> {
    read_column(HK_PAY_CSV, &Column::Name("senior".to_string()))
        .expect("bundled dataset always parses")
}

/// Tax-year labels aligned with the rate vectors.
pub fn hk_pay_years() -> Vec<&'static str> {
    HK_PAY_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').next().unwrap())
        .collect()
}
