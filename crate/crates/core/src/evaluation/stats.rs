//! Friedman test and Nemenyi critical distance over a score matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper chi-square critical values for 1..=19 degrees of freedom.
const CHI2_05: [f64; 19] = [
    3.841459, 5.991465, 7.814728, 9.487729, 11.070498, 12.591587, 14.06714, 15.507313, 16.918978,
    18.307038, 19.675138, 21.02607, 22.362032, 23.684791, 24.99579, 26.296228, 27.587112,
    28.869299, 30.143527,
];
const CHI2_01: [f64; 19] = [
    6.634897, 9.21034, 11.344867, 13.276704, 15.086272, 16.811894, 18.475307, 20.090235, 21.665994,
    23.209251, 24.72497, 26.216967, 27.68825, 29.141238, 30.577914, 31.999927, 33.408664,
    34.805306, 36.190869,
];

/// Studentized range quantiles divided by sqrt(2), for k = 2..=20.
const Q_05: [f64; 19] = [
    1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.94832, 3.030878, 3.10173, 3.163684,
    3.218654, 3.268004, 3.312739, 3.353618, 3.39123, 3.426041, 3.458425, 3.488685, 3.517073,
    3.543799,
];
const Q_01: [f64; 19] = [
    2.575829, 2.913494, 3.11325, 3.254686, 3.36374, 3.452213, 3.526471, 3.590339, 3.646292,
    3.696021, 3.740733, 3.781318, 3.818451, 3.852654, 3.884343, 3.91385, 3.941446, 3.967357,
    3.99177,
];

pub const MAX_ALGORITHMS: usize = 20;

fn tables(alpha: f64) -> Result<(&'static [f64; 19], &'static [f64; 19])> {
    if (alpha - 0.05).abs() < 1e-12 {
        Ok((&CHI2_05, &Q_05))
    } else if (alpha - 0.01).abs() < 1e-12 {
        Ok((&CHI2_01, &Q_01))
    } else {
        Err(Error::InvalidArgument(format!(
            "alpha {alpha} is not tabulated (use 0.05 or 0.01)"
        )))
    }
}

/// Scores of k algorithms (columns) over N inputs (rows).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMatrix {
    algorithms: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ScoreMatrix {
    pub fn new(algorithms: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if algorithms.is_empty() {
            return Err(Error::EmptyInput("score matrix columns"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != algorithms.len() {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} scores for {} algorithms",
                    row.len(),
                    algorithms.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has a non-finite score"
                )));
            }
        }
        Ok(ScoreMatrix { algorithms, rows })
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn k(&self) -> usize {
        self.algorithms.len()
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Fractional ranks of one row, rank 1 for the highest score.
pub fn rank_row(row: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[b].total_cmp(&row[a]));
    let mut ranks = vec![0.0; row.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

pub fn mean_ranks(s: &ScoreMatrix) -> Result<Vec<f64>> {
    if s.n() < 2 {
        return Err(Error::InvalidArgument(
            "mean ranks need at least 2 rows".into(),
        ));
    }
    let mut sums = vec![0.0; s.k()];
    for row in &s.rows {
        for (acc, r) in sums.iter_mut().zip(rank_row(row)) {
            *acc += r;
        }
    }
    Ok(sums.into_iter().map(|x| x / s.n() as f64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub critical_value: f64,
    pub alpha: f64,
    pub reject: bool,
}

/// Rank-sum form `12 / (N k (k+1)) * sum(R_j^2) - 3 N (k+1)`, compared with
/// the chi-square critical value at k-1 degrees of freedom.
pub fn friedman_statistic(s: &ScoreMatrix) -> f64 {
    let (n, k) = (s.n() as f64, s.k() as f64);
    let mut sums = vec![0.0; s.k()];
    for row in &s.rows {
        for (acc, r) in sums.iter_mut().zip(rank_row(row)) {
            *acc += r;
        }
    }
    let sq: f64 = sums.iter().map(|r| r * r).sum();
    12.0 / (n * k * (k + 1.0)) * sq - 3.0 * n * (k + 1.0)
}

pub fn friedman_test(s: &ScoreMatrix, alpha: f64) -> Result<FriedmanResult> {
    if s.k() < 3 || s.n() < 2 {
        return Err(Error::InvalidArgument(format!(
            "Friedman test needs k >= 3 and N >= 2, got k = {} and N = {}",
            s.k(),
            s.n()
        )));
    }
    if s.k() > MAX_ALGORITHMS {
        return Err(Error::InvalidArgument(format!(
            "k = {} is not tabulated",
            s.k()
        )));
    }
    let (chi2, _) = tables(alpha)?;
    let statistic = friedman_statistic(s);
    let df = s.k() - 1;
    let critical_value = chi2[df - 1];
    Ok(FriedmanResult {
        statistic,
        degrees_of_freedom: df,
        critical_value,
        alpha,
        reject: statistic > critical_value,
    })
}

/// `q_alpha(k) * sqrt(k (k+1) / (6 N))`.
pub fn nemenyi_cd(k: usize, n: usize, alpha: f64) -> Result<f64> {
    if !(2..=MAX_ALGORITHMS).contains(&k) {
        return Err(Error::InvalidArgument(format!("k = {k} is not tabulated")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("N must be at least 2".into()));
    }
    let (_, q) = tables(alpha)?;
    let (kf, nf) = (k as f64, n as f64);
    Ok(q[k - 2] * (kf * (kf + 1.0) / (6.0 * nf)).sqrt())
}
