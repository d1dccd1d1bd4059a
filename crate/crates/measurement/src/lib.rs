//! Boundary measurements of perfect planar networks.

pub mod concat;
pub mod elim;
pub mod grass;
pub mod oracle;

use std::fmt;

use exprcore::RationalFunction;
use network::Network;

pub use concat::{act_elementary, chain, concatenate, concat_square, generic_sl3, mirror, square_matrix, Elementary, Gluing};
pub use elim::{measurement_row, measurement_rows, Frac, Value};
pub use grass::{det, extended_matrix, mat_mul, plucker, rref, same_point, subsets, short_plucker_residuals, ExtendedMatrix, PluckerVector};
pub use oracle::path_sum_oracle;

/// k x m matrix of measurements; `sources` and `sinks` are 0-based boundary indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementMatrix {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub entries: Vec<Vec<RationalFunction>>,
}

impl MeasurementMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<&RationalFunction> {
        let p = self.sources.iter().position(|&x| x == i)?;
        let q = self.sinks.iter().position(|&x| x == j)?;
        Some(&self.entries[p][q])
    }
}

/// Row-major, tab-separated canonical rendering.
impl fmt::Display for MeasurementMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

/// M(i, j) for 0-based boundary indices; 0 when j is unreachable.
pub fn boundary_measurement(net: &Network, i: usize, j: usize) -> RationalFunction {
    let row = measurement_row(net, i, &net.weights());
    net.sinks()
        .iter()
        .position(|&x| x == j)
        .map(|q| row[q].clone())
        .unwrap_or_else(RationalFunction::zero)
}

pub fn measurement_matrix(net: &Network) -> MeasurementMatrix {
    MeasurementMatrix {
        sources: net.sources(),
        sinks: net.sinks(),
        entries: measurement_rows(net, &net.weights()),
    }
}

/// Measurements with every edge weight replaced by an unreduced fraction.
pub fn subtraction_free_rows(net: &Network) -> Vec<Vec<Frac>> {
    let w: Vec<Frac> = net
        .weights()
        .into_iter()
        .map(|x| Frac {
            num: x.numer().clone(),
            den: x.denom().clone(),
        })
        .collect();
    measurement_rows(net, &w)
}
