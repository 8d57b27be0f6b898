//! Zero testing: exact certification with a sampling fallback.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::calculus::free_coords;
use crate::eval::{eval, EvalError, Point};
use crate::expand::certify_zero;
use crate::expr::ScalarExpr;

/// Coordinate box that sample points are drawn from, the same interval for
/// every coordinate. Kept away from zero so quotients and roots stay defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Domain { lo: 0.1, hi: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTestConfig {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub domain: Domain,
}

impl Default for ZeroTestConfig {
    fn default() -> Self {
        ZeroTestConfig {
            samples: 100,
            tol: 1e-9,
            seed: 0,
            domain: Domain::default(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ZeroTestError {
    #[error("could not find an admissible sample point after {failures} attempts")]
    SamplerExhausted { failures: usize },
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
}

/// Draw `n` sample points for the given coordinates.
pub fn sample_points(coords: &[String], domain: &Domain, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            coords
                .iter()
                .map(|c| (c.clone(), rng.gen_range(domain.lo..domain.hi)))
                .collect()
        })
        .collect()
}

/// Numeric zero test: evaluates at random points, resampling when a point
/// falls outside the expression's domain.
pub fn is_zero_sampled(e: &ScalarExpr, config: &ZeroTestConfig) -> Result<bool, ZeroTestError> {
    let coords: Vec<String> = free_coords(e).into_iter().collect();
    if coords.is_empty() {
        return match eval(e, &Point::new()) {
            Ok(v) => Ok(v.abs() <= config.tol),
            Err(err) => Err(err.into()),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut accepted = 0;
    let mut consecutive_failures = 0;
    while accepted < config.samples {
        let point: Point = coords
            .iter()
            .map(|c| (c.clone(), rng.gen_range(config.domain.lo..config.domain.hi)))
            .collect();
        match eval(e, &point) {
            Ok(v) => {
                if v.abs() > config.tol {
                    return Ok(false);
                }
                accepted += 1;
                consecutive_failures = 0;
            }
            Err(EvalError::UnboundCoordinate(c)) => {
                return Err(EvalError::UnboundCoordinate(c).into())
            }
            Err(_) => {
                consecutive_failures += 1;
                if consecutive_failures > 50 {
                    return Err(ZeroTestError::SamplerExhausted {
                        failures: consecutive_failures,
                    });
                }
            }
        }
    }
    Ok(true)
}

/// Zero test: tries exact certification first, then falls back to sampling.
pub fn is_zero(e: &ScalarExpr, config: &ZeroTestConfig) -> Result<bool, ZeroTestError> {
    match certify_zero(e) {
        Some(v) => Ok(v),
        None => is_zero_sampled(e, config),
    }
}
