//! Exact infection probability for a single normally distributed parameter
//! driving a monotone lifetime map.

use statrs::function::erf::erfc;

use super::distribution::{ParameterDistribution, TrojanShift};
use crate::error::{Error, Result};

/// Half-width of the search window, in standard deviations.
const SPAN_SIGMAS: f64 = 40.0;
/// Grid used to bracket the threshold and to detect non-monotone maps.
const GRID_POINTS: usize = 257;
const BISECTION_REL_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 400;
const MAX_SHRINKS: usize = 64;

/// `P(X > x)` for `X ~ N(mean, sigma^2)`, accurate deep into the tail.
pub fn normal_upper_tail(x: f64, mean: f64, sigma: f64) -> f64 {
    0.5 * erfc((x - mean) / (sigma * std::f64::consts::SQRT_2))
}

/// `P(X < x)` for `X ~ N(mean, sigma^2)`.
pub fn normal_lower_tail(x: f64, mean: f64, sigma: f64) -> f64 {
    0.5 * erfc((mean - x) / (sigma * std::f64::consts::SQRT_2))
}

/// Probability that a device's lifetime falls short of `mission_lifetime`,
/// where the lifetime is `ttf_map(x)` for a parameter `x` drawn from `dist`
/// (shifted by `shift` when given, and truncated at `dist.floor`).
///
/// The map must be monotone over the support; the crossing point is found by
/// bisection, so no closed-form inverse is needed.
pub fn infection_probability_analytic<F>(
    dist: &ParameterDistribution,
    shift: Option<&TrojanShift>,
    ttf_map: F,
    mission_lifetime: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(mission_lifetime > 0.0 && mission_lifetime.is_finite()) {
        return Err(Error::domain("mission lifetime", "> 0", mission_lifetime));
    }
    let (mean, sigma) = dist.moments(shift);
    if !(sigma >= 0.0 && sigma.is_finite() && mean.is_finite()) {
        return Err(Error::domain("parameter standard deviation", ">= 0", sigma));
    }
    let fails = |x: f64| -> Result<bool> { Ok(eval(&ttf_map, x)? < mission_lifetime) };
    if sigma == 0.0 {
        return Ok(if fails(mean)? { 1.0 } else { 0.0 });
    }

    let mut lo = mean - SPAN_SIGMAS * sigma;
    if let Some(floor) = dist.floor {
        lo = lo.max(floor);
    }
    let lo = usable_endpoint(&ttf_map, lo, mean)?;
    let hi = usable_endpoint(&ttf_map, mean + SPAN_SIGMAS * sigma, mean)?;

    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|k| {
            if k == GRID_POINTS - 1 {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (GRID_POINTS - 1) as f64
            }
        })
        .collect();
    let ttf = grid
        .iter()
        .map(|&x| eval(&ttf_map, x))
        .collect::<Result<Vec<_>>>()?;
    let rising = ttf.windows(2).any(|w| w[1] > w[0]);
    let falling = ttf.windows(2).any(|w| w[1] < w[0]);
    if rising && falling {
        return Err(Error::NonMonotone(dist.name.clone()));
    }
    if !rising && !falling {
        return Ok(if ttf[0] < mission_lifetime { 1.0 } else { 0.0 });
    }

    // Devices fail below the threshold when lifetime rises with the
    // parameter, above it when lifetime falls.
    let fail_below = rising;
    let flags: Vec<bool> = ttf.iter().map(|&t| t < mission_lifetime).collect();
    let threshold = match flags.windows(2).position(|w| w[0] != w[1]) {
        None => {
            if flags[0] {
                return Ok(1.0);
            } else {
                return Ok(0.0);
            }
        }
        Some(k) => bisect(&fails, grid[k], grid[k + 1], flags[k], sigma)?,
    };

    let p = match (fail_below, dist.floor) {
        (true, None) => normal_lower_tail(threshold, mean, sigma),
        (false, None) => normal_upper_tail(threshold, mean, sigma),
        (true, Some(floor)) => {
            let z = normal_upper_tail(floor, mean, sigma);
            if threshold <= floor {
                0.0
            } else {
                (z - normal_upper_tail(threshold, mean, sigma)) / z
            }
        }
        (false, Some(floor)) => {
            let z = normal_upper_tail(floor, mean, sigma);
            if threshold <= floor {
                1.0
            } else {
                normal_upper_tail(threshold, mean, sigma) / z
            }
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

fn eval<F: Fn(f64) -> Result<f64>>(map: &F, x: f64) -> Result<f64> {
    let t = map(x)?;
    if t.is_nan() {
        return Err(Error::domain("lifetime map output", "a number", t));
    }
    Ok(t)
}

/// Move `x` toward `mean` until the map is defined there. Probability mass
/// beyond the returned point is treated as a monotone continuation.
fn usable_endpoint<F: Fn(f64) -> Result<f64>>(map: &F, mut x: f64, mean: f64) -> Result<f64> {
    for _ in 0..MAX_SHRINKS {
        if eval(map, x).is_ok() {
            return Ok(x);
        }
        x = mean + 0.5 * (x - mean);
    }
    eval(map, mean).map(|_| mean)
}

/// Locate the point in `[a, b]` where the failure predicate flips.
fn bisect<P>(fails: &P, mut a: f64, mut b: f64, fails_at_a: bool, sigma: f64) -> Result<f64>
where
    P: Fn(f64) -> Result<bool>,
{
    for _ in 0..MAX_BISECTIONS {
        let scale = a.abs().max(b.abs()).max(sigma);
        if b - a <= BISECTION_REL_TOL * scale {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if fails(mid)? == fails_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
